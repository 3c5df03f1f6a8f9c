use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::classes::{cycle_type_density, partitions, ratio_to_f64};
use super::interval::IntervalFp;
use crate::error::{Error, Result};
use crate::factor::{rabin_irreducible, squarefree_factorization_type, FactorizationType};
use crate::ffpoly::{discriminant, Poly};
use crate::morse::{certify_family, FamilyKind, FamilyShape, SymmetricCertificate};
use crate::parallel::map_chunks;

/// Label written into every report next to normalized errors.
pub const NORMALIZATION: &str = "raw / (sqrt(p) * ln(p))";

pub fn error_scale(p: u64) -> f64 {
    let p = p as f64;
    p.sqrt() * p.ln()
}

/// One row of a census: a class, its count and, for certified families,
/// the comparison against `density * |I|`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassRow {
    pub class: FactorizationType,
    pub count: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub main_term: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub raw_error: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub normalized_error: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CensusReport {
    pub p: u64,
    pub d: usize,
    pub family: String,
    pub base: Poly,
    pub fixed: u64,
    pub interval: IntervalFp,
    pub classes: Vec<ClassRow>,
    pub ramified_count: u64,
    /// Absent when the family could not be certified to have group `S_d`;
    /// main terms are then omitted.
    pub certificate: Option<SymmetricCertificate>,
    pub normalization: &'static str,
}

impl CensusReport {
    pub fn count(&self, class: &FactorizationType) -> u64 {
        self.classes.iter().find(|r| &r.class == class).map_or(0, |r| r.count)
    }

    pub fn unramified_count(&self) -> u64 {
        self.classes.iter().map(|r| r.count).sum()
    }

    /// Total-variation distance between the observed type frequencies of
    /// unramified specializations and the `S_d` cycle densities.
    pub fn total_variation(&self) -> Result<f64> {
        if self.certificate.is_none() {
            return Err(Error::invalid("family is not certified to have group S_d"));
        }
        let n = self.unramified_count();
        if n == 0 {
            return Err(Error::invalid("no unramified specializations"));
        }
        let mut acc = 0.0;
        for row in &self.classes {
            let dens = ratio_to_f64(cycle_type_density(self.d, &row.class)?);
            acc += (row.count as f64 / n as f64 - dens).abs();
        }
        Ok(acc / 2.0)
    }

    /// Conservation: every point of the interval is either ramified or
    /// tallied in exactly one class.
    pub fn check_conservation(&self) -> Result<()> {
        let total = self.unramified_count() + self.ramified_count;
        if total != self.interval.len() {
            return Err(Error::Invariant(format!(
                "census conservation: {total} tallied for |I| = {}",
                self.interval.len()
            )));
        }
        Ok(())
    }

    /// CSV with one row per class.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        let csv_err = |e: csv::Error| Error::invalid(format!("csv: {e}"));
        w.write_record(["class", "count", "main_term", "raw_error", "normalized_error"]).map_err(csv_err)?;
        let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        for row in &self.classes {
            w.write_record([
                row.class.to_string(),
                row.count.to_string(),
                opt(row.main_term),
                opt(row.raw_error),
                opt(row.normalized_error),
            ])
            .map_err(csv_err)?;
        }
        w.write_record(["ramified".to_string(), self.ramified_count.to_string(), String::new(), String::new(), String::new()])
            .map_err(csv_err)?;
        let bytes = w.into_inner().map_err(|e| Error::invalid(format!("csv: {e}")))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

fn check_census_inputs(shape: &FamilyShape, interval: &IntervalFp) -> Result<()> {
    let p = shape.modulus().get();
    let d = shape.degree();
    if interval.modulus() != shape.modulus() {
        return Err(Error::ModulusMismatch(p, interval.modulus().get()));
    }
    if p <= d as u64 + 1 {
        return Err(Error::CharacteristicTooSmall { p, bound: d as u64 + 1 });
    }
    Ok(())
}

/// Tallies the factorization type of every unramified member
/// `shape.member(fixed, a)`, `a` in `interval`.
///
/// The family is certified with [`certify_family`] unless the caller passes
/// a certificate; without one the report carries counts only.
pub fn interval_census(
    shape: &FamilyShape,
    fixed: u64,
    interval: &IntervalFp,
    certificate: Option<SymmetricCertificate>,
    workers: usize,
) -> Result<CensusReport> {
    check_census_inputs(shape, interval)?;
    let p = shape.modulus().get();
    let d = shape.degree();
    let certificate = match certificate {
        Some(c) => Some(c),
        None => match certify_family(shape, fixed) {
            Ok(c) => c,
            Err(Error::CharacteristicTooSmall { .. }) => None,
            Err(e) => return Err(e),
        },
    };

    let chunks = map_chunks(interval.len(), workers, |range| {
        let mut counts: BTreeMap<FactorizationType, u64> = BTreeMap::new();
        let mut ramified = 0u64;
        for i in range {
            let f = shape.member(fixed, interval.element(i));
            if discriminant(&f)? == 0 {
                ramified += 1;
            } else {
                *counts.entry(squarefree_factorization_type(&f)?).or_default() += 1;
            }
        }
        Ok((counts, ramified))
    })?;
    let mut counts: BTreeMap<FactorizationType, u64> = partitions(d).into_iter().map(|l| (l, 0)).collect();
    let mut ramified_count = 0;
    for (part, r) in chunks {
        ramified_count += r;
        for (k, v) in part {
            *counts.get_mut(&k).ok_or_else(|| Error::Invariant(format!("type {k} of degree != {d}")))? += v;
        }
    }

    let len = interval.len() as f64;
    let scale = error_scale(p);
    let classes = counts
        .into_iter()
        .map(|(class, count)| {
            let (main_term, raw_error, normalized_error) = if certificate.is_some() {
                let main = ratio_to_f64(cycle_type_density(d, &class)?) * len;
                let raw = count as f64 - main;
                (Some(main), Some(raw), Some(raw / scale))
            } else {
                (None, None, None)
            };
            Ok(ClassRow { class, count, main_term, raw_error, normalized_error })
        })
        .collect::<Result<Vec<_>>>()?;

    let report = CensusReport {
        p,
        d,
        family: shape.label(),
        base: shape.base().clone(),
        fixed,
        interval: *interval,
        classes,
        ramified_count,
        certificate,
        normalization: NORMALIZATION,
    };
    report.check_conservation()?;
    Ok(report)
}

/// Irreducible members of a family along an interval, against `|I| / d`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IrreducibleCount {
    pub p: u64,
    pub d: usize,
    pub interval_len: u64,
    pub count: u64,
    pub main_term: f64,
    pub raw_error: f64,
    pub normalized_error: f64,
}

impl fmt::Display for IrreducibleCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "p={} d={} |I|={} irreducible={} main={:.3} err={:.3} normalized={:.5}",
            self.p, self.d, self.interval_len, self.count, self.main_term, self.raw_error, self.normalized_error
        )
    }
}

fn count_irreducible(shape: &FamilyShape, fixed: u64, interval: &IntervalFp, workers: usize) -> Result<u64> {
    let parts = map_chunks(interval.len(), workers, |range| {
        let mut n = 0u64;
        for i in range {
            if rabin_irreducible(&shape.member(fixed, interval.element(i)))? {
                n += 1;
            }
        }
        Ok(n)
    })?;
    Ok(parts.into_iter().sum())
}

/// The `(d)` class of [`interval_census`]. Irreducible members are
/// automatically unramified, so this runs Rabin's test alone.
pub fn irreducible_interval_count(
    shape: &FamilyShape,
    fixed: u64,
    interval: &IntervalFp,
    workers: usize,
) -> Result<IrreducibleCount> {
    check_census_inputs(shape, interval)?;
    let p = shape.modulus().get();
    let d = shape.degree();
    let count = count_irreducible(shape, fixed, interval, workers)?;
    let main_term = interval.len() as f64 / d as f64;
    let raw_error = count as f64 - main_term;
    Ok(IrreducibleCount {
        p,
        d,
        interval_len: interval.len(),
        count,
        main_term,
        raw_error,
        normalized_error: raw_error / error_scale(p),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrinomialSweep {
    pub p: u64,
    pub d: usize,
    pub i0: IntervalFp,
    pub i1: IntervalFp,
    pub count: u64,
    pub main_term: f64,
    pub density_ratio: f64,
}

/// Irreducible `x^d + a_1 x + a_0` over `(a_0, a_1)` in `i0 x i1`, one
/// interval count in `a_0` per value of `a_1`.
pub fn trinomial_sweep(d: usize, i0: &IntervalFp, i1: &IntervalFp, workers: usize) -> Result<TrinomialSweep> {
    let m = i0.modulus();
    if i1.modulus() != m {
        return Err(Error::ModulusMismatch(m.get(), i1.modulus().get()));
    }
    if d < 2 {
        return Err(Error::Degree { got: d, reason: "trinomials need degree >= 2" });
    }
    let shape = FamilyShape::new(FamilyKind::AdditiveConstant, Poly::monomial(m, 1, d))?;
    check_census_inputs(&shape, i0)?;
    let mut count = 0;
    for a1 in i1.iter() {
        count += count_irreducible(&shape, a1, i0, workers)?;
    }
    let main_term = i0.len() as f64 * i1.len() as f64 / d as f64;
    Ok(TrinomialSweep { p: m.get(), d, i0: *i0, i1: *i1, count, main_term, density_ratio: count as f64 / main_term })
}
