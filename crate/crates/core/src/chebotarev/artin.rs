use std::collections::BTreeMap;

use serde::Serialize;

use super::classes::{cubic_cells, cubic_label};
use super::interval::IntervalFp;
use crate::error::{Error, Result};
use crate::factor::{factorization_type, rabin_irreducible};
use crate::ffpoly::{Poly, PrimeModulus};
use crate::parallel::map_chunks;

fn check_cubic_setting(m: PrimeModulus, omega: u64) -> Result<()> {
    let p = m.get();
    if p % 3 != 1 {
        return Err(Error::invalid(format!("cubic classes need p = 1 mod 3, got {p}")));
    }
    let w = m.reduce(omega);
    if w == 1 || m.pow(w, 3) != 1 {
        return Err(Error::invalid(format!("{omega} is not a primitive cube root of unity mod {p}")));
    }
    Ok(())
}

fn class_of(m: PrimeModulus, c: u64, omega: u64) -> Result<u8> {
    let t = m.pow(m.neg(c), (m.get() - 1) / 3);
    let w = m.reduce(omega);
    match t {
        1 => Ok(0),
        _ if t == w => Ok(1),
        _ if t == m.mul(w, w) => Ok(2),
        _ => Err(Error::Invariant(format!("(-{c})^((p-1)/3) = {t} is not a cube root of unity"))),
    }
}

/// The Artin class `j` of `x^3 + c` in `A_3`, fixed by
/// `(-c)^((p-1)/3) = omega^j`. `j = 0` exactly when `x^3 + c` splits.
pub fn cubic_artin_class(m: PrimeModulus, c: u64, omega: u64) -> Result<u8> {
    check_cubic_setting(m, omega)?;
    if m.reduce(c) == 0 {
        return Err(Error::invalid("x^3 + 0 is not squarefree"));
    }
    class_of(m, c, omega)
}

/// A primitive cube root of unity mod `p`, the smallest `g^((p-1)/3) != 1`.
pub fn primitive_cube_root(m: PrimeModulus) -> Result<u64> {
    let p = m.get();
    if p % 3 != 1 {
        return Err(Error::invalid(format!("no primitive cube root of unity mod {p}")));
    }
    (2..p)
        .map(|g| m.pow(g, (p - 1) / 3))
        .find(|&w| w != 1)
        .ok_or_else(|| Error::Invariant("no cube root of unity found".into()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CubicCell {
    pub class: String,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JointCubicCensus {
    pub p: u64,
    pub omega: u64,
    pub shifts: Vec<u64>,
    pub interval: IntervalFp,
    /// All `3^k` cells in lexicographic order.
    pub cells: Vec<CubicCell>,
    /// Points with `h_i + a = 0` for some `i`.
    pub skipped: u64,
}

impl JointCubicCensus {
    pub fn count(&self, cell: &[u8]) -> u64 {
        let label = cubic_label(cell);
        self.cells.iter().find(|c| c.class == label).map_or(0, |c| c.count)
    }
}

pub(crate) fn check_distinct(m: PrimeModulus, shifts: &[u64]) -> Result<Vec<u64>> {
    if shifts.is_empty() {
        return Err(Error::invalid("need at least one shift"));
    }
    let reduced: Vec<u64> = shifts.iter().map(|&h| m.reduce(h)).collect();
    let mut sorted = reduced.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != reduced.len() {
        return Err(Error::invalid("shifts must be distinct mod p"));
    }
    Ok(reduced)
}

/// Tallies `(class(h_1 + a), ..., class(h_k + a))` over `a` in `interval`.
pub fn joint_cubic_census(
    shifts: &[u64],
    interval: &IntervalFp,
    omega: u64,
    workers: usize,
) -> Result<JointCubicCensus> {
    let m = interval.modulus();
    check_cubic_setting(m, omega)?;
    let h = check_distinct(m, shifts)?;
    let k = h.len();
    if k > 12 {
        return Err(Error::invalid("at most 12 shifts"));
    }
    let parts = map_chunks(interval.len(), workers, |range| {
        let mut counts = vec![0u64; 3usize.pow(k as u32)];
        let mut skipped = 0;
        'points: for i in range {
            let a = interval.element(i);
            let mut idx = 0usize;
            for &hi in &h {
                let c = m.add(hi, a);
                if c == 0 {
                    skipped += 1;
                    continue 'points;
                }
                idx = idx * 3 + class_of(m, c, omega)? as usize;
            }
            counts[idx] += 1;
        }
        Ok((counts, skipped))
    })?;
    let mut counts = vec![0u64; 3usize.pow(k as u32)];
    let mut skipped = 0;
    for (c, s) in parts {
        skipped += s;
        for (acc, v) in counts.iter_mut().zip(c) {
            *acc += v;
        }
    }
    let cells = cubic_cells(k)
        .iter()
        .zip(counts)
        .map(|(cell, count)| CubicCell { class: cubic_label(cell), count })
        .collect();
    Ok(JointCubicCensus { p: m.get(), omega: m.reduce(omega), shifts: h, interval: *interval, cells, skipped })
}

/// Largest `p` at which [`artin_schreier_symbol`] re-checks the splitting
/// of `x^p - x - a`.
pub const ARTIN_SCHREIER_CHECK_MAX_P: u64 = 13;

/// The Frobenius at `t = a` in the Artin-Schreier extension `x^p - x - t`
/// acts as `xi -> xi + a`; under `Gal = F_p^+` the symbol is `a` itself.
///
/// For `p <= 13` the splitting behaviour is verified: `x^p - x - a` must be
/// irreducible for `a != 0` and split into linear factors for `a = 0`.
pub fn artin_schreier_symbol(m: PrimeModulus, a: u64) -> Result<u64> {
    let a = m.reduce(a);
    let p = m.get();
    if p <= ARTIN_SCHREIER_CHECK_MAX_P {
        let f = Poly::monomial(m, 1, p as usize).add_to_coeff(1, m.neg(1)).add_to_coeff(0, m.neg(a));
        let ok = if a == 0 {
            factorization_type(&f)?.parts().iter().all(|&k| k == 1) && crate::ffpoly::is_squarefree(&f)?
        } else {
            rabin_irreducible(&f)?
        };
        if !ok {
            return Err(Error::Invariant(format!("x^{p} - x - {a} does not behave as an Artin-Schreier fibre")));
        }
    }
    Ok(a)
}

/// Counts per class over `interval` for the Artin-Schreier family. Each
/// residue is its own class, so the census is the multiset of `a`.
pub fn artin_schreier_census(interval: &IntervalFp) -> Result<BTreeMap<u64, u64>> {
    let m = interval.modulus();
    let mut out = BTreeMap::new();
    for a in interval.iter() {
        *out.entry(artin_schreier_symbol(m, a)?).or_default() += 1;
    }
    Ok(out)
}
