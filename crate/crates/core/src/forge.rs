//! Deterministic construction of an irreducible `f + b x + a`.
//!
//! For each `b` in a short prefix of the schedule, `a` runs over an interval
//! of length `ceil(c sqrt(p) ln p)` and every candidate goes through
//! Rabin's test. The first hit is returned together with the number of
//! field multiplications spent, which is the quantity the
//! `sqrt(p) (ln p)^2` budget refers to. Nothing on this path is random.

use std::time::Instant;

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::factor::{rabin_irreducible, rabin_irreducible_counted};
use crate::ffpoly::{is_prime_u64, MulCounter, Poly, PrimeModulus};
use crate::parallel::map_chunks;

/// Order in which linear-coefficient offsets `b` are tried.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BOrder {
    /// `0, 1, 2, ...`
    Sequential,
    Explicit(Vec<u64>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ForgeSchedule {
    pub b_order: BOrder,
    /// How many values of `b` are tried per round; `None` means `4d`.
    pub b_prefix: Option<usize>,
    /// `c` in `|I| = ceil(c sqrt(p) ln p)`.
    pub interval_factor: Ratio<u64>,
    pub interval_start: u64,
    pub max_doublings: u32,
}

impl Default for ForgeSchedule {
    fn default() -> Self {
        ForgeSchedule {
            b_order: BOrder::Sequential,
            b_prefix: None,
            interval_factor: Ratio::from_integer(2),
            interval_start: 0,
            max_doublings: 4,
        }
    }
}

impl ForgeSchedule {
    pub fn validate(&self) -> Result<()> {
        if *self.interval_factor.numer() == 0 {
            return Err(Error::invalid("interval factor must be positive"));
        }
        if self.b_prefix == Some(0) {
            return Err(Error::invalid("b prefix must be positive"));
        }
        if let BOrder::Explicit(v) = &self.b_order {
            if v.is_empty() {
                return Err(Error::invalid("explicit b order is empty"));
            }
        }
        Ok(())
    }

    /// The `b` values of one round.
    pub fn b_values(&self, m: PrimeModulus, d: usize) -> Vec<u64> {
        let n = self.b_prefix.unwrap_or(4 * d);
        let mut out: Vec<u64> = Vec::with_capacity(n);
        let mut push = |b: u64| {
            let b = m.reduce(b);
            if !out.contains(&b) {
                out.push(b);
            }
        };
        match &self.b_order {
            BOrder::Sequential => (0..(n as u64).min(m.get())).for_each(&mut push),
            BOrder::Explicit(v) => v.iter().take(n).copied().for_each(&mut push),
        }
        out
    }

    /// Interval length before any doubling, capped at `p`.
    pub fn base_length(&self, p: u64) -> u64 {
        let c = *self.interval_factor.numer() as f64 / *self.interval_factor.denom() as f64;
        let pf = p as f64;
        ((c * pf.sqrt() * pf.ln()).ceil() as u64).clamp(1, p)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ForgeReport {
    pub p: u64,
    pub d: usize,
    pub base: Poly,
    pub found: Poly,
    pub b_used: u64,
    pub a_used: u64,
    pub doublings: u32,
    pub interval_len: u64,
    pub rabin_calls: u64,
    pub field_mults: u64,
    /// `field_mults / (sqrt(p) (ln p)^2)`
    pub budget_ratio: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_secs: Option<f64>,
}

impl ForgeReport {
    /// The report without wall time, identical across runs.
    pub fn canonical(&self) -> ForgeReport {
        ForgeReport { wall_time_secs: None, ..self.clone() }
    }
}

pub fn budget(p: u64) -> f64 {
    let p = p as f64;
    p.sqrt() * p.ln().powi(2)
}

/// Reference cost shape of Shoup's construction, `sqrt(p) (ln p)^3`.
pub fn shoup_model(p: u64) -> f64 {
    let p = p as f64;
    p.sqrt() * p.ln().powi(3)
}

/// Scans `b` in schedule order and, for each, `a` from `interval_start`
/// upward. When a whole round fails the interval doubles and only the new
/// stretch is scanned, again `b` by `b`.
pub fn construct_irreducible(p: PrimeModulus, f: &Poly, schedule: &ForgeSchedule) -> Result<ForgeReport> {
    if f.modulus() != p {
        return Err(Error::ModulusMismatch(p.get(), f.p()));
    }
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let d = match f.degree() {
        Some(d) if d >= 2 => d,
        other => return Err(Error::Degree { got: other.unwrap_or(0), reason: "forge needs degree >= 2" }),
    };
    if p.get() <= d as u64 + 1 {
        return Err(Error::CharacteristicTooSmall { p: p.get(), bound: d as u64 + 1 });
    }
    schedule.validate()?;

    let started = Instant::now();
    let counter = MulCounter::new();
    let bs = schedule.b_values(p, d);
    let start = p.reduce(schedule.interval_start);
    let base_len = schedule.base_length(p.get());
    let mut rabin_calls = 0u64;
    let mut scanned = 0u64;
    for round in 0..=schedule.max_doublings {
        let len = base_len.saturating_mul(1 << round.min(63)).min(p.get());
        if len == scanned {
            break;
        }
        for &b in &bs {
            let with_b = f.add_to_coeff(1, b);
            for i in scanned..len {
                let a = p.add(start, p.reduce(i));
                let candidate = with_b.add_to_coeff(0, a);
                rabin_calls += 1;
                if rabin_irreducible_counted(&candidate, &counter)? {
                    if !rabin_irreducible(&candidate)? {
                        return Err(Error::Invariant(format!("{candidate} failed re-verification")));
                    }
                    let field_mults = counter.get();
                    return Ok(ForgeReport {
                        p: p.get(),
                        d,
                        base: f.clone(),
                        found: candidate,
                        b_used: b,
                        a_used: a,
                        doublings: round,
                        interval_len: len,
                        rabin_calls,
                        field_mults,
                        budget_ratio: field_mults as f64 / budget(p.get()),
                        wall_time_secs: Some(started.elapsed().as_secs_f64()),
                    });
                }
            }
        }
        scanned = len;
    }
    Err(Error::Exhausted { doublings: schedule.max_doublings })
}

/// How the base polynomial is chosen for each prime of an experiment.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BaseRule {
    /// `x^d`
    Monomial,
    /// Fixed integer coefficients, lowest degree first, reduced mod each `p`.
    Coefficients(Vec<i64>),
}

impl BaseRule {
    pub fn build(&self, m: PrimeModulus, d: usize) -> Result<Poly> {
        match self {
            BaseRule::Monomial => Ok(Poly::monomial(m, 1, d)),
            BaseRule::Coefficients(c) => {
                let f = Poly::from_i64s(m, c);
                if f.degree() != Some(d) || !f.is_monic() {
                    return Err(Error::invalid(format!("base {f} is not monic of degree {d}")));
                }
                Ok(f)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScalingRow {
    pub p: u64,
    pub d: usize,
    pub b: u64,
    pub a: u64,
    pub rabin_calls: u64,
    pub field_mults: u64,
    pub budget_ratio: f64,
    pub shoup_model: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScalingTable {
    pub d: usize,
    pub rows: Vec<ScalingRow>,
    /// Least-squares slope of `ln field_mults` against `ln p`.
    pub slope: f64,
}

impl ScalingTable {
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        for row in &self.rows {
            w.serialize(row).map_err(|e| Error::invalid(format!("csv: {e}")))?;
        }
        let bytes = w.into_inner().map_err(|e| Error::invalid(format!("csv: {e}")))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

/// Least-squares slope of `ys` against `xs`.
pub fn fit_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// Runs the construction at every prime and fits the log-log slope of the
/// multiplication count. Primes may run on separate workers.
pub fn cost_scaling_experiment(
    p_list: &[u64],
    d: usize,
    rule: &BaseRule,
    schedule: &ForgeSchedule,
    workers: usize,
) -> Result<ScalingTable> {
    if p_list.len() < 3 {
        return Err(Error::invalid(format!("need at least 3 primes, got {}", p_list.len())));
    }
    if let Some(&p) = p_list.iter().find(|&&p| !is_prime_u64(p)) {
        return Err(Error::NotPrime(p));
    }
    let lo = *p_list.iter().min().unwrap() as f64;
    let hi = *p_list.iter().max().unwrap() as f64;
    if hi / lo < 100.0 {
        return Err(Error::invalid("primes must span at least two decades"));
    }
    let parts = map_chunks(p_list.len() as u64, workers.min(p_list.len()), |range| {
        range
            .map(|i| {
                let p = p_list[i as usize];
                let m = PrimeModulus::new(p)?;
                let r = construct_irreducible(m, &rule.build(m, d)?, schedule)?;
                Ok(ScalingRow {
                    p,
                    d,
                    b: r.b_used,
                    a: r.a_used,
                    rabin_calls: r.rabin_calls,
                    field_mults: r.field_mults,
                    budget_ratio: r.budget_ratio,
                    shoup_model: shoup_model(p),
                })
            })
            .collect::<Result<Vec<_>>>()
    })?;
    let rows: Vec<ScalingRow> = parts.into_iter().flatten().collect();
    let xs: Vec<f64> = rows.iter().map(|r| (r.p as f64).ln()).collect();
    let ys: Vec<f64> = rows.iter().map(|r| (r.field_mults as f64).ln()).collect();
    Ok(ScalingTable { d, slope: fit_slope(&xs, &ys), rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(p: u64) -> PrimeModulus {
        PrimeModulus::new(p).unwrap()
    }

    #[test]
    fn immediate_hit_on_irreducible_base() {
        // x^3 + x + 1 has no root mod 7
        let f = Poly::from_i64s(m(7), &[1, 1, 0, 1]);
        assert!(rabin_irreducible(&f).unwrap());
        let r = construct_irreducible(m(7), &f, &ForgeSchedule::default()).unwrap();
        assert_eq!((r.b_used, r.a_used, r.rabin_calls), (0, 0, 1));
        assert_eq!(r.found, f);
    }

    #[test]
    fn first_hit_in_scan_order_at_31() {
        let mm = m(31);
        let f = Poly::monomial(mm, 1, 3);
        let s = ForgeSchedule::default();
        let r = construct_irreducible(mm, &f, &s).unwrap();
        let len = s.base_length(31);
        let first = s
            .b_values(mm, 3)
            .into_iter()
            .flat_map(|b| (0..len).map(move |a| (b, a)))
            .find(|&(b, a)| rabin_irreducible(&Poly::new(mm, vec![a, b, 0, 1])).unwrap())
            .unwrap();
        assert_eq!((r.b_used, r.a_used), first);
        assert_eq!(r.doublings, 0);
    }

    #[test]
    fn schedule_defaults_and_validation() {
        let s = ForgeSchedule::default();
        assert_eq!(s.b_values(m(101), 3), (0..12).collect::<Vec<_>>());
        assert_eq!(s.base_length(10007), (2.0 * 10007f64.sqrt() * 10007f64.ln()).ceil() as u64);
        assert_eq!(s.base_length(7), 7);
        let bad = ForgeSchedule { interval_factor: Ratio::from_integer(0), ..s.clone() };
        assert!(bad.validate().is_err());
        let e = ForgeSchedule { b_order: BOrder::Explicit(vec![3, 3, 5]), ..s };
        assert_eq!(e.b_values(m(101), 3), vec![3, 5]);
    }

    #[test]
    fn exhaustion_is_reported() {
        // x^2 + a with only b = 0 and a in {0} (a square): no hit possible
        let mm = m(13);
        let s = ForgeSchedule {
            b_order: BOrder::Explicit(vec![0]),
            b_prefix: Some(1),
            interval_factor: Ratio::new(1, 1000),
            interval_start: 0,
            max_doublings: 0,
        };
        let f = Poly::monomial(mm, 1, 2);
        assert_eq!(construct_irreducible(mm, &f, &s), Err(Error::Exhausted { doublings: 0 }));
    }

    #[test]
    fn doubling_extends_the_scan() {
        let mm = m(13);
        let s = ForgeSchedule {
            b_order: BOrder::Explicit(vec![0]),
            b_prefix: Some(1),
            interval_factor: Ratio::new(1, 1000),
            interval_start: 0,
            max_doublings: 3,
        };
        // x^2 + a is irreducible iff -a is a non-square: a = 0, 1 fail, a = 2 hits
        let r = construct_irreducible(mm, &Poly::monomial(mm, 1, 2), &s).unwrap();
        assert_eq!((r.a_used, r.doublings, r.rabin_calls), (2, 2, 3));
        assert!(rabin_irreducible(&r.found).unwrap());
    }

    #[test]
    fn scaling_preconditions() {
        let s = ForgeSchedule::default();
        assert!(cost_scaling_experiment(&[1009], 3, &BaseRule::Monomial, &s, 1).is_err());
        assert!(cost_scaling_experiment(&[101, 103, 107], 3, &BaseRule::Monomial, &s, 1).is_err());
        assert_eq!(
            cost_scaling_experiment(&[101, 1009, 10001], 3, &BaseRule::Monomial, &s, 1),
            Err(Error::NotPrime(10001))
        );
    }

    #[test]
    fn slope_of_a_power_law() {
        let xs = [1.0, 2.0, 3.0, 4.0];
        let ys: Vec<f64> = xs.iter().map(|x| 0.5 * x + 3.0).collect();
        assert!((fit_slope(&xs, &ys) - 0.5).abs() < 1e-12);
    }
}
