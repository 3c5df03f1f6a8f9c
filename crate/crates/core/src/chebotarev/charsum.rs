//! Twisted class sums `S(b) = sum_{a in C} e(ba/p)` and the completion of
//! interval counts through them.
//!
//! `C` is the set of `a` in `F_p` with `f + a` unramified of a given type.
//! The full spectrum `b -> S(b)` is one length-`p` FFT of the indicator of
//! `C`; single values are summed directly, which makes the two paths
//! independent checks of each other.

use std::f64::consts::TAU;

use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;
use serde::Serialize;

use super::interval::IntervalFp;
use crate::error::{Error, Result};
use crate::factor::{squarefree_factorization_type, FactorizationType};
use crate::ffpoly::{discriminant, Poly, PrimeModulus};
use crate::parallel::map_chunks;

/// Character sums run only for `p` up to this bound, which keeps double
/// precision rounding far below the reported tolerances.
pub const MAX_CHARSUM_P: u64 = 1_000_000;

/// A complex value as written to JSON and CSV.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ComplexValue {
    pub re: f64,
    pub im: f64,
    pub abs: f64,
}

impl From<Complex64> for ComplexValue {
    fn from(z: Complex64) -> Self {
        ComplexValue { re: z.re, im: z.im, abs: z.norm() }
    }
}

/// `e(k/p) = exp(2 pi i k / p)` with `k` reduced first.
#[inline]
fn unit(k: u64, p: u64) -> Complex64 {
    let (s, c) = (TAU * (k % p) as f64 / p as f64).sin_cos();
    Complex64::new(c, s)
}

/// The set `{a in F_p : disc(f + a) != 0, type(f + a) = lambda}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassIndicator {
    modulus: PrimeModulus,
    lambda: FactorizationType,
    members: Vec<u64>,
    ramified: u64,
}

impl ClassIndicator {
    pub fn new(f: &Poly, lambda: &FactorizationType, workers: usize) -> Result<Self> {
        let m = f.modulus();
        let p = m.get();
        if p > MAX_CHARSUM_P {
            return Err(Error::ScanBoundExceeded { p, limit: MAX_CHARSUM_P });
        }
        if !f.is_monic() {
            return Err(Error::NotMonic);
        }
        let d = f.degree().unwrap_or(0);
        if d < 2 {
            return Err(Error::Degree { got: d, reason: "class sums need degree >= 2" });
        }
        if lambda.degree() != d {
            return Err(Error::invalid(format!("{lambda} is not a partition of {d}")));
        }
        let parts = map_chunks(p, workers, |range| {
            let mut members = Vec::new();
            let mut ramified = 0;
            for a in range {
                let g = f.add_to_coeff(0, a);
                if discriminant(&g)? == 0 {
                    ramified += 1;
                } else if &squarefree_factorization_type(&g)? == lambda {
                    members.push(a);
                }
            }
            Ok((members, ramified))
        })?;
        let mut members = Vec::new();
        let mut ramified = 0;
        for (mem, r) in parts {
            members.extend(mem);
            ramified += r;
        }
        Ok(ClassIndicator { modulus: m, lambda: lambda.clone(), members, ramified })
    }

    pub fn p(&self) -> u64 {
        self.modulus.get()
    }

    pub fn lambda(&self) -> &FactorizationType {
        &self.lambda
    }

    pub fn members(&self) -> &[u64] {
        &self.members
    }

    /// `N_lambda`, the size of the class.
    pub fn count(&self) -> u64 {
        self.members.len() as u64
    }

    pub fn ramified(&self) -> u64 {
        self.ramified
    }

    /// `S(b)` by direct summation.
    pub fn twisted_sum(&self, b: u64) -> Complex64 {
        let m = self.modulus;
        let b = m.reduce(b);
        self.members.iter().map(|&a| unit(m.mul(b, a), m.get())).sum()
    }

    /// `S(b)` for every `b` in `F_p`, by FFT.
    pub fn spectrum(&self) -> Vec<Complex64> {
        let p = self.p() as usize;
        let mut buf = vec![Complex64::new(0.0, 0.0); p];
        for &a in &self.members {
            buf[a as usize] = Complex64::new(1.0, 0.0);
        }
        // the unnormalized inverse transform has kernel e(+ba/p)
        FftPlanner::<f64>::new().plan_fft_inverse(p).process(&mut buf);
        buf
    }

    /// Number of members in `interval`.
    pub fn count_in(&self, interval: &IntervalFp) -> u64 {
        let p = self.p() as usize;
        let mut hit = vec![false; p];
        for &a in &self.members {
            hit[a as usize] = true;
        }
        interval.iter().filter(|&c| hit[c as usize]).count() as u64
    }
}

/// `S(b)` for the class `lambda` of the family `f + a`.
pub fn twisted_class_sum(f: &Poly, lambda: &FactorizationType, b: u64) -> Result<Complex64> {
    Ok(ClassIndicator::new(f, lambda, 1)?.twisted_sum(b))
}

/// `1_I^(b) = (1/p) sum_{c in I} e(-bc/p)`, by the closed geometric sum.
/// Arguments are reduced mod `p` before any floating point work, so a
/// complete interval gives exact zeros off `b = 0`.
pub fn interval_transform(interval: &IntervalFp, b: u64) -> Complex64 {
    let m = interval.modulus();
    let p = m.get();
    let n = interval.len();
    let (step, offset) = match interval.progression() {
        None => (m.reduce(b), 0),
        Some((a, c)) => (m.mul(m.reduce(b), a), m.mul(m.reduce(b), c)),
    };
    // sum_{i < n} e(-step (M + i) / p) * e(-offset / p)
    let sum = if step == 0 {
        Complex64::new(n as f64, 0.0)
    } else {
        let one_minus = |k: u64| {
            let theta = TAU * (k % p) as f64 / p as f64;
            let half = (theta / 2.0).sin();
            // 1 - e(-k/p)
            Complex64::new(2.0 * half * half, theta.sin())
        };
        let num = one_minus(((step as u128 * n as u128) % p as u128) as u64);
        let den = one_minus(step);
        unit(p - m.mul(step, interval.start()), p) * num / den
    };
    sum * unit(p - offset, p) / p as f64
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CompletedSum {
    pub p: u64,
    pub lambda: FactorizationType,
    pub interval: IntervalFp,
    /// `N_lambda` over all of `F_p`.
    pub class_count: u64,
    pub direct_count: u64,
    /// `sum_b 1_I^(b) S(b)`.
    pub fourier_reconstruction: ComplexValue,
    pub difference: f64,
    /// The `b = 0` term, `(|I| / p) N_lambda`.
    pub main_term: f64,
    /// `sum_{b != 0} |1_I^(b)| |S(b)|`.
    pub tail_bound: f64,
}

/// Counts class members in `interval` directly and through the completed
/// sum over all additive characters.
pub fn completed_sum_decomposition(
    f: &Poly,
    lambda: &FactorizationType,
    interval: &IntervalFp,
    workers: usize,
) -> Result<CompletedSum> {
    if interval.modulus() != f.modulus() {
        return Err(Error::ModulusMismatch(f.p(), interval.modulus().get()));
    }
    let ind = ClassIndicator::new(f, lambda, workers)?;
    completed_sum_from(&ind, interval)
}

pub fn completed_sum_from(ind: &ClassIndicator, interval: &IntervalFp) -> Result<CompletedSum> {
    let p = ind.p();
    if interval.modulus().get() != p {
        return Err(Error::ModulusMismatch(p, interval.modulus().get()));
    }
    let spectrum = ind.spectrum();
    let mut recon = Complex64::new(0.0, 0.0);
    let mut tail = 0.0;
    for (b, s) in spectrum.iter().enumerate() {
        let w = interval_transform(interval, b as u64);
        recon += w * s;
        if b != 0 {
            tail += w.norm() * s.norm();
        }
    }
    let direct = ind.count_in(interval);
    Ok(CompletedSum {
        p,
        lambda: ind.lambda().clone(),
        interval: *interval,
        class_count: ind.count(),
        direct_count: direct,
        fourier_reconstruction: recon.into(),
        difference: (recon - Complex64::new(direct as f64, 0.0)).norm(),
        main_term: interval.len() as f64 / p as f64 * ind.count() as f64,
        tail_bound: tail,
    })
}
