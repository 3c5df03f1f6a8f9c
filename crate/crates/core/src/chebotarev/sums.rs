use std::str::FromStr;

use serde::Serialize;

use super::artin::check_distinct;
use super::interval::IntervalFp;
use crate::error::{Error, Result};
use crate::factor::{divisor_function, moebius, rabin_irreducible};
use crate::ffpoly::Poly;
use crate::parallel::map_chunks;

fn check_family(f: &Poly, interval: &IntervalFp) -> Result<()> {
    if interval.modulus() != f.modulus() {
        return Err(Error::ModulusMismatch(f.p(), interval.modulus().get()));
    }
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    if f.is_constant() {
        return Err(Error::Degree { got: 0, reason: "need a nonconstant polynomial" });
    }
    Ok(())
}

/// `sum_{a in I} prod_j mu(f + h_j + a)`.
pub fn chowla_sum(f: &Poly, shifts: &[u64], interval: &IntervalFp, workers: usize) -> Result<i64> {
    check_family(f, interval)?;
    let h = check_distinct(f.modulus(), shifts)?;
    let parts = map_chunks(interval.len(), workers, |range| {
        let mut acc = 0i64;
        for i in range {
            let a = interval.element(i);
            let mut prod = 1i64;
            for &hj in &h {
                prod *= moebius(&f.add_to_coeff(0, hj + a))? as i64;
                if prod == 0 {
                    break;
                }
            }
            acc += prod;
        }
        Ok(acc)
    })?;
    Ok(parts.into_iter().sum())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DivisorMode {
    /// `sum d_r(f + a) d_r(f + 1 + a)`
    Shifted,
    /// `sum [f + a irreducible] d_r(f + 1 + a)`
    Titchmarsh,
}

impl FromStr for DivisorMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "shifted" => Ok(DivisorMode::Shifted),
            "titchmarsh" => Ok(DivisorMode::Titchmarsh),
            _ => Err(Error::Parse(format!("unknown divisor mode {s:?}"))),
        }
    }
}

pub fn divisor_sums(f: &Poly, r: u32, interval: &IntervalFp, mode: DivisorMode, workers: usize) -> Result<u64> {
    if r < 2 {
        return Err(Error::invalid(format!("divisor sums need r >= 2, got {r}")));
    }
    check_family(f, interval)?;
    let overflow = || Error::Overflow("divisor_sums");
    let parts = map_chunks(interval.len(), workers, |range| {
        let mut acc = 0u64;
        for i in range {
            let a = interval.element(i);
            let here = f.add_to_coeff(0, a);
            let first = match mode {
                DivisorMode::Shifted => divisor_function(&here, r)?,
                DivisorMode::Titchmarsh => rabin_irreducible(&here)? as u64,
            };
            if first == 0 {
                continue;
            }
            let next = divisor_function(&here.add_to_coeff(0, 1), r)?;
            acc = first.checked_mul(next).and_then(|t| acc.checked_add(t)).ok_or_else(overflow)?;
        }
        Ok(acc)
    })?;
    parts.into_iter().try_fold(0u64, |acc, v| acc.checked_add(v).ok_or_else(overflow))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffpoly::PrimeModulus;

    fn m(p: u64) -> PrimeModulus {
        PrimeModulus::new(p).unwrap()
    }

    fn poly(p: u64, c: &[i64]) -> Poly {
        Poly::from_i64s(m(p), c)
    }

    #[test]
    fn chowla_singleton_matches_moebius() {
        let f = poly(13, &[0, 1, 0, 1]);
        for a0 in 0..13 {
            let i = IntervalFp::new(m(13), a0, 1).unwrap();
            let want = moebius(&f.add_to_coeff(0, a0)).unwrap() as i64 * moebius(&f.add_to_coeff(0, a0 + 1)).unwrap() as i64;
            assert_eq!(chowla_sum(&f, &[0, 1], &i, 1).unwrap(), want);
        }
    }

    #[test]
    fn chowla_rejects_duplicate_shifts() {
        let f = poly(13, &[0, 1, 0, 1]);
        assert!(chowla_sum(&f, &[2, 15], &IntervalFp::full(m(13)), 1).is_err());
    }

    #[test]
    fn non_squarefree_points_contribute_nothing() {
        // x^3 + a over F_7 at a = 0 is x^3
        let f = poly(7, &[0, 0, 0, 1]);
        assert_eq!(chowla_sum(&f, &[0], &IntervalFp::new(m(7), 0, 1).unwrap(), 1).unwrap(), 0);
    }

    #[test]
    fn divisor_singletons() {
        let f = poly(11, &[0, 2, 0, 1]);
        for a0 in 0..11 {
            let i = IntervalFp::new(m(11), a0, 1).unwrap();
            let g = f.add_to_coeff(0, a0);
            let h = g.add_to_coeff(0, 1);
            let want = divisor_function(&g, 3).unwrap() * divisor_function(&h, 3).unwrap();
            assert_eq!(divisor_sums(&f, 3, &i, DivisorMode::Shifted, 1).unwrap(), want);
            let want = rabin_irreducible(&g).unwrap() as u64 * divisor_function(&h, 3).unwrap();
            assert_eq!(divisor_sums(&f, 3, &i, DivisorMode::Titchmarsh, 1).unwrap(), want);
        }
        assert!(divisor_sums(&f, 1, &IntervalFp::full(m(11)), DivisorMode::Shifted, 1).is_err());
    }

    #[test]
    fn titchmarsh_vanishes_without_irreducibles() {
        // x^2 + a over F_7 on the interval {0, 6, 5}: -a is a square each time
        let f = poly(7, &[0, 0, 1]);
        let i = IntervalFp::new(m(7), 5, 3).unwrap();
        assert_eq!(divisor_sums(&f, 2, &i, DivisorMode::Titchmarsh, 1).unwrap(), 0);
    }
}
