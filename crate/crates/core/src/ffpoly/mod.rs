//! Arithmetic in `F_p` and `F_p[x]`.

mod counter;
mod frobenius;
mod modulus;
mod poly;
mod resultant;

pub use counter::MulCounter;
pub use frobenius::{frobenius_power, frobenius_power_counted};
pub(crate) use frobenius::{require_monic_nonconstant, MonicReducer};
pub use modulus::{is_prime_u64, prime_divisors, PrimeModulus};
pub use poly::Poly;
pub use resultant::{discriminant, interpolate, resultant};

use crate::error::{Error, Result};

/// `gcd(f, f') = 1`. Nonzero constants are squarefree; a nonconstant `f`
/// with `f' = 0` (a polynomial in `x^p`) is a `p`-th power and is not.
pub fn is_squarefree(f: &Poly) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.is_constant() {
        return Ok(true);
    }
    let df = f.derivative();
    if df.is_zero() {
        return Ok(false);
    }
    Ok(f.gcd(&df)?.is_one())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(p: u64, c: &[i64]) -> Poly {
        Poly::from_i64s(PrimeModulus::new(p).unwrap(), c)
    }

    #[test]
    fn squarefree_examples() {
        assert!(!is_squarefree(&poly(5, &[0, 0, 1])).unwrap());
        assert!(is_squarefree(&poly(3, &[1, 0, 1])).unwrap());
        for p in [3u64, 5, 7, 11] {
            let mut c = vec![0i64; p as usize + 1];
            c[0] = -1;
            c[p as usize] = 1;
            assert!(!is_squarefree(&poly(p, &c)).unwrap(), "x^{p} - 1");
        }
        assert!(is_squarefree(&poly(7, &[3])).unwrap());
        assert_eq!(is_squarefree(&poly(7, &[])), Err(Error::ZeroPolynomial));
    }
}
