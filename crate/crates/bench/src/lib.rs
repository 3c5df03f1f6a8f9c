//! Inputs shared by the benchmarks.

use fpcheb::{Poly, PrimeModulus};

/// `x^d + x + 1` over `F_p`.
pub fn trinomial(p: u64, d: usize) -> Poly {
    let m = PrimeModulus::new(p).expect("benchmark primes are prime");
    Poly::monomial(m, 1, d).add_to_coeff(1, 1).add_to_coeff(0, 1)
}
