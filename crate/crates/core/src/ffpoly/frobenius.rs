//! Repeated `p`-th powering modulo a monic polynomial.
//!
//! Residues mod `f` are kept as dense vectors of exactly `deg f` entries so
//! the square-and-multiply loop runs without reallocating.

use super::counter::MulCounter;
use super::modulus::PrimeModulus;
use super::poly::Poly;
use crate::error::{Error, Result};

/// Fixed-buffer multiplication modulo a monic polynomial of degree `d >= 1`.
pub(crate) struct MonicReducer {
    m: PrimeModulus,
    /// Low coefficients of the modulus, `f = x^d + tail`.
    tail: Vec<u64>,
    prod: Vec<u64>,
}

impl MonicReducer {
    pub(crate) fn new(f: &Poly) -> Result<Self> {
        require_monic_nonconstant(f)?;
        let d = f.degree().unwrap();
        Ok(MonicReducer {
            m: f.modulus(),
            tail: f.coeffs()[..d].to_vec(),
            prod: vec![0; 2 * d],
        })
    }

    #[inline]
    pub(crate) fn degree(&self) -> usize {
        self.tail.len()
    }

    /// Pads or reduces a polynomial into the `d`-entry residue form.
    pub(crate) fn residue(&mut self, g: &Poly, counter: &MulCounter) -> Vec<u64> {
        let d = self.degree();
        let c = g.coeffs();
        if c.len() <= d {
            let mut v = c.to_vec();
            v.resize(d, 0);
            return v;
        }
        self.prod.clear();
        self.prod.extend_from_slice(c);
        self.reduce_prod(counter);
        self.prod[..d].to_vec()
    }

    /// Reduces `self.prod` (any length) in place to its low `d` entries.
    fn reduce_prod(&mut self, counter: &MulCounter) {
        let d = self.degree();
        let m = self.m;
        for top in (d..self.prod.len()).rev() {
            let c = self.prod[top];
            if c == 0 {
                continue;
            }
            counter.add(d as u64);
            let base = top - d;
            for (j, &t) in self.tail.iter().enumerate() {
                self.prod[base + j] = m.sub(self.prod[base + j], m.mul(c, t));
            }
            self.prod[top] = 0;
        }
    }

    /// `out = a * b mod f`.
    pub(crate) fn mul_into(&mut self, a: &[u64], b: &[u64], out: &mut [u64], counter: &MulCounter) {
        let d = self.degree();
        let m = self.m;
        self.prod.clear();
        self.prod.resize(2 * d - 1, 0);
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            counter.add(d as u64);
            for (j, &bj) in b.iter().enumerate() {
                self.prod[i + j] = m.add(self.prod[i + j], m.mul(ai, bj));
            }
        }
        self.reduce_prod(counter);
        out.copy_from_slice(&self.prod[..d]);
    }

    /// `v = x * v mod f`: a shift plus one reduction step.
    pub(crate) fn mul_by_x(&mut self, v: &mut [u64], counter: &MulCounter) {
        let d = self.degree();
        let m = self.m;
        let top = v[d - 1];
        for i in (1..d).rev() {
            v[i] = v[i - 1];
        }
        v[0] = 0;
        if top != 0 {
            counter.add(d as u64);
            for (j, &t) in self.tail.iter().enumerate() {
                v[j] = m.sub(v[j], m.mul(top, t));
            }
        }
    }

    /// `base^e mod f`, left-to-right binary.
    pub(crate) fn pow(&mut self, base: &[u64], e: u64, counter: &MulCounter) -> Vec<u64> {
        let d = self.degree();
        let mut acc = vec![0u64; d];
        if e == 0 {
            acc[0] = 1;
            return acc;
        }
        let is_x = d >= 2 && base[1] == 1 && base.iter().enumerate().all(|(i, &c)| i == 1 || c == 0);
        acc.copy_from_slice(base);
        let mut tmp = vec![0u64; d];
        for bit in (0..63 - e.leading_zeros()).rev() {
            self.mul_into(&acc, &acc, &mut tmp, counter);
            std::mem::swap(&mut acc, &mut tmp);
            if (e >> bit) & 1 == 1 {
                if is_x {
                    self.mul_by_x(&mut acc, counter);
                } else {
                    self.mul_into(&acc, base, &mut tmp, counter);
                    std::mem::swap(&mut acc, &mut tmp);
                }
            }
        }
        acc
    }

    /// `v^p mod f`.
    pub(crate) fn frobenius(&mut self, v: &[u64], counter: &MulCounter) -> Vec<u64> {
        let p = self.m.get();
        self.pow(v, p, counter)
    }

    /// `x mod f` in residue form.
    pub(crate) fn x_residue(&mut self, counter: &MulCounter) -> Vec<u64> {
        let x = Poly::x(self.m);
        self.residue(&x, counter)
    }

    pub(crate) fn to_poly(&self, v: Vec<u64>) -> Poly {
        Poly::from_raw(self.m, v)
    }
}

pub(crate) fn require_monic_nonconstant(f: &Poly) -> Result<()> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    if f.degree() == Some(0) {
        return Err(Error::Degree { got: 0, reason: "need a nonconstant modulus" });
    }
    Ok(())
}

/// `x^(p^k) mod f` for monic nonconstant `f`, computed as `k` successive
/// `p`-th powerings by square-and-multiply.
///
/// Each powering costs at most `2 * floor(log2 p)` modular products of
/// `d^2 + d(d-1)` field multiplications, so the whole call is
/// `O(d^2 log p * k)` multiplications.
pub fn frobenius_power(f: &Poly, k: u32) -> Result<Poly> {
    frobenius_power_counted(f, k, &MulCounter::new())
}

pub fn frobenius_power_counted(f: &Poly, k: u32, counter: &MulCounter) -> Result<Poly> {
    let mut red = MonicReducer::new(f)?;
    let mut h = red.x_residue(counter);
    for _ in 0..k {
        h = red.frobenius(&h, counter);
    }
    Ok(red.to_poly(h))
}
