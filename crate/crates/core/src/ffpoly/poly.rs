use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::counter::MulCounter;
use super::modulus::PrimeModulus;
use crate::error::{Error, Result};

/// Dense univariate polynomial over `F_p`, lowest degree first.
///
/// The coefficient vector never carries trailing zeros, so the zero
/// polynomial is the empty vector and `coeffs.len() - 1` is the degree of
/// anything nonzero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    modulus: PrimeModulus,
    coeffs: Vec<u64>,
}

impl Poly {
    /// Builds a polynomial from arbitrary residues; reduces and trims.
    pub fn new(modulus: PrimeModulus, coeffs: Vec<u64>) -> Self {
        let mut coeffs = coeffs;
        for c in coeffs.iter_mut() {
            *c = modulus.reduce(*c);
        }
        let mut out = Poly { modulus, coeffs };
        out.trim();
        out
    }

    pub fn from_i64s(modulus: PrimeModulus, coeffs: &[i64]) -> Self {
        let coeffs = coeffs.iter().map(|&c| modulus.from_i64(c)).collect();
        Poly { modulus, coeffs }.trimmed()
    }

    /// Takes already-reduced residues; only trims.
    pub(crate) fn from_raw(modulus: PrimeModulus, coeffs: Vec<u64>) -> Self {
        debug_assert!(coeffs.iter().all(|&c| c < modulus.get()));
        Poly { modulus, coeffs }.trimmed()
    }

    pub fn zero(modulus: PrimeModulus) -> Self {
        Poly { modulus, coeffs: Vec::new() }
    }

    pub fn one(modulus: PrimeModulus) -> Self {
        Self::constant(modulus, 1)
    }

    pub fn constant(modulus: PrimeModulus, c: u64) -> Self {
        Self::new(modulus, vec![c])
    }

    pub fn x(modulus: PrimeModulus) -> Self {
        Self::monomial(modulus, 1, 1)
    }

    /// `c * x^k`.
    pub fn monomial(modulus: PrimeModulus, c: u64, k: usize) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c;
        Self::new(modulus, coeffs)
    }

    /// `prod (x - r)` over the given roots.
    pub fn from_roots(modulus: PrimeModulus, roots: &[u64]) -> Self {
        roots.iter().fold(Self::one(modulus), |acc, &r| {
            &acc * &Poly::new(modulus, vec![modulus.neg(modulus.reduce(r)), 1])
        })
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    fn trimmed(mut self) -> Self {
        self.trim();
        self
    }

    #[inline]
    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.modulus.get()
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<u64> {
        self.coeffs
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn leading_coeff(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff() == 1
    }

    /// Returns a copy with one coefficient replaced.
    pub fn with_coeff(&self, i: usize, c: u64) -> Self {
        let mut coeffs = self.coeffs.clone();
        if coeffs.len() <= i {
            coeffs.resize(i + 1, 0);
        }
        coeffs[i] = self.modulus.reduce(c);
        Poly { modulus: self.modulus, coeffs }.trimmed()
    }

    /// Returns a copy with `c` added to the coefficient of `x^i`.
    pub fn add_to_coeff(&self, i: usize, c: u64) -> Self {
        let current = self.coeff(i);
        self.with_coeff(i, self.modulus.add(current, self.modulus.reduce(c)))
    }

    pub fn scale(&self, c: u64) -> Self {
        let m = self.modulus;
        let c = m.reduce(c);
        Poly::from_raw(m, self.coeffs.iter().map(|&a| m.mul(a, c)).collect())
    }

    /// Divides through by the leading coefficient. Zero stays zero.
    pub fn monic(&self) -> Self {
        match self.modulus.inv(self.leading_coeff()) {
            Some(inv) if inv != 1 => self.scale(inv),
            _ => self.clone(),
        }
    }

    pub fn derivative(&self) -> Self {
        let m = self.modulus;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| m.mul(c, m.reduce(i as u64)))
            .collect();
        Poly::from_raw(m, coeffs)
    }

    pub fn eval(&self, x: u64) -> u64 {
        let m = self.modulus;
        let x = m.reduce(x);
        self.coeffs.iter().rev().fold(0, |acc, &c| m.add(m.mul(acc, x), c))
    }

    /// `f(x + c)` by repeated synthetic division (Taylor shift).
    pub fn translate(&self, c: u64) -> Self {
        let m = self.modulus;
        let c = m.reduce(c);
        let mut a = self.coeffs.clone();
        let n = a.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                a[j] = m.add(a[j], m.mul(c, a[j + 1]));
            }
        }
        Poly::from_raw(m, a)
    }

    /// `f(x^k)`.
    pub fn inflate(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0; (self.coeffs.len() - 1) * k + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c;
        }
        Poly::from_raw(self.modulus, coeffs)
    }

    pub(crate) fn check_same(&self, other: &Poly) -> Result<()> {
        if self.modulus != other.modulus {
            Err(Error::ModulusMismatch(self.p(), other.p()))
        } else {
            Ok(())
        }
    }

    pub fn mul_counted(&self, other: &Poly, counter: &MulCounter) -> Poly {
        assert_eq!(self.modulus, other.modulus, "modulus mismatch");
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.modulus);
        }
        let m = self.modulus;
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            counter.add(other.coeffs.len() as u64);
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = m.add(out[i + j], m.mul(a, b));
            }
        }
        Poly::from_raw(m, out)
    }

    /// Euclidean division: `self = q * g + r` with `deg r < deg g`.
    pub fn divrem(&self, g: &Poly) -> Result<(Poly, Poly)> {
        self.divrem_counted(g, &MulCounter::new())
    }

    pub fn divrem_counted(&self, g: &Poly, counter: &MulCounter) -> Result<(Poly, Poly)> {
        self.check_same(g)?;
        if g.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let m = self.modulus;
        let dg = g.coeffs.len() - 1;
        if self.coeffs.len() <= dg {
            return Ok((Poly::zero(m), self.clone()));
        }
        let lc_inv = m.inv(g.leading_coeff()).expect("nonzero leading coefficient");
        let monic = lc_inv == 1;
        let mut r = self.coeffs.clone();
        let mut q = vec![0u64; r.len() - dg];
        for k in (0..q.len()).rev() {
            let top = r[k + dg];
            if top == 0 {
                continue;
            }
            let c = if monic {
                top
            } else {
                counter.add(1);
                m.mul(top, lc_inv)
            };
            q[k] = c;
            counter.add(dg as u64);
            for (j, &gj) in g.coeffs[..dg].iter().enumerate() {
                r[k + j] = m.sub(r[k + j], m.mul(c, gj));
            }
            r[k + dg] = 0;
        }
        r.truncate(dg);
        Ok((Poly::from_raw(m, q), Poly::from_raw(m, r)))
    }

    pub fn rem(&self, g: &Poly) -> Result<Poly> {
        Ok(self.divrem(g)?.1)
    }

    pub(crate) fn rem_counted(&self, g: &Poly, counter: &MulCounter) -> Result<Poly> {
        Ok(self.divrem_counted(g, counter)?.1)
    }

    /// Exact quotient; errors if `g` does not divide `self`.
    pub fn div_exact(&self, g: &Poly) -> Result<Poly> {
        let (q, r) = self.divrem(g)?;
        if !r.is_zero() {
            return Err(Error::invalid(format!("{g} does not divide {self}")));
        }
        Ok(q)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.gcd_counted(other, &MulCounter::new())
    }

    pub fn gcd_counted(&self, other: &Poly, counter: &MulCounter) -> Result<Poly> {
        self.check_same(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem_counted(&b, counter)?;
            a = b;
            b = r;
        }
        counter.add(a.coeffs.len() as u64);
        Ok(a.monic())
    }

    /// `self^e mod g` by square-and-multiply.
    pub fn pow_mod(&self, e: u64, g: &Poly) -> Result<Poly> {
        self.pow_mod_counted(e, g, &MulCounter::new())
    }

    pub fn pow_mod_counted(&self, mut e: u64, g: &Poly, counter: &MulCounter) -> Result<Poly> {
        self.check_same(g)?;
        if g.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut base = self.rem_counted(g, counter)?;
        let mut acc = Poly::one(self.modulus).rem_counted(g, counter)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_counted(&base, counter).rem_counted(g, counter)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_counted(&base, counter).rem_counted(g, counter)?;
            }
        }
        Ok(acc)
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut acc = Poly::one(self.modulus);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.modulus, rhs.modulus, "modulus mismatch");
        let m = self.modulus;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| m.add(self.coeff(i), rhs.coeff(i))).collect();
        Poly::from_raw(m, coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        assert_eq!(self.modulus, rhs.modulus, "modulus mismatch");
        let m = self.modulus;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| m.sub(self.coeff(i), rhs.coeff(i))).collect();
        Poly::from_raw(m, coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        let m = self.modulus;
        Poly::from_raw(m, self.coeffs.iter().map(|&c| m.neg(c)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        self.mul_counted(rhs, &MulCounter::new())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for Poly {
    /// Text form `p:<modulus>;<c0>,<c1>,...,<cd>`, lowest degree first.
    /// The zero polynomial prints as `p:<modulus>;0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p:{};", self.p())?;
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl FromStr for Poly {
    type Err = Error;

    /// Strict inverse of `Display`: residues must be in `[0, p)` and the
    /// last coefficient nonzero (except for the lone `0`).
    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::Parse(format!("{why} in {s:?}"));
        let rest = s.strip_prefix("p:").ok_or_else(|| bad("missing 'p:' prefix"))?;
        let (p_str, body) = rest.split_once(';').ok_or_else(|| bad("missing ';'"))?;
        let p: u64 = p_str.parse().map_err(|_| bad("bad modulus"))?;
        let modulus = PrimeModulus::new(p)?;
        if body.is_empty() {
            return Err(bad("empty coefficient list"));
        }
        let coeffs = body
            .split(',')
            .map(|c| {
                if c.len() > 1 && c.starts_with('0') {
                    return Err(bad("leading zero in residue"));
                }
                let v: u64 = c.parse().map_err(|_| bad("bad residue"))?;
                if v >= p {
                    return Err(bad("residue out of range"));
                }
                Ok(v)
            })
            .collect::<Result<Vec<u64>>>()?;
        if coeffs == [0] {
            return Ok(Poly::zero(modulus));
        }
        if coeffs.last() == Some(&0) {
            return Err(bad("trailing zero coefficient"));
        }
        Ok(Poly { modulus, coeffs })
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
