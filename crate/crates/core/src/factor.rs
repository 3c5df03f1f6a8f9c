//! Irreducibility, factorization types and full factorization over `F_p`.
//!
//! The deterministic pieces (Rabin's test, squarefree and distinct-degree
//! factorization) are enough for factorization types, the Möbius function
//! and divisor functions. Only [`full_factorization`] needs equal-degree
//! splitting, which is randomized with a stream derived from the input.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffpoly::{prime_divisors, require_monic_nonconstant, MonicReducer, MulCounter, Poly};

/// Nondecreasing degrees of the irreducible factors, repeated by
/// multiplicity. Doubles as a partition label (cycle type).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct FactorizationType(Vec<usize>);

impl FactorizationType {
    /// Sorts the parts; rejects empty input and zero parts.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::invalid("a factorization type needs positive parts"));
        }
        parts.sort_unstable();
        Ok(FactorizationType(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.iter().sum()
    }

    /// The single-part type `(d)`.
    pub fn irreducible(d: usize) -> Self {
        FactorizationType(vec![d])
    }

    pub fn is_irreducible(&self) -> bool {
        self.0.len() == 1
    }
}

impl TryFrom<Vec<usize>> for FactorizationType {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        FactorizationType::new(v)
    }
}

impl From<FactorizationType> for Vec<usize> {
    fn from(t: FactorizationType) -> Vec<usize> {
        t.0
    }
}

impl fmt::Display for FactorizationType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|d| d.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for FactorizationType {
    type Err = Error;

    /// Accepts `1,2`, `(1,2)` or `1 2`.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts = inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad part {t:?} in {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        FactorizationType::new(parts)
    }
}

/// One irreducible factor with its exponent, serialized as `{poly, exp}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorPower {
    pub poly: Poly,
    pub exp: u32,
}

/// `unit * prod poly^exp` with monic, distinct, irreducible factors sorted
/// by degree and then coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    pub unit: u64,
    pub factors: Vec<FactorPower>,
}

impl Factorization {
    pub fn factorization_type(&self) -> Option<FactorizationType> {
        let mut parts = Vec::new();
        for fp in &self.factors {
            let d = fp.poly.degree().unwrap_or(0);
            parts.extend(std::iter::repeat_n(d, fp.exp as usize));
        }
        FactorizationType::new(parts).ok()
    }

    /// Multiplies everything back out.
    pub fn expand(&self, modulus: crate::ffpoly::PrimeModulus) -> Poly {
        self.factors
            .iter()
            .fold(Poly::constant(modulus, self.unit), |acc, fp| &acc * &fp.poly.pow(fp.exp))
    }
}

/// Rabin's test: `x^(p^d) = x mod f` and `gcd(x^(p^(d/q)) - x, f) = 1` for
/// every prime `q | d`.
///
/// The Frobenius images `x^(p^k)` are built one power at a time; the gcd
/// checks run as soon as `k = d/q` is reached, so reducible inputs usually
/// exit early. A full run costs `O(d^2 log p)` multiplications per power,
/// `d` powers, plus one gcd per prime divisor of `d`.
pub fn rabin_irreducible(f: &Poly) -> Result<bool> {
    rabin_irreducible_counted(f, &MulCounter::new())
}

pub fn rabin_irreducible_counted(f: &Poly, counter: &MulCounter) -> Result<bool> {
    require_monic_nonconstant(f)?;
    let d = f.degree().unwrap();
    if d == 1 {
        return Ok(true);
    }
    let mut checkpoints: Vec<usize> =
        prime_divisors(d as u64).into_iter().map(|q| d / q as usize).collect();
    checkpoints.sort_unstable();

    let x = Poly::x(f.modulus());
    let mut red = MonicReducer::new(f)?;
    let x_res = red.x_residue(counter);
    let mut h = x_res.clone();
    for k in 1..=d {
        h = red.frobenius(&h, counter);
        if checkpoints.binary_search(&k).is_ok() {
            let diff = &red.to_poly(h.clone()) - &x;
            if !f.gcd_counted(&diff, counter)?.is_one() {
                return Ok(false);
            }
        }
    }
    Ok(h == x_res)
}

/// Squarefree decomposition of a monic nonconstant polynomial: pairwise
/// coprime squarefree parts `g_i` with multiplicities, `f = prod g_i^e_i`.
/// Handles the characteristic-`p` case by recursing on `p`-th roots.
pub fn squarefree_decomposition(f: &Poly) -> Result<Vec<(Poly, u32)>> {
    require_monic_nonconstant(f)?;
    let mut out = Vec::new();
    sqf_into(f, 1, &mut out)?;
    Ok(out)
}

fn sqf_into(f: &Poly, scale: u32, out: &mut Vec<(Poly, u32)>) -> Result<()> {
    let p = f.p() as u32;
    let df = f.derivative();
    if df.is_zero() {
        return sqf_into(&pth_root(f), scale * p, out);
    }
    let mut c = f.gcd(&df)?;
    let mut w = f.div_exact(&c)?;
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c)?;
        let z = w.div_exact(&y)?;
        if !z.is_one() {
            out.push((z, i * scale));
        }
        i += 1;
        c = c.div_exact(&y)?;
        w = y;
    }
    if !c.is_one() {
        sqf_into(&pth_root(&c), scale * p, out)?;
    }
    Ok(())
}

/// `g` with `g(x)^p = f(x)`, valid when `f` is a polynomial in `x^p`.
fn pth_root(f: &Poly) -> Poly {
    let p = f.p() as usize;
    let coeffs = f.coeffs().iter().step_by(p).copied().collect();
    Poly::new(f.modulus(), coeffs)
}

/// Distinct-degree factorization of a monic squarefree polynomial: pairs
/// `(k, g_k)` where `g_k` is the product of all irreducible factors of
/// degree `k`. Slices are returned in increasing `k`.
pub fn distinct_degree_factorization(f: &Poly) -> Result<Vec<(usize, Poly)>> {
    distinct_degree_counted(f, &MulCounter::new())
}

pub(crate) fn distinct_degree_counted(f: &Poly, counter: &MulCounter) -> Result<Vec<(usize, Poly)>> {
    require_monic_nonconstant(f)?;
    let x = Poly::x(f.modulus());
    let mut out = Vec::new();
    let mut g = f.clone();
    let mut red = MonicReducer::new(&g)?;
    let mut h = red.x_residue(counter);
    let mut k = 0;
    while g.degree().unwrap() >= 2 * (k + 1) {
        k += 1;
        h = red.frobenius(&h, counter);
        let diff = &red.to_poly(h.clone()) - &x;
        let common = g.gcd_counted(&diff, counter)?;
        if !common.is_one() {
            g = g.div_exact(&common)?;
            out.push((k, common));
            if g.is_one() {
                return Ok(out);
            }
            let hp = red.to_poly(h);
            red = MonicReducer::new(&g)?;
            h = red.residue(&hp, counter);
        }
    }
    if !g.is_one() {
        out.push((g.degree().unwrap(), g));
    }
    Ok(out)
}

/// Degrees of the full factorization, with multiplicity, using only
/// squarefree and distinct-degree factorization: a slice of total degree
/// `D` at degree `k` holds `D / k` factors.
pub fn factorization_type(f: &Poly) -> Result<FactorizationType> {
    let mut parts = Vec::new();
    for (part, e) in squarefree_decomposition(f)? {
        for (k, slice) in distinct_degree_factorization(&part)? {
            let n = slice.degree().unwrap() / k;
            parts.extend(std::iter::repeat_n(k, n * e as usize));
        }
    }
    FactorizationType::new(parts)
}

/// [`factorization_type`] for an input already known to be monic and
/// squarefree, skipping the squarefree decomposition.
pub fn squarefree_factorization_type(f: &Poly) -> Result<FactorizationType> {
    let mut parts = Vec::new();
    for (k, slice) in distinct_degree_factorization(f)? {
        parts.extend(std::iter::repeat_n(k, slice.degree().unwrap() / k));
    }
    FactorizationType::new(parts)
}

/// Irreducible-factor counts keyed by `(degree, exponent)`.
fn factor_shape(f: &Poly) -> Result<Vec<(usize, u32, usize)>> {
    let mut out = Vec::new();
    for (part, e) in squarefree_decomposition(f)? {
        for (k, slice) in distinct_degree_factorization(&part)? {
            out.push((k, e, slice.degree().unwrap() / k));
        }
    }
    Ok(out)
}

fn stream_seed(f: &Poly, seed: u64) -> u64 {
    fn mix(mut z: u64) -> u64 {
        z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }
    let mut h = mix(seed ^ 0x6a09_e667_f3bc_c908);
    h = mix(h ^ f.p());
    for &c in f.coeffs() {
        h = mix(h ^ c);
    }
    h
}

/// Cantor-Zassenhaus splitting of a monic squarefree `g` whose irreducible
/// factors all have degree `k`.
fn equal_degree_split(g: &Poly, k: usize, rng: &mut ChaCha8Rng, out: &mut Vec<Poly>) -> Result<()> {
    let n = g.degree().unwrap();
    if n == k {
        out.push(g.clone());
        return Ok(());
    }
    let m = g.modulus();
    let p = m.get();
    let counter = MulCounter::new();
    let mut red = MonicReducer::new(g)?;
    loop {
        let a: Vec<u64> = (0..n).map(|_| rng.random_range(0..p)).collect();
        if a[1..].iter().all(|&c| c == 0) {
            continue;
        }
        // a^((p^k - 1)/2) = prod_{i<k} (a^((p-1)/2))^(p^i)
        let t = red.pow(&a, (p - 1) / 2, &counter);
        let mut acc = t.clone();
        let mut ti = t;
        for _ in 1..k {
            ti = red.frobenius(&ti, &counter);
            let mut next = vec![0; n];
            red.mul_into(&acc, &ti, &mut next, &counter);
            acc = next;
        }
        let cand = &red.to_poly(acc) - &Poly::one(m);
        if cand.is_zero() {
            continue;
        }
        let b = g.gcd(&cand)?;
        let db = b.degree().unwrap();
        if db > 0 && db < n {
            equal_degree_split(&b, k, rng, out)?;
            equal_degree_split(&g.div_exact(&b)?, k, rng, out)?;
            return Ok(());
        }
    }
}

/// Complete factorization. Equal-degree splitting draws from a ChaCha
/// stream seeded by `(p, coefficients, seed)`, so the output is a pure
/// function of the inputs.
pub fn full_factorization(f: &Poly, seed: u64) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let unit = f.leading_coeff();
    let fm = f.monic();
    let mut factors = Vec::new();
    if !fm.is_constant() {
        let mut rng = ChaCha8Rng::seed_from_u64(stream_seed(&fm, seed));
        for (part, e) in squarefree_decomposition(&fm)? {
            for (k, slice) in distinct_degree_factorization(&part)? {
                let mut split = Vec::new();
                equal_degree_split(&slice, k, &mut rng, &mut split)?;
                factors.extend(split.into_iter().map(|poly| FactorPower { poly, exp: e }));
            }
        }
    }
    for fp in &factors {
        if !rabin_irreducible(&fp.poly)? {
            return Err(Error::Invariant(format!("factor {} is reducible", fp.poly)));
        }
    }
    factors.sort_by(|a, b| {
        (a.poly.degree(), a.poly.coeffs()).cmp(&(b.poly.degree(), b.poly.coeffs()))
    });
    Ok(Factorization { unit, factors })
}

/// Function-field Möbius function of a monic polynomial.
pub fn moebius(f: &Poly) -> Result<i8> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    if f.is_constant() {
        return Ok(1);
    }
    if !crate::ffpoly::is_squarefree(f)? {
        return Ok(0);
    }
    let count: usize = distinct_degree_factorization(f)?
        .iter()
        .map(|(k, slice)| slice.degree().unwrap() / k)
        .sum();
    Ok(if count.is_multiple_of(2) { 1 } else { -1 })
}

fn binomial(n: u64, k: u64) -> Option<u128> {
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

/// Number of ordered `r`-tuples of monic polynomials with product `f`:
/// `prod_i binom(e_i + r - 1, r - 1)` over the factor exponents `e_i`.
pub fn divisor_function(f: &Poly, r: u32) -> Result<u64> {
    if r < 2 {
        return Err(Error::invalid(format!("divisor function needs r >= 2, got {r}")));
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    if f.is_constant() {
        return Ok(1);
    }
    let overflow = || Error::Overflow("divisor_function");
    let mut acc: u128 = 1;
    for (_, e, count) in factor_shape(f)? {
        let b = binomial(e as u64 + r as u64 - 1, r as u64 - 1).ok_or_else(overflow)?;
        for _ in 0..count {
            acc = acc.checked_mul(b).ok_or_else(overflow)?;
        }
    }
    u64::try_from(acc).map_err(|_| overflow())
}
