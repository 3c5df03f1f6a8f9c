//! Morse certification of one-parameter families and their exceptional
//! coefficient sets.
//!
//! A monic `f` of degree `d` is Morse when `f'` has `d - 1` distinct roots
//! with pairwise distinct critical values. Both conditions are read off a
//! single resultant: `R(y) = Res_x(f'(x), y - f(x))` has the critical values
//! as roots, so `f` is Morse exactly when `R` is squarefree of degree
//! `d - 1`. `R` is recovered by evaluating the resultant at `d` points of
//! `F_p` and interpolating.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ffpoly::{interpolate, is_squarefree, resultant, Poly, PrimeModulus};
use crate::parallel::map_chunks;

/// Largest `p` a bad-set scan accepts unless the caller raises the limit.
pub const DEFAULT_SCAN_LIMIT: u64 = 1_000_000;

/// The direction a one-parameter family moves in: `f(x) + t * g(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    /// `g = 1`
    AdditiveConstant,
    /// `g = x`
    LinearTerm,
    /// `g = x^m`
    Monomial(usize),
    GeneralG(Poly),
}

/// A base polynomial together with the direction of its family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyShape {
    kind: FamilyKind,
    base: Poly,
}

impl FamilyShape {
    pub fn new(kind: FamilyKind, base: Poly) -> Result<Self> {
        let d = match base.degree() {
            Some(d) if d >= 2 && base.is_monic() => d,
            Some(_) if !base.is_monic() => return Err(Error::NotMonic),
            other => {
                return Err(Error::Degree { got: other.unwrap_or(0), reason: "family base needs degree >= 2" })
            }
        };
        match &kind {
            FamilyKind::Monomial(m) if *m == 0 || *m >= d => {
                return Err(Error::invalid(format!("monomial exponent {m} outside [1, {}]", d - 1)));
            }
            FamilyKind::GeneralG(g) => {
                base.check_same(g)?;
                match g.degree() {
                    None => return Err(Error::ZeroPolynomial),
                    Some(e) if e >= d => {
                        return Err(Error::invalid(format!("deg g = {e} must be below deg f = {d}")));
                    }
                    _ => {}
                }
            }
            _ => {}
        }
        Ok(FamilyShape { kind, base })
    }

    pub fn kind(&self) -> &FamilyKind {
        &self.kind
    }

    pub fn base(&self) -> &Poly {
        &self.base
    }

    pub fn degree(&self) -> usize {
        self.base.degree().unwrap()
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.base.modulus()
    }

    /// The polynomial `g` multiplying the family parameter.
    pub fn direction(&self) -> Poly {
        let m = self.modulus();
        match &self.kind {
            FamilyKind::AdditiveConstant => Poly::one(m),
            FamilyKind::LinearTerm => Poly::x(m),
            FamilyKind::Monomial(k) => Poly::monomial(m, 1, *k),
            FamilyKind::GeneralG(g) => g.clone(),
        }
    }

    /// Index of the coefficient that `fixed` perturbs: the linear term for
    /// the additive family, the constant term otherwise.
    pub fn fixed_slot(&self) -> usize {
        match self.kind {
            FamilyKind::AdditiveConstant => 1,
            _ => 0,
        }
    }

    /// `base + fixed * x^slot`, the polynomial whose family is sampled.
    pub fn anchored(&self, fixed: u64) -> Poly {
        self.base.add_to_coeff(self.fixed_slot(), fixed)
    }

    /// `base + fixed * x^slot + alpha * g`.
    pub fn member(&self, fixed: u64, alpha: u64) -> Poly {
        let m = self.modulus();
        let mut c = self.anchored(fixed).into_coeffs();
        let alpha = m.reduce(alpha);
        match &self.kind {
            FamilyKind::AdditiveConstant => c[0] = m.add(c[0], alpha),
            FamilyKind::LinearTerm => c[1] = m.add(c[1], alpha),
            FamilyKind::Monomial(k) => c[*k] = m.add(c[*k], alpha),
            FamilyKind::GeneralG(g) => {
                for (ci, &gi) in c.iter_mut().zip(g.coeffs()) {
                    *ci = m.add(*ci, m.mul(alpha, gi));
                }
            }
        }
        Poly::new(m, c)
    }

    /// Short label, also the CLI syntax: `add-const`, `linear`,
    /// `monomial:<m>`, `general:<poly>`.
    pub fn label(&self) -> String {
        match &self.kind {
            FamilyKind::AdditiveConstant => "add-const".into(),
            FamilyKind::LinearTerm => "linear".into(),
            FamilyKind::Monomial(k) => format!("monomial:{k}"),
            FamilyKind::GeneralG(g) => format!("general:{g}"),
        }
    }
}

impl fmt::Display for FamilyShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {}", self.label(), self.base)
    }
}

impl FamilyKind {
    /// Parses the label syntax of [`FamilyShape::label`]. `general:` takes a
    /// polynomial in text form.
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "add-const" | "additive" => Ok(FamilyKind::AdditiveConstant),
            "linear" => Ok(FamilyKind::LinearTerm),
            _ => {
                if let Some(m) = s.strip_prefix("monomial:") {
                    let m = m.parse().map_err(|_| Error::Parse(format!("bad exponent in {s:?}")))?;
                    Ok(FamilyKind::Monomial(m))
                } else if let Some(g) = s.strip_prefix("general:") {
                    Ok(FamilyKind::GeneralG(Poly::from_str(g)?))
                } else {
                    Err(Error::Parse(format!("unknown family shape {s:?}")))
                }
            }
        }
    }
}

fn require_char_above(p: u64, bound: u64) -> Result<()> {
    if p <= bound {
        Err(Error::CharacteristicTooSmall { p, bound })
    } else {
        Ok(())
    }
}

/// `R(y) = Res_x(f'(x), y - f(x)) = d^d * prod_{f'(xi) = 0} (y - f(xi))`.
pub fn critical_value_polynomial(f: &Poly) -> Result<Poly> {
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let d = match f.degree() {
        Some(d) if d >= 2 => d,
        other => return Err(Error::Degree { got: other.unwrap_or(0), reason: "need degree >= 2" }),
    };
    require_char_above(f.p(), d as u64 + 1)?;
    let df = f.derivative();
    if df.degree() != Some(d - 1) {
        return Err(Error::Degree { got: df.degree().unwrap_or(0), reason: "derivative lost degree" });
    }
    let m = f.modulus();
    let neg_f = -f;
    let points = (0..d as u64)
        .map(|y| Ok((y, resultant(&df, &neg_f.add_to_coeff(0, y))?)))
        .collect::<Result<Vec<_>>>()?;
    interpolate(m, &points)
}

pub fn is_morse_polynomial(f: &Poly) -> Result<bool> {
    let r = critical_value_polynomial(f)?;
    let d = f.degree().unwrap();
    Ok(r.degree() == Some(d - 1) && is_squarefree(&r)?)
}

/// Geyer's sufficient condition on `f_circ` (the constant term is ignored)
/// and `g` with `1 <= deg g < deg f_circ`: `gcd(f_circ', g') = 1` and
/// `f_circ'' != 0`.
pub fn geyer_condition(f_circ: &Poly, g: &Poly) -> Result<bool> {
    f_circ.check_same(g)?;
    if !f_circ.is_monic() {
        return Err(Error::NotMonic);
    }
    let d = f_circ.degree().unwrap_or(0);
    match g.degree() {
        None => return Err(Error::ZeroPolynomial),
        Some(0) => return Err(Error::Degree { got: 0, reason: "constant g; use the additive family" }),
        Some(e) if e >= d => return Err(Error::Degree { got: e, reason: "need deg g < deg f" }),
        _ => {}
    }
    let d1 = f_circ.derivative();
    let d2 = d1.derivative();
    Ok(!d2.is_zero() && d1.gcd(&g.derivative())?.is_one())
}

/// Morse test for the rational function `f / g` at its affine critical
/// points, the roots of `W = f'g - fg'` that are not poles.
///
/// At a root of `g` of multiplicity `k`, `W` vanishes to order exactly
/// `k - 1`; those factors are removed first, leaving `W*` of degree
/// `deg f - 1 + deg rad(g)`. `f / g` is Morse when `W*` is squarefree and
/// `Res_x(W*, y g - f)` is squarefree in `y` of degree `deg W*`. For
/// squarefree `g` nothing is removed and `W* = W`; with `g = 1` this is
/// exactly [`is_morse_polynomial`] up to a nonzero scalar.
///
/// The resultant is recovered from `deg W* + 1` evaluations, so `p` must
/// exceed `deg W*` as well as `deg f + 1`.
pub fn is_morse_rational(f: &Poly, g: &Poly) -> Result<bool> {
    f.check_same(g)?;
    let (d, e) = match (f.degree(), g.degree()) {
        (Some(d), Some(e)) if d > e => (d, e),
        _ => return Err(Error::invalid("need deg f > deg g >= 0")),
    };
    if !f.gcd(g)?.is_one() {
        return Err(Error::invalid(format!("gcd({f}, {g}) is not 1")));
    }
    let p = f.p();
    require_char_above(p, d as u64 + 1)?;
    let rad_g = if e == 0 { 0 } else { e - g.gcd(&g.derivative())?.degree().unwrap() };
    let expected = d - 1 + rad_g;
    require_char_above(p, expected as u64)?;
    let mut w = &(&f.derivative() * g) - &(f * &g.derivative());
    loop {
        let common = w.gcd(g)?;
        if common.is_one() {
            break;
        }
        w = w.div_exact(&common)?;
    }
    if w.degree() != Some(expected) || !is_squarefree(&w)? {
        return Ok(false);
    }
    let m = f.modulus();
    let neg_f = -f;
    let points = (0..=expected as u64)
        .map(|y| Ok((y, resultant(&w, &(&g.scale(y) + &neg_f))?)))
        .collect::<Result<Vec<_>>>()?;
    let r = interpolate(m, &points)?;
    Ok(r.degree() == Some(expected) && is_squarefree(&r)?)
}

/// How a family is known to have Galois group `S_d` over `F_p(t)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "detail", rename_all = "snake_case")]
pub enum SymmetricCertificate {
    /// `f + t` with `f` Morse.
    MorsePolynomial,
    /// `f + t g` with `f / g` Morse.
    MorseRational,
    /// Supplied by the caller, e.g. `x^d - x^(d-1) + t`.
    Asserted(String),
}

/// Checks the Morse condition for the family anchored at `fixed`; `None`
/// when the check fails (or the anchor shares a factor with `g`).
pub fn certify_family(shape: &FamilyShape, fixed: u64) -> Result<Option<SymmetricCertificate>> {
    let f = shape.anchored(fixed);
    match shape.kind() {
        FamilyKind::AdditiveConstant => {
            Ok(is_morse_polynomial(&f)?.then_some(SymmetricCertificate::MorsePolynomial))
        }
        _ => {
            let g = shape.direction();
            if !f.gcd(&g)?.is_one() {
                return Ok(None);
            }
            Ok(is_morse_rational(&f, &g)?.then_some(SymmetricCertificate::MorseRational))
        }
    }
}

/// An exceptional coefficient set found by exhaustive scan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BadSet {
    pub p: u64,
    pub d: usize,
    pub shape: String,
    pub bad: Vec<u64>,
    pub size: usize,
}

/// Exact exceptional set by scanning every `c` in `F_p`:
///
/// * `LinearTerm`: `B_1 = { s : base + s x is not Morse }`.
/// * `GeneralG(g)`: `{ c : (base + c) / g is not Morse }`; `g = x` is `B_2`.
/// * `Monomial(m)`: `B_3(m) = { c : (base + c) / x^m is not Morse }`, which
///   needs a nonzero linear coefficient in `base`.
/// * `AdditiveConstant`: `{ c : base + c is not Morse }`, all or nothing
///   since shifting the value preserves the Morse property.
///
/// A shift that makes the ratio non-reduced counts as bad.
pub fn bad_set(shape: &FamilyShape, scan_limit: u64, workers: usize) -> Result<BadSet> {
    let p = shape.modulus().get();
    let d = shape.degree();
    require_char_above(p, d as u64 + 1)?;
    if p > scan_limit {
        return Err(Error::ScanBoundExceeded { p, limit: scan_limit });
    }
    if let FamilyKind::Monomial(_) = shape.kind() {
        if shape.base().coeff(1) == 0 {
            return Err(Error::invalid("B_3 scan needs a nonzero linear coefficient"));
        }
    }
    let base = shape.base();
    let g = shape.direction();
    let is_bad = |c: u64| -> Result<bool> {
        match shape.kind() {
            FamilyKind::LinearTerm => Ok(!is_morse_polynomial(&base.add_to_coeff(1, c))?),
            FamilyKind::AdditiveConstant => Ok(!is_morse_polynomial(&base.add_to_coeff(0, c))?),
            _ => {
                let f = base.add_to_coeff(0, c);
                if !f.gcd(&g)?.is_one() {
                    return Ok(true);
                }
                Ok(!is_morse_rational(&f, &g)?)
            }
        }
    };
    let parts = map_chunks(p, workers, |range| {
        let mut out = Vec::new();
        for c in range {
            if is_bad(c)? {
                out.push(c);
            }
        }
        Ok(out)
    })?;
    let bad: Vec<u64> = parts.into_iter().flatten().collect();
    Ok(BadSet { p, d, shape: shape.label(), size: bad.len(), bad })
}

/// `g` with `f(x) = g(x^m)` when every exponent in `f` is divisible by `m`.
pub fn decomposition_witness(f: &Poly, m: usize) -> Result<Option<Poly>> {
    if m < 2 {
        return Err(Error::invalid(format!("decomposition needs m >= 2, got {m}")));
    }
    let c = f.coeffs();
    if c.iter().enumerate().any(|(i, &a)| a != 0 && i % m != 0) {
        return Ok(None);
    }
    Ok(Some(Poly::new(f.modulus(), c.iter().step_by(m).copied().collect())))
}
