use super::modulus::PrimeModulus;
use super::poly::Poly;
use crate::error::{Error, Result};

/// `Res(f, g) = lc(f)^deg(g) * prod_{f(a) = 0} g(a)`.
///
/// Euclidean remainder sequence over `F_p`, using
/// `Res(f, g) = (-1)^(deg f deg g) lc(g)^(deg f - deg r) Res(g, r)` with
/// `r = f mod g`, and `Res(f, c) = c^deg f` for constants `c`.
pub fn resultant(f: &Poly, g: &Poly) -> Result<u64> {
    f.check_same(g)?;
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let m = f.modulus();
    let mut acc = 1u64;
    let mut a = f.clone();
    let mut b = g.clone();
    loop {
        let da = a.degree().unwrap() as u64;
        let db = b.degree().unwrap() as u64;
        if db == 0 {
            return Ok(m.mul(acc, m.pow(b.leading_coeff(), da)));
        }
        let r = a.rem(&b)?;
        if r.is_zero() {
            return Ok(0);
        }
        let dr = r.degree().unwrap() as u64;
        if (da * db) % 2 == 1 {
            acc = m.neg(acc);
        }
        acc = m.mul(acc, m.pow(b.leading_coeff(), da - dr));
        a = b;
        b = r;
    }
}

/// `disc(f) = (-1)^(d(d-1)/2) Res_{d,d-1}(f, f') / lc(f)`, where the
/// resultant is taken at formal degree `d - 1` for `f'`. When `p` kills the
/// top of `f'` (actual degree `e < d - 1`) the padding contributes
/// `lc(f)^(d-1-e)`; an identically zero `f'` gives zero.
pub fn discriminant(f: &Poly) -> Result<u64> {
    let d = match f.degree() {
        Some(d) if d >= 2 => d,
        other => {
            return Err(Error::Degree { got: other.unwrap_or(0), reason: "discriminant needs degree >= 2" })
        }
    };
    let m = f.modulus();
    let df = f.derivative();
    let Some(e) = df.degree() else {
        return Ok(0);
    };
    let res = resultant(f, &df)?;
    let lc = f.leading_coeff();
    // lc^(d-1-e) / lc = lc^(d-2-e), possibly lc^-1
    let scale = if e + 2 <= d {
        m.pow(lc, (d - 2 - e) as u64)
    } else {
        m.inv(lc).expect("nonzero leading coefficient")
    };
    let mut out = m.mul(res, scale);
    if (d * (d - 1) / 2) % 2 == 1 {
        out = m.neg(out);
    }
    Ok(out)
}

/// Lagrange interpolation through points with distinct abscissae.
pub fn interpolate(modulus: PrimeModulus, points: &[(u64, u64)]) -> Result<Poly> {
    let m = modulus;
    let mut acc = Poly::zero(m);
    for (i, &(xi, yi)) in points.iter().enumerate() {
        let mut basis = Poly::one(m);
        let mut denom = 1u64;
        for (j, &(xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            if m.reduce(xi) == m.reduce(xj) {
                return Err(Error::invalid("interpolation nodes must be distinct"));
            }
            basis = &basis * &Poly::new(m, vec![m.neg(m.reduce(xj)), 1]);
            denom = m.mul(denom, m.sub(m.reduce(xi), m.reduce(xj)));
        }
        let c = m.mul(m.reduce(yi), m.inv(denom).unwrap());
        acc = &acc + &basis.scale(c);
    }
    Ok(acc)
}
