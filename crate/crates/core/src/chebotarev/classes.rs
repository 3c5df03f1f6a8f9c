use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::factor::FactorizationType;

/// Exact class densities are kept as `u128` rationals; `d!` fits up to 33.
pub type Density = Ratio<u128>;

/// Largest degree for which cycle-type densities are tabulated.
pub const MAX_SYMMETRIC_DEGREE: usize = 30;

/// All partitions of `d`, each with nondecreasing parts, in lexicographic
/// order of the part sequences.
pub fn partitions(d: usize) -> Vec<FactorizationType> {
    fn rec(left: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<FactorizationType>) {
        if left == 0 {
            out.push(FactorizationType::new(cur.clone()).unwrap());
            return;
        }
        for part in min..=left {
            if part < left && left - part < part {
                continue;
            }
            cur.push(part);
            rec(left - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if d > 0 {
        rec(d, 1, &mut Vec::new(), &mut out);
    }
    out
}

/// Proportion of `S_d` with cycle type `lambda`:
/// `1 / prod_i (i^(m_i) m_i!)` where `m_i` counts parts equal to `i`.
pub fn cycle_type_density(d: usize, lambda: &FactorizationType) -> Result<Density> {
    if lambda.degree() != d {
        return Err(Error::invalid(format!("{lambda} is not a partition of {d}")));
    }
    if d > MAX_SYMMETRIC_DEGREE {
        return Err(Error::Degree { got: d, reason: "cycle densities tabulated up to degree 30" });
    }
    let mut denom: u128 = 1;
    let parts = lambda.parts();
    let mut i = 0;
    while i < parts.len() {
        let size = parts[i] as u128;
        let mut mult = 0u128;
        while i < parts.len() && parts[i] as u128 == size {
            mult += 1;
            denom *= size * mult;
            i += 1;
        }
    }
    Ok(Ratio::new(1, denom))
}

/// The distribution a census is compared against.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassFamily {
    /// Cycle types of `S_d`.
    SymmetricCycleTypes(usize),
    /// `(Z/3)^k`, uniform.
    CubicPower(usize),
    /// `F_p^+`, uniform.
    ArtinSchreier(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassModel {
    pub family: ClassFamily,
    /// `(label, |C| / m)` in a fixed order.
    pub densities: Vec<(String, Density)>,
}

impl ClassModel {
    pub fn symmetric(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::Degree { got: 0, reason: "need d >= 1" });
        }
        let densities = partitions(d)
            .into_iter()
            .map(|l| Ok((l.to_string(), cycle_type_density(d, &l)?)))
            .collect::<Result<_>>()?;
        Ok(ClassModel { family: ClassFamily::SymmetricCycleTypes(d), densities })
    }

    pub fn cubic(k: usize) -> Result<Self> {
        if k == 0 || k > 12 {
            return Err(Error::invalid(format!("cubic class model needs 1 <= k <= 12, got {k}")));
        }
        let cells = 3u128.pow(k as u32);
        let densities = cubic_cells(k)
            .into_iter()
            .map(|c| (cubic_label(&c), Ratio::new(1, cells)))
            .collect();
        Ok(ClassModel { family: ClassFamily::CubicPower(k), densities })
    }

    pub fn artin_schreier(p: u64) -> Result<Self> {
        if p > 1_000_000 {
            return Err(Error::ScanBoundExceeded { p, limit: 1_000_000 });
        }
        let densities = (0..p).map(|a| (a.to_string(), Ratio::new(1, p as u128))).collect();
        Ok(ClassModel { family: ClassFamily::ArtinSchreier(p), densities })
    }

    pub fn total(&self) -> Density {
        self.densities.iter().map(|(_, r)| *r).sum()
    }

    pub fn density(&self, label: &str) -> Option<Density> {
        self.densities.iter().find(|(l, _)| l == label).map(|(_, r)| *r)
    }
}

/// Every element of `(Z/3)^k` in lexicographic order.
pub fn cubic_cells(k: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|c| (0..3u8).map(move |j| [c.clone(), vec![j]].concat()))
            .collect();
    }
    out
}

pub fn cubic_label(cell: &[u8]) -> String {
    let parts: Vec<String> = cell.iter().map(|j| j.to_string()).collect();
    format!("({})", parts.join(","))
}

pub fn ratio_to_f64(r: Density) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}
