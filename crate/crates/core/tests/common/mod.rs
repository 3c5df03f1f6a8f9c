//! Brute-force oracles shared by the integration tests. Nothing here calls
//! into the library's arithmetic; polynomials are plain coefficient
//! vectors, lowest degree first.

#![allow(dead_code)]

use std::collections::BTreeMap;

use itertools::Itertools;

pub fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

pub fn pow_mod(b: u64, mut e: u64, p: u64) -> u64 {
    let p = p as u128;
    let mut acc = 1u128;
    let mut b = b as u128 % p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc as u64
}

pub fn inv(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

pub fn eval(f: &[u64], x: u64, p: u64) -> u64 {
    f.iter().rev().fold(0u64, |acc, &c| ((acc as u128 * x as u128 + c as u128) % p as u128) as u64)
}

pub fn derivative(f: &[u64], p: u64) -> Vec<u64> {
    trim(f.iter().enumerate().skip(1).map(|(i, &c)| (i as u64 % p) * c % p).collect())
}

pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
            .collect(),
    )
}

/// Remainder of `f` by a nonzero `g`.
pub fn rem(f: &[u64], g: &[u64], p: u64) -> Vec<u64> {
    let mut r = trim(f.to_vec());
    let dg = g.len() - 1;
    let li = inv(g[dg], p);
    while r.len() > dg {
        let top = r.len() - 1;
        let c = r[top] * li % p;
        for (j, &gj) in g.iter().enumerate() {
            let k = top - dg + j;
            r[k] = (r[k] + p - c * gj % p) % p;
        }
        r = trim(r);
    }
    r
}

/// Every monic polynomial of degree `d` over `F_p`.
pub fn monics(p: u64, d: usize) -> impl Iterator<Item = Vec<u64>> {
    (0..p.pow(d as u32)).map(move |mut n| {
        let mut c = Vec::with_capacity(d + 1);
        for _ in 0..d {
            c.push(n % p);
            n /= p;
        }
        c.push(1);
        c
    })
}

/// Irreducibility by trial division over all monic divisors of degree
/// up to `d / 2`.
pub fn brute_irreducible(f: &[u64], p: u64) -> bool {
    let d = f.len() - 1;
    (1..=d / 2).all(|k| monics(p, k).all(|g| !rem(f, &g, p).is_empty()))
}

/// Monic irreducibles of degree `d` over `F_p` by the necklace formula.
pub fn necklace(p: u64, d: u32) -> u64 {
    let mu = |n: u32| -> i64 {
        let mut n = n;
        let mut sign = 1;
        let mut q = 2;
        while q * q <= n {
            if n.is_multiple_of(q) {
                n /= q;
                if n.is_multiple_of(q) {
                    return 0;
                }
                sign = -sign;
            }
            q += 1;
        }
        if n > 1 {
            sign = -sign;
        }
        sign
    };
    let total: i64 = (1..=d).filter(|e| d.is_multiple_of(*e)).map(|e| mu(e) * (p as i64).pow(d / e)).sum();
    (total / d as i64) as u64
}

/// `F_{p^k}` as `F_p[y] / (m(y))` with `m` found by root search (`k <= 3`).
pub struct Ext {
    pub p: u64,
    pub k: usize,
    /// monic modulus of degree `k`
    pub modulus: Vec<u64>,
}

impl Ext {
    pub fn new(p: u64, k: usize) -> Self {
        assert!((1..=3).contains(&k));
        let modulus = if k == 1 {
            vec![0, 1]
        } else {
            monics(p, k).find(|m| (0..p).all(|x| eval(m, x, p) != 0)).unwrap()
        };
        Ext { p, k, modulus }
    }

    pub fn elements(&self) -> impl Iterator<Item = Vec<u64>> + '_ {
        (0..self.p.pow(self.k as u32)).map(move |mut n| {
            (0..self.k)
                .map(|_| {
                    let c = n % self.p;
                    n /= self.p;
                    c
                })
                .collect()
        })
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let p = self.p;
        let k = self.k;
        let mut prod = vec![0u64; 2 * k - 1];
        for i in 0..k {
            for j in 0..k {
                prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
            }
        }
        for top in (k..prod.len()).rev() {
            let c = prod[top];
            for j in 0..k {
                prod[top - k + j] = (prod[top - k + j] + p - c * self.modulus[j] % p) % p;
            }
            prod[top] = 0;
        }
        prod.truncate(k);
        prod
    }

    pub fn eval(&self, f: &[u64], x: &[u64]) -> Vec<u64> {
        let mut acc = vec![0u64; self.k];
        for &c in f.iter().rev() {
            acc = self.mul(&acc, x);
            acc[0] = (acc[0] + c) % self.p;
        }
        acc
    }

    pub fn inv(&self, a: &[u64]) -> Vec<u64> {
        // a^(q - 2)
        let q = self.p.pow(self.k as u32);
        let mut e = q - 2;
        let mut base = a.to_vec();
        let mut acc = vec![0u64; self.k];
        acc[0] = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

/// Extension degree that splits `f` once its roots in `F_p` are divided
/// out, provided what is left has degree at most 3.
pub fn splitting_degree(f: &[u64], p: u64) -> usize {
    let mut q = trim(f.to_vec());
    while let Some(r) = (0..p).find(|&x| q.len() > 1 && eval(&q, x, p) == 0) {
        q = exact_div(&q, &[(p - r) % p, 1], p);
    }
    match q.len().saturating_sub(1) {
        0 | 1 => 1,
        2 => 2,
        3 => 3,
        _ => panic!("oracle handles a root-free part of degree <= 3 only"),
    }
}

/// Distinct roots of `f` in `ext`, as elements of `ext`.
pub fn roots_in(ext: &Ext, f: &[u64]) -> Vec<Vec<u64>> {
    ext.elements().filter(|x| ext.eval(f, x).iter().all(|&c| c == 0)).collect()
}

/// Morse by enumeration: `f'` has `d - 1` distinct roots in the closure with
/// pairwise distinct values of `f`.
pub fn morse_oracle(f: &[u64], p: u64) -> bool {
    let d = f.len() - 1;
    let df = derivative(f, p);
    if df.len() != d {
        return false;
    }
    let ext = Ext::new(p, splitting_degree(&df, p));
    let roots = roots_in(&ext, &df);
    if roots.len() != d - 1 {
        return false;
    }
    let values: Vec<Vec<u64>> = roots.iter().map(|r| ext.eval(f, r)).sorted().dedup().collect();
    values.len() == d - 1
}

/// Morse test of `f / g` at affine critical points, by enumeration: the
/// roots of `W = f'g - fg'` that are not poles must be simple, number
/// `deg f - 1 + #poles`, and have pairwise distinct values of `f / g`.
/// `g` must split over the field that splits `W`.
pub fn rational_morse_oracle(f: &[u64], g: &[u64], p: u64) -> bool {
    let w = sub(&mul(&derivative(f, p), g, p), &mul(f, &derivative(g, p), p), p);
    let dw = derivative(&w, p);
    let ext = Ext::new(p, splitting_degree(&w, p));
    let is_zero = |v: &[u64]| v.iter().all(|&c| c == 0);
    let poles = if g.len() > 1 { roots_in(&ext, g).len() } else { 0 };
    let mut values = Vec::new();
    for r in roots_in(&ext, &w) {
        let gv = ext.eval(g, &r);
        if is_zero(&gv) {
            continue;
        }
        if is_zero(&ext.eval(&dw, &r)) {
            return false;
        }
        values.push(ext.mul(&ext.eval(f, &r), &ext.inv(&gv)));
    }
    let expected = f.len() - 2 + poles;
    values.len() == expected && values.iter().sorted().dedup().count() == expected
}

/// Cycle-type census of `S_d` by listing every permutation.
pub fn symmetric_cycle_counts(d: usize) -> BTreeMap<Vec<usize>, u64> {
    let mut out = BTreeMap::new();
    for perm in (0..d).permutations(d) {
        let mut seen = vec![false; d];
        let mut lens = Vec::new();
        for s in 0..d {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                i = perm[i];
                len += 1;
            }
            lens.push(len);
        }
        lens.sort_unstable();
        *out.entry(lens).or_default() += 1;
    }
    out
}

/// Degrees of the irreducible factors of `f` (with multiplicity), by
/// repeated trial division. Feasible for small `p` and degree.
pub fn brute_factor_degrees(f: &[u64], p: u64) -> Vec<usize> {
    let mut f = trim(f.to_vec());
    let mut out = Vec::new();
    let mut k = 1;
    while f.len() > 1 {
        if 2 * k > f.len() - 1 {
            out.push(f.len() - 1);
            break;
        }
        let mut divided = false;
        for g in monics(p, k) {
            if rem(&f, &g, p).is_empty() {
                f = exact_div(&f, &g, p);
                out.push(k);
                divided = true;
                break;
            }
        }
        if !divided {
            k += 1;
        }
    }
    out.sort_unstable();
    out
}

fn exact_div(f: &[u64], g: &[u64], p: u64) -> Vec<u64> {
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    let li = inv(g[dg], p);
    let mut q = vec![0u64; f.len() - dg];
    for top in (dg..f.len()).rev() {
        let c = r[top] * li % p;
        q[top - dg] = c;
        for (j, &gj) in g.iter().enumerate() {
            let k = top - dg + j;
            r[k] = (r[k] + p - c * gj % p) % p;
        }
    }
    trim(q)
}
