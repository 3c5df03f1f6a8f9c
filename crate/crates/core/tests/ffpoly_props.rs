mod common;

use fpcheb::factor::full_factorization;
use fpcheb::ffpoly::{frobenius_power, is_squarefree, resultant};
use fpcheb::{Poly, PrimeModulus};
use proptest::prelude::*;

fn m(p: u64) -> PrimeModulus {
    PrimeModulus::new(p).unwrap()
}

fn arb_poly(p: u64, max_len: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(0..p, 0..=max_len).prop_map(move |c| Poly::new(m(p), c))
}

/// Monic of degree 1 to `max_deg` over a prime drawn from `ps`.
fn arb_monic(ps: Vec<u64>, max_deg: usize) -> impl Strategy<Value = Poly> {
    prop::sample::select(ps).prop_flat_map(move |p| {
        prop::collection::vec(0..p, 1..=max_deg).prop_map(move |mut c| {
            c.push(1);
            Poly::new(m(p), c)
        })
    })
}

fn arb_p() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![3u64, 5, 7, 10007])
}

proptest! {
    #[test]
    fn divrem_reconstructs(
        (f, g) in arb_p().prop_flat_map(|p| (arb_poly(p, 12), arb_poly(p, 6)))
    ) {
        prop_assume!(!g.is_zero());
        let (q, r) = f.divrem(&g).unwrap();
        prop_assert_eq!(&(&q * &g) + &r, f);
        prop_assert!(r.is_zero() || r.degree() < g.degree());
    }

    #[test]
    fn gcd_is_monic_common_divisor(
        (f, g) in arb_p().prop_flat_map(|p| (arb_poly(p, 8), arb_poly(p, 8)))
    ) {
        prop_assume!(!(f.is_zero() && g.is_zero()));
        let h = f.gcd(&g).unwrap();
        prop_assert!(h.is_monic());
        prop_assert!(f.rem(&h).unwrap().is_zero());
        prop_assert!(g.rem(&h).unwrap().is_zero());
        prop_assert_eq!(h, g.gcd(&f).unwrap());
    }

    #[test]
    fn gcd_of_products_contains_common_factor(
        (a, b, c) in prop::sample::select(vec![5u64, 10007])
            .prop_flat_map(|p| (arb_poly(p, 4), arb_poly(p, 4), arb_poly(p, 4)))
    ) {
        prop_assume!(!a.is_zero() && !b.is_zero() && !c.is_zero());
        let h = (&a * &c).gcd(&(&b * &c)).unwrap();
        prop_assert!(h.rem(&c.monic()).unwrap().is_zero());
    }

    #[test]
    fn frobenius_iterates((f, k) in (arb_monic(vec![3, 5, 101, 10007], 5), 0u32..4)) {
        let mut h = Poly::x(f.modulus()).rem(&f).unwrap();
        for _ in 0..k {
            h = h.pow_mod(f.p(), &f).unwrap();
        }
        prop_assert_eq!(frobenius_power(&f, k).unwrap(), h);
    }

    #[test]
    fn resultant_antisymmetry(
        (f, g) in prop::sample::select(vec![5u64, 7, 10007])
            .prop_flat_map(|p| (arb_poly(p, 6), arb_poly(p, 6)))
    ) {
        prop_assume!(!f.is_zero() && !g.is_zero());
        let m = f.modulus();
        let (a, b) = (resultant(&f, &g).unwrap(), resultant(&g, &f).unwrap());
        let sign = (f.degree().unwrap() * g.degree().unwrap()) % 2 == 1;
        prop_assert_eq!(a, if sign { m.neg(b) } else { b });
    }
}

#[test]
fn frobenius_matches_naive_powmod_up_to_3_to_the_7() {
    let mm = m(3);
    let x = Poly::x(mm);
    for d in 1..=4 {
        for c in common::monics(3, d) {
            let f = Poly::new(mm, c);
            for k in 0..=7u32 {
                let naive = x.pow_mod(3u64.pow(k), &f).unwrap();
                assert_eq!(frobenius_power(&f, k).unwrap(), naive, "{f} k={k}");
            }
        }
    }
}

#[test]
fn resultant_vanishes_exactly_on_common_factors() {
    let mm = m(5);
    let all: Vec<Poly> = (0..=3).flat_map(|d| common::monics(5, d)).map(|c| Poly::new(mm, c)).collect();
    assert_eq!(all.len(), 156);
    for f in &all {
        for g in &all {
            let zero = resultant(f, g).unwrap() == 0;
            assert_eq!(zero, !f.gcd(g).unwrap().is_one(), "{f} {g}");
        }
    }
}

#[test]
fn squarefree_matches_factor_exponents() {
    let mm = m(5);
    for d in 1..=4 {
        for c in common::monics(5, d) {
            let f = Poly::new(mm, c);
            let ff = full_factorization(&f, 0).unwrap();
            let want = ff.factors.iter().all(|fp| fp.exp == 1);
            assert_eq!(is_squarefree(&f).unwrap(), want, "{f}");
        }
    }
}

#[test]
fn text_form_round_trips_through_json() {
    let f = Poly::from_i64s(m(10007), &[5, 0, -1, 3]);
    let s = serde_json::to_string(&f).unwrap();
    assert_eq!(s, "\"p:10007;5,0,10006,3\"");
    assert_eq!(serde_json::from_str::<Poly>(&s).unwrap(), f);
    assert_eq!(Poly::zero(m(7)).to_string(), "p:7;0");
}
