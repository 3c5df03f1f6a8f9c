mod common;

use fpcheb::factor::{
    divisor_function, factorization_type, full_factorization, moebius, rabin_irreducible, FactorizationType,
};
use fpcheb::{Poly, PrimeModulus};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn m(p: u64) -> PrimeModulus {
    PrimeModulus::new(p).unwrap()
}

fn arb_monic(ps: Vec<u64>, max_deg: usize) -> impl Strategy<Value = Poly> {
    prop::sample::select(ps).prop_flat_map(move |p| {
        prop::collection::vec(0..p, 1..=max_deg).prop_map(move |mut c| {
            c.push(1);
            Poly::new(m(p), c)
        })
    })
}

#[test]
fn rabin_matches_type_and_trial_division() {
    for (p, max_d) in [(5u64, 4usize), (7, 3)] {
        for d in 1..=max_d {
            for c in common::monics(p, d) {
                let f = Poly::new(m(p), c.clone());
                let irreducible = rabin_irreducible(&f).unwrap();
                let ty = factorization_type(&f).unwrap();
                assert_eq!(irreducible, ty == FactorizationType::irreducible(d), "{f}");
                assert_eq!(irreducible, common::brute_irreducible(&c, p), "{f}");
                assert_eq!(ty.parts(), common::brute_factor_degrees(&c, p), "{f}");
            }
        }
    }
}

#[test]
fn irreducible_counts_match_necklace_formula() {
    for (p, max_d) in [(5u64, 4usize), (7, 3)] {
        for d in 1..=max_d {
            let n = common::monics(p, d).filter(|c| rabin_irreducible(&Poly::new(m(p), c.clone())).unwrap()).count();
            assert_eq!(n as u64, common::necklace(p, d as u32), "p={p} d={d}");
        }
    }
}

#[test]
fn full_factorization_reconstructs_random_inputs() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xfac7);
    for p in [3u64, 5, 10007] {
        let mm = m(p);
        for i in 0..10_000u64 {
            let d = rng.random_range(1..=8);
            let lc = rng.random_range(1..p);
            let mut c: Vec<u64> = (0..d).map(|_| rng.random_range(0..p)).collect();
            c.push(lc);
            let f = Poly::new(mm, c);
            let ff = full_factorization(&f, i).unwrap();
            assert_eq!(ff.expand(mm), f);
            for fp in &ff.factors {
                assert!(rabin_irreducible(&fp.poly).unwrap());
            }
        }
    }
}

#[test]
fn divisor_function_matches_brute_count_of_ordered_factorizations() {
    // d_2(f) = number of monic divisors of f
    let mm = m(3);
    for d in 1..=4 {
        for c in common::monics(3, d) {
            let f = Poly::new(mm, c);
            let divisors = (0..=d)
                .flat_map(|k| common::monics(3, k))
                .filter(|g| f.rem(&Poly::new(mm, g.clone())).unwrap().is_zero())
                .count();
            assert_eq!(divisor_function(&f, 2).unwrap(), divisors as u64, "{f}");
        }
    }
}

proptest! {
    #[test]
    fn moebius_is_multiplicative_on_coprime_pairs(
        (f, g) in prop::sample::select(vec![3u64, 5, 10007])
            .prop_flat_map(|p| (arb_monic(vec![p], 4), arb_monic(vec![p], 4)))
    ) {
        prop_assume!(f.gcd(&g).unwrap().is_one());
        let fg = &f * &g;
        prop_assert_eq!(moebius(&fg).unwrap(), moebius(&f).unwrap() * moebius(&g).unwrap());
    }

    #[test]
    fn type_is_translation_invariant(
        (f, c) in arb_monic(vec![3, 5, 7, 10007], 7).prop_flat_map(|f| {
            let p = f.p();
            (Just(f), 0..p)
        })
    ) {
        prop_assert_eq!(factorization_type(&f).unwrap(), factorization_type(&f.translate(c)).unwrap());
    }

    #[test]
    fn type_parts_sum_to_degree(f in arb_monic(vec![3, 5, 10007], 10)) {
        prop_assert_eq!(factorization_type(&f).unwrap().degree(), f.degree().unwrap());
    }
}
