mod common;

use fpcheb::chebotarev::{interval_census, IntervalFp};
use fpcheb::factor::FactorizationType;
use fpcheb::morse::{
    bad_set, decomposition_witness, is_morse_polynomial, is_morse_rational, FamilyKind, FamilyShape,
    DEFAULT_SCAN_LIMIT,
};
use fpcheb::{Poly, PrimeModulus};
use proptest::prelude::*;

fn m(p: u64) -> PrimeModulus {
    PrimeModulus::new(p).unwrap()
}

fn arb_monic(ps: Vec<u64>, min_deg: usize, max_deg: usize) -> impl Strategy<Value = Poly> {
    prop::sample::select(ps).prop_flat_map(move |p| {
        prop::collection::vec(0..p, min_deg..=max_deg).prop_map(move |mut c| {
            c.push(1);
            Poly::new(m(p), c)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn rational_test_with_unit_denominator_is_the_polynomial_test(f in arb_monic(vec![11, 13, 101], 2, 6)) {
        let one = Poly::one(f.modulus());
        prop_assert_eq!(is_morse_rational(&f, &one).unwrap(), is_morse_polynomial(&f).unwrap());
    }

    #[test]
    fn morse_survives_translation_and_shift(
        (f, c) in arb_monic(vec![11, 101, 10007], 2, 7).prop_flat_map(|f| {
            let p = f.p();
            (Just(f), 0..p)
        })
    ) {
        let want = is_morse_polynomial(&f).unwrap();
        prop_assert_eq!(is_morse_polynomial(&f.translate(c)).unwrap(), want);
        prop_assert_eq!(is_morse_polynomial(&f.add_to_coeff(0, c)).unwrap(), want);
    }
}

#[test]
fn rational_morse_matches_enumeration() {
    let p = 7;
    let mm = m(p);
    let denominators = [vec![0, 1], vec![3, 1], vec![0, 0, 1], vec![4, 4, 1]];
    let mut checked = 0;
    for g in &denominators {
        let gp = Poly::new(mm, g.clone());
        for f in common::monics(p, 3) {
            let fp = Poly::new(mm, f.clone());
            if !fp.gcd(&gp).unwrap().is_one() {
                continue;
            }
            let got = is_morse_rational(&fp, &gp).unwrap();
            assert_eq!(got, common::rational_morse_oracle(&f, g, p), "{fp} / {gp}");
            checked += 1;
        }
    }
    assert!(checked > 1000);
}

#[test]
fn cubic_over_x_example() {
    let mm = m(7);
    let f = Poly::from_i64s(mm, &[1, 1, 0, 1]);
    let x = Poly::x(mm);
    assert_eq!(is_morse_rational(&f, &x).unwrap(), common::rational_morse_oracle(&[1, 1, 0, 1], &[0, 1], 7));
}

#[test]
fn monomial_bad_sets_match_enumeration() {
    // B_3(2) for cubics over F_7: the constant shifts c with (f + c) / x^2
    // not Morse, by the oracle
    let p = 7;
    let mm = m(p);
    for base in common::monics(p, 3).filter(|c| c[1] != 0).step_by(7) {
        let shape = FamilyShape::new(FamilyKind::Monomial(2), Poly::new(mm, base.clone())).unwrap();
        let got = bad_set(&shape, DEFAULT_SCAN_LIMIT, 2).unwrap();
        let want: Vec<u64> = (0..p)
            .filter(|&c| {
                let mut f = base.clone();
                f[0] = (f[0] + c) % p;
                f[0] == 0 || !common::rational_morse_oracle(&f, &[0, 0, 1], p)
            })
            .collect();
        assert_eq!(got.bad, want, "{}", shape.base());
    }
}

#[test]
fn decomposable_family_is_not_symmetric() {
    // h(x^2) + a: the roots come in pairs +-r, so an irreducible cubic factor
    // cannot occur and the family is never certified
    let p = 101;
    let mm = m(p);
    let h = Poly::from_i64s(mm, &[17, 5, 1]);
    let f = Poly::from_i64s(mm, &[17, 0, 5, 0, 1]);
    assert_eq!(decomposition_witness(&f, 2).unwrap(), Some(h));
    assert!(!is_morse_polynomial(&f).unwrap());

    let shape = FamilyShape::new(FamilyKind::AdditiveConstant, f).unwrap();
    let report = interval_census(&shape, 0, &IntervalFp::full(mm), None, 4).unwrap();
    assert!(report.certificate.is_none());
    assert!(report.total_variation().is_err());
    assert_eq!(report.count(&FactorizationType::new(vec![1, 3]).unwrap()), 0);
    assert_eq!(report.unramified_count() + report.ramified_count, p);
}
