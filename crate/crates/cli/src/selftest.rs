//! Small worked examples, each checked against a value known in advance.

use fpcheb::chebotarev::{
    artin_schreier_symbol, chowla_sum, completed_sum_decomposition, cubic_artin_class, cycle_type_density,
    divisor_sums, interval_census, joint_cubic_census, trinomial_sweep, ClassIndicator, DivisorMode, IntervalFp,
};
use fpcheb::factor::{
    divisor_function, factorization_type, full_factorization, moebius, rabin_irreducible, FactorizationType,
};
use fpcheb::ffpoly::{discriminant, frobenius_power, is_squarefree, resultant};
use fpcheb::forge::{construct_irreducible, cost_scaling_experiment, BaseRule, ForgeSchedule};
use fpcheb::morse::{
    bad_set, critical_value_polynomial, decomposition_witness, geyer_condition, is_morse_polynomial,
    is_morse_rational, FamilyKind, FamilyShape, DEFAULT_SCAN_LIMIT,
};
use fpcheb::{Poly, PrimeModulus};
use num_rational::Ratio;
use serde::Serialize;
use serde_json::json;

use crate::args::Global;
use crate::output::{csv_rows, Artifact, CliError};

type Check = Result<bool, fpcheb::Error>;

/// `(module, description, check)`
type Example = (&'static str, &'static str, fn() -> Check);

fn m(p: u64) -> PrimeModulus {
    PrimeModulus::new(p).expect("selftest primes are prime")
}

fn poly(p: u64, c: &[i64]) -> Poly {
    Poly::from_i64s(m(p), c)
}

fn ty(parts: &[usize]) -> FactorizationType {
    FactorizationType::new(parts.to_vec()).expect("nonempty partition")
}

fn full(p: u64) -> IntervalFp {
    IntervalFp::full(m(p))
}

fn checks() -> Vec<Example> {
    vec![
        ("ffpoly", "(x^2+1) / x over F_5 = (x, 1)", || {
            Ok(poly(5, &[1, 0, 1]).divrem(&poly(5, &[0, 1]))? == (poly(5, &[0, 1]), poly(5, &[1])))
        }),
        ("ffpoly", "f / f = (1, 0)", || {
            let f = poly(11, &[3, 1, 4, 1, 5]);
            Ok(f.divrem(&f)? == (Poly::one(m(11)), Poly::zero(m(11))))
        }),
        ("ffpoly", "(x^3+2x+1) / (x^2+1) over F_7 = (x, x+1)", || {
            Ok(poly(7, &[1, 2, 0, 1]).divrem(&poly(7, &[1, 0, 1]))? == (poly(7, &[0, 1]), poly(7, &[1, 1])))
        }),
        ("ffpoly", "gcd((x-1)(x-2), (x-1)(x-3)) over F_7 = x-1", || {
            let a = Poly::from_roots(m(7), &[1, 2]);
            let b = Poly::from_roots(m(7), &[1, 3]);
            Ok(a.gcd(&b)? == poly(7, &[-1, 1]))
        }),
        ("ffpoly", "gcd(f, 0) = monic(f)", || {
            let f = poly(7, &[1, 2, 3]);
            Ok(f.gcd(&Poly::zero(m(7)))? == f.monic())
        }),
        ("ffpoly", "gcd(x^2+1, x^2+x) over F_3 = 1", || Ok(poly(3, &[1, 0, 1]).gcd(&poly(3, &[0, 1, 1]))?.is_one())),
        ("ffpoly", "x^3 mod x^2+1 over F_3 = 2x", || Ok(frobenius_power(&poly(3, &[1, 0, 1]), 1)? == poly(3, &[0, 2]))),
        ("ffpoly", "x^(p^k) mod x-1 = 1", || Ok(frobenius_power(&poly(13, &[-1, 1]), 3)?.is_one())),
        ("ffpoly", "x^27 mod x^3-x-1 over F_3 = x", || {
            Ok(frobenius_power(&poly(3, &[-1, -1, 0, 1]), 3)? == Poly::x(m(3)))
        }),
        ("ffpoly", "Res(x-2, x-3) over F_7 = 6", || Ok(resultant(&poly(7, &[-2, 1]), &poly(7, &[-3, 1]))? == 6)),
        ("ffpoly", "Res(f, 1) = 1", || Ok(resultant(&poly(7, &[1, 2, 3, 1]), &Poly::one(m(7)))? == 1)),
        ("ffpoly", "Res(x^2+1, x^2+x+1) over F_5 = (g(2) g(3)) = 1", || {
            // roots of x^2 + 1 mod 5 are 2 and 3; g(2) = 7, g(3) = 13
            Ok(resultant(&poly(5, &[1, 0, 1]), &poly(5, &[1, 1, 1]))? == 7 * 13 % 5)
        }),
        ("ffpoly", "disc(x^2+x+1) over F_7 = 4", || Ok(discriminant(&poly(7, &[1, 1, 1]))? == 4)),
        ("ffpoly", "disc(x^2) = 0", || Ok(discriminant(&poly(11, &[0, 0, 1]))? == 0)),
        ("ffpoly", "disc(x^3-3x) over F_7 = 3", || Ok(discriminant(&poly(7, &[0, -3, 0, 1]))? == 3)),
        ("ffpoly", "x^2 is not squarefree", || Ok(!is_squarefree(&poly(5, &[0, 0, 1]))?)),
        ("ffpoly", "x^2+1 over F_3 is squarefree", || is_squarefree(&poly(3, &[1, 0, 1]))),
        ("ffpoly", "x^p-1 over F_p is not squarefree", || {
            Ok(!is_squarefree(&Poly::monomial(m(7), 1, 7).add_to_coeff(0, 6))?)
        }),
        ("factor", "x^2+1 irreducible over F_3", || rabin_irreducible(&poly(3, &[1, 0, 1]))),
        ("factor", "x^2+1 reducible over F_5", || Ok(!rabin_irreducible(&poly(5, &[1, 0, 1]))?)),
        ("factor", "type((x-1)(x^2+1)) over F_3 = (1,2)", || {
            Ok(factorization_type(&(&poly(3, &[-1, 1]) * &poly(3, &[1, 0, 1])))? == ty(&[1, 2]))
        }),
        ("factor", "type(x^4+1) over F_5 = (2,2)", || Ok(factorization_type(&poly(5, &[1, 0, 0, 0, 1]))? == ty(&[2, 2]))),
        ("factor", "x^2-1 over F_7 = (x+1)(x+6)", || {
            let ff = full_factorization(&poly(7, &[-1, 0, 1]), 0)?;
            let got: Vec<(Poly, u32)> = ff.factors.into_iter().map(|f| (f.poly, f.exp)).collect();
            Ok(got == vec![(poly(7, &[1, 1]), 1), (poly(7, &[6, 1]), 1)])
        }),
        ("factor", "x^2 over F_5 = x^2", || {
            let ff = full_factorization(&poly(5, &[0, 0, 1]), 0)?;
            Ok(ff.factors.len() == 1 && ff.factors[0].poly == Poly::x(m(5)) && ff.factors[0].exp == 2)
        }),
        ("factor", "x^6-1 over F_7 has six linear factors", || {
            let ff = full_factorization(&poly(7, &[-1, 0, 0, 0, 0, 0, 1]), 0)?;
            Ok(ff.factors.len() == 6 && ff.factors.iter().all(|f| f.exp == 1 && f.poly.degree() == Some(1)))
        }),
        ("factor", "mu(x^2) = 0", || Ok(moebius(&poly(5, &[0, 0, 1]))? == 0)),
        ("factor", "mu((x-1)(x-2)) over F_7 = 1", || Ok(moebius(&Poly::from_roots(m(7), &[1, 2]))? == 1)),
        ("factor", "mu(x^2+1) over F_3 = -1", || Ok(moebius(&poly(3, &[1, 0, 1]))? == -1)),
        ("factor", "d_2(P^2) = 3, d_2(PQ) = 4, d_3(P) = 3", || {
            let pp = poly(5, &[2, 0, 1]);
            let q = poly(5, &[1, 1]);
            Ok(divisor_function(&(&pp * &pp), 2)? == 3
                && divisor_function(&(&pp * &q), 2)? == 4
                && divisor_function(&pp, 3)? == 3)
        }),
        ("morse", "critical values of x^3-3x over F_7 are {2, 5}", || {
            let r = critical_value_polynomial(&poly(7, &[0, -3, 0, 1]))?;
            Ok(r.degree() == Some(2) && (0..7).filter(|&y| r.eval(y) == 0).collect::<Vec<_>>() == vec![2, 5])
        }),
        ("morse", "critical value polynomial of x^3 is c y^2", || {
            Ok(critical_value_polynomial(&poly(7, &[0, 0, 0, 1]))?.monic() == poly(7, &[0, 0, 1]))
        }),
        ("morse", "critical value of x^2+c is c", || {
            Ok(critical_value_polynomial(&poly(11, &[4, 0, 1]))?.monic() == poly(11, &[-4, 1]))
        }),
        ("morse", "x^3-3x over F_7 is Morse", || is_morse_polynomial(&poly(7, &[0, -3, 0, 1]))),
        ("morse", "x^3 over F_7 is not Morse", || Ok(!is_morse_polynomial(&poly(7, &[0, 0, 0, 1]))?)),
        ("morse", "x^3+x over F_7 is Morse", || is_morse_polynomial(&poly(7, &[0, 1, 0, 1]))),
        ("morse", "Geyer: x^3+x, x^2 over F_7 holds", || geyer_condition(&poly(7, &[0, 1, 0, 1]), &poly(7, &[0, 0, 1]))),
        ("morse", "Geyer: x^3, x^2 fails", || Ok(!geyer_condition(&poly(7, &[0, 0, 0, 1]), &poly(7, &[0, 0, 1]))?)),
        ("morse", "Geyer: x^4+x, x^3 over F_11 holds", || {
            geyer_condition(&poly(11, &[0, 1, 0, 0, 1]), &poly(11, &[0, 0, 0, 1]))
        }),
        ("morse", "(x^3-3x) / 1 over F_7 is Morse", || is_morse_rational(&poly(7, &[0, -3, 0, 1]), &Poly::one(m(7)))),
        ("morse", "x^3 / x over F_7 is rejected (common factor)", || {
            Ok(is_morse_rational(&poly(7, &[0, 0, 0, 1]), &poly(7, &[0, 1])).is_err())
        }),
        ("morse", "bad set of x^3 + s x over F_7 contains 0", || {
            let shape = FamilyShape::new(FamilyKind::LinearTerm, poly(7, &[0, 0, 0, 1]))?;
            Ok(bad_set(&shape, DEFAULT_SCAN_LIMIT, 1)?.bad.contains(&0))
        }),
        ("morse", "bad set of x^3-3x + s x over F_7 omits 0", || {
            let shape = FamilyShape::new(FamilyKind::LinearTerm, poly(7, &[0, -3, 0, 1]))?;
            let bs = bad_set(&shape, DEFAULT_SCAN_LIMIT, 1)?;
            Ok(!bs.bad.contains(&0) && bs.size <= 10)
        }),
        ("morse", "x^4+2x^2+5 = h(x^2) with h = x^2+2x+5", || {
            Ok(decomposition_witness(&poly(11, &[5, 0, 2, 0, 1]), 2)? == Some(poly(11, &[5, 2, 1])))
        }),
        ("morse", "x^4+x+1 is not a polynomial in x^2", || Ok(decomposition_witness(&poly(11, &[1, 1, 0, 0, 1]), 2)?.is_none())),
        ("morse", "x^6+3x^3 = h(x^3) with h = x^2+3x", || {
            Ok(decomposition_witness(&poly(11, &[0, 0, 0, 3, 0, 0, 1]), 3)? == Some(poly(11, &[0, 3, 1])))
        }),
        ("chebotarev", "S_3 densities 1/6, 1/2, 1/3", || {
            Ok(cycle_type_density(3, &ty(&[1, 1, 1]))? == Ratio::new(1, 6)
                && cycle_type_density(3, &ty(&[1, 2]))? == Ratio::new(1, 2)
                && cycle_type_density(3, &ty(&[3]))? == Ratio::new(1, 3))
        }),
        ("chebotarev", "identity class of S_5 has density 1/120", || {
            Ok(cycle_type_density(5, &ty(&[1; 5]))? == Ratio::new(1, 120))
        }),
        ("chebotarev", "singleton interval at an irreducible member", || {
            // x^3 + x + 1 has no root mod 5
            let shape = FamilyShape::new(FamilyKind::AdditiveConstant, poly(5, &[0, 1, 0, 1]))?;
            let r = interval_census(&shape, 0, &IntervalFp::new(m(5), 1, 1)?, None, 1)?;
            Ok(r.count(&ty(&[3])) == 1 && r.unramified_count() == 1 && r.ramified_count == 0)
        }),
        ("chebotarev", "census of x^3-3x+a over F_7: 2 ramified, 5 squarefree", || {
            let shape = FamilyShape::new(FamilyKind::AdditiveConstant, poly(7, &[0, -3, 0, 1]))?;
            let r = interval_census(&shape, 0, &full(7), None, 1)?;
            let by_trial = (0..7u64)
                .map(|a| poly(7, &[a as i64, -3, 0, 1]))
                .filter(|f| discriminant(f).map(|d| d != 0).unwrap_or(false))
                .map(|f| factorization_type(&f))
                .collect::<Result<Vec<_>, _>>()?;
            let agree = r.classes.iter().all(|row| row.count == by_trial.iter().filter(|t| **t == row.class).count() as u64);
            Ok(r.ramified_count == 2 && agree)
        }),
        ("chebotarev", "S(0) is the class count", || {
            let ind = ClassIndicator::new(&poly(101, &[0, 1, 0, 1]), &ty(&[3]), 1)?;
            Ok((ind.twisted_sum(0).re - ind.count() as f64).abs() < 1e-9)
        }),
        ("chebotarev", "Parseval at p = 499", || {
            let ind = ClassIndicator::new(&poly(499, &[0, 1, 0, 1]), &ty(&[1, 2]), 1)?;
            let energy: f64 = ind.spectrum().iter().map(|z| z.norm_sqr()).sum();
            let want = 499.0 * ind.count() as f64;
            Ok((energy - want).abs() <= 1e-3 * want)
        }),
        ("chebotarev", "completed sum over F_p has no tail", || {
            let cs = completed_sum_decomposition(&poly(101, &[0, 1, 0, 1]), &ty(&[3]), &full(101), 1)?;
            Ok(cs.tail_bound == 0.0 && cs.difference < 1e-3)
        }),
        ("chebotarev", "cubic class of x^3-1 mod 7 is 0", || Ok(cubic_artin_class(m(7), 6, 2)? == 0)),
        ("chebotarev", "cubic class of x^3+2 mod 7 is 2", || Ok(cubic_artin_class(m(7), 2, 2)? == 2)),
        ("chebotarev", "cubic classes over F_13 are (p-1)/3 each", || {
            let c = joint_cubic_census(&[0], &full(13), 3, 1)?;
            Ok(c.cells.iter().all(|cell| cell.count == 4) && c.skipped == 1)
        }),
        ("chebotarev", "singleton cubic census fills one cell", || {
            let c = joint_cubic_census(&[0], &IntervalFp::new(m(7), 3, 1)?, 2, 1)?;
            Ok(c.cells.iter().map(|cell| cell.count).sum::<u64>() == 1)
        }),
        ("chebotarev", "Artin-Schreier symbol at p = 5, a = 2 is 2", || Ok(artin_schreier_symbol(m(5), 2)? == 2)),
        ("chebotarev", "Chowla singleton is mu(f+a) mu(f+1+a)", || {
            let f = poly(7, &[0, 1, 0, 1]);
            let s = chowla_sum(&f, &[0, 1], &IntervalFp::new(m(7), 2, 1)?, 1)?;
            Ok(s == (moebius(&f.add_to_coeff(0, 2))? * moebius(&f.add_to_coeff(0, 3))?) as i64)
        }),
        ("chebotarev", "divisor singleton matches d_2", || {
            let f = poly(7, &[0, 1, 0, 1]);
            let v = divisor_sums(&f, 2, &IntervalFp::new(m(7), 0, 1)?, DivisorMode::Shifted, 1)?;
            Ok(v == divisor_function(&f, 2)? * divisor_function(&f.add_to_coeff(0, 1), 2)?)
        }),
        ("chebotarev", "trinomial singleton agrees with Rabin", || {
            let i0 = IntervalFp::new(m(11), 4, 1)?;
            let i1 = IntervalFp::new(m(11), 7, 1)?;
            let s = trinomial_sweep(3, &i0, &i1, 1)?;
            Ok(s.count == rabin_irreducible(&poly(11, &[4, 7, 0, 1]))? as u64)
        }),
        ("forge", "irreducible base is returned at once", || {
            let r = construct_irreducible(m(7), &poly(7, &[1, 1, 0, 1]), &ForgeSchedule::default())?;
            Ok((r.b_used, r.a_used, r.rabin_calls) == (0, 0, 1))
        }),
        ("forge", "x^3 over F_31: first irreducible in scan order", || {
            let s = ForgeSchedule::default();
            let r = construct_irreducible(m(31), &poly(31, &[0, 0, 0, 1]), &s)?;
            let len = s.base_length(31);
            let mut first = None;
            'scan: for b in s.b_values(m(31), 3) {
                for a in 0..len {
                    if rabin_irreducible(&poly(31, &[a as i64, b as i64, 0, 1]))? {
                        first = Some((b, a));
                        break 'scan;
                    }
                }
            }
            Ok(first == Some((r.b_used, r.a_used)))
        }),
        ("forge", "one prime is not a scaling experiment", || {
            Ok(cost_scaling_experiment(&[10007], 5, &BaseRule::Monomial, &ForgeSchedule::default(), 1).is_err())
        }),
    ]
}

#[derive(Serialize)]
struct Row {
    module: &'static str,
    check: &'static str,
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

pub fn run(g: &Global) -> Result<Artifact, CliError> {
    let list = checks();
    let cfg = json!({ "checks": list.len() });
    if g.dry_run {
        return Ok(Artifact::dry(cfg));
    }
    let rows: Vec<Row> = list
        .into_iter()
        .map(|(module, check, f)| {
            let (status, error) = match f() {
                Ok(true) => ("PASS", None),
                Ok(false) => ("FAIL", None),
                Err(e) => ("FAIL", Some(e.to_string())),
            };
            Row { module, check, status, error }
        })
        .collect();
    let failed = rows.iter().filter(|r| r.status == "FAIL").count();
    let width = rows.iter().map(|r| r.check.len()).max().unwrap_or(0);
    let mut table = String::new();
    for r in &rows {
        table.push_str(&format!("{:<4}  {:<10}  {:<width$}", r.status, r.module, r.check));
        if let Some(e) = &r.error {
            table.push_str(&format!("  ({e})"));
        }
        table.push('\n');
    }
    table.push_str(&format!("{} passed, {failed} failed\n", rows.len() - failed));
    let csv = csv_rows(
        &rows
            .iter()
            .map(|r| (r.module, r.check, r.status, r.error.clone().unwrap_or_default()))
            .collect::<Vec<_>>(),
    )?;
    let csv = format!("module,check,status,error\n{csv}");
    let violation = (failed > 0).then(|| format!("{failed} selftest checks failed"));
    let result = json!({ "passed": rows.len() - failed, "failed": failed, "checks": rows });
    Ok(Artifact::new(cfg, &result, csv)?.with_table(table).with_violation(violation))
}
