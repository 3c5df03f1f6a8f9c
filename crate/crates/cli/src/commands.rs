use std::str::FromStr;

use fpcheb::chebotarev::{
    chowla_sum, completed_sum_from, divisor_sums, error_scale, interval_census, joint_cubic_census,
    primitive_cube_root, trinomial_sweep, ClassIndicator, DivisorMode, IntervalFp,
};
use fpcheb::factor::{full_factorization, FactorizationType};
use fpcheb::forge::{construct_irreducible, cost_scaling_experiment, BOrder, BaseRule, ForgeSchedule};
use fpcheb::morse::{
    bad_set, critical_value_polynomial, decomposition_witness, geyer_condition, is_morse_polynomial,
    is_morse_rational, FamilyKind, FamilyShape, SymmetricCertificate,
};
use fpcheb::{Poly, PrimeModulus};
use num_rational::Ratio;
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::*;
use crate::output::{csv_rows, invalid, Artifact, CliError};

type Out = Result<Artifact, CliError>;

/// Relative tolerance of the Parseval and Fourier-inversion checks.
const FLOAT_TOLERANCE: f64 = 1e-3;

fn modulus(p: u64) -> Result<PrimeModulus, CliError> {
    Ok(PrimeModulus::new(p)?)
}

/// `x^d + x`, Morse for most `p`.
fn default_family_base(m: PrimeModulus, d: usize) -> Poly {
    Poly::monomial(m, 1, d).add_to_coeff(1, 1)
}

fn parse_poly(m: PrimeModulus, s: &str) -> Result<Poly, CliError> {
    let f = Poly::from_str(s)?;
    if f.p() != m.get() {
        return Err(invalid(format!("{s} is over F_{} but --p is {m}", f.p())));
    }
    Ok(f)
}

fn resolve_base(
    m: PrimeModulus,
    base: Option<&str>,
    d: Option<usize>,
    default: fn(PrimeModulus, usize) -> Poly,
) -> Result<Poly, CliError> {
    match (base, d) {
        (Some(s), d) => {
            let f = parse_poly(m, s)?;
            match d {
                Some(d) if f.degree() != Some(d) => {
                    Err(invalid(format!("--base has degree {:?} but --d is {d}", f.degree())))
                }
                _ => Ok(f),
            }
        }
        (None, Some(d)) => Ok(default(m, d)),
        (None, None) => Err(invalid("need --base or --d")),
    }
}

fn interval(m: PrimeModulus, text: Option<&str>) -> Result<IntervalFp, CliError> {
    match text {
        Some(s) => Ok(IntervalFp::parse(m, s)?),
        None => Ok(IntervalFp::full(m)),
    }
}

fn parse_list<T: FromStr>(s: &str, what: &str) -> Result<Vec<T>, CliError> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| invalid(format!("bad {what} {t:?}"))))
        .collect()
}

fn schedule(a: &ScheduleArgs) -> Result<ForgeSchedule, CliError> {
    let interval_factor = Ratio::<u64>::from_str(&a.interval_factor)
        .map_err(|_| invalid(format!("bad interval factor {:?}", a.interval_factor)))?;
    let b_order = match &a.b_order {
        Some(s) => BOrder::Explicit(parse_list(s, "b value")?),
        None => BOrder::Sequential,
    };
    let s = ForgeSchedule {
        b_order,
        b_prefix: a.b_prefix,
        interval_factor,
        interval_start: a.interval_start,
        max_doublings: a.max_doublings,
    };
    s.validate()?;
    Ok(s)
}

fn config(args: &impl Serialize, resolved: Value, g: &Global) -> Value {
    json!({ "args": args, "resolved": resolved, "seed": g.seed, "workers": g.workers })
}

pub fn forge(a: &ForgeArgs, g: &Global) -> Out {
    let m = modulus(a.base.p)?;
    let f = resolve_base(m, a.base.base.as_deref(), a.base.d, |m, d| Poly::monomial(m, 1, d))?;
    let s = schedule(&a.schedule)?;
    let d = f.degree().unwrap_or(0);
    let cfg = config(
        a,
        json!({ "base": f, "schedule": s, "base_length": s.base_length(m.get()), "b_values": s.b_values(m, d) }),
        g,
    );
    if g.dry_run {
        return Ok(Artifact::dry(cfg));
    }
    let mut r = construct_irreducible(m, &f, &s)?;
    if g.no_timestamp {
        r = r.canonical();
    }
    let csv = csv_rows(&[&r])?;
    Artifact::new(cfg, &r, csv)
}

pub fn scaling(a: &ScalingArgs, g: &Global) -> Out {
    let primes: Vec<u64> = parse_list(&a.primes, "prime")?;
    let rule = match &a.coeffs {
        Some(c) => BaseRule::Coefficients(parse_list(c, "coefficient")?),
        None => BaseRule::Monomial,
    };
    for &p in &primes {
        rule.build(modulus(p)?, a.d)?;
    }
    let s = schedule(&a.schedule)?;
    let cfg = config(a, json!({ "primes": primes, "rule": rule, "schedule": s }), g);
    if g.dry_run {
        return Ok(Artifact::dry(cfg));
    }
    let table = cost_scaling_experiment(&primes, a.d, &rule, &s, g.workers)?;
    let csv = table.to_csv()?;
    Artifact::new(cfg, &table, csv)
}

pub fn census(a: &CensusArgs, g: &Global) -> Out {
    let m = modulus(a.base.p)?;
    let base = resolve_base(m, a.base.base.as_deref(), a.base.d, default_family_base)?;
    let shape = FamilyShape::new(FamilyKind::parse(&a.shape)?, base)?;
    let iv = interval(m, a.interval.as_deref())?;
    let certificate = a.assert_symmetric.clone().map(SymmetricCertificate::Asserted);
    let cfg = config(
        a,
        json!({
            "base": shape.base(),
            "shape": shape.label(),
            "interval": iv.to_string(),
            "certificate": certificate,
        }),
        g,
    );
    if g.dry_run {
        return Ok(Artifact::dry(cfg));
    }
    let report = interval_census(&shape, a.fixed, &iv, certificate, g.workers)?;
    let csv = report.to_csv()?;
    let tv = report.total_variation().ok();
    let mut result = serde_json::to_value(&report).map_err(|e| invalid(format!("json: {e}")))?;
    result["total_variation"] = json!(tv);
    Artifact::new(cfg, &result, csv)
}

#[derive(Serialize)]
struct SumRow {
    b: u64,
    re: f64,
    im: f64,
    abs: f64,
}

#[derive(Serialize)]
struct Parseval {
    energy: f64,
    expected: u64,
    relative_error: f64,
    tolerance: f64,
    ok: bool,
}

#[derive(Serialize)]
struct CharsumResult {
    p: u64,
    lambda: FactorizationType,
    base: Poly,
    class_count: u64,
    ramified: u64,
    values: Vec<SumRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_nontrivial_abs: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_over_sqrt_p: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    parseval: Option<Parseval>,
}

fn class_setup(p: u64, lambda: &str, base: Option<&str>) -> Result<(FactorizationType, Poly), CliError> {
    let m = modulus(p)?;
    let lambda = FactorizationType::from_str(lambda)?;
    let f = resolve_base(m, base, Some(lambda.degree()), default_family_base)?;
    Ok((lambda, f))
}

pub fn charsum(a: &CharsumArgs, g: &Global) -> Out {
    let (lambda, f) = class_setup(a.p, &a.lambda, a.base.as_deref())?;
    if !a.all_b && a.b.is_none() {
        return Err(invalid("need --b or --all-b"));
    }
    let cfg = config(a, json!({ "base": f, "lambda": lambda }), g);
    if g.dry_run {
        return Ok(Artifact::dry(cfg));
    }
    let ind = ClassIndicator::new(&f, &lambda, g.workers)?;
    let p = ind.p();
    let row = |b: u64, z: fpcheb::chebotarev::Complex64| SumRow { b, re: z.re, im: z.im, abs: z.norm() };
    let mut result = CharsumResult {
        p,
        lambda: lambda.clone(),
        base: f,
        class_count: ind.count(),
        ramified: ind.ramified(),
        values: Vec::new(),
        max_nontrivial_abs: None,
        max_over_sqrt_p: None,
        parseval: None,
    };
    let mut violation = None;
    let mut csv;
    if a.all_b {
        let spectrum = ind.spectrum();
        let energy: f64 = spectrum.iter().map(|z| z.norm_sqr()).sum();
        let expected = p * ind.count();
        let relative_error = (energy - expected as f64).abs() / (expected as f64).max(1.0);
        let ok = relative_error <= FLOAT_TOLERANCE;
        if !ok {
            violation = Some(format!("Parseval: sum |S(b)|^2 = {energy} but p N = {expected}"));
        }
        let max = spectrum.iter().skip(1).map(|z| z.norm()).fold(0.0, f64::max);
        result.values = spectrum.into_iter().enumerate().map(|(b, z)| row(b as u64, z)).collect();
        result.max_nontrivial_abs = Some(max);
        result.max_over_sqrt_p = Some(max / (p as f64).sqrt());
        csv = csv_rows(&result.values)?;
        csv.push_str(&format!(
            "# parseval energy={energy:.6} expected={expected} relative_error={relative_error:.3e} ok={ok}\n"
        ));
        result.parseval = Some(Parseval { energy, expected, relative_error, tolerance: FLOAT_TOLERANCE, ok });
    } else {
        let b = a.b.unwrap() % p;
        result.values = vec![row(b, ind.twisted_sum(b))];
        csv = csv_rows(&result.values)?;
    }
    Ok(Artifact::new(cfg, &result, csv)?.with_violation(violation))
}

#[derive(Serialize)]
struct CompleteRow {
    p: u64,
    lambda: String,
    interval: String,
    class_count: u64,
    direct_count: u64,
    reconstruction_re: f64,
    reconstruction_im: f64,
    difference: f64,
    main_term: f64,
    tail_bound: f64,
}

pub fn complete(a: &CompleteArgs, g: &Global) -> Out {
    let (lambda, f) = class_setup(a.p, &a.lambda, a.base.as_deref())?;
    let iv = interval(f.modulus(), a.interval.as_deref())?;
    let cfg = config(a, json!({ "base": f, "lambda": lambda, "interval": iv.to_string() }), g);
    if g.dry_run {
        return Ok(Artifact::dry(cfg));
    }
    let ind = ClassIndicator::new(&f, &lambda, g.workers)?;
    let cs = completed_sum_from(&ind, &iv)?;
    let violation = (cs.difference > FLOAT_TOLERANCE).then(|| {
        format!("Fourier reconstruction off by {} from the direct count {}", cs.difference, cs.direct_count)
    });
    let csv = csv_rows(&[CompleteRow {
        p: cs.p,
        lambda: cs.lambda.to_string(),
        interval: iv.to_string(),
        class_count: cs.class_count,
        direct_count: cs.direct_count,
        reconstruction_re: cs.fourier_reconstruction.re,
        reconstruction_im: cs.fourier_reconstruction.im,
        difference: cs.difference,
        main_term: cs.main_term,
        tail_bound: cs.tail_bound,
    }])?;
    Ok(Artifact::new(cfg, &cs, csv)?.with_violation(violation))
}

pub fn cubic(a: &CubicArgs, g: &Global) -> Out {
    let m = modulus(a.p)?;
    let shifts: Vec<u64> = parse_list(&a.shifts, "shift")?;
    let iv = interval(m, a.interval.as_deref())?;
    let omega = match a.omega {
        Some(w) => w,
        None => primitive_cube_root(m)?,
    };
    let cfg = config(a, json!({ "omega": omega, "shifts": shifts, "interval": iv.to_string() }), g);
    if g.dry_run {
        return Ok(Artifact::dry(cfg));
    }
    let census = joint_cubic_census(&shifts, &iv, omega, g.workers)?;
    #[derive(Serialize)]
    struct Row<'a> {
        class: &'a str,
        count: u64,
    }
    let mut rows: Vec<Row> = census.cells.iter().map(|c| Row { class: &c.class, count: c.count }).collect();
    rows.push(Row { class: "skipped", count: census.skipped });
    let csv = csv_rows(&rows)?;
    Artifact::new(cfg, &census, csv)
}

#[derive(Serialize)]
struct ChowlaResult {
    p: u64,
    base: Poly,
    shifts: String,
    interval: String,
    sum: i64,
    over_sqrt_p: f64,
    normalized: f64,
}

pub fn chowla(a: &ChowlaArgs, g: &Global) -> Out {
    let m = modulus(a.base.p)?;
    let f = resolve_base(m, a.base.base.as_deref(), a.base.d, default_family_base)?;
    let shifts: Vec<u64> = parse_list(&a.shifts, "shift")?;
    let iv = interval(m, a.interval.as_deref())?;
    let cfg = config(a, json!({ "base": f, "shifts": shifts, "interval": iv.to_string() }), g);
    if g.dry_run {
        return Ok(Artifact::dry(cfg));
    }
    let sum = chowla_sum(&f, &shifts, &iv, g.workers)?;
    let p = m.get();
    let result = ChowlaResult {
        p,
        base: f,
        shifts: shifts.iter().map(u64::to_string).collect::<Vec<_>>().join(" "),
        interval: iv.to_string(),
        sum,
        over_sqrt_p: sum as f64 / (p as f64).sqrt(),
        normalized: sum as f64 / error_scale(p),
    };
    let csv = csv_rows(&[&result])?;
    Artifact::new(cfg, &result, csv)
}

#[derive(Serialize)]
struct DivsumResult {
    p: u64,
    base: Poly,
    r: u32,
    mode: DivisorMode,
    interval: String,
    value: u64,
}

pub fn divsum(a: &DivsumArgs, g: &Global) -> Out {
    let m = modulus(a.base.p)?;
    let f = resolve_base(m, a.base.base.as_deref(), a.base.d, default_family_base)?;
    let mode = DivisorMode::from_str(&a.mode)?;
    let iv = interval(m, a.interval.as_deref())?;
    let cfg = config(a, json!({ "base": f, "mode": mode, "interval": iv.to_string() }), g);
    if g.dry_run {
        return Ok(Artifact::dry(cfg));
    }
    let value = divisor_sums(&f, a.r, &iv, mode, g.workers)?;
    let result = DivsumResult { p: m.get(), base: f, r: a.r, mode, interval: iv.to_string(), value };
    let csv = csv_rows(&[&result])?;
    Artifact::new(cfg, &result, csv)
}

pub fn trinomials(a: &TrinomialArgs, g: &Global) -> Out {
    let m = modulus(a.p)?;
    let i0 = interval(m, a.i0.as_deref())?;
    let i1 = interval(m, a.i1.as_deref())?;
    let cfg = config(a, json!({ "i0": i0.to_string(), "i1": i1.to_string() }), g);
    if g.dry_run {
        return Ok(Artifact::dry(cfg));
    }
    let sweep = trinomial_sweep(a.d, &i0, &i1, g.workers)?;
    #[derive(Serialize)]
    struct Row {
        p: u64,
        d: usize,
        i0: String,
        i1: String,
        count: u64,
        main_term: f64,
        density_ratio: f64,
    }
    let csv = csv_rows(&[Row {
        p: sweep.p,
        d: sweep.d,
        i0: i0.to_string(),
        i1: i1.to_string(),
        count: sweep.count,
        main_term: sweep.main_term,
        density_ratio: sweep.density_ratio,
    }])?;
    Artifact::new(cfg, &sweep, csv)
}

#[derive(Serialize)]
struct MorseResult {
    f: Poly,
    #[serde(skip_serializing_if = "Option::is_none")]
    g: Option<Poly>,
    is_morse: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    geyer_condition: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    critical_value_polynomial: Option<Poly>,
    /// Factors of the monic critical value polynomial with multiplicity.
    #[serde(skip_serializing_if = "Option::is_none")]
    critical_value_factors: Option<Vec<(Poly, u32)>>,
    /// `m` with `f = h(x^m)`.
    decomposable_by: Vec<usize>,
}

pub fn morse(a: &MorseArgs, g: &Global) -> Out {
    let m = modulus(a.base.p)?;
    let f = resolve_base(m, a.base.base.as_deref(), a.base.d, default_family_base)?;
    let den = a.g.as_deref().map(|s| parse_poly(m, s)).transpose()?;
    let cfg = config(a, json!({ "f": f, "g": den }), g);
    if g.dry_run {
        return Ok(Artifact::dry(cfg));
    }
    let d = f.degree().unwrap_or(0);
    let mut decomposable_by = Vec::new();
    for k in 2..=d {
        if d % k == 0 && decomposition_witness(&f, k)?.is_some() {
            decomposable_by.push(k);
        }
    }
    let result = match &den {
        Some(gp) => {
            let geyer = match gp.degree() {
                Some(e) if e >= 1 && e < d => Some(geyer_condition(&f, gp)?),
                _ => None,
            };
            MorseResult {
                f: f.clone(),
                g: Some(gp.clone()),
                is_morse: is_morse_rational(&f, gp)?,
                geyer_condition: geyer,
                critical_value_polynomial: None,
                critical_value_factors: None,
                decomposable_by,
            }
        }
        None => {
            let r = critical_value_polynomial(&f)?.monic();
            let factors = if r.degree().unwrap_or(0) > 0 {
                full_factorization(&r, g.seed)?.factors.into_iter().map(|fp| (fp.poly, fp.exp)).collect()
            } else {
                Vec::new()
            };
            MorseResult {
                f: f.clone(),
                g: None,
                is_morse: is_morse_polynomial(&f)?,
                geyer_condition: None,
                critical_value_polynomial: Some(r),
                critical_value_factors: Some(factors),
                decomposable_by,
            }
        }
    };
    #[derive(Serialize)]
    struct Row<'a> {
        f: &'a Poly,
        g: Option<&'a Poly>,
        is_morse: bool,
    }
    let csv = csv_rows(&[Row { f: &result.f, g: result.g.as_ref(), is_morse: result.is_morse }])?;
    Artifact::new(cfg, &result, csv)
}

pub fn badset(a: &BadsetArgs, g: &Global) -> Out {
    let m = modulus(a.base.p)?;
    let base = resolve_base(m, a.base.base.as_deref(), a.base.d, default_family_base)?;
    let shape = FamilyShape::new(FamilyKind::parse(&a.shape)?, base)?;
    let cfg = config(a, json!({ "base": shape.base(), "shape": shape.label() }), g);
    if g.dry_run {
        return Ok(Artifact::dry(cfg));
    }
    let bs = bad_set(&shape, a.scan_limit, g.workers)?;
    #[derive(Serialize)]
    struct Row {
        c: u64,
    }
    let mut csv = csv_rows(&bs.bad.iter().map(|&c| Row { c }).collect::<Vec<_>>())?;
    if bs.bad.is_empty() {
        csv = "c\n".into();
    }
    Artifact::new(cfg, &bs, csv)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(p: u64) -> PrimeModulus {
        PrimeModulus::new(p).unwrap()
    }

    #[test]
    fn lists_and_ratios() {
        assert_eq!(parse_list::<u64>("0, 1,,5", "x").unwrap(), vec![0, 1, 5]);
        assert!(parse_list::<u64>("1,-2", "x").is_err());
        let mut a = ScheduleArgs {
            b_prefix: Some(3),
            b_order: Some("4,2".into()),
            interval_factor: "3/2".into(),
            interval_start: 0,
            max_doublings: 1,
        };
        let s = schedule(&a).unwrap();
        assert_eq!(s.interval_factor, Ratio::new(3, 2));
        assert_eq!(s.b_order, BOrder::Explicit(vec![4, 2]));
        a.interval_factor = "0".into();
        assert!(matches!(schedule(&a), Err(CliError::Validation(_))));
    }

    #[test]
    fn base_resolution() {
        assert_eq!(resolve_base(m(7), None, Some(3), default_family_base).unwrap().to_string(), "p:7;0,1,0,1");
        assert!(resolve_base(m(7), Some("p:7;1,0,1"), Some(3), default_family_base).is_err());
        assert!(resolve_base(m(7), Some("p:11;1,0,1"), None, default_family_base).is_err());
        assert!(resolve_base(m(7), None, None, default_family_base).is_err());
        assert_eq!(interval(m(7), None).unwrap().len(), 7);
    }

    #[test]
    fn library_errors_map_to_exit_codes() {
        assert_eq!(CliError::from(fpcheb::Error::NotPrime(8)).exit_code(), 2);
        assert_eq!(CliError::from(fpcheb::Error::Invariant("x".into())).exit_code(), 3);
        assert_eq!(CliError::from(fpcheb::Error::Exhausted { doublings: 0 }).exit_code(), 3);
    }
}
