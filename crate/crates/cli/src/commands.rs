use std::fs;
use std::path::Path;

use malcev::arith::{parse_rational, Rational};
use malcev::cyclotomic::{compare_closed_form, enumerate_primitive_p2_roots, zeta_coprime, zeta_prime_power, BranchPolicy};
use malcev::ff::make_field;
use malcev::invariants::{invariant_report, tame_criterion};
use malcev::json::{
    poly_from_json, rational_to_json, report_to_value, series_from_json, series_to_value_json, verdict_to_value,
};
use malcev::newton::{newton_all_roots, newton_root, BranchStatus, NewtonBranchResult};
use malcev::series::{Character, MNSeries};
use malcev::verify::{run_suite, DEFAULT_SAMPLES, QUICK_SAMPLES};
use malcev::Error;
use serde_json::{json, Value};

use crate::{ArithOp, Cli, Command, Format, JobConfig};

pub struct Failure {
    pub kind: &'static str,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let kind = match e {
            Error::Parse(_) | Error::PrimeMismatch(..) => "parse",
            Error::InsufficientPrecision(_) | Error::PrecisionBeyondFormula(_) => "precision",
            _ => "invalid",
        };
        Failure { kind, message: e.to_string() }
    }
}

fn parse_failure(message: String) -> Failure {
    Failure { kind: "parse", message }
}

type Outcome = Result<u8, Failure>;

const CAPPED: u8 = 2;
const PROPERTY_FAILED: u8 = 3;

pub fn run(cli: &Cli) -> Outcome {
    let cfg = &cli.config;
    match &cli.command {
        Command::Roots { file, first } => roots(cfg, file, *first),
        Command::Zeta { n, r, branch, compare, enumerate } => zeta(cfg, *n, *r, *branch, *compare, *enumerate),
        Command::Invariants { file, known_f } => invariants(cfg, file, *known_f),
        Command::Arith { op } => arith(cfg, op),
        Command::Verify { quick, filter } => verify(cfg, *quick, filter.as_deref()),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure { kind: "io", message: format!("{}: {e}", path.display()) })
}

fn read_series(cfg: &JobConfig, path: &Path) -> Result<MNSeries, Failure> {
    let a = series_from_json(&read(path)?)?;
    if let Some(p) = cfg.prime.filter(|&p| p != a.p()) {
        return Err(Error::PrimeMismatch(a.p(), p).into());
    }
    Ok(a)
}

fn precision(cfg: &JobConfig) -> Result<Rational, Failure> {
    let prec = parse_rational(&cfg.precision)?;
    if prec <= Rational::from_integer(0.into()) {
        return Err(parse_failure(format!("precision {prec} must be positive")));
    }
    Ok(prec)
}

fn prime(cfg: &JobConfig) -> Result<u64, Failure> {
    cfg.prime.ok_or_else(|| parse_failure("--prime is required".into()))
}

fn emit(cfg: &JobConfig, json: &Value, text: impl FnOnce() -> String) -> Result<(), Failure> {
    let body = match cfg.format {
        Format::Json => json.to_string(),
        Format::Text => text(),
    };
    match &cfg.output {
        Some(path) => fs::write(path, body + "\n")
            .map_err(|e| Failure { kind: "io", message: format!("{}: {e}", path.display()) }),
        None => {
            println!("{body}");
            Ok(())
        }
    }
}

fn capped(results: &[NewtonBranchResult]) -> u8 {
    if results.iter().any(|r| r.status == BranchStatus::IterationCapped) {
        CAPPED
    } else {
        0
    }
}

fn describe(i: usize, r: &NewtonBranchResult) -> String {
    let path: Vec<String> = r.branch_path.iter().map(|c| c.to_string()).collect();
    format!(
        "root {i}: {}\n  status {}, multiplicity {}, steps {}, path [{}], v(P(root)) >= {}",
        r.root,
        r.status,
        r.multiplicity,
        r.steps,
        path.join(", "),
        r.residual
    )
}

fn roots(cfg: &JobConfig, file: &Path, first: bool) -> Outcome {
    let target = precision(cfg)?;
    let poly = poly_from_json(&read(file)?, cfg.prime, &target)?;
    let results = if first {
        vec![newton_root(&poly, &target, cfg.max_steps)?]
    } else {
        newton_all_roots(&poly, &target, cfg.max_steps, cfg.branch_budget)?
    };
    let json = Value::Array(results.iter().map(|r| series_to_value_json(&r.root)).collect());
    emit(cfg, &json, || results.iter().enumerate().map(|(i, r)| describe(i, r)).collect::<Vec<_>>().join("\n"))?;
    Ok(capped(&results))
}

fn zeta(cfg: &JobConfig, n: Option<u32>, r: Option<u64>, branch: Option<usize>, compare: bool, enumerate: bool) -> Outcome {
    let p = prime(cfg)?;
    let prec = precision(cfg)?;
    if let Some(r) = r {
        let z = zeta_coprime(r, p, &prec)?;
        emit(cfg, &series_to_value_json(&z), || z.to_string())?;
        return Ok(0);
    }
    let n = n.expect("clap requires --n or --r");
    if compare {
        if n != 1 {
            return Err(Error::InvalidArgument("--compare checks the closed form of order p (--n 1)".into()).into());
        }
        let reports = compare_closed_form(p, &prec, cfg.max_steps)?;
        let ok = reports.iter().all(|r| r.all_agree());
        let rats = |v: &[Rational]| Value::Array(v.iter().map(|q| json!(rational_to_json(q))).collect());
        let json = json!({
            "p": p,
            "precision": rational_to_json(&prec),
            "match": ok,
            "choices": reports.iter().map(|r| json!({
                "choice": r.choice,
                "branch": r.branch,
                "agreeing": rats(&r.agreeing),
                "disagreeing": rats(&r.disagreeing),
            })).collect::<Vec<_>>(),
        });
        emit(cfg, &json, || {
            reports
                .iter()
                .map(|r| {
                    let show = |v: &[Rational]| v.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(", ");
                    format!(
                        "choice {}: branch {:?}, agreeing [{}], disagreeing [{}]",
                        r.choice,
                        r.branch,
                        show(&r.agreeing),
                        show(&r.disagreeing)
                    )
                })
                .collect::<Vec<_>>()
                .join("\n")
        })?;
        return Ok(if ok { 0 } else { CAPPED });
    }
    if enumerate {
        if n != 2 {
            return Err(Error::InvalidArgument("--enumerate classifies roots of order p² (--n 2)".into()).into());
        }
        let roots = enumerate_primitive_p2_roots(p, &prec, cfg.max_steps, cfg.branch_budget)?;
        let coeff = |c: &Option<malcev::ff::FFElem>| c.as_ref().map(|c| json!(c.coords()));
        let json = Value::Array(
            roots
                .iter()
                .map(|r| {
                    let mut v = series_to_value_json(&r.branch.root);
                    v["classification"] = json!({
                        "first": coeff(&r.first),
                        "accumulation": coeff(&r.accumulation),
                        "multiplicity": r.branch.multiplicity,
                        "status": r.branch.status.to_string(),
                    });
                    v
                })
                .collect(),
        );
        emit(cfg, &json, || {
            roots
                .iter()
                .enumerate()
                .map(|(i, r)| {
                    let show = |c: &Option<malcev::ff::FFElem>| c.as_ref().map_or("unknown".into(), |c| c.to_string());
                    format!(
                        "{}\n  C at 1/(p(p-1)): {}, C at 1/(p-1): {}",
                        describe(i, &r.branch),
                        show(&r.first),
                        show(&r.accumulation)
                    )
                })
                .collect::<Vec<_>>()
                .join("\n")
        })?;
        let branches: Vec<_> = roots.into_iter().map(|r| r.branch).collect();
        return Ok(capped(&branches));
    }
    let policy = branch.map_or(BranchPolicy::Minimal, BranchPolicy::Branch);
    let z = zeta_prime_power(p, n, &prec, policy, cfg.max_steps)?;
    emit(cfg, &series_to_value_json(&z.root), || describe(0, &z))?;
    Ok(capped(std::slice::from_ref(&z)))
}

fn invariants(cfg: &JobConfig, file: &Path, known_f: Option<u64>) -> Outcome {
    let a = read_series(cfg, file)?;
    let report = invariant_report(&a);
    let verdict = tame_criterion(&a, known_f)?;
    let json = json!({ "report": report_to_value(&report), "verdict": verdict_to_value(&verdict) });
    emit(cfg, &json, || {
        format!(
            "tame index >= {}, inertia index >= {} (from digits below {})\ntame: {}, e = {}, c = {:?}, divisibility ok: {:?}",
            report.tame_index,
            report.inertia_index,
            report.precision_used,
            verdict.tame,
            verdict.e,
            verdict.c,
            verdict.divisibility_ok()
        )
    })?;
    Ok(0)
}

fn parse_assignment(p: u64, text: &str) -> Result<(Rational, malcev::ff::FFElem), Failure> {
    let (q, coords) = text
        .split_once('=')
        .ok_or_else(|| parse_failure(format!("assignment {text:?} is not of the form q=c0,c1,..")))?;
    let coords: Vec<u64> = coords
        .split(',')
        .map(|c| c.trim().parse::<u64>().map_err(|e| parse_failure(format!("coordinate {c:?}: {e}"))))
        .collect::<Result<_, _>>()?;
    let field = make_field(p, coords.len())?;
    Ok((parse_rational(q)?, field.elem(&coords)?))
}

fn arith(cfg: &JobConfig, op: &ArithOp) -> Outcome {
    let result = match op {
        ArithOp::Add { a, b } => {
            let (a, b) = MNSeries::unify(&read_series(cfg, a)?, &read_series(cfg, b)?)?;
            a.add(&b)?
        }
        ArithOp::Mul { a, b } => {
            let (a, b) = MNSeries::unify(&read_series(cfg, a)?, &read_series(cfg, b)?)?;
            a.mul(&b)?
        }
        ArithOp::Inv { a } => read_series(cfg, a)?.invert()?,
        ArithOp::Frobenius { a, power } => read_series(cfg, a)?.galois_action(*power),
        ArithOp::Character { a, assign } => {
            let a = read_series(cfg, a)?;
            let assignments = assign.iter().map(|s| parse_assignment(a.p(), s)).collect::<Result<_, _>>()?;
            a.apply_character(&Character::new(assignments))?
        }
    };
    emit(cfg, &series_to_value_json(&result), || result.to_string())?;
    Ok(0)
}

fn verify(cfg: &JobConfig, quick: bool, filter: Option<&str>) -> Outcome {
    let samples = if quick { QUICK_SAMPLES } else { DEFAULT_SAMPLES };
    let reports = run_suite(cfg.seed, samples, filter);
    let ok = reports.iter().all(|r| r.passed);
    let json = json!({
        "seed": cfg.seed,
        "samples": samples,
        "passed": ok,
        "properties": reports.iter().map(|r| json!({
            "name": r.name,
            "passed": r.passed,
            "samples": r.samples,
            "counterexample": r.counterexample,
        })).collect::<Vec<_>>(),
    });
    emit(cfg, &json, || {
        reports
            .iter()
            .map(|r| {
                let status = if r.passed { "pass" } else { "FAIL" };
                let detail = r.counterexample.as_deref().map(|c| format!(": {c}")).unwrap_or_default();
                format!("{status} {} ({} samples){detail}", r.name, r.samples)
            })
            .collect::<Vec<_>>()
            .join("\n")
    })?;
    Ok(if ok { 0 } else { PROPERTY_FAILED })
}
