use serde::Serialize;

use jratio_core::constants::{constants_table, ConstantsTable};
use jratio_core::lemma_checkers::suites::{run_all, Fault, VerifyOptions, VerifyReport};
use jratio_core::lipschitz_search::{
    bound_audit, estimate_lipschitz, extremal_check, power_monotonicity_table, q_scan, AuditReport,
    ExtremalCheck, RatioReport,
};
use jratio_core::{ComplexPoint, Error};

use crate::manifest::ManifestBuilder;
use crate::output::Sink;
use crate::parse::parse_complex;
use crate::{Cli, Command, SearchArgs};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VIOLATION: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_NOT_CONVERGED: u8 = 3;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Self { code: EXIT_USAGE, message: message.into() }
    }

    pub fn runtime(message: impl Into<String>) -> Self {
        Self { code: EXIT_VIOLATION, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match err {
            Error::Domain(_) | Error::Argument(_) => EXIT_USAGE,
            Error::BoundViolation { .. } | Error::Invariant(_) => EXIT_VIOLATION,
        };
        Self { code, message: err.to_string() }
    }
}

fn parse_parameter(spec: &str) -> Result<ComplexPoint, Failure> {
    let a = parse_complex(spec).map_err(Failure::usage)?;
    if a.norm().is_nan() || a.norm() >= 1.0 {
        return Err(Failure::usage(format!("|a| = {} must be below 1", a.norm())));
    }
    Ok(a)
}

/// Rounds to 15 significant digits.
fn sig15(x: f64) -> f64 {
    format!("{x:.14e}").parse().unwrap_or(x)
}

fn with_search(builder: ManifestBuilder, search: &SearchArgs) -> ManifestBuilder {
    builder
        .param("tol", search.tol)
        .param("grid_n", search.grid_n)
        .param("refine_iters", search.refine_iters)
        .param("refine_starts", search.refine_starts)
}

pub fn run(cli: &Cli) -> Result<u8, Failure> {
    let sink = Sink { output: cli.output.clone(), no_manifest: cli.no_manifest };
    match &cli.command {
        Command::Constant { a } => constant(&sink, a),
        Command::Estimate { a, search, verify_extremal } => estimate(&sink, a, search, *verify_extremal),
        Command::Verify { samples, seed, corrupt_le1 } => verify(&sink, *samples, *seed, *corrupt_le1),
        Command::Power { a, n_max, search } => power(&sink, a, *n_max, search),
        Command::Q2 { m_max, search } => q2(&sink, *m_max, search),
        Command::Audit { a, samples, seed } => audit(&sink, a, *samples, *seed),
    }
}

#[derive(Serialize)]
struct ConstantBody {
    a: ComplexPoint,
    constants: ConstantsTable,
}

fn constant(sink: &Sink, spec: &str) -> Result<u8, Failure> {
    let manifest = ManifestBuilder::start("constant", 0).param("a", spec);
    let a = parse_parameter(spec)?;
    let t = constants_table(a.norm())?;
    let constants = ConstantsTable {
        abs_a: sig15(t.abs_a),
        c_main: sig15(t.c_main),
        c_case12: sig15(t.c_case12),
        c_ball: sig15(t.c_ball),
        c_go: sig15(t.c_go),
    };
    sink.json(manifest, &ConstantBody { a, constants })?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct EstimateBody {
    report: RatioReport,
    converged: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    extremal: Option<ExtremalCheck>,
}

fn estimate(sink: &Sink, spec: &str, search: &SearchArgs, verify_extremal: bool) -> Result<u8, Failure> {
    let manifest = with_search(ManifestBuilder::start("estimate", search.seed), search)
        .param("a", spec)
        .param("verify_extremal", verify_extremal);
    let a = parse_parameter(spec)?;
    if a == ComplexPoint::ZERO {
        return Err(Failure::usage(
            "a = 0 makes h a rotation and the constant is exactly 1; use `jratio constant --a 0`",
        ));
    }
    let report = estimate_lipschitz(a, &search.config())?;
    let converged = report.gap.is_some_and(|g| g.abs() <= search.tol);
    let extremal = verify_extremal.then(|| extremal_check(a)).transpose()?;
    sink.json(manifest, &EstimateBody { report, converged, extremal })?;
    if converged {
        Ok(EXIT_OK)
    } else {
        eprintln!("search did not reach the closed form within tol = {}", search.tol);
        Ok(EXIT_NOT_CONVERGED)
    }
}

#[derive(Serialize)]
struct VerifyBody {
    verify: VerifyReport,
}

fn verify(sink: &Sink, samples: u64, seed: u64, corrupt_le1: bool) -> Result<u8, Failure> {
    let manifest = ManifestBuilder::start("verify", seed).param("samples", samples);
    let manifest = if corrupt_le1 { manifest.param("corrupt_le1", true) } else { manifest };
    if samples == 0 {
        return Err(Failure::usage("--samples must be at least 1"));
    }
    let opts = VerifyOptions {
        samples,
        seed,
        fault: corrupt_le1.then_some(Fault::NegateLe1),
    };
    let report = run_all(&opts)?;
    for suite in report.suites.iter().filter(|s| !s.passed) {
        let cex = serde_json::to_string(&suite.counterexample).unwrap_or_default();
        eprintln!("suite {} failed; counterexample: {cex}", suite.name);
    }
    let passed = report.all_passed;
    sink.json(manifest, &VerifyBody { verify: report })?;
    Ok(if passed { EXIT_OK } else { EXIT_VIOLATION })
}

fn power(sink: &Sink, spec: &str, n_max: u32, search: &SearchArgs) -> Result<u8, Failure> {
    let manifest = with_search(ManifestBuilder::start("power", search.seed), search)
        .param("a", spec)
        .param("n_max", n_max);
    let a = parse_parameter(spec)?;
    let table = power_monotonicity_table(a, n_max, &search.config())?;
    let rows: Vec<Vec<String>> = table
        .rows
        .iter()
        .map(|row| {
            vec![
                row.m.to_string(),
                row.report.sup_estimate.to_string(),
                row.report.argmax_z.to_string(),
                row.report.argmax_w.to_string(),
            ]
        })
        .collect();
    sink.csv(manifest, &["m", "estimate", "argmax_z", "argmax_w"], &rows)?;
    if table.nonincreasing() {
        Ok(EXIT_OK)
    } else {
        eprintln!("estimates increase beyond 2*tol at n = {:?}", table.violations);
        Ok(EXIT_VIOLATION)
    }
}

fn q2(sink: &Sink, m_max: u32, search: &SearchArgs) -> Result<u8, Failure> {
    let manifest = with_search(ManifestBuilder::start("q2", search.seed), search).param("m_max", m_max);
    if m_max < 2 {
        return Err(Failure::usage("--m-max must be at least 2"));
    }
    let ms: Vec<u32> = (2..=m_max).collect();
    let rows: Vec<Vec<String>> = q_scan(&ms, &search.config())?
        .into_iter()
        .map(|row| vec![row.m.to_string(), row.a.to_string(), row.report.sup_estimate.to_string()])
        .collect();
    sink.csv(manifest, &["m", "a", "estimate"], &rows)?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct AuditBody {
    audit: AuditReport,
}

fn audit(sink: &Sink, spec: &str, samples: u64, seed: u64) -> Result<u8, Failure> {
    let manifest = ManifestBuilder::start("audit", seed)
        .param("a", spec)
        .param("samples", samples);
    let a = parse_parameter(spec)?;
    let report = bound_audit(a, samples, seed)?;
    let passed = report.passed();
    if !passed {
        eprintln!(
            "{} samples above C(|a|) + 1e-9, {} above 2",
            report.violations, report.violations_factor_two
        );
    }
    sink.json(manifest, &AuditBody { audit: report })?;
    Ok(if passed { EXIT_OK } else { EXIT_VIOLATION })
}
