//! The `dfarkas` command line.
//!
//! Every command reads one instance file (or `-` for stdin) and prints a
//! single JSON document. Exit codes: 0 feasible, 1 infeasible, 2 for input
//! or usage errors.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_traits::Zero;
use rand::rngs::StdRng;
use rand::SeedableRng;
use serde_json::{json, Map, Value};

use crate::arith::Rational;
use crate::certificate::{self, Certificate, EvalOutcome, EvaluationPoint, Verification};
use crate::counting::{self, box_bounds};
use crate::error::{Error, Result};
use crate::instance::{integer_json, Instance, Mode};
use crate::lift::{build_lifted, check_general, LiftedInstance};
use crate::lp_build::{self, Assembly, LpDims};
use crate::pipeline::{self, Decision, Verdict};

pub const EXIT_FEASIBLE: i32 = 0;
pub const EXIT_INFEASIBLE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

/// Number of random points used by `certify` to spot-check the identity.
const EVAL_POINTS: usize = 20;

/// Largest enumeration box `count` cross-checks against.
const CROSS_CHECK_BOX: u128 = 1_000_000;

#[derive(Debug, Parser)]
#[command(name = "dfarkas", version, about = "Decide Ax = b over nonnegative integers with polynomial certificates")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide feasibility and print a JSON report.
    Check(CommonArgs),
    /// Write a certificate for a feasible instance and report on it.
    Certify(CommonArgs),
    /// Print a solution x with Ax = b.
    Witness(CommonArgs),
    /// Print the exact number of solutions.
    Count(CommonArgs),
    /// Print the LP dimensions and the degree bound.
    Dims(CommonArgs),
    /// Print the lifted nonnegative instance of a general instance.
    Lift(CommonArgs),
    /// Check a certificate file against an instance.
    Verify {
        #[command(flatten)]
        common: CommonArgs,
        /// Certificate JSON to check.
        #[arg(long)]
        cert: PathBuf,
    },
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Instance JSON file, or `-` for stdin.
    pub instance: PathBuf,
    /// Assemble only the monomials inside the box [0, b] (default).
    #[arg(long, conflicts_with = "full")]
    pub pruned: bool,
    /// Assemble every monomial up to the degree bound.
    #[arg(long)]
    pub full: bool,
    /// Accept negative entries and decide through the lifted instance.
    #[arg(long)]
    pub general: bool,
    /// Output file: the certificate for `certify`, the report otherwise.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Seed for the random evaluation points of `certify`.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

impl CommonArgs {
    fn assembly(&self) -> Assembly {
        if self.full {
            Assembly::Full
        } else {
            Assembly::Pruned
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_FEASIBLE };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    match execute(&cli.command) {
        Ok((code, report)) => {
            if let Some(cols) = report.get("dropped_columns") {
                let _ = writeln!(stderr, "dfarkas: warning: zero columns {cols} dropped");
            }
            let text = serde_json::to_string_pretty(&report).expect("JSON values serialize");
            let _ = writeln!(stdout, "{text}");
            code
        }
        Err(e) => {
            let _ = writeln!(stderr, "dfarkas: {}", one_line(&e));
            EXIT_INPUT
        }
    }
}

fn one_line(e: &Error) -> String {
    e.to_string().lines().next().unwrap_or_default().to_string()
}

fn execute(cmd: &Command) -> Result<(i32, Value)> {
    match cmd {
        Command::Check(args) => with_report_file(args, cmd_check(args)),
        Command::Certify(args) => cmd_certify(args),
        Command::Witness(args) => with_report_file(args, cmd_witness(args)),
        Command::Count(args) => with_report_file(args, cmd_count(args)),
        Command::Dims(args) => with_report_file(args, cmd_dims(args)),
        Command::Lift(args) => with_report_file(args, cmd_lift(args)),
        Command::Verify { common, cert } => with_report_file(common, cmd_verify(common, cert)),
    }
}

fn with_report_file(args: &CommonArgs, res: Result<(i32, Value)>) -> Result<(i32, Value)> {
    let (code, report) = res?;
    if let Some(path) = &args.out {
        write_json(path, &report)?;
    }
    Ok((code, report))
}

fn write_json(path: &Path, v: &Value) -> Result<()> {
    let mut text = serde_json::to_string_pretty(v)?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

fn read_text(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        Ok(std::fs::read_to_string(path)?)
    }
}

/// Reads the instance and settles its mode: without `--general` any negative
/// entry is an input error, with it the instance always goes through the lift.
fn load(args: &CommonArgs) -> Result<Instance> {
    let inst = Instance::from_json_str(&read_text(&args.instance)?)?;
    if args.general {
        inst.with_mode(Mode::General)
    } else if inst.has_negative_entries() {
        Err(Error::NegativeEntries)
    } else {
        inst.with_mode(Mode::NonnegOnly)
    }
}

fn decide(inst: &Instance, args: &CommonArgs) -> Result<Decision> {
    match inst.mode() {
        Mode::General => check_general(inst, args.assembly()),
        Mode::NonnegOnly => pipeline::check(inst, args.assembly()),
    }
}

fn exit_code(v: Verdict) -> i32 {
    match v {
        Verdict::Feasible => EXIT_FEASIBLE,
        Verdict::Infeasible => EXIT_INFEASIBLE,
    }
}

fn dims_json(d: &LpDims) -> Value {
    json!({
        "vars": integer_json(&BigInt::from(d.num_vars.clone())),
        "rows": integer_json(&BigInt::from(d.num_rows.clone())),
        "b_star": integer_json(&d.degree_bound_used),
    })
}

fn rationals_json(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(|r| Value::String(r.to_fraction_string())).collect())
}

fn decision_json(d: &Decision, seconds: f64) -> Value {
    let mut r = Map::new();
    r.insert("verdict".into(), d.verdict.as_str().into());
    r.insert("lp_dims".into(), d.lp_dims.as_ref().map_or(Value::Null, dims_json));
    r.insert("time".into(), json!(seconds));
    if let Some(sc) = d.short_circuit {
        r.insert("short_circuit".into(), sc.as_str().into());
    }
    r.insert("assembly".into(), d.assembly.as_str().into());
    if let Some((vars, rows)) = d.solved_size {
        r.insert("solved".into(), json!({"vars": vars, "rows": rows}));
    }
    if let Some(b) = &d.degree_bound {
        r.insert("b_star".into(), integer_json(b));
    }
    if !d.dropped_columns.is_empty() {
        r.insert("dropped_columns".into(), json!(d.dropped_columns));
    }
    if let Some(l) = &d.lift {
        r.insert("lifted".into(), json!({"alpha": l.to_json()["alpha"], "beta": integer_json(&l.beta)}));
    }
    Value::Object(r)
}

fn cmd_check(args: &CommonArgs) -> Result<(i32, Value)> {
    let inst = load(args)?;
    let start = Instant::now();
    let d = decide(&inst, args)?;
    let seconds = start.elapsed().as_secs_f64();
    Ok((exit_code(d.verdict), decision_json(&d, seconds)))
}

/// The instance a decision's certificate refers to.
fn certified_instance<'a>(inst: &'a Instance, d: &'a Decision) -> &'a Instance {
    d.lift.as_ref().map_or(inst, |l| &l.lifted)
}

fn infeasibility_summary(d: &Decision) -> Value {
    let mut r = Map::new();
    if let Some(u) = &d.multipliers {
        r.insert("multipliers".into(), json!(u.len()));
        r.insert("nonzero_multipliers".into(), json!(u.iter().filter(|x| !x.is_zero()).count()));
    }
    if let Some(sc) = d.short_circuit {
        r.insert("reason".into(), sc.as_str().into());
    }
    Value::Object(r)
}

fn cmd_certify(args: &CommonArgs) -> Result<(i32, Value)> {
    let inst = load(args)?;
    let start = Instant::now();
    let d = decide(&inst, args)?;
    let mut report = decision_json(&d, start.elapsed().as_secs_f64());
    let obj = report.as_object_mut().expect("report is an object");
    let Some(cert) = &d.certificate else {
        obj.insert("infeasibility".into(), infeasibility_summary(&d));
        return Ok((EXIT_INFEASIBLE, report));
    };
    let target = certified_instance(&inst, &d);
    let verification = certificate::verify(target, cert);
    obj.insert("verify".into(), verification_json(&verification));
    obj.insert("max_degree".into(), json!(cert.max_degree()));
    obj.insert("term_counts".into(), json!(cert.term_counts()));
    let mut rng = StdRng::seed_from_u64(args.seed);
    let mut passed = 0;
    for _ in 0..EVAL_POINTS {
        let pt = EvaluationPoint::random(target.m(), &mut rng);
        if let EvalOutcome::Pass = certificate::eval_check(target, cert, &pt)? {
            passed += 1;
        }
    }
    obj.insert("eval_check".into(), json!({"points": EVAL_POINTS, "passed": passed, "seed": args.seed}));
    match &args.out {
        Some(path) => {
            write_json(path, &cert.to_json())?;
            obj.insert("certificate_file".into(), path.display().to_string().into());
        }
        None => {
            obj.insert("certificate".into(), cert.to_json());
        }
    }
    Ok((EXIT_FEASIBLE, report))
}

fn verification_json(v: &Verification) -> Value {
    match v {
        Verification::Valid => "Valid".into(),
        Verification::Invalid(reason) => json!({"Invalid": reason.to_string()}),
    }
}

fn cmd_witness(args: &CommonArgs) -> Result<(i32, Value)> {
    let inst = load(args)?;
    let d = decide(&inst, args)?;
    match &d.witness {
        Some(x) => {
            assert!(inst.is_solution(x), "witness does not satisfy Ax = b");
            Ok((EXIT_FEASIBLE, json!({"verdict": d.verdict.as_str(), "x": x})))
        }
        None => Ok((EXIT_INFEASIBLE, json!({"verdict": d.verdict.as_str(), "x": Value::Null}))),
    }
}

fn cmd_count(args: &CommonArgs) -> Result<(i32, Value)> {
    let inst = load(args)?;
    // a general instance is counted through its lift: (x, u) <-> x is a bijection
    let lifted: Option<LiftedInstance> = match inst.mode() {
        Mode::General => match build_lifted(&inst) {
            Ok(l) => Some(l),
            Err(Error::EmptyRelaxation { .. }) => {
                return Ok((EXIT_INFEASIBLE, json!({"count": 0, "method": "empty_relaxation"})));
            }
            Err(e) => return Err(e),
        },
        Mode::NonnegOnly => None,
    };
    let series_target = lifted.as_ref().map_or(&inst, |l| &l.lifted);
    let count = counting::count_series(series_target)?;
    let mut report = json!({"count": integer_json(&BigInt::from(count.clone())), "method": "series"});
    let small_box = box_bounds(&inst)
        .ok()
        .and_then(|b| b.iter().try_fold(1u128, |acc, &u| acc.checked_mul(u as u128 + 1)))
        .is_some_and(|v| v <= CROSS_CHECK_BOX);
    if small_box {
        let brute = counting::enumerate(&inst, 0)?;
        assert_eq!(brute.count, count, "series count disagrees with enumeration");
        report["cross_checked"] = true.into();
    }
    let code = if count.is_zero() { EXIT_INFEASIBLE } else { EXIT_FEASIBLE };
    Ok((code, report))
}

fn cmd_dims(args: &CommonArgs) -> Result<(i32, Value)> {
    let inst = load(args)?;
    let target = match inst.mode() {
        Mode::General => build_lifted(&inst)?.lifted,
        Mode::NonnegOnly => inst.clone(),
    };
    let b_star = lp_build::degree_bound_formula(&target);
    let mut report = match lp_build::dims(&target)? {
        Some(d) => dims_json(&d),
        None => json!({"vars": 0, "rows": 0, "b_star": integer_json(&b_star)}),
    };
    if let Some(p) = lp_build::pruned_dims(&target)? {
        report["pruned"] = json!({
            "vars": integer_json(&BigInt::from(p.num_vars)),
            "rows": integer_json(&BigInt::from(p.num_rows)),
        });
    }
    Ok((EXIT_FEASIBLE, report))
}

fn cmd_lift(args: &CommonArgs) -> Result<(i32, Value)> {
    // lifting is the point of this command, so `--general` is implied
    let inst = Instance::from_json_str(&read_text(&args.instance)?)?;
    let inst = inst.with_mode(Mode::General)?;
    match build_lifted(&inst) {
        Ok(l) => {
            let mut v = l.to_json();
            v["degree_bound"] = integer_json(&l.degree_bound_closed_form());
            Ok((EXIT_FEASIBLE, v))
        }
        Err(Error::EmptyRelaxation { multipliers }) => Ok((
            EXIT_INFEASIBLE,
            json!({"verdict": "infeasible", "short_circuit": "empty_relaxation", "multipliers": rationals_json(&multipliers)}),
        )),
        Err(e) => Err(e),
    }
}

fn cmd_verify(args: &CommonArgs, cert_path: &Path) -> Result<(i32, Value)> {
    let inst = load(args)?;
    let cert_json: Value = serde_json::from_str(&read_text(cert_path)?)?;
    let cert = Certificate::from_json(&cert_json)?;
    // a certificate in m + 1 variables for a general instance refers to its lift
    let lift = match inst.mode() {
        Mode::General => Some(build_lifted(&inst)?),
        Mode::NonnegOnly => None,
    };
    let target = lift.as_ref().map_or(&inst, |l| &l.lifted);
    let v = certificate::verify(target, &cert);
    let code = if v.is_valid() { EXIT_FEASIBLE } else { EXIT_INFEASIBLE };
    let mut report = json!({"verify": verification_json(&v)});
    if v.is_valid() {
        report["witness"] = match certificate::extract_witness(target, &cert) {
            Ok(x) => json!(lift.as_ref().map_or(x.clone(), |l| l.project_witness(&x))),
            Err(e) => one_line(&e).into(),
        };
    }
    Ok((code, report))
}
