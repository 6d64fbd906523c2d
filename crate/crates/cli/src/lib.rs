//! The `braidkit` command line: suite reports, moment tables and operator matrices.

use std::io::Write;
use std::path::PathBuf;

use braidkit::integration::moment_table;
use braidkit::models::build_model;
use braidkit::operators::{antipode_op, derivative_op, dilaton_op, rotation_op};
use braidkit::report::{run_suite, SuiteConfig, VerificationReport};
use braidkit::star_metric::{theta_automorphism, ThetaWhich};
use braidkit::{Mat, Model, QScalar};
use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::{json, Value};

pub const DEFAULT_MAX_DEGREE: usize = 3;

#[derive(Parser, Debug)]
#[command(name = "braidkit", version, about = "Exact identity checks for braided covector spaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run the identity suite and report every residual.
    Verify {
        model: String,
        #[arg(long, env = "BRAIDKIT_MAX_DEGREE", default_value_t = DEFAULT_MAX_DEGREE)]
        max_degree: usize,
        /// Drop the degree factor λ_ν^|b| from the sesquilinear form.
        #[arg(long)]
        no_lambda_nu: bool,
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Moments Z[x_i1 ... x_im] for every index tuple up to the given degree.
    Ztable {
        model: String,
        #[arg(long, env = "BRAIDKIT_MAX_DEGREE", default_value_t = DEFAULT_MAX_DEGREE)]
        degree: usize,
    },
    /// Matrix of one operator on a single degree.
    Opmatrix {
        model: String,
        #[arg(long, value_enum)]
        op: Op,
        #[arg(long)]
        degree: usize,
        /// First index (`∂^i`, `l±^i_j`).
        #[arg(long, default_value_t = 0)]
        i: usize,
        /// Second index (`l±^i_j`).
        #[arg(long, default_value_t = 0)]
        j: usize,
    },
    /// The matrices v, u and the scalar λ_ν.
    Theta { model: String },
    /// Model data evaluated at a rational q.
    Specialize {
        model: String,
        #[arg(long)]
        q: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Op {
    Partial,
    Partialbar,
    Lplus,
    Lminus,
    Dilaton,
    Antipode,
    ThetaV,
    ThetaU,
}

/// Failure of a command, with its exit code.
#[derive(Debug)]
pub enum CliError {
    /// Usage, model or I/O problem: exit code 2.
    Usage(String),
}

impl From<braidkit::Error> for CliError {
    fn from(e: braidkit::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

fn mat_json(m: &Mat) -> Value {
    Value::Array((0..m.rows()).map(|r| Value::Array(m.row(r).iter().map(|x| json!(x.to_string())).collect())).collect())
}

fn opt_text(s: &Option<QScalar>) -> Value {
    s.as_ref().map_or(Value::Null, |x| json!(x.to_string()))
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn model(name: &str) -> Result<Model, CliError> {
    Ok(build_model(name)?)
}

pub fn verify(name: &str, max_degree: usize, lambda_nu: bool) -> Result<VerificationReport, CliError> {
    Ok(run_suite(&model(name)?, SuiteConfig { max_degree, lambda_nu }))
}

pub fn ztable(name: &str, degree: usize) -> Result<String, CliError> {
    let m = model(name)?;
    let table = moment_table(&m, degree)?;
    let moments: serde_json::Map<String, Value> = table
        .iter()
        .map(|(t, v)| (format!("{t:?}").replace(' ', ""), json!(v.to_string())))
        .collect();
    Ok(pretty(&json!({
        "model": m.name(),
        "n": m.n(),
        "max_degree": degree,
        "lambda_sq": opt_text(&m.spec.lambda_sq),
        "moments": moments,
    })))
}

pub fn opmatrix(name: &str, op: Op, degree: usize, i: usize, j: usize) -> Result<String, CliError> {
    let m = model(name)?;
    let full = match op {
        Op::Partial | Op::Partialbar => {
            if degree == 0 {
                return Err(CliError::Usage("derivatives need --degree >= 1".into()));
            }
            derivative_op(&m, i, op == Op::Partialbar, degree)?
        }
        Op::Lplus => rotation_op(&m, i, j, true, degree)?,
        Op::Lminus => rotation_op(&m, i, j, false, degree)?,
        Op::Dilaton => dilaton_op(&m, degree),
        Op::Antipode => antipode_op(&m, degree)?,
        Op::ThetaV => theta_automorphism(&m, ThetaWhich::V, degree)?,
        Op::ThetaU => theta_automorphism(&m, ThetaWhich::U, degree)?,
    };
    let mut single = full.clone();
    single.blocks.retain(|d, _| *d == degree);
    Ok(single.to_json(&m))
}

pub fn theta(name: &str) -> Result<String, CliError> {
    let m = model(name)?;
    let (v, u, nu) = m.theta()?;
    Ok(pretty(&json!({
        "model": m.name(),
        "v": mat_json(v),
        "u": mat_json(u),
        "lambda_nu": nu.to_string(),
    })))
}

fn parse_rational(s: &str) -> Result<BigRational, CliError> {
    s.trim().parse::<BigRational>().map_err(|_| CliError::Usage(format!("not a rational number: {s:?}")))
}

fn special_mat(m: &Mat, q0: &BigRational) -> Result<Value, CliError> {
    let vals = m.specialize(q0)?;
    let cols = m.cols().max(1);
    Ok(Value::Array(vals.chunks(cols).map(|r| Value::Array(r.iter().map(|x| json!(x.to_string())).collect())).collect()))
}

fn special_scalar(s: &Option<QScalar>, q0: &BigRational) -> Result<Value, CliError> {
    Ok(match s {
        Some(x) => json!(x.specialize(q0)?.to_string()),
        None => Value::Null,
    })
}

pub fn specialize(name: &str, q: &str) -> Result<String, CliError> {
    let m = model(name)?;
    let q0 = parse_rational(q)?;
    let spec = &m.spec;
    let opt_mat = |x: &Option<Mat>| -> Result<Value, CliError> {
        x.as_ref().map_or(Ok(Value::Null), |y| special_mat(y, &q0))
    };
    Ok(pretty(&json!({
        "model": m.name(),
        "q": q0.to_string(),
        "r": special_mat(&spec.r.to_mat(), &q0)?,
        "r_prime": special_mat(&spec.r_prime.to_mat(), &q0)?,
        "eta": opt_mat(&spec.eta)?,
        "lambda_sq": special_scalar(&spec.lambda_sq, &q0)?,
        "v": opt_mat(&spec.v)?,
        "u": opt_mat(&spec.u)?,
        "lambda_nu": special_scalar(&spec.lambda_nu, &q0)?,
    })))
}

/// Executes a parsed command; returns the exit code.
pub fn execute(cli: Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    let text = match cli.command {
        Command::Verify { model, max_degree, no_lambda_nu, report, format } => {
            let r = verify(&model, max_degree, !no_lambda_nu)?;
            let rendered = match format {
                Format::Json => r.to_json(),
                Format::Text => r.to_text(),
            };
            match report {
                Some(path) => {
                    std::fs::write(&path, &rendered)?;
                    let failed = r.failures().count();
                    writeln!(out, "{}: {} entries, {} failed; report written to {}", r.model, r.entries.len(), failed, path.display())?;
                }
                None => write!(out, "{rendered}")?,
            }
            return Ok(if r.all_pass() { 0 } else { 1 });
        }
        Command::Ztable { model, degree } => ztable(&model, degree)?,
        Command::Opmatrix { model, op, degree, i, j } => opmatrix(&model, op, degree, i, j)?,
        Command::Theta { model } => theta(&model)?,
        Command::Specialize { model, q } => specialize(&model, &q)?,
    };
    writeln!(out, "{text}")?;
    Ok(0)
}

/// Parses `args` and runs; usage and model errors map to exit code 2.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = write!(err, "{}", e.render());
            return code;
        }
    };
    match execute(cli, out) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}
