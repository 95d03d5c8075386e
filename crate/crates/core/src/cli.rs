//! Command-line front end: `dims`, `basis`, `build-op` and `verify`.
//!
//! Exit codes: 0 success, 1 a verified identity failed, 2 bad arguments,
//! 3 I/O failure, 4 a precondition on the input failed.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::cktsolve::{second_order_symmetry_dimension, solve_ckt, solve_gckt, BasisKind};
use crate::error::Error;
use crate::rational::{format_rational, parse_rational, Rational};
use crate::report;
use crate::suite::{self, bilaplacian_weight, symmetry_certificate, Suite};
use crate::symalg::{canonical_dv, canonical_dw};
use crate::tensorcalc::SymTensorField;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_PRECONDITION: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "bisym", version, about = "Exact symmetries of the bilaplacian on R^n")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Ckt,
    Gckt,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OpKind {
    Dv,
    Dw,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    All,
    Ambient,
    Algebra,
    Lemma,
    Counterexample,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Dimensions of the Killing-tensor spaces of valency up to `s`.
    Dims {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Basis of conformal Killing (`ckt`, valency `s`) or generalised
    /// conformal Killing (`gckt`, valency `t`) tensors, as JSON.
    Basis {
        #[arg(long)]
        n: usize,
        #[arg(long, conflicts_with = "t")]
        s: Option<usize>,
        #[arg(long)]
        t: Option<usize>,
        #[arg(long, value_enum, default_value = "ckt")]
        kind: Kind,
        #[arg(long)]
        degree_bound: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Canonical operator of a tensor read from a JSON file.
    BuildOp {
        #[arg(long, value_enum)]
        kind: OpKind,
        #[arg(long)]
        input: PathBuf,
        /// Weight `p/q`; defaults to `2 - n/2`.
        #[arg(long)]
        w: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Runs a verification suite.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = suite::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// A failure carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(msg: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: msg.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Io(_) => EXIT_IO,
            Error::Parse(_) | Error::Json(_) => EXIT_USAGE,
            _ => EXIT_PRECONDITION,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn check_n(n: usize) -> Result<(), Failure> {
    if n < 3 {
        return Err(Failure::usage(format!("--n must be at least 3, got {n}")));
    }
    Ok(())
}

fn emit(out: &Option<PathBuf>, body: &str, stdout: &mut dyn Write) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, body).map_err(|e| Failure {
            code: EXIT_IO,
            message: format!("{}: {e}", path.display()),
        }),
        None => stdout.write_all(body.as_bytes()).map_err(|e| Failure {
            code: EXIT_IO,
            message: e.to_string(),
        }),
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serialisable");
    s.push('\n');
    s
}

/// Executes a parsed command, writing output to `stdout` unless `--out` is given.
pub fn execute(cli: Cli, stdout: &mut dyn Write) -> Result<i32, Failure> {
    match cli.command {
        Command::Dims { n, s, format, out } => {
            check_n(n)?;
            let body = dims(n, s, format)?;
            emit(&out, &body, stdout)?;
            Ok(EXIT_OK)
        }
        Command::Basis {
            n,
            s,
            t,
            kind,
            degree_bound,
            out,
        } => {
            check_n(n)?;
            let valency = s.or(t).ok_or_else(|| Failure::usage("one of --s or --t is required"))?;
            let bk = match kind {
                Kind::Ckt => BasisKind::ConformalKilling,
                Kind::Gckt => BasisKind::GeneralisedConformalKilling,
            };
            let bound = degree_bound.unwrap_or(bk.default_bound(valency));
            let basis = match bk {
                BasisKind::ConformalKilling => solve_ckt(n, valency, bound)?,
                BasisKind::GeneralisedConformalKilling => solve_gckt(n, valency, bound)?,
            };
            emit(&out, &pretty(&basis.to_json()), stdout)?;
            Ok(EXIT_OK)
        }
        Command::BuildOp { kind, input, w, out } => {
            let text = fs::read_to_string(&input).map_err(|e| Failure {
                code: EXIT_IO,
                message: format!("{}: {e}", input.display()),
            })?;
            let value: Value = serde_json::from_str(&text).map_err(Error::from)?;
            let field = SymTensorField::from_json(&value)?;
            let n = field.dim();
            check_n(n)?;
            let w = match w {
                Some(s) => parse_rational(&s).map_err(|e| Failure::usage(e.to_string()))?,
                None => bilaplacian_weight(n),
            };
            let body = build_op(kind, &field, &w)?;
            emit(&out, &pretty(&body), stdout)?;
            Ok(EXIT_OK)
        }
        Command::Verify {
            suite: which,
            n,
            seed,
            format,
            out,
        } => {
            check_n(n)?;
            let which = match which {
                SuiteArg::All => Suite::All,
                SuiteArg::Ambient => Suite::Ambient,
                SuiteArg::Algebra => Suite::Algebra,
                SuiteArg::Lemma => Suite::Lemma,
                SuiteArg::Counterexample => Suite::Counterexample,
            };
            let reports = suite::run(which, n, seed)?;
            let body = match format {
                Format::Json => pretty(&report::to_json(&reports)),
                Format::Text => report::to_text(&reports),
            };
            emit(&out, &body, stdout)?;
            Ok(if report::all_passed(&reports) {
                EXIT_OK
            } else {
                EXIT_FAILED
            })
        }
    }
}

fn dims(n: usize, s: usize, format: Format) -> Result<String, Failure> {
    let dims = crate::cktsolve::killing_dimensions(n, s)?;
    let total: usize = if s <= 2 { dims.iter().map(|d| d.2).sum() } else { 0 };
    let formula = (s == 2).then(|| second_order_symmetry_dimension(n));
    Ok(match format {
        Format::Json => {
            let mut ckt = serde_json::Map::new();
            let mut gckt = serde_json::Map::new();
            for (kind, v, d) in &dims {
                match kind {
                    BasisKind::ConformalKilling => ckt.insert(v.to_string(), json!(d)),
                    BasisKind::GeneralisedConformalKilling => gckt.insert(v.to_string(), json!(d)),
                };
            }
            let mut v = json!({"n": n, "s": s, "ckt": ckt, "gckt": gckt});
            if s <= 2 {
                v["total"] = json!(total);
            }
            if let Some(f) = formula {
                v["formula"] = json!(f);
            }
            pretty(&v)
        }
        Format::Text => {
            let mut out = String::new();
            for (kind, v, d) in &dims {
                let label = match kind {
                    BasisKind::ConformalKilling => "conformal Killing tensors",
                    BasisKind::GeneralisedConformalKilling => "generalised conformal Killing tensors",
                };
                out.push_str(&format!("{label}, valency {v}: {d}\n"));
            }
            if s <= 2 {
                let parts: Vec<String> = dims.iter().map(|d| d.2.to_string()).collect();
                out.push_str(&format!("symmetries of order <= {s}: {total} ({})\n", parts.join(" + ")));
            }
            if let Some(f) = formula {
                out.push_str(&format!("counting formula: {f}\n"));
            }
            out
        }
    })
}

fn build_op(kind: OpKind, field: &SymTensorField, w: &Rational) -> Result<Value, Failure> {
    let op = match kind {
        OpKind::Dv => canonical_dv(field, w)?,
        OpKind::Dw => canonical_dw(field, w)?,
    };
    let mut body = op.to_json();
    body["kind"] = json!(match kind {
        OpKind::Dv => "dv",
        OpKind::Dw => "dw",
    });
    if *w == bilaplacian_weight(field.dim()) {
        let cert = symmetry_certificate(&op.op).ok_or_else(|| Failure {
            code: EXIT_FAILED,
            message: format!("operator at w = {} is not a symmetry", format_rational(w)),
        })?;
        body["certificate"] = cert.to_json();
    }
    Ok(body)
}

/// Parses `args` (including the program name) and runs; returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = write!(stderr, "{e}");
            return code;
        }
    };
    match execute(cli, stdout) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("bisym").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn dims_second_order() {
        let (code, out, _) = call(&["dims", "--n", "3", "--s", "2"]);
        assert_eq!(code, 0);
        assert!(out.contains("symmetries of order <= 2: 60 (1 + 10 + 35 + 14)"), "{out}");
    }

    #[test]
    fn dims_rejects_small_n() {
        let (code, _, err) = call(&["dims", "--n", "2", "--s", "1"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("at least 3"));
    }

    #[test]
    fn dims_json_constant() {
        let (code, out, _) = call(&["dims", "--n", "3", "--s", "0", "--format", "json"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["total"], json!(1));
    }

    #[test]
    fn unknown_flag_is_usage_error() {
        assert_eq!(call(&["dims", "--bogus"]).0, EXIT_USAGE);
    }
}
