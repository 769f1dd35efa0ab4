//! Command-line front end.
//!
//! Every command prints one JSON object with sorted keys: the payload fields,
//! `command`, `inputHash` (SHA-256 of the arguments and any input files) and
//! `checks`, the self-verifications that were run. Domain errors print
//! `{"error":code,"detail":…}` and exit with 1; usage errors exit with 2.

mod commands;
pub mod parser;
pub mod ring;

pub use parser::{parse_scalar, parse_skew_expr};
pub use ring::{AnyRing, RingSpec};

use std::ffi::OsString;
use std::path::PathBuf;

use clap::Parser;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::error::Error;

/// Failure of a command, before it is rendered.
#[derive(Debug)]
pub enum CliError {
    Domain(Error),
    /// Malformed input that never reached the library.
    Usage { code: &'static str, detail: String },
    Io(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

impl CliError {
    fn usage(code: &'static str, detail: impl Into<String>) -> Self {
        CliError::Usage {
            code,
            detail: detail.into(),
        }
    }

    pub fn code(&self) -> &'static str {
        match self {
            CliError::Domain(e) => e.code(),
            CliError::Usage { code, .. } => code,
            CliError::Io(_) => "IoError",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage { .. } => 2,
            _ => 1,
        }
    }

    fn detail(&self) -> String {
        match self {
            CliError::Domain(e) => e.to_string(),
            CliError::Usage { detail, .. } | CliError::Io(detail) => detail.clone(),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Payload and checks collected by a command.
#[derive(Debug, Default)]
pub struct Report {
    fields: Map<String, Value>,
    checks: Vec<(String, bool)>,
}

impl Report {
    pub fn set(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.fields.insert(key.to_string(), v.into());
        self
    }

    /// Merges the fields of a serializable object.
    pub fn merge<T: serde::Serialize>(&mut self, v: &T) -> &mut Self {
        if let Ok(Value::Object(m)) = serde_json::to_value(v) {
            self.fields.extend(m);
        }
        self
    }

    pub fn check(&mut self, name: &str, pass: bool) -> &mut Self {
        self.checks.push((name.to_string(), pass));
        self
    }
}

/// Shared state of one invocation.
pub struct Context {
    pub ring: Option<RingSpec>,
    pub seed: u64,
    hasher: Sha256,
}

impl Context {
    pub fn ring(&self) -> CliResult<AnyRing> {
        Ok(self.ring.clone().unwrap_or_default().build()?)
    }

    /// Reads a JSON input given inline (starting with `{` or `[`) or as a path.
    pub fn read_json<T: serde::de::DeserializeOwned>(&mut self, arg: &str) -> CliResult<T> {
        let text = if arg.trim_start().starts_with(['{', '[']) {
            arg.to_string()
        } else {
            let t = std::fs::read_to_string(arg).map_err(|e| CliError::Io(format!("{arg}: {e}")))?;
            self.hasher.update(t.as_bytes());
            t
        };
        serde_json::from_str(&text).map_err(|e| CliError::usage("InvalidInput", format!("{arg}: {e}")))
    }
}

#[derive(Debug, Parser)]
#[command(name = "fskew", version, about = "Frobenius skew polynomials, Cartier modules and K0 invariants")]
struct Cli {
    #[command(subcommand)]
    group: commands::Group,
    /// Ring header, e.g. '{"ring":"GF","p":2,"r":2}'. Defaults to F_2.
    #[arg(long, global = true)]
    ring: Option<String>,
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

/// Exit code and the text for each stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn hash_args(args: &[OsString]) -> Sha256 {
    let mut h = Sha256::new();
    let mut skip = false;
    for a in args.iter().skip(1) {
        let s = a.to_string_lossy();
        if skip {
            skip = false;
            continue;
        }
        if s == "--out" {
            skip = true;
            continue;
        }
        if s.starts_with("--out=") {
            continue;
        }
        h.update(s.as_bytes());
        h.update([0u8]);
    }
    h
}

fn error_json(e: &CliError) -> String {
    let v = json!({"error": e.code(), "detail": e.detail()});
    format!("{v}\n")
}

/// Runs the CLI on `args` (program name first) without touching the process.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            let code = e.exit_code();
            return if e.use_stderr() {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let fail = |e: CliError| Outcome {
        code: e.exit_code(),
        stdout: error_json(&e),
        stderr: String::new(),
    };
    let ring = match cli.ring.as_deref().map(serde_json::from_str::<RingSpec>).transpose() {
        Ok(r) => r,
        Err(e) => return fail(CliError::usage("InvalidRingSpec", e.to_string())),
    };
    let mut ctx = Context {
        ring,
        seed: cli.seed,
        hasher: hash_args(&args),
    };
    if let Err(e) = ctx.ring() {
        return fail(e);
    }
    let mut report = Report::default();
    let name = cli.group.name();
    if let Err(e) = commands::dispatch(&cli.group, &mut ctx, &mut report) {
        return fail(e);
    }
    if let Some((check, _)) = report.checks.iter().find(|(_, pass)| !pass) {
        return fail(CliError::Domain(Error::Internal(format!("check '{check}' failed"))));
    }
    let mut out = report.fields;
    out.insert("command".into(), name.into());
    out.insert("inputHash".into(), format!("{:x}", ctx.hasher.finalize()).into());
    let checks: Vec<Value> = report
        .checks
        .iter()
        .map(|(n, p)| json!({"name": n, "pass": p}))
        .collect();
    out.insert("checks".into(), checks.into());
    let text = format!("{}\n", Value::Object(out));
    match &cli.out {
        Some(path) => match std::fs::write(path, &text) {
            Ok(()) => Outcome {
                code: 0,
                stdout: String::new(),
                stderr: String::new(),
            },
            Err(e) => fail(CliError::Io(format!("{}: {e}", path.display()))),
        },
        None => Outcome {
            code: 0,
            stdout: text,
            stderr: String::new(),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn payload(args: &[&str]) -> Value {
        let o = run(std::iter::once("fskew").chain(args.iter().copied()));
        assert_eq!(o.code, 0, "{o:?}");
        serde_json::from_str(&o.stdout).unwrap()
    }

    #[test]
    fn worked_commands() {
        let v = payload(&["skew", "mul", "--ring", r#"{"ring":"PolyRing","p":2}"#, "F", "x"]);
        assert_eq!(v["result"], "x^2*F");
        assert_eq!(v["command"], "skew mul");
        let v = payload(&["k0", "chow", "--n", "2", "--q", "3"]);
        assert_eq!((v["ker"].as_u64(), v["coker"].as_u64()), (Some(1), Some(1)));
        let v = payload(&["ore", "search", "--maxdeg", "8", "F", "t*F", "--ring", r#"{"ring":"RatFunc","p":2}"#]);
        assert_eq!(v["found"], false);
    }

    #[test]
    fn exit_codes() {
        let o = run(["fskew", "skew", "mul", "F", "x"]);
        assert_eq!(o.code, 1);
        let v: Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["error"], "UnknownSymbol");
        assert_eq!(run(["fskew", "skew", "frob"]).code, 2);
        let o = run(["fskew", "skew", "mul", "--ring", "{nope", "F", "F"]);
        assert_eq!(o.code, 2);
        assert!(o.stdout.contains("InvalidRingSpec"));
        let o = run(["fskew", "skew", "divl", "--ring", r#"{"ring":"RatFunc","p":2}"#, "F", "F"]);
        assert!(o.stdout.contains("NotPerfect"));
    }

    #[test]
    fn deterministic_and_out_independent() {
        let a = run(["fskew", "k0", "ses", "--ring", r#"{"ring":"Points","p":2,"count":2}"#, "--seed", "5"]);
        let b = run(["fskew", "k0", "ses", "--ring", r#"{"ring":"Points","p":2,"count":2}"#, "--seed", "5"]);
        assert_eq!(a, b);
        let dir = std::env::temp_dir().join(format!("fskew-out-{}", std::process::id()));
        let path = dir.to_string_lossy().to_string();
        let c = run(["fskew", "k0", "ses", "--ring", r#"{"ring":"Points","p":2,"count":2}"#, "--seed", "5", "--out", &path]);
        assert_eq!(c.stdout, "");
        assert_eq!(std::fs::read_to_string(&dir).unwrap(), a.stdout);
        std::fs::remove_file(&dir).unwrap();
    }
}
