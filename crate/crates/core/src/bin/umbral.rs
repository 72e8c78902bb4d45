use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use umbral_core::arith::parse_rational;
use umbral_core::families::{Family, FamilySpec, Param};
use umbral_core::identities::{run_identity, run_suite, CheckResult, Params, Report, SuiteConfig};
use umbral_core::{Error, Polynomial};

#[derive(Parser)]
#[command(name = "umbral", version, about = "Exact Sheffer sequences and identity checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print the closed form of a family at index n.
    Expand {
        /// Family name, e.g. `abel` or `bessel_p`.
        #[arg(value_name = "FAMILY")]
        name: Option<String>,
        #[arg(long)]
        family: Option<String>,
        #[arg(long)]
        n: usize,
        /// Family parameter as key=value, e.g. b=1 or alpha=1/2.
        #[arg(long = "param", value_name = "KEY=VALUE")]
        params: Vec<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run one identity at one parameter point.
    Check {
        #[arg(value_name = "ID")]
        name: Option<String>,
        #[arg(long)]
        id: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long = "param", value_name = "KEY=VALUE")]
        params: Vec<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        deterministic: bool,
    },
    /// Run the identity suite.
    Suite {
        #[arg(long, default_value_t = 6)]
        nmax: usize,
        /// Restrict to these identity ids (repeatable).
        #[arg(long = "id")]
        ids: Vec<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long, value_name = "PATH")]
        out: Option<String>,
        /// Zero all timing fields.
        #[arg(long)]
        deterministic: bool,
    },
}

enum Failure {
    Usage(String),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn split_param(raw: &str) -> Result<(&str, &str), Failure> {
    raw.split_once('=')
        .map(|(k, v)| (k.trim(), v.trim()))
        .ok_or_else(|| Failure::Usage(format!("expected key=value, got `{raw}`")))
}

fn pick(positional: Option<String>, flag: Option<String>, what: &str) -> Result<String, Failure> {
    match (positional, flag) {
        (Some(a), Some(b)) if a != b => Err(Failure::Usage(format!("conflicting {what}: {a} and {b}"))),
        (Some(a), _) | (None, Some(a)) => Ok(a),
        (None, None) => Err(Failure::Usage(format!("missing {what}"))),
    }
}

fn poly_json(p: &Polynomial) -> serde_json::Value {
    p.coeffs()
        .iter()
        .map(|c| serde_json::Value::String(umbral_core::arith::format_rational(c)))
        .collect()
}

fn expand(
    name: Option<String>,
    family: Option<String>,
    n: usize,
    params: &[String],
    format: Format,
) -> Result<bool, Failure> {
    let family: Family = pick(name, family, "family")?.parse()?;
    let mut values = Vec::new();
    for raw in params {
        let (k, v) = split_param(raw)?;
        let key: Param = k.parse()?;
        let value = parse_rational(v).ok_or_else(|| Failure::Usage(format!("cannot parse {raw}")))?;
        values.push((key, value));
    }
    let spec = FamilySpec::new(family, values)?;
    let p = umbral_core::families::family_polynomial(&spec, n)?;
    let mut out = io::stdout().lock();
    match format {
        Format::Text => writeln!(out, "{p}")?,
        Format::Json => {
            let v = serde_json::json!({ "family": family.name(), "n": n, "coeffs": poly_json(&p) });
            writeln!(out, "{v}")?
        }
    }
    Ok(true)
}

fn render_result(r: &CheckResult) -> String {
    let mut line = format!("{:<18} {:<12} {}", r.status.as_str(), r.id, r.params);
    if let Some(note) = &r.note {
        line.push_str(&format!("  [{note}]"));
    }
    if let Some(w) = &r.witness {
        if let (Some(l), Some(rh)) = (&w.lhs, &w.rhs) {
            line.push_str(&format!("\n    lhs: {l}\n    rhs: {rh}"));
        }
        if let Some(reason) = &w.reason {
            line.push_str(&format!("\n    {reason}"));
        }
    }
    line
}

fn render_report(report: &Report) -> String {
    let mut s = String::new();
    for r in &report.results {
        s.push_str(&render_result(r));
        s.push('\n');
    }
    s.push_str(&format!(
        "{} passed, {} failed (n_max = {}, truncation order {})\n",
        report.passed, report.failed, report.config.n_max, report.config.trunc_order
    ));
    s
}

fn check(
    name: Option<String>,
    id: Option<String>,
    n: Option<usize>,
    raw: &[String],
    format: Format,
    deterministic: bool,
) -> Result<bool, Failure> {
    let id = pick(name, id, "identity id")?;
    let mut params = Params::new();
    if let Some(n) = n {
        params = params.index("n", n);
    }
    for r in raw {
        let (k, v) = split_param(r)?;
        params.parse_insert(k, v)?;
    }
    let mut result = run_identity(&id, &params)?;
    if deterministic {
        result.elapsed_us = 0;
    }
    let mut out = io::stdout().lock();
    match format {
        Format::Text => writeln!(out, "{}", render_result(&result))?,
        Format::Json => writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&result).expect("results serialize")
        )?,
    }
    Ok(result.passed())
}

fn suite(
    nmax: usize,
    ids: Vec<String>,
    format: Format,
    out: Option<String>,
    deterministic: bool,
) -> Result<bool, Failure> {
    let cfg = SuiteConfig {
        n_max: nmax,
        ids,
        ..SuiteConfig::default()
    };
    let mut report = run_suite(&cfg)?;
    if deterministic {
        report.zero_timings();
    }
    let text = match format {
        Format::Text => render_report(&report),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report).expect("reports serialize");
            s.push('\n');
            s
        }
    };
    match out {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(report.all_passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Expand {
            name,
            family,
            n,
            params,
            format,
        } => expand(name, family, n, &params, format),
        Command::Check {
            name,
            id,
            n,
            params,
            format,
            deterministic,
        } => check(name, id, n, &params, format, deterministic),
        Command::Suite {
            nmax,
            ids,
            format,
            out,
            deterministic,
        } => suite(nmax, ids, format, out, deterministic),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
