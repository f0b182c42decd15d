//! Command-line front end.
//!
//! [`run_command`] does all the work and returns what should be printed, so
//! the binary and the tests share one code path. Exit codes: `0` when every
//! executed check passed (skips do not count), `1` when some check was
//! refuted, `2` for usage, parse and input errors.

mod suites;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

pub use suites::{construct_report, identities_reports, operators_report, parse_selector, ConstructTarget};

use crate::arith::MultiIndex;
use crate::bergman::QuasiHomSymbol;
use crate::bhsuite::{builtin_suites, verify_bh_scenario, BHScenario};
use crate::error::{Error, Result};
use crate::report::Report;
use crate::symbolic::parse_bipoly;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "bergball", version, about = "Exact Toeplitz and Berezin checks on the Bergman space of the ball")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Polynomial identities and pointwise kernel identities.
    Identities {
        #[command(flatten)]
        run: RunArgs,
        /// Registry entries to run, as `name` or `name=param`; default is the full list.
        #[arg(long = "select", value_name = "NAME[=P]")]
        select: Vec<String>,
    },
    /// Consistency checks on truncated operator matrices and Berezin series.
    Operators {
        #[command(flatten)]
        run: RunArgs,
    },
    /// Berezin preimage of a polynomial, or the symbol of a Toeplitz product.
    Construct {
        #[command(flatten)]
        run: RunArgs,
        /// Polynomial target such as `z^(1)*zbar^(1)`.
        #[arg(long, conflicts_with_all = ["hol", "anti"])]
        target: Option<String>,
        /// Holomorphic exponent of the left factor, e.g. `(1,0)`.
        #[arg(long, requires = "anti")]
        hol: Option<String>,
        /// Antiholomorphic exponent of the right factor.
        #[arg(long, requires = "hol")]
        anti: Option<String>,
    },
    /// Check a scenario file against the product-sum identity and its conditions.
    VerifyBh {
        #[command(flatten)]
        run: RunArgs,
        scenario: PathBuf,
    },
    /// Run the built-in example checks.
    Suite {
        #[command(flatten)]
        run: RunArgs,
    },
    /// Re-render a JSON report.
    Report {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Markdown)]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args, Debug, Clone)]
struct RunArgs {
    /// Dimension N of the ball.
    #[arg(long = "n", default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
    n: u32,
    /// Truncation degree D.
    #[arg(long = "d", default_value_t = 6)]
    d: u32,
    /// Sample points for pointwise checks.
    #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Markdown)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Markdown,
}

/// Resolved run configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub dimension: usize,
    pub degree: u32,
    pub samples: usize,
    pub seed: u64,
    pub format: Format,
    pub output: Option<PathBuf>,
}

impl From<&RunArgs> for RunConfig {
    fn from(a: &RunArgs) -> Self {
        RunConfig {
            dimension: a.n as usize,
            degree: a.d,
            samples: a.samples as usize,
            seed: a.seed,
            format: a.format,
            output: a.output.clone(),
        }
    }
}

/// A constructed symbol in both text and JSON form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymbolOutput {
    pub json: serde_json::Value,
    pub text: String,
}

impl From<&QuasiHomSymbol> for SymbolOutput {
    fn from(u: &QuasiHomSymbol) -> Self {
        SymbolOutput { json: u.to_json(), text: u.to_string() }
    }
}

/// Everything one command emits. Field order is alphabetical so the JSON
/// form is stable.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunOutput {
    pub command: String,
    pub passed: bool,
    pub suites: Vec<Report>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symbol: Option<SymbolOutput>,
}

impl RunOutput {
    pub fn new(command: impl Into<String>, suites: Vec<Report>) -> Self {
        let passed = suites.iter().all(Report::passed);
        RunOutput { command: command.into(), passed, suites, symbol: None }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn to_markdown(&self) -> String {
        let mut s = format!("# bergball {}\n\n", self.command);
        if let Some(sym) = &self.symbol {
            s.push_str(&format!(
                "symbol: `{}`\n\n```json\n{}\n```\n\n",
                sym.text,
                serde_json::to_string_pretty(&sym.json).expect("serializable")
            ));
        }
        for r in &self.suites {
            s.push_str(&r.to_markdown());
            s.push('\n');
        }
        s.push_str(if self.passed { "result: pass\n" } else { "result: FAIL\n" });
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Markdown => self.to_markdown(),
        }
    }
}

/// Exit code and the text destined for stdout and stderr.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(msg: impl Into<String>) -> Self {
        Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: msg.into() }
    }
}

/// Parse `argv` (including the program name) and run the command.
pub fn run_command<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome { code: EXIT_PASS, stdout: text, stderr: String::new() }
                }
                _ => Outcome::usage(text),
            };
        }
    };
    match execute(cli.command) {
        Ok(run) => emit(&run),
        Err(e) => Outcome::usage(format!("error: {e}\n")),
    }
}

/// A finished command waiting to be written out.
struct Executed {
    out: RunOutput,
    format: Format,
    path: Option<PathBuf>,
    /// Whether failed checks in `out` were produced by this run.
    ran_checks: bool,
}

fn emit(run: &Executed) -> Outcome {
    let text = run.out.render(run.format);
    let code = if run.out.passed || !run.ran_checks { EXIT_PASS } else { EXIT_REFUTED };
    match &run.path {
        Some(p) => match std::fs::write(p, &text) {
            Ok(()) => Outcome { code, stdout: String::new(), stderr: String::new() },
            Err(e) => Outcome::usage(format!("error: cannot write {}: {e}\n", p.display())),
        },
        None => Outcome { code, stdout: text, stderr: String::new() },
    }
}

fn parse_index(s: &str, n: usize) -> Result<MultiIndex> {
    let m: MultiIndex = s.trim().parse()?;
    if m.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: m.dim() });
    }
    Ok(m)
}

fn execute(cmd: Command) -> Result<Executed> {
    let (out, cfg) = match cmd {
        Command::Identities { run, select } => {
            let cfg = RunConfig::from(&run);
            let ids = select.iter().map(|s| parse_selector(s, cfg.dimension)).collect::<Result<Vec<_>>>()?;
            let reps = identities_reports(cfg.dimension, cfg.degree, cfg.samples, cfg.seed, &ids)?;
            (RunOutput::new("identities", reps), cfg)
        }
        Command::Operators { run } => {
            let cfg = RunConfig::from(&run);
            (RunOutput::new("operators", vec![operators_report(cfg.dimension, cfg.degree)?]), cfg)
        }
        Command::Construct { run, target, hol, anti } => {
            let cfg = RunConfig::from(&run);
            let n = cfg.dimension;
            let t = match (target, hol, anti) {
                (Some(t), _, _) => ConstructTarget::Range(parse_bipoly(&t, Some(n))?),
                (None, Some(h), Some(a)) => {
                    ConstructTarget::Product { hol: parse_index(&h, n)?, anti: parse_index(&a, n)? }
                }
                _ => return Err(Error::Parse("construct needs --target or both --hol and --anti".into())),
            };
            let (rep, sym) = construct_report(&t, n, cfg.degree)?;
            let mut out = RunOutput::new("construct", vec![rep]);
            out.symbol = sym.as_ref().map(SymbolOutput::from);
            (out, cfg)
        }
        Command::VerifyBh { run, scenario } => {
            let cfg = RunConfig::from(&run);
            let text =
                std::fs::read_to_string(&scenario).map_err(|e| Error::Io(format!("{}: {e}", scenario.display())))?;
            let sc = BHScenario::from_json(&serde_json::from_str(&text)?)?;
            sc.validate()?;
            (RunOutput::new("verify-bh", vec![verify_bh_scenario(&sc, cfg.degree)?]), cfg)
        }
        Command::Suite { run } => {
            let cfg = RunConfig::from(&run);
            (RunOutput::new("suite", vec![builtin_suites(cfg.dimension, cfg.degree, cfg.seed)?]), cfg)
        }
        Command::Report { input, format, output } => {
            let text = std::fs::read_to_string(&input).map_err(|e| Error::Io(format!("{}: {e}", input.display())))?;
            let mut out: RunOutput = serde_json::from_str(&text)?;
            out.passed = out.suites.iter().all(Report::passed);
            // Re-rendering runs no checks, so it never refutes anything.
            return Ok(Executed { out, format, path: output, ran_checks: false });
        }
    };
    Ok(Executed { out, format: cfg.format, path: cfg.output, ran_checks: true })
}
