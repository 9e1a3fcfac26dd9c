//! Command-line surface. `run` parses arguments and returns the text to print
//! and the exit status, so the binary stays a thin shell and the commands can
//! be tested in-process.

mod model_file;
mod report;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::bench::{self, BenchSpec};
use crate::ctl::{Closure, Ctl};
use crate::error::{Error, Result};
use crate::game::{self, ReuseStore};
use crate::oracle::lifted_check_brute;
use crate::verify::{verify, VerifyOptions};

pub use model_file::{load_model, parse_model, write_model};
pub use report::{render_structured, render_text};

/// Exit status when every variant satisfies the formula.
pub const EXIT_SAT: i32 = 0;
/// Exit status when some variant violates the formula.
pub const EXIT_VIOL: i32 = 1;
/// Exit status for usage, parse, validation and I/O errors.
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "ftscheck", version, about = "Lifted CTL model checking for featured transition systems")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum ReportFormat {
    #[default]
    Text,
    Structured,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Verify a formula on every variant, refining the abstraction as needed.
    Check {
        model: PathBuf,
        formula: String,
        #[command(flatten)]
        flags: CheckFlags,
    },
    /// Check every variant separately with the explicit labeling checker.
    Oracle { model: PathBuf, formula: String },
    /// Write the colored game-graph of the join abstraction as DOT.
    Game {
        model: PathBuf,
        formula: String,
        dot: PathBuf,
    },
    /// Print a generated model in the text model format.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Run the M_n benchmark matrix.
    Bench {
        /// Comma-separated sizes.
        #[arg(long, value_delimiter = ',', default_values_t = [1usize, 2, 3, 4, 5, 6, 7, 8])]
        n: Vec<usize>,
        /// Timing repetitions; the median is reported.
        #[arg(long, default_value_t = 1)]
        repeat: usize,
        /// Also run every case with reuse disabled.
        #[arg(long)]
        compare_reuse: bool,
        #[arg(long)]
        csv: bool,
    },
}

#[derive(Debug, Clone, Default, clap::Args)]
pub struct CheckFlags {
    /// Do not prune game-graphs with colors from earlier calls.
    #[arg(long)]
    pub no_reuse: bool,
    /// Write one colored game-graph per engine call into this directory.
    #[arg(long)]
    pub dot_dir: Option<PathBuf>,
    /// Print engine call statistics and timings.
    #[arg(long)]
    pub stats: bool,
    #[arg(long, value_enum, default_value = "text")]
    pub report: ReportFormat,
    /// Re-solve pruned games from scratch and compare (slow).
    #[arg(long)]
    pub audit_reuse: bool,
}

#[derive(Debug, Clone, Subcommand)]
pub enum GenKind {
    /// The two-feature vending machine.
    Vending,
    /// The binary-tree family M_n.
    Mn { n: usize },
    /// A seeded random FTS.
    Random {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        states: usize,
        #[arg(long, default_value_t = 2)]
        features: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub exit: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, exit: 0 }
    }
}

fn parse_formula(text: &str) -> Result<Ctl> {
    if text.trim().is_empty() {
        return Err(Error::InvalidArgument("empty formula".into()));
    }
    Ctl::parse(text)
}

pub fn cmd_check(model: &Path, formula: &str, flags: &CheckFlags) -> Result<Outcome> {
    let fts = load_model(model)?;
    let phi = parse_formula(formula)?;
    let options = VerifyOptions {
        reuse: !flags.no_reuse,
        audit_reuse: flags.audit_reuse,
        dot_dir: flags.dot_dir.clone(),
    };
    let report = verify(&fts, &fts.space, &phi, &options)?;
    let text = phi.to_string();
    let stdout = match flags.report {
        ReportFormat::Text => render_text(&report, &text, flags.stats),
        ReportFormat::Structured => render_structured(&report, &text, flags.stats),
    };
    Ok(Outcome {
        stdout,
        exit: if report.all_satisfied() { EXIT_SAT } else { EXIT_VIOL },
    })
}

pub fn cmd_oracle(model: &Path, formula: &str) -> Result<Outcome> {
    let fts = load_model(model)?;
    let phi = parse_formula(formula)?;
    let table = lifted_check_brute(&fts, &phi)?;
    let features = fts.space.features();
    let rows: Vec<(String, bool)> = table.iter().map(|(k, &v)| (k.render(features), v)).collect();
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0).max("config".len());
    let mut out = format!("{:<width$}  verdict\n", "config");
    for (k, v) in rows {
        let _ = writeln!(out, "{k:<width$}  {}", if v { "tt" } else { "ff" });
    }
    Ok(Outcome::ok(out))
}

pub fn cmd_game(model: &Path, formula: &str, dot: &Path) -> Result<Outcome> {
    let fts = load_model(model)?;
    let phi = parse_formula(formula)?;
    let mts = fts.abstract_join();
    let closure = Closure::new(&phi);
    let solved = game::solve(&mts, &closure, &ReuseStore::new())?;
    std::fs::write(dot, game::to_dot(&solved.graph, &solved.coloring, &closure, &mts.ts))?;
    Ok(Outcome::ok(format!(
        "{} nodes, {} edges, result {:?}\n",
        solved.graph.node_count(),
        solved.graph.edges.len(),
        solved.result
    )))
}

pub fn cmd_gen(kind: &GenKind) -> Result<Outcome> {
    let fts = match *kind {
        GenKind::Vending => bench::gen_vending_machine(),
        GenKind::Mn { n } => bench::gen_mn(n)?,
        GenKind::Random {
            seed,
            states,
            features,
        } => bench::gen_random_fts(seed, states, features)?,
    };
    Ok(Outcome::ok(write_model(&fts)))
}

pub fn cmd_bench(ns: &[usize], repeat: usize, compare_reuse: bool, csv: bool) -> Result<Outcome> {
    let mut spec = BenchSpec::mn_matrix(ns)?;
    spec.repeat = repeat;
    spec.compare_reuse = compare_reuse;
    let rows = bench::run_bench(&spec)?;
    Ok(Outcome::ok(if csv {
        bench::render_csv(&rows)
    } else {
        bench::render_table(&rows)
    }))
}

pub fn dispatch(command: &Command) -> Result<Outcome> {
    match command {
        Command::Check {
            model,
            formula,
            flags,
        } => cmd_check(model, formula, flags),
        Command::Oracle { model, formula } => cmd_oracle(model, formula),
        Command::Game {
            model,
            formula,
            dot,
        } => cmd_game(model, formula, dot),
        Command::Gen { kind } => cmd_gen(kind),
        Command::Bench {
            n,
            repeat,
            compare_reuse,
            csv,
        } => cmd_bench(n, *repeat, *compare_reuse, *csv),
    }
}

/// Full run: `(stdout, stderr, exit status)`.
pub fn run<I, T>(args: I) -> (String, String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                (String::new(), text, EXIT_ERROR)
            } else {
                (text, String::new(), 0)
            };
        }
    };
    match dispatch(&cli.command) {
        Ok(o) => (o.stdout, String::new(), o.exit),
        Err(e) => (String::new(), format!("error: {e}\n"), EXIT_ERROR),
    }
}
