//! `vogel`: universal dimension formulas, non-uniqueness factors and their
//! configurations from the command line.
//!
//! Exit status: 0 for a positive verdict or success, 1 for a negative
//! verdict (a factor that is not 1, no coloring, no family found), 2 for
//! usage or input errors.

mod commands;
mod input;
mod reproduce;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "vogel", version, about = "Exact arithmetic on Vogel's plane")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for parallel searches (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

/// A factor product given by name or as a JSON file.
#[derive(Args, Debug, Clone)]
pub struct FactorSource {
    /// Built-in formula: adjoint, x2k, q33, prop4.
    #[arg(long, conflicts_with = "formula")]
    pub builtin: Option<String>,
    /// Exact parameters, comma separated: q33 takes c1,c2,x,y and prop4
    /// takes n,x,x',y.
    #[arg(long, allow_hyphen_values = true)]
    pub params: Option<String>,
    /// `k` for the x2k formula.
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    /// `n` for the x2k formula.
    #[arg(long, default_value_t = 0)]
    pub n: u32,
    /// Factor product JSON file.
    #[arg(long)]
    pub formula: Option<std::path::PathBuf>,
    /// Use the quantum (sinh) version.
    #[arg(long)]
    pub quantum: bool,
}

/// A configuration table given inline or as a JSON file.
#[derive(Args, Debug, Clone)]
pub struct TableSource {
    /// Columns such as "123 456 789 …" or "1,2,3; 4,5,6; …".
    #[arg(long, conflicts_with = "table_file")]
    pub table: Option<String>,
    /// Table JSON file.
    #[arg(long)]
    pub table_file: Option<std::path::PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum LinesArg {
    Three,
    Four,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Claim {
    #[value(name = "P1-remark")]
    P1Remark,
    #[value(name = "P2-k3")]
    P2K3,
    #[value(name = "P3")]
    P3,
    #[value(name = "P4")]
    P4,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a formula at a point or on a family line.
    Eval {
        #[command(flatten)]
        source: FactorSource,
        /// Algebra family: sl, so, sp, exc.
        #[arg(long)]
        algebra: Option<String>,
        /// Family parameter (N for sl/so/sp, n for exc), exact.
        #[arg(long, allow_hyphen_values = true)]
        param: Option<String>,
        /// Point "a,b,c", exact.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "algebra")]
        point: Option<String>,
        /// Basis of --point: unprimed or primed.
        #[arg(long, default_value = "unprimed")]
        basis: String,
        /// Exact classical evaluation (the default).
        #[arg(long, conflicts_with = "x")]
        classical: bool,
        /// Numeric quantum evaluation at this x (non-exact).
        #[arg(long, allow_hyphen_values = true)]
        x: Option<f64>,
        /// Simplify the formula restricted to the --algebra family line.
        #[arg(long, requires = "algebra")]
        symbolic: bool,
    },
    /// Decide whether a factor product is identically 1 on lines or the plane.
    CheckIdentity {
        #[command(flatten)]
        source: FactorSource,
        /// Lines, comma separated: sl, so, exc, sp or any of the twelve labels.
        #[arg(long, default_value = "sl,so,exc")]
        lines: String,
        /// Check on the whole plane instead.
        #[arg(long)]
        plane: bool,
    },
    /// Search pairing permutations and multipliers for nontrivial factors.
    Search {
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value = "three")]
        lines: LinesArg,
        /// Classical multipliers: classify (s, p) pairs on three lines.
        #[arg(long)]
        classical: bool,
        /// Maximum number of three-line prefixes examined.
        #[arg(long)]
        budget: Option<u64>,
        /// Report families matching the closed-form four-line factor.
        #[arg(long)]
        match_prop4: bool,
    },
    /// Enumerate (n₃) configuration tables up to isomorphism.
    ConfigsEnumerate {
        /// Type such as 9_3.
        #[arg(long = "type")]
        kind: String,
        /// Also test each table for a three-coloring.
        #[arg(long)]
        color: bool,
    },
    /// Find a black/red/green coloring of a table.
    ConfigsColor {
        #[command(flatten)]
        table: TableSource,
    },
    /// Read (s, p[, v]) off a colored table. Black lines are taken in the
    /// order sl, so, exc, sp.
    ExtractPerms {
        #[command(flatten)]
        table: TableSource,
        /// Coloring JSON file; found automatically when omitted.
        #[arg(long)]
        coloring: Option<std::path::PathBuf>,
    },
    /// Draw a factor against distinguished lines and read off its table.
    Sketch {
        #[command(flatten)]
        source: FactorSource,
        #[arg(long, default_value = "sl,so,exc")]
        lines: String,
        /// SVG output path.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Print the Vogel parameters of the simple Lie algebras.
    VogelTable,
    /// Bounded search for a (144₃ 36₁₂) picture on the twelve lines.
    #[command(name = "search-144")]
    Search144 {
        /// Maximum number of search nodes.
        #[arg(long)]
        budget: u64,
    },
    /// Re-run the scripted checks for a claim.
    Reproduce {
        #[arg(value_enum)]
        claim: Claim,
    },
}

/// Result of a command: a positive or negative verdict.
pub enum Verdict {
    Positive,
    Negative,
}

pub struct Ctx {
    pub json: bool,
    pub seed: u64,
}

fn run(cli: Cli) -> anyhow::Result<Verdict> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    let ctx = Ctx { json: cli.json, seed: input::seed()? };
    match cli.command {
        Command::Eval { source, algebra, param, point, basis, classical: _, x, symbolic } => {
            commands::eval(&ctx, &source, algebra.as_deref(), param.as_deref(), point.as_deref(), &basis, x, symbolic)
        }
        Command::CheckIdentity { source, lines, plane } => commands::check_identity(&ctx, &source, &lines, plane),
        Command::Search { k, lines, classical, budget, match_prop4 } => {
            commands::search(&ctx, k, lines, classical, budget, match_prop4)
        }
        Command::ConfigsEnumerate { kind, color } => commands::configs_enumerate(&ctx, &kind, color),
        Command::ConfigsColor { table } => commands::configs_color(&ctx, &table),
        Command::ExtractPerms { table, coloring } => commands::extract_perms(&ctx, &table, coloring.as_deref()),
        Command::Sketch { source, lines, out } => commands::sketch(&ctx, &source, &lines, out.as_deref()),
        Command::VogelTable => commands::vogel_table(&ctx),
        Command::Search144 { budget } => commands::search_144(&ctx, budget),
        Command::Reproduce { claim } => reproduce::reproduce(&ctx, claim),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(Verdict::Positive) => ExitCode::SUCCESS,
        Ok(Verdict::Negative) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
