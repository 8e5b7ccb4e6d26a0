//! Command-line surface: decomposition tables, verification suites and the
//! JSON report format.

use std::fmt::Write as _;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::characters::{BiDecomposition, Decomposition};
use crate::closedform::{
    bead_homology_formula, general_isotypical, sign_input_values, constant_input_values, induction_values, injection_homology_formula, InductionInput,
};
use crate::freelie::{h0_multilinear_slice, truncation_comparison, DEFAULT_MAX_N_FREE, DEFAULT_MAX_N_TRUNCATED};
use crate::homology::{beads_slice, decompose_h0, Model, DEFAULT_MAX_N};
use crate::partitions::{partitions_of, Partition};

/// Default cap on `N` for the constructive map, whose cost grows much more
/// slowly than the brute-force cokernels.
pub const DEFAULT_MAX_N_CLOSED: usize = 10;

/// Environment variable read for the worker thread count.
pub const THREADS_ENV: &str = "LIE_HOMOLOGY_THREADS";

#[derive(Debug, Parser)]
#[command(name = "lie-homology", version, about = "Exact isotypical decompositions of degree-zero Lie algebra homology")]
pub struct Cli {
    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true, env = THREADS_ENV)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decompose the homology of one `(N, n)` pair.
    Decompose(DecomposeArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Debug, clap::Args)]
pub struct DecomposeArgs {
    /// Number of labels.
    #[arg(long = "N")]
    pub big_n: usize,
    /// Number of tensor factors.
    #[arg(long = "n")]
    pub n: usize,
    /// Restrict to one isotypical component, e.g. `[2,1,1]`.
    #[arg(long, value_parser = Partition::from_str)]
    pub rho: Option<Partition>,
    #[arg(long, value_enum, default_value_t = ModelArg::Closed)]
    pub model: ModelArg,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Largest `N` accepted; defaults to the cap of the chosen engine.
    #[arg(long)]
    pub max_n: Option<usize>,
}

#[derive(Debug, clap::Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
    /// Largest `N` for the suites that scan over `N`.
    #[arg(long)]
    pub max_n: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    /// The constructive isotypical map.
    Closed,
    /// Cokernel on signed bead arrangements.
    Beads,
    /// Free Lie algebra tensor powers.
    Free,
    /// Length-at-most-two quotient of the free Lie algebra.
    Truncated,
}

impl ModelArg {
    fn name(self) -> &'static str {
        match self {
            ModelArg::Closed => "closed",
            ModelArg::Beads => "beads",
            ModelArg::Free => "free",
            ModelArg::Truncated => "truncated",
        }
    }

    fn default_cap(self) -> usize {
        match self {
            ModelArg::Closed => DEFAULT_MAX_N_CLOSED,
            ModelArg::Beads => DEFAULT_MAX_N,
            ModelArg::Free => DEFAULT_MAX_N_FREE,
            ModelArg::Truncated => DEFAULT_MAX_N_TRUNCATED,
        }
    }

    fn slice(self, rho: &Partition, n: usize) -> Result<Decomposition, CliError> {
        Ok(match self {
            ModelArg::Closed => {
                general_isotypical(rho, n)
                    .map_err(|e| CliError::Usage(e.to_string()))?
                    .decomposition
            }
            ModelArg::Beads => beads_slice(rho, n, true),
            ModelArg::Free => h0_multilinear_slice(rho, n, false),
            ModelArg::Truncated => h0_multilinear_slice(rho, n, true),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// Injection homology formula against the cokernel, `a ≤ b ≤ 6`.
    Calc,
    /// Unsigned bead homology formula against the cokernel.
    Beads,
    /// Constructive map against the signed bead cokernel, slice by slice.
    Main,
    /// Free against truncated oracle on column and hook shapes.
    Truncation,
    /// Antisymmetrized induction of constant and sign inputs.
    Props,
    All,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Verification(_) => 1,
        }
    }
}

/// One nonzero multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho: Option<Partition>,
    pub lambda: Partition,
    pub mult: u64,
}

/// A decomposition table as emitted by `decompose`. Per-entry `rho` is
/// omitted when the report is restricted to one component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    #[serde(rename = "N")]
    pub big_n: usize,
    pub n: usize,
    pub rho: Option<Partition>,
    pub model: String,
    pub entries: Vec<Entry>,
}

impl Report {
    pub fn from_slice(big_n: usize, n: usize, rho: &Partition, model: &str, d: &Decomposition) -> Self {
        Report {
            big_n,
            n,
            rho: Some(rho.clone()),
            model: model.to_string(),
            entries: d
                .multiplicities
                .iter()
                .map(|(lambda, &mult)| Entry {
                    rho: None,
                    lambda: lambda.clone(),
                    mult,
                })
                .collect(),
        }
    }

    pub fn from_table(model: &str, table: &BiDecomposition) -> Self {
        Report {
            big_n: table.big_n,
            n: table.n,
            rho: None,
            model: model.to_string(),
            entries: table
                .multiplicities
                .iter()
                .map(|((rho, lambda), &mult)| Entry {
                    rho: Some(rho.clone()),
                    lambda: lambda.clone(),
                    mult,
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = write!(out, "N = {}, n = {}, model = {}", self.big_n, self.n, self.model);
        if let Some(rho) = &self.rho {
            let _ = write!(out, ", rho = {rho}");
        }
        out.push('\n');
        if self.entries.is_empty() {
            out.push_str("(empty)\n");
            return out;
        }
        let rho_text = |e: &Entry| e.rho.as_ref().or(self.rho.as_ref()).map(|r| r.to_string()).unwrap_or_default();
        let w_rho = self.entries.iter().map(|e| rho_text(e).len()).max().unwrap_or(0).max(3);
        let w_lambda = self.entries.iter().map(|e| e.lambda.to_string().len()).max().unwrap_or(0).max(6);
        let _ = writeln!(out, "{:<w_rho$}  {:<w_lambda$}  mult", "rho", "lambda");
        for e in &self.entries {
            let _ = writeln!(out, "{:<w_rho$}  {:<w_lambda$}  {}", rho_text(e), e.lambda.to_string(), e.mult);
        }
        out
    }
}

/// Runs a parsed command, writing the output to `out`.
pub fn execute(cli: &Cli, out: &mut String) -> Result<(), CliError> {
    if let Some(threads) = cli.threads {
        if threads == 0 {
            return Err(CliError::Usage("thread count must be positive".into()));
        }
        // A global pool can be installed once per process; later calls keep it.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    match &cli.command {
        Command::Decompose(args) => {
            let report = decompose_report(args)?;
            out.push_str(&match args.format {
                Format::Text => report.to_text(),
                Format::Json => report.to_json() + "\n",
            });
            Ok(())
        }
        Command::Verify(args) => run_suite(args.suite, args.max_n, &mut |line| {
            out.push_str(&line);
            out.push('\n');
        }),
    }
}

pub fn decompose_report(args: &DecomposeArgs) -> Result<Report, CliError> {
    let cap = args.max_n.unwrap_or_else(|| args.model.default_cap());
    if cap == 0 {
        return Err(CliError::Usage("cap must be positive".into()));
    }
    if args.big_n > cap {
        return Err(CliError::Usage(format!("size cap exceeded: N = {} > {cap}", args.big_n)));
    }
    if args.n == 0 {
        return Err(CliError::Usage("n must be positive".into()));
    }
    if let Some(rho) = &args.rho {
        if rho.size() != args.big_n {
            return Err(CliError::Usage(format!("{rho} is not a partition of {}", args.big_n)));
        }
    }
    let model = args.model;
    let slice = |rho: &Partition| -> Result<Decomposition, CliError> {
        if args.big_n < args.n {
            Ok(Decomposition::zero(args.n))
        } else {
            model.slice(rho, args.n)
        }
    };
    Ok(match &args.rho {
        Some(rho) => Report::from_slice(args.big_n, args.n, rho, model.name(), &slice(rho)?),
        None => {
            let mut table = BiDecomposition::zero(args.big_n, args.n);
            let slices: Vec<Result<(Partition, Decomposition), CliError>> = {
                use rayon::prelude::*;
                partitions_of(args.big_n)
                    .into_par_iter()
                    .map(|rho| slice(&rho).map(|d| (rho, d)))
                    .collect()
            };
            for s in slices {
                let (rho, d) = s?;
                table.insert_slice(&rho, &d);
            }
            Report::from_table(model.name(), &table)
        }
    })
}

fn check<T: PartialEq + std::fmt::Debug>(
    log: &mut dyn FnMut(String),
    label: String,
    got: T,
    expected: T,
) -> Result<(), CliError> {
    if got == expected {
        log(format!("ok   {label}"));
        Ok(())
    } else {
        log(format!("FAIL {label}"));
        Err(CliError::Verification(format!("{label}: got {got:?}, expected {expected:?}")))
    }
}

/// Runs one verification suite, logging one line per check and stopping at
/// the first mismatch.
pub fn run_suite(suite: Suite, max_n: Option<usize>, log: &mut dyn FnMut(String)) -> Result<(), CliError> {
    let bad = |e: &dyn std::fmt::Display| CliError::Usage(e.to_string());
    match suite {
        Suite::Calc => {
            let top = max_n.unwrap_or(6);
            for b in 1..=top {
                for a in 1..=b {
                    let brute = decompose_h0(a, b, Model::Injections).map_err(|e| bad(&e))?;
                    check(log, format!("injections a={a} b={b}"), brute, injection_homology_formula(a, b))?;
                }
            }
        }
        Suite::Beads => {
            let top = max_n.unwrap_or(6);
            for big_n in 1..=top {
                for n in big_n.div_ceil(2)..=big_n {
                    let brute = decompose_h0(big_n, n, Model::Beads).map_err(|e| bad(&e))?;
                    check(log, format!("beads N={big_n} n={n}"), brute, bead_homology_formula(big_n, n))?;
                }
            }
        }
        Suite::Main => {
            let top = max_n.unwrap_or(6);
            for big_n in 1..=top {
                for rho in partitions_of(big_n) {
                    for n in 1..=big_n {
                        let closed = general_isotypical(&rho, n).map_err(|e| bad(&e))?.decomposition;
                        check(log, format!("main rho={rho} n={n}"), closed, beads_slice(&rho, n, true))?;
                    }
                }
            }
        }
        Suite::Truncation => {
            let top = max_n.unwrap_or(DEFAULT_MAX_N_FREE);
            for big_n in 1..=top {
                let mut shapes = vec![Partition::column(big_n)];
                if big_n >= 3 {
                    shapes.extend(Partition::hook(2, big_n - 2));
                }
                for rho in shapes {
                    for n in 1..=big_n {
                        let c = truncation_comparison(&rho, n).map_err(|e| bad(&e))?;
                        check(log, format!("truncation rho={rho} n={n}"), c.free, c.truncated)?;
                    }
                }
            }
            let c = truncation_comparison(&Partition::from_parts(&[2, 2]), 2).map_err(|e| bad(&e))?;
            check(
                log,
                "truncation rho=[2,2] n=2 differs".to_string(),
                (c.free_mult(), c.truncated_mult()),
                (1, 0),
            )?;
        }
        Suite::Props => {
            let top = max_n.unwrap_or(5);
            for s in 1..=top {
                for t in 1..=s + 2 {
                    let triv = constant_input_values(s, t).map_err(|e| bad(&e))?;
                    check(log, format!("constant input s={s} t={t}"), induction_values(s, t, InductionInput::Trivial), triv)?;
                    let sgn = sign_input_values(s, t).map_err(|e| bad(&e))?;
                    check(log, format!("sign input s={s} t={t}"), induction_values(s, t, InductionInput::Sign), sgn)?;
                }
            }
        }
        Suite::All => {
            for s in [Suite::Calc, Suite::Beads, Suite::Main, Suite::Truncation, Suite::Props] {
                run_suite(s, max_n, log)?;
            }
        }
    }
    Ok(())
}
