//! Command-line front end for the `colordist` oracles.

pub mod io;
pub mod report;
pub mod sweep;

use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use colordist::hst::RecolorableOracle;
use colordist::hst::Variant;
use colordist::path::Mode;
use colordist::static_oracle::StaticOracle;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Parser)]
#[command(name = "colordist", version, about = "Nearest colored node oracles")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OracleKind {
    Static,
    DynFastquery,
    DynFastupdate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Fast,
    Exact,
}

#[derive(Debug, Clone, Args)]
pub struct OracleArgs {
    /// Number of levels (static) or cover parameter (dynamic).
    #[arg(long, default_value_t = 3)]
    pub k: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = OracleKind::Static)]
    pub variant: OracleKind,
    /// Cover distortion for the dynamic variants [default: 128·k].
    #[arg(long)]
    pub distortion: Option<f64>,
}

impl OracleArgs {
    fn distortion(&self) -> f64 {
        self.distortion.unwrap_or(128.0 * self.k as f64)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compare oracle answers against exact distances and write a CSV report.
    Verify {
        input: PathBuf,
        /// `q`/`r` workload; without it every (v, c) is queried.
        workload: Option<PathBuf>,
        #[command(flatten)]
        oracle: OracleArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Iterations and latency of the bisection query against the level walk.
    Bench {
        input: PathBuf,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Answer a single query.
    Query {
        input: PathBuf,
        v: usize,
        c: u32,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Write a random connected instance.
    Gen {
        #[arg(long, default_value_t = 100)]
        n: usize,
        #[arg(long, default_value_t = 8)]
        sigma: u32,
        #[arg(long, default_value_t = 10)]
        max_weight: u64,
        /// Edges added on top of a spanning tree.
        #[arg(long, default_value_t = 100)]
        extra: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the path exactifier on every (position, color).
    PathVerify {
        /// Whitespace-separated color ids; random when omitted.
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 4)]
        base: u64,
        #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
        mode: ModeArg,
        #[arg(long, default_value_t = colordist::path::DEFAULT_WINDOW)]
        window: u32,
        #[arg(long, default_value_t = 256)]
        n: usize,
        #[arg(long, default_value_t = 8)]
        sigma: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the matrix gadget against the direct boolean product.
    GadgetVerify {
        #[arg(long, default_value_t = 4)]
        n1: usize,
        #[arg(long, default_value_t = 4)]
        n2: usize,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn emit(out: Option<&PathBuf>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn dyn_variant(kind: OracleKind) -> Option<Variant> {
    match kind {
        OracleKind::Static => None,
        OracleKind::DynFastquery => Some(Variant::FastQuery),
        OracleKind::DynFastupdate => Some(Variant::FastUpdate),
    }
}

/// Runs a command; `Ok(false)` means a check failed.
pub fn run(cli: Cli) -> anyhow::Result<bool> {
    match cli.command {
        Command::Verify {
            input,
            workload,
            oracle,
            out,
        } => {
            let (g, col) =
                io::load_graph(&input).with_context(|| format!("loading {}", input.display()))?;
            let report = match dyn_variant(oracle.variant) {
                None => {
                    if workload.is_some() {
                        bail!("workloads apply to the dynamic variants only");
                    }
                    report::verify_static(&g, &col, oracle.k, oracle.seed)?
                }
                Some(variant) => {
                    let ops = workload
                        .as_deref()
                        .map(io::load_workload)
                        .transpose()
                        .context("loading workload")?;
                    report::verify_dynamic(
                        &g,
                        &col,
                        oracle.k,
                        oracle.distortion(),
                        variant,
                        oracle.seed,
                        ops.as_deref(),
                    )?
                }
            };
            emit(out.as_ref(), &report.to_csv())?;
            Ok(report.pass)
        }
        Command::Bench {
            input,
            k,
            seed,
            out,
        } => {
            let (g, col) =
                io::load_graph(&input).with_context(|| format!("loading {}", input.display()))?;
            let report = report::bench_static(&g, &col, k, seed)?;
            emit(out.as_ref(), &report.to_csv())?;
            Ok(report.pass)
        }
        Command::Query {
            input,
            v,
            c,
            oracle,
        } => {
            let (g, col) =
                io::load_graph(&input).with_context(|| format!("loading {}", input.display()))?;
            let line = match dyn_variant(oracle.variant) {
                None => {
                    let a = StaticOracle::build(&g, &col, oracle.k, oracle.seed)?.query(v, c)?;
                    format!(
                        "estimate={} witness={} iterations={}",
                        a.estimate, a.witness_pivot, a.iterations
                    )
                }
                Some(variant) => {
                    let o = RecolorableOracle::build(
                        &g,
                        &col,
                        oracle.k,
                        oracle.distortion(),
                        variant,
                        oracle.seed,
                    )?;
                    let a = o.query(v, c)?;
                    format!(
                        "estimate={} witness={} tree={}",
                        a.estimate, a.witness, a.tree
                    )
                }
            };
            println!("{line}");
            Ok(true)
        }
        Command::Gen {
            n,
            sigma,
            max_weight,
            extra,
            seed,
            out,
        } => {
            if n == 0 || sigma == 0 || max_weight == 0 {
                bail!("n, sigma and max-weight must be positive");
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (g, col) = colordist::gen::random_instance(&mut rng, n, sigma, max_weight, extra);
            emit(out.as_ref(), &io::format_graph(&g, &col))?;
            Ok(true)
        }
        Command::PathVerify {
            input,
            base,
            mode,
            window,
            n,
            sigma,
            seed,
            out,
        } => {
            let colors = match input {
                Some(path) => io::parse_sequence(&std::fs::read_to_string(&path)?)?,
                None => {
                    if sigma == 0 {
                        bail!("sigma must be positive");
                    }
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    colordist::gen::random_coloring(&mut rng, n, sigma)
                        .colors()
                        .to_vec()
                }
            };
            let mode = match mode {
                ModeArg::Exact => Mode::Exact,
                ModeArg::Fast => Mode::Fast { window },
            };
            let report = sweep::verify_path(&colors, base, mode)?;
            emit(out.as_ref(), &report.to_csv())?;
            Ok(report.pass)
        }
        Command::GadgetVerify {
            n1,
            n2,
            trials,
            seed,
            out,
        } => {
            let report = sweep::verify_gadget(n1, n2, trials, seed)?;
            emit(out.as_ref(), &report.to_csv())?;
            Ok(report.pass)
        }
    }
}
