//! Reproduction front end: generation, replay, training, detection,
//! segmentation, and statistical comparison from one binary.

mod commands;
mod manifest;

use std::path::PathBuf;

use anyhow::Result;
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "immunesom",
    version,
    about = "Dendritic cell algorithm vs self-organizing map on SYN-scan telemetry",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Scenario {
    /// SYN scan with only its shell and the carrying ssh session.
    Pn,
    /// SYN scan beside an actively used browser.
    An,
    /// Normal-only frame corpus for map training.
    Training,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a synthetic session (raw, antigen, labels CSVs) or a
    /// normal-only training corpus.
    Generate {
        #[arg(long, value_enum)]
        scenario: Scenario,
        #[arg(long)]
        out: PathBuf,
        /// Session length in seconds.
        #[arg(long, default_value_t = 7_000)]
        duration: u64,
        /// Training sessions to emit (training scenario only).
        #[arg(long, default_value_t = 10)]
        sessions: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Replay a session through the cell population; write per-run
    /// presented-antigen logs and mean-of-runs MCAV segment series.
    RunDca {
        /// Directory holding raw.csv and antigen.csv.
        #[arg(long)]
        session: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// key=value DCA params file.
        #[arg(long)]
        params: Option<PathBuf>,
        #[arg(long, default_value_t = 10)]
        runs: usize,
        /// Antigen segment sizes, comma separated.
        #[arg(long, value_delimiter = ',', default_values_t = vec![100, 1_000, 10_000, 100_000, 1_000_000])]
        z: Vec<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Drop end-of-run forced presentations from the analysis.
        #[arg(long, default_value_t = false)]
        exclude_forced: bool,
        /// Also write per-process moving-average trendlines over this
        /// many segments.
        #[arg(long)]
        trendline: Option<usize>,
    },
    /// Train maps on a normal-only corpus; one map file per seed.
    TrainSom {
        /// Directory of training frame CSVs (session_*.csv).
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// key=value SOM params file.
        #[arg(long)]
        params: Option<PathBuf>,
        #[arg(long, default_value_t = 10)]
        maps: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Couple antigen with frames, classify against trained maps, and
    /// write mean-of-maps MBMU segment series.
    RunSom {
        /// Directory holding raw.csv and antigen.csv.
        #[arg(long)]
        session: PathBuf,
        /// Directory of trained map CSVs (map_*.csv).
        #[arg(long)]
        maps: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// key=value SOM params file (threshold etc.).
        #[arg(long)]
        params: Option<PathBuf>,
        /// Coupling segment sizes, comma separated.
        #[arg(long, value_delimiter = ',', default_values_t = vec![1_800, 18_000, 180_000, 1_800_000])]
        z: Vec<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Also write per-process moving-average trendlines over this
        /// many segments.
        #[arg(long)]
        trendline: Option<usize>,
    },
    /// Mann-Whitney comparison of two segment series for one process.
    Compare {
        /// First segment CSV (e.g. a DCA series).
        #[arg(long)]
        series_a: PathBuf,
        /// Second segment CSV (e.g. a SOM series).
        #[arg(long)]
        series_b: PathBuf,
        /// Process ID (antigen type) to compare.
        #[arg(long)]
        process: u32,
        /// Confidence level, percent.
        #[arg(long, default_value_t = 99.0)]
        confidence: f64,
        /// Optional directory for report.txt + manifest.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Signals-only k-means baseline over a session's normalized frames.
    Baseline {
        /// Directory holding raw.csv.
        #[arg(long)]
        session: PathBuf,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long)]
        seed: Option<u64>,
        /// Optional directory for assignments.csv + report.txt + manifest.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Seed precedence: --seed, then IMMUNESOM_SEED, then the params file,
/// then 0.
fn resolve_seed(flag: Option<u64>, params_seed: Option<u64>) -> Result<u64> {
    if let Some(seed) = flag {
        return Ok(seed);
    }
    if let Ok(raw) = std::env::var("IMMUNESOM_SEED") {
        let parsed = raw
            .parse::<u64>()
            .map_err(|_| anyhow::anyhow!("IMMUNESOM_SEED is not a u64: `{raw}`"))?;
        return Ok(parsed);
    }
    Ok(params_seed.unwrap_or(0))
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    match cli.command {
        Command::Generate {
            scenario,
            out,
            duration,
            sessions,
            seed,
        } => commands::generate::run(scenario, &out, duration, sessions, seed),
        Command::RunDca {
            session,
            out,
            params,
            runs,
            z,
            seed,
            exclude_forced,
            trendline,
        } => commands::run_dca::run(
            &session,
            &out,
            params.as_deref(),
            runs,
            &z,
            seed,
            exclude_forced,
            trendline,
        ),
        Command::TrainSom {
            corpus,
            out,
            params,
            maps,
            seed,
        } => commands::train_som::run(&corpus, &out, params.as_deref(), maps, seed),
        Command::RunSom {
            session,
            maps,
            out,
            params,
            z,
            seed,
            trendline,
        } => commands::run_som::run(
            &session,
            &maps,
            &out,
            params.as_deref(),
            &z,
            seed,
            trendline,
        ),
        Command::Compare {
            series_a,
            series_b,
            process,
            confidence,
            out,
        } => commands::compare::run(&series_a, &series_b, process, confidence, out.as_deref()),
        Command::Baseline {
            session,
            k,
            seed,
            out,
        } => commands::baseline::run(&session, k, seed, out.as_deref()),
    }
}
