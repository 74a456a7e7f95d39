//! `run-dca`: seeded replays plus mean-of-runs MCAV segment series.

use std::fmt::Write as _;
use std::path::Path;

use anyhow::{Context, Result};
use immunesom_core::analysis::{segment_stream, SegmentSeries};
use immunesom_core::dca::{run_session, DcaParams, PresentedAntigenRecord, WeightMatrix};
use immunesom_core::io;

use crate::manifest::RunManifest;
use crate::resolve_seed;

use super::{ensure_out_dir, load_session_frames, mean_of_series};

#[allow(clippy::too_many_arguments)]
pub fn run(
    session: &Path,
    out: &Path,
    params_path: Option<&Path>,
    runs: usize,
    z_values: &[usize],
    seed: Option<u64>,
    exclude_forced: bool,
    trendline: Option<usize>,
) -> Result<()> {
    anyhow::ensure!(runs >= 1, "--runs must be >= 1");
    let mut params = match params_path {
        Some(p) => io::read_dca_params(p)?,
        None => DcaParams::default(),
    };
    let seed = resolve_seed(seed, Some(params.rng_seed))?;
    ensure_out_dir(out)?;

    let antigen_path = session.join("antigen.csv");
    let (_, frames) = load_session_frames(session)?;
    let events = io::read_antigen_csv(&antigen_path)?;

    let mut manifest = RunManifest::new("run-dca", seed)
        .input(session.join("raw.csv"))
        .input(&antigen_path)
        .params_file(params_path)
        .z_values(z_values)
        .runs(runs);

    let frames_path = out.join("frames.csv");
    io::write_frames_csv(&frames_path, &frames)?;
    manifest.output(&frames_path);

    let weights = WeightMatrix::default();
    let mut per_run_records: Vec<Vec<PresentedAntigenRecord>> = Vec::with_capacity(runs);
    let mut stats_csv = String::from("run,ingested,presented,evicted,reconciled\n");
    for run in 0..runs {
        params.rng_seed = seed + run as u64;
        let result = run_session(&frames, &events, &params, &weights)
            .with_context(|| format!("replay run {run}"))?;
        let log_path = out.join(format!("run_{run:02}.csv"));
        io::write_presented_csv(&log_path, &result.records)?;
        manifest.output(&log_path);
        let totals = result.stats.totals();
        writeln!(
            stats_csv,
            "{run},{},{},{},{}",
            totals.ingested,
            totals.presented,
            totals.evicted,
            result.stats.is_reconciled() as u8
        )
        .expect("write to String");
        per_run_records.push(result.records);
    }
    let stats_path = out.join("run_stats.csv");
    std::fs::write(&stats_path, stats_csv)
        .with_context(|| format!("write {}", stats_path.display()))?;
    manifest.output(&stats_path);

    for &z in z_values {
        let series: Vec<SegmentSeries> = per_run_records
            .iter()
            .map(|records| {
                let filtered: Vec<PresentedAntigenRecord> = if exclude_forced {
                    records.iter().filter(|r| !r.forced).cloned().collect()
                } else {
                    records.clone()
                };
                segment_stream(&filtered, z)
            })
            .collect::<Result<_, _>>()?;
        let mean = mean_of_series(&series);
        let path = out.join(format!("segments_z{z}.csv"));
        io::write_segments_csv(&path, &mean)?;
        manifest.output(&path);
        if let Some(window) = trendline {
            let trend_path = out.join(format!("trendline_z{z}.csv"));
            super::write_trendline_csv(&trend_path, &mean, window)?;
            manifest.output(&trend_path);
        }
    }

    manifest.write(out)?;
    println!(
        "ran {} replays over {} frames / {} events; segment series at z = {:?}",
        runs,
        frames.len(),
        events.len(),
        z_values
    );
    Ok(())
}
