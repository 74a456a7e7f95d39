//! `run-som`: classify antigen/signal couplings against trained maps and
//! write mean-of-maps MBMU segment series.

use std::path::Path;

use anyhow::{Context, Result};
use immunesom_core::analysis::{compute_mbmu, couple_antigen_signals, SegmentSeries};
use immunesom_core::io;
use immunesom_core::som::SomParams;

use crate::manifest::RunManifest;
use crate::resolve_seed;

use super::{ensure_out_dir, load_session_frames, mean_of_series};

pub fn run(
    session: &Path,
    maps_dir: &Path,
    out: &Path,
    params_path: Option<&Path>,
    z_values: &[usize],
    seed: Option<u64>,
    trendline: Option<usize>,
) -> Result<()> {
    let params = match params_path {
        Some(p) => io::read_som_params(p)?,
        None => SomParams::default(),
    };
    let seed = resolve_seed(seed, Some(params.rng_seed))?;
    ensure_out_dir(out)?;

    let mut map_files: Vec<_> = std::fs::read_dir(maps_dir)
        .with_context(|| format!("read maps dir {}", maps_dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| {
            p.file_name()
                .and_then(|n| n.to_str())
                .map(|n| n.starts_with("map_") && n.ends_with(".csv"))
                .unwrap_or(false)
        })
        .collect();
    map_files.sort();
    anyhow::ensure!(
        !map_files.is_empty(),
        "no map_*.csv files in {}",
        maps_dir.display()
    );

    let antigen_path = session.join("antigen.csv");
    let (_, frames) = load_session_frames(session)?;
    let events = io::read_antigen_csv(&antigen_path)?;
    let coupling = couple_antigen_signals(&events, &frames);
    if coupling.dropped > 0 {
        eprintln!(
            "warning: dropped {} antigen events with no frame at their second",
            coupling.dropped
        );
    }

    let mut manifest = RunManifest::new("run-som", seed)
        .input(session.join("raw.csv"))
        .input(&antigen_path)
        .params_file(params_path)
        .z_values(z_values)
        .runs(map_files.len());
    for f in &map_files {
        manifest.inputs.push(f.display().to_string());
    }

    let maps = map_files
        .iter()
        .map(|f| io::read_map_csv(f))
        .collect::<Result<Vec<_>, _>>()?;

    for &z in z_values {
        let series: Vec<SegmentSeries> = maps
            .iter()
            .map(|map| compute_mbmu(&coupling.couplings, map, params.anomaly_threshold, z))
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
        "classified {} couplings against {} maps (threshold {}); series at z = {:?}",
        coupling.couplings.len(),
        maps.len(),
        params.anomaly_threshold,
        z_values
    );
    Ok(())
}
