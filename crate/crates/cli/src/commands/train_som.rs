//! `train-som`: one trained map (and U-matrix) per seed over a combined
//! normal-activity corpus.

use std::path::Path;

use anyhow::{Context, Result};
use immunesom_core::io;
use immunesom_core::signal::SIGNAL_DIM;
use immunesom_core::som::{train_map, SomParams};

use crate::manifest::RunManifest;
use crate::resolve_seed;

use super::ensure_out_dir;

pub fn run(
    corpus: &Path,
    out: &Path,
    params_path: Option<&Path>,
    maps: usize,
    seed: Option<u64>,
) -> Result<()> {
    anyhow::ensure!(maps >= 1, "--maps must be >= 1");
    let mut params = match params_path {
        Some(p) => io::read_som_params(p)?,
        None => SomParams::default(),
    };
    let seed = resolve_seed(seed, Some(params.rng_seed))?;
    for warning in params.warnings() {
        eprintln!("warning: {warning}");
    }
    ensure_out_dir(out)?;

    // The corpus sessions combine into one training set.
    let mut session_files: Vec<_> = std::fs::read_dir(corpus)
        .with_context(|| format!("read corpus dir {}", corpus.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| {
            p.file_name()
                .and_then(|n| n.to_str())
                .map(|n| n.starts_with("session_") && n.ends_with(".csv"))
                .unwrap_or(false)
        })
        .collect();
    session_files.sort();
    anyhow::ensure!(
        !session_files.is_empty(),
        "no session_*.csv files in {}",
        corpus.display()
    );

    let mut manifest = RunManifest::new("train-som", seed)
        .params_file(params_path)
        .runs(maps);
    let mut training: Vec<Vec<f64>> = Vec::new();
    for file in &session_files {
        manifest.inputs.push(file.display().to_string());
        let frames = io::read_frames_csv(file)?;
        training.extend(frames.iter().map(|f| f.to_vector().to_vec()));
    }

    for i in 0..maps {
        params.rng_seed = seed + i as u64;
        let map = train_map(&params, SIGNAL_DIM, &training)?;
        let map_path = out.join(format!("map_{i:02}.csv"));
        let umatrix_path = out.join(format!("umatrix_{i:02}.csv"));
        io::write_map_csv(&map_path, &map)?;
        io::write_umatrix_csv(&umatrix_path, &map)?;
        manifest.output(&map_path);
        manifest.output(&umatrix_path);
    }

    manifest.write(out)?;
    println!(
        "trained {} maps ({}x{}, {} epochs) on {} frames from {} sessions",
        maps,
        params.grid_rows,
        params.grid_cols,
        params.epoch_limit,
        training.len(),
        session_files.len()
    );
    Ok(())
}
