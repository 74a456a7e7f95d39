//! `baseline`: k-means over a session's normalized signals, no antigen.

use std::fmt::Write as _;
use std::path::Path;

use anyhow::Result;
use immunesom_core::analysis::kmeans_baseline;

use crate::manifest::RunManifest;
use crate::resolve_seed;

use super::{ensure_out_dir, load_session_frames};

pub fn run(session: &Path, k: usize, seed: Option<u64>, out: Option<&Path>) -> Result<()> {
    let seed = resolve_seed(seed, None)?;
    let (_, frames) = load_session_frames(session)?;
    let vectors: Vec<Vec<f64>> = frames.iter().map(|f| f.to_vector().to_vec()).collect();
    let result = kmeans_baseline(&vectors, k, seed)?;

    let mut report = String::new();
    writeln!(report, "k-means signals-only baseline")?;
    writeln!(report, "  session: {}", session.display())?;
    writeln!(
        report,
        "  k = {k}, seed = {seed}, iterations = {}",
        result.iterations
    )?;
    for (cluster, fraction) in result.fractions.iter().enumerate() {
        writeln!(report, "  cluster {cluster}: {:.4} of frames", fraction)?;
    }
    print!("{report}");

    if let Some(out) = out {
        ensure_out_dir(out)?;
        let assignments_path = out.join("assignments.csv");
        let mut csv = String::from("t,cluster\n");
        for (frame, cluster) in frames.iter().zip(&result.assignments) {
            writeln!(csv, "{},{}", frame.timestamp, cluster)?;
        }
        std::fs::write(&assignments_path, csv)?;
        let report_path = out.join("report.txt");
        std::fs::write(&report_path, &report)?;

        let mut manifest = RunManifest::new("baseline", seed).input(session.join("raw.csv"));
        manifest.output(&assignments_path);
        manifest.output(&report_path);
        manifest.write(out)?;
    }
    Ok(())
}
