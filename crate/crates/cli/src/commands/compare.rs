//! `compare`: Mann-Whitney test between two segment series for one
//! process of interest.

use std::fmt::Write as _;
use std::path::Path;

use anyhow::Result;
use immunesom_core::analysis::{mann_whitney_u, Sidedness};
use immunesom_core::io;

use crate::manifest::RunManifest;

use super::ensure_out_dir;

/// Per-segment scores for one antigen type, in segment order.
fn scores_for(rows: &[io::SegmentRow], process: u32) -> Vec<f64> {
    let mut filtered: Vec<(usize, f64)> = rows
        .iter()
        .filter(|r| r.1 == process)
        .map(|r| (r.0, r.2))
        .collect();
    filtered.sort_by_key(|(index, _)| *index);
    filtered.into_iter().map(|(_, score)| score).collect()
}

pub fn run(
    series_a: &Path,
    series_b: &Path,
    process: u32,
    confidence: f64,
    out: Option<&Path>,
) -> Result<()> {
    anyhow::ensure!(
        (50.0..100.0).contains(&confidence),
        "--confidence must be a percentage in [50, 100)"
    );
    let rows_a = io::read_segments_csv(series_a)?;
    let rows_b = io::read_segments_csv(series_b)?;
    let a = scores_for(&rows_a, process);
    let b = scores_for(&rows_b, process);
    anyhow::ensure!(
        !a.is_empty(),
        "process {process} absent from {}",
        series_a.display()
    );
    anyhow::ensure!(
        !b.is_empty(),
        "process {process} absent from {}",
        series_b.display()
    );

    let one = mann_whitney_u(&a, &b, Sidedness::One)?;
    let two = mann_whitney_u(&a, &b, Sidedness::Two)?;
    let alpha = 1.0 - confidence / 100.0;
    let verdict = |p: f64| {
        if p < alpha {
            "significant difference"
        } else {
            "not significant"
        }
    };

    let mut report = String::new();
    writeln!(report, "mann-whitney rank test")?;
    writeln!(
        report,
        "  series a: {} (n1 = {})",
        series_a.display(),
        one.n1
    )?;
    writeln!(
        report,
        "  series b: {} (n2 = {})",
        series_b.display(),
        one.n2
    )?;
    writeln!(report, "  process of interest: {process}")?;
    writeln!(report, "  U (series a) = {:.1}", one.u_statistic)?;
    writeln!(report, "  confidence level: {confidence}%")?;
    writeln!(
        report,
        "  one-sided p = {:.6} -> {}",
        one.p_value,
        verdict(one.p_value)
    )?;
    writeln!(
        report,
        "  two-sided p = {:.6} -> {}",
        two.p_value,
        verdict(two.p_value)
    )?;
    print!("{report}");

    if let Some(out) = out {
        ensure_out_dir(out)?;
        let report_path = out.join("report.txt");
        std::fs::write(&report_path, &report)?;
        let mut manifest = RunManifest::new("compare", 0)
            .input(series_a)
            .input(series_b);
        manifest.output(&report_path);
        manifest.write(out)?;
    }
    Ok(())
}
