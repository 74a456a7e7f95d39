pub mod baseline;
pub mod compare;
pub mod generate;
pub mod run_dca;
pub mod run_som;
pub mod train_som;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::Path;

use anyhow::{Context, Result};
use immunesom_core::analysis::{moving_average, ScoreKind, Segment, SegmentSeries};
use immunesom_core::signal::{NormalizedSignalFrame, RawSample, SignalPipeline};

pub fn ensure_out_dir(out: &Path) -> Result<()> {
    std::fs::create_dir_all(out).with_context(|| format!("create {}", out.display()))
}

/// Moving-average trendline per process over its per-segment scores,
/// written at the segment indices the process appears in.
pub fn write_trendline_csv(path: &Path, series: &SegmentSeries, window: usize) -> Result<()> {
    let types: BTreeSet<u32> = series
        .segments
        .iter()
        .flat_map(|s| s.scores.keys().copied())
        .collect();
    let mut csv = String::from("segment_index,antigen_type,score\n");
    for ty in types {
        let mut indices = Vec::new();
        let mut scores = Vec::new();
        for segment in &series.segments {
            if let Some(t) = segment.scores.get(&ty) {
                indices.push(segment.index);
                scores.push(t.score);
            }
        }
        for (index, value) in indices.iter().zip(moving_average(&scores, window)) {
            writeln!(csv, "{index},{ty},{value:.6}").expect("write to String");
        }
    }
    std::fs::write(path, csv).with_context(|| format!("write {}", path.display()))
}

/// Loads a session's raw telemetry and runs it through the normalizer.
pub fn load_session_frames(session: &Path) -> Result<(Vec<RawSample>, Vec<NormalizedSignalFrame>)> {
    let raw_path = session.join("raw.csv");
    let samples = immunesom_core::io::read_raw_csv(&raw_path)?;
    let frames = SignalPipeline::run(&samples)
        .with_context(|| format!("normalize {}", raw_path.display()))?;
    Ok((samples, frames))
}

/// Mean of several segment series (one per run or per map): per
/// (segment, type), the mean score over the series where the pair
/// exists, total presentation counts, and partial if any contributor
/// was partial.
pub fn mean_of_series(series: &[SegmentSeries]) -> SegmentSeries {
    let segment_size = series.first().map_or(0, |s| s.segment_size);
    let kind = series.first().map_or(ScoreKind::Mcav, |s| s.kind);
    let max_segments = series.iter().map(|s| s.segments.len()).max().unwrap_or(0);

    let mut segments = Vec::with_capacity(max_segments);
    for index in 0..max_segments {
        let mut sums: BTreeMap<u32, (f64, u64, u64)> = BTreeMap::new();
        let mut partial = false;
        for s in series {
            let Some(segment) = s.segments.get(index) else {
                continue;
            };
            partial |= segment.partial;
            for (&ty, score) in &segment.scores {
                let e = sums.entry(ty).or_insert((0.0, 0, 0));
                e.0 += score.score;
                e.1 += 1;
                e.2 += score.count;
            }
        }
        segments.push(Segment {
            index,
            scores: sums
                .into_iter()
                .map(|(ty, (sum, contributors, count))| {
                    (
                        ty,
                        immunesom_core::analysis::TypeScore {
                            score: sum / contributors as f64,
                            count,
                        },
                    )
                })
                .collect(),
            partial,
        });
    }
    SegmentSeries {
        segment_size,
        kind,
        segments,
    }
}
