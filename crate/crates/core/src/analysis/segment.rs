//! Antigen segments: fixed-count blocks of detector output scored per
//! antigen type.

use std::collections::{BTreeMap, HashMap};

use crate::dca::{AntigenEvent, PresentedAntigenRecord};
use crate::signal::{NormalizedSignalFrame, SIGNAL_DIM};
use crate::som::{classify_frame, SomMap};

use super::AnalysisError;

/// Which detector a segment series came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScoreKind {
    Mcav,
    Mbmu,
}

/// Per-type score within one segment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TypeScore {
    /// MCAV or MBMU, in [0, 1].
    pub score: f64,
    /// Items of this type in the segment.
    pub count: u64,
}

/// One block of z consecutive detector outputs. Types absent from the
/// block are absent from the map.
#[derive(Debug, Clone, PartialEq)]
pub struct Segment {
    pub index: usize,
    pub scores: BTreeMap<u32, TypeScore>,
    /// Set on a trailing segment shorter than z.
    pub partial: bool,
}

/// An ordered partition of a detector's output into blocks of z items.
#[derive(Debug, Clone, PartialEq)]
pub struct SegmentSeries {
    pub segment_size: usize,
    pub kind: ScoreKind,
    pub segments: Vec<Segment>,
}

impl SegmentSeries {
    /// Per-segment score trace for one antigen type, in segment order,
    /// skipping segments the type is absent from.
    pub fn scores_for(&self, antigen_type: u32) -> Vec<f64> {
        self.segments
            .iter()
            .filter_map(|s| s.scores.get(&antigen_type).map(|t| t.score))
            .collect()
    }
}

/// Default MCAV level above which a process reads as anomalous, chosen to
/// reflect the scan's share of the input antigen.
pub const DEFAULT_MCAV_ANOMALY_THRESHOLD: f64 = 0.5;

/// Binary verdict over an MCAV/MBMU score, strict at the threshold.
pub fn score_verdict(score: f64, threshold: f64) -> bool {
    score > threshold
}

/// Whole-run MCAV for one antigen type: mature-context presentations over
/// all presentations. `None` when the type was never presented.
pub fn compute_mcav(records: &[PresentedAntigenRecord], antigen_type: u32) -> Option<f64> {
    let mut total = 0u64;
    let mut mature = 0u64;
    for r in records {
        if r.antigen_type == antigen_type {
            total += 1;
            mature += r.context as u64;
        }
    }
    if total == 0 {
        None
    } else {
        Some(mature as f64 / total as f64)
    }
}

/// Cuts the presented-antigen log into consecutive blocks of `z` records
/// and computes the per-type MCAV inside each block.
pub fn segment_stream(
    records: &[PresentedAntigenRecord],
    z: usize,
) -> Result<SegmentSeries, AnalysisError> {
    if z == 0 {
        return Err(AnalysisError::ZeroSegmentSize);
    }
    let segments = records
        .chunks(z)
        .enumerate()
        .map(|(index, chunk)| {
            let mut totals: BTreeMap<u32, (u64, u64)> = BTreeMap::new();
            for r in chunk {
                let e = totals.entry(r.antigen_type).or_insert((0, 0));
                e.0 += 1;
                e.1 += r.context as u64;
            }
            Segment {
                index,
                scores: totals
                    .into_iter()
                    .map(|(ty, (count, mature))| {
                        (
                            ty,
                            TypeScore {
                                score: mature as f64 / count as f64,
                                count,
                            },
                        )
                    })
                    .collect(),
                partial: chunk.len() < z,
            }
        })
        .collect();
    Ok(SegmentSeries {
        segment_size: z,
        kind: ScoreKind::Mcav,
        segments,
    })
}

/// One antigen event paired with the signal frame of its second.
#[derive(Debug, Clone, PartialEq)]
pub struct Coupling {
    pub antigen_type: u32,
    pub frame: NormalizedSignalFrame,
}

/// Couplings plus the count of events dropped for want of a frame.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingResult {
    pub couplings: Vec<Coupling>,
    pub dropped: u64,
}

/// Pairs each antigen event with the frame sharing its timestamp. Events
/// in seconds with no frame are dropped and counted.
pub fn couple_antigen_signals(
    events: &[AntigenEvent],
    frames: &[NormalizedSignalFrame],
) -> CouplingResult {
    let by_second: BTreeMap<u64, &NormalizedSignalFrame> =
        frames.iter().map(|f| (f.timestamp, f)).collect();
    let mut couplings = Vec::with_capacity(events.len());
    let mut dropped = 0u64;
    for e in events {
        match by_second.get(&e.timestamp) {
            Some(frame) => couplings.push(Coupling {
                antigen_type: e.antigen_type,
                frame: (*frame).clone(),
            }),
            None => dropped += 1,
        }
    }
    CouplingResult { couplings, dropped }
}

/// Classifies every coupling against the map, cuts the stream into blocks
/// of `z` couplings, and takes the per-type mean of the binary verdicts
/// inside each block.
pub fn compute_mbmu(
    couplings: &[Coupling],
    map: &SomMap,
    threshold: f64,
    z: usize,
) -> Result<SegmentSeries, AnalysisError> {
    if z == 0 {
        return Err(AnalysisError::ZeroSegmentSize);
    }
    if !map.is_trained() {
        return Err(AnalysisError::UntrainedMap);
    }
    // Couplings in the same second share one frame, so the verdict is
    // memoized on the exact frame bits rather than recomputed per event.
    let mut cache: HashMap<[u64; SIGNAL_DIM], u8> = HashMap::new();
    let mut verdicts: Vec<u8> = Vec::with_capacity(couplings.len());
    for c in couplings {
        let vector = c.frame.to_vector();
        let key = vector.map(f64::to_bits);
        let verdict = match cache.get(&key) {
            Some(&v) => v,
            None => {
                let v = classify_frame(map, &vector, threshold)?;
                cache.insert(key, v);
                v
            }
        };
        verdicts.push(verdict);
    }

    let segments = couplings
        .chunks(z)
        .zip(verdicts.chunks(z))
        .enumerate()
        .map(|(index, (chunk, votes))| {
            let mut totals: BTreeMap<u32, (u64, u64)> = BTreeMap::new();
            for (c, v) in chunk.iter().zip(votes) {
                let e = totals.entry(c.antigen_type).or_insert((0, 0));
                e.0 += 1;
                e.1 += *v as u64;
            }
            Segment {
                index,
                scores: totals
                    .into_iter()
                    .map(|(ty, (count, anomalous))| {
                        (
                            ty,
                            TypeScore {
                                score: anomalous as f64 / count as f64,
                                count,
                            },
                        )
                    })
                    .collect(),
                partial: chunk.len() < z,
            }
        })
        .collect();
    Ok(SegmentSeries {
        segment_size: z,
        kind: ScoreKind::Mbmu,
        segments,
    })
}

/// Trailing moving average: each output point is the mean of the last
/// `window` inputs (fewer at the head). Output length equals input length.
pub fn moving_average(series: &[f64], window: usize) -> Vec<f64> {
    assert!(window >= 1, "window must be >= 1");
    let mut out = Vec::with_capacity(series.len());
    let mut sum = 0.0;
    for (i, v) in series.iter().enumerate() {
        sum += v;
        if i >= window {
            sum -= series[i - window];
        }
        out.push(sum / window.min(i + 1) as f64);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(ty: u32, context: u8, cycle: u64) -> PresentedAntigenRecord {
        PresentedAntigenRecord {
            antigen_type: ty,
            context,
            presenting_cell_outputs: (0.0, 0.0),
            migration_cycle: cycle,
            forced: false,
        }
    }

    fn frame_at(t: u64, level: f64) -> NormalizedSignalFrame {
        NormalizedSignalFrame {
            timestamp: t,
            pamp1: level,
            pamp2: level,
            ds1: level,
            ds2: level,
            ss1: level,
            ss2: level,
            inflammation: 0,
        }
    }

    #[test]
    fn verdict_threshold_is_strict() {
        assert!(!score_verdict(0.5, DEFAULT_MCAV_ANOMALY_THRESHOLD));
        assert!(score_verdict(0.51, DEFAULT_MCAV_ANOMALY_THRESHOLD));
        assert!(!score_verdict(0.49, DEFAULT_MCAV_ANOMALY_THRESHOLD));
    }

    #[test]
    fn mcav_direct_ratio() {
        let mut records = Vec::new();
        for i in 0..10 {
            records.push(rec(1, (i < 5) as u8, i));
        }
        assert_eq!(compute_mcav(&records, 1), Some(0.5));
    }

    #[test]
    fn mcav_zero_mature() {
        let records: Vec<_> = (0..7).map(|i| rec(2, 0, i)).collect();
        assert_eq!(compute_mcav(&records, 2), Some(0.0));
    }

    #[test]
    fn mcav_absent_type_is_none_not_zero() {
        let records = vec![rec(1, 1, 0)];
        assert_eq!(compute_mcav(&records, 99), None);
    }

    #[test]
    fn segment_partition_arithmetic() {
        let records: Vec<_> = (0..250).map(|i| rec(1, 0, i)).collect();
        let series = segment_stream(&records, 100).unwrap();
        assert_eq!(series.segments.len(), 3);
        let counts: Vec<u64> = series.segments.iter().map(|s| s.scores[&1].count).collect();
        assert_eq!(counts, vec![100, 100, 50]);
        assert!(!series.segments[0].partial);
        assert!(!series.segments[1].partial);
        assert!(series.segments[2].partial);
    }

    #[test]
    fn oversized_z_gives_whole_run_mcav() {
        let records: Vec<_> = (0..40).map(|i| rec(3, (i % 4 == 0) as u8, i)).collect();
        let series = segment_stream(&records, 1_000).unwrap();
        assert_eq!(series.segments.len(), 1);
        let whole = compute_mcav(&records, 3).unwrap();
        assert_eq!(series.segments[0].scores[&3].score, whole);
    }

    #[test]
    fn absent_types_are_absent_from_segment_maps() {
        let mut records: Vec<_> = (0..100).map(|i| rec(1, 0, i)).collect();
        records.extend((0..100).map(|i| rec(2, 1, 100 + i)));
        let series = segment_stream(&records, 100).unwrap();
        assert!(!series.segments[0].scores.contains_key(&2));
        assert!(!series.segments[1].scores.contains_key(&1));
    }

    #[test]
    fn segment_counts_partition_whole_run_counts() {
        let records: Vec<_> = (0..537)
            .map(|i| rec((i % 3) as u32, (i % 5 == 0) as u8, i))
            .collect();
        let series = segment_stream(&records, 64).unwrap();
        for ty in 0..3u32 {
            let whole = records.iter().filter(|r| r.antigen_type == ty).count() as u64;
            let summed: u64 = series
                .segments
                .iter()
                .filter_map(|s| s.scores.get(&ty).map(|t| t.count))
                .sum();
            assert_eq!(summed, whole);
        }
    }

    #[test]
    fn whole_run_mcav_is_count_weighted_segment_mean() {
        let records: Vec<_> = (0..537)
            .map(|i| rec((i % 3) as u32, (i % 7 < 3) as u8, i))
            .collect();
        let series = segment_stream(&records, 50).unwrap();
        for ty in 0..3u32 {
            let whole = compute_mcav(&records, ty).unwrap();
            let (mut num, mut den) = (0.0, 0.0);
            for s in &series.segments {
                if let Some(t) = s.scores.get(&ty) {
                    num += t.score * t.count as f64;
                    den += t.count as f64;
                }
            }
            assert!((whole - num / den).abs() < 1e-12);
        }
    }

    #[test]
    fn coupling_shares_one_frame_across_same_second_events() {
        let frames = vec![frame_at(5, 10.0)];
        let events: Vec<_> = (0..3)
            .map(|i| AntigenEvent {
                timestamp: 5,
                antigen_type: 100 + i,
            })
            .collect();
        let result = couple_antigen_signals(&events, &frames);
        assert_eq!(result.couplings.len(), 3);
        assert_eq!(result.dropped, 0);
        assert!(result.couplings.iter().all(|c| c.frame.timestamp == 5));
    }

    #[test]
    fn frameless_events_are_dropped_and_counted() {
        let frames = vec![frame_at(1, 0.0)];
        let events = vec![
            AntigenEvent {
                timestamp: 1,
                antigen_type: 1,
            },
            AntigenEvent {
                timestamp: 2,
                antigen_type: 1,
            },
        ];
        let result = couple_antigen_signals(&events, &frames);
        assert_eq!(result.couplings.len(), 1);
        assert_eq!(result.dropped, 1);
        assert!(result.couplings.len() <= events.len());
    }

    #[test]
    fn mbmu_all_beyond_threshold_scores_one() {
        let map = SomMap::from_weights(1, 1, vec![vec![0.0; 7]], 1).unwrap();
        let couplings: Vec<Coupling> = (0..6)
            .map(|i| Coupling {
                antigen_type: i % 2,
                frame: frame_at(i as u64, 90.0),
            })
            .collect();
        let series = compute_mbmu(&couplings, &map, 65.0, 3).unwrap();
        for s in &series.segments {
            for t in s.scores.values() {
                assert_eq!(t.score, 1.0);
            }
        }
    }

    #[test]
    fn mbmu_single_normal_appearance_scores_zero() {
        let map = SomMap::from_weights(1, 1, vec![vec![0.0; 7]], 1).unwrap();
        let mut couplings: Vec<Coupling> = (0..4)
            .map(|i| Coupling {
                antigen_type: 1,
                frame: frame_at(i as u64, 90.0),
            })
            .collect();
        couplings.push(Coupling {
            antigen_type: 7,
            frame: frame_at(4, 0.0), // distance 0: normal
        });
        let series = compute_mbmu(&couplings, &map, 65.0, 5).unwrap();
        assert_eq!(series.segments[0].scores[&7].score, 0.0);
        assert_eq!(series.segments[0].scores[&7].count, 1);
    }

    #[test]
    fn mbmu_rejects_untrained_map() {
        let map = SomMap::from_weights(1, 1, vec![vec![0.0; 7]], 0).unwrap();
        assert_eq!(
            compute_mbmu(&[], &map, 65.0, 10).unwrap_err(),
            AnalysisError::UntrainedMap
        );
    }

    #[test]
    fn equal_length_streams_make_equal_segment_counts() {
        // 18 couplings at z=18 vs 1 record-per-coupling DCA log at z=1:
        // the SOM-side z is chosen so both series have the same number of
        // segments; verified here at a small scale.
        let map = SomMap::from_weights(1, 1, vec![vec![0.0; 7]], 1).unwrap();
        let couplings: Vec<Coupling> = (0..180)
            .map(|i| Coupling {
                antigen_type: 1,
                frame: frame_at(i as u64, 50.0),
            })
            .collect();
        let records: Vec<_> = (0..10).map(|i| rec(1, 0, i)).collect();
        let mbmu = compute_mbmu(&couplings, &map, 65.0, 18).unwrap();
        let mcav = segment_stream(&records, 1).unwrap();
        assert_eq!(mbmu.segments.len(), mcav.segments.len());
    }

    #[test]
    fn moving_average_golden() {
        assert_eq!(
            moving_average(&[0.0, 1.0, 0.0, 1.0], 2),
            vec![0.0, 0.5, 0.5, 0.5]
        );
    }

    #[test]
    fn moving_average_constant_and_identity() {
        assert_eq!(moving_average(&[3.0; 5], 4), vec![3.0; 5]);
        let xs = [1.0, 4.0, 2.0, 8.0];
        assert_eq!(moving_average(&xs, 1), xs.to_vec());
    }

    #[test]
    fn moving_average_preserves_length() {
        for n in [0usize, 1, 7, 50] {
            let xs: Vec<f64> = (0..n).map(|i| i as f64).collect();
            assert_eq!(moving_average(&xs, 50).len(), n);
        }
    }
}
