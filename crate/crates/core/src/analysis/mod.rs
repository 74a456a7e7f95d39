//! Post-run analysis: antigen segmentation (MCAV/MBMU), trendlines,
//! rank-sum hypothesis testing, and the signals-only k-means baseline.

mod kmeans;
mod mwu;
mod segment;

pub use kmeans::{kmeans_baseline, KmeansResult};
pub use mwu::{mann_whitney_u, RankTestResult, Sidedness};
pub use segment::{
    compute_mbmu, compute_mcav, couple_antigen_signals, moving_average, score_verdict,
    segment_stream, Coupling, CouplingResult, ScoreKind, Segment, SegmentSeries, TypeScore,
    DEFAULT_MCAV_ANOMALY_THRESHOLD,
};

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum AnalysisError {
    #[error("segment size must be >= 1")]
    ZeroSegmentSize,
    #[error("sample {which} is empty")]
    EmptySample { which: &'static str },
    #[error("map has not been trained")]
    UntrainedMap,
    #[error("k must be >= 1")]
    ZeroK,
    #[error("k = {k} exceeds the {distinct} distinct points available")]
    TooFewDistinctPoints { k: usize, distinct: usize },
    #[error("data set is empty")]
    EmptyData,
    #[error(transparent)]
    Som(#[from] crate::som::SomError),
}
