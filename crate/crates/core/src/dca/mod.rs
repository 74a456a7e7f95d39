//! The dendritic cell algorithm.
//!
//! A population of cells samples antigen from a shared tissue store while
//! fusing the current signal frame into three cumulative outputs. When a
//! cell's costimulatory output passes its private migration threshold it
//! presents everything it carries with a 0/1 context (semi-mature vs
//! mature) and rejoins the population reset. Aggregating contexts per
//! antigen type yields the MCAV anomaly coefficient downstream.

mod cell;
mod engine;
mod params;
mod tissue;
mod weights;

pub use cell::{DendriticCell, PresentedAntigenRecord};
pub use engine::{
    init_population, run_session, DcaEngine, LiveDca, RunStats, SessionResult, TypeCounts,
};
pub use params::DcaParams;
pub use tissue::{AntigenEvent, Tissue};
pub use weights::{InterimOutputs, OutputSignal, SignalCategory, WeightMatrix};

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum DcaError {
    #[error("invalid parameter {name}: {reason}")]
    InvalidParam { name: &'static str, reason: String },
    #[error("stream key mismatch: antigen at second {antigen_second} has no frame (frame cursor at {frame_second:?})")]
    StreamKeyMismatch {
        antigen_second: u64,
        frame_second: Option<u64>,
    },
    #[error("frames out of order: {previous} then {got}")]
    FramesOutOfOrder { previous: u64, got: u64 },
}
