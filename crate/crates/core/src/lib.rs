//! Streaming anomaly detection for host-based SYN-scan traces.
//!
//! Two detectors over the same seven-signal telemetry: a dendritic cell
//! algorithm that fuses signals across an agent population and stamps a
//! context on every antigen it presents, and an incremental self-organizing
//! map trained on normal traffic that flags frames by BMU distance. The
//! crate also carries the signal-normalization pipeline, the synthetic
//! session generator, and the segmentation/statistics layer used to compare
//! the two detectors.

pub mod analysis;
pub mod datagen;
pub mod dca;
pub mod io;
pub mod rng;
pub mod signal;
pub mod som;

pub use dca::{
    run_session, AntigenEvent, DcaEngine, DcaParams, DendriticCell, LiveDca,
    PresentedAntigenRecord, RunStats, SessionResult, Tissue, WeightMatrix,
};
pub use signal::{NormalizedSignalFrame, RawSample, SignalPipeline, Ss2State};
pub use som::{SomMap, SomParams};
