//! Incremental Kohonen self-organizing map.
//!
//! A grid of weight vectors in signal space, trained one stimulus per
//! epoch: pick a random training vector, find the best matching unit,
//! pull every node toward the stimulus under a Gaussian neighborhood
//! whose learning rate and width shrink over a global-ordering phase and
//! then hold at fine-tuning values. Detection is a threshold on the BMU
//! distance of a query frame.

mod map;
mod params;
mod train;

pub use map::{find_bmu, neighborhood_kernel, GridLocation, SomMap};
pub use params::SomParams;
pub use train::{classify_frame, quantization_error, train, train_map};

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum SomError {
    #[error("input dimension {input} does not match map dimension {map}")]
    DimensionMismatch { input: usize, map: usize },
    #[error("training data is empty")]
    EmptyTrainingSet,
    #[error("data set is empty")]
    EmptyData,
    #[error("map has not been trained")]
    UntrainedMap,
    #[error("invalid parameter {name}: {reason}")]
    InvalidParam { name: &'static str, reason: String },
}
