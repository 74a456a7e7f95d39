//! Training loop, quantization error, and BMU-distance classification.

use rand::Rng;

use crate::rng::{seeded, SessionRng};

use super::map::{find_bmu, SomMap};
use super::params::SomParams;
use super::SomError;

/// Runs `epoch_limit` epochs of stimulus selection, response, adaptation:
/// each epoch picks one random training vector, finds its BMU, and pulls
/// the map toward it under the two-phase schedule.
pub fn train(
    map: &mut SomMap,
    training: &[Vec<f64>],
    params: &SomParams,
    rng: &mut SessionRng,
) -> Result<(), SomError> {
    if training.is_empty() {
        return Err(SomError::EmptyTrainingSet);
    }
    for v in training {
        if v.len() != map.dim() {
            return Err(SomError::DimensionMismatch {
                input: v.len(),
                map: map.dim(),
            });
        }
    }
    for _ in 0..params.epoch_limit {
        let x = &training[rng.gen_range(0..training.len())];
        let (winner, _) = find_bmu(map, x)?;
        map.adapt(x, winner, params)?;
    }
    Ok(())
}

/// Seeds an RNG from the params, initializes a fresh map, and trains it.
pub fn train_map(
    params: &SomParams,
    dim: usize,
    training: &[Vec<f64>],
) -> Result<SomMap, SomError> {
    let mut rng = seeded(params.rng_seed);
    let mut map = SomMap::init(params, dim, &mut rng)?;
    train(&mut map, training, params, &mut rng)?;
    Ok(map)
}

/// Mean BMU distance of a data set against the map.
pub fn quantization_error(map: &SomMap, data: &[Vec<f64>]) -> Result<f64, SomError> {
    if data.is_empty() {
        return Err(SomError::EmptyData);
    }
    let mut sum = 0.0;
    for x in data {
        sum += find_bmu(map, x)?.1;
    }
    Ok(sum / data.len() as f64)
}

/// 1 if the frame's BMU distance strictly exceeds the threshold, else 0.
/// Boundary frames read as normal.
pub fn classify_frame(map: &SomMap, x: &[f64], threshold: f64) -> Result<u8, SomError> {
    let (_, d) = find_bmu(map, x)?;
    Ok((d > threshold) as u8)
}
