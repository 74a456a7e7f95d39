//! The map itself: grid geometry, BMU search, and adaptation.

use rand::Rng;

use crate::rng::SessionRng;

use super::params::SomParams;
use super::SomError;

/// Integer grid coordinates of a node.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridLocation {
    pub row: usize,
    pub col: usize,
}

impl GridLocation {
    /// Euclidean distance on the grid lattice.
    pub fn distance(&self, other: &GridLocation) -> f64 {
        let dr = self.row as f64 - other.row as f64;
        let dc = self.col as f64 - other.col as f64;
        (dr * dr + dc * dc).sqrt()
    }
}

/// A complete rows x cols grid of weight vectors in signal space.
#[derive(Debug, Clone, PartialEq)]
pub struct SomMap {
    rows: usize,
    cols: usize,
    dim: usize,
    /// Row-major node weights.
    weights: Vec<Vec<f64>>,
    /// Training epochs applied so far.
    epoch: u64,
}

impl SomMap {
    /// Creates a map with every weight component drawn uniformly from the
    /// signal range [0, 100].
    pub fn init(params: &SomParams, dim: usize, rng: &mut SessionRng) -> Result<Self, SomError> {
        params.validate()?;
        if dim == 0 {
            return Err(SomError::InvalidParam {
                name: "dim",
                reason: "weight dimensionality must be >= 1".into(),
            });
        }
        let weights = (0..params.node_count())
            .map(|_| (0..dim).map(|_| rng.gen_range(0.0..=100.0)).collect())
            .collect();
        Ok(Self {
            rows: params.grid_rows,
            cols: params.grid_cols,
            dim,
            weights,
            epoch: 0,
        })
    }

    /// Rebuilds a map from stored node weights (file load).
    pub fn from_weights(
        rows: usize,
        cols: usize,
        weights: Vec<Vec<f64>>,
        epoch: u64,
    ) -> Result<Self, SomError> {
        if rows == 0 || cols == 0 || weights.len() != rows * cols {
            return Err(SomError::InvalidParam {
                name: "weights",
                reason: format!("{} nodes for a {rows}x{cols} grid", weights.len()),
            });
        }
        let dim = weights[0].len();
        if dim == 0 || weights.iter().any(|w| w.len() != dim) {
            return Err(SomError::InvalidParam {
                name: "weights",
                reason: "ragged or empty weight vectors".into(),
            });
        }
        Ok(Self {
            rows,
            cols,
            dim,
            weights,
            epoch,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn node_count(&self) -> usize {
        self.weights.len()
    }

    pub fn epoch(&self) -> u64 {
        self.epoch
    }

    pub fn is_trained(&self) -> bool {
        self.epoch > 0
    }

    pub fn node(&self, index: usize) -> &[f64] {
        &self.weights[index]
    }

    pub fn nodes(&self) -> impl Iterator<Item = (GridLocation, &[f64])> {
        self.weights
            .iter()
            .enumerate()
            .map(|(i, w)| (self.location(i), w.as_slice()))
    }

    /// Grid coordinates of a row-major node index.
    pub fn location(&self, index: usize) -> GridLocation {
        GridLocation {
            row: index / self.cols,
            col: index % self.cols,
        }
    }

    fn check_dim(&self, x: &[f64]) -> Result<(), SomError> {
        if x.len() != self.dim {
            return Err(SomError::DimensionMismatch {
                input: x.len(),
                map: self.dim,
            });
        }
        Ok(())
    }

    /// Pulls every node toward `x` under the epoch's neighborhood kernel
    /// and advances the epoch.
    pub fn adapt(&mut self, x: &[f64], winner: usize, params: &SomParams) -> Result<(), SomError> {
        self.check_dim(x)?;
        let t = self.epoch;
        let winner_loc = self.location(winner);
        for i in 0..self.weights.len() {
            let loc = self.location(i);
            let h = neighborhood_kernel(t, &winner_loc, &loc, params);
            let w = &mut self.weights[i];
            for (wk, xk) in w.iter_mut().zip(x) {
                *wk += h * (xk - *wk);
            }
        }
        self.epoch += 1;
        Ok(())
    }

    /// Mean distance from each node to its adjacent grid neighbors
    /// (the U-matrix used for cluster visualization).
    pub fn u_matrix(&self) -> Vec<(GridLocation, f64)> {
        let mut out = Vec::with_capacity(self.weights.len());
        for i in 0..self.weights.len() {
            let loc = self.location(i);
            let mut sum = 0.0;
            let mut n = 0usize;
            for dr in -1i64..=1 {
                for dc in -1i64..=1 {
                    if dr == 0 && dc == 0 {
                        continue;
                    }
                    let r = loc.row as i64 + dr;
                    let c = loc.col as i64 + dc;
                    if r < 0 || c < 0 || r >= self.rows as i64 || c >= self.cols as i64 {
                        continue;
                    }
                    let j = r as usize * self.cols + c as usize;
                    sum += euclidean(&self.weights[i], &self.weights[j]);
                    n += 1;
                }
            }
            out.push((loc, sum / n as f64));
        }
        out
    }
}

pub(crate) fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Best matching unit: the node index with the smallest Euclidean distance
/// to `x`, ties broken by lowest row-major index. Returns the index and
/// the distance.
pub fn find_bmu(map: &SomMap, x: &[f64]) -> Result<(usize, f64), SomError> {
    map.check_dim(x)?;
    let mut best = 0usize;
    let mut best_dist = f64::INFINITY;
    for (i, w) in map.weights.iter().enumerate() {
        let d = euclidean(w, x);
        if d < best_dist {
            best_dist = d;
            best = i;
        }
    }
    Ok((best, best_dist))
}

/// Gaussian learning factor between a winner and another node at epoch
/// `t`: `alpha(t) * exp(-grid_dist^2 / (2 sigma(t)^2))`.
pub fn neighborhood_kernel(
    t: u64,
    winner: &GridLocation,
    node: &GridLocation,
    params: &SomParams,
) -> f64 {
    let alpha = params.alpha_at(t);
    let sigma = params.sigma_at(t);
    let d = winner.distance(node);
    alpha * (-(d * d) / (2.0 * sigma * sigma)).exp()
}
