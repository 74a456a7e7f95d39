//! Lloyd's k-means over normalized signal vectors: the signals-only
//! baseline the detectors are compared against.

use rand::seq::SliceRandom;

use crate::rng::seeded;

use super::AnalysisError;

const MAX_ITERATIONS: usize = 300;

#[derive(Debug, Clone, PartialEq)]
pub struct KmeansResult {
    /// Cluster index per input point.
    pub assignments: Vec<usize>,
    pub centroids: Vec<Vec<f64>>,
    /// Share of points per cluster.
    pub fractions: Vec<f64>,
    pub iterations: usize,
}

fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Seeded Lloyd iteration: random distinct points as initial centroids,
/// reassign/recompute until assignments stabilize or 300 iterations.
/// Empty clusters are repaired by reseeding on the point farthest from
/// its current centroid.
pub fn kmeans_baseline(
    points: &[Vec<f64>],
    k: usize,
    seed: u64,
) -> Result<KmeansResult, AnalysisError> {
    if k == 0 {
        return Err(AnalysisError::ZeroK);
    }
    if points.is_empty() {
        return Err(AnalysisError::EmptyData);
    }
    let mut distinct: Vec<usize> = Vec::new();
    for (i, p) in points.iter().enumerate() {
        if !distinct.iter().any(|&j| points[j] == *p) {
            distinct.push(i);
        }
    }
    if k > distinct.len() {
        return Err(AnalysisError::TooFewDistinctPoints {
            k,
            distinct: distinct.len(),
        });
    }

    let mut rng = seeded(seed);
    distinct.shuffle(&mut rng);
    let mut centroids: Vec<Vec<f64>> = distinct[..k].iter().map(|&i| points[i].clone()).collect();

    let dim = points[0].len();
    let mut assignments = vec![0usize; points.len()];
    let mut iterations = 0;
    loop {
        iterations += 1;
        let mut changed = false;
        for (i, p) in points.iter().enumerate() {
            let mut best = 0;
            let mut best_d = sq_dist(p, &centroids[0]);
            for (c, centroid) in centroids.iter().enumerate().skip(1) {
                let d = sq_dist(p, centroid);
                if d < best_d {
                    best_d = d;
                    best = c;
                }
            }
            if assignments[i] != best {
                assignments[i] = best;
                changed = true;
            }
        }
        if !changed && iterations > 1 {
            break;
        }

        let mut sums = vec![vec![0.0; dim]; k];
        let mut counts = vec![0usize; k];
        for (p, &c) in points.iter().zip(&assignments) {
            counts[c] += 1;
            for (s, v) in sums[c].iter_mut().zip(p) {
                *s += v;
            }
        }
        for c in 0..k {
            if counts[c] == 0 {
                // Reseed on the point farthest from its centroid.
                let far = (0..points.len())
                    .max_by(|&i, &j| {
                        sq_dist(&points[i], &centroids[assignments[i]])
                            .partial_cmp(&sq_dist(&points[j], &centroids[assignments[j]]))
                            .unwrap()
                    })
                    .unwrap();
                centroids[c] = points[far].clone();
            } else {
                for (d, s) in centroids[c].iter_mut().zip(&sums[c]) {
                    *d = s / counts[c] as f64;
                }
            }
        }
        if iterations >= MAX_ITERATIONS {
            // One final assignment pass against the settled centroids.
            for (i, p) in points.iter().enumerate() {
                let mut best = 0;
                let mut best_d = sq_dist(p, &centroids[0]);
                for (c, centroid) in centroids.iter().enumerate().skip(1) {
                    let d = sq_dist(p, centroid);
                    if d < best_d {
                        best_d = d;
                        best = c;
                    }
                }
                assignments[i] = best;
            }
            break;
        }
    }

    let mut fractions = vec![0.0; k];
    for &c in &assignments {
        fractions[c] += 1.0;
    }
    for f in &mut fractions {
        *f /= points.len() as f64;
    }
    Ok(KmeansResult {
        assignments,
        centroids,
        fractions,
        iterations,
    })
}
