//! Signal-fusion weights and the per-cycle output computation.

use crate::signal::NormalizedSignalFrame;

/// Non-inflammation input signal categories.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignalCategory {
    Pamp = 0,
    Danger = 1,
    Safe = 2,
}

/// The three cell outputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputSignal {
    Csm = 0,
    SemiMature = 1,
    Mature = 2,
}

/// Interim outputs of one fusion step: (csm, semi-mature, mature).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterimOutputs {
    pub csm: f64,
    pub semi: f64,
    pub mature: f64,
}

/// Weights from signal category to output signal, shared by every signal
/// instance within a category.
///
/// All non-trivial entries derive from the two PAMP weights: W1 (PAMP to
/// csm) and W2 (PAMP to mature). Danger carries half the PAMP weight,
/// safe 1.5 times it (negated on the mature output), and only safe feeds
/// the semi-mature output.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightMatrix {
    /// Indexed `w[category][output]`.
    w: [[f64; 3]; 3],
}

impl WeightMatrix {
    /// Derives the full matrix from the two PAMP weights.
    pub fn from_pamp_weights(w1: f64, w2: f64) -> Self {
        Self {
            w: [
                [w1, 0.0, w2],
                [w1 / 2.0, 0.0, w2 / 2.0],
                [w1 * 1.5, 1.0, -w2 * 1.5],
            ],
        }
    }

    pub fn weight(&self, category: SignalCategory, output: OutputSignal) -> f64 {
        self.w[category as usize][output as usize]
    }

    /// The matrix as rows by output signal, columns by category, matching
    /// the usual tabular presentation.
    pub fn by_output_rows(&self) -> [[f64; 3]; 3] {
        let mut rows = [[0.0; 3]; 3];
        for (j, row) in self.w.iter().enumerate() {
            for (p, v) in row.iter().enumerate() {
                rows[p][j] = *v;
            }
        }
        rows
    }

    /// Fuses one frame into interim outputs.
    ///
    /// Each category's signals are summed and scaled by that category's
    /// weight per output; inflammation doubles all three results.
    pub fn interim_outputs(&self, frame: &NormalizedSignalFrame) -> InterimOutputs {
        let (pamp, danger, safe) = frame.category_sums();
        let fuse = |p: usize| {
            self.w[SignalCategory::Pamp as usize][p] * pamp
                + self.w[SignalCategory::Danger as usize][p] * danger
                + self.w[SignalCategory::Safe as usize][p] * safe
        };
        let amp = if frame.inflammation == 1 { 2.0 } else { 1.0 };
        InterimOutputs {
            csm: fuse(OutputSignal::Csm as usize) * amp,
            semi: fuse(OutputSignal::SemiMature as usize) * amp,
            mature: fuse(OutputSignal::Mature as usize) * amp,
        }
    }
}

impl Default for WeightMatrix {
    /// The published configuration: W1 = 4, W2 = 8.
    fn default() -> Self {
        Self::from_pamp_weights(4.0, 8.0)
    }
}
