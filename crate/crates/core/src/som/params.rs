//! Map geometry and the two-phase training schedule.

use super::SomError;

/// Training and detection settings.
#[derive(Debug, Clone, PartialEq)]
pub struct SomParams {
    pub grid_rows: usize,
    pub grid_cols: usize,
    /// Total training epochs (one stimulus per epoch).
    pub epoch_limit: u64,
    /// Learning rate at the start of global ordering.
    pub alpha_initial_global: f64,
    /// Constant learning rate during fine-tuning.
    pub alpha_fine: f64,
    /// Epochs in the global-ordering phase.
    pub global_ordering_steps: u64,
    /// Gaussian width at the start of global ordering.
    pub neighborhood_initial: f64,
    /// Gaussian width during fine-tuning.
    pub neighborhood_fine: f64,
    /// BMU distance above which a frame reads as anomalous.
    pub anomaly_threshold: f64,
    pub rng_seed: u64,
}

impl Default for SomParams {
    fn default() -> Self {
        Self {
            grid_rows: 10,
            grid_cols: 10,
            epoch_limit: 100_000,
            alpha_initial_global: 0.9,
            alpha_fine: 0.02,
            global_ordering_steps: 1_000,
            neighborhood_initial: 5.0,
            neighborhood_fine: 1.0,
            anomaly_threshold: 65.0,
            rng_seed: 0,
        }
    }
}

impl SomParams {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.rng_seed = seed;
        self
    }

    pub fn node_count(&self) -> usize {
        self.grid_rows * self.grid_cols
    }

    pub fn validate(&self) -> Result<(), SomError> {
        if self.grid_rows == 0 || self.grid_cols == 0 {
            return Err(SomError::InvalidParam {
                name: "grid",
                reason: format!("{}x{} has no nodes", self.grid_rows, self.grid_cols),
            });
        }
        if !(self.alpha_fine > 0.0
            && self.alpha_fine < self.alpha_initial_global
            && self.alpha_initial_global <= 1.0)
        {
            return Err(SomError::InvalidParam {
                name: "alpha",
                reason: format!(
                    "need 0 < alpha_fine < alpha_initial_global <= 1, got {} and {}",
                    self.alpha_fine, self.alpha_initial_global
                ),
            });
        }
        if self.neighborhood_initial <= 0.0 || self.neighborhood_fine <= 0.0 {
            return Err(SomError::InvalidParam {
                name: "neighborhood",
                reason: "widths must be positive".into(),
            });
        }
        Ok(())
    }

    /// Non-fatal configuration smells, e.g. an epoch budget under the
    /// recommended 500 per map unit.
    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        let recommended = 500 * self.node_count() as u64;
        if self.epoch_limit < recommended {
            out.push(format!(
                "epoch_limit {} is below 500 per map unit ({} for a {}x{} grid)",
                self.epoch_limit, recommended, self.grid_rows, self.grid_cols
            ));
        }
        out
    }

    /// Learning rate at epoch `t`: linear decay from the initial value
    /// across the global-ordering steps, floored at (then held on) the
    /// fine-tuning constant.
    pub fn alpha_at(&self, t: u64) -> f64 {
        if t < self.global_ordering_steps {
            let decay =
                self.alpha_initial_global * (1.0 - t as f64 / self.global_ordering_steps as f64);
            decay.max(self.alpha_fine)
        } else {
            self.alpha_fine
        }
    }

    /// Gaussian width at epoch `t`: linear from the initial to the
    /// fine-tuning width across global ordering, constant after.
    pub fn sigma_at(&self, t: u64) -> f64 {
        if t < self.global_ordering_steps {
            let frac = t as f64 / self.global_ordering_steps as f64;
            self.neighborhood_initial + (self.neighborhood_fine - self.neighborhood_initial) * frac
        } else {
            self.neighborhood_fine
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_match_reference_table() {
        let p = SomParams::default();
        assert_eq!((p.grid_rows, p.grid_cols), (10, 10));
        assert_eq!(p.epoch_limit, 100_000);
        assert_eq!(p.alpha_initial_global, 0.9);
        assert_eq!(p.alpha_fine, 0.02);
        assert_eq!(p.global_ordering_steps, 1_000);
        assert_eq!(p.neighborhood_initial, 5.0);
        assert_eq!(p.neighborhood_fine, 1.0);
        assert_eq!(p.anomaly_threshold, 65.0);
        assert!(p.validate().is_ok());
        assert!(p.warnings().is_empty());
    }

    #[test]
    fn schedule_endpoints() {
        let p = SomParams::default();
        assert_eq!(p.alpha_at(0), 0.9);
        assert_eq!(p.alpha_at(1_000), 0.02);
        assert_eq!(p.alpha_at(50_000), 0.02);
        assert_eq!(p.sigma_at(0), 5.0);
        assert_eq!(p.sigma_at(500), 3.0);
        assert_eq!(p.sigma_at(1_000), 1.0);
        assert_eq!(p.sigma_at(99_999), 1.0);
    }

    #[test]
    fn alpha_is_floored_not_zeroed() {
        let p = SomParams::default();
        // The raw decay hits zero at the end of global ordering; the
        // fine-tuning constant takes over before that.
        assert!(p.alpha_at(999) >= p.alpha_fine);
        for t in 0..1_000 {
            assert!(p.alpha_at(t) >= p.alpha_fine);
            assert!(p.alpha_at(t) <= 0.9);
        }
    }

    #[test]
    fn schedule_is_monotone_non_increasing() {
        let p = SomParams::default();
        let mut prev_a = f64::INFINITY;
        let mut prev_s = f64::INFINITY;
        for t in (0..2_000).step_by(10) {
            let a = p.alpha_at(t);
            let s = p.sigma_at(t);
            assert!(a <= prev_a);
            assert!(s <= prev_s);
            prev_a = a;
            prev_s = s;
        }
    }

    #[test]
    fn under_budget_epoch_limit_warns() {
        let p = SomParams {
            epoch_limit: 1_000,
            ..SomParams::default()
        };
        assert_eq!(p.warnings().len(), 1);
    }
}
