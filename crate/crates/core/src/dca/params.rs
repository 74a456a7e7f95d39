//! Run parameters for the cell population.

use super::DcaError;

/// Population and capacity settings.
///
/// All count fields hold the actual size (the zero-indexed table values
/// plus one): the default population is 100 cells, each holding up to 50
/// antigens and sampling up to 10 per cycle from a 500-slot tissue store.
#[derive(Debug, Clone, PartialEq)]
pub struct DcaParams {
    /// Signals per category fed to the fusion step (the session data
    /// carries two per category).
    pub signals_per_category: usize,
    /// Signal categories including inflammation; fixed at 4.
    pub categories: usize,
    /// Tissue antigen store capacity.
    pub tissue_antigen_capacity: usize,
    /// Upper bound on cell cycles per session.
    pub max_cycles: u64,
    /// Cells in the population.
    pub population_size: usize,
    /// Antigen capacity of one cell.
    pub dc_antigen_capacity: usize,
    /// Output signals per cell; fixed at 3 (csm, semi, mature).
    pub outputs_per_dc: usize,
    /// Antigens one cell removes from the store per cycle.
    pub antigens_sampled_per_cycle: usize,
    /// Center of the migration threshold range.
    pub migration_threshold_center: f64,
    /// Half-width of the migration threshold range.
    pub migration_threshold_halfwidth: f64,
    /// Seed for threshold assignment.
    pub rng_seed: u64,
}

impl Default for DcaParams {
    fn default() -> Self {
        Self {
            signals_per_category: 2,
            categories: 4,
            tissue_antigen_capacity: 500,
            max_cycles: 1_000_000,
            population_size: 100,
            dc_antigen_capacity: 50,
            outputs_per_dc: 3,
            antigens_sampled_per_cycle: 10,
            migration_threshold_center: 60.0,
            migration_threshold_halfwidth: 30.0,
            rng_seed: 0,
        }
    }
}

impl DcaParams {
    /// Same parameters, different seed.
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.rng_seed = seed;
        self
    }

    pub fn validate(&self) -> Result<(), DcaError> {
        let counts = [
            ("signals_per_category", self.signals_per_category),
            ("categories", self.categories),
            ("tissue_antigen_capacity", self.tissue_antigen_capacity),
            ("population_size", self.population_size),
            ("dc_antigen_capacity", self.dc_antigen_capacity),
            ("outputs_per_dc", self.outputs_per_dc),
            (
                "antigens_sampled_per_cycle",
                self.antigens_sampled_per_cycle,
            ),
        ];
        for (name, value) in counts {
            if value < 1 {
                return Err(DcaError::InvalidParam {
                    name,
                    reason: format!("must be >= 1, got {value}"),
                });
            }
        }
        if self.max_cycles < 1 {
            return Err(DcaError::InvalidParam {
                name: "max_cycles",
                reason: "must be >= 1".into(),
            });
        }
        // The fusion step is fixed at four signal categories (three
        // weighted plus inflammation) and three outputs.
        if self.categories != 4 {
            return Err(DcaError::InvalidParam {
                name: "categories",
                reason: format!("fixed at 4, got {}", self.categories),
            });
        }
        if self.outputs_per_dc != 3 {
            return Err(DcaError::InvalidParam {
                name: "outputs_per_dc",
                reason: format!("fixed at 3, got {}", self.outputs_per_dc),
            });
        }
        if self.migration_threshold_halfwidth < 0.0 {
            return Err(DcaError::InvalidParam {
                name: "migration_threshold_halfwidth",
                reason: "must be >= 0".into(),
            });
        }
        if self.migration_threshold_center - self.migration_threshold_halfwidth <= 0.0 {
            return Err(DcaError::InvalidParam {
                name: "migration_threshold_center",
                reason: format!(
                    "center - halfwidth must be > 0, got {} - {}",
                    self.migration_threshold_center, self.migration_threshold_halfwidth
                ),
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_match_reference_table() {
        let p = DcaParams::default();
        // Zero-indexed reference values K=499, M=99, N=49, Q=9 mean
        // capacities of value + 1.
        assert_eq!(p.tissue_antigen_capacity, 500);
        assert_eq!(p.population_size, 100);
        assert_eq!(p.dc_antigen_capacity, 50);
        assert_eq!(p.antigens_sampled_per_cycle, 10);
        assert_eq!(p.outputs_per_dc, 3);
        assert_eq!(p.categories, 4);
        assert_eq!(p.migration_threshold_center, 60.0);
        assert_eq!(p.migration_threshold_halfwidth, 30.0);
        assert!(p.validate().is_ok());
    }

    #[test]
    fn rejects_zero_counts_and_bad_threshold() {
        let p = DcaParams {
            population_size: 0,
            ..DcaParams::default()
        };
        assert!(p.validate().is_err());

        let p = DcaParams {
            migration_threshold_center: 10.0,
            migration_threshold_halfwidth: 10.0,
            ..DcaParams::default()
        };
        assert!(p.validate().is_err());

        let p = DcaParams {
            migration_threshold_halfwidth: -1.0,
            ..DcaParams::default()
        };
        assert!(p.validate().is_err());
    }

    #[test]
    fn fixed_structure_fields_are_enforced() {
        let p = DcaParams {
            categories: 3,
            ..DcaParams::default()
        };
        assert!(p.validate().is_err());
        let p = DcaParams {
            outputs_per_dc: 4,
            ..DcaParams::default()
        };
        assert!(p.validate().is_err());
    }
}
