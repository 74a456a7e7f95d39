//! A single dendritic cell and the records it emits on migration.

use crate::signal::NormalizedSignalFrame;

use super::tissue::AntigenEvent;
use super::weights::InterimOutputs;

/// One presented antigen: emitted when a migrating cell stamps its context
/// on everything it carries. Input to the MCAV aggregation.
#[derive(Debug, Clone, PartialEq)]
pub struct PresentedAntigenRecord {
    pub antigen_type: u32,
    /// 1 iff the presenting cell's mature output strictly exceeded its
    /// semi-mature output.
    pub context: u8,
    /// (cumulative semi-mature, cumulative mature) at presentation.
    pub presenting_cell_outputs: (f64, f64),
    pub migration_cycle: u64,
    /// Set on records flushed at end of run rather than by migration.
    pub forced: bool,
}

/// One agent: sampled antigen, cumulative outputs, and a private migration
/// threshold that stays fixed across resets.
#[derive(Debug, Clone)]
pub struct DendriticCell {
    signal_snapshot: Option<NormalizedSignalFrame>,
    antigen: Vec<AntigenEvent>,
    antigen_capacity: usize,
    cumulative_csm: f64,
    cumulative_semi: f64,
    cumulative_mature: f64,
    migration_threshold: f64,
    lifetime_cycles: u64,
}

impl DendriticCell {
    pub fn new(migration_threshold: f64, antigen_capacity: usize) -> Self {
        Self {
            signal_snapshot: None,
            antigen: Vec::new(),
            antigen_capacity,
            cumulative_csm: 0.0,
            cumulative_semi: 0.0,
            cumulative_mature: 0.0,
            migration_threshold,
            lifetime_cycles: 0,
        }
    }

    pub fn migration_threshold(&self) -> f64 {
        self.migration_threshold
    }

    pub fn antigen_count(&self) -> usize {
        self.antigen.len()
    }

    /// Remaining antigen slots; a full cell stops collecting.
    pub fn free_capacity(&self) -> usize {
        self.antigen_capacity - self.antigen.len()
    }

    pub fn lifetime_cycles(&self) -> u64 {
        self.lifetime_cycles
    }

    pub fn cumulative_outputs(&self) -> (f64, f64, f64) {
        (
            self.cumulative_csm,
            self.cumulative_semi,
            self.cumulative_mature,
        )
    }

    pub fn collect_antigen(&mut self, event: AntigenEvent) {
        debug_assert!(self.antigen.len() < self.antigen_capacity);
        self.antigen.push(event);
    }

    /// One exposure: snapshot the frame and accumulate its fused outputs.
    pub fn expose(&mut self, frame: &NormalizedSignalFrame, outputs: InterimOutputs) {
        self.signal_snapshot = Some(frame.clone());
        self.cumulative_csm += outputs.csm;
        self.cumulative_semi += outputs.semi;
        self.cumulative_mature += outputs.mature;
        self.lifetime_cycles += 1;
    }

    /// True once the costimulatory output strictly exceeds the threshold.
    pub fn ready_to_migrate(&self) -> bool {
        self.cumulative_csm > self.migration_threshold
    }

    /// Context the cell would stamp right now: mature must strictly win,
    /// ties read as semi-mature.
    pub fn context(&self) -> u8 {
        (self.cumulative_mature > self.cumulative_semi) as u8
    }

    /// Presents all carried antigen at `cycle` and resets the cell. The
    /// migration threshold survives the reset.
    pub fn present_and_reset(&mut self, cycle: u64, forced: bool) -> Vec<PresentedAntigenRecord> {
        let context = self.context();
        let outputs = (self.cumulative_semi, self.cumulative_mature);
        let records = self
            .antigen
            .drain(..)
            .map(|event| PresentedAntigenRecord {
                antigen_type: event.antigen_type,
                context,
                presenting_cell_outputs: outputs,
                migration_cycle: cycle,
                forced,
            })
            .collect();
        self.signal_snapshot = None;
        self.cumulative_csm = 0.0;
        self.cumulative_semi = 0.0;
        self.cumulative_mature = 0.0;
        self.lifetime_cycles = 0;
        records
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dca::weights::WeightMatrix;

    fn frame(pamp: f64, danger: f64, safe: f64, inflammation: u8) -> NormalizedSignalFrame {
        NormalizedSignalFrame {
            timestamp: 0,
            pamp1: pamp,
            pamp2: 0.0,
            ds1: danger,
            ds2: 0.0,
            ss1: safe,
            ss2: 0.0,
            inflammation,
        }
    }

    fn ev(pid: u32) -> AntigenEvent {
        AntigenEvent {
            timestamp: 0,
            antigen_type: pid,
        }
    }

    #[test]
    fn accumulates_and_migrates_on_strict_threshold_crossing() {
        let w = WeightMatrix::default();
        let f = frame(0.0, 5.0, 0.0, 0); // csm = 10 per cycle
        let mut cell = DendriticCell::new(30.0, 50);
        for _ in 0..3 {
            let o = w.interim_outputs(&f);
            cell.expose(&f, o);
        }
        // Cumulative csm == 30 is not strictly greater than 30.
        assert!(!cell.ready_to_migrate());
        let o = w.interim_outputs(&f);
        cell.expose(&f, o);
        assert!(cell.ready_to_migrate());
        assert_eq!(cell.lifetime_cycles(), 4);
    }

    #[test]
    fn context_tie_reads_semi_mature() {
        let mut cell = DendriticCell::new(10.0, 50);
        assert_eq!(cell.context(), 0); // 0 == 0
        let w = WeightMatrix::default();
        let f = frame(100.0, 0.0, 0.0, 0);
        let o = w.interim_outputs(&f);
        cell.expose(&f, o);
        assert_eq!(cell.context(), 1);
    }

    #[test]
    fn present_stamps_every_antigen_and_resets() {
        let w = WeightMatrix::default();
        let mut cell = DendriticCell::new(10.0, 50);
        cell.collect_antigen(ev(7));
        cell.collect_antigen(ev(7));
        cell.collect_antigen(ev(9));
        let f = frame(100.0, 100.0, 0.0, 0);
        let o = w.interim_outputs(&f);
        cell.expose(&f, o);
        let records = cell.present_and_reset(5, false);
        assert_eq!(records.len(), 3);
        for r in &records {
            assert_eq!(r.context, 1);
            assert_eq!(r.migration_cycle, 5);
            assert_eq!(r.presenting_cell_outputs, (0.0, 1200.0));
            assert!(!r.forced);
        }
        assert_eq!(cell.antigen_count(), 0);
        assert_eq!(cell.cumulative_outputs(), (0.0, 0.0, 0.0));
        assert_eq!(cell.migration_threshold(), 10.0);
        assert_eq!(cell.lifetime_cycles(), 0);
    }
}
