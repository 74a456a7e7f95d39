//! Population driver: cycles, replay sessions, and the asynchronous
//! live-mode wrapper.

use std::collections::BTreeMap;
use std::sync::Mutex;

use rand::Rng;

use crate::rng::{seeded, SessionRng};
use crate::signal::NormalizedSignalFrame;

use super::cell::{DendriticCell, PresentedAntigenRecord};
use super::params::DcaParams;
use super::tissue::{AntigenEvent, Tissue};
use super::weights::WeightMatrix;
use super::DcaError;

/// Ingest/present/evict counters for one antigen type.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TypeCounts {
    pub ingested: u64,
    pub presented: u64,
    pub evicted: u64,
}

/// Per-type antigen accounting across a run.
#[derive(Debug, Clone, Default)]
pub struct RunStats {
    pub per_type: BTreeMap<u32, TypeCounts>,
    pub cycles: u64,
}

impl RunStats {
    pub fn totals(&self) -> TypeCounts {
        let mut t = TypeCounts::default();
        for c in self.per_type.values() {
            t.ingested += c.ingested;
            t.presented += c.presented;
            t.evicted += c.evicted;
        }
        t
    }

    /// True when every type reconciles as ingested = presented + evicted.
    /// Only meaningful after the engine has finished (mid-run, antigen in
    /// flight sits in cells or the store).
    pub fn is_reconciled(&self) -> bool {
        self.per_type
            .values()
            .all(|c| c.ingested == c.presented + c.evicted)
    }
}

/// A finished replay: the presented-antigen log plus its accounting.
#[derive(Debug, Clone)]
pub struct SessionResult {
    pub records: Vec<PresentedAntigenRecord>,
    pub stats: RunStats,
}

/// Creates the cell population with thresholds drawn uniformly from
/// [center - halfwidth, center + halfwidth].
pub fn init_population(params: &DcaParams) -> Vec<DendriticCell> {
    let mut rng = seeded(params.rng_seed);
    init_population_with(params, &mut rng)
}

fn init_population_with(params: &DcaParams, rng: &mut SessionRng) -> Vec<DendriticCell> {
    let lo = params.migration_threshold_center - params.migration_threshold_halfwidth;
    let hi = params.migration_threshold_center + params.migration_threshold_halfwidth;
    (0..params.population_size)
        .map(|_| {
            let threshold = if lo == hi { lo } else { rng.gen_range(lo..=hi) };
            DendriticCell::new(threshold, params.dc_antigen_capacity)
        })
        .collect()
}

/// The algorithm state: tissue, population, weights, and accounting.
///
/// Drive it with `update_signals` / `ingest_antigen` / `cycle`; `finish`
/// flushes cells still holding antigen as forced presentations and counts
/// unsampled store leftovers as evicted.
#[derive(Debug)]
pub struct DcaEngine {
    tissue: Tissue,
    population: Vec<DendriticCell>,
    weights: WeightMatrix,
    samples_per_cycle: usize,
    cycle_index: u64,
    stats: RunStats,
}

impl DcaEngine {
    pub fn new(params: &DcaParams, weights: WeightMatrix) -> Result<Self, DcaError> {
        params.validate()?;
        Ok(Self {
            tissue: Tissue::new(params.tissue_antigen_capacity),
            population: init_population(params),
            weights,
            samples_per_cycle: params.antigens_sampled_per_cycle,
            cycle_index: 0,
            stats: RunStats::default(),
        })
    }

    pub fn population(&self) -> &[DendriticCell] {
        &self.population
    }

    pub fn tissue(&self) -> &Tissue {
        &self.tissue
    }

    pub fn stats(&self) -> &RunStats {
        &self.stats
    }

    pub fn cycles_run(&self) -> u64 {
        self.cycle_index
    }

    pub fn update_signals(&mut self, frame: NormalizedSignalFrame) {
        self.tissue.update_signals(frame);
    }

    pub fn ingest_antigen(&mut self, event: AntigenEvent) {
        self.stats
            .per_type
            .entry(event.antigen_type)
            .or_default()
            .ingested += 1;
        if let Some(evicted) = self.tissue.ingest(event) {
            self.stats
                .per_type
                .entry(evicted.antigen_type)
                .or_default()
                .evicted += 1;
        }
    }

    /// One cell cycle over the whole population, in index order: sample,
    /// snapshot signals, accumulate outputs, then migrate any cell whose
    /// csm passed its threshold. Returns this cycle's presentations.
    ///
    /// Before the first signal update there is nothing to expose cells to
    /// and the cycle is a no-op.
    pub fn cycle(&mut self) -> Vec<PresentedAntigenRecord> {
        let frame = match self.tissue.frame() {
            Some(f) => f.clone(),
            None => return Vec::new(),
        };
        let outputs = self.weights.interim_outputs(&frame);
        let cycle = self.cycle_index;
        self.cycle_index += 1;
        self.stats.cycles += 1;

        let mut records = Vec::new();
        for cell in &mut self.population {
            let want = self.samples_per_cycle.min(cell.free_capacity());
            for event in self.tissue.sample(want) {
                cell.collect_antigen(event);
            }
            cell.expose(&frame, outputs);
            if cell.ready_to_migrate() {
                records.extend(cell.present_and_reset(cycle, false));
            }
        }
        for r in &records {
            self.stats
                .per_type
                .entry(r.antigen_type)
                .or_default()
                .presented += 1;
        }
        records
    }

    /// Ends the run: cells holding antigen force-present with their
    /// current context, and whatever never left the store counts as
    /// evicted. Records are ordered by cell index.
    pub fn finish(mut self) -> (Vec<PresentedAntigenRecord>, RunStats) {
        let cycle = self.cycle_index;
        let mut records = Vec::new();
        for cell in &mut self.population {
            if cell.antigen_count() > 0 {
                records.extend(cell.present_and_reset(cycle, true));
            }
        }
        for r in &records {
            self.stats
                .per_type
                .entry(r.antigen_type)
                .or_default()
                .presented += 1;
        }
        for event in self.tissue.drain_remaining() {
            self.stats
                .per_type
                .entry(event.antigen_type)
                .or_default()
                .evicted += 1;
        }
        (records, self.stats)
    }
}

/// Replays a recorded session: per frame second, ingest that second's
/// antigen, overwrite the signal matrix, then run one cell cycle. Both
/// streams must be keyed by the same seconds.
pub fn run_session(
    frames: &[NormalizedSignalFrame],
    events: &[AntigenEvent],
    params: &DcaParams,
    weights: &WeightMatrix,
) -> Result<SessionResult, DcaError> {
    let mut engine = DcaEngine::new(params, weights.clone())?;
    let mut records = Vec::new();
    let mut cursor = 0usize;
    let mut previous: Option<u64> = None;
    let mut capped = false;

    for frame in frames {
        if engine.cycles_run() >= params.max_cycles {
            capped = true;
            break;
        }
        if let Some(prev) = previous {
            if frame.timestamp <= prev {
                return Err(DcaError::FramesOutOfOrder {
                    previous: prev,
                    got: frame.timestamp,
                });
            }
        }
        // Any event stamped before this frame belongs to no frame at all.
        if let Some(event) = events.get(cursor) {
            if event.timestamp < frame.timestamp {
                return Err(DcaError::StreamKeyMismatch {
                    antigen_second: event.timestamp,
                    frame_second: Some(frame.timestamp),
                });
            }
        }
        while let Some(event) = events.get(cursor) {
            if event.timestamp == frame.timestamp {
                engine.ingest_antigen(*event);
                cursor += 1;
            } else {
                break;
            }
        }
        engine.update_signals(frame.clone());
        records.extend(engine.cycle());
        previous = Some(frame.timestamp);
    }

    if !capped {
        if let Some(event) = events.get(cursor) {
            return Err(DcaError::StreamKeyMismatch {
                antigen_second: event.timestamp,
                frame_second: None,
            });
        }
    }

    let (forced, stats) = engine.finish();
    records.extend(forced);
    Ok(SessionResult { records, stats })
}

/// Thread-safe wrapper for live operation: the three update activities
/// (signals, antigen, cell cycle) may run from independent threads, each
/// taking exclusive access to the shared state for the duration of its
/// update. No ordering is guaranteed across threads beyond per-cell
/// consistency; replay mode is the reproducible path.
#[derive(Debug)]
pub struct LiveDca {
    inner: Mutex<DcaEngine>,
}

impl LiveDca {
    pub fn new(params: &DcaParams, weights: WeightMatrix) -> Result<Self, DcaError> {
        Ok(Self {
            inner: Mutex::new(DcaEngine::new(params, weights)?),
        })
    }

    pub fn update_signals(&self, frame: NormalizedSignalFrame) {
        self.inner.lock().unwrap().update_signals(frame);
    }

    pub fn ingest_antigen(&self, events: &[AntigenEvent]) {
        let mut engine = self.inner.lock().unwrap();
        for e in events {
            engine.ingest_antigen(*e);
        }
    }

    pub fn cycle(&self) -> Vec<PresentedAntigenRecord> {
        self.inner.lock().unwrap().cycle()
    }

    pub fn finish(self) -> (Vec<PresentedAntigenRecord>, RunStats) {
        self.inner.into_inner().unwrap().finish()
    }
}
