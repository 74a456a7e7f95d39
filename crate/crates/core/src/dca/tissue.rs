//! The tissue compartment: current signal frame plus the antigen store.

use std::collections::VecDeque;

use crate::signal::NormalizedSignalFrame;

/// One antigen instance: a process ID observed at a given second. Many
/// events share one antigen type.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AntigenEvent {
    pub timestamp: u64,
    /// Process ID; a label only, never pattern-matched.
    pub antigen_type: u32,
}

/// Shared store the cell population samples from.
///
/// Signals are overwritten in place each update; antigen queues FIFO with
/// the oldest unsampled event evicted on overflow.
#[derive(Debug, Clone)]
pub struct Tissue {
    frame: Option<NormalizedSignalFrame>,
    store: VecDeque<AntigenEvent>,
    capacity: usize,
    evicted: u64,
}

impl Tissue {
    pub fn new(capacity: usize) -> Self {
        Self {
            frame: None,
            store: VecDeque::with_capacity(capacity),
            capacity,
            evicted: 0,
        }
    }

    /// Latest signal frame, if any update has happened yet.
    pub fn frame(&self) -> Option<&NormalizedSignalFrame> {
        self.frame.as_ref()
    }

    pub fn store_len(&self) -> usize {
        self.store.len()
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    /// Events evicted by overflow so far.
    pub fn evicted(&self) -> u64 {
        self.evicted
    }

    /// Overwrites the signal matrix; the previous frame is unrecoverable.
    pub fn update_signals(&mut self, frame: NormalizedSignalFrame) {
        self.frame = Some(frame);
    }

    /// Appends one event, evicting the oldest if the store is full.
    /// Returns the evicted event, if any.
    pub fn ingest(&mut self, event: AntigenEvent) -> Option<AntigenEvent> {
        let evicted = if self.store.len() == self.capacity {
            self.evicted += 1;
            self.store.pop_front()
        } else {
            None
        };
        self.store.push_back(event);
        evicted
    }

    /// Removes up to `n` events from the head of the store.
    pub fn sample(&mut self, n: usize) -> impl Iterator<Item = AntigenEvent> + '_ {
        self.store.drain(..n.min(self.store.len()))
    }

    /// Drains whatever remains in the store (end of run).
    pub fn drain_remaining(&mut self) -> Vec<AntigenEvent> {
        self.store.drain(..).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(t: u64, pid: u32) -> AntigenEvent {
        AntigenEvent {
            timestamp: t,
            antigen_type: pid,
        }
    }

    fn any_frame(t: u64) -> NormalizedSignalFrame {
        NormalizedSignalFrame {
            timestamp: t,
            pamp1: 1.0,
            pamp2: 2.0,
            ds1: 3.0,
            ds2: 4.0,
            ss1: 5.0,
            ss2: 10.0,
            inflammation: 0,
        }
    }

    #[test]
    fn ingest_grows_until_capacity() {
        let mut t = Tissue::new(500);
        for i in 0..3 {
            assert!(t.ingest(ev(0, i)).is_none());
        }
        assert_eq!(t.store_len(), 3);
        assert_eq!(t.evicted(), 0);
    }

    #[test]
    fn overflow_evicts_oldest() {
        let mut t = Tissue::new(500);
        for i in 0..500 {
            t.ingest(ev(0, i));
        }
        let evicted = t.ingest(ev(1, 9999)).expect("store was full");
        assert_eq!(evicted, ev(0, 0));
        assert_eq!(t.store_len(), 500);
        assert_eq!(t.evicted(), 1);
    }

    #[test]
    fn signal_overwrite_drops_previous_frame() {
        let mut t = Tissue::new(10);
        t.update_signals(any_frame(0));
        t.update_signals(any_frame(1));
        assert_eq!(t.frame().unwrap().timestamp, 1);
    }

    #[test]
    fn sample_removes_from_head() {
        let mut t = Tissue::new(10);
        for i in 0..5 {
            t.ingest(ev(0, i));
        }
        let taken: Vec<_> = t.sample(3).collect();
        assert_eq!(taken, vec![ev(0, 0), ev(0, 1), ev(0, 2)]);
        assert_eq!(t.store_len(), 2);
        // Sampling more than present takes what exists.
        let taken: Vec<_> = t.sample(10).collect();
        assert_eq!(taken.len(), 2);
        assert_eq!(t.store_len(), 0);
    }
}
