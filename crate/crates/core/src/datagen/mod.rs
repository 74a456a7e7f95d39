//! Deterministic synthetic sessions: SYN-scan traffic shapes and
//! per-process system-call streams for desk-scale experiments.
//!
//! Two scenario families: passive-normal (scan plus its shell, background
//! browsing influencing signals only) and active-normal (scan running
//! alongside a busy browser whose system calls also form antigen). The
//! scan's traffic follows a spiky envelope - probe burst, targeted
//! scanning, teardown - and the scan process's antigen rate follows the
//! same envelope, so quiet scan seconds emit little.

mod session;

pub use session::{generate_session, training_corpus};

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum DatagenError {
    #[error("invalid scenario: {0}")]
    InvalidScenario(String),
}

/// Scenario family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScenarioKind {
    PassiveNormal,
    ActiveNormal,
}

/// Monitored process names.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProcessName {
    Nmap,
    Pts,
    Firefox,
    Sshd,
}

impl ProcessName {
    pub fn as_str(&self) -> &'static str {
        match self {
            ProcessName::Nmap => "nmap",
            ProcessName::Pts => "pts",
            ProcessName::Firefox => "firefox",
            ProcessName::Sshd => "sshd",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "nmap" => Some(ProcessName::Nmap),
            "pts" => Some(ProcessName::Pts),
            "firefox" => Some(ProcessName::Firefox),
            "sshd" => Some(ProcessName::Sshd),
            _ => None,
        }
    }
}

/// System-call generator for one process: a log-normal shaped to the
/// observed mean/sd, capped at the observed session maximum.
#[derive(Debug, Clone, PartialEq)]
pub struct ProcessModel {
    pub name: ProcessName,
    pub pid: u32,
    /// Target mean system calls per active second.
    pub mean_calls_per_sec: f64,
    /// Target standard deviation per active second.
    pub sd_calls_per_sec: f64,
    /// Hard per-second cap (heavy right tail, bounded by the observed max).
    pub max_calls_per_sec: f64,
    /// Seconds [start, end) the process emits in.
    pub active_window: (u64, u64),
    /// Scale the rate by the scan envelope (the scan process goes quiet
    /// between its activity spikes).
    pub follows_scan_envelope: bool,
}

/// Ground truth for one process.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundTruthLabel {
    pub pid: u32,
    pub name: ProcessName,
    pub anomalous: bool,
}

/// One activity spike inside the scan window, as fractions of the window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpikeWindow {
    pub start_frac: f64,
    pub end_frac: f64,
    pub amplitude: f64,
}

/// Everything a session generation run needs.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub kind: ScenarioKind,
    pub duration: u64,
    pub scan_start: u64,
    pub scan_duration: u64,
    /// Activity spikes within the scan window; seconds outside any spike
    /// but inside the window idle at `cool_amplitude`.
    pub spikes: Vec<SpikeWindow>,
    /// Scan intensity between spikes.
    pub cool_amplitude: f64,
    /// Probability that a spike second actually bursts; probe pauses,
    /// response timeouts and result collation leave quiet seconds even
    /// mid-spike, and the scan process emits no system calls in them.
    pub flicker_probability: f64,
    pub processes: Vec<ProcessModel>,
    pub rng_seed: u64,
}

/// Reference session length the published scenarios use.
pub const REFERENCE_DURATION: u64 = 7_000;

/// Available targets out of the scanned address block.
pub const HOSTS_AVAILABLE: u32 = 70;
pub const HOSTS_SCANNED: u32 = 254;

pub const NMAP_PID: u32 = 3211;
pub const PTS_PID: u32 = 3207;
pub const FIREFOX_PID: u32 = 2866;
pub const SSHD_PID: u32 = 1754;

impl ScenarioConfig {
    /// Passive-normal at the reference 7,000 s duration.
    pub fn pn(seed: u64) -> Self {
        Self::pn_scaled(REFERENCE_DURATION, seed)
    }

    /// Active-normal at the reference 7,000 s duration.
    pub fn an(seed: u64) -> Self {
        Self::an_scaled(REFERENCE_DURATION, seed)
    }

    /// Passive-normal with every window scaled to `duration`. The scan
    /// opens almost immediately and winds down near 5500/7000 of the
    /// session; antigen comes from the scan, its pts shell, and the sshd
    /// session carrying them. The browser only shapes signals.
    pub fn pn_scaled(duration: u64, seed: u64) -> Self {
        let scale = duration as f64 / REFERENCE_DURATION as f64;
        let scan_start = (30.0 * scale).round() as u64;
        let scan_duration = (5_470.0 * scale).round() as u64;
        let scan_end = scan_start + scan_duration;
        let pts_end = scan_start + (scan_duration as f64 * 0.04).ceil() as u64;
        Self {
            kind: ScenarioKind::PassiveNormal,
            duration,
            scan_start,
            scan_duration,
            spikes: vec![
                SpikeWindow {
                    start_frac: 0.00,
                    end_frac: 0.25,
                    amplitude: 1.0,
                },
                SpikeWindow {
                    start_frac: 0.30,
                    end_frac: 0.65,
                    amplitude: 0.9,
                },
                SpikeWindow {
                    start_frac: 0.70,
                    end_frac: 0.90,
                    amplitude: 0.85,
                },
            ],
            cool_amplitude: 0.1,
            flicker_probability: 0.85,
            processes: vec![
                ProcessModel {
                    name: ProcessName::Nmap,
                    pid: NMAP_PID,
                    mean_calls_per_sec: 2_445.0,
                    sd_calls_per_sec: 1_243.0,
                    max_calls_per_sec: 11_758.0,
                    active_window: (scan_start, scan_end),
                    follows_scan_envelope: true,
                },
                ProcessModel {
                    name: ProcessName::Pts,
                    pid: PTS_PID,
                    mean_calls_per_sec: 150.0,
                    sd_calls_per_sec: 100.0,
                    max_calls_per_sec: 2_000.0,
                    active_window: (scan_start, pts_end),
                    follows_scan_envelope: false,
                },
                ProcessModel {
                    name: ProcessName::Sshd,
                    pid: SSHD_PID,
                    mean_calls_per_sec: 2.0,
                    sd_calls_per_sec: 1.0,
                    max_calls_per_sec: 20.0,
                    active_window: (0, duration),
                    follows_scan_envelope: false,
                },
            ],
            rng_seed: seed,
        }
    }

    /// Active-normal with every window scaled to `duration`. The scan
    /// starts at 651/7000 of the session with a browser active
    /// throughout, so browser system calls form antigen too.
    pub fn an_scaled(duration: u64, seed: u64) -> Self {
        let scale = duration as f64 / REFERENCE_DURATION as f64;
        let scan_start = (651.0 * scale).round() as u64;
        let scan_duration = (4_100.0 * scale).round() as u64;
        let scan_end = scan_start + scan_duration;
        let pts_end = scan_start + (scan_duration as f64 * 0.04).ceil() as u64;
        Self {
            kind: ScenarioKind::ActiveNormal,
            duration,
            scan_start,
            scan_duration,
            spikes: vec![
                SpikeWindow {
                    start_frac: 0.00,
                    end_frac: 0.30,
                    amplitude: 1.0,
                },
                SpikeWindow {
                    start_frac: 0.33,
                    end_frac: 0.68,
                    amplitude: 0.9,
                },
                SpikeWindow {
                    start_frac: 0.72,
                    end_frac: 0.97,
                    amplitude: 0.85,
                },
            ],
            cool_amplitude: 0.1,
            flicker_probability: 0.85,
            processes: vec![
                ProcessModel {
                    name: ProcessName::Nmap,
                    pid: NMAP_PID,
                    mean_calls_per_sec: 2_445.0,
                    sd_calls_per_sec: 1_243.0,
                    max_calls_per_sec: 11_758.0,
                    active_window: (scan_start, scan_end),
                    follows_scan_envelope: true,
                },
                ProcessModel {
                    name: ProcessName::Pts,
                    pid: PTS_PID,
                    mean_calls_per_sec: 150.0,
                    sd_calls_per_sec: 100.0,
                    max_calls_per_sec: 2_000.0,
                    active_window: (scan_start, pts_end),
                    follows_scan_envelope: false,
                },
                ProcessModel {
                    name: ProcessName::Firefox,
                    pid: FIREFOX_PID,
                    mean_calls_per_sec: 880.0,
                    sd_calls_per_sec: 840.0,
                    max_calls_per_sec: 7_156.0,
                    active_window: (0, duration),
                    follows_scan_envelope: false,
                },
                ProcessModel {
                    name: ProcessName::Sshd,
                    pid: SSHD_PID,
                    mean_calls_per_sec: 2.0,
                    sd_calls_per_sec: 1.0,
                    max_calls_per_sec: 20.0,
                    active_window: (0, duration),
                    follows_scan_envelope: false,
                },
            ],
            rng_seed: seed,
        }
    }

    pub fn scan_end(&self) -> u64 {
        self.scan_start + self.scan_duration
    }

    /// True for seconds inside the scan window.
    pub fn in_scan(&self, t: u64) -> bool {
        t >= self.scan_start && t < self.scan_end()
    }

    /// Scan intensity at second `t`: a spike amplitude, the cool idle
    /// level between spikes, or zero outside the window.
    pub fn envelope(&self, t: u64) -> f64 {
        if !self.in_scan(t) {
            return 0.0;
        }
        let frac = (t - self.scan_start) as f64 / self.scan_duration.max(1) as f64;
        for s in &self.spikes {
            if frac >= s.start_frac && frac < s.end_frac {
                return s.amplitude;
            }
        }
        self.cool_amplitude
    }

    /// Ground truth per configured process.
    pub fn labels(&self) -> Vec<GroundTruthLabel> {
        self.processes
            .iter()
            .map(|p| GroundTruthLabel {
                pid: p.pid,
                name: p.name,
                anomalous: matches!(p.name, ProcessName::Nmap | ProcessName::Pts),
            })
            .collect()
    }

    pub fn validate(&self) -> Result<(), DatagenError> {
        if self.duration == 0 {
            return Err(DatagenError::InvalidScenario("duration must be > 0".into()));
        }
        if self.scan_end() > self.duration {
            return Err(DatagenError::InvalidScenario(format!(
                "scan window {}..{} exceeds duration {}",
                self.scan_start,
                self.scan_end(),
                self.duration
            )));
        }
        for s in &self.spikes {
            if !(0.0..=1.0).contains(&s.start_frac)
                || !(0.0..=1.0).contains(&s.end_frac)
                || s.start_frac >= s.end_frac
                || s.amplitude <= 0.0
            {
                return Err(DatagenError::InvalidScenario(format!(
                    "bad spike window {s:?}"
                )));
            }
        }
        if !(0.0..=1.0).contains(&self.flicker_probability) {
            return Err(DatagenError::InvalidScenario(format!(
                "flicker probability {} outside [0, 1]",
                self.flicker_probability
            )));
        }
        for p in &self.processes {
            if p.mean_calls_per_sec < 0.0 || p.sd_calls_per_sec < 0.0 {
                return Err(DatagenError::InvalidScenario(format!(
                    "negative rate for {}",
                    p.name.as_str()
                )));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_configs_are_valid() {
        assert!(ScenarioConfig::pn(1).validate().is_ok());
        assert!(ScenarioConfig::an(1).validate().is_ok());
    }

    #[test]
    fn an_scan_opens_at_the_documented_second() {
        let c = ScenarioConfig::an(0);
        assert_eq!(c.scan_start, 651);
        assert_eq!(c.duration, 7_000);
    }

    #[test]
    fn scaling_keeps_proportions() {
        let c = ScenarioConfig::an_scaled(700, 0);
        assert_eq!(c.scan_start, 65);
        assert_eq!(c.scan_duration, 410);
        assert!(c.validate().is_ok());
    }

    #[test]
    fn envelope_zero_outside_scan_and_spiky_inside() {
        let c = ScenarioConfig::pn(0);
        assert_eq!(c.envelope(0), 0.0);
        assert_eq!(c.envelope(c.scan_end()), 0.0);
        assert_eq!(c.envelope(c.scan_start), 1.0); // first spike
                                                   // A second in the 0.25..0.30 gap idles cool.
        let gap = c.scan_start + (c.scan_duration as f64 * 0.27) as u64;
        assert_eq!(c.envelope(gap), c.cool_amplitude);
    }

    #[test]
    fn pn_antigen_sources_exclude_firefox() {
        let c = ScenarioConfig::pn(0);
        assert!(c.processes.iter().all(|p| p.name != ProcessName::Firefox));
        let labels = c.labels();
        assert!(labels
            .iter()
            .any(|l| l.name == ProcessName::Nmap && l.anomalous));
        assert!(labels
            .iter()
            .any(|l| l.name == ProcessName::Sshd && !l.anomalous));
    }

    #[test]
    fn invalid_windows_rejected() {
        let mut c = ScenarioConfig::pn(0);
        c.scan_start = 6_000;
        c.scan_duration = 2_000;
        assert!(c.validate().is_err());

        let mut c = ScenarioConfig::pn(0);
        c.duration = 0;
        assert!(c.validate().is_err());
    }
}
