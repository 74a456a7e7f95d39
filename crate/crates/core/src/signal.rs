//! Signal normalization: raw per-second host telemetry into the seven
//! input signals the detectors consume.
//!
//! Seven signals per second: two PAMPs (ICMP destination-unreachable
//! errors, TCP RSTs), two danger signals (packet send rate through a
//! sigmoid, TCP-to-all-packets ratio), two safe signals (inverse packet
//! rate-of-change, banded 60-second mean packet size) and a binary
//! inflammation signal from root-login presence. All real-valued signals
//! land in [0, 100].

use std::collections::VecDeque;

use thiserror::Error;

/// Seconds the SS-2 packet-size mean looks back over.
pub const SS2_WINDOW_SECS: usize = 60;

/// Number of signal attributes in a frame (six reals plus inflammation).
pub const SIGNAL_DIM: usize = 7;

#[derive(Debug, Error, PartialEq)]
pub enum SignalError {
    #[error("{signal} must be non-negative, got {value}")]
    NegativeInput { signal: &'static str, value: f64 },
    #[error("tcp packet rate {tcp} exceeds all-packet rate {all}")]
    TcpExceedsAll { tcp: f64, all: f64 },
    #[error("non-monotonic timestamp: previous {previous}, got {got}")]
    NonMonotonicTimestamp { previous: u64, got: u64 },
}

/// One second of raw host telemetry, prior to normalization.
#[derive(Debug, Clone, PartialEq)]
pub struct RawSample {
    /// Seconds since session start.
    pub timestamp: u64,
    /// ICMP destination-unreachable errors received per second.
    pub icmp_du_per_sec: f64,
    /// TCP RST packets sent and received per second.
    pub rst_per_sec: f64,
    /// Network packets sent per second.
    pub pkts_sent_per_sec: f64,
    /// TCP packets handled per second.
    pub tcp_pkts_per_sec: f64,
    /// All packets handled per second.
    pub all_pkts_per_sec: f64,
    /// Moving-average rate of change of packet sending.
    pub pkt_rate_of_change: f64,
    /// Mean packet size this second, bytes.
    pub avg_pkt_size_bytes: f64,
    /// Remote root login currently active.
    pub root_login_active: bool,
}

impl RawSample {
    /// All-zero telemetry at a given second.
    pub fn zero(timestamp: u64) -> Self {
        Self {
            timestamp,
            icmp_du_per_sec: 0.0,
            rst_per_sec: 0.0,
            pkts_sent_per_sec: 0.0,
            tcp_pkts_per_sec: 0.0,
            all_pkts_per_sec: 0.0,
            pkt_rate_of_change: 0.0,
            avg_pkt_size_bytes: 0.0,
            root_login_active: false,
        }
    }
}

/// One timestamped vector of the seven normalized signals.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedSignalFrame {
    pub timestamp: u64,
    pub pamp1: f64,
    pub pamp2: f64,
    pub ds1: f64,
    pub ds2: f64,
    pub ss1: f64,
    pub ss2: f64,
    /// 0 or 1.
    pub inflammation: u8,
}

impl NormalizedSignalFrame {
    /// The frame as a feature vector: the six reals plus inflammation.
    pub fn to_vector(&self) -> [f64; SIGNAL_DIM] {
        [
            self.pamp1,
            self.pamp2,
            self.ds1,
            self.ds2,
            self.ss1,
            self.ss2,
            self.inflammation as f64,
        ]
    }

    /// Sum of the signals in each category: (PAMP, danger, safe).
    pub fn category_sums(&self) -> (f64, f64, f64) {
        (
            self.pamp1 + self.pamp2,
            self.ds1 + self.ds2,
            self.ss1 + self.ss2,
        )
    }
}

/// Trailing window of per-second mean packet sizes feeding SS-2.
///
/// Seeds empty; until 60 samples have arrived the mean covers whatever is
/// present.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Ss2State {
    window: VecDeque<f64>,
}

impl Ss2State {
    pub fn new() -> Self {
        Self::default()
    }

    /// Pushes one per-second value, dropping the oldest beyond 60 entries.
    pub fn push(&mut self, avg_pkt_size: f64) {
        if self.window.len() == SS2_WINDOW_SECS {
            self.window.pop_front();
        }
        self.window.push_back(avg_pkt_size);
    }

    /// Mean over the populated entries; zero when empty.
    pub fn mean(&self) -> f64 {
        if self.window.is_empty() {
            return 0.0;
        }
        self.window.iter().sum::<f64>() / self.window.len() as f64
    }

    pub fn len(&self) -> usize {
        self.window.len()
    }

    pub fn is_empty(&self) -> bool {
        self.window.is_empty()
    }
}

fn require_non_negative(signal: &'static str, value: f64) -> Result<(), SignalError> {
    if value < 0.0 || value.is_nan() {
        Err(SignalError::NegativeInput { signal, value })
    } else {
        Ok(())
    }
}

/// PAMP-1: ICMP destination-unreachable errors, five-fold and capped at 100.
pub fn normalize_pamp1(raw: f64) -> Result<f64, SignalError> {
    require_non_negative("pamp1 (icmp du/s)", raw)?;
    Ok((raw * 5.0).min(100.0))
}

/// PAMP-2: RSTs per second, linear with a cap at 100.
pub fn normalize_pamp2(raw: f64) -> Result<f64, SignalError> {
    require_non_negative("pamp2 (rst/s)", raw)?;
    Ok(raw.min(100.0))
}

/// DS-1: packets sent per second through a base-2 sigmoid centered on 750/s.
///
/// The output cap dominates the nominal 1500/s input cap: the sigmoid is
/// ~99.45 there and asymptotic to 100, so larger inputs saturate rather
/// than error.
pub fn normalize_ds1(raw: f64) -> Result<f64, SignalError> {
    require_non_negative("ds1 (pkts/s)", raw)?;
    let sigmoid = 100.0 / (1.0 + 2f64.powf(7.5 - raw / 100.0));
    Ok(sigmoid.min(100.0))
}

/// DS-2: TCP share of all packets, scaled to [0, 100]. No traffic maps to 0.
pub fn normalize_ds2(tcp: f64, all: f64) -> Result<f64, SignalError> {
    require_non_negative("ds2 tcp rate", tcp)?;
    require_non_negative("ds2 all-packets rate", all)?;
    if tcp > all {
        return Err(SignalError::TcpExceedsAll { tcp, all });
    }
    if all == 0.0 {
        return Ok(0.0);
    }
    Ok(tcp / all * 100.0)
}

/// SS-1: inverse packet rate-of-change; steady sending reads as safe.
pub fn normalize_ss1(raw: f64) -> Result<f64, SignalError> {
    require_non_negative("ss1 (rate of change)", raw)?;
    Ok(((100.0 - raw) * 10.0 / 9.0).clamp(0.0, 100.0))
}

/// SS-2: banded 60-second mean packet size.
///
/// Bands over the real-valued mean: `<= 45 -> 0`, `(45, 50] -> 10`,
/// `(50, 60] -> 50`, `> 60 -> 100`. Means below 40 (smaller than a bare
/// SYN) score 0 like the 40-45 band.
pub fn normalize_ss2(state: &mut Ss2State, avg_pkt_size: f64) -> Result<f64, SignalError> {
    require_non_negative("ss2 (avg packet size)", avg_pkt_size)?;
    state.push(avg_pkt_size);
    Ok(ss2_band(state.mean()))
}

/// The SS-2 step function over a window mean.
pub fn ss2_band(mean: f64) -> f64 {
    if mean > 60.0 {
        100.0
    } else if mean > 50.0 {
        50.0
    } else if mean > 45.0 {
        10.0
    } else {
        0.0
    }
}

/// Inflammation: 1 while a remote root login is active.
pub fn inflammation_signal(root_login_active: bool) -> u8 {
    root_login_active as u8
}

/// Per-session normalizer. Owns the SS-2 window and enforces strictly
/// increasing timestamps; one instance per session, driven from one thread.
#[derive(Debug, Clone, Default)]
pub struct SignalPipeline {
    ss2: Ss2State,
    last_timestamp: Option<u64>,
}

impl SignalPipeline {
    pub fn new() -> Self {
        Self::default()
    }

    /// Read-only view of the SS-2 window, for replay/equality checks.
    pub fn ss2_state(&self) -> &Ss2State {
        &self.ss2
    }

    /// Applies all seven normalizers to one raw sample.
    pub fn build_frame(
        &mut self,
        sample: &RawSample,
    ) -> Result<NormalizedSignalFrame, SignalError> {
        if let Some(prev) = self.last_timestamp {
            if sample.timestamp <= prev {
                return Err(SignalError::NonMonotonicTimestamp {
                    previous: prev,
                    got: sample.timestamp,
                });
            }
        }
        let frame = NormalizedSignalFrame {
            timestamp: sample.timestamp,
            pamp1: normalize_pamp1(sample.icmp_du_per_sec)?,
            pamp2: normalize_pamp2(sample.rst_per_sec)?,
            ds1: normalize_ds1(sample.pkts_sent_per_sec)?,
            ds2: normalize_ds2(sample.tcp_pkts_per_sec, sample.all_pkts_per_sec)?,
            ss1: normalize_ss1(sample.pkt_rate_of_change)?,
            ss2: normalize_ss2(&mut self.ss2, sample.avg_pkt_size_bytes)?,
            inflammation: inflammation_signal(sample.root_login_active),
        };
        self.last_timestamp = Some(sample.timestamp);
        Ok(frame)
    }

    /// Normalizes a whole raw stream in order.
    pub fn run(samples: &[RawSample]) -> Result<Vec<NormalizedSignalFrame>, SignalError> {
        let mut pipeline = Self::new();
        samples.iter().map(|s| pipeline.build_frame(s)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const TOL: f64 = 1e-9;

    // High-precision golden values, computed independently with a 40-digit
    // evaluator before the implementation was written; kept verbatim.
    #[allow(clippy::excessive_precision)]
    const DS1_AT_0: f64 = 0.549_392_181_108_298_490;
    #[allow(clippy::excessive_precision)]
    const DS1_AT_1500: f64 = 99.450_607_818_891_701_51;

    #[test]
    fn pamp1_golden() {
        assert!((normalize_pamp1(20.0).unwrap() - 100.0).abs() < TOL);
        assert_eq!(normalize_pamp1(0.0).unwrap(), 0.0);
        assert!((normalize_pamp1(7.0).unwrap() - 35.0).abs() < TOL);
    }

    #[test]
    fn pamp2_golden() {
        assert_eq!(normalize_pamp2(250.0).unwrap(), 100.0);
        assert_eq!(normalize_pamp2(0.0).unwrap(), 0.0);
        assert!((normalize_pamp2(42.0).unwrap() - 42.0).abs() < TOL);
    }

    #[test]
    fn ds1_golden() {
        assert!((normalize_ds1(750.0).unwrap() - 50.0).abs() < TOL);
        assert!((normalize_ds1(0.0).unwrap() - DS1_AT_0).abs() < TOL);
        assert!((normalize_ds1(1500.0).unwrap() - DS1_AT_1500).abs() < TOL);
    }

    #[test]
    fn ds1_accepts_rates_above_nominal_cap() {
        let v = normalize_ds1(5000.0).unwrap();
        assert!(v > DS1_AT_1500 && v <= 100.0);
    }

    #[test]
    fn ds2_golden() {
        assert!((normalize_ds2(50.0, 100.0).unwrap() - 50.0).abs() < TOL);
        assert_eq!(normalize_ds2(0.0, 100.0).unwrap(), 0.0);
        assert!((normalize_ds2(99.0, 100.0).unwrap() - 99.0).abs() < TOL);
        assert_eq!(normalize_ds2(0.0, 0.0).unwrap(), 0.0);
        assert_eq!(
            normalize_ds2(2.0, 1.0),
            Err(SignalError::TcpExceedsAll { tcp: 2.0, all: 1.0 })
        );
    }

    #[test]
    fn ss1_golden() {
        assert!((normalize_ss1(10.0).unwrap() - 100.0).abs() < TOL);
        assert_eq!(normalize_ss1(100.0).unwrap(), 0.0);
        assert!((normalize_ss1(55.0).unwrap() - 50.0).abs() < TOL);
        assert_eq!(normalize_ss1(250.0).unwrap(), 0.0);
    }

    #[test]
    fn ss2_band_golden() {
        let mut st = Ss2State::new();
        assert_eq!(normalize_ss2(&mut st, 42.0).unwrap(), 0.0);
        let mut st = Ss2State::new();
        assert_eq!(normalize_ss2(&mut st, 80.0).unwrap(), 100.0);
        let mut st = Ss2State::new();
        assert_eq!(normalize_ss2(&mut st, 55.0).unwrap(), 50.0);
    }

    #[test]
    fn ss2_band_boundaries() {
        assert_eq!(ss2_band(39.0), 0.0);
        assert_eq!(ss2_band(45.0), 0.0);
        assert_eq!(ss2_band(45.000001), 10.0);
        assert_eq!(ss2_band(50.0), 10.0);
        assert_eq!(ss2_band(60.0), 50.0);
        assert_eq!(ss2_band(60.000001), 100.0);
    }

    #[test]
    fn ss2_window_holds_sixty() {
        let mut st = Ss2State::new();
        for _ in 0..100 {
            st.push(80.0);
        }
        assert_eq!(st.len(), SS2_WINDOW_SECS);
        assert!((st.mean() - 80.0).abs() < TOL);
        // A single new value shifts the mean by 1/60th of its delta.
        st.push(20.0);
        assert_eq!(st.len(), SS2_WINDOW_SECS);
        assert!((st.mean() - 79.0).abs() < TOL);
    }

    #[test]
    fn ss2_partial_window_uses_present_entries() {
        let mut st = Ss2State::new();
        st.push(40.0);
        st.push(50.0);
        assert!((st.mean() - 45.0).abs() < TOL);
    }

    #[test]
    fn inflammation_is_stateless_identity() {
        assert_eq!(inflammation_signal(true), 1);
        assert_eq!(inflammation_signal(false), 0);
        let seq: Vec<u8> = [true, true, false]
            .iter()
            .map(|&b| inflammation_signal(b))
            .collect();
        assert_eq!(seq, vec![1, 1, 0]);
    }

    #[test]
    fn negative_inputs_rejected() {
        assert!(normalize_pamp1(-1.0).is_err());
        assert!(normalize_pamp2(-0.5).is_err());
        assert!(normalize_ds1(-2.0).is_err());
        assert!(normalize_ds2(-1.0, 5.0).is_err());
        assert!(normalize_ss1(-1.0).is_err());
        let mut st = Ss2State::new();
        assert!(normalize_ss2(&mut st, -1.0).is_err());
    }

    #[test]
    fn build_frame_all_zero_sample() {
        let mut p = SignalPipeline::new();
        let f = p.build_frame(&RawSample::zero(0)).unwrap();
        assert_eq!(f.pamp1, 0.0);
        assert_eq!(f.pamp2, 0.0);
        assert!((f.ds1 - DS1_AT_0).abs() < TOL);
        assert_eq!(f.ds2, 0.0);
        assert_eq!(f.ss1, 100.0); // (100 - 0) * 10/9 clamps to 100
        assert_eq!(f.ss2, 0.0);
        assert_eq!(f.inflammation, 0);
    }

    #[test]
    fn build_frame_scan_burst_sample() {
        let sample = RawSample {
            timestamp: 0,
            icmp_du_per_sec: 20.0,
            rst_per_sec: 150.0,
            pkts_sent_per_sec: 1500.0,
            tcp_pkts_per_sec: 1500.0,
            all_pkts_per_sec: 1500.0,
            pkt_rate_of_change: 200.0,
            avg_pkt_size_bytes: 40.0,
            root_login_active: true,
        };
        let mut p = SignalPipeline::new();
        let f = p.build_frame(&sample).unwrap();
        assert_eq!(f.pamp1, 100.0);
        assert_eq!(f.pamp2, 100.0);
        assert!((f.ds1 - DS1_AT_1500).abs() < TOL);
        assert_eq!(f.ds2, 100.0);
        assert_eq!(f.ss1, 0.0);
        assert_eq!(f.ss2, 0.0);
        assert_eq!(f.inflammation, 1);
    }

    #[test]
    fn build_frame_deterministic_for_equal_state() {
        let sample = RawSample {
            timestamp: 3,
            icmp_du_per_sec: 2.0,
            rst_per_sec: 1.0,
            pkts_sent_per_sec: 120.0,
            tcp_pkts_per_sec: 60.0,
            all_pkts_per_sec: 120.0,
            pkt_rate_of_change: 30.0,
            avg_pkt_size_bytes: 81.0,
            root_login_active: false,
        };
        let mut a = SignalPipeline::new();
        let mut b = SignalPipeline::new();
        // Same window contents in both pipelines.
        for p in [&mut a, &mut b] {
            p.build_frame(&RawSample {
                timestamp: 2,
                avg_pkt_size_bytes: 77.0,
                ..RawSample::zero(2)
            })
            .unwrap();
        }
        assert_eq!(
            a.build_frame(&sample).unwrap(),
            b.build_frame(&sample).unwrap()
        );
    }

    #[test]
    fn non_monotonic_timestamp_rejected() {
        let mut p = SignalPipeline::new();
        p.build_frame(&RawSample::zero(5)).unwrap();
        let err = p.build_frame(&RawSample::zero(5)).unwrap_err();
        assert_eq!(
            err,
            SignalError::NonMonotonicTimestamp {
                previous: 5,
                got: 5
            }
        );
        assert!(p.build_frame(&RawSample::zero(4)).is_err());
        assert!(p.build_frame(&RawSample::zero(6)).is_ok());
    }

    #[test]
    fn replay_is_bit_identical() {
        let samples: Vec<RawSample> = (0..200)
            .map(|t| RawSample {
                timestamp: t,
                icmp_du_per_sec: (t % 7) as f64,
                rst_per_sec: (t % 13) as f64 * 3.0,
                pkts_sent_per_sec: 100.0 + (t % 50) as f64 * 17.0,
                tcp_pkts_per_sec: 40.0 + (t % 30) as f64,
                all_pkts_per_sec: 100.0 + (t % 50) as f64 * 17.0,
                pkt_rate_of_change: (t % 90) as f64,
                avg_pkt_size_bytes: 40.0 + (t % 60) as f64,
                root_login_active: t % 11 == 0,
            })
            .collect();
        let first = SignalPipeline::run(&samples).unwrap();
        let second = SignalPipeline::run(&samples).unwrap();
        assert_eq!(first, second);
    }

    #[test]
    fn ds1_strictly_increasing_on_domain() {
        let mut prev = normalize_ds1(0.0).unwrap();
        for i in 1..=1500 {
            let v = normalize_ds1(i as f64).unwrap();
            assert!(v > prev, "ds1 not increasing at {i}");
            prev = v;
        }
    }

    proptest! {
        #[test]
        fn outputs_always_in_range(
            du in 0.0..1e4f64,
            rst in 0.0..1e4f64,
            pkts in 0.0..1e5f64,
            tcp_frac in 0.0..=1.0f64,
            all in 0.0..1e5f64,
            roc in 0.0..1e4f64,
            size in 0.0..1e4f64,
            root: bool,
        ) {
            let sample = RawSample {
                timestamp: 0,
                icmp_du_per_sec: du,
                rst_per_sec: rst,
                pkts_sent_per_sec: pkts,
                tcp_pkts_per_sec: all * tcp_frac,
                all_pkts_per_sec: all,
                pkt_rate_of_change: roc,
                avg_pkt_size_bytes: size,
                root_login_active: root,
            };
            let mut p = SignalPipeline::new();
            let f = p.build_frame(&sample).unwrap();
            for v in [f.pamp1, f.pamp2, f.ds1, f.ds2, f.ss1, f.ss2] {
                prop_assert!((0.0..=100.0).contains(&v));
            }
            prop_assert!(f.inflammation <= 1);
        }

        #[test]
        fn ss1_non_increasing(a in 0.0..500.0f64, b in 0.0..500.0f64) {
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            prop_assert!(normalize_ss1(lo).unwrap() >= normalize_ss1(hi).unwrap());
        }

        #[test]
        fn ss2_output_is_banded(values in proptest::collection::vec(0.0..200.0f64, 1..80)) {
            let mut st = Ss2State::new();
            let mut last = 0.0;
            for v in values {
                last = normalize_ss2(&mut st, v).unwrap();
            }
            prop_assert!([0.0, 10.0, 50.0, 100.0].contains(&last));
        }
    }
}
