//! Per-second synthesis of raw telemetry and antigen streams.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::{Distribution, LogNormal};

use crate::dca::AntigenEvent;
use crate::rng::{seeded, SessionRng};
use crate::signal::{NormalizedSignalFrame, RawSample, SignalPipeline};

use super::{DatagenError, GroundTruthLabel, ProcessModel, ScenarioConfig};

/// Log-normal with the moments of the configured per-second rate.
fn rate_distribution(model: &ProcessModel) -> Option<LogNormal<f64>> {
    if model.mean_calls_per_sec <= 0.0 {
        return None;
    }
    let mean = model.mean_calls_per_sec;
    let sd = model.sd_calls_per_sec.max(1e-9);
    let sigma2 = (1.0 + (sd / mean).powi(2)).ln();
    let mu = mean.ln() - sigma2 / 2.0;
    LogNormal::new(mu, sigma2.sqrt()).ok()
}

/// Browsing-shaped background telemetry; also the whole story for
/// training sessions.
fn normal_raw_sample(t: u64, rng: &mut SessionRng) -> RawSample {
    let base_pkts = rng.gen_range(15.0..250.0);
    let tcp_frac = rng.gen_range(0.35..0.70);
    let du = if rng.gen_bool(0.03) {
        rng.gen_range(1.0..2.0)
    } else {
        0.0
    };
    RawSample {
        timestamp: t,
        icmp_du_per_sec: du,
        rst_per_sec: rng.gen_range(0.0..2.0),
        pkts_sent_per_sec: base_pkts,
        tcp_pkts_per_sec: base_pkts * tcp_frac,
        all_pkts_per_sec: base_pkts,
        pkt_rate_of_change: rng.gen_range(8.0..45.0),
        avg_pkt_size_bytes: rng.gen_range(70.0..90.0),
        root_login_active: false,
    }
}

/// Background plus a scan contribution scaled by the envelope: DU errors
/// from firewalled targets, RST floods, TCP-only 40-byte probe bursts,
/// and the root login carrying the scan.
fn scan_raw_sample(t: u64, envelope: f64, in_scan: bool, rng: &mut SessionRng) -> RawSample {
    use super::{HOSTS_AVAILABLE, HOSTS_SCANNED};
    let mut sample = normal_raw_sample(t, rng);
    if envelope > 0.0 {
        // Probes to addresses without a reachable host come back as ICMP
        // destination-unreachable errors.
        let unreachable = (HOSTS_SCANNED - HOSTS_AVAILABLE) as f64 / HOSTS_SCANNED as f64;
        let scan_pkts = envelope * rng.gen_range(900.0..1_500.0);
        let scan_rst = envelope * rng.gen_range(70.0..150.0);
        let scan_du = envelope * unreachable * rng.gen_range(14.0..28.0);
        let base = sample.all_pkts_per_sec;
        let base_size = sample.avg_pkt_size_bytes;
        sample.icmp_du_per_sec += scan_du;
        sample.rst_per_sec += scan_rst;
        sample.pkts_sent_per_sec += scan_pkts;
        sample.tcp_pkts_per_sec += scan_pkts;
        sample.all_pkts_per_sec += scan_pkts;
        sample.pkt_rate_of_change += envelope * rng.gen_range(100.0..200.0);
        // Probe packets are 40-byte SYN/RST frames; the mean shifts
        // toward 40 with the traffic mix.
        sample.avg_pkt_size_bytes = (base * base_size + scan_pkts * 40.0) / (base + scan_pkts);
    }
    sample.root_login_active = in_scan;
    sample
}

/// A generated session: per-second raw telemetry, the antigen event
/// stream, and ground-truth labels.
pub type SessionData = (Vec<RawSample>, Vec<AntigenEvent>, Vec<GroundTruthLabel>);

/// Generates one session.
pub fn generate_session(config: &ScenarioConfig) -> Result<SessionData, DatagenError> {
    config.validate()?;
    let mut rng = seeded(config.rng_seed);
    let distributions: Vec<Option<LogNormal<f64>>> =
        config.processes.iter().map(rate_distribution).collect();

    let mut samples = Vec::with_capacity(config.duration as usize);
    let mut events = Vec::new();
    let mut second_events: Vec<AntigenEvent> = Vec::new();

    for t in 0..config.duration {
        // A spike second only bursts if the flicker roll says so; quiet
        // spike seconds fall back to the idle scan level.
        let mut envelope = config.envelope(t);
        if envelope > config.cool_amplitude && !rng.gen_bool(config.flicker_probability) {
            envelope = config.cool_amplitude;
        }
        samples.push(scan_raw_sample(t, envelope, config.in_scan(t), &mut rng));

        second_events.clear();
        for (model, dist) in config.processes.iter().zip(&distributions) {
            if t < model.active_window.0 || t >= model.active_window.1 {
                continue;
            }
            let Some(dist) = dist else { continue };
            let scale = if model.follows_scan_envelope {
                envelope
            } else {
                1.0
            };
            if scale <= 0.0 {
                continue;
            }
            let rate = (dist.sample(&mut rng) * scale).min(model.max_calls_per_sec * scale);
            let count = rate.round() as u64;
            for _ in 0..count {
                second_events.push(AntigenEvent {
                    timestamp: t,
                    antigen_type: model.pid,
                });
            }
        }
        // Interleave processes within the second so FIFO eviction is not
        // biased by generation order.
        second_events.shuffle(&mut rng);
        events.append(&mut second_events);
    }
    Ok((samples, events, config.labels()))
}

/// Normal-only training sessions: scan-free telemetry through the signal
/// pipeline, frames only. Session `i` is seeded `seed + i`.
pub fn training_corpus(n_sessions: usize, seed: u64) -> Vec<Vec<NormalizedSignalFrame>> {
    const TRAINING_SESSION_SECS: u64 = 3_600;
    (0..n_sessions)
        .map(|i| {
            let mut rng = seeded(seed + i as u64);
            let samples: Vec<RawSample> = (0..TRAINING_SESSION_SECS)
                .map(|t| normal_raw_sample(t, &mut rng))
                .collect();
            SignalPipeline::run(&samples).expect("normal telemetry is always in-domain")
        })
        .collect()
}
