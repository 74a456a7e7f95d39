//! `generate`: synthetic sessions and training corpora.

use std::path::Path;

use anyhow::Result;
use immunesom_core::datagen::{generate_session, training_corpus, ScenarioConfig};
use immunesom_core::io;

use crate::manifest::RunManifest;
use crate::{resolve_seed, Scenario};

use super::ensure_out_dir;

pub fn run(
    scenario: Scenario,
    out: &Path,
    duration: u64,
    sessions: usize,
    seed: Option<u64>,
) -> Result<()> {
    let seed = resolve_seed(seed, None)?;
    ensure_out_dir(out)?;
    let mut manifest = RunManifest::new("generate", seed);

    match scenario {
        Scenario::Pn | Scenario::An => {
            let config = match scenario {
                Scenario::Pn => ScenarioConfig::pn_scaled(duration, seed),
                Scenario::An => ScenarioConfig::an_scaled(duration, seed),
                Scenario::Training => unreachable!(),
            };
            let (samples, events, labels) = generate_session(&config)?;
            let raw = out.join("raw.csv");
            let antigen = out.join("antigen.csv");
            let labels_path = out.join("labels.csv");
            io::write_raw_csv(&raw, &samples)?;
            io::write_antigen_csv(&antigen, &events, &labels)?;
            io::write_labels_csv(&labels_path, &labels)?;
            manifest.output(&raw);
            manifest.output(&antigen);
            manifest.output(&labels_path);
            manifest.write(out)?;
            println!(
                "generated {} session: {} seconds, {} antigen events, scan {}..{}",
                match scenario {
                    Scenario::Pn => "pn",
                    _ => "an",
                },
                duration,
                events.len(),
                config.scan_start,
                config.scan_end(),
            );
        }
        Scenario::Training => {
            let corpus = training_corpus(sessions, seed);
            for (i, frames) in corpus.iter().enumerate() {
                let path = out.join(format!("session_{i:02}.csv"));
                io::write_frames_csv(&path, frames)?;
                manifest.output(&path);
            }
            manifest.write(out)?;
            println!(
                "generated training corpus: {} sessions of {} frames",
                corpus.len(),
                corpus.first().map_or(0, Vec::len)
            );
        }
    }
    Ok(())
}
