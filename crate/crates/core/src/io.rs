//! File formats: session CSVs, detector outputs, map snapshots, and the
//! key=value params files.
//!
//! All writers use fixed formatting so identical runs produce
//! byte-identical files; map weights serialize at 17 significant digits
//! for a lossless f64 round trip.

use std::fmt::Write as _;
use std::fs;
use std::io::{BufWriter, Write};
use std::path::Path;

use thiserror::Error;

use crate::analysis::SegmentSeries;
use crate::datagen::{GroundTruthLabel, ProcessName};
use crate::dca::{AntigenEvent, DcaParams, PresentedAntigenRecord};
use crate::signal::{NormalizedSignalFrame, RawSample};
use crate::som::{SomMap, SomParams};

#[derive(Debug, Error)]
pub enum FileFormatError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },
}

impl FileFormatError {
    fn io(path: &Path, source: std::io::Error) -> Self {
        Self::Io {
            path: path.display().to_string(),
            source,
        }
    }

    fn parse(path: &Path, line: usize, message: impl Into<String>) -> Self {
        Self::Parse {
            path: path.display().to_string(),
            line,
            message: message.into(),
        }
    }
}

pub const RAW_HEADER: &str = "t,icmp_du,rst,pkts,tcp_pkts,all_pkts,pkt_roc,avg_size,root";
pub const FRAME_HEADER: &str = "t,pamp1,pamp2,ds1,ds2,ss1,ss2,infl";
pub const ANTIGEN_HEADER: &str = "t,pid,name";
pub const LABELS_HEADER: &str = "pid,name,label";
pub const PRESENTED_HEADER: &str = "cycle,antigen_type,context,o_semi,o_mature,forced";
pub const SEGMENTS_HEADER: &str = "segment_index,antigen_type,score,count,partial";
pub const UMATRIX_HEADER: &str = "row,col,mean_neighbor_dist";

fn open_writer(path: &Path) -> Result<BufWriter<fs::File>, FileFormatError> {
    Ok(BufWriter::new(
        fs::File::create(path).map_err(|e| FileFormatError::io(path, e))?,
    ))
}

fn finish(mut w: BufWriter<fs::File>, path: &Path) -> Result<(), FileFormatError> {
    w.flush().map_err(|e| FileFormatError::io(path, e))
}

struct LineReader {
    content: String,
}

impl LineReader {
    fn load(path: &Path) -> Result<Self, FileFormatError> {
        Ok(Self {
            content: fs::read_to_string(path).map_err(|e| FileFormatError::io(path, e))?,
        })
    }

    /// Data lines with their 1-based file line numbers, header verified.
    fn records<'a>(
        &'a self,
        path: &Path,
        header: &str,
    ) -> Result<Vec<(usize, &'a str)>, FileFormatError> {
        let mut lines = self.content.lines().enumerate();
        match lines.next() {
            Some((_, first)) if first.trim() == header => {}
            Some((_, first)) => {
                return Err(FileFormatError::parse(
                    path,
                    1,
                    format!("expected header `{header}`, found `{}`", first.trim()),
                ))
            }
            None => return Err(FileFormatError::parse(path, 1, "empty file")),
        }
        Ok(lines
            .filter(|(_, l)| !l.trim().is_empty())
            .map(|(i, l)| (i + 1, l))
            .collect())
    }
}

fn field<'a>(
    parts: &mut std::str::Split<'a, char>,
    path: &Path,
    line: usize,
    name: &str,
) -> Result<&'a str, FileFormatError> {
    parts
        .next()
        .map(str::trim)
        .ok_or_else(|| FileFormatError::parse(path, line, format!("missing field `{name}`")))
}

fn parse_num<T: std::str::FromStr>(
    raw: &str,
    path: &Path,
    line: usize,
    name: &str,
) -> Result<T, FileFormatError> {
    raw.parse()
        .map_err(|_| FileFormatError::parse(path, line, format!("invalid {name} value `{raw}`")))
}

// ---------------------------------------------------------------------------
// Raw session telemetry
// ---------------------------------------------------------------------------

pub fn write_raw_csv(path: &Path, samples: &[RawSample]) -> Result<(), FileFormatError> {
    let mut w = open_writer(path)?;
    let mut buf = String::new();
    buf.push_str(RAW_HEADER);
    buf.push('\n');
    for s in samples {
        writeln!(
            buf,
            "{},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{}",
            s.timestamp,
            s.icmp_du_per_sec,
            s.rst_per_sec,
            s.pkts_sent_per_sec,
            s.tcp_pkts_per_sec,
            s.all_pkts_per_sec,
            s.pkt_rate_of_change,
            s.avg_pkt_size_bytes,
            s.root_login_active as u8,
        )
        .expect("write to String");
    }
    w.write_all(buf.as_bytes())
        .map_err(|e| FileFormatError::io(path, e))?;
    finish(w, path)
}

pub fn read_raw_csv(path: &Path) -> Result<Vec<RawSample>, FileFormatError> {
    let reader = LineReader::load(path)?;
    let mut out = Vec::new();
    for (line, text) in reader.records(path, RAW_HEADER)? {
        let mut parts = text.split(',');
        let sample = RawSample {
            timestamp: parse_num(field(&mut parts, path, line, "t")?, path, line, "t")?,
            icmp_du_per_sec: parse_num(
                field(&mut parts, path, line, "icmp_du")?,
                path,
                line,
                "icmp_du",
            )?,
            rst_per_sec: parse_num(field(&mut parts, path, line, "rst")?, path, line, "rst")?,
            pkts_sent_per_sec: parse_num(
                field(&mut parts, path, line, "pkts")?,
                path,
                line,
                "pkts",
            )?,
            tcp_pkts_per_sec: parse_num(
                field(&mut parts, path, line, "tcp_pkts")?,
                path,
                line,
                "tcp_pkts",
            )?,
            all_pkts_per_sec: parse_num(
                field(&mut parts, path, line, "all_pkts")?,
                path,
                line,
                "all_pkts",
            )?,
            pkt_rate_of_change: parse_num(
                field(&mut parts, path, line, "pkt_roc")?,
                path,
                line,
                "pkt_roc",
            )?,
            avg_pkt_size_bytes: parse_num(
                field(&mut parts, path, line, "avg_size")?,
                path,
                line,
                "avg_size",
            )?,
            root_login_active: parse_bool_digit(
                field(&mut parts, path, line, "root")?,
                path,
                line,
                "root",
            )?,
        };
        out.push(sample);
    }
    Ok(out)
}

fn parse_bool_digit(
    raw: &str,
    path: &Path,
    line: usize,
    name: &str,
) -> Result<bool, FileFormatError> {
    match raw {
        "0" => Ok(false),
        "1" => Ok(true),
        _ => Err(FileFormatError::parse(
            path,
            line,
            format!("invalid {name} value `{raw}`, expected 0 or 1"),
        )),
    }
}

// ---------------------------------------------------------------------------
// Normalized frames
// ---------------------------------------------------------------------------

pub fn write_frames_csv(
    path: &Path,
    frames: &[NormalizedSignalFrame],
) -> Result<(), FileFormatError> {
    let mut w = open_writer(path)?;
    let mut buf = String::new();
    buf.push_str(FRAME_HEADER);
    buf.push('\n');
    for f in frames {
        writeln!(
            buf,
            "{},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{}",
            f.timestamp, f.pamp1, f.pamp2, f.ds1, f.ds2, f.ss1, f.ss2, f.inflammation,
        )
        .expect("write to String");
    }
    w.write_all(buf.as_bytes())
        .map_err(|e| FileFormatError::io(path, e))?;
    finish(w, path)
}

pub fn read_frames_csv(path: &Path) -> Result<Vec<NormalizedSignalFrame>, FileFormatError> {
    let reader = LineReader::load(path)?;
    let mut out = Vec::new();
    for (line, text) in reader.records(path, FRAME_HEADER)? {
        let mut parts = text.split(',');
        let frame = NormalizedSignalFrame {
            timestamp: parse_num(field(&mut parts, path, line, "t")?, path, line, "t")?,
            pamp1: parse_num(field(&mut parts, path, line, "pamp1")?, path, line, "pamp1")?,
            pamp2: parse_num(field(&mut parts, path, line, "pamp2")?, path, line, "pamp2")?,
            ds1: parse_num(field(&mut parts, path, line, "ds1")?, path, line, "ds1")?,
            ds2: parse_num(field(&mut parts, path, line, "ds2")?, path, line, "ds2")?,
            ss1: parse_num(field(&mut parts, path, line, "ss1")?, path, line, "ss1")?,
            ss2: parse_num(field(&mut parts, path, line, "ss2")?, path, line, "ss2")?,
            inflammation: {
                let raw = field(&mut parts, path, line, "infl")?;
                match raw {
                    "0" => 0,
                    "1" => 1,
                    _ => {
                        return Err(FileFormatError::parse(
                            path,
                            line,
                            format!("invalid infl value `{raw}`"),
                        ))
                    }
                }
            },
        };
        out.push(frame);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Antigen events and labels
// ---------------------------------------------------------------------------

pub fn write_antigen_csv(
    path: &Path,
    events: &[AntigenEvent],
    labels: &[GroundTruthLabel],
) -> Result<(), FileFormatError> {
    let name_of = |pid: u32| {
        labels
            .iter()
            .find(|l| l.pid == pid)
            .map(|l| l.name.as_str())
            .unwrap_or("unknown")
    };
    let mut w = open_writer(path)?;
    let mut buf = String::with_capacity(events.len() * 16 + 16);
    buf.push_str(ANTIGEN_HEADER);
    buf.push('\n');
    for e in events {
        writeln!(
            buf,
            "{},{},{}",
            e.timestamp,
            e.antigen_type,
            name_of(e.antigen_type)
        )
        .expect("write to String");
    }
    w.write_all(buf.as_bytes())
        .map_err(|e| FileFormatError::io(path, e))?;
    finish(w, path)
}

pub fn read_antigen_csv(path: &Path) -> Result<Vec<AntigenEvent>, FileFormatError> {
    let reader = LineReader::load(path)?;
    let mut out = Vec::new();
    for (line, text) in reader.records(path, ANTIGEN_HEADER)? {
        let mut parts = text.split(',');
        out.push(AntigenEvent {
            timestamp: parse_num(field(&mut parts, path, line, "t")?, path, line, "t")?,
            antigen_type: parse_num(field(&mut parts, path, line, "pid")?, path, line, "pid")?,
        });
    }
    Ok(out)
}

pub fn write_labels_csv(path: &Path, labels: &[GroundTruthLabel]) -> Result<(), FileFormatError> {
    let mut w = open_writer(path)?;
    let mut buf = String::new();
    buf.push_str(LABELS_HEADER);
    buf.push('\n');
    for l in labels {
        writeln!(
            buf,
            "{},{},{}",
            l.pid,
            l.name.as_str(),
            if l.anomalous { "anomalous" } else { "normal" }
        )
        .expect("write to String");
    }
    w.write_all(buf.as_bytes())
        .map_err(|e| FileFormatError::io(path, e))?;
    finish(w, path)
}

pub fn read_labels_csv(path: &Path) -> Result<Vec<GroundTruthLabel>, FileFormatError> {
    let reader = LineReader::load(path)?;
    let mut out = Vec::new();
    for (line, text) in reader.records(path, LABELS_HEADER)? {
        let mut parts = text.split(',');
        let pid = parse_num(field(&mut parts, path, line, "pid")?, path, line, "pid")?;
        let name_raw = field(&mut parts, path, line, "name")?;
        let name = ProcessName::parse(name_raw).ok_or_else(|| {
            FileFormatError::parse(path, line, format!("unknown process name `{name_raw}`"))
        })?;
        let label_raw = field(&mut parts, path, line, "label")?;
        let anomalous = match label_raw {
            "anomalous" => true,
            "normal" => false,
            _ => {
                return Err(FileFormatError::parse(
                    path,
                    line,
                    format!("unknown label `{label_raw}`"),
                ))
            }
        };
        out.push(GroundTruthLabel {
            pid,
            name,
            anomalous,
        });
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Presented-antigen log
// ---------------------------------------------------------------------------

pub fn write_presented_csv(
    path: &Path,
    records: &[PresentedAntigenRecord],
) -> Result<(), FileFormatError> {
    let mut w = open_writer(path)?;
    let mut buf = String::with_capacity(records.len() * 40 + 64);
    buf.push_str(PRESENTED_HEADER);
    buf.push('\n');
    for r in records {
        writeln!(
            buf,
            "{},{},{},{:.6},{:.6},{}",
            r.migration_cycle,
            r.antigen_type,
            r.context,
            r.presenting_cell_outputs.0,
            r.presenting_cell_outputs.1,
            r.forced as u8,
        )
        .expect("write to String");
    }
    w.write_all(buf.as_bytes())
        .map_err(|e| FileFormatError::io(path, e))?;
    finish(w, path)
}

pub fn read_presented_csv(path: &Path) -> Result<Vec<PresentedAntigenRecord>, FileFormatError> {
    let reader = LineReader::load(path)?;
    let mut out = Vec::new();
    for (line, text) in reader.records(path, PRESENTED_HEADER)? {
        let mut parts = text.split(',');
        let migration_cycle =
            parse_num(field(&mut parts, path, line, "cycle")?, path, line, "cycle")?;
        let antigen_type = parse_num(
            field(&mut parts, path, line, "antigen_type")?,
            path,
            line,
            "antigen_type",
        )?;
        let context: u8 = parse_num(
            field(&mut parts, path, line, "context")?,
            path,
            line,
            "context",
        )?;
        if context > 1 {
            return Err(FileFormatError::parse(path, line, "context must be 0 or 1"));
        }
        let o_semi = parse_num(
            field(&mut parts, path, line, "o_semi")?,
            path,
            line,
            "o_semi",
        )?;
        let o_mature = parse_num(
            field(&mut parts, path, line, "o_mature")?,
            path,
            line,
            "o_mature",
        )?;
        let forced = parse_bool_digit(
            field(&mut parts, path, line, "forced")?,
            path,
            line,
            "forced",
        )?;
        out.push(PresentedAntigenRecord {
            antigen_type,
            context,
            presenting_cell_outputs: (o_semi, o_mature),
            migration_cycle,
            forced,
        });
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Segment series
// ---------------------------------------------------------------------------

pub fn write_segments_csv(path: &Path, series: &SegmentSeries) -> Result<(), FileFormatError> {
    let mut w = open_writer(path)?;
    let mut buf = String::new();
    buf.push_str(SEGMENTS_HEADER);
    buf.push('\n');
    for segment in &series.segments {
        for (ty, score) in &segment.scores {
            writeln!(
                buf,
                "{},{},{:.6},{},{}",
                segment.index, ty, score.score, score.count, segment.partial as u8
            )
            .expect("write to String");
        }
    }
    w.write_all(buf.as_bytes())
        .map_err(|e| FileFormatError::io(path, e))?;
    finish(w, path)
}

/// Rows of a segment CSV: (segment_index, antigen_type, score, count, partial).
pub type SegmentRow = (usize, u32, f64, u64, bool);

pub fn read_segments_csv(path: &Path) -> Result<Vec<SegmentRow>, FileFormatError> {
    let reader = LineReader::load(path)?;
    let mut out = Vec::new();
    for (line, text) in reader.records(path, SEGMENTS_HEADER)? {
        let mut parts = text.split(',');
        let index = parse_num(
            field(&mut parts, path, line, "segment_index")?,
            path,
            line,
            "segment_index",
        )?;
        let ty = parse_num(
            field(&mut parts, path, line, "antigen_type")?,
            path,
            line,
            "antigen_type",
        )?;
        let score = parse_num(field(&mut parts, path, line, "score")?, path, line, "score")?;
        let count = parse_num(field(&mut parts, path, line, "count")?, path, line, "count")?;
        let partial = parse_bool_digit(
            field(&mut parts, path, line, "partial")?,
            path,
            line,
            "partial",
        )?;
        out.push((index, ty, score, count, partial));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Map snapshots
// ---------------------------------------------------------------------------

pub fn write_map_csv(path: &Path, map: &SomMap) -> Result<(), FileFormatError> {
    let mut w = open_writer(path)?;
    let mut buf = String::new();
    buf.push_str("row,col");
    for d in 0..map.dim() {
        write!(buf, ",w{d}").expect("write to String");
    }
    buf.push('\n');
    writeln!(buf, "# epoch={}", map.epoch()).expect("write to String");
    for (loc, weights) in map.nodes() {
        write!(buf, "{},{}", loc.row, loc.col).expect("write to String");
        for v in weights {
            write!(buf, ",{v:.16e}").expect("write to String");
        }
        buf.push('\n');
    }
    w.write_all(buf.as_bytes())
        .map_err(|e| FileFormatError::io(path, e))?;
    finish(w, path)
}

pub fn read_map_csv(path: &Path) -> Result<SomMap, FileFormatError> {
    let reader = LineReader::load(path)?;
    let mut lines = reader.content.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| FileFormatError::parse(path, 1, "empty file"))?;
    let mut header_parts = header.split(',');
    if header_parts.next().map(str::trim) != Some("row")
        || header_parts.next().map(str::trim) != Some("col")
    {
        return Err(FileFormatError::parse(
            path,
            1,
            "expected `row,col,w0..` header",
        ));
    }
    let dim = header_parts.count();
    if dim == 0 {
        return Err(FileFormatError::parse(path, 1, "no weight columns"));
    }

    let mut epoch = 0u64;
    let mut rows_max = 0usize;
    let mut cols_max = 0usize;
    let mut entries: Vec<(usize, usize, Vec<f64>)> = Vec::new();
    for (i, text) in lines {
        let line = i + 1;
        let trimmed = text.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix('#') {
            if let Some(value) = rest.trim().strip_prefix("epoch=") {
                epoch = parse_num(value, path, line, "epoch")?;
            }
            continue;
        }
        let mut parts = trimmed.split(',');
        let row: usize = parse_num(field(&mut parts, path, line, "row")?, path, line, "row")?;
        let col: usize = parse_num(field(&mut parts, path, line, "col")?, path, line, "col")?;
        let mut weights = Vec::with_capacity(dim);
        for d in 0..dim {
            let name = format!("w{d}");
            let raw = parts.next().map(str::trim).ok_or_else(|| {
                FileFormatError::parse(path, line, format!("missing field `{name}`"))
            })?;
            weights.push(parse_num(raw, path, line, &name)?);
        }
        rows_max = rows_max.max(row + 1);
        cols_max = cols_max.max(col + 1);
        entries.push((row, col, weights));
    }
    if entries.len() != rows_max * cols_max {
        return Err(FileFormatError::parse(
            path,
            1,
            format!(
                "grid incomplete: {} nodes for a {rows_max}x{cols_max} map",
                entries.len()
            ),
        ));
    }
    let mut weights = vec![Vec::new(); rows_max * cols_max];
    for (row, col, w) in entries {
        weights[row * cols_max + col] = w;
    }
    SomMap::from_weights(rows_max, cols_max, weights, epoch)
        .map_err(|e| FileFormatError::parse(path, 1, e.to_string()))
}

pub fn write_umatrix_csv(path: &Path, map: &SomMap) -> Result<(), FileFormatError> {
    let mut w = open_writer(path)?;
    let mut buf = String::new();
    buf.push_str(UMATRIX_HEADER);
    buf.push('\n');
    for (loc, value) in map.u_matrix() {
        writeln!(buf, "{},{},{value:.6}", loc.row, loc.col).expect("write to String");
    }
    w.write_all(buf.as_bytes())
        .map_err(|e| FileFormatError::io(path, e))?;
    finish(w, path)
}

// ---------------------------------------------------------------------------
// key=value params files
// ---------------------------------------------------------------------------

fn parse_kv(content: &str, path: &Path) -> Result<Vec<(usize, String, String)>, FileFormatError> {
    let mut out = Vec::new();
    for (i, raw) in content.lines().enumerate() {
        let line = i + 1;
        let text = raw.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let (key, value) = text.split_once('=').ok_or_else(|| {
            FileFormatError::parse(path, line, format!("expected key=value, found `{text}`"))
        })?;
        out.push((line, key.trim().to_string(), value.trim().to_string()));
    }
    Ok(out)
}

/// DCA params file: one `field=value` line per field, unspecified fields
/// keep their defaults.
pub fn read_dca_params(path: &Path) -> Result<DcaParams, FileFormatError> {
    let content = fs::read_to_string(path).map_err(|e| FileFormatError::io(path, e))?;
    let mut params = DcaParams::default();
    for (line, key, value) in parse_kv(&content, path)? {
        match key.as_str() {
            "signals_per_category" => {
                params.signals_per_category = parse_num(&value, path, line, &key)?
            }
            "categories" => params.categories = parse_num(&value, path, line, &key)?,
            "tissue_antigen_capacity" => {
                params.tissue_antigen_capacity = parse_num(&value, path, line, &key)?
            }
            "max_cycles" => params.max_cycles = parse_num(&value, path, line, &key)?,
            "population_size" => params.population_size = parse_num(&value, path, line, &key)?,
            "dc_antigen_capacity" => {
                params.dc_antigen_capacity = parse_num(&value, path, line, &key)?
            }
            "outputs_per_dc" => params.outputs_per_dc = parse_num(&value, path, line, &key)?,
            "antigens_sampled_per_cycle" => {
                params.antigens_sampled_per_cycle = parse_num(&value, path, line, &key)?
            }
            "migration_threshold_center" => {
                params.migration_threshold_center = parse_num(&value, path, line, &key)?
            }
            "migration_threshold_halfwidth" => {
                params.migration_threshold_halfwidth = parse_num(&value, path, line, &key)?
            }
            "rng_seed" => params.rng_seed = parse_num(&value, path, line, &key)?,
            _ => {
                return Err(FileFormatError::parse(
                    path,
                    line,
                    format!("unknown DCA parameter `{key}`"),
                ))
            }
        }
    }
    Ok(params)
}

pub fn write_dca_params(path: &Path, params: &DcaParams) -> Result<(), FileFormatError> {
    let content = format!(
        "signals_per_category={}\ncategories={}\ntissue_antigen_capacity={}\nmax_cycles={}\npopulation_size={}\ndc_antigen_capacity={}\noutputs_per_dc={}\nantigens_sampled_per_cycle={}\nmigration_threshold_center={}\nmigration_threshold_halfwidth={}\nrng_seed={}\n",
        params.signals_per_category,
        params.categories,
        params.tissue_antigen_capacity,
        params.max_cycles,
        params.population_size,
        params.dc_antigen_capacity,
        params.outputs_per_dc,
        params.antigens_sampled_per_cycle,
        params.migration_threshold_center,
        params.migration_threshold_halfwidth,
        params.rng_seed,
    );
    fs::write(path, content).map_err(|e| FileFormatError::io(path, e))
}

/// SOM params file, same conventions as the DCA one.
pub fn read_som_params(path: &Path) -> Result<SomParams, FileFormatError> {
    let content = fs::read_to_string(path).map_err(|e| FileFormatError::io(path, e))?;
    let mut params = SomParams::default();
    for (line, key, value) in parse_kv(&content, path)? {
        match key.as_str() {
            "grid_rows" => params.grid_rows = parse_num(&value, path, line, &key)?,
            "grid_cols" => params.grid_cols = parse_num(&value, path, line, &key)?,
            "epoch_limit" => params.epoch_limit = parse_num(&value, path, line, &key)?,
            "alpha_initial_global" => {
                params.alpha_initial_global = parse_num(&value, path, line, &key)?
            }
            "alpha_fine" => params.alpha_fine = parse_num(&value, path, line, &key)?,
            "global_ordering_steps" => {
                params.global_ordering_steps = parse_num(&value, path, line, &key)?
            }
            "neighborhood_initial" => {
                params.neighborhood_initial = parse_num(&value, path, line, &key)?
            }
            "neighborhood_fine" => params.neighborhood_fine = parse_num(&value, path, line, &key)?,
            "anomaly_threshold" => params.anomaly_threshold = parse_num(&value, path, line, &key)?,
            "rng_seed" => params.rng_seed = parse_num(&value, path, line, &key)?,
            _ => {
                return Err(FileFormatError::parse(
                    path,
                    line,
                    format!("unknown SOM parameter `{key}`"),
                ))
            }
        }
    }
    Ok(params)
}

pub fn write_som_params(path: &Path, params: &SomParams) -> Result<(), FileFormatError> {
    let content = format!(
        "grid_rows={}\ngrid_cols={}\nepoch_limit={}\nalpha_initial_global={}\nalpha_fine={}\nglobal_ordering_steps={}\nneighborhood_initial={}\nneighborhood_fine={}\nanomaly_threshold={}\nrng_seed={}\n",
        params.grid_rows,
        params.grid_cols,
        params.epoch_limit,
        params.alpha_initial_global,
        params.alpha_fine,
        params.global_ordering_steps,
        params.neighborhood_initial,
        params.neighborhood_fine,
        params.anomaly_threshold,
        params.rng_seed,
    );
    fs::write(path, content).map_err(|e| FileFormatError::io(path, e))
}
