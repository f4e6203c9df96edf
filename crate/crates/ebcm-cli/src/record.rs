//! Run-record serialization. Both formats are bit-exact: the same record
//! always produces the same bytes, and every floating-point value is
//! written with enough digits to reparse to the identical bits (CSV uses
//! the shortest round-trip rendering, JSON a fixed 17-significant-digit
//! scientific form).

use ebcm_core::{BlockKind, BlockRecord, DegenerateVerdict, Detector, RunRecord, ZScore};
use serde::{Deserialize, Serialize};

/// Output encoding for a run record.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

fn kind_name(kind: BlockKind) -> &'static str {
    match kind {
        BlockKind::Data => "data",
        BlockKind::Reset => "reset",
        BlockKind::HwReset => "hwreset",
    }
}

fn detector_name(detector: Detector) -> &'static str {
    match detector {
        Detector::D0 => "d0",
        Detector::D1 => "d1",
    }
}

/// Text form of a z-score: the number, or the degenerate verdict name.
pub fn z_display(z: ZScore) -> String {
    match z {
        ZScore::Value(v) => format!("{v}"),
        ZScore::Degenerate(DegenerateVerdict::Violation) => "violation".into(),
        ZScore::Degenerate(DegenerateVerdict::Consistent) => "consistent".into(),
    }
}

fn block_freq(block: &BlockRecord) -> f64 {
    if block.n_events == 0 {
        0.0
    } else {
        block.d0 as f64 / block.n_events as f64
    }
}

fn emit_csv(record: &RunRecord) -> Vec<u8> {
    let mut out = String::new();
    out.push_str("block_index,kind,n_events,d0,d1,registered,freq_d0\n");
    for b in &record.blocks {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            b.block_index,
            kind_name(b.kind),
            b.n_events,
            b.d0,
            b.d1,
            b.registered,
            block_freq(b),
        ));
    }
    let agg = &record.aggregates;
    out.push_str(&format!("# N={}\n", agg.total));
    out.push_str(&format!("# mean_freq_d0={}\n", agg.mean_freq_d0));
    out.push_str(&format!("# z_d0={}\n", z_display(agg.z_d0)));
    out.push_str(&format!("# seed={}\n", record.config.seed));
    if let Some(clicks) = &record.clicks {
        for c in clicks {
            out.push_str(&format!(
                "# click={},{},{},{}\n",
                c.block_index,
                c.event_index,
                detector_name(c.detector),
                c.registered,
            ));
        }
    }
    out.into_bytes()
}

/// JSON shape of a run record; field order here is the key order in the
/// output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunRecordDoc {
    pub model_version: String,
    pub gamma: f64,
    pub phi0: f64,
    pub phi1: f64,
    pub seed: u64,
    pub blocks: Vec<BlockDoc>,
    pub aggregates: AggregatesDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub clicks: Option<Vec<ClickDoc>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockDoc {
    pub block_index: usize,
    pub kind: String,
    pub n_events: u64,
    pub d0: u64,
    pub d1: u64,
    pub registered: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AggregatesDoc {
    pub total: u64,
    pub d0: u64,
    pub d1: u64,
    pub mean_freq_d0: f64,
    pub block_stddev_d0: f64,
    pub oracle_p0: f64,
    pub expected_mean_d0: f64,
    pub expected_stddev_d0: f64,
    pub z_d0: ZScoreDoc,
}

/// A z-score serializes as a JSON number; the degenerate-reference
/// verdicts serialize as the strings `"violation"` / `"consistent"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ZScoreDoc {
    Value(f64),
    Verdict(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClickDoc {
    pub block_index: usize,
    pub event_index: u64,
    pub detector: String,
    pub registered: bool,
}

impl From<&RunRecord> for RunRecordDoc {
    fn from(record: &RunRecord) -> Self {
        let agg = &record.aggregates;
        RunRecordDoc {
            model_version: record.model_version.to_owned(),
            gamma: record.config.gamma,
            phi0: record.config.phi0,
            phi1: record.config.phi1,
            seed: record.config.seed,
            blocks: record
                .blocks
                .iter()
                .map(|b| BlockDoc {
                    block_index: b.block_index,
                    kind: kind_name(b.kind).to_owned(),
                    n_events: b.n_events,
                    d0: b.d0,
                    d1: b.d1,
                    registered: b.registered,
                })
                .collect(),
            aggregates: AggregatesDoc {
                total: agg.total,
                d0: agg.d0,
                d1: agg.d1,
                mean_freq_d0: agg.mean_freq_d0,
                block_stddev_d0: agg.block_stddev_d0,
                oracle_p0: agg.oracle_p0,
                expected_mean_d0: agg.expected_mean_d0,
                expected_stddev_d0: agg.expected_stddev_d0,
                z_d0: match agg.z_d0 {
                    ZScore::Value(v) => ZScoreDoc::Value(v),
                    ZScore::Degenerate(v) => ZScoreDoc::Verdict(
                        match v {
                            DegenerateVerdict::Violation => "violation",
                            DegenerateVerdict::Consistent => "consistent",
                        }
                        .to_owned(),
                    ),
                },
            },
            clicks: record.clicks.as_ref().map(|clicks| {
                clicks
                    .iter()
                    .map(|c| ClickDoc {
                        block_index: c.block_index,
                        event_index: c.event_index,
                        detector: detector_name(c.detector).to_owned(),
                        registered: c.registered,
                    })
                    .collect()
            }),
        }
    }
}

/// Writes every float as `d.dddddddddddddddde±x` — 17 significant digits,
/// enough to reparse the exact bits.
struct SciFormatter;

impl serde_json::ser::Formatter for SciFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()>
    where
        W: ?Sized + std::io::Write,
    {
        write!(writer, "{value:.16e}")
    }
}

fn emit_json(record: &RunRecord) -> Vec<u8> {
    let doc = RunRecordDoc::from(record);
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SciFormatter);
    doc.serialize(&mut ser)
        .expect("record serialization is infallible");
    out.push(b'\n');
    out
}

/// Serializes a run record. Identical records yield identical bytes.
pub fn emit_run_record(record: &RunRecord, format: Format) -> Vec<u8> {
    match format {
        Format::Csv => emit_csv(record),
        Format::Json => emit_json(record),
    }
}

/// Reads back a JSON run record (the `compare` input format).
pub fn parse_record_json(bytes: &[u8]) -> Result<RunRecordDoc, serde_json::Error> {
    serde_json::from_slice(bytes)
}

/// One row of the phase-sweep table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub phase: f64,
    pub freq_d0: f64,
    pub wave_p0: f64,
    pub deviation: f64,
}

/// Renders the sweep table as CSV (the plotting interface).
pub fn emit_sweep_csv(rows: &[SweepRow]) -> Vec<u8> {
    let mut out = String::new();
    out.push_str("phase,freq_d0,wave_p0,deviation\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            r.phase, r.freq_d0, r.wave_p0, r.deviation
        ));
    }
    out.into_bytes()
}
