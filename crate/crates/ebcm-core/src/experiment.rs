//! Schedule execution: drives an [`MziState`] through blocks of data and
//! reset photons, applies hardware resets, and assembles run records with
//! per-block counts and aggregate statistics.

use alloc::vec::Vec;

use crate::error::CoreError;
use crate::math;
use crate::message::{Message, Port, Tag};
use crate::mzi::{Detector, MziState};
use crate::oracle::{
    aggregate_prediction, expected_counts, mzi_probabilities, AggregatePrediction,
};
use crate::schedule::{Block, BlockKind, PhasePolicy, Schedule};
use crate::stats::{compare_runs, z_score, TwoSampleTest, ZScore};
use crate::MODEL_VERSION;

/// Parameters of one simulated run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunConfig {
    pub gamma: f64,
    pub phi0: f64,
    pub phi1: f64,
    pub seed: u64,
    /// Keep the per-event click trace in the record.
    pub record_clicks: bool,
}

impl RunConfig {
    pub fn new(gamma: f64, phi0: f64, phi1: f64, seed: u64) -> Self {
        Self {
            gamma,
            phi0,
            phi1,
            seed,
            record_clicks: false,
        }
    }

    pub fn with_clicks(mut self) -> Self {
        self.record_clicks = true;
        self
    }
}

/// Counts for one executed block. `registered` marks whether its clicks
/// entered the measured statistics; reset blocks traverse the full
/// interferometer with the detectors gated off, and hardware resets
/// consume no events at all.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockRecord {
    pub block_index: usize,
    pub kind: BlockKind,
    pub n_events: u64,
    pub d0: u64,
    pub d1: u64,
    pub registered: bool,
}

/// One event in the click trace. Gated (reset-block) clicks are kept for
/// debugging but flagged unregistered.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClickRecord {
    pub block_index: usize,
    pub event_index: u64,
    pub detector: Detector,
    pub registered: bool,
}

/// Aggregate statistics over the registered (data) clicks of a run,
/// together with the wave-theory reference they are judged against.
/// Everything here is recomputable from the per-block entries.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Aggregates {
    /// Registered events (equals the schedule's total data count).
    pub total: u64,
    pub d0: u64,
    pub d1: u64,
    pub mean_freq_d0: f64,
    /// Spread of D0 counts across the data blocks (population standard
    /// deviation); the per-segment ΔN proxy, most informative when the
    /// data blocks share one size.
    pub block_stddev_d0: f64,
    /// Wave-theory D0 probability for the run's phases.
    pub oracle_p0: f64,
    pub expected_mean_d0: f64,
    pub expected_stddev_d0: f64,
    /// Standardised deviation of the D0 count from the oracle expectation.
    pub z_d0: ZScore,
}

/// Full record of one run: configuration echo, per-block counts,
/// aggregates, and (optionally) the event-by-event click trace.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub config: RunConfig,
    pub model_version: &'static str,
    pub blocks: Vec<BlockRecord>,
    pub aggregates: Aggregates,
    pub clicks: Option<Vec<ClickRecord>>,
}

impl RunRecord {
    /// Detector ids of the registered clicks, in event order. `None` when
    /// the run was executed without click recording.
    pub fn registered_detectors(&self) -> Option<Vec<Detector>> {
        self.clicks.as_ref().map(|clicks| {
            clicks
                .iter()
                .filter(|c| c.registered)
                .map(|c| c.detector)
                .collect()
        })
    }
}

fn reset_message(mzi: &mut MziState, port: Port, policy: PhasePolicy) -> Message {
    let phase = match policy {
        PhasePolicy::Fixed(psi) => psi,
        PhasePolicy::UniformRandom => mzi.draw_phase(),
    };
    Message::new(phase, Tag::Reset, port)
}

/// Executes `schedule` against a fresh interferometer and returns the run
/// record. Blocks run in order: data blocks register their clicks, reset
/// blocks traverse both machines with the detectors gated, and each
/// hardware-reset block replaces the addressed machines and restarts the
/// generator at `seed XOR block_index` (so a run beginning with a
/// hardware reset is bit-identical to a fresh run).
pub fn run_schedule(config: &RunConfig, schedule: &Schedule) -> Result<RunRecord, CoreError> {
    schedule.validate()?;
    let mut mzi = MziState::new(config.gamma, config.phi0, config.phi1, config.seed)?;
    let mut blocks = Vec::with_capacity(schedule.len());
    let mut clicks: Option<Vec<ClickRecord>> = config.record_clicks.then(Vec::new);

    for (block_index, block) in schedule.iter().enumerate() {
        let record = match *block {
            Block::Data { count, port } => {
                let msg = Message::new(0.0, Tag::Data, port);
                let (d0, d1) = drive(&mut mzi, &msg, count, true, block_index, &mut clicks);
                BlockRecord {
                    block_index,
                    kind: BlockKind::Data,
                    n_events: count,
                    d0,
                    d1,
                    registered: true,
                }
            }
            Block::Reset { count, port, phase } => {
                let mut d0 = 0;
                let mut d1 = 0;
                for _ in 0..count {
                    let msg = reset_message(&mut mzi, port, phase);
                    let (a, b) = drive(&mut mzi, &msg, 1, false, block_index, &mut clicks);
                    d0 += a;
                    d1 += b;
                }
                BlockRecord {
                    block_index,
                    kind: BlockKind::Reset,
                    n_events: count,
                    d0,
                    d1,
                    registered: false,
                }
            }
            Block::HwReset { scope } => {
                mzi.reset_hard(scope);
                mzi.reseed(config.seed ^ block_index as u64);
                BlockRecord {
                    block_index,
                    kind: BlockKind::HwReset,
                    n_events: 0,
                    d0: 0,
                    d1: 0,
                    registered: false,
                }
            }
        };
        blocks.push(record);
    }

    let aggregates = aggregate(&blocks, config.phi0, config.phi1)?;
    Ok(RunRecord {
        config: *config,
        model_version: MODEL_VERSION,
        blocks,
        aggregates,
        clicks,
    })
}

/// Pushes `count` copies of `msg` through the interferometer, tallying
/// detector counts and appending to the click trace when one is kept.
fn drive(
    mzi: &mut MziState,
    msg: &Message,
    count: u64,
    registered: bool,
    block_index: usize,
    clicks: &mut Option<Vec<ClickRecord>>,
) -> (u64, u64) {
    let mut d0 = 0;
    let mut d1 = 0;
    for _ in 0..count {
        let click = mzi.step(msg);
        match click.detector {
            Detector::D0 => d0 += 1,
            Detector::D1 => d1 += 1,
        }
        if let Some(trace) = clicks {
            trace.push(ClickRecord {
                block_index,
                event_index: click.event_index,
                detector: click.detector,
                registered,
            });
        }
    }
    (d0, d1)
}

/// Computes the aggregates from the per-block entries alone.
fn aggregate(blocks: &[BlockRecord], phi0: f64, phi1: f64) -> Result<Aggregates, CoreError> {
    let mut total = 0u64;
    let mut d0 = 0u64;
    let mut d1 = 0u64;
    let mut data_blocks = 0u64;
    for b in blocks.iter().filter(|b| b.registered) {
        total += b.n_events;
        d0 += b.d0;
        d1 += b.d1;
        data_blocks += 1;
    }
    if total == 0 {
        return Err(CoreError::EmptySchedule);
    }

    let mean_d0_per_block = d0 as f64 / data_blocks as f64;
    let mut var = 0.0;
    for b in blocks.iter().filter(|b| b.registered) {
        let diff = b.d0 as f64 - mean_d0_per_block;
        var += diff * diff;
    }
    let block_stddev_d0 = math::sqrt(var / data_blocks as f64);

    let p = mzi_probabilities(phi0, phi1);
    let (expected_mean_d0, expected_stddev_d0) = expected_counts(total, p.p0);
    Ok(Aggregates {
        total,
        d0,
        d1,
        mean_freq_d0: d0 as f64 / total as f64,
        block_stddev_d0,
        oracle_p0: p.p0,
        expected_mean_d0,
        expected_stddev_d0,
        z_d0: z_score(d0, total, p.p0)?,
    })
}

/// Pushes `count` reset photons through the interferometer in place: both
/// machines update, no registered clicks are produced. This is the
/// software erase — the statistics of subsequent data photons change even
/// though no component was physically replaced.
pub fn software_reset(
    mzi: &mut MziState,
    count: u64,
    port: Port,
    phase: PhasePolicy,
) -> Result<(), CoreError> {
    if count == 0 {
        return Err(CoreError::InvalidParameter("reset count must be >= 1"));
    }
    if let PhasePolicy::Fixed(psi) = phase {
        if !psi.is_finite() {
            return Err(CoreError::InvalidParameter("reset phase must be finite"));
        }
    }
    for _ in 0..count {
        let msg = reset_message(mzi, port, phase);
        mzi.step(&msg);
    }
    Ok(())
}

/// One variant's outcome inside a comparison suite.
#[derive(Debug, Clone, PartialEq)]
pub struct VariantReport {
    pub index: usize,
    pub seed: u64,
    pub record: RunRecord,
}

/// Two-sample test between the registered counts of two variants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairwiseComparison {
    pub a: usize,
    pub b: usize,
    pub test: TwoSampleTest,
}

/// Comparison of schedule variants that agree on the total number of data
/// photons. Wave theory predicts identical statistics for all of them;
/// the event-based model does not.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    /// The single shared wave-theory prediction.
    pub oracle: AggregatePrediction,
    pub variants: Vec<VariantReport>,
    pub pairwise: Vec<PairwiseComparison>,
}

/// Runs every variant (one seed each), checks they share one total data
/// count, and reports per-variant aggregates plus all pairwise two-sample
/// tests. Variants are independent runs; execution order cannot affect
/// the report.
pub fn run_comparison_suite(
    variants: &[Schedule],
    gamma: f64,
    phi0: f64,
    phi1: f64,
    seeds: &[u64],
) -> Result<ComparisonReport, CoreError> {
    if variants.is_empty() {
        return Err(CoreError::InvalidInput("at least one variant is required"));
    }
    if seeds.len() != variants.len() {
        return Err(CoreError::InvalidInput("one seed per variant is required"));
    }
    for v in variants {
        v.validate()?;
    }
    let expected = variants[0].total_data();
    for v in &variants[1..] {
        let found = v.total_data();
        if found != expected {
            return Err(CoreError::MismatchedTotals { expected, found });
        }
    }

    let oracle = aggregate_prediction(&variants[0], phi0, phi1)?;
    let mut reports = Vec::with_capacity(variants.len());
    for (index, (schedule, &seed)) in variants.iter().zip(seeds).enumerate() {
        let config = RunConfig::new(gamma, phi0, phi1, seed);
        let record = run_schedule(&config, schedule)?;
        reports.push(VariantReport {
            index,
            seed,
            record,
        });
    }

    let mut pairwise = Vec::new();
    for i in 0..reports.len() {
        for j in i + 1..reports.len() {
            let ra = &reports[i].record.aggregates;
            let rb = &reports[j].record.aggregates;
            pairwise.push(PairwiseComparison {
                a: i,
                b: j,
                test: compare_runs((ra.d0, ra.d1), (rb.d0, rb.d1))?,
            });
        }
    }

    Ok(ComparisonReport {
        oracle,
        variants: reports,
        pairwise,
    })
}
