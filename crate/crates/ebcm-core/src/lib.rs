//! Event-by-event simulation of a Mach-Zehnder interferometer whose
//! beamsplitters are deterministic learning machines (DLMs) with internal
//! memory, next to a closed-form wave-theory oracle that has none.
//!
//! The crate has four parts:
//!
//! * [`dlm`] / [`mzi`] — the event core: messages, memory-bearing
//!   beamsplitters, phase shifters, detectors, and the single-photon
//!   event loop through a two-beamsplitter interferometer.
//! * [`oracle`] — wave-theory detector probabilities, binomial count
//!   expectations, and the two-photon bunching prediction. This is the
//!   memoryless baseline the event model is tested against.
//! * [`experiment`] — schedules of data/reset blocks, both reset
//!   mechanisms (reset photons and register reinitialisation), and
//!   run records with per-block counts.
//! * [`stats`] — z-scores, sqrt-N bound checks, transient-length
//!   estimation, and a two-sample chi-square comparison.
//!
//! Everything is deterministic: a run owns a single seeded generator and
//! identical inputs reproduce identical click sequences bit for bit. The
//! crate is `no_std` (with `alloc`); IO, parsing, and serialization live
//! in the companion CLI crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod dlm;
pub mod error;
pub mod experiment;
mod math;
pub mod message;
pub mod mzi;
pub mod oracle;
pub mod schedule;
pub mod stats;
pub mod symmetry;

pub use dlm::{BsAmplitudes, DlmState};
pub use error::CoreError;
pub use experiment::{
    run_comparison_suite, run_schedule, software_reset, Aggregates, BlockRecord, ClickRecord,
    ComparisonReport, PairwiseComparison, RunConfig, RunRecord, VariantReport,
};
pub use message::{Message, Port, Tag};
pub use mzi::{Detector, DetectorClick, MziState};
pub use oracle::{
    aggregate_prediction, expected_counts, hom_probabilities, mzi_probabilities,
    AggregatePrediction, CountMoments, HomResult, OracleResult,
};
pub use schedule::{Block, BlockKind, PhasePolicy, ResetScope, Schedule};
pub use stats::{
    compare_runs, sqrt_n_check, transient_length, z_score, DegenerateVerdict, SqrtNOutcome,
    TransientOutcome, TwoSampleTest, ZScore, DEFAULT_SQRT_N_THRESHOLD,
};
pub use symmetry::{port_symmetry_check, AsymmetryReason, BsComponent, SymmetryReport};

/// Identifies the register-update rule baked into this build. Echoed into
/// every run record so archived results name the model that produced them.
pub const MODEL_VERSION: &str = "ema-dlm-1";
