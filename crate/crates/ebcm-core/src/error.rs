//! Error type shared by the simulation and statistics modules.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoreError {
    /// A numeric parameter is outside its admissible range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
    /// More than one message was injected at a single event tick. A DLM
    /// receives a message on one input channel at a time, never on both.
    #[error("simultaneous input: a beamsplitter accepts one message per tick")]
    SimultaneousInput,
    /// An event tick was driven with no message at all.
    #[error("empty tick: exactly one message per step")]
    EmptyTick,
    /// The schedule has no blocks, or no data block to measure.
    #[error("empty schedule: at least one data block is required")]
    EmptySchedule,
    /// Comparison-suite variants disagree on the total number of data photons.
    #[error("mismatched totals: variants must share the same total data count (expected {expected}, found {found})")]
    MismatchedTotals { expected: u64, found: u64 },
    /// A two-sample comparison received a run with no events.
    #[error("zero total: both runs must contain at least one event")]
    ZeroTotal,
    /// A click stream was empty where events are required.
    #[error("empty stream: no clicks to analyse")]
    EmptyStream,
    /// A sliding window does not fit into the click stream.
    #[error("window too large: window exceeds stream length")]
    WindowTooLarge,
    /// Counts or probabilities handed to a statistic are inconsistent.
    #[error("invalid input: {0}")]
    InvalidInput(&'static str),
}
