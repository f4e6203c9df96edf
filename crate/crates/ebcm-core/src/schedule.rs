//! Schedules: ordered blocks of data photons, reset photons, and register
//! reinitialisations, the experiment families `(N1, N'1, N2, N'2, …)`.

use alloc::vec::Vec;

use crate::error::CoreError;
use crate::message::Port;

/// Phase given to each reset photon in a block.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PhasePolicy {
    Fixed(f64),
    UniformRandom,
}

/// Which machines a hardware reset replaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResetScope {
    All,
    Bs1,
    Bs2,
}

/// Block kind discriminant, used in run records.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockKind {
    Data,
    Reset,
    HwReset,
}

/// One schedule entry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Block {
    /// `count` data photons on `port`, detectors registering.
    Data { count: u64, port: Port },
    /// `count` reset photons on `port`, detectors gated off.
    Reset {
        count: u64,
        port: Port,
        phase: PhasePolicy,
    },
    /// Replace the addressed machines with fresh ones; consumes no events.
    HwReset { scope: ResetScope },
}

impl Block {
    /// Data block on the default data port 0.
    pub fn data(count: u64) -> Block {
        Block::Data {
            count,
            port: Port::Zero,
        }
    }

    /// Reset block on the default reset port 1 with fixed phase 0.
    pub fn reset(count: u64) -> Block {
        Block::Reset {
            count,
            port: Port::One,
            phase: PhasePolicy::Fixed(0.0),
        }
    }

    /// Hardware reset of both machines.
    pub fn hw_reset() -> Block {
        Block::HwReset {
            scope: ResetScope::All,
        }
    }

    pub fn kind(&self) -> BlockKind {
        match self {
            Block::Data { .. } => BlockKind::Data,
            Block::Reset { .. } => BlockKind::Reset,
            Block::HwReset { .. } => BlockKind::HwReset,
        }
    }
}

/// An ordered list of blocks. A runnable schedule carries at least one
/// data block and every photon count is at least 1.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Schedule {
    blocks: Vec<Block>,
}

impl Schedule {
    pub fn new(blocks: Vec<Block>) -> Self {
        Self { blocks }
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Block> {
        self.blocks.iter()
    }

    /// Total number of data photons, the quantity schedule variants must
    /// agree on for a fair comparison.
    pub fn total_data(&self) -> u64 {
        self.blocks
            .iter()
            .map(|b| match b {
                Block::Data { count, .. } => *count,
                _ => 0,
            })
            .sum()
    }

    /// Checks the runnable-schedule invariants.
    pub fn validate(&self) -> Result<(), CoreError> {
        let mut has_data = false;
        for block in &self.blocks {
            match block {
                Block::Data { count, .. } => {
                    if *count == 0 {
                        return Err(CoreError::InvalidParameter("data count must be >= 1"));
                    }
                    has_data = true;
                }
                Block::Reset { count, phase, .. } => {
                    if *count == 0 {
                        return Err(CoreError::InvalidParameter("reset count must be >= 1"));
                    }
                    if let PhasePolicy::Fixed(psi) = phase {
                        if !psi.is_finite() {
                            return Err(CoreError::InvalidParameter("reset phase must be finite"));
                        }
                    }
                }
                Block::HwReset { .. } => {}
            }
        }
        if !has_data {
            return Err(CoreError::EmptySchedule);
        }
        Ok(())
    }
}

impl FromIterator<Block> for Schedule {
    fn from_iter<T: IntoIterator<Item = Block>>(iter: T) -> Self {
        Schedule::new(iter.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn total_counts_data_blocks_only() {
        let s = Schedule::new(alloc::vec![
            Block::data(100),
            Block::reset(10_000),
            Block::hw_reset(),
            Block::data(50),
        ]);
        assert_eq!(s.total_data(), 150);
        assert!(s.validate().is_ok());
    }

    #[test]
    fn empty_and_dataless_schedules_are_rejected() {
        assert_eq!(
            Schedule::default().validate().unwrap_err(),
            CoreError::EmptySchedule
        );
        let resets_only = Schedule::new(alloc::vec![Block::reset(5), Block::hw_reset()]);
        assert_eq!(
            resets_only.validate().unwrap_err(),
            CoreError::EmptySchedule
        );
    }

    #[test]
    fn zero_counts_are_rejected() {
        let s = Schedule::new(alloc::vec![Block::data(0)]);
        assert!(matches!(
            s.validate().unwrap_err(),
            CoreError::InvalidParameter(_)
        ));
        let s = Schedule::new(alloc::vec![Block::data(1), Block::reset(0)]);
        assert!(matches!(
            s.validate().unwrap_err(),
            CoreError::InvalidParameter(_)
        ));
    }
}
