//! Two-beamsplitter Mach-Zehnder interferometer built from DLMs.
//!
//! Layout: input ports → DLM `bs1` → arm phase shifters (φ0 on the path
//! leaving bs1's port 0, φ1 on the port-1 path) → DLM `bs2` → detectors.
//! Detector `D0` sits on bs2's output port 0, the port that wave theory
//! predicts dark when φ0 = φ1.
//!
//! A simulator instance owns one seeded generator; every random decision
//! in a run flows through it in event order (bs1's port draw first, then
//! bs2's), so a (seed, config, input sequence) triple fixes the click
//! sequence exactly.

use rand_chacha::ChaCha12Rng;
use rand_core::SeedableRng;

use crate::dlm::DlmState;
use crate::error::CoreError;
use crate::math;
use crate::message::{Message, Port};
use crate::schedule::ResetScope;

/// Output detectors. `D0` is the dark port of the balanced interferometer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Detector {
    D0,
    D1,
}

impl Detector {
    fn from_port(port: Port) -> Self {
        match port {
            Port::Zero => Detector::D0,
            Port::One => Detector::D1,
        }
    }
}

/// One detection event. `registered` is false for clicks produced while
/// the detectors are gated off (reset blocks); such clicks are kept in
/// traces but never enter measured statistics.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DetectorClick {
    pub detector: Detector,
    pub event_index: u64,
    pub registered: bool,
}

/// A full interferometer instance: two independent DLMs, the arm phases,
/// and the run's random generator.
#[derive(Debug, Clone)]
pub struct MziState {
    bs1: DlmState,
    bs2: DlmState,
    phase0: f64,
    phase1: f64,
    seed: u64,
    rng: ChaCha12Rng,
    events: u64,
}

impl MziState {
    pub fn new(gamma: f64, phase0: f64, phase1: f64, seed: u64) -> Result<Self, CoreError> {
        if !phase0.is_finite() || !phase1.is_finite() {
            return Err(CoreError::InvalidParameter("arm phases must be finite"));
        }
        Ok(Self {
            bs1: DlmState::new(gamma)?,
            bs2: DlmState::new(gamma)?,
            phase0,
            phase1,
            seed,
            rng: ChaCha12Rng::seed_from_u64(seed),
            events: 0,
        })
    }

    pub fn bs1(&self) -> &DlmState {
        &self.bs1
    }

    pub fn bs2(&self) -> &DlmState {
        &self.bs2
    }

    pub fn phases(&self) -> (f64, f64) {
        (self.phase0, self.phase1)
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Events pushed through the interferometer so far (data and reset).
    pub fn events(&self) -> u64 {
        self.events
    }

    /// Sends one message through bs1, the matching arm shifter, and bs2,
    /// and returns the resulting click. Two draws are consumed from the
    /// run's generator, bs1's first.
    pub fn step(&mut self, input: &Message) -> DetectorClick {
        let draw1 = math::unit_f64(&mut self.rng);
        let (arm, mid) = self.bs1.process(input, draw1);
        let shifted = match arm {
            Port::Zero => mid.phase_shifted(self.phase0),
            Port::One => mid.phase_shifted(self.phase1),
        };
        let draw2 = math::unit_f64(&mut self.rng);
        let (out, _) = self.bs2.process(&shifted, draw2);
        let click = DetectorClick {
            detector: Detector::from_port(out),
            event_index: self.events,
            registered: true,
        };
        self.events += 1;
        click
    }

    /// One event tick with the single-message contract made explicit:
    /// injecting two messages at one tick errors, it never silently drops.
    pub fn step_tick(&mut self, inputs: &[Message]) -> Result<DetectorClick, CoreError> {
        match inputs {
            [] => Err(CoreError::EmptyTick),
            [one] => Ok(self.step(one)),
            _ => Err(CoreError::SimultaneousInput),
        }
    }

    /// Uniform phase draw in `[0, 2π)` from the run's generator.
    pub(crate) fn draw_phase(&mut self) -> f64 {
        math::unit_f64(&mut self.rng) * math::TAU
    }

    /// Swaps the addressed DLMs for fresh ones. The generator is not
    /// touched; schedule execution layers its own reseeding policy on top.
    pub fn reset_hard(&mut self, scope: ResetScope) {
        match scope {
            ResetScope::All => {
                self.bs1.reset_hard();
                self.bs2.reset_hard();
            }
            ResetScope::Bs1 => self.bs1.reset_hard(),
            ResetScope::Bs2 => self.bs2.reset_hard(),
        }
    }

    /// Restarts the generator from `seed`. Used by schedule execution to
    /// make hardware-reset runs bit-identical to fresh runs.
    pub fn reseed(&mut self, seed: u64) {
        self.rng = ChaCha12Rng::seed_from_u64(seed);
    }
}
