//! Memory-bearing beamsplitter: a deterministic learning machine (DLM).
//!
//! A DLM is an adaptive processing unit standing in for a beamsplitter.
//! It keeps internal registers that every incoming photon updates, so its
//! response depends on the history of events it has seen — unlike a real
//! beamsplitter, which is stateless. The register layout and update rule
//! used here:
//!
//! * `x = (x0, x1)` — exponential-moving-average estimates of how often
//!   each input port is hit. A message on port `p` moves them as
//!   `x_p ← γ·x_p + (1 − γ)` and `x_other ← γ·x_other`, so `x0 + x1 = 1`
//!   always. The learning rate γ sets the memory horizon (~1/(1 − γ)
//!   events).
//! * `y = (y0, y1)` — unit phasors holding the phase of the last message
//!   seen on each port.
//!
//! The transformation stage builds effective amplitudes
//! `a_k = sqrt(x_k)·y_k` and sends them through the symmetric 50/50
//! unitary `w0 = (a0 + i·a1)/√2`, `w1 = (i·a0 + a1)/√2`. The outgoing
//! port is selected by comparing one uniform draw against
//! `|w0|²/(|w0|² + |w1|²)`, and the outgoing message carries the phase of
//! the selected amplitude.
//!
//! Fresh registers are `x = (0.5, 0.5)`, `y0 = y1 = 1` (phase zero), so a
//! new machine's transient is reproducible from the seed alone.

use num_complex::Complex64;

use crate::error::CoreError;
use crate::math;
use crate::message::{Message, Port};

/// Inverse square root of two, the 50/50 splitting amplitude.
const FRAC_1_SQRT_2: f64 = core::f64::consts::FRAC_1_SQRT_2;

/// The 2x2 unitary of the symmetric lossless beamsplitter, row-major:
/// `w = U · a` with `U = [[1, i], [i, 1]] / sqrt(2)`.
pub(crate) fn bs_unitary() -> [[Complex64; 2]; 2] {
    let r = Complex64::new(FRAC_1_SQRT_2, 0.0);
    let i = Complex64::new(0.0, FRAC_1_SQRT_2);
    [[r, i], [i, r]]
}

/// Output amplitudes of the transformation stage, one per exit port.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BsAmplitudes {
    pub w0: Complex64,
    pub w1: Complex64,
}

impl BsAmplitudes {
    /// Probability that the output-port draw selects port 0.
    pub fn p0(&self) -> f64 {
        let n0 = self.w0.norm_sqr();
        let n1 = self.w1.norm_sqr();
        n0 / (n0 + n1)
    }

    /// Total routed weight, 1 for any valid register state.
    pub fn weight(&self) -> f64 {
        self.w0.norm_sqr() + self.w1.norm_sqr()
    }
}

/// Internal registers of one DLM beamsplitter.
#[derive(Debug, Clone, PartialEq)]
pub struct DlmState {
    x: [f64; 2],
    y: [Complex64; 2],
    gamma: f64,
    events_seen: u64,
}

impl DlmState {
    /// Fresh machine with learning rate `gamma` in `[0, 1)`.
    pub fn new(gamma: f64) -> Result<Self, CoreError> {
        if !(0.0..1.0).contains(&gamma) {
            return Err(CoreError::InvalidParameter("gamma must be in [0, 1)"));
        }
        Ok(Self {
            x: [0.5, 0.5],
            y: [Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)],
            gamma,
            events_seen: 0,
        })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn events_seen(&self) -> u64 {
        self.events_seen
    }

    /// EMA port-frequency registers `(x0, x1)`.
    pub fn x(&self) -> (f64, f64) {
        (self.x[0], self.x[1])
    }

    /// Last-message phase registers as unit phasors `(y0, y1)`.
    pub fn y(&self) -> (Complex64, Complex64) {
        (self.y[0], self.y[1])
    }

    /// Register update for one incoming message.
    pub fn update(&mut self, msg: &Message) {
        let p = msg.port().index();
        self.x[p] = self.gamma * self.x[p] + (1.0 - self.gamma);
        // The complement is written exactly so x0 + x1 == 1 holds for any
        // gamma; it equals gamma * x_other in exact arithmetic.
        self.x[1 - p] = 1.0 - self.x[p];
        self.y[p] = Complex64::new(math::cos(msg.phase()), math::sin(msg.phase()));
        self.events_seen += 1;
    }

    /// Transformation stage: effective amplitudes through the 50/50 unitary.
    pub fn amplitudes(&self) -> BsAmplitudes {
        let u = bs_unitary();
        let a0 = self.y[0] * math::sqrt(self.x[0]);
        let a1 = self.y[1] * math::sqrt(self.x[1]);
        BsAmplitudes {
            w0: u[0][0] * a0 + u[0][1] * a1,
            w1: u[1][0] * a0 + u[1][1] * a1,
        }
    }

    /// Full event step: update registers, transform, select the exit port
    /// against `draw` in `[0, 1)`, and emit the outgoing message with the
    /// phase of the selected amplitude.
    pub fn process(&mut self, msg: &Message, draw: f64) -> (Port, Message) {
        debug_assert!((0.0..1.0).contains(&draw));
        self.update(msg);
        let amps = self.amplitudes();
        let (port, w) = if draw < amps.p0() {
            (Port::Zero, amps.w0)
        } else {
            (Port::One, amps.w1)
        };
        let phase = math::atan2(w.im, w.re);
        (port, Message::new(phase, msg.tag(), port))
    }

    /// One event tick. A DLM accepts a message on one input channel at a
    /// time, never on both: anything other than exactly one message is an
    /// error, nothing is silently dropped.
    pub fn process_tick(
        &mut self,
        inputs: &[Message],
        draw: f64,
    ) -> Result<(Port, Message), CoreError> {
        match inputs {
            [] => Err(CoreError::EmptyTick),
            [one] => Ok(self.process(one, draw)),
            _ => Err(CoreError::SimultaneousInput),
        }
    }

    /// Hardware reset: reinitialises every register, as if the physical
    /// device were swapped for a new one. The learning rate is kept.
    pub fn reset_hard(&mut self) {
        *self = Self::new(self.gamma).expect("gamma was validated at construction");
    }
}
