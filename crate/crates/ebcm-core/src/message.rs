//! Single-photon events ("messages") and the ports they travel on.

use crate::math;

/// One of the two input/output channels of a beamsplitter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Port {
    Zero,
    One,
}

impl Port {
    pub fn index(self) -> usize {
        match self {
            Port::Zero => 0,
            Port::One => 1,
        }
    }

    pub fn other(self) -> Port {
        match self {
            Port::Zero => Port::One,
            Port::One => Port::Zero,
        }
    }
}

/// Distinguishes photons whose statistics are measured from photons sent
/// only to modify beamsplitter registers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Tag {
    Data,
    Reset,
}

/// A single photon event: a phase, an immutable source tag, and the port
/// it arrives on. The phase is reduced into `[0, 2π)` at construction and
/// stays there through every transformation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Message {
    phase: f64,
    tag: Tag,
    port: Port,
}

impl Message {
    pub fn new(phase: f64, tag: Tag, port: Port) -> Self {
        Self {
            phase: math::reduce_phase(phase),
            tag,
            port,
        }
    }

    pub fn phase(&self) -> f64 {
        self.phase
    }

    pub fn tag(&self) -> Tag {
        self.tag
    }

    pub fn port(&self) -> Port {
        self.port
    }

    /// Applies a phase shifter: the phase advances by `phi` (mod 2π),
    /// tag and port are untouched.
    pub fn phase_shifted(&self, phi: f64) -> Message {
        Message::new(self.phase + phi, self.tag, self.port)
    }
}

/// Free-function form of [`Message::phase_shifted`].
pub fn phase_shift(msg: &Message, phi: f64) -> Message {
    msg.phase_shifted(phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use core::f64::consts::PI;

    #[test]
    fn phase_shift_adds_modulo_tau() {
        let m = Message::new(0.0, Tag::Data, Port::Zero);
        assert_abs_diff_eq!(m.phase_shifted(PI / 2.0).phase(), PI / 2.0, epsilon = 1e-12);

        let m = Message::new(3.0 * PI / 2.0, Tag::Data, Port::Zero);
        assert_abs_diff_eq!(m.phase_shifted(PI).phase(), PI / 2.0, epsilon = 1e-12);

        let m = Message::new(1.0, Tag::Reset, Port::One);
        assert_eq!(m.phase_shifted(0.0).phase(), 1.0);
    }

    #[test]
    fn shift_preserves_tag_and_port() {
        let m = Message::new(0.3, Tag::Reset, Port::One);
        let s = m.phase_shifted(4.0);
        assert_eq!(s.tag(), Tag::Reset);
        assert_eq!(s.port(), Port::One);
    }

    #[test]
    fn construction_reduces_phase() {
        let m = Message::new(-PI, Tag::Data, Port::Zero);
        assert_abs_diff_eq!(m.phase(), PI, epsilon = 1e-12);
        let m = Message::new(2.0 * PI, Tag::Data, Port::Zero);
        assert_abs_diff_eq!(m.phase(), 0.0, epsilon = 1e-12);
    }
}
