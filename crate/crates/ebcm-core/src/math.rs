//! Float helpers routed through `libm` so results are bit-identical on
//! every platform, which the determinism contract relies on.

pub(crate) use libm::{atan2, cos, erfc, fabs, sin, sqrt};

pub(crate) const TAU: f64 = core::f64::consts::TAU;

/// Reduces an angle into `[0, 2π)`.
pub(crate) fn reduce_phase(psi: f64) -> f64 {
    let mut r = psi % TAU;
    if r < 0.0 {
        r += TAU;
    }
    // r == TAU can survive the adjustment when psi is a tiny negative number.
    if r >= TAU {
        r -= TAU;
    }
    r
}

/// Uniform draw in `[0, 1)` with 53 random bits, one `u64` per draw.
pub(crate) fn unit_f64(rng: &mut impl rand_core::RngCore) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}
