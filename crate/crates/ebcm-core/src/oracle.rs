//! Closed-form wave-theory predictions: the memoryless baseline.
//!
//! Wave theory — classical or quantum — assigns the interferometer fixed
//! detector probabilities that depend only on the arm phase difference,
//! never on how many photons passed before or on undetected light sent in
//! between. Detector D0 carries `sin²(Δφ/2)` so that it is dark for the
//! balanced instrument.

use crate::dlm::bs_unitary;
use crate::error::CoreError;
use crate::math;
use crate::schedule::Schedule;

/// Wave-theory detector probabilities for one phase configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleResult {
    pub p0: f64,
    pub p1: f64,
}

/// Detector probabilities of the lossless MZI: `p0 = sin²((φ0 − φ1)/2)`,
/// `p1 = cos²((φ0 − φ1)/2)`.
pub fn mzi_probabilities(phi0: f64, phi1: f64) -> OracleResult {
    let half = (phi0 - phi1) / 2.0;
    let s = math::sin(half);
    let c = math::cos(half);
    OracleResult {
        p0: s * s,
        p1: c * c,
    }
}

/// Mean and standard deviation of a binomial count: the source emits a
/// fixed number of photons, so fluctuations scale as `sqrt(n·p·(1−p))`.
pub fn expected_counts(n: u64, p: f64) -> (f64, f64) {
    debug_assert!((0.0..=1.0).contains(&p));
    let nf = n as f64;
    (nf * p, math::sqrt(nf * p * (1.0 - p)))
}

/// Output distribution for two indistinguishable photons entering the
/// 50/50 beamsplitter from different ports.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HomResult {
    /// Both photons exit on mode a.
    pub p20: f64,
    /// Both photons exit on mode b.
    pub p02: f64,
    /// One photon on each output (coincidence).
    pub p11: f64,
}

/// Two-photon bunching at the beamsplitter, computed from the same 2x2
/// unitary the simulator uses. The coincidence amplitude cancels exactly:
/// the photons always leave together. A one-particle-at-a-time event
/// model has no channel for this effect.
pub fn hom_probabilities() -> HomResult {
    let u = bs_unitary();
    // One photon on each input. Bosonic amplitudes for the three outcomes:
    // both on output 0, both on output 1, one on each.
    let both0 = u[0][0] * u[0][1] * math::sqrt(2.0);
    let both1 = u[1][0] * u[1][1] * math::sqrt(2.0);
    let coincidence = u[0][0] * u[1][1] + u[0][1] * u[1][0];
    let (p20, p02, p11) = (both0.norm_sqr(), both1.norm_sqr(), coincidence.norm_sqr());
    let total = p20 + p02 + p11;
    HomResult {
        p20: p20 / total,
        p02: p02 / total,
        p11: p11 / total,
    }
}

/// Binomial count moments for one detector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CountMoments {
    pub mean: f64,
    pub stddev: f64,
}

/// Wave-theory prediction for a whole schedule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AggregatePrediction {
    pub total_data: u64,
    pub p: OracleResult,
    pub d0: CountMoments,
    pub d1: CountMoments,
}

/// Predicted aggregate counts for a schedule: reset blocks contribute
/// nothing (the detectors are gated while they run), so the prediction
/// depends on the schedule only through the total number of data photons.
/// Any re-partitioning of the data and any interleaving of undetected
/// reset photons leaves it unchanged.
pub fn aggregate_prediction(
    schedule: &Schedule,
    phi0: f64,
    phi1: f64,
) -> Result<AggregatePrediction, CoreError> {
    schedule.validate()?;
    let total = schedule.total_data();
    let p = mzi_probabilities(phi0, phi1);
    let (m0, s0) = expected_counts(total, p.p0);
    let (m1, s1) = expected_counts(total, p.p1);
    Ok(AggregatePrediction {
        total_data: total,
        p,
        d0: CountMoments {
            mean: m0,
            stddev: s0,
        },
        d1: CountMoments {
            mean: m1,
            stddev: s1,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schedule::Block;
    use alloc::vec;
    use approx::assert_abs_diff_eq;
    use core::f64::consts::PI;

    #[test]
    fn balanced_interferometer_has_a_dark_port() {
        let r = mzi_probabilities(0.0, 0.0);
        assert_eq!(r.p0, 0.0);
        assert_eq!(r.p1, 1.0);
    }

    #[test]
    fn half_period_shift_swaps_the_ports() {
        let r = mzi_probabilities(PI, 0.0);
        assert_abs_diff_eq!(r.p0, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.p1, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn quarter_period_is_balanced() {
        let r = mzi_probabilities(PI / 2.0, 0.0);
        assert_abs_diff_eq!(r.p0, 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(r.p1, 0.5, epsilon = 1e-12);
    }

    #[test]
    fn binomial_moments() {
        let (mean, sd) = expected_counts(100, 0.25);
        assert_eq!(mean, 25.0);
        assert_abs_diff_eq!(sd, 4.330127018922194, epsilon = 1e-12);

        assert_eq!(expected_counts(10_000, 0.0), (0.0, 0.0));
        assert_eq!(expected_counts(0, 0.7), (0.0, 0.0));
    }

    #[test]
    fn photons_bunch_and_never_coincide() {
        let h = hom_probabilities();
        assert_abs_diff_eq!(h.p11, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(h.p20 + h.p02 + h.p11, 1.0, epsilon = 1e-12);
        assert_eq!(h.p20, h.p02);
        assert_abs_diff_eq!(h.p20, 0.5, epsilon = 1e-12);
    }

    #[test]
    fn prediction_counts_data_blocks_only() {
        let plain = Schedule::new(vec![Block::data(100)]);
        let padded = Schedule::new(vec![Block::data(50), Block::reset(10_000), Block::data(50)]);
        let a = aggregate_prediction(&plain, 0.0, 0.0).unwrap();
        let b = aggregate_prediction(&padded, 0.0, 0.0).unwrap();
        assert_eq!(a.total_data, 100);
        assert_eq!(a.d0.mean, 0.0);
        assert_eq!(a, b);
    }

    #[test]
    fn prediction_at_the_balanced_point() {
        let s = Schedule::new(vec![Block::data(30), Block::hw_reset(), Block::data(70)]);
        let p = aggregate_prediction(&s, PI / 2.0, 0.0).unwrap();
        assert_eq!(p.total_data, 100);
        assert_abs_diff_eq!(p.d0.mean, 50.0, epsilon = 1e-10);
        assert_abs_diff_eq!(p.d0.stddev, 5.0, epsilon = 1e-10);
    }
}
