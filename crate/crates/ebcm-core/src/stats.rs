//! Counting statistics: z-scores against a binomial reference, sqrt-N
//! bound checks, transient-length estimation, and a two-sample
//! chi-square comparison.

use crate::error::CoreError;
use crate::math;
use crate::mzi::Detector;
use crate::oracle::OracleResult;

/// Default number of binomial standard deviations beyond which a count is
/// flagged as a sqrt-N bound violation. At 5σ statistical false alarms
/// are negligible at desk scale.
pub const DEFAULT_SQRT_N_THRESHOLD: f64 = 5.0;

/// Verdict for reference probabilities 0 or 1, where the Gaussian z is
/// undefined and any forbidden count is conclusive on its own.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegenerateVerdict {
    Consistent,
    Violation,
}

/// A z-score, or the exact verdict when the reference is degenerate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ZScore {
    Value(f64),
    Degenerate(DegenerateVerdict),
}

/// Standardised deviation of `count` successes out of `n` against a
/// binomial with success probability `p`. For `p` of exactly 0 or 1 the
/// spread is zero and the answer is an exact verdict instead: any count
/// off the forced value is a violation.
pub fn z_score(count: u64, n: u64, p: f64) -> Result<ZScore, CoreError> {
    if n == 0 {
        return Err(CoreError::InvalidInput("n must be positive"));
    }
    if count > n {
        return Err(CoreError::InvalidInput("count exceeds n"));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(CoreError::InvalidInput("p must be in [0, 1]"));
    }
    if p == 0.0 {
        return Ok(ZScore::Degenerate(if count > 0 {
            DegenerateVerdict::Violation
        } else {
            DegenerateVerdict::Consistent
        }));
    }
    if p == 1.0 {
        return Ok(ZScore::Degenerate(if count < n {
            DegenerateVerdict::Violation
        } else {
            DegenerateVerdict::Consistent
        }));
    }
    let nf = n as f64;
    let mean = nf * p;
    let sd = math::sqrt(nf * p * (1.0 - p));
    Ok(ZScore::Value((count as f64 - mean) / sd))
}

/// Outcome of the sqrt-N bound check. A violation reports the offending
/// z-score; an exact (degenerate-reference) violation reports infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SqrtNOutcome {
    Consistent,
    Violation { z: f64 },
}

impl SqrtNOutcome {
    pub fn is_violation(&self) -> bool {
        matches!(self, SqrtNOutcome::Violation { .. })
    }
}

/// Checks whether per-detector counts stay within `threshold` binomial
/// standard deviations of the wave-theory expectation. Count
/// fluctuations beyond that are too large to be statistical.
pub fn sqrt_n_check(
    d0: u64,
    d1: u64,
    n: u64,
    oracle: &OracleResult,
    threshold: f64,
) -> Result<SqrtNOutcome, CoreError> {
    if d0.checked_add(d1) != Some(n) {
        return Err(CoreError::InvalidInput("detector counts must sum to n"));
    }
    let mut worst: Option<f64> = None;
    for (count, p) in [(d0, oracle.p0), (d1, oracle.p1)] {
        match z_score(count, n, p)? {
            ZScore::Value(z) => {
                if math::fabs(z) > threshold {
                    let cur = worst.get_or_insert(z);
                    if math::fabs(z) > math::fabs(*cur) {
                        *cur = z;
                    }
                }
            }
            ZScore::Degenerate(DegenerateVerdict::Violation) => {
                return Ok(SqrtNOutcome::Violation { z: f64::INFINITY });
            }
            ZScore::Degenerate(DegenerateVerdict::Consistent) => {}
        }
    }
    Ok(match worst {
        Some(z) => SqrtNOutcome::Violation { z },
        None => SqrtNOutcome::Consistent,
    })
}

/// Result of the transient-length scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransientOutcome {
    /// Smallest start index from which every window stays within `eps`.
    Converged(usize),
    /// Even the final window deviates from the expectation.
    NotConverged,
}

/// Finds where a click stream settles to its expected D0 rate: the
/// smallest index `t` such that every sliding window of `window` clicks
/// beginning at or after `t` has `|freq_d0 − p0_expected| <= eps`.
pub fn transient_length(
    clicks: &[Detector],
    p0_expected: f64,
    window: usize,
    eps: f64,
) -> Result<TransientOutcome, CoreError> {
    if clicks.is_empty() {
        return Err(CoreError::EmptyStream);
    }
    if window == 0 {
        return Err(CoreError::InvalidInput("window must be positive"));
    }
    if window > clicks.len() {
        return Err(CoreError::WindowTooLarge);
    }
    if !(0.0..=1.0).contains(&p0_expected) {
        return Err(CoreError::InvalidInput("p0_expected must be in [0, 1]"));
    }

    let w = window as f64;
    let mut in_window: u64 = clicks[..window]
        .iter()
        .filter(|&&d| d == Detector::D0)
        .count() as u64;
    let within = |count: u64| math::fabs(count as f64 / w - p0_expected) <= eps;

    let mut last_bad: Option<usize> = None;
    let last_start = clicks.len() - window;
    for start in 0..=last_start {
        if start > 0 {
            if clicks[start - 1] == Detector::D0 {
                in_window -= 1;
            }
            if clicks[start + window - 1] == Detector::D0 {
                in_window += 1;
            }
        }
        if !within(in_window) {
            last_bad = Some(start);
        }
    }
    Ok(match last_bad {
        Some(s) if s == last_start => TransientOutcome::NotConverged,
        Some(s) => TransientOutcome::Converged(s + 1),
        None => TransientOutcome::Converged(0),
    })
}

/// Two-sample chi-square comparison result.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoSampleTest {
    pub chi2: f64,
    pub p_value: f64,
}

/// 2x2 chi-square test of homogeneity (detector x run, one degree of
/// freedom) between two runs' per-detector counts. A detector column
/// whose pooled count is zero carries no information and is dropped, so
/// identical degenerate samples compare as equal.
pub fn compare_runs(a: (u64, u64), b: (u64, u64)) -> Result<TwoSampleTest, CoreError> {
    let na = a.0 + a.1;
    let nb = b.0 + b.1;
    if na == 0 || nb == 0 {
        return Err(CoreError::ZeroTotal);
    }
    let n = (na + nb) as f64;
    let mut chi2 = 0.0;
    for (ca, cb) in [(a.0, b.0), (a.1, b.1)] {
        let pooled = (ca + cb) as f64;
        if pooled == 0.0 {
            continue;
        }
        let term = |count: u64, total: u64| {
            let expected = total as f64 * pooled / n;
            let diff = count as f64 - expected;
            diff * diff / expected
        };
        // One addition per column, commutative in the two runs, so the
        // result is bit-identical under argument swap.
        chi2 += term(ca, na) + term(cb, nb);
    }
    // Survival function of chi-square with 1 d.o.f.
    let p_value = math::erfc(math::sqrt(chi2 / 2.0));
    Ok(TwoSampleTest { chi2, p_value })
}
