use serde::{Deserialize, Serialize};

use super::stream::{sequence_term, SequenceId};
use crate::error::{Error, Result};
use crate::radix;
use crate::reinterpret::log10_nat;
use crate::Nat;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GrowthMode {
    /// From the exact term.
    Exact,
    /// From the log-log recurrence; see [`growth_loglog`].
    Estimated,
}

/// `log10 log10 s_n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GrowthPoint {
    pub n: u32,
    pub loglog: f64,
    pub mode: GrowthMode,
}

/// Above this `lambda = log log v` every correction to the step
/// `lambda += log10(d)` is below `10^-(10^20)` and vanishes in f64.
const SATURATED_LAMBDA: f64 = 20.0;

/// One bottom-up step `v -> k_v` on `lambda = log10 log10 v`.
///
/// With `d + 1` digits `c_d..c_0` in `k`:
/// `log k_v = d log v + log(c_d + c_{d-1}/v + ...)`, so
/// `lambda' = lambda + log10(d + log10(c_d + eps) 10^-lambda)`.
fn step(lambda: f64, k: u32) -> f64 {
    let digits = radix::decimal_digits(&Nat::from(k));
    let d = (digits.len() - 1) as f64;
    let log_v = 10f64.powf(lambda);
    let tail: f64 = digits
        .iter()
        .enumerate()
        .map(|(j, &c)| {
            // c_{d-j} v^-j
            if j == 0 {
                return c as f64;
            }
            let e = j as f64 * log_v;
            if e > 330.0 {
                0.0
            } else {
                c as f64 * 10f64.powf(-e)
            }
        })
        .sum();
    lambda + (d + tail.log10() * 10f64.powf(-lambda)).log10()
}

/// `sum_{j=10..=k} log10(digits(j) - 1)`, the saturated contribution of the
/// indices `10..=k`.
fn saturated_sum(k: u32) -> f64 {
    let mut total = 0.0;
    let mut lo = 10u64;
    let mut d = 1.0f64;
    while lo <= k as u64 {
        let hi = (lo * 10 - 1).min(k as u64);
        total += (hi - lo + 1) as f64 * d.log10();
        lo *= 10;
        d += 1.0;
    }
    total
}

/// Estimated `log log alpha_n`.
///
/// The chain is walked from its innermost index outward with [`step`]; once
/// `lambda` passes [`SATURATED_LAMBDA`] the remaining steps are added in
/// closed form, which makes each call cost `O(log n)` steps in practice.
pub fn alpha_loglog_estimate(n: u32) -> f64 {
    let mut lambda = (n as f64).log10().log10();
    for k in (10..n).rev() {
        if lambda > SATURATED_LAMBDA {
            return lambda + saturated_sum(k);
        }
        lambda = step(lambda, k);
    }
    lambda
}

/// The same estimate without the closed-form shortcut.
pub fn alpha_loglog_estimate_stepwise(n: u32) -> f64 {
    let mut lambda = (n as f64).log10().log10();
    for k in (10..n).rev() {
        lambda = step(lambda, k);
    }
    lambda
}

/// Estimated `log log gamma_n`.
pub fn gamma_loglog_estimate(n: u32) -> f64 {
    (11..=n).fold(0.0, step)
}

/// `log10 log10 s_n`, exactly from the term or estimated from the recurrence.
///
/// Estimated mode exists only for Alpha and Gamma. Against the exact value
/// its relative error is at the f64 rounding level (checked for `n <= 110`),
/// far inside the `10^-3` target.
pub fn growth_loglog(id: SequenceId, n: u32, mode: GrowthMode) -> Result<GrowthPoint> {
    if n < 11 {
        return Err(Error::InvalidArgument(format!(
            "log log needs n >= 11, got {n}"
        )));
    }
    let loglog = match (mode, id) {
        (GrowthMode::Exact, _) => log10_nat(&sequence_term(id, n)?).log10(),
        (GrowthMode::Estimated, SequenceId::Alpha) => alpha_loglog_estimate(n),
        (GrowthMode::Estimated, SequenceId::Gamma) => gamma_loglog_estimate(n),
        (GrowthMode::Estimated, _) => {
            return Err(Error::UnsupportedSequence {
                name: id.name(),
                reason: "only alpha and gamma have a log-log recurrence",
            });
        }
    };
    Ok(GrowthPoint { n, loglog, mode })
}

/// `log log u_n = log(11 * 12 * ... * n)` for the tower
/// `u_n = 10^(11*12*...*n)`.
pub fn tower_baseline_loglog_u(n: u32) -> Result<f64> {
    if n < 11 {
        return Err(Error::InvalidArgument(format!(
            "tower baseline needs n >= 11, got {n}"
        )));
    }
    Ok((11..=n).map(|i| (i as f64).log10()).sum())
}

/// `loglog / (n log log n)`.
pub fn growth_ratio(point: &GrowthPoint) -> f64 {
    let n = point.n as f64;
    point.loglog / (n * n.log10().log10())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn estimate_tracks_exact() {
        for n in [11, 12, 20, 30, 40, 60, 100] {
            for id in [SequenceId::Alpha, SequenceId::Gamma] {
                let e = growth_loglog(id, n, GrowthMode::Exact).unwrap().loglog;
                let a = growth_loglog(id, n, GrowthMode::Estimated).unwrap().loglog;
                assert!(((a - e) / e).abs() < 1e-9, "{id} {n}: {a} vs {e}");
            }
        }
    }

    #[test]
    fn shortcut_matches_stepwise() {
        for n in [150, 999, 1000, 1001, 4321, 20_000] {
            let a = alpha_loglog_estimate(n);
            let b = alpha_loglog_estimate_stepwise(n);
            assert!(((a - b) / b).abs() < 1e-12, "{n}: {a} vs {b}");
        }
    }

    #[test]
    fn baselines() {
        assert!((tower_baseline_loglog_u(11).unwrap() - 1.0414).abs() < 1e-4);
        assert!((tower_baseline_loglog_u(12).unwrap() - 2.1206).abs() < 1e-4);
        assert!(tower_baseline_loglog_u(10).is_err());
    }

    #[test]
    fn estimated_rejects_top_down() {
        assert!(growth_loglog(SequenceId::Beta, 30, GrowthMode::Estimated).is_err());
    }
}
