use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::FromPrimitive;
use serde::{Deserialize, Serialize};

use super::stream::{sequence_stream, SequenceId};
use crate::error::{Error, Result};
use crate::reinterpret::{log10_nat, reinterpret};
use crate::{radix, Nat, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub n: u32,
    pub relation: String,
    #[serde(with = "crate::serde_nat")]
    pub lhs: Nat,
    #[serde(with = "crate::serde_nat")]
    pub rhs: Nat,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityRow {
    pub n: u32,
    pub beta_ge_alpha: bool,
    pub delta_ge_gamma: bool,
    pub beta_ge_gamma: bool,
    /// Empirical only: which of alpha and gamma is larger.
    pub alpha_vs_gamma: String,
    pub digits: [u64; 4],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub n_max: u32,
    pub rows: Vec<InequalityRow>,
    pub violations: Vec<Violation>,
}

impl InequalityReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `beta_n >= alpha_n`, `delta_n >= gamma_n` and `beta_n >= gamma_n`
/// for every `n` in `10..=n_max`, and records how alpha compares with gamma.
pub fn inequality_report(n_max: u32) -> Result<InequalityReport> {
    let mut streams = SequenceId::ALL.map(|id| sequence_stream(id, n_max));
    for s in &streams {
        if let Err(e) = s {
            return Err(e.clone());
        }
    }
    let mut streams = streams.each_mut().map(|s| s.as_mut().expect("checked above"));
    let mut rows = Vec::new();
    let mut violations = Vec::new();
    for n in 10..=n_max {
        let mut terms = Vec::with_capacity(4);
        for s in streams.iter_mut() {
            let (k, v) = s.next().expect("stream covers n_max")?;
            debug_assert_eq!(k, n);
            terms.push(v);
        }
        let [alpha, beta, gamma, delta] = <[Nat; 4]>::try_from(terms).expect("four streams");
        let mut check = |lhs: &Nat, rhs: &Nat, relation: &str| {
            let ok = lhs >= rhs;
            if !ok {
                violations.push(Violation {
                    n,
                    relation: relation.into(),
                    lhs: lhs.clone(),
                    rhs: rhs.clone(),
                });
            }
            ok
        };
        let row = InequalityRow {
            n,
            beta_ge_alpha: check(&beta, &alpha, "beta >= alpha"),
            delta_ge_gamma: check(&delta, &gamma, "delta >= gamma"),
            beta_ge_gamma: check(&beta, &gamma, "beta >= gamma"),
            alpha_vs_gamma: match alpha.cmp(&gamma) {
                Ordering::Less => "alpha < gamma",
                Ordering::Equal => "alpha = gamma",
                Ordering::Greater => "alpha > gamma",
            }
            .into(),
            digits: [&alpha, &beta, &gamma, &delta].map(radix::decimal_len),
        };
        rows.push(row);
    }
    Ok(InequalityReport {
        n_max,
        rows,
        violations,
    })
}

/// `a_c >= k (c_b)` given `k > 10`, `a >= k b` and `log c >= log k / (log k - 1)`.
///
/// Returns [`Error::HypothesisNotMet`] when the inputs fall outside the
/// hypotheses; `Ok(false)` would be a genuine counterexample.
pub fn lbg_check(a: &Nat, b: &Nat, c: &Nat, k: f64) -> Result<bool> {
    let kq: Rat = BigRational::from_f64(k)
        .ok_or_else(|| Error::InvalidArgument(format!("k = {k} is not finite")))?;
    if k <= 10.0 {
        return Err(Error::HypothesisNotMet(format!("k = {k} is not above 10")));
    }
    let as_rat = |n: &Nat| Rat::from_integer(n.clone().into());
    if as_rat(a) < &kq * as_rat(b) {
        return Err(Error::HypothesisNotMet(format!("a = {a} is below k b")));
    }
    let log_k = k.log10();
    if log10_nat(c) < log_k / (log_k - 1.0) {
        return Err(Error::HypothesisNotMet(format!(
            "log c = {} is below log k / (log k - 1) = {}",
            log10_nat(c),
            log_k / (log_k - 1.0)
        )));
    }
    let lhs = reinterpret(a, c)?;
    let rhs = reinterpret(c, b)?;
    Ok(as_rat(&lhs) >= kq * as_rat(&rhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_report_has_no_violations() {
        let r = inequality_report(25).unwrap();
        assert!(r.passed());
        assert_eq!(r.rows.len(), 16);
    }

    #[test]
    fn lbg_examples() {
        let n = |v: u64| Nat::from(v);
        assert!(lbg_check(&n(1_000_000), &n(11), &n(10_000), 1e4).unwrap());
        assert!(matches!(
            lbg_check(&n(1_000), &n(50), &n(10_000), 1e4),
            Err(Error::HypothesisNotMet(_))
        ));
        assert!(matches!(
            lbg_check(&n(1_000_000), &n(11), &n(10_000), 5.0),
            Err(Error::HypothesisNotMet(_))
        ));
    }
}
