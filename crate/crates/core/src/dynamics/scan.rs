use num_traits::Signed;
use rayon::prelude::*;

use super::fixed::{fixed_point, LocalClass};
use super::trajectory::{trajectory, TrajectoryClass, TrajectoryOptions};
use crate::error::{Error, Result};
use crate::expansion::DecimalExpansion;
use crate::real::Fixed;
use crate::Rat;

/// Grid points beyond this are refused.
pub const MAX_SCAN_POINTS: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassScanRow {
    pub a: DecimalExpansion,
    pub class: TrajectoryClass,
    pub omega: Option<Fixed>,
    pub derivative: Option<Fixed>,
    pub local_class: LocalClass,
    /// Set when the row could not be computed at all.
    pub error: Option<String>,
}

/// Classifies every `a` on the grid `from, from + step, ..., <= to`.
///
/// Rows are computed in parallel and returned in grid order.
pub fn class_scan(
    from: &DecimalExpansion,
    to: &DecimalExpansion,
    step: &Rat,
    opts: &TrajectoryOptions,
) -> Result<Vec<ClassScanRow>> {
    if !step.is_positive() {
        return Err(Error::InvalidArgument(format!("step {step} is not positive")));
    }
    let (lo, hi) = (from.value(), to.value());
    if lo >= hi {
        return Err(Error::InvalidArgument(format!("empty range {from} .. {to}")));
    }
    let count = ((&hi - &lo) / step).floor().to_integer();
    if count >= MAX_SCAN_POINTS.into() {
        return Err(Error::Resource(format!(
            "grid of {count} points exceeds {MAX_SCAN_POINTS}"
        )));
    }
    let grid = (0..)
        .map(|i: i64| &lo + step * Rat::from_integer(i.into()))
        .take_while(|v| v <= &hi)
        .map(|v| DecimalExpansion::from_rat(&v))
        .collect::<Result<Vec<_>>>()?;
    Ok(class_scan_values(&grid, opts))
}

/// [`class_scan`] over an explicit list.
pub fn class_scan_values(values: &[DecimalExpansion], opts: &TrajectoryOptions) -> Vec<ClassScanRow> {
    values.par_iter().map(|a| scan_row(a, opts)).collect()
}

fn scan_row(a: &DecimalExpansion, opts: &TrajectoryOptions) -> ClassScanRow {
    let fp = fixed_point(a, opts.tol_digits);
    let tr = trajectory(a, opts);
    let (omega, derivative, local_class) = match &fp {
        Ok(fp) => (
            Some(fp.omega.clone()),
            Some(Fixed::from_rat(&match &fp.derivative {
                crate::laurent::Scalar::Exact(q) => q.clone(),
                crate::laurent::Scalar::Approx(f) => f.to_rat(),
            }, fp.omega.frac_bits())),
            fp.local_class,
        ),
        Err(_) => (None, None, LocalClass::Undetermined),
    };
    let error = match (&fp, &tr) {
        (_, Err(e)) | (Err(e), _) => Some(e.to_string()),
        _ => None,
    };
    ClassScanRow {
        a: a.clone(),
        class: tr.map(|r| r.class).unwrap_or(TrajectoryClass::Undetermined),
        omega,
        derivative,
        local_class,
        error,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn values(list: &[&str]) -> Vec<DecimalExpansion> {
        list.iter().map(|s| s.parse().unwrap()).collect()
    }

    #[test]
    fn integers_are_fixed_from_start() {
        let rows = class_scan_values(&values(&["2", "3", "9"]), &TrajectoryOptions::default());
        assert!(rows.iter().all(|r| r.class == TrajectoryClass::FixedFromStart));
    }

    #[test]
    fn single_digit_tenths_converge() {
        let list: Vec<String> = (1..=9).map(|m| format!("1.{m}")).collect();
        let refs: Vec<&str> = list.iter().map(String::as_str).collect();
        let rows = class_scan_values(&values(&refs), &TrajectoryOptions::default());
        for (m, r) in (1..=9).zip(&rows) {
            assert_eq!(r.class, TrajectoryClass::ConvergesToFixed, "1.{m}");
            let want = (1.0 + (4.0 * m as f64 + 1.0).sqrt()) / 2.0;
            assert!((r.omega.as_ref().unwrap().to_f64() - want).abs() < 1e-12);
        }
    }

    #[test]
    fn grid_order_and_classes() {
        let step = Rat::new(1.into(), 100.into());
        let rows = class_scan(
            &"1.04".parse().unwrap(),
            &"1.05".parse().unwrap(),
            &step,
            &TrajectoryOptions::default(),
        )
        .unwrap();
        let got: Vec<_> = rows.iter().map(|r| (r.a.to_string(), r.class)).collect();
        assert_eq!(
            got,
            [
                ("1.04".to_string(), TrajectoryClass::ConvergesToFixed),
                ("1.05".to_string(), TrajectoryClass::ConvergesToTwoCycle)
            ]
        );
        let reversed = class_scan(&"1.2".parse().unwrap(), &"1.1".parse().unwrap(), &step, &TrajectoryOptions::default());
        assert!(reversed.is_err());
    }
}
