use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::stepper::Stepper;
use crate::error::{Error, Result};
use crate::expansion::DecimalExpansion;
use crate::laurent::{LaurentMap, Scalar};
use crate::real::Fixed;
use crate::Rat;

/// Local behaviour of the fixed point from `L'(omega)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LocalClass {
    Attractor,
    Neutral,
    Repelling,
    Undetermined,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedPointResult {
    pub omega: Fixed,
    /// Set when `L(omega) = omega` was confirmed in exact arithmetic.
    pub omega_exact: Option<Rat>,
    /// `L(lo) >= lo` and `L(hi) <= hi`.
    pub bracket: (Fixed, Fixed),
    pub derivative: Scalar,
    pub local_class: LocalClass,
    /// Neutral only up to the tolerance, not certified exactly.
    pub numerically_neutral: bool,
}

impl FixedPointResult {
    pub fn derivative_f64(&self) -> f64 {
        match &self.derivative {
            Scalar::Exact(q) => Fixed::from_rat(q, 64).to_f64(),
            Scalar::Approx(f) => f.to_f64(),
        }
    }
}

/// Working digits used to locate a fixed point to `tol_digits`.
pub(crate) fn working_digits_for(tol_digits: u32) -> u32 {
    (tol_digits + 16).max(32)
}

/// Largest denominator tried when looking for a rational fixed point.
const EXACT_DENOMINATOR_CAP: u64 = 1_000_000;

/// The fixed point of `L<a>` on `(1, oo)`, located by bisection on the
/// decreasing `L(x) - x`, then matched against nearby small-denominator
/// rationals in exact arithmetic.
pub fn fixed_point(a: &DecimalExpansion, tol_digits: u32) -> Result<FixedPointResult> {
    let stepper = Stepper::new(a, working_digits_for(tol_digits));
    locate(&stepper, tol_digits)
}

pub(crate) fn locate(stepper: &Stepper, tol_digits: u32) -> Result<FixedPointResult> {
    let map = &stepper.map;
    if map.is_constant() {
        let v = map.source().value();
        return Ok(FixedPointResult {
            omega: stepper.lift(&v),
            omega_exact: Some(v.clone()),
            bracket: (stepper.lift(&v), stepper.lift(&v)),
            derivative: Scalar::Exact(Rat::zero()),
            local_class: LocalClass::Attractor,
            numerically_neutral: false,
        });
    }
    let g = |x: &Fixed| -> Result<Fixed> {
        stepper
            .eval(x)
            .map(|y| y.sub(x))
            .ok_or_else(|| Error::PrecisionExhausted(format!("L evaluated at {}", x.to_decimal(30))))
    };
    let mut hi = stepper.int(10);
    while g(&hi)?.signum() > 0 {
        hi = hi.mul_int(2);
    }
    let one = stepper.int(1);
    let mut lo = stepper.int(3).div(&stepper.int(2));
    while g(&lo)?.is_negative() {
        lo = one.add(&lo.sub(&one).div(&stepper.int(2)));
    }
    if lo > hi {
        lo = one.add(&hi.sub(&one).div(&stepper.int(2)));
    }
    let width = stepper.ten_neg((tol_digits + 4).min(stepper.digits - 4));
    while hi.sub(&lo) > width {
        let mid = lo.midpoint(&hi);
        if mid == lo || mid == hi {
            break;
        }
        if g(&mid)?.is_negative() {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let omega = lo.midpoint(&hi);
    let omega_exact = exact_candidate(map, &lo, &hi);
    let (omega, derivative) = match &omega_exact {
        Some(q) => (stepper.lift(q), Scalar::Exact(map.derivative(q))),
        None => (
            omega.clone(),
            Scalar::Approx(stepper.derivative(&omega).expect("omega lies above the floor")),
        ),
    };
    let (local_class, numerically_neutral) = classify(&derivative, tol_digits);
    Ok(FixedPointResult {
        omega,
        omega_exact,
        bracket: (lo, hi),
        derivative,
        local_class,
        numerically_neutral,
    })
}

/// Continued-fraction convergents of `lo` with small denominators that lie
/// in `[lo, hi]` and solve `L(q) = q` exactly.
fn exact_candidate(map: &LaurentMap, lo: &Fixed, hi: &Fixed) -> Option<Rat> {
    let target = lo.midpoint(hi).to_rat();
    let (lo, hi) = (lo.to_rat(), hi.to_rat());
    let cap = BigInt::from(EXACT_DENOMINATOR_CAP);
    let (mut p0, mut q0, mut p1, mut q1) = (BigInt::zero(), BigInt::one(), BigInt::one(), BigInt::zero());
    let mut rest = target;
    loop {
        let whole = rest.floor().to_integer();
        let (p2, q2) = (&whole * &p1 + &p0, &whole * &q1 + &q0);
        if q2 > cap {
            return None;
        }
        let q = Rat::new(p2.clone(), q2.clone());
        if q >= lo && q <= hi && q > Rat::one() && map.eval(&q) == q {
            return Some(q);
        }
        let frac = &rest - Rat::from_integer(whole);
        if frac.is_zero() {
            return None;
        }
        rest = frac.recip();
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
    }
}

/// Tolerance on `|L'(omega) + 1|` below which a point counts as neutral.
fn neutral_band(tol_digits: u32) -> Rat {
    Rat::new(BigInt::one(), BigInt::from(10u32).pow(tol_digits / 2))
}

fn classify(derivative: &Scalar, tol_digits: u32) -> (LocalClass, bool) {
    let d = match derivative {
        Scalar::Exact(q) => q.clone(),
        Scalar::Approx(f) => f.to_rat(),
    };
    let minus_one = -Rat::one();
    if let Scalar::Exact(_) = derivative {
        if d == minus_one {
            return (LocalClass::Neutral, false);
        }
    }
    let band = neutral_band(tol_digits);
    let gap = &d - &minus_one;
    if matches!(derivative, Scalar::Approx(_)) && gap.abs() < band {
        return (LocalClass::Neutral, true);
    }
    if gap.is_positive() && !d.is_positive() {
        (LocalClass::Attractor, false)
    } else if gap.is_negative() {
        (LocalClass::Repelling, false)
    } else {
        (LocalClass::Undetermined, false)
    }
}

/// The local class of the fixed point of `L<a>`.
pub fn classify_fixed_point(a: &DecimalExpansion, tol_digits: u32) -> Result<LocalClass> {
    Ok(fixed_point(a, tol_digits)?.local_class)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(a: &str) -> FixedPointResult {
        fixed_point(&a.parse().unwrap(), 30).unwrap()
    }

    #[test]
    fn golden_ratio() {
        let r = fp("1.1");
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((r.omega.to_f64() - phi).abs() < 1e-15);
        assert_eq!(r.local_class, LocalClass::Attractor);
        let (lo, hi) = &r.bracket;
        assert!(lo <= &r.omega && &r.omega <= hi);
        assert!(hi.sub(lo) < Fixed::ten_pow_neg(30, hi.frac_bits()));
    }

    #[test]
    fn cubic_roots() {
        for (a, root) in [("1.01", 1.465571231876768), ("1.02", 1.695620769559862), ("1.03", 1.863706527819189)] {
            assert!((fp(a).omega.to_f64() - root).abs() < 1e-12, "{a}");
        }
    }

    #[test]
    fn rational_fixed_points() {
        let r = fp("1.04");
        assert_eq!(r.omega_exact, Some(Rat::from_integer(2.into())));
        assert_eq!(r.derivative, Scalar::Exact(Rat::from_integer((-1).into())));
        assert_eq!(r.local_class, LocalClass::Neutral);
        assert!(!r.numerically_neutral);

        let r = fp("3");
        assert_eq!(r.omega_exact, Some(Rat::from_integer(3.into())));
        assert_eq!(r.local_class, LocalClass::Attractor);
    }

    #[test]
    fn local_classes() {
        let c = |a: &str| classify_fixed_point(&a.parse().unwrap(), 20).unwrap();
        assert_eq!(c("1.05"), LocalClass::Repelling);
        assert_eq!(c("1.1110000099"), LocalClass::Attractor);
        assert_eq!(c("1.(01)"), LocalClass::Repelling);
    }
}
