use num_traits::One;

use super::fixed::{locate, working_digits_for};
use super::stepper::Stepper;
use crate::error::Result;
use crate::expansion::DecimalExpansion;
use crate::real::Fixed;
use crate::Rat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoCycle {
    pub u: Fixed,
    pub v: Fixed,
    /// Present when `L(u) = v` and `L(v) = u` hold exactly.
    pub exact: Option<(Rat, Rat)>,
    /// `|L(L(u)) - u|`.
    pub residual: Fixed,
}

/// Uniform grid points on `(1, omega)` besides the refinements at both ends.
const GRID: usize = 400;

/// A pair `u < omega < v` with `L(u) = v` and `L(v) = u`.
///
/// `(a, 10)` is tried first in exact arithmetic (it is a cycle exactly when
/// `L(a) = 10`). Otherwise `L(L(x)) - x` is scanned on `(1, omega)` and the
/// outermost sign change is refined by bisection. `None` when no pair
/// resolves at the requested tolerance.
pub fn two_cycle(a: &DecimalExpansion, tol_digits: u32) -> Result<Option<TwoCycle>> {
    let st = Stepper::new(a, working_digits_for(tol_digits));
    let fp = locate(&st, tol_digits)?;
    let ten = Rat::from_integer(10.into());
    let av = a.value();
    if av != ten && st.map.eval(&av) == ten {
        return Ok(Some(TwoCycle {
            u: st.lift(&av),
            v: st.int(10),
            exact: Some((av, ten)),
            residual: st.int(0),
        }));
    }
    if fp.omega_exact.as_ref().is_some_and(|w| w <= &Rat::one()) {
        return Ok(None);
    }
    let omega = fp.omega.clone();
    let one = st.int(1);
    let span = omega.sub(&one);
    let two = st.int(2);
    let mut xs: Vec<Fixed> = (1..GRID)
        .map(|i| one.add(&span.mul_int(i as i64).div(&st.int(GRID as i64))))
        .collect();
    let mut near_one = span.clone();
    let mut near_omega = span.clone();
    for _ in 0..64 {
        near_one = near_one.div(&two);
        near_omega = near_omega.div(&two);
        xs.push(one.add(&near_one));
        xs.push(omega.sub(&near_omega));
    }
    xs.retain(|x| x > &st.floor && x < &omega);
    xs.sort();
    xs.dedup();
    let noise = st.noise();
    let tol = st.ten_neg(tol_digits);
    let mut last: Option<(Fixed, i32)> = None;
    for x in xs {
        let Some(hx) = st.h(&x) else { continue };
        if hx.abs() < noise {
            continue;
        }
        let sign = hx.signum();
        if let Some((px, ps)) = &last {
            if *ps != sign {
                if let Some(found) = refine(&st, px, *ps, &x, &omega, &tol) {
                    return Ok(Some(found));
                }
            }
        }
        last = Some((x, sign));
    }
    Ok(None)
}

fn refine(st: &Stepper, lo: &Fixed, lo_sign: i32, hi: &Fixed, omega: &Fixed, tol: &Fixed) -> Option<TwoCycle> {
    let (mut lo, mut hi) = (lo.clone(), hi.clone());
    let width = st.noise();
    while hi.sub(&lo) > width {
        let mid = lo.midpoint(&hi);
        if mid == lo || mid == hi {
            break;
        }
        if st.h(&mid)?.signum() == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let u = lo.midpoint(&hi);
    let v = st.eval(&u)?;
    let residual = st.h(&u)?.abs();
    let separated = omega.sub(&u) > *tol && v.sub(omega) > *tol;
    (residual < *tol && separated).then_some(TwoCycle {
        u,
        v,
        exact: None,
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::fixed_point;

    fn pair(a: &str) -> Option<TwoCycle> {
        two_cycle(&a.parse().unwrap(), 20).unwrap()
    }

    #[test]
    fn exact_pair() {
        let c = pair("1.(1)").unwrap();
        let ten_ninths = Rat::new(10.into(), 9.into());
        assert_eq!(c.exact, Some((ten_ninths, Rat::from_integer(10.into()))));
    }

    #[test]
    fn numerical_pair() {
        let a: DecimalExpansion = "1.05".parse().unwrap();
        let c = two_cycle(&a, 20).unwrap().unwrap();
        let omega = fixed_point(&a, 20).unwrap().omega;
        assert!(c.u < omega && omega < c.v);
        assert!(c.residual < Fixed::ten_pow_neg(20, c.residual.frac_bits()));
        // u and v solve x^2 - 5x + 5 = 0
        assert!((c.u.to_f64() - (5.0 - 5f64.sqrt()) / 2.0).abs() < 1e-12);
        assert!((c.v.to_f64() - (5.0 + 5f64.sqrt()) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn attracting_cases_have_none() {
        assert_eq!(pair("1.1"), None);
        assert_eq!(pair("1.02"), None);
    }
}
