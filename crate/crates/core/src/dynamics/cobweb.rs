use super::stepper::Stepper;
use crate::error::{Error, Result};
use crate::expansion::DecimalExpansion;
use crate::real::Fixed;
use crate::Rat;

/// Working digits for plot data.
const COBWEB_DIGITS: u32 = 40;
/// Samples of `y = L(x)` across the visited range.
const CURVE_SAMPLES: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    pub from: (Fixed, Fixed),
    pub to: (Fixed, Fixed),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cobweb {
    /// `(x_n, x_n) -> (x_n, x_(n+1)) -> (x_(n+1), x_(n+1))`, two per step.
    pub segments: Vec<Segment>,
    /// `(x, L(x))` over `[min x_n, max x_n]`.
    pub curve: Vec<(Fixed, Fixed)>,
}

/// Staircase of `steps` iterations from `x0` plus samples of the curve.
pub fn cobweb_points(a: &DecimalExpansion, x0: &Rat, steps: usize) -> Result<Cobweb> {
    if steps == 0 {
        return Err(Error::InvalidArgument("a cobweb needs at least one step".into()));
    }
    let st = Stepper::new(a, COBWEB_DIGITS);
    let mut x = st.lift(x0);
    if x <= st.int(1) {
        return Err(Error::NotAboveOne(x0.to_string()));
    }
    let mut segments = Vec::with_capacity(2 * steps);
    let (mut lo, mut hi) = (x.clone(), x.clone());
    for _ in 0..steps {
        let y = st.eval(&x).ok_or_else(|| {
            Error::PrecisionExhausted(format!("iterate {} too close to 1", x.to_decimal(30)))
        })?;
        segments.push(Segment {
            from: (x.clone(), x.clone()),
            to: (x.clone(), y.clone()),
        });
        segments.push(Segment {
            from: (x.clone(), y.clone()),
            to: (y.clone(), y.clone()),
        });
        lo = lo.min(y.clone());
        hi = hi.max(y.clone());
        x = y;
    }
    let span = hi.sub(&lo);
    let curve = (0..=CURVE_SAMPLES)
        .filter_map(|i| {
            let x = lo.add(&span.mul_int(i as i64).div(&st.int(CURVE_SAMPLES as i64)));
            st.eval(&x).map(|y| (x, y))
        })
        .collect();
    Ok(Cobweb { segments, curve })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    #[test]
    fn first_step() {
        let web = cobweb_points(&"1.1".parse().unwrap(), &q(11, 10), 1).unwrap();
        assert_eq!(web.segments.len(), 2);
        let first = &web.segments[0];
        assert_eq!(first.from.0, first.to.0);
        assert!((first.to.1.to_f64() - 21.0 / 11.0).abs() < 1e-15);
        assert_eq!(web.segments[1].to.0, web.segments[1].to.1);
        assert!(!web.curve.is_empty());
    }

    #[test]
    fn approaches_golden_ratio() {
        let web = cobweb_points(&"1.1".parse().unwrap(), &q(10, 1), 40).unwrap();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let last = &web.segments.last().unwrap().to;
        assert!((last.0.to_f64() - phi).abs() < 1e-6 && (last.1.to_f64() - phi).abs() < 1e-6);
    }

    #[test]
    fn rejects_bad_input() {
        let a = "1.1".parse().unwrap();
        assert!(cobweb_points(&a, &q(10, 1), 0).is_err());
        assert!(cobweb_points(&a, &q(1, 1), 3).is_err());
    }
}
