//! `L<a>(x)`: the decimal digits of `a` read as a Laurent series in `x`.
//!
//! For an expansion with integer digits `c_k..c_0`, preperiod `d_1..d_s` and
//! period `e_1..e_p` the series has the closed form
//!
//! ```text
//! L(x) = sum c_i x^i + sum d_j x^-j + x^-s * E(x) / (x^p - 1),
//! E(x) = e_1 x^(p-1) + ... + e_p
//! ```
//!
//! which is what every evaluator here uses. `L<a>(10) = a` and `L<a>(b) = a_b`.

use num_traits::One;

use crate::error::{Error, Result};
use crate::expansion::DecimalExpansion;
use crate::real::{bits_for_digits, Field, Fixed};
use crate::Rat;

/// Decimal digits of headroom in the fixed-point error contract: results of
/// [`laurent_eval_approx`] are within `10^-(working_digits - GUARD_DIGITS)`.
pub const GUARD_DIGITS: u32 = 2;

/// Smallest working precision accepted by the fixed-point evaluators.
pub const MIN_WORKING_DIGITS: u32 = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentMap {
    source: DecimalExpansion,
    /// `c_0, c_1, ..., c_k`
    poly: Vec<i64>,
    /// `d_1, ..., d_s`
    pre: Vec<i64>,
    /// `e_1, ..., e_p`
    period: Vec<i64>,
}

impl LaurentMap {
    pub fn new(source: &DecimalExpansion) -> Self {
        let widen = |ds: &[u8]| ds.iter().map(|&d| d as i64).collect::<Vec<_>>();
        let mut poly = widen(source.int_digits());
        poly.reverse();
        LaurentMap {
            source: source.clone(),
            poly,
            pre: widen(source.frac_pre()),
            period: widen(source.frac_period()),
        }
    }

    pub fn source(&self) -> &DecimalExpansion {
        &self.source
    }

    /// Degree `k` of the polynomial part.
    pub fn degree(&self) -> usize {
        self.poly.len() - 1
    }

    pub fn preperiod_len(&self) -> usize {
        self.pre.len()
    }

    pub fn period_len(&self) -> usize {
        self.period.len()
    }

    /// True when the map does not depend on `x` (a single integer digit).
    pub fn is_constant(&self) -> bool {
        self.poly.len() == 1 && self.pre.is_empty() && self.period.is_empty()
    }

    /// `L(x)` in any carrier; `x` must exceed 1.
    pub fn eval<F: Field>(&self, x: &F) -> F {
        let one = x.lift(1);
        let mut acc = horner(&self.poly, x, x.lift(0));
        let y = one.over(x);
        if !self.pre.is_empty() {
            // sum d_j y^j = y * (d_1 + y * (d_2 + ...))
            let inner = horner_rev(&self.pre, &y);
            acc = acc.plus(&y.times(&inner));
        }
        if !self.period.is_empty() {
            acc = acc.plus(&self.tail(x, &y));
        }
        acc
    }

    /// `x^-s E(x) / (x^p - 1)`.
    fn tail<F: Field>(&self, x: &F, y: &F) -> F {
        let (e, q) = self.tail_parts(x);
        pow(y, self.pre.len()).times(&e.over(&q))
    }

    fn tail_parts<F: Field>(&self, x: &F) -> (F, F) {
        let e = horner_msb(&self.period, x);
        let q = pow(x, self.period.len()).minus(&x.lift(1));
        (e, q)
    }

    /// `L'(x)` by differentiating the closed form term by term.
    pub fn derivative<F: Field>(&self, x: &F) -> F {
        let zero = x.lift(0);
        let one = x.lift(1);
        let y = one.over(x);
        // polynomial part: sum i c_i x^(i-1)
        let dpoly: Vec<i64> = self
            .poly
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| i as i64 * c)
            .collect();
        let mut acc = horner(&dpoly, x, zero.clone());
        if !self.pre.is_empty() {
            // d/dx sum d_j x^-j = -y^2 sum j d_j y^(j-1)
            let weighted: Vec<i64> = self
                .pre
                .iter()
                .enumerate()
                .map(|(i, &d)| (i as i64 + 1) * d)
                .collect();
            let inner = horner_rev(&weighted, &y);
            acc = acc.minus(&y.times(&y).times(&inner));
        }
        if !self.period.is_empty() {
            let s = self.pre.len();
            let p = self.period.len();
            let (e, q) = self.tail_parts(x);
            // E'(x)
            let de_coeffs: Vec<i64> = self
                .period
                .iter()
                .enumerate()
                .map(|(j, &c)| (p - 1 - j) as i64 * c)
                .take(p.saturating_sub(1))
                .collect();
            let de = horner_msb(&de_coeffs, x);
            let ys = pow(&y, s);
            // T = y^s E / Q
            // T' = -s y^(s+1) E / Q + y^s E' / Q - y^s E p x^(p-1) / Q^2
            let t1 = ys.times(&y).times(&e).times(&x.lift(s as i64)).over(&q);
            let t2 = ys.times(&de).over(&q);
            let t3 = ys
                .times(&e)
                .times(&x.lift(p as i64))
                .times(&pow(x, p - 1))
                .over(&q.times(&q));
            acc = acc.minus(&t1).plus(&t2).minus(&t3);
        }
        acc
    }

    /// Digit sum, i.e. the limit of `L(x)` as `x -> 1+` for a terminating expansion.
    pub fn value_at_one(&self) -> Option<i64> {
        self.period
            .is_empty()
            .then(|| self.poly.iter().chain(&self.pre).sum())
    }
}

/// `sum coeffs[i] x^i` with `coeffs` constant-term first.
fn horner<F: Field>(coeffs: &[i64], x: &F, zero: F) -> F {
    coeffs
        .iter()
        .rev()
        .fold(zero, |acc, &c| acc.times(x).plus(&x.lift(c)))
}

/// `coeffs[0] + coeffs[1] y + ... ` evaluated innermost-last.
fn horner_rev<F: Field>(coeffs: &[i64], y: &F) -> F {
    horner(coeffs, y, y.lift(0))
}

/// `coeffs[0] x^(n-1) + ... + coeffs[n-1]` (most significant first).
fn horner_msb<F: Field>(coeffs: &[i64], x: &F) -> F {
    coeffs
        .iter()
        .fold(x.lift(0), |acc, &c| acc.times(x).plus(&x.lift(c)))
}

fn pow<F: Field>(x: &F, e: usize) -> F {
    let mut acc = x.lift(1);
    let mut base = x.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.times(&base);
        }
        e >>= 1;
        if e > 0 {
            base = base.times(&base);
        }
    }
    acc
}

fn check_rat_above_one(x: &Rat) -> Result<()> {
    if x <= &Rat::one() {
        Err(Error::NotAboveOne(x.to_string()))
    } else {
        Ok(())
    }
}

/// Exact `L<a>(x)` for rational `x > 1`.
pub fn laurent_eval(a: &DecimalExpansion, x: &Rat) -> Result<Rat> {
    check_rat_above_one(x)?;
    Ok(LaurentMap::new(a).eval(x))
}

/// Exact `L<a>'(x)` for rational `x > 1`.
pub fn laurent_derivative(a: &DecimalExpansion, x: &Rat) -> Result<Rat> {
    check_rat_above_one(x)?;
    Ok(LaurentMap::new(a).derivative(x))
}

/// Extra internal bits so that dividing by `x^p - 1` near `x = 1` and the
/// growth of `x^k` for large `x` do not eat into the requested precision.
fn internal_bits(map: &LaurentMap, x: &Fixed, out_bits: u32, quotient_order: u32) -> u32 {
    let t = x.sub(&Fixed::from_int(1, x.frac_bits()));
    let inv_t_bits = (-t.log2_abs()).max(0.0).ceil() as u32 + 1;
    let x_bits = x.log2_abs().max(1.0).ceil() as u32 + 1;
    let span = (map.degree() + map.period_len() + map.preperiod_len() + 2) as u32;
    let extra = quotient_order * inv_t_bits + span * x_bits + 32;
    (out_bits + extra).max(x.frac_bits())
}

fn check_fixed_domain(x: &Fixed, working_digits: u32) -> Result<()> {
    if working_digits < MIN_WORKING_DIGITS {
        return Err(Error::InvalidArgument(format!(
            "working precision {working_digits} below the minimum {MIN_WORKING_DIGITS}"
        )));
    }
    let bits = x.frac_bits().max(bits_for_digits(working_digits));
    let one = Fixed::from_int(1, bits);
    if x <= &one {
        return Err(Error::NotAboveOne(x.to_decimal(20)));
    }
    let margin = one.add(&Fixed::ten_pow_neg(working_digits / 2, bits));
    if x <= &margin {
        return Err(Error::PrecisionExhausted(format!(
            "x - 1 <= 1e-{} at {working_digits} working digits",
            working_digits / 2
        )));
    }
    Ok(())
}

/// Fixed-point `L<a>(x)` accurate to `10^-(working_digits - GUARD_DIGITS)`.
///
/// The result carries `bits_for_digits(working_digits)` fractional bits.
/// Inputs within `10^-(working_digits/2)` of 1 are refused with
/// [`Error::PrecisionExhausted`].
pub fn laurent_eval_approx(a: &DecimalExpansion, x: &Fixed, working_digits: u32) -> Result<Fixed> {
    check_fixed_domain(x, working_digits)?;
    let map = LaurentMap::new(a);
    Ok(eval_fixed(&map, x, working_digits))
}

pub(crate) fn eval_fixed(map: &LaurentMap, x: &Fixed, working_digits: u32) -> Fixed {
    let out_bits = bits_for_digits(working_digits);
    let work = internal_bits(map, x, out_bits, 2);
    map.eval(&x.with_frac_bits(work)).with_frac_bits(out_bits)
}

pub(crate) fn derivative_fixed(map: &LaurentMap, x: &Fixed, working_digits: u32) -> Fixed {
    let out_bits = bits_for_digits(working_digits);
    let work = internal_bits(map, x, out_bits, 3);
    map.derivative(&x.with_frac_bits(work)).with_frac_bits(out_bits)
}

/// Fixed-point `L<a>'(x)` with the same error contract as [`laurent_eval_approx`].
pub fn laurent_derivative_approx(
    a: &DecimalExpansion,
    x: &Fixed,
    working_digits: u32,
) -> Result<Fixed> {
    check_fixed_domain(x, working_digits)?;
    let map = LaurentMap::new(a);
    Ok(derivative_fixed(&map, x, working_digits))
}

/// Either carrier for the derivative operation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Scalar {
    Exact(Rat),
    Approx(Fixed),
}

/// `L<a>'(x)`, exact for rational input and precision-bounded for fixed-point input.
pub fn laurent_derivative_eval(a: &DecimalExpansion, x: &Scalar, working_digits: u32) -> Result<Scalar> {
    match x {
        Scalar::Exact(q) => laurent_derivative(a, q).map(Scalar::Exact),
        Scalar::Approx(f) => laurent_derivative_approx(a, f, working_digits).map(Scalar::Approx),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expansion::parse_decimal;
    use num_bigint::BigInt;
    use num_traits::Signed;

    fn rat(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    fn exp(s: &str) -> DecimalExpansion {
        parse_decimal(s).unwrap()
    }

    #[test]
    fn value_at_ten_is_the_number() {
        for s in ["1.1", "1.(01)", "3.14(285714)", "7", "25.5", "1.1110000099", "2.0(3)"] {
            let a = exp(s);
            assert_eq!(laurent_eval(&a, &rat(10, 1)).unwrap(), a.value(), "{s}");
        }
    }

    #[test]
    fn closed_form_examples() {
        // 1 + 1/(x^2 - 1) at x = 2
        assert_eq!(laurent_eval(&exp("1.(01)"), &rat(2, 1)).unwrap(), rat(4, 3));
        let a = exp("1.(1)");
        assert_eq!(laurent_eval(&a, &rat(10, 1)).unwrap(), rat(10, 9));
        assert_eq!(laurent_eval(&a, &rat(10, 9)).unwrap(), rat(10, 1));
        assert_eq!(laurent_eval(&exp("1.1"), &rat(11, 10)).unwrap(), rat(21, 11));
        assert!(laurent_eval(&exp("1.1"), &rat(1, 1)).is_err());
        assert!(laurent_eval(&exp("1.1"), &rat(1, 2)).is_err());
    }

    #[test]
    fn exact_derivatives() {
        assert_eq!(laurent_derivative(&exp("1.04"), &rat(2, 1)).unwrap(), rat(-1, 1));
        assert_eq!(laurent_derivative(&exp("1.1"), &rat(10, 1)).unwrap(), rat(-1, 100));
        assert_eq!(laurent_derivative(&exp("1.(1)"), &rat(10, 1)).unwrap(), rat(-1, 81));
        // 2x + 5
        assert_eq!(laurent_derivative(&exp("25"), &rat(7, 1)).unwrap(), rat(2, 1));
        assert_eq!(laurent_derivative(&exp("3"), &rat(7, 1)).unwrap(), rat(0, 1));
    }

    #[test]
    fn derivative_matches_central_difference() {
        // Independent check of the closed-form derivative with exact rationals.
        let h = rat(1, 1_000_000_000);
        for (s, x) in [("1.(1)", rat(10, 1)), ("1.2(34)", rat(3, 2)), ("4.5(6)", rat(7, 5))] {
            let a = exp(s);
            let d = laurent_derivative(&a, &x).unwrap();
            let fd = (laurent_eval(&a, &(&x + &h)).unwrap() - laurent_eval(&a, &(&x - &h)).unwrap())
                / (&h * rat(2, 1));
            let err = (d - fd).abs();
            assert!(err < rat(1, 1_000_000), "{s}: {err}");
        }
    }

    #[test]
    fn fixed_point_examples() {
        let d = 40;
        let bits = bits_for_digits(d);
        let x = Fixed::from_rat(&rat(11, 10), bits);
        let v = laurent_eval_approx(&exp("1.1"), &x, d).unwrap();
        assert_eq!(v.to_decimal(12), "1.909090909091");
        let x = Fixed::from_int(2, bits);
        let v = laurent_eval_approx(&exp("1.04"), &x, d).unwrap();
        assert_eq!(v, Fixed::from_int(2, bits));
        let phi = Fixed::from_rat(&rat(16180339887, 10000000000), bits);
        let v = laurent_eval_approx(&exp("1.1"), &phi, d).unwrap();
        assert!((v.to_f64() - 1.6180339887).abs() < 1e-9);
    }

    #[test]
    fn refuses_near_one() {
        let d = 20;
        let bits = bits_for_digits(d);
        let near = Fixed::from_int(1, bits).add(&Fixed::ten_pow_neg(12, bits));
        assert!(matches!(
            laurent_eval_approx(&exp("1.(01)"), &near, d),
            Err(Error::PrecisionExhausted(_))
        ));
        let fine = Fixed::from_int(1, bits).add(&Fixed::ten_pow_neg(9, bits));
        assert!(laurent_eval_approx(&exp("1.(01)"), &fine, d).is_ok());
        assert!(laurent_eval_approx(&exp("1.1"), &Fixed::from_int(2, 40), 8).is_err());
    }

    #[test]
    fn fixed_matches_exact_near_one() {
        let d = 30;
        let bits = bits_for_digits(d);
        let a = exp("1.(001)");
        let xq = Rat::one() + rat(1, 10_000_000_000);
        let x = Fixed::from_rat(&xq, bits);
        let exact = laurent_eval(&a, &x.to_rat()).unwrap();
        let approx = laurent_eval_approx(&a, &x, d).unwrap();
        let tol = Rat::new(1.into(), BigInt::from(10u32).pow(d - GUARD_DIGITS));
        assert!((approx.to_rat() - exact).abs() < tol);
        let dexact = laurent_derivative(&a, &x.to_rat()).unwrap();
        let dapprox = laurent_derivative_approx(&a, &x, d).unwrap();
        assert!((dapprox.to_rat() - dexact).abs() < tol);
    }
}
