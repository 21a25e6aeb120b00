//! Binary fixed-point reals backed by big integers.
//!
//! A [`Fixed`] is `mantissa / 2^frac_bits`. Arithmetic between two values
//! works at the larger of the two precisions and rounds to nearest.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::Rat;

/// Fractional bits needed to resolve `digits` decimal places, plus slack.
pub fn bits_for_digits(digits: u32) -> u32 {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 8
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fixed {
    mant: BigInt,
    frac_bits: u32,
}

/// `round(n / 2^shift)` with ties away from zero.
fn round_shr(n: &BigInt, shift: u32) -> BigInt {
    if shift == 0 {
        return n.clone();
    }
    let half = BigInt::one() << (shift - 1);
    if n.is_negative() {
        -((-n + half) >> shift)
    } else {
        (n + half) >> shift
    }
}

/// `round(n / d)` for `d > 0`.
fn round_div(n: &BigInt, d: &BigInt) -> BigInt {
    let twice: BigInt = n * 2 + d;
    twice.div_floor(&(d * 2))
}

impl Fixed {
    pub fn zero(frac_bits: u32) -> Self {
        Fixed {
            mant: BigInt::zero(),
            frac_bits,
        }
    }

    pub fn from_int(v: i64, frac_bits: u32) -> Self {
        Fixed {
            mant: BigInt::from(v) << frac_bits,
            frac_bits,
        }
    }

    pub fn from_biguint(v: &BigUint, frac_bits: u32) -> Self {
        Fixed {
            mant: BigInt::from(v.clone()) << frac_bits,
            frac_bits,
        }
    }

    /// Nearest representable value to `q`.
    pub fn from_rat(q: &Rat, frac_bits: u32) -> Self {
        let scaled = q.numer() << frac_bits;
        Fixed {
            mant: round_div(&scaled, q.denom()),
            frac_bits,
        }
    }

    /// `10^(-digits)` rounded to this precision.
    pub fn ten_pow_neg(digits: u32, frac_bits: u32) -> Self {
        Self::from_rat(
            &Rat::new(BigInt::one(), BigInt::from(10u32).pow(digits)),
            frac_bits,
        )
    }

    pub fn frac_bits(&self) -> u32 {
        self.frac_bits
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    /// The exact value as a rational.
    pub fn to_rat(&self) -> Rat {
        Rat::new(self.mant.clone(), BigInt::one() << self.frac_bits)
    }

    pub fn with_frac_bits(&self, frac_bits: u32) -> Self {
        let mant = match frac_bits.cmp(&self.frac_bits) {
            Ordering::Equal => self.mant.clone(),
            Ordering::Greater => &self.mant << (frac_bits - self.frac_bits),
            Ordering::Less => round_shr(&self.mant, self.frac_bits - frac_bits),
        };
        Fixed { mant, frac_bits }
    }

    fn aligned<'a>(&'a self, other: &'a Self) -> (std::borrow::Cow<'a, BigInt>, std::borrow::Cow<'a, BigInt>, u32) {
        use std::borrow::Cow;
        match self.frac_bits.cmp(&other.frac_bits) {
            Ordering::Equal => (Cow::Borrowed(&self.mant), Cow::Borrowed(&other.mant), self.frac_bits),
            Ordering::Greater => (
                Cow::Borrowed(&self.mant),
                Cow::Owned(&other.mant << (self.frac_bits - other.frac_bits)),
                self.frac_bits,
            ),
            Ordering::Less => (
                Cow::Owned(&self.mant << (other.frac_bits - self.frac_bits)),
                Cow::Borrowed(&other.mant),
                other.frac_bits,
            ),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b, frac_bits) = self.aligned(other);
        Fixed {
            mant: a.as_ref() + b.as_ref(),
            frac_bits,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let (a, b, frac_bits) = self.aligned(other);
        Fixed {
            mant: a.as_ref() - b.as_ref(),
            frac_bits,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let frac_bits = self.frac_bits.max(other.frac_bits);
        let prod = &self.mant * &other.mant;
        let shift = self.frac_bits + other.frac_bits - frac_bits;
        Fixed {
            mant: round_shr(&prod, shift),
            frac_bits,
        }
    }

    /// Panics on division by zero.
    pub fn div(&self, other: &Self) -> Self {
        assert!(!other.mant.is_zero(), "fixed-point division by zero");
        let frac_bits = self.frac_bits.max(other.frac_bits);
        // (a / 2^fa) / (b / 2^fb) * 2^f = a * 2^(f + fb - fa) / b
        let shift = frac_bits + other.frac_bits - self.frac_bits;
        let num = &self.mant << shift;
        let (num, den) = if other.mant.is_negative() {
            (-num, -other.mant.clone())
        } else {
            (num, other.mant.clone())
        };
        Fixed {
            mant: round_div(&num, &den),
            frac_bits,
        }
    }

    pub fn mul_int(&self, v: i64) -> Self {
        Fixed {
            mant: &self.mant * v,
            frac_bits: self.frac_bits,
        }
    }

    pub fn neg(&self) -> Self {
        Fixed {
            mant: -&self.mant,
            frac_bits: self.frac_bits,
        }
    }

    pub fn abs(&self) -> Self {
        Fixed {
            mant: self.mant.abs(),
            frac_bits: self.frac_bits,
        }
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    /// Midpoint, rounded to this precision.
    pub fn midpoint(&self, other: &Self) -> Self {
        let (a, b, frac_bits) = self.aligned(other);
        Fixed {
            mant: round_shr(&(a.as_ref() + b.as_ref()), 1),
            frac_bits,
        }
    }

    /// Approximate `log2 |self|`; `-inf` for zero.
    pub fn log2_abs(&self) -> f64 {
        if self.mant.is_zero() {
            return f64::NEG_INFINITY;
        }
        let m = self.mant.magnitude();
        let bits = m.bits();
        let drop = bits.saturating_sub(60);
        let top = (m >> drop).to_f64().expect("fits in f64");
        top.log2() + drop as f64 - self.frac_bits as f64
    }

    pub fn to_f64(&self) -> f64 {
        if self.mant.is_zero() {
            return 0.0;
        }
        let m = self.mant.magnitude();
        let drop = m.bits().saturating_sub(64);
        let top = (m >> drop).to_f64().expect("fits in f64");
        let mut exp = drop as i64 - self.frac_bits as i64;
        let mut v = top;
        // scale in steps that stay inside the f64 exponent range
        while exp != 0 {
            let step = exp.clamp(-1000, 1000);
            v *= 2f64.powi(step as i32);
            exp -= step;
        }
        if self.mant.is_negative() {
            -v
        } else {
            v
        }
    }

    /// Decimal rendering rounded to `places` digits after the point.
    pub fn to_decimal(&self, places: u32) -> String {
        let scale = BigInt::from(10u32).pow(places);
        let scaled = round_shr(&(&self.mant * &scale), self.frac_bits);
        let neg = scaled.is_negative();
        let digits = scaled.magnitude().to_str_radix(10);
        let places = places as usize;
        let padded = if digits.len() <= places {
            format!("{}{}", "0".repeat(places + 1 - digits.len()), digits)
        } else {
            digits
        };
        let (int, frac) = padded.split_at(padded.len() - places);
        let mut s = String::new();
        if neg {
            s.push('-');
        }
        s.push_str(int);
        if places > 0 {
            s.push('.');
            s.push_str(frac);
        }
        s
    }

    /// Integer power by repeated squaring.
    pub fn powi(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Fixed::from_int(1, self.frac_bits);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

impl PartialOrd for Fixed {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Fixed {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.aligned(other);
        a.as_ref().cmp(b.as_ref())
    }
}

impl fmt::Display for Fixed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let places = f
            .precision()
            .unwrap_or(((self.frac_bits as f64) / std::f64::consts::LOG2_10) as usize);
        f.write_str(&self.to_decimal(places as u32))
    }
}

/// Minimal arithmetic shared by the exact and fixed-point evaluation paths.
pub trait Field: Clone {
    /// The integer `v` in the same carrier (and precision) as `self`.
    fn lift(&self, v: i64) -> Self;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn over(&self, o: &Self) -> Self;
}

impl Field for Rat {
    fn lift(&self, v: i64) -> Self {
        Rat::from_integer(BigInt::from(v))
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn over(&self, o: &Self) -> Self {
        self / o
    }
}

impl Field for Fixed {
    fn lift(&self, v: i64) -> Self {
        Fixed::from_int(v, self.frac_bits)
    }
    fn plus(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn minus(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn times(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn over(&self, o: &Self) -> Self {
        self.div(o)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    #[test]
    fn rounding_and_rendering() {
        let bits = bits_for_digits(30);
        let third = Fixed::from_rat(&rat(1, 3), bits);
        assert_eq!(third.to_decimal(10), "0.3333333333");
        let two_thirds = Fixed::from_rat(&rat(-2, 3), bits);
        assert_eq!(two_thirds.to_decimal(5), "-0.66667");
        assert_eq!(Fixed::from_int(42, bits).to_decimal(0), "42");
        assert_eq!(Fixed::from_rat(&rat(7, 8), bits).to_decimal(2), "0.88");
    }

    #[test]
    fn arithmetic_matches_rationals() {
        let bits = bits_for_digits(40);
        let a = Fixed::from_rat(&rat(22, 7), bits);
        let b = Fixed::from_rat(&rat(-5, 11), bits);
        let ulp = Rat::new(1.into(), BigInt::one() << bits);
        let close = |x: &Fixed, q: Rat, ulps: i64| {
            let err = (x.to_rat() - q).abs();
            assert!(err <= &ulp * Rat::from_integer(ulps.into()), "error {err}");
        };
        close(&a.mul(&b), rat(22, 7) * rat(-5, 11), 4);
        close(&a.div(&b), rat(22, 7) / rat(-5, 11), 4);
        close(&a.add(&b), rat(22, 7) + rat(-5, 11), 2);
        // input rounding is magnified by 5 x^4 ~ 490
        close(&a.powi(5), rat(22, 7).pow(5), 600);
        assert!(b < a);
        assert_eq!(a.midpoint(&a), a);
        assert!((a.to_f64() - 22.0 / 7.0).abs() < 1e-15);
    }

    #[test]
    fn mixed_precision() {
        let lo = Fixed::from_rat(&rat(1, 3), 20);
        let hi = Fixed::from_rat(&rat(1, 3), 200);
        assert_eq!(lo.add(&hi).frac_bits(), 200);
        assert!(lo.sub(&hi).abs() < Fixed::from_rat(&rat(1, 1 << 20), 200));
        assert_eq!(hi.with_frac_bits(20), lo);
    }
}
