//! Canonical decimal expansions of reals greater than one.
//!
//! Text form: `INT [ "." [FRAC] [ "(" PERIOD ")" ] ]`, e.g. `1.1`, `1.(01)`, `2.0(3)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::radix;
use crate::Rat;

/// A real `a > 1` as integer digits, a fractional preperiod and a repeating block.
///
/// Always canonical: the period is primitive, the preperiod is as short as
/// possible, a zero period is folded into a terminating expansion and a
/// terminating expansion has no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DecimalExpansion {
    int_digits: Vec<u8>,
    frac_pre: Vec<u8>,
    frac_period: Vec<u8>,
}

impl DecimalExpansion {
    /// Builds a canonical expansion from raw digit lists.
    pub fn new(int_digits: Vec<u8>, frac_pre: Vec<u8>, frac_period: Vec<u8>) -> Result<Self> {
        let raw = || render(&int_digits, &frac_pre, &frac_period);
        if int_digits.is_empty() {
            return Err(Error::parse(raw(), "missing integer part"));
        }
        if let Some(d) = int_digits
            .iter()
            .chain(&frac_pre)
            .chain(&frac_period)
            .find(|&&d| d > 9)
        {
            return Err(Error::parse(raw(), format!("digit {d} out of range")));
        }
        if !frac_period.is_empty() && frac_period.iter().all(|&d| d == 9) {
            return Err(Error::AllNinesPeriod(raw()));
        }
        let (int_digits, frac_pre, frac_period) = canonicalize(int_digits, frac_pre, frac_period);
        let exp = DecimalExpansion {
            int_digits,
            frac_pre,
            frac_period,
        };
        let above_one = match exp.int_digits.as_slice() {
            [0] => false,
            [1] => !exp.frac_pre.is_empty() || !exp.frac_period.is_empty(),
            _ => true,
        };
        if !above_one {
            return Err(Error::NotAboveOne(exp.to_string()));
        }
        Ok(exp)
    }

    /// The expansion of an integer `n >= 2`.
    pub fn from_nat(n: &BigUint) -> Result<Self> {
        if n < &BigUint::from(2u32) {
            return Err(Error::OperandTooSmall {
                value: n.to_string(),
                min: 2,
            });
        }
        Ok(DecimalExpansion {
            int_digits: radix::decimal_digits(n),
            frac_pre: Vec::new(),
            frac_period: Vec::new(),
        })
    }

    /// Expansion of a rational `q > 1`.
    ///
    /// The preperiod length comes from the powers of 2 and 5 in the
    /// denominator; the part coprime to 10 must stay below `10^7` so that the
    /// period can be generated by long division.
    pub fn from_rat(q: &Rat) -> Result<Self> {
        if q <= &Rat::one() {
            return Err(Error::NotAboveOne(q.to_string()));
        }
        let numer = q.numer().to_biguint().expect("positive");
        let denom = q.denom().to_biguint().expect("positive");
        let (int_part, mut rem) = numer.div_rem(&denom);
        let mut coprime = denom.clone();
        let mut twos = 0usize;
        let mut fives = 0usize;
        while coprime.is_even() {
            coprime >>= 1;
            twos += 1;
        }
        while (&coprime % 5u32).is_zero() {
            coprime /= 5u32;
            fives += 1;
        }
        let pre_len = twos.max(fives);
        let period_len = match coprime.to_u64() {
            Some(1) => 0,
            Some(c) if c <= 10_000_000 => {
                // multiplicative order of 10 modulo c
                let mut k = 1usize;
                let mut r = 10 % c;
                while r != 1 {
                    r = r * 10 % c;
                    k += 1;
                }
                k
            }
            _ => {
                return Err(Error::InvalidArgument(format!(
                    "period of {q} is too long to expand"
                )))
            }
        };
        let mut digits = Vec::with_capacity(pre_len + period_len);
        for _ in 0..pre_len + period_len {
            rem *= 10u32;
            let (d, r) = rem.div_rem(&denom);
            digits.push(d.to_u8().expect("single digit"));
            rem = r;
        }
        let period = digits.split_off(pre_len);
        DecimalExpansion::new(radix::decimal_digits(&int_part), digits, period)
    }

    pub fn int_digits(&self) -> &[u8] {
        &self.int_digits
    }

    pub fn frac_pre(&self) -> &[u8] {
        &self.frac_pre
    }

    pub fn frac_period(&self) -> &[u8] {
        &self.frac_period
    }

    pub fn is_integer(&self) -> bool {
        self.frac_pre.is_empty() && self.frac_period.is_empty()
    }

    pub fn is_terminating(&self) -> bool {
        self.frac_period.is_empty()
    }

    /// The integer value, when the expansion has no fractional part.
    pub fn to_nat(&self) -> Option<BigUint> {
        self.is_integer()
            .then(|| radix::eval_digits(&self.int_digits, &BigUint::from(10u32)))
    }

    /// Exact value as a rational.
    pub fn value(&self) -> Rat {
        let ten = BigUint::from(10u32);
        let int = radix::eval_digits(&self.int_digits, &ten);
        let s = self.frac_pre.len() as u32;
        let p = self.frac_period.len() as u32;
        let pre = radix::eval_digits(&self.frac_pre, &ten);
        let mut v = Rat::from_integer(BigInt::from(int))
            + Rat::new(BigInt::from(pre), BigInt::from(ten.pow(s)));
        if p > 0 {
            let per = radix::eval_digits(&self.frac_period, &ten);
            let denom = ten.pow(s) * (ten.pow(p) - 1u32);
            v += Rat::new(BigInt::from(per), BigInt::from(denom));
        }
        v
    }

    /// The first `count` digits after the decimal point.
    pub fn fraction_digits(&self, count: usize) -> Vec<u8> {
        let mut out: Vec<u8> = self.frac_pre.iter().copied().take(count).collect();
        if self.frac_period.is_empty() {
            out.resize(count, 0);
        } else {
            let mut cycle = self.frac_period.iter().cycle();
            while out.len() < count {
                out.push(*cycle.next().expect("non-empty period"));
            }
        }
        out
    }
}

fn canonicalize(mut int: Vec<u8>, mut pre: Vec<u8>, mut period: Vec<u8>) -> (Vec<u8>, Vec<u8>, Vec<u8>) {
    let lead = int.iter().position(|&d| d != 0).unwrap_or(int.len() - 1);
    int.drain(..lead);
    if period.iter().all(|&d| d == 0) {
        period.clear();
    }
    if !period.is_empty() {
        let p = period.len();
        let q = (1..=p)
            .filter(|q| p.is_multiple_of(*q))
            .find(|&q| period.chunks(q).all(|c| c == &period[..q]))
            .unwrap_or(p);
        period.truncate(q);
        while let Some(&last) = pre.last() {
            if last != *period.last().expect("non-empty") {
                break;
            }
            pre.pop();
            period.rotate_right(1);
        }
    } else {
        while pre.last() == Some(&0) {
            pre.pop();
        }
    }
    (int, pre, period)
}

fn render(int: &[u8], pre: &[u8], period: &[u8]) -> String {
    let digits = |ds: &[u8]| ds.iter().map(|d| char::from(b'0' + d.min(&9))).collect::<String>();
    let mut s = digits(int);
    if !pre.is_empty() || !period.is_empty() {
        s.push('.');
        s.push_str(&digits(pre));
        if !period.is_empty() {
            s.push('(');
            s.push_str(&digits(period));
            s.push(')');
        }
    }
    s
}

impl fmt::Display for DecimalExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(&self.int_digits, &self.frac_pre, &self.frac_period))
    }
}

fn digit_run(text: &str, run: &str, what: &str) -> Result<Vec<u8>> {
    run.bytes()
        .map(|b| {
            if b.is_ascii_digit() {
                Ok(b - b'0')
            } else {
                Err(Error::parse(
                    text,
                    format!("unexpected character `{}` in {what}", b as char),
                ))
            }
        })
        .collect()
}

impl FromStr for DecimalExpansion {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let (int, frac) = match text.split_once('.') {
            Some((i, f)) => (i, Some(f)),
            None => (text, None),
        };
        if int.is_empty() {
            return Err(Error::parse(text, "missing integer part"));
        }
        let int_digits = digit_run(text, int, "integer part")?;
        let (pre, period) = match frac {
            None => (Vec::new(), Vec::new()),
            Some(f) => match f.split_once('(') {
                None => {
                    if f.is_empty() {
                        return Err(Error::parse(text, "empty fractional part"));
                    }
                    (digit_run(text, f, "fraction")?, Vec::new())
                }
                Some((pre, rest)) => {
                    let period = rest
                        .strip_suffix(')')
                        .ok_or_else(|| Error::parse(text, "unterminated period, expected `)`"))?;
                    if period.is_empty() {
                        return Err(Error::parse(text, "empty period `()`"));
                    }
                    (
                        digit_run(text, pre, "fraction")?,
                        digit_run(text, period, "period")?,
                    )
                }
            },
        };
        DecimalExpansion::new(int_digits, pre, period)
    }
}

/// Parses the textual form of a decimal expansion.
pub fn parse_decimal(text: &str) -> Result<DecimalExpansion> {
    text.trim().parse()
}

/// The expansion of an integer `n >= 2`.
pub fn expansion_of_nat(n: &BigUint) -> Result<DecimalExpansion> {
    DecimalExpansion::from_nat(n)
}

/// Parses a decimal number (optionally with a repeating block) or a fraction
/// `p/q` into an exact rational. Unlike [`parse_decimal`] any positive value is
/// accepted.
pub fn parse_rational(text: &str) -> Result<Rat> {
    let text = text.trim();
    if let Some((p, q)) = text.split_once('/') {
        let num: BigInt = p
            .trim()
            .parse()
            .map_err(|_| Error::parse(text, "bad numerator"))?;
        let den: BigInt = q
            .trim()
            .parse()
            .map_err(|_| Error::parse(text, "bad denominator"))?;
        if den.is_zero() || den.is_negative() {
            return Err(Error::parse(text, "denominator must be positive"));
        }
        return Ok(Rat::new(num, den));
    }
    // Reuse the expansion grammar with a shifted integer part so that values
    // at or below one are still accepted here.
    let (int, rest) = match text.split_once('.') {
        Some((i, r)) => (i, Some(r)),
        None => (text, None),
    };
    let int_val: BigUint = radix::from_decimal_str(int)
        .ok_or_else(|| Error::parse(text, "expected decimal digits"))?;
    let shifted = match rest {
        Some(r) => format!("2.{r}"),
        None => "2".to_string(),
    };
    let exp = DecimalExpansion::from_str(&shifted).map_err(|e| match e {
        Error::Parse { reason, .. } => Error::parse(text, reason),
        Error::AllNinesPeriod(_) => Error::AllNinesPeriod(text.to_string()),
        other => other,
    })?;
    Ok(exp.value() - Rat::from_integer(BigInt::from(2)) + Rat::from_integer(BigInt::from(int_val)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exp(s: &str) -> DecimalExpansion {
        parse_decimal(s).unwrap()
    }

    #[test]
    fn direct_reading() {
        let a = exp("1.1");
        assert_eq!(a.int_digits(), &[1]);
        assert_eq!(a.frac_pre(), &[1]);
        assert!(a.frac_period().is_empty());
    }

    #[test]
    fn pure_period() {
        let a = exp("1.(01)");
        assert_eq!(a.int_digits(), &[1]);
        assert!(a.frac_pre().is_empty());
        assert_eq!(a.frac_period(), &[0, 1]);
        assert_eq!(a.value(), Rat::new(100.into(), 99.into()));
    }

    #[test]
    fn rejects_bad_text() {
        assert!(matches!(parse_decimal("2.(9)"), Err(Error::AllNinesPeriod(_))));
        assert!(matches!(parse_decimal("3.1(99)"), Err(Error::AllNinesPeriod(_))));
        assert!(matches!(parse_decimal("1.()"), Err(Error::Parse { .. })));
        assert!(matches!(parse_decimal("1.2x"), Err(Error::Parse { .. })));
        assert!(matches!(parse_decimal("1.(2"), Err(Error::Parse { .. })));
        assert!(matches!(parse_decimal(".5"), Err(Error::Parse { .. })));
        assert!(matches!(parse_decimal("1"), Err(Error::NotAboveOne(_))));
        assert!(matches!(parse_decimal("1.000"), Err(Error::NotAboveOne(_))));
        assert!(matches!(parse_decimal("1.(0)"), Err(Error::NotAboveOne(_))));
        assert!(matches!(parse_decimal("0.5"), Err(Error::NotAboveOne(_))));
    }

    #[test]
    fn canonical_shift_and_period() {
        // 1.5(05) = 1.50505... = 1.(50)
        let a = exp("1.5(05)");
        assert!(a.frac_pre().is_empty());
        assert_eq!(a.frac_period(), &[5, 0]);
        assert_eq!(a.to_string(), "1.(50)");
        assert_eq!(exp("1.(5050)"), exp("1.(50)"));
        assert_eq!(exp("2.30(0)").to_string(), "2.3");
        assert_eq!(exp("003.10").to_string(), "3.1");
        assert_eq!(exp("1.12(12)").to_string(), "1.(12)");
        assert_eq!(exp("1.0(3)").to_string(), "1.0(3)");
    }

    #[test]
    fn preperiod_that_cannot_shift() {
        // 1.5(50) = 1.55050... keeps its one-digit preperiod.
        let a = exp("1.5(50)");
        assert_eq!(a.frac_pre(), &[5]);
        assert_eq!(a.frac_period(), &[5, 0]);
        assert_ne!(a.value(), exp("1.(50)").value());
    }

    #[test]
    fn from_nat_digits() {
        let e = expansion_of_nat(&BigUint::from(10u32)).unwrap();
        assert_eq!(e.int_digits(), &[1, 0]);
        let e = expansion_of_nat(&BigUint::from(249459u32)).unwrap();
        assert_eq!(e.int_digits(), &[2, 4, 9, 4, 5, 9]);
        let e = expansion_of_nat(&BigUint::from(943u32)).unwrap();
        assert_eq!(e.int_digits(), &[9, 4, 3]);
        assert!(expansion_of_nat(&BigUint::from(1u32)).is_err());
    }

    #[test]
    fn rational_round_trip() {
        for s in ["1.1", "1.(01)", "7.25", "1.0(3)", "3.14(285714)", "1.1110000099"] {
            let a = exp(s);
            assert_eq!(DecimalExpansion::from_rat(&a.value()).unwrap(), a, "{s}");
        }
        assert_eq!(parse_rational("0.5").unwrap(), Rat::new(1.into(), 2.into()));
        assert_eq!(parse_rational("10/9").unwrap(), exp("1.(1)").value());
        assert_eq!(parse_rational("1").unwrap(), Rat::one());
        assert!(parse_rational("1/0").is_err());
    }
}
