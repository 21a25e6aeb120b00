//! The base-reinterpretation operator `a_b`: read the decimal digits of `a`
//! as a numeral in base `b`.

use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::radix;
use crate::Nat;

fn check_at_least(n: &Nat, min: u32) -> Result<()> {
    if n < &Nat::from(min) {
        Err(Error::OperandTooSmall {
            value: n.to_string(),
            min,
        })
    } else {
        Ok(())
    }
}

/// `a_b = sum c_i b^i` where `c_i` are the decimal digits of `a`.
///
/// Operands down to 2 are accepted so that the small-operand counterexamples
/// can be evaluated; the ordering lemmas only hold from 10 up.
pub fn reinterpret(a: &Nat, b: &Nat) -> Result<Nat> {
    check_at_least(a, 2)?;
    check_at_least(b, 2)?;
    Ok(reinterpret_digits(&radix::decimal_digits(a), b))
}

/// Evaluates a decimal digit string (most significant first) in base `b`.
pub fn reinterpret_digits(digits: &[u8], b: &Nat) -> Nat {
    radix::eval_digits(digits, b)
}

/// Upper bound on the decimal length of `a_b` given the digit count of `a`:
/// `a_b < b^(len)`.
pub fn reinterpret_len_bound(a_len: u64, b: &Nat) -> u64 {
    (a_len as f64 * log10_nat(b)).floor() as u64 + 1
}

/// `(sum c_i b^i) mod modulus`, evaluated on residues only.
pub fn reinterpret_mod(a_digits: &[u8], b_residue: &Nat, modulus: &Nat) -> Result<Nat> {
    if modulus < &Nat::from(2u32) {
        return Err(Error::BadModulus);
    }
    if b_residue >= modulus {
        return Err(Error::InvalidArgument(format!(
            "residue {b_residue} is not reduced modulo {modulus}"
        )));
    }
    if let Some(d) = a_digits.iter().find(|&&d| d > 9) {
        return Err(Error::InvalidArgument(format!("digit {d} out of range")));
    }
    Ok(match (modulus.to_u64(), b_residue.to_u64()) {
        (Some(m), Some(b)) => Nat::from(horner_mod_u64(a_digits, b, m)),
        _ => a_digits
            .iter()
            .fold(Nat::zero(), |acc, &c| (acc * b_residue + c as u32) % modulus),
    })
}

pub(crate) fn horner_mod_u64(digits: &[u8], b: u64, m: u64) -> u64 {
    let (b, m) = (b as u128, m as u128);
    digits
        .iter()
        .fold(0u128, |acc, &c| (acc * b + c as u128) % m) as u64
}

/// Base-10 logarithm of a big natural, accurate to f64 precision.
pub fn log10_nat(n: &Nat) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().expect("finite").log10();
    }
    let drop = bits - 64;
    let top = (n >> drop).to_f64().expect("fits");
    top.log10() + drop as f64 * std::f64::consts::LOG10_2
}

/// Exponents `(lower, upper)` with `10^lower <= a_b <= 10^upper`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundsPair {
    pub lower_exp: f64,
    pub upper_exp: f64,
}

/// The sandwich `10^(floor(log a) log b) <= a_b <= 10^(log a log b)` for `a, b >= 10`.
pub fn lemma3_bounds(a: &Nat, b: &Nat) -> Result<BoundsPair> {
    check_at_least(a, 10)?;
    check_at_least(b, 10)?;
    let k = radix::decimal_len(a) - 1;
    let log_b = log10_nat(b);
    Ok(BoundsPair {
        lower_exp: k as f64 * log_b,
        upper_exp: log10_nat(a) * log_b,
    })
}

/// Checks the sandwich for `a_b`. The lower side is exact (`10^(k log b) = b^k`);
/// the upper side compares logarithms with a relative slack of `1e-12`.
pub fn lemma3_holds(a: &Nat, b: &Nat) -> Result<bool> {
    let bounds = lemma3_bounds(a, b)?;
    let value = reinterpret(a, b)?;
    let k = (radix::decimal_len(a) - 1) as u32;
    let lower_ok = value >= b.pow(k);
    let upper_ok = log10_nat(&value) <= bounds.upper_exp * (1.0 + 1e-12);
    Ok(lower_ok && upper_ok)
}

impl BoundsPair {
    pub fn width(&self) -> f64 {
        self.upper_exp - self.lower_exp
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(v: u64) -> Nat {
        Nat::from(v)
    }

    #[test]
    fn chain_values() {
        assert_eq!(reinterpret(&n(10), &n(11)).unwrap(), n(11));
        assert_eq!(reinterpret(&n(12), &n(13)).unwrap(), n(15));
        assert_eq!(reinterpret(&n(12), &n(2)).unwrap(), n(4));
        assert_eq!(reinterpret(&n(7), &n(2)).unwrap(), n(7));
        assert_eq!(reinterpret(&n(6), &n(3)).unwrap(), n(6));
        assert_eq!(reinterpret(&n(6), &n(4)).unwrap(), n(6));
    }

    #[test]
    fn units() {
        for a in [2u64, 9, 10, 99, 12345, 987654321] {
            assert_eq!(reinterpret(&n(a), &n(10)).unwrap(), n(a));
        }
        for b in [2u64, 11, 999, 1 << 40] {
            assert_eq!(reinterpret(&n(10), &n(b)).unwrap(), n(b));
        }
    }

    #[test]
    fn rejects_small_operands() {
        assert!(reinterpret(&n(1), &n(10)).is_err());
        assert!(reinterpret(&n(10), &n(1)).is_err());
        assert!(lemma3_bounds(&n(9), &n(10)).is_err());
    }

    #[test]
    fn modular_small_cases() {
        assert_eq!(reinterpret_mod(&[1, 1], &n(5), &n(10)).unwrap(), n(6));
        // 25_16 = 37
        assert_eq!(reinterpret_mod(&[2, 5], &n(16), &n(100)).unwrap(), n(37));
        assert_eq!(reinterpret(&n(25), &n(16)).unwrap(), n(37));
        assert!(reinterpret_mod(&[1], &n(10), &n(10)).is_err());
        assert!(matches!(reinterpret_mod(&[1], &n(0), &n(1)), Err(Error::BadModulus)));
    }

    #[test]
    fn modular_matches_bigint_nested() {
        // 13_(14_15) mod 10^4 through residues only.
        let inner = reinterpret(&n(14), &n(15)).unwrap();
        let m = n(10_000);
        let full = reinterpret(&n(13), &inner).unwrap() % &m;
        let via = reinterpret_mod(&[1, 3], &(&inner % &m), &m).unwrap();
        assert_eq!(full, via);
        // Big modulus path.
        let big = Nat::from(10u32).pow(30);
        let b = Nat::from(7u32).pow(40);
        let full = reinterpret(&n(987), &b).unwrap() % &big;
        assert_eq!(reinterpret_mod(&[9, 8, 7], &(&b % &big), &big).unwrap(), full);
    }

    #[test]
    fn sandwich_examples() {
        let p = lemma3_bounds(&n(25), &n(16)).unwrap();
        assert!((p.lower_exp - 1.2041).abs() < 1e-4);
        assert!((p.upper_exp - 1.6833).abs() < 1e-4);
        let v = 37f64;
        assert!(10f64.powf(p.lower_exp) <= v && v <= 10f64.powf(p.upper_exp));
        let p = lemma3_bounds(&n(10), &n(10)).unwrap();
        assert_eq!((p.lower_exp, p.upper_exp), (1.0, 1.0));
        assert!(lemma3_holds(&n(99), &n(10)).unwrap());
        assert!(lemma3_holds(&n(10), &n(10)).unwrap());
    }
}
