//! Conversion between binary big integers and digit strings.
//!
//! Both directions are divide-and-conquer: digit extraction splits on cached
//! powers `10^(c·2^j)` using Newton reciprocals, and digit evaluation combines
//! leaf chunks pairwise with cached powers of the base. With the Karatsuba /
//! Toom-3 multiplication underneath this is `O(M(n) log n)`, which matters once
//! terms reach 10^5 digits and every step of a top-down chain re-extracts them.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// Below this many bits, extraction falls back to repeated short division.
const EXTRACT_BASECASE_BITS: u64 = 1 << 14;
/// Decimal digits in the smallest split power `10^CHUNK_DIGITS`.
const CHUNK_DIGITS: usize = 1 << 9;
/// Reciprocals of divisors up to this size are computed by long division.
const RECIP_BASECASE_BITS: u64 = 1 << 11;
/// Digit strings shorter than this are evaluated by Horner's rule.
const EVAL_BASECASE_LEN: usize = 64;

/// Precomputed `floor(2^(2m) / d)` for an `m`-bit divisor `d`.
#[derive(Debug, Clone)]
pub struct Reciprocal {
    divisor: BigUint,
    shift: u64,
    inverse: BigUint,
}

impl Reciprocal {
    pub fn new(divisor: BigUint) -> Self {
        assert!(!divisor.is_zero(), "reciprocal of zero");
        let m = divisor.bits();
        let inverse = reciprocal(&divisor, m);
        Reciprocal {
            divisor,
            shift: 2 * m,
            inverse,
        }
    }

    pub fn divisor(&self) -> &BigUint {
        &self.divisor
    }

    /// Quotient and remainder of `n / d`; requires `n < 2^(2m)`.
    pub fn div_rem(&self, n: &BigUint) -> (BigUint, BigUint) {
        debug_assert!(n.bits() <= self.shift);
        let mut q: BigUint = (n * &self.inverse) >> self.shift;
        // q never overshoots and undershoots by at most 2.
        let mut r = n - &q * &self.divisor;
        while r >= self.divisor {
            r -= &self.divisor;
            q += 1u32;
        }
        (q, r)
    }
}

/// `floor(2^(2m) / d)` for `d` with exactly `m` bits, by recursive Newton steps.
fn reciprocal(d: &BigUint, m: u64) -> BigUint {
    if m <= RECIP_BASECASE_BITS {
        return (BigUint::one() << (2 * m)) / d;
    }
    let h = m.div_ceil(2);
    let drop = m - h;
    let head = d >> drop;
    let v0 = reciprocal(&head, h) << drop;
    // v1 = 2 v0 - d v0^2 / 2^(2m)
    let correction: BigUint = (d * &v0 * &v0) >> (2 * m);
    let v1 = BigInt::from(v0 << 1u32) - BigInt::from(correction);
    // Exact fix-up: bring 2^(2m) - d*v into [0, d).
    let di = BigInt::from(d.clone());
    let r = (BigInt::one() << (2 * m)) - &di * &v1;
    let (delta, _) = r.div_mod_floor(&di);
    let v = v1 + delta;
    debug_assert!(v.sign() != Sign::Minus);
    v.to_biguint().expect("reciprocal is non-negative")
}

/// Decimal digits of `n`, most significant first. Zero yields `[0]`.
pub fn decimal_digits(n: &BigUint) -> Vec<u8> {
    if n.bits() < EXTRACT_BASECASE_BITS {
        return n.to_radix_be(10);
    }
    let mut powers: Vec<Reciprocal> = Vec::new();
    let mut p = BigUint::from(10u32).pow(CHUNK_DIGITS as u32);
    while &p <= n {
        let next = &p * &p;
        powers.push(Reciprocal::new(p));
        p = next;
    }
    let mut out = Vec::with_capacity((n.bits() as f64 * std::f64::consts::LOG10_2) as usize + 2);
    match powers.len() {
        // n < 10^CHUNK_DIGITS yet too many bits for the cutoff: basecase anyway.
        0 => return n.to_radix_be(10),
        len => extract(n, len - 1, &powers, None, &mut out),
    }
    out
}

/// Writes the digits of `n < P_level^2` into `out`, zero padded to `width`.
fn extract(n: &BigUint, level: usize, powers: &[Reciprocal], width: Option<usize>, out: &mut Vec<u8>) {
    if n.bits() < EXTRACT_BASECASE_BITS || level == 0 && n < powers[0].divisor() {
        let digits = if n.is_zero() { Vec::new() } else { n.to_radix_be(10) };
        match width {
            Some(w) => {
                debug_assert!(digits.len() <= w);
                out.extend(std::iter::repeat_n(0u8, w - digits.len()));
            }
            None if digits.is_empty() => out.push(0),
            None => {}
        }
        out.extend_from_slice(&digits);
        return;
    }
    let low_width = CHUNK_DIGITS << level;
    let (q, r) = powers[level].div_rem(n);
    let next = level.saturating_sub(1);
    if level == 0 {
        // n < P_0^2: both halves are below P_0 and fit the basecase.
        extract_small(&q, width.map(|w| w - low_width), out);
        extract_small(&r, Some(low_width), out);
        return;
    }
    if width.is_none() && q.is_zero() {
        extract(&r, next, powers, None, out);
    } else {
        extract(&q, next, powers, width.map(|w| w - low_width), out);
        extract(&r, next, powers, Some(low_width), out);
    }
}

fn extract_small(n: &BigUint, width: Option<usize>, out: &mut Vec<u8>) {
    let digits = if n.is_zero() { Vec::new() } else { n.to_radix_be(10) };
    match width {
        Some(w) => out.extend(std::iter::repeat_n(0u8, w - digits.len())),
        None if digits.is_empty() => out.push(0),
        None => {}
    }
    out.extend_from_slice(&digits);
}

/// Number of decimal digits of `n` (1 for zero).
pub fn decimal_len(n: &BigUint) -> u64 {
    if n.is_zero() {
        return 1;
    }
    // Within one of the true count; settle it with a single comparison.
    let est = ((n.bits() - 1) as f64 * std::f64::consts::LOG10_2).floor() as u64 + 1;
    if est > 1 && n < &BigUint::from(10u32).pow(est as u32 - 1) {
        est - 1
    } else if n >= &BigUint::from(10u32).pow(est as u32) {
        est + 1
    } else {
        est
    }
}

/// Evaluates `sum c_i base^i` for digits given most significant first.
///
/// Digits are not required to be below `base`.
pub fn eval_digits(digits: &[u8], base: &BigUint) -> BigUint {
    if digits.len() < EVAL_BASECASE_LEN {
        return horner(digits, base);
    }
    // Leaves: chunks of `t` digits, least significant chunk first.
    let t = match base.to_u64() {
        Some(b) if b >= 2 => {
            let mut t = 1usize;
            let mut w: u128 = b as u128;
            // Chunk value bound: 9 * (b^t - 1) / (b - 1) < b^t * 9 fits u64 when b^t * 9 < 2^64.
            while w.saturating_mul(b as u128).saturating_mul(9) < u64::MAX as u128 {
                w *= b as u128;
                t += 1;
            }
            t
        }
        _ => 1,
    };
    let mut level: Vec<BigUint> = digits
        .rchunks(t)
        .map(|chunk| horner(chunk, base))
        .collect();
    let mut weight = base.pow(t as u32);
    while level.len() > 1 {
        let mut next = Vec::with_capacity(level.len().div_ceil(2));
        let mut it = level.into_iter();
        while let Some(lo) = it.next() {
            match it.next() {
                Some(hi) => next.push(lo + hi * &weight),
                None => next.push(lo),
            }
        }
        level = next;
        if level.len() > 1 {
            weight = &weight * &weight;
        }
    }
    level.pop().unwrap_or_default()
}

fn horner(digits: &[u8], base: &BigUint) -> BigUint {
    if let Some(b) = base.to_u64() {
        // Accumulate in u64 while it cannot overflow, then continue in BigUint.
        let mut acc = BigUint::zero();
        let mut small: u64 = 0;
        let mut scale: u64 = 1;
        for &c in digits {
            match scale.checked_mul(b).zip(small.checked_mul(b)) {
                Some((s, v)) if v.checked_add(c as u64).is_some() => {
                    small = v + c as u64;
                    scale = s;
                }
                _ => {
                    acc = acc * scale + small;
                    small = c as u64;
                    scale = b;
                }
            }
        }
        acc * scale + small
    } else {
        digits
            .iter()
            .fold(BigUint::zero(), |acc, &c| acc * base + c as u32)
    }
}

/// Parses a run of ASCII decimal digits.
pub fn from_decimal_str(s: &str) -> Option<BigUint> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let digits: Vec<u8> = s.bytes().map(|b| b - b'0').collect();
    Some(eval_digits(&digits, &BigUint::from(10u32)))
}

/// Decimal string of `n`.
pub fn to_decimal_string(n: &BigUint) -> String {
    decimal_digits(n).into_iter().map(|d| (b'0' + d) as char).collect()
}
