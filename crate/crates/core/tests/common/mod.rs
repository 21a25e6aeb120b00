//! Reference implementations for the tests. They share no code with the
//! library: digits come from `to_str_radix` and values from plain Horner
//! loops.
#![allow(dead_code)]

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};

pub fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

pub fn digits(a: &BigUint) -> Vec<u32> {
    a.to_str_radix(10).bytes().map(|b| (b - b'0') as u32).collect()
}

/// `a_b`, digits of `a` read in base `b`.
pub fn sub(a: &BigUint, b: &BigUint) -> BigUint {
    digits(a)
        .into_iter()
        .fold(BigUint::zero(), |acc, d| acc * b + BigUint::from(d))
}

/// `a_b mod m` with `b` already reduced.
pub fn sub_mod(a: u64, b: &BigUint, m: &BigUint) -> BigUint {
    digits(&big(a))
        .into_iter()
        .fold(BigUint::zero(), |acc, d| (acc * b + BigUint::from(d)) % m)
}

/// `10_(11_(..._((n-1)_n)))`
pub fn alpha(n: u64) -> BigUint {
    (10..n).rev().fold(big(n), |v, k| sub(&big(k), &v))
}

/// `(((10_11)_12)_...)_n`
pub fn beta(n: u64) -> BigUint {
    (11..=n).fold(big(10), |v, k| sub(&v, &big(k)))
}

/// `n_((n-1)_(..._(11_10)))`
pub fn gamma(n: u64) -> BigUint {
    (11..=n).fold(big(10), |v, k| sub(&big(k), &v))
}

/// `(((n_(n-1))_(n-2))_...)_10`
pub fn delta(n: u64) -> BigUint {
    (10..n).rev().fold(big(n), |v, k| sub(&v, &big(k)))
}

pub fn alpha_mod(n: u64, m: &BigUint) -> BigUint {
    (10..n).rev().fold(big(n) % m, |v, k| sub_mod(k, &v, m))
}

pub fn gamma_mod(n: u64, m: &BigUint) -> BigUint {
    (11..=n).fold(big(10) % m, |v, k| sub_mod(k, &v, m))
}

/// Digit count and the first `k` digits.
pub fn head(v: &BigUint, k: usize) -> (usize, String) {
    let s = v.to_str_radix(10);
    (s.len(), s[..k.min(s.len())].to_string())
}

/// `log10 log10 v` from the leading digits and the digit count.
pub fn loglog(v: &BigUint) -> f64 {
    let s = v.to_str_radix(10);
    let lead: f64 = format!("0.{}", &s[..s.len().min(17)]).parse().unwrap();
    (s.len() as f64 + lead.log10()).log10()
}

/// Coefficients low to high.
pub fn poly_mul(f: &[BigInt], g: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); f.len() + g.len() - 1];
    for (i, a) in f.iter().enumerate() {
        for (j, b) in g.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

/// `f(g(x))` by summing `f_i g^i`.
pub fn poly_compose(f: &[BigInt], g: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero()];
    let mut power = vec![BigInt::from(1)];
    for c in f {
        let term: Vec<BigInt> = power.iter().map(|p| p * c).collect();
        if term.len() > out.len() {
            out.resize(term.len(), BigInt::zero());
        }
        for (o, t) in out.iter_mut().zip(term) {
            *o += t;
        }
        power = poly_mul(&power, g);
    }
    while out.len() > 1 && out.last().is_some_and(|c| c.is_zero()) {
        out.pop();
    }
    out
}

pub fn all_divisible(coeffs: &[BigInt], m: i64) -> bool {
    coeffs.iter().skip(1).all(|c| (c % m).is_zero())
}

/// `L<a>(x)` in f64 for an expansion given by its digit lists.
pub fn laurent_f64(int: &[u32], pre: &[u32], period: &[u32], x: f64) -> f64 {
    let mut v = int.iter().fold(0.0, |acc, &d| acc * x + d as f64);
    for (j, &d) in pre.iter().enumerate() {
        v += d as f64 * x.powi(-(j as i32 + 1));
    }
    if !period.is_empty() {
        let e = period.iter().fold(0.0, |acc, &d| acc * x + d as f64);
        v += x.powi(-(pre.len() as i32)) * e / (x.powi(period.len() as i32) - 1.0);
    }
    v
}

/// Root of an increasing `f` on `[lo, hi]` by bisection.
pub fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

pub fn to_f64(v: &BigUint) -> f64 {
    v.to_f64().unwrap_or(f64::INFINITY)
}
