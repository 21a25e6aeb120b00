use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::radix;
use crate::Nat;

/// Largest degree [`phi_composition`] will build. Degrees double with every
/// three-digit index, so the cap is reached at `k_max = 109`.
pub const PHI_DEGREE_CAP: usize = 1024;

/// Integer polynomial (constant term first) whose non-constant
/// coefficients are all divisible by `stability`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StablePoly {
    coeffs: Vec<BigInt>,
    stability: Nat,
}

impl StablePoly {
    /// Checks the certificate before accepting it.
    pub fn new(coeffs: Vec<BigInt>, stability: Nat) -> Result<Self> {
        if stability.is_zero() {
            return Err(Error::InvalidArgument("stability must be positive".into()));
        }
        if !is_m_stable(&coeffs, &stability) {
            return Err(Error::InvalidArgument(format!(
                "polynomial is not {stability}-stable"
            )));
        }
        Ok(StablePoly {
            coeffs: trim(coeffs),
            stability,
        })
    }

    /// The polynomial with the best certificate its coefficients allow:
    /// the gcd of the non-constant coefficients (1 for a constant).
    pub fn with_natural_stability(coeffs: Vec<BigInt>) -> Self {
        let coeffs = trim(coeffs);
        let g = coeffs
            .iter()
            .skip(1)
            .fold(BigInt::zero(), |g, c| g.gcd(c))
            .magnitude()
            .clone();
        let stability = if g.is_zero() { Nat::one() } else { g };
        StablePoly { coeffs, stability }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn stability(&self) -> &Nat {
        &self.stability
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeffs.first().cloned().unwrap_or_default()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }
}

fn trim(mut coeffs: Vec<BigInt>) -> Vec<BigInt> {
    while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
    if coeffs.is_empty() {
        coeffs.push(BigInt::zero());
    }
    coeffs
}

/// True iff every coefficient except the constant term is divisible by `m`.
pub fn is_m_stable(coeffs: &[BigInt], m: &Nat) -> bool {
    let m = BigInt::from_biguint(Sign::Plus, m.clone());
    if m.is_zero() {
        return coeffs.iter().skip(1).all(Zero::is_zero);
    }
    coeffs.iter().skip(1).all(|c| c.is_multiple_of(&m))
}

fn poly_mul(a: &[BigInt], b: &[BigInt], modulus: Option<&BigInt>) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
        if let Some(m) = modulus {
            for c in &mut out[i..] {
                *c = c.mod_floor(m);
            }
        }
    }
    out
}

/// `f(g(x))` by Horner's rule on polynomials.
fn compose(f: &[BigInt], g: &[BigInt], modulus: Option<&BigInt>) -> Vec<BigInt> {
    let mut acc = vec![BigInt::zero()];
    for c in f.iter().rev() {
        acc = poly_mul(&acc, g, modulus);
        acc[0] += c;
        if let Some(m) = modulus {
            acc[0] = acc[0].mod_floor(m);
        }
    }
    trim(acc)
}

/// `f o g`, certified `f.stability * g.stability`-stable.
pub fn compose_stable(f: &StablePoly, g: &StablePoly) -> StablePoly {
    let coeffs = compose(&f.coeffs, &g.coeffs, None);
    let stability = &f.stability * &g.stability;
    assert!(
        is_m_stable(&coeffs, &stability),
        "composition lost its stability certificate"
    );
    StablePoly { coeffs, stability }
}

/// `L<k>(x)` for an integer `k`: the decimal digits of `k` as coefficients.
pub fn digit_poly(k: &Nat) -> StablePoly {
    let coeffs = radix::decimal_digits(k)
        .into_iter()
        .rev()
        .map(BigInt::from)
        .collect();
    StablePoly::with_natural_stability(coeffs)
}

/// `L<10> o L<11> o ... o L<k_max>` with coefficients reduced into `[0, modulus)`.
///
/// The certificate is the gcd of the product of the factors' stabilities
/// with `modulus`, since that is what survives the reduction. Since every
/// `alpha_n` with `n > k_max` equals this polynomial evaluated at some
/// integer, a certificate equal to `modulus` makes the constant term the
/// stable residue of alpha.
pub fn phi_composition(k_max: u32, modulus: &Nat) -> Result<StablePoly> {
    if !(10..=999).contains(&k_max) {
        return Err(Error::InvalidArgument(format!(
            "k_max must lie in 10..=999, got {k_max}"
        )));
    }
    if modulus < &Nat::from(2u32) {
        return Err(Error::BadModulus);
    }
    let degree: usize = (10..=k_max)
        .map(|k| radix::decimal_len(&Nat::from(k)) as usize - 1)
        .try_fold(1usize, |d, e| d.checked_mul(e.max(1)))
        .unwrap_or(usize::MAX);
    if degree > PHI_DEGREE_CAP {
        return Err(Error::Resource(format!(
            "composition up to {k_max} has degree {degree}, above the cap {PHI_DEGREE_CAP}"
        )));
    }
    let m = BigInt::from_biguint(Sign::Plus, modulus.clone());
    // Build from the inside out so each step composes a small outer factor.
    let mut acc = vec![BigInt::zero(), BigInt::one()];
    let mut product = Nat::one();
    for k in (10..=k_max).rev() {
        let outer = digit_poly(&Nat::from(k));
        acc = compose(&outer.coeffs, &acc, Some(&m));
        product *= &outer.stability;
    }
    let stability = num_integer::Integer::gcd(&product, modulus);
    StablePoly::new(acc, stability)
}

/// Brute-force check that `f o g` has all non-constant coefficients
/// divisible by `m`, by expanding the composition term by term.
pub fn composed_is_stable(f: &[BigInt], g: &[BigInt], m: &Nat) -> bool {
    let mut total = vec![BigInt::zero()];
    let mut power = vec![BigInt::one()];
    for c in f {
        let term: Vec<BigInt> = power.iter().map(|p| p * c).collect();
        if term.len() > total.len() {
            total.resize(term.len(), BigInt::zero());
        }
        for (t, x) in total.iter_mut().zip(term) {
            *t += x;
        }
        power = poly_mul(&power, g, None);
    }
    is_m_stable(&total, m)
}

impl StablePoly {
    /// Coefficients as signed decimal strings, constant term first.
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs
            .iter()
            .map(|c| {
                let s = radix::to_decimal_string(c.magnitude());
                if c.is_negative() {
                    format!("-{s}")
                } else {
                    s
                }
            })
            .collect()
    }
}
