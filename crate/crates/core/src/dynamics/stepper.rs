use crate::expansion::DecimalExpansion;
use crate::laurent::{derivative_fixed, eval_fixed, LaurentMap, GUARD_DIGITS};
use crate::real::{bits_for_digits, Fixed};
use crate::Rat;

/// `L<a>` at a fixed working precision, refusing inputs too close to 1.
#[derive(Debug, Clone)]
pub(crate) struct Stepper {
    pub map: LaurentMap,
    pub digits: u32,
    pub bits: u32,
    /// `1 + 10^-(digits/2)`: nothing at or below this is evaluated.
    pub floor: Fixed,
}

impl Stepper {
    pub fn new(a: &DecimalExpansion, digits: u32) -> Self {
        let bits = bits_for_digits(digits);
        let floor = Fixed::from_int(1, bits).add(&Fixed::ten_pow_neg(digits / 2, bits));
        Stepper {
            map: LaurentMap::new(a),
            digits,
            bits,
            floor,
        }
    }

    pub fn lift(&self, q: &Rat) -> Fixed {
        Fixed::from_rat(q, self.bits)
    }

    pub fn int(&self, v: i64) -> Fixed {
        Fixed::from_int(v, self.bits)
    }

    pub fn ten_neg(&self, k: u32) -> Fixed {
        Fixed::ten_pow_neg(k, self.bits)
    }

    /// Smallest distance resolved reliably: `10^-(digits - GUARD_DIGITS)`.
    pub fn noise(&self) -> Fixed {
        self.ten_neg(self.digits.saturating_sub(GUARD_DIGITS + 2))
    }

    pub fn eval(&self, x: &Fixed) -> Option<Fixed> {
        (x > &self.floor).then(|| eval_fixed(&self.map, x, self.digits))
    }

    pub fn derivative(&self, x: &Fixed) -> Option<Fixed> {
        (x > &self.floor).then(|| derivative_fixed(&self.map, x, self.digits))
    }

    /// `L(L(x)) - x`.
    pub fn h(&self, x: &Fixed) -> Option<Fixed> {
        let y = self.eval(x)?;
        Some(self.eval(&y)?.sub(x))
    }
}
