use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::stream::SequenceId;
use crate::error::{Error, Result};
use crate::radix;
use crate::reinterpret::horner_mod_u64;
use crate::Nat;

#[derive(Debug, Clone)]
enum Ring {
    Word(u64),
    Big(Nat),
}

impl Ring {
    fn new(modulus: &Nat) -> Result<Self> {
        if modulus < &Nat::from(2u32) {
            return Err(Error::BadModulus);
        }
        Ok(match modulus.to_u64() {
            Some(m) => Ring::Word(m),
            None => Ring::Big(modulus.clone()),
        })
    }

    fn reduce(&self, n: u32) -> Residue {
        match self {
            Ring::Word(m) => Residue::Word(n as u64 % m),
            Ring::Big(m) => Residue::Big(Nat::from(n) % m),
        }
    }

    /// `digits` read in base `b`, modulo the ring.
    fn eval(&self, digits: &[u8], b: &Residue) -> Residue {
        match (self, b) {
            (Ring::Word(m), Residue::Word(b)) => Residue::Word(horner_mod_u64(digits, *b, *m)),
            (Ring::Big(m), Residue::Big(b)) => Residue::Big(
                digits
                    .iter()
                    .fold(Nat::zero(), |acc, &c| (acc * b + c as u32) % m),
            ),
            _ => unreachable!("residue and ring widths always match"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Residue {
    Word(u64),
    Big(Nat),
}

impl Residue {
    fn into_nat(self) -> Nat {
        match self {
            Residue::Word(v) => Nat::from(v),
            Residue::Big(v) => v,
        }
    }
}

fn index_digits(n: u32) -> Vec<u8> {
    radix::decimal_digits(&Nat::from(n))
}

/// Iterator over `(n, term mod m)` for Alpha or Gamma, computed in residues only.
///
/// Alpha re-evaluates its chain innermost-first for each `n` (quadratic in
/// `n_max`); Gamma carries one residue forward.
#[derive(Debug, Clone)]
pub struct ModStream {
    id: SequenceId,
    ring: Ring,
    next: u32,
    n_max: u32,
    gamma: Option<Residue>,
}

pub fn sequence_mod_stream(id: SequenceId, modulus: &Nat, n_max: u32) -> Result<ModStream> {
    if !id.is_bottom_up() {
        return Err(Error::UnsupportedSequence {
            name: id.name(),
            reason: "its steps read the full decimal digits of the previous term, so residues do not propagate",
        });
    }
    if n_max < 10 {
        return Err(Error::InvalidArgument(format!(
            "sequences start at n = 10, got {n_max}"
        )));
    }
    Ok(ModStream {
        id,
        ring: Ring::new(modulus)?,
        next: 10,
        n_max,
        gamma: None,
    })
}

impl Iterator for ModStream {
    type Item = (u32, Nat);

    fn next(&mut self) -> Option<Self::Item> {
        if self.next > self.n_max {
            return None;
        }
        let n = self.next;
        self.next += 1;
        let r = match self.id {
            SequenceId::Alpha => {
                let mut acc = self.ring.reduce(n);
                for k in (10..n).rev() {
                    acc = self.ring.eval(&index_digits(k), &acc);
                }
                acc
            }
            _ => {
                let r = match self.gamma.take() {
                    None => self.ring.reduce(n),
                    Some(prev) => self.ring.eval(&index_digits(n), &prev),
                };
                self.gamma = Some(r.clone());
                r
            }
        };
        Some((n, r.into_nat()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Stabilization {
    Stabilized {
        n0: u32,
        #[serde(with = "crate::serde_nat")]
        residue: Nat,
    },
    NotStabilized,
}

/// Smallest `n0 <= n_max - window` with the residue constant on `[n0, n_max]`.
pub fn stabilization_point(
    id: SequenceId,
    modulus: &Nat,
    n_max: u32,
    window: u32,
) -> Result<Stabilization> {
    let residues: Vec<_> = sequence_mod_stream(id, modulus, n_max)?.collect();
    stabilization_of(&residues, window)
}

/// Stabilization over an already computed residue stream.
pub fn stabilization_of(residues: &[(u32, Nat)], window: u32) -> Result<Stabilization> {
    let (&(n_max, ref last), _) = residues
        .split_last()
        .ok_or_else(|| Error::InvalidArgument("empty residue stream".into()))?;
    if window == 0 || n_max <= 10 + window {
        return Err(Error::InvalidArgument(format!(
            "need window >= 1 and n_max > 10 + window, got window {window}, n_max {n_max}"
        )));
    }
    let run_start = residues
        .iter()
        .rev()
        .take_while(|(_, r)| r == last)
        .last()
        .map(|&(n, _)| n)
        .expect("last element matches itself");
    Ok(if run_start <= n_max - window {
        Stabilization::Stabilized {
            n0: run_start,
            residue: last.clone(),
        }
    } else {
        Stabilization::NotStabilized
    })
}

/// `10^d`, `l^d` and similar moduli written as `base^exp`.
pub fn pow_modulus(base: u32, exp: u32) -> Nat {
    Nat::from(base).pow(exp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seq::sequence_stream;

    #[test]
    fn table_residues() {
        let m = Nat::from(1000u32);
        let last = sequence_mod_stream(SequenceId::Alpha, &m, 25).unwrap().last().unwrap();
        assert_eq!(last, (25, Nat::from(943u32)));
        let m = Nat::from(100u32);
        let g: Vec<_> = sequence_mod_stream(SequenceId::Gamma, &m, 22).unwrap().collect();
        assert_eq!(g.last().unwrap(), &(22, Nat::from(44u32)));
    }

    #[test]
    fn matches_bigint_for_both_widths() {
        for m in [pow_modulus(10, 7), pow_modulus(5, 20), pow_modulus(10, 30)] {
            for id in [SequenceId::Alpha, SequenceId::Gamma] {
                let full = sequence_stream(id, 40).unwrap().map(|r| r.unwrap());
                let modular = sequence_mod_stream(id, &m, 40).unwrap();
                for ((n, v), (k, r)) in full.zip(modular) {
                    assert_eq!(n, k);
                    assert_eq!(v % &m, r, "{id} n={n}");
                }
            }
        }
    }

    #[test]
    fn rejects_top_down_sequences() {
        let m = Nat::from(1000u32);
        assert!(matches!(
            sequence_mod_stream(SequenceId::Beta, &m, 20).unwrap_err(),
            Error::UnsupportedSequence { name: "beta", .. }
        ));
        assert!(sequence_mod_stream(SequenceId::Alpha, &Nat::from(1u32), 20).is_err());
    }

    #[test]
    fn run_detection() {
        let rs: Vec<(u32, Nat)> = (10..=30)
            .map(|n| (n, Nat::from(if n < 17 { n } else { 5 })))
            .collect();
        assert_eq!(
            stabilization_of(&rs, 5).unwrap(),
            Stabilization::Stabilized {
                n0: 17,
                residue: Nat::from(5u32)
            }
        );
        assert_eq!(stabilization_of(&rs, 14).unwrap(), Stabilization::NotStabilized);
        assert!(stabilization_of(&rs, 0).is_err());
    }
}
