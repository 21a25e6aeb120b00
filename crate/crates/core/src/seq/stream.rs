use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::radix;
use crate::reinterpret::{log10_nat, reinterpret_digits, reinterpret_len_bound};
use crate::Nat;

/// Per-term ceiling on decimal digits before a stream stops with
/// [`Error::DigitBudget`].
pub const DEFAULT_DIGIT_BUDGET: u64 = 2_000_000;

/// The four dungeon sequences, indexed from 10.
///
/// * `Alpha`: `10_(11_(..._n))`
/// * `Beta`: `((10_11)_12)_..._n`
/// * `Gamma`: `n_((n-1)_(..._10))`
/// * `Delta`: `((n_(n-1))_(n-2))_..._10`
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SequenceId {
    Alpha,
    Beta,
    Gamma,
    Delta,
}

impl SequenceId {
    pub const ALL: [SequenceId; 4] = [
        SequenceId::Alpha,
        SequenceId::Beta,
        SequenceId::Gamma,
        SequenceId::Delta,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SequenceId::Alpha => "alpha",
            SequenceId::Beta => "beta",
            SequenceId::Gamma => "gamma",
            SequenceId::Delta => "delta",
        }
    }

    pub fn oeis(self) -> &'static str {
        match self {
            SequenceId::Alpha => "A121263",
            SequenceId::Beta => "A121265",
            SequenceId::Gamma => "A121295",
            SequenceId::Delta => "A121296",
        }
    }

    /// Alpha and Gamma only ever read the digits of small indices; their
    /// bases are the huge values. They admit modular and log-log pipelines.
    pub fn is_bottom_up(self) -> bool {
        matches!(self, SequenceId::Alpha | SequenceId::Gamma)
    }
}

impl fmt::Display for SequenceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SequenceId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "alpha" => Ok(SequenceId::Alpha),
            "beta" => Ok(SequenceId::Beta),
            "gamma" => Ok(SequenceId::Gamma),
            "delta" => Ok(SequenceId::Delta),
            _ => Err(Error::parse(s, "expected alpha, beta, gamma or delta")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Grouping {
    /// `a_1 _ (a_2 _ (... _ a_m))`, innermost pair first.
    BottomUp,
    /// `((a_1 _ a_2) _ ...) _ a_m`.
    TopDown,
}

/// Evaluates a subscript chain under the given grouping.
pub fn dungeon_chain(values: &[Nat], grouping: Grouping) -> Result<Nat> {
    chain_within(values, grouping, u64::MAX)?
        .ok_or_else(|| Error::Resource("chain exceeded an unlimited budget".into()))
}

/// `None` when some intermediate value would exceed `budget` digits.
fn chain_within(values: &[Nat], grouping: Grouping, budget: u64) -> Result<Option<Nat>> {
    let two = Nat::from(2u32);
    if values.is_empty() {
        return Err(Error::InvalidArgument("empty chain".into()));
    }
    if let Some(v) = values.iter().find(|v| **v < two) {
        return Err(Error::OperandTooSmall {
            value: v.to_string(),
            min: 2,
        });
    }
    Ok(match grouping {
        Grouping::BottomUp => {
            let (last, rest) = values.split_last().expect("nonempty");
            let mut acc = last.clone();
            for a in rest.iter().rev() {
                let digits = radix::decimal_digits(a);
                if reinterpret_len_bound(digits.len() as u64, &acc) > budget {
                    return Ok(None);
                }
                acc = reinterpret_digits(&digits, &acc);
            }
            Some(acc)
        }
        Grouping::TopDown => {
            let (first, rest) = values.split_first().expect("nonempty");
            let mut acc = first.clone();
            for b in rest {
                let digits = radix::decimal_digits(&acc);
                if reinterpret_len_bound(digits.len() as u64, b) > budget {
                    return Ok(None);
                }
                acc = reinterpret_digits(&digits, b);
            }
            Some(acc)
        }
    })
}

fn nat(n: u32) -> Nat {
    Nat::from(n)
}

/// One term of `id` computed from scratch, or `None` past the budget.
fn term_within(id: SequenceId, n: u32, budget: u64) -> Result<Option<Nat>> {
    match id {
        SequenceId::Alpha => {
            let chain: Vec<Nat> = (10..=n).map(nat).collect();
            chain_within(&chain, Grouping::BottomUp, budget)
        }
        SequenceId::Beta => {
            let chain: Vec<Nat> = (10..=n).map(nat).collect();
            chain_within(&chain, Grouping::TopDown, budget)
        }
        SequenceId::Gamma => {
            let chain: Vec<Nat> = (10..=n).rev().map(nat).collect();
            chain_within(&chain, Grouping::BottomUp, budget)
        }
        SequenceId::Delta => {
            let chain: Vec<Nat> = (10..=n).rev().map(nat).collect();
            chain_within(&chain, Grouping::TopDown, budget)
        }
    }
}

/// Term `n` of a sequence, with the default digit budget.
pub fn sequence_term(id: SequenceId, n: u32) -> Result<Nat> {
    check_index(n)?;
    term_within(id, n, DEFAULT_DIGIT_BUDGET)?.ok_or(Error::DigitBudget {
        last_complete: n - 1,
        budget: DEFAULT_DIGIT_BUDGET,
    })
}

fn check_index(n: u32) -> Result<()> {
    if n < 10 {
        Err(Error::InvalidArgument(format!(
            "sequences start at n = 10, got {n}"
        )))
    } else {
        Ok(())
    }
}

/// Iterator over `(n, term)` for `n = start..=n_max`.
///
/// Beta and Gamma advance by one reinterpretation per step; Alpha and Delta
/// rebuild their chain for every `n`. When a term would exceed the digit
/// budget the stream yields one [`Error::DigitBudget`] naming the last
/// completed index and then ends.
#[derive(Debug, Clone)]
pub struct SequenceStream {
    id: SequenceId,
    next: u32,
    n_max: u32,
    budget: u64,
    prev: Option<Nat>,
    finished: bool,
}

/// Stream of `id` from `n = 10` through `n_max`.
pub fn sequence_stream(id: SequenceId, n_max: u32) -> Result<SequenceStream> {
    check_index(n_max)?;
    Ok(SequenceStream {
        id,
        next: 10,
        n_max,
        budget: DEFAULT_DIGIT_BUDGET,
        prev: None,
        finished: false,
    })
}

impl SequenceStream {
    pub fn with_budget(mut self, digits: u64) -> Self {
        self.budget = digits;
        self
    }

    /// Continues an incremental sequence from a known term, e.g. one read
    /// back from a cache. Alpha and Delta simply start at `n + 1`.
    pub fn resume(id: SequenceId, n: u32, term: Nat, n_max: u32) -> Result<Self> {
        check_index(n)?;
        Ok(SequenceStream {
            id,
            next: n + 1,
            n_max,
            budget: DEFAULT_DIGIT_BUDGET,
            prev: Some(term),
            finished: false,
        })
    }

    pub fn id(&self) -> SequenceId {
        self.id
    }

    fn step(&self, n: u32) -> Result<Option<Nat>> {
        let prev = match (&self.prev, self.id) {
            (Some(p), SequenceId::Beta | SequenceId::Gamma) => p,
            _ => return term_within(self.id, n, self.budget),
        };
        let index = nat(n);
        let (digits, base) = match self.id {
            SequenceId::Beta => (radix::decimal_digits(prev), &index),
            _ => (radix::decimal_digits(&index), prev),
        };
        if reinterpret_len_bound(digits.len() as u64, base) > self.budget {
            return Ok(None);
        }
        Ok(Some(reinterpret_digits(&digits, base)))
    }
}

impl Iterator for SequenceStream {
    type Item = Result<(u32, Nat)>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.finished || self.next > self.n_max {
            return None;
        }
        let n = self.next;
        match self.step(n) {
            Ok(Some(term)) => {
                self.next += 1;
                self.prev = Some(term.clone());
                Some(Ok((n, term)))
            }
            Ok(None) => {
                self.finished = true;
                Some(Err(Error::DigitBudget {
                    last_complete: n - 1,
                    budget: self.budget,
                }))
            }
            Err(e) => {
                self.finished = true;
                Some(Err(e))
            }
        }
    }
}

/// Decimal digit count and `log10` of a term, without a full conversion.
pub fn magnitude(v: &Nat) -> (u64, f64) {
    (radix::decimal_len(v), log10_nat(v))
}
