use num_traits::One;
use serde::{Deserialize, Serialize};

use super::fixed::{locate, FixedPointResult};
use super::stepper::Stepper;
use crate::error::{Error, Result};
use crate::expansion::DecimalExpansion;
use crate::laurent::LaurentMap;
use crate::real::Fixed;
use crate::Rat;

/// Behaviour of `x_(n+1) = L<a>(x_n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TrajectoryClass {
    FixedFromStart,
    ConvergesToFixed,
    ExactTwoCycle,
    ConvergesToTwoCycle,
    Diverges,
    Undetermined,
}

impl TrajectoryClass {
    pub fn label(self) -> &'static str {
        match self {
            TrajectoryClass::FixedFromStart => "fixed-from-start",
            TrajectoryClass::ConvergesToFixed => "converges-to-fixed",
            TrajectoryClass::ExactTwoCycle => "exact-two-cycle",
            TrajectoryClass::ConvergesToTwoCycle => "converges-to-two-cycle",
            TrajectoryClass::Diverges => "diverges",
            TrajectoryClass::Undetermined => "undetermined",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// The fixed point, exact when it is rational and was confirmed.
    Fixed { omega: Fixed, exact: Option<Rat> },
    /// `u < omega < v` with `L(u) = v`, `L(v) = u`.
    Cycle { u: Fixed, v: Fixed, exact: Option<(Rat, Rat)> },
    /// Smallest iterate of the parity falling to 1 and largest of the parity
    /// growing without bound.
    Divergence { min_low: Fixed, max_high: Fixed },
    None,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrajectoryReport {
    pub class: TrajectoryClass,
    pub witness: Witness,
    /// `x_0, x_1, ...` up to [`TrajectoryOptions::record`] entries.
    pub iterates: Vec<Fixed>,
    /// Working digits of the accepted level; 0 when decided exactly.
    pub precision_used: u32,
    pub iterations_used: usize,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PrecisionPolicy {
    pub start_digits: u32,
    pub max_digits: u32,
    /// Exact iteration stops once a numerator or denominator exceeds this.
    pub exact_bits_cap: u64,
    /// Exact iteration also stops after this many steps.
    pub exact_steps_cap: usize,
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        PrecisionPolicy {
            start_digits: 64,
            max_digits: 4096,
            exact_bits_cap: 1 << 16,
            exact_steps_cap: 64,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryOptions {
    /// Starting value; `None` means 10, so that `x_1 = a`.
    pub x0: Option<Rat>,
    pub max_iter: usize,
    pub tol_digits: u32,
    pub policy: PrecisionPolicy,
    /// The growing parity must pass this for a divergence verdict.
    pub x_max: f64,
    /// How many iterates to keep in the report.
    pub record: usize,
}

impl Default for TrajectoryOptions {
    fn default() -> Self {
        TrajectoryOptions {
            x0: None,
            max_iter: 20_000,
            tol_digits: 20,
            policy: PrecisionPolicy::default(),
            x_max: 1e12,
            record: 256,
        }
    }
}

/// Iterates `L<a>` from `x0` and classifies the orbit.
///
/// Exact rational iteration runs first so that exact fixed points and exact
/// 2-cycles never depend on a tolerance. Otherwise the orbit is followed in
/// fixed point starting at `policy.start_digits`, doubling the precision
/// until two consecutive levels agree on the class (up to
/// `policy.max_digits`); if they never do the result is `Undetermined`.
pub fn trajectory(a: &DecimalExpansion, opts: &TrajectoryOptions) -> Result<TrajectoryReport> {
    let x0 = opts.x0.clone().unwrap_or_else(|| Rat::from_integer(10.into()));
    if x0 <= Rat::one() {
        return Err(Error::NotAboveOne(x0.to_string()));
    }
    if opts.tol_digits == 0 || opts.tol_digits + 8 > opts.policy.start_digits {
        return Err(Error::InvalidArgument(format!(
            "tolerance of {} digits needs at least {} working digits",
            opts.tol_digits,
            opts.tol_digits + 8
        )));
    }
    let map = LaurentMap::new(a);
    if let Some(report) = exact_phase(&map, &x0, opts) {
        return Ok(report);
    }
    let mut digits = opts.policy.start_digits;
    let mut previous: Option<TrajectoryReport> = None;
    let mut notes = Vec::new();
    while digits <= opts.policy.max_digits {
        let level = run_level(&Stepper::new(a, digits), &x0, opts);
        notes.push(format!("{digits} digits: {}", level.class.label()));
        if let Some(prev) = &previous {
            if prev.class == level.class && level.class != TrajectoryClass::Undetermined {
                let mut report = level;
                report.notes.splice(0..0, notes);
                return Ok(report);
            }
        }
        previous = Some(level);
        digits = match digits.checked_mul(2) {
            Some(d) => d,
            None => break,
        };
    }
    let mut report = previous.expect("at least one level ran");
    report.class = TrajectoryClass::Undetermined;
    report.witness = Witness::None;
    report.notes.splice(0..0, notes);
    report
        .notes
        .push("no two consecutive precision levels agreed".into());
    Ok(report)
}

fn bits_of(q: &Rat) -> u64 {
    q.numer().bits().max(q.denom().bits())
}

fn exact_phase(map: &LaurentMap, x0: &Rat, opts: &TrajectoryOptions) -> Option<TrajectoryReport> {
    let lift = |q: &Rat| Fixed::from_rat(q, 256);
    let mut xs = vec![x0.clone()];
    let mut x = x0.clone();
    // Each evaluation multiplies sizes by about the number of digits in a.
    let growth = (map.degree() + map.preperiod_len() + map.period_len() + 1) as u64;
    for step in 0..opts.policy.exact_steps_cap {
        if bits_of(&x).saturating_mul(growth * growth) > opts.policy.exact_bits_cap {
            return None;
        }
        let y = map.eval(&x);
        if y == x {
            // x_1 = a when starting from 10, so the dungeon itself starts at x_1.
            let ten = Rat::from_integer(10.into());
            let class = if step == 0 || (step == 1 && *x0 == ten) {
                TrajectoryClass::FixedFromStart
            } else {
                TrajectoryClass::ConvergesToFixed
            };
            return Some(TrajectoryReport {
                class,
                witness: Witness::Fixed {
                    omega: lift(&x),
                    exact: Some(x),
                },
                iterates: xs.iter().take(opts.record).map(lift).collect(),
                precision_used: 0,
                iterations_used: step,
                notes: vec!["decided in exact arithmetic".into()],
            });
        }
        if y <= Rat::one() {
            return None;
        }
        let z = map.eval(&y);
        if z == x {
            xs.push(y.clone());
            xs.push(z);
            let (u, v) = if x < y { (x, y) } else { (y, x) };
            return Some(TrajectoryReport {
                class: TrajectoryClass::ExactTwoCycle,
                witness: Witness::Cycle {
                    u: lift(&u),
                    v: lift(&v),
                    exact: Some((u, v)),
                },
                iterates: xs.iter().take(opts.record).map(lift).collect(),
                precision_used: 0,
                iterations_used: step,
                notes: vec!["decided in exact arithmetic".into()],
            });
        }
        xs.push(y.clone());
        x = y;
    }
    None
}

fn undetermined(iterates: Vec<Fixed>, digits: u32, n: usize, why: String) -> TrajectoryReport {
    TrajectoryReport {
        class: TrajectoryClass::Undetermined,
        witness: Witness::None,
        iterates,
        precision_used: digits,
        iterations_used: n,
        notes: vec![why],
    }
}

fn run_level(st: &Stepper, x0: &Rat, opts: &TrajectoryOptions) -> TrajectoryReport {
    let digits = st.digits;
    let fp = match locate(st, opts.tol_digits.max(digits / 2)) {
        Ok(fp) => fp,
        Err(e) => return undetermined(vec![], digits, 0, format!("fixed point: {e}")),
    };
    let omega = fp.omega.clone();
    let tol = st.ten_neg(opts.tol_digits);
    // A 2-cycle closer together than this is treated as the fixed point
    // still being approached.
    let separation = st.ten_neg(opts.tol_digits / 2);
    let x_max = st.lift(&Rat::from_float(opts.x_max).expect("finite bound"));
    let terminating = st.map.source().is_terminating();

    let mut window: Vec<Fixed> = Vec::with_capacity(4);
    let mut recorded = Vec::new();
    let mut max_high = st.int(0);
    let mut x = st.lift(x0);
    for n in 0..=opts.max_iter {
        if recorded.len() < opts.record {
            recorded.push(x.clone());
        }
        if x > omega && x > max_high {
            max_high = x.clone();
        }
        if x.sub(&omega).abs() < tol {
            return TrajectoryReport {
                class: TrajectoryClass::ConvergesToFixed,
                witness: fixed_witness(&fp),
                iterates: recorded,
                precision_used: digits,
                iterations_used: n,
                notes: vec![],
            };
        }
        if window.len() == 4 {
            window.remove(0);
        }
        window.push(x.clone());
        if let [a, b, c, d] = window.as_slice() {
            if c.sub(a).abs() < tol && d.sub(b).abs() < tol && d.sub(c).abs() > separation {
                if let Some(report) = accept_cycle(st, c, d, &tol, &recorded, n) {
                    return report;
                }
            }
        }
        if n == opts.max_iter {
            break;
        }
        x = match st.eval(&x) {
            Some(y) => y,
            None => {
                if !terminating && max_high > x_max {
                    return TrajectoryReport {
                        class: TrajectoryClass::Diverges,
                        witness: Witness::Divergence {
                            min_low: x,
                            max_high,
                        },
                        iterates: recorded,
                        precision_used: digits,
                        iterations_used: n,
                        notes: vec![format!(
                            "an iterate fell within 1e-{} of 1 while the other parity passed {:e}",
                            digits / 2,
                            opts.x_max
                        )],
                    };
                }
                return undetermined(
                    recorded,
                    digits,
                    n,
                    format!("iterate within 1e-{} of 1", digits / 2),
                );
            }
        };
    }
    identify_limit(st, &fp, &window, recorded, opts)
}

fn fixed_witness(fp: &FixedPointResult) -> Witness {
    Witness::Fixed {
        omega: fp.omega.clone(),
        exact: fp.omega_exact.clone(),
    }
}

fn accept_cycle(
    st: &Stepper,
    p: &Fixed,
    q: &Fixed,
    tol: &Fixed,
    recorded: &[Fixed],
    n: usize,
) -> Option<TrajectoryReport> {
    let (u, v) = if p < q { (p.clone(), q.clone()) } else { (q.clone(), p.clone()) };
    let residual = st.h(&u)?.abs();
    (residual < *tol).then(|| TrajectoryReport {
        class: TrajectoryClass::ConvergesToTwoCycle,
        witness: Witness::Cycle { u, v, exact: None },
        iterates: recorded.to_vec(),
        precision_used: st.digits,
        iterations_used: n,
        notes: vec![],
    })
}

/// Called when the orbit has neither settled nor escaped within the
/// iteration cap, typically next to a neutral fixed point.
///
/// The iterates above `omega` are monotone; when they decrease, their limit
/// is the largest root of `h(x) = L(L(x)) - x` in `[omega, v_m]`. `h` is
/// sampled at `omega + (v_m - omega) 2^-j` down to a distance of
/// `10^-(digits/4)`: a sign change locates a 2-cycle, none means the limit
/// is `omega`.
fn identify_limit(
    st: &Stepper,
    fp: &FixedPointResult,
    window: &[Fixed],
    recorded: Vec<Fixed>,
    opts: &TrajectoryOptions,
) -> TrajectoryReport {
    let digits = st.digits;
    let omega = &fp.omega;
    let n = opts.max_iter;
    let (Some(prev), Some(last)) = (window.len().checked_sub(3).map(|i| &window[i]), window.last())
    else {
        return undetermined(recorded, digits, n, "too few iterates".into());
    };
    // `last` and `prev` share a parity; pick the one above omega.
    let (upper, upper_prev) = if last > omega {
        (last.clone(), prev.clone())
    } else {
        let (Some(y), Some(yp)) = (st.eval(last), st.eval(prev)) else {
            return undetermined(recorded, digits, n, "iterate within reach of 1".into());
        };
        (y, yp)
    };
    if upper >= upper_prev {
        return undetermined(
            recorded,
            digits,
            n,
            format!("iteration cap {} reached with the orbit moving away from omega", n),
        );
    }
    let noise = st.noise();
    let floor = st.ten_neg(digits / 4);
    let two = st.int(2);
    let mut outer = upper.clone();
    let mut gap = upper.sub(omega);
    let Some(h_outer) = st.h(&outer) else {
        return undetermined(recorded, digits, n, "iterate within reach of 1".into());
    };
    if h_outer.signum() > 0 {
        return undetermined(recorded, digits, n, "h is positive at the last iterate".into());
    }
    while gap > floor {
        gap = gap.div(&two);
        let x = omega.add(&gap);
        let Some(hx) = st.h(&x) else { break };
        if hx.abs() < noise {
            break;
        }
        if hx.signum() > 0 {
            let v = bisect_root(st, &x, &outer, &noise);
            let Some(u) = st.eval(&v) else { break };
            let (u, v) = if u < v { (u, v) } else { (v, u) };
            return TrajectoryReport {
                class: TrajectoryClass::ConvergesToTwoCycle,
                witness: Witness::Cycle { u, v, exact: None },
                iterates: recorded,
                precision_used: digits,
                iterations_used: n,
                notes: vec!["limit located as a root of L(L(x)) - x after the iteration cap".into()],
            };
        }
        outer = x;
    }
    TrajectoryReport {
        class: TrajectoryClass::ConvergesToFixed,
        witness: fixed_witness(fp),
        iterates: recorded,
        precision_used: digits,
        iterations_used: n,
        notes: vec![format!(
            "slow approach: L(L(x)) - x has no root in (omega + 1e-{}, x_n], so the monotone iterates tend to omega",
            digits / 4
        )],
    }
}

/// Root of `h` between `lo` (where `h > 0`) and `hi` (where `h < 0`).
fn bisect_root(st: &Stepper, lo: &Fixed, hi: &Fixed, noise: &Fixed) -> Fixed {
    let (mut lo, mut hi) = (lo.clone(), hi.clone());
    while hi.sub(&lo) > *noise {
        let mid = lo.midpoint(&hi);
        if mid == lo || mid == hi {
            break;
        }
        match st.h(&mid) {
            Some(v) if v.signum() > 0 => lo = mid,
            Some(_) => hi = mid,
            None => break,
        }
    }
    lo.midpoint(&hi)
}
