use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::output::CheckRow;
use crate::error::Result;
use crate::radix::to_decimal_string;
use crate::reinterpret::{lemma3_holds, reinterpret};
use crate::seq::{
    alpha_loglog_estimate, growth_loglog, growth_ratio, inequality_report, lbg_check,
    magnitude, pow_modulus, sequence_mod_stream, sequence_stream, sequence_term,
    stabilization_of, GrowthMode, GrowthPoint, SequenceId, Stabilization,
};
use crate::Nat;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Table1,
    Lemmas,
    Inequalities,
    Growth,
    Padic,
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    /// Random instances per lemma.
    pub instances: usize,
    pub seed: u64,
    /// Upper end of the growth ratio sweep.
    pub growth_n_max: u32,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            instances: 10_000,
            seed: 0x5eed,
            growth_n_max: 100_000,
        }
    }
}

/// Known initial terms for `n = 10..=25`, columns alpha, beta, gamma, delta.
pub const INITIAL_TERMS: [[u64; 4]; 16] = [
    [10, 10, 10, 10],
    [11, 11, 11, 11],
    [13, 13, 13, 13],
    [16, 16, 16, 16],
    [20, 20, 20, 20],
    [25, 30, 25, 28],
    [31, 48, 31, 45],
    [38, 76, 38, 73],
    [46, 132, 46, 133],
    [55, 420, 55, 348],
    [65, 1640, 110, 4943],
    [87, 11991, 221, 22779],
    [135, 249459, 444, 537226],
    [239, 14103793, 891, 11662285],
    [463, 5358891675, 1786, 46524257772],
    [943, 19563802363305, 3577, 1092759075796059],
];

/// `(sequence, n, digit count, leading five digits)` for larger terms.
pub const MAGNITUDES: [(SequenceId, u32, u64, &str); 8] = [
    (SequenceId::Beta, 30, 81, "36053"),
    (SequenceId::Delta, 30, 90, "25841"),
    (SequenceId::Beta, 35, 644, "86168"),
    (SequenceId::Delta, 35, 899, "12327"),
    (SequenceId::Alpha, 100, 58, "40033"),
    (SequenceId::Gamma, 100, 115, "49144"),
    (SequenceId::Alpha, 109, 1099, "68365"),
    (SequenceId::Gamma, 103, 918, "34024"),
];

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Result<Vec<CheckRow>> {
    match suite {
        Suite::Table1 => table1(),
        Suite::Lemmas => Ok(lemmas(opts)),
        Suite::Inequalities => inequalities(45),
        Suite::Growth => growth(opts),
        Suite::Padic => padic(),
    }
}

fn row(check: impl Into<String>, passed: bool, detail: impl Into<String>) -> CheckRow {
    CheckRow {
        check: check.into(),
        passed,
        detail: detail.into(),
    }
}

fn table1() -> Result<Vec<CheckRow>> {
    let mut rows = Vec::new();
    for (col, id) in SequenceId::ALL.into_iter().enumerate() {
        for item in sequence_stream(id, 25)? {
            let (n, v) = item?;
            let want = Nat::from(INITIAL_TERMS[(n - 10) as usize][col]);
            rows.push(row(
                format!("{id}({n})"),
                v == want,
                format!("computed {v}, expected {want}"),
            ));
        }
    }
    for (id, n, digits, leading) in MAGNITUDES {
        let v = sequence_term(id, n)?;
        let (d, _) = magnitude(&v);
        let text = to_decimal_string(&v);
        let head = &text[..5.min(text.len())];
        rows.push(row(
            format!("{id}({n}) magnitude"),
            d == digits && head == leading,
            format!("{d} digits, leading {head}; expected {digits} digits, leading {leading}"),
        ));
    }
    Ok(rows)
}

fn inequalities(n_max: u32) -> Result<Vec<CheckRow>> {
    let report = inequality_report(n_max)?;
    let mut rows: Vec<CheckRow> = report
        .rows
        .iter()
        .map(|r| {
            row(
                format!("n = {}", r.n),
                r.beta_ge_alpha && r.delta_ge_gamma && r.beta_ge_gamma,
                format!(
                    "beta >= alpha: {}, delta >= gamma: {}, beta >= gamma: {}; {}",
                    r.beta_ge_alpha, r.delta_ge_gamma, r.beta_ge_gamma, r.alpha_vs_gamma
                ),
            )
        })
        .collect();
    for v in &report.violations {
        rows.push(row(
            format!("violation at n = {}", v.n),
            false,
            format!("{}: {} vs {}", v.relation, v.lhs, v.rhs),
        ));
    }
    Ok(rows)
}

fn uniform(rng: &mut ChaCha8Rng, lo: u64, hi: u64) -> Nat {
    Nat::from(rng.gen_range(lo..=hi))
}

fn horner(coeffs: &[u64], x: &Nat) -> Nat {
    coeffs
        .iter()
        .rev()
        .fold(Nat::from(0u32), |acc, &c| acc * x + Nat::from(c))
}

/// Counts how many of `instances` draws pass; the first failing
/// draw is kept as a witness.
fn property(
    name: &str,
    instances: usize,
    rng: &mut ChaCha8Rng,
    mut draw: impl FnMut(&mut ChaCha8Rng) -> (bool, String),
) -> CheckRow {
    let mut failures = 0;
    let mut witness = None;
    for _ in 0..instances {
        let (ok, desc) = draw(rng);
        if !ok {
            failures += 1;
            witness.get_or_insert(desc);
        }
    }
    let detail = match witness {
        None => format!("{instances} instances, 0 violations"),
        Some(w) => format!("{instances} instances, {failures} violations; first: {w}"),
    };
    row(name, failures == 0, detail)
}

fn re(a: &Nat, b: &Nat) -> Nat {
    reinterpret(a, b).expect("operands are at least 10")
}

/// Randomized instances of the reinterpretation lemmas, operands in
/// `[10, 10^6]`.
fn lemmas(opts: &VerifyOptions) -> Vec<CheckRow> {
    const LO: u64 = 10;
    const HI: u64 = 1_000_000;
    let k = opts.instances;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut rows = Vec::new();

    // Generalized digits nu_i in 0..=99.
    rows.push(property("LC", k, &mut rng, |r| {
        let len = r.gen_range(1..=6);
        let nu: Vec<u64> = (0..len).map(|_| r.gen_range(0..=99)).collect();
        let b = uniform(r, LO, HI);
        let big_n = horner(&nu, &Nat::from(10u32));
        if big_n < Nat::from(10u32) {
            return (true, String::new());
        }
        let ok = re(&big_n, &b) >= horner(&nu, &b);
        (ok, format!("nu = {nu:?}, b = {b}"))
    }));
    rows.push(property("C1", k, &mut rng, |r| {
        let len = r.gen_range(2..=6);
        let mut f: Vec<u64> = (0..len).map(|_| r.gen_range(0..=30)).collect();
        *f.last_mut().expect("nonempty") = r.gen_range(1..=30);
        let b = uniform(r, LO, HI);
        let ok = re(&horner(&f, &Nat::from(10u32)), &b) >= horner(&f, &b);
        (ok, format!("f = {f:?}, b = {b}"))
    }));
    rows.push(property("L1(i)", k, &mut rng, |r| {
        let (a, a2, b) = (uniform(r, LO, HI), uniform(r, LO, HI), uniform(r, LO, HI));
        let ok = (a2 >= a) == (re(&a2, &b) >= re(&a, &b));
        (ok, format!("a = {a}, a' = {a2}, b = {b}"))
    }));
    rows.push(property("L1(ii)", k, &mut rng, |r| {
        let (a, b, b2) = (uniform(r, LO, HI), uniform(r, LO, HI), uniform(r, LO, HI));
        let ok = (b2 >= b) == (re(&a, &b2) >= re(&a, &b));
        (ok, format!("a = {a}, b = {b}, b' = {b2}"))
    }));
    rows.push(property("L1(iii)", k, &mut rng, |r| {
        let (a, a2, b) = (uniform(r, LO, HI), uniform(r, LO, HI), uniform(r, LO, HI));
        let ok = re(&(&a + &a2), &b) >= re(&a, &b) + re(&a2, &b);
        (ok, format!("a = {a}, a' = {a2}, b = {b}"))
    }));
    rows.push(property("L1(iv)", k, &mut rng, |r| {
        let (a, b, b2) = (uniform(r, LO, HI), uniform(r, LO, HI), uniform(r, LO, HI));
        let ok = re(&a, &(&b + &b2)) >= re(&a, &b) + re(&a, &b2);
        (ok, format!("a = {a}, b = {b}, b' = {b2}"))
    }));
    rows.push(property("L1(v)", k, &mut rng, |r| {
        let (a, b) = (uniform(r, LO, HI), uniform(r, LO, HI));
        let ok = re(&a, &b) >= a.clone().max(b.clone());
        (ok, format!("a = {a}, b = {b}"))
    }));
    rows.push(property("L2", k, &mut rng, |r| {
        let (a, b, c) = (uniform(r, LO, HI), uniform(r, LO, HI), uniform(r, LO, HI));
        let ok = re(&re(&a, &b), &c) >= re(&a, &re(&b, &c));
        (ok, format!("a = {a}, b = {b}, c = {c}"))
    }));
    rows.push(property("L3", k, &mut rng, |r| {
        let (a, b) = (uniform(r, LO, HI), uniform(r, LO, HI));
        let ok = lemma3_holds(&a, &b).unwrap_or(false);
        (ok, format!("a = {a}, b = {b}"))
    }));
    // Drawn to satisfy the hypotheses: k in [20, 1000] keeps the bound on
    // log c at or below 6 so that c fits in the operand range.
    rows.push(property("LBG", k, &mut rng, |r| {
        let kf: f64 = r.gen_range(20.0..=1000.0);
        let lk = kf.log10();
        let c_min = 10f64.powf(lk / (lk - 1.0)).ceil() as u64;
        let c = uniform(r, c_min.clamp(LO, HI), HI);
        let b_max = ((HI as f64) / kf).floor() as u64;
        let b = uniform(r, LO, b_max.max(LO));
        let a_min = (kf * b.to_f64().expect("finite")).ceil() as u64;
        let a = uniform(r, a_min.max(LO), HI.max(a_min));
        let desc = format!("a = {a}, b = {b}, c = {c}, k = {kf}");
        match lbg_check(&a, &b, &c, kf) {
            Ok(ok) => (ok, desc),
            Err(e) => (false, format!("{desc}: {e}")),
        }
    }));
    rows
}

fn growth(opts: &VerifyOptions) -> Result<Vec<CheckRow>> {
    let mut rows = Vec::new();
    let mut worst: f64 = 0.0;
    for n in 30..=40 {
        let exact = growth_loglog(SequenceId::Alpha, n, GrowthMode::Exact)?.loglog;
        let est = growth_loglog(SequenceId::Alpha, n, GrowthMode::Estimated)?.loglog;
        worst = worst.max(((est - exact) / exact).abs());
    }
    rows.push(row(
        "estimate vs exact, alpha, n = 30..40",
        worst <= 1e-3,
        format!("largest relative error {worst:.3e}, limit 1e-3"),
    ));

    let n_max = opts.growth_n_max.max(100);
    let ratio = |n: u32| {
        growth_ratio(&GrowthPoint {
            n,
            loglog: alpha_loglog_estimate(n),
            mode: GrowthMode::Estimated,
        })
    };
    let ratios: Vec<(u32, f64)> = (100..=n_max).map(|n| (n, ratio(n))).collect();
    let (lo, hi) = ratios.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &(_, r)| {
        (lo.min(r), hi.max(r))
    });
    rows.push(row(
        format!("ratio in (0, 1), n = 100..{n_max}"),
        lo > 0.0 && hi < 1.0,
        format!("ratio ranges over [{lo:.5}, {hi:.5}]"),
    ));
    let drops: Vec<u32> = ratios
        .windows(2)
        .filter(|w| w[1].1 <= w[0].1)
        .map(|w| w[1].0)
        .collect();
    rows.push(row(
        format!("ratio increasing at every n, n = 100..{n_max}"),
        drops.is_empty(),
        match drops.first() {
            None => "no decrease".to_string(),
            Some(first) => format!(
                "{} decreases, first at n = {first}: each step adds a constant within a decade while n log log n keeps growing",
                drops.len()
            ),
        },
    ));
    let checkpoints: Vec<(u32, f64)> = [100u32, 1_000, 10_000, 100_000]
        .into_iter()
        .filter(|&n| n <= n_max)
        .map(|n| (n, ratio(n)))
        .collect();
    rows.push(row(
        "ratio increasing across decades",
        checkpoints.windows(2).all(|w| w[1].1 > w[0].1),
        checkpoints
            .iter()
            .map(|(n, r)| format!("{n}: {r:.5}"))
            .collect::<Vec<_>>()
            .join(", "),
    ));
    Ok(rows)
}

fn padic() -> Result<Vec<CheckRow>> {
    let mut rows = Vec::new();

    let m10 = pow_modulus(10, 10);
    let res: Vec<_> = sequence_mod_stream(SequenceId::Alpha, &m10, 500)?.collect();
    let r60 = &res[50].1;
    let constant = res[50..].iter().all(|(_, r)| r == r60);
    rows.push(row(
        "alpha mod 10^10 constant for n = 60..500",
        constant,
        format!("residue {r60}"),
    ));
    for n in 60..=62 {
        let full = sequence_term(SequenceId::Alpha, n)? % &m10;
        rows.push(row(
            format!("alpha({n}) mod 10^10 equals the residue"),
            &full == r60,
            format!("full term gives {full}"),
        ));
    }
    if let Stabilization::Stabilized { n0, residue } = stabilization_of(&res, 100)? {
        rows.push(row(
            "alpha mod 10^10 stabilization point",
            n0 <= 60,
            format!("n0 = {n0}, residue {residue}"),
        ));
    } else {
        rows.push(row("alpha mod 10^10 stabilization point", false, "not stabilized"));
    }

    let m20 = pow_modulus(10, 20);
    let res: Vec<_> = sequence_mod_stream(SequenceId::Alpha, &m20, 1200)?.collect();
    let r510 = &res[500].1;
    rows.push(row(
        "alpha mod 10^20 constant for n = 510..1200",
        res[500..].iter().all(|(_, r)| r == r510),
        format!("residue {r510}"),
    ));

    for (base, exp) in [(2u32, 20u32), (5, 20)] {
        let m = pow_modulus(base, exp);
        let st = stabilization_of(&sequence_mod_stream(SequenceId::Alpha, &m, 2000)?.collect::<Vec<_>>(), 100)?;
        let (ok, detail) = match st {
            Stabilization::Stabilized { n0, residue } => (true, format!("n0 = {n0}, residue {residue}")),
            Stabilization::NotStabilized => (false, "no stable run by n = 2000".to_string()),
        };
        rows.push(row(format!("alpha mod {base}^{exp} stabilizes by n = 2000"), ok, detail));
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_lemma_corpus_passes() {
        let opts = VerifyOptions {
            instances: 200,
            ..VerifyOptions::default()
        };
        for r in lemmas(&opts) {
            assert!(r.passed, "{}: {}", r.check, r.detail);
        }
    }
}
