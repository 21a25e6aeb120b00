mod common;

use common::*;
use dungeonlab::dynamics::{fixed_point, trajectory, TrajectoryClass, TrajectoryOptions, Witness};
use dungeonlab::real::bits_for_digits;
use dungeonlab::reinterpret::reinterpret_mod;
use dungeonlab::seq::{
    composed_is_stable, pow_modulus, sequence_mod_stream, SequenceId, Stabilization,
    stabilization_point,
};
use dungeonlab::{
    laurent_eval, laurent_eval_approx, parse_decimal, reinterpret, DecimalExpansion, Fixed, Nat,
    Rat,
};
use num_bigint::{BigInt, BigUint};
use num_traits::Signed;
use proptest::prelude::*;

fn operand() -> impl Strategy<Value = BigUint> {
    (10u64..=1_000_000).prop_map(BigUint::from)
}

/// A terminating expansion `1.d1d2...` with 1 to 4 fractional digits.
fn short_expansion() -> impl Strategy<Value = String> {
    (1u32..=4)
        .prop_flat_map(|k| (Just(k), 1u32..10u32.pow(k)))
        .prop_map(|(k, f)| format!("1.{f:0>width$}", width = k as usize))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn reinterpret_matches_reference(a in 0u64..u64::MAX, b in 2u64..100_000) {
        let (a, b) = (BigUint::from(a), BigUint::from(b));
        prop_assert_eq!(reinterpret(&a, &b).unwrap(), sub(&a, &b));
    }

    #[test]
    fn lemma_monotone_and_superadditive(a in operand(), a2 in operand(), b in operand(), b2 in operand()) {
        let r = |x: &BigUint, y: &BigUint| reinterpret(x, y).unwrap();
        prop_assert_eq!(a2 >= a, r(&a2, &b) >= r(&a, &b));
        prop_assert_eq!(b2 >= b, r(&a, &b2) >= r(&a, &b));
        prop_assert!(r(&(&a + &a2), &b) >= r(&a, &b) + r(&a2, &b));
        prop_assert!(r(&a, &(&b + &b2)) >= r(&a, &b) + r(&a, &b2));
        prop_assert!(r(&a, &b) >= a.clone().max(b.clone()));
    }

    #[test]
    fn lemma_regrouping(a in operand(), b in operand(), c in operand()) {
        let r = |x: &BigUint, y: &BigUint| reinterpret(x, y).unwrap();
        prop_assert!(r(&r(&a, &b), &c) >= r(&a, &r(&b, &c)));
    }

    #[test]
    fn reinterpret_mod_matches(a in 0u64..u64::MAX, b in 2u64..u64::MAX, m in 2u64..u64::MAX) {
        let (a, b, m) = (BigUint::from(a), BigUint::from(b), BigUint::from(m));
        let ds: Vec<u8> = digits(&a).into_iter().map(|d| d as u8).collect();
        prop_assert_eq!(reinterpret_mod(&ds, &(&b % &m), &m).unwrap(), sub(&a, &b) % &m);
    }

    #[test]
    fn approx_evaluation_within_contract(
        a in "[1-9][0-9]{0,2}\\.[0-9]{0,3}(\\([0-8][0-9]{0,2}\\))?",
        num in 11u64..10_000,
        den in 1u64..10,
        digits in 16u32..80,
    ) {
        let Ok(a) = parse_decimal(&a) else { return Ok(()) };
        let x = Rat::new(BigInt::from(num + den * 10), BigInt::from(den * 10));
        let xf = Fixed::from_rat(&x, bits_for_digits(digits));
        let approx = laurent_eval_approx(&a, &xf, digits).unwrap();
        let exact = laurent_eval(&a, &xf.to_rat()).unwrap();
        let err = (approx.to_rat() - exact).abs();
        let bound = Rat::new(BigInt::from(1), BigInt::from(10).pow(digits - 2));
        prop_assert!(err <= bound, "error {} at {} digits", err, digits);
    }

    #[test]
    fn exact_rational_matches_reinterpret(a in 10u64..10_000_000, b in 2u64..1000) {
        let e = DecimalExpansion::from_nat(&BigUint::from(a)).unwrap();
        let v = laurent_eval(&e, &Rat::from_integer(BigInt::from(b))).unwrap();
        prop_assert_eq!(v, Rat::from_integer(sub(&BigUint::from(a), &BigUint::from(b)).into()));
    }

    #[test]
    fn modular_stream_matches_full_terms(n in 10u32..90, m in 2u64..1_000_000_000_000) {
        let m = BigUint::from(m);
        for (id, full) in [(SequenceId::Alpha, alpha as fn(u64) -> BigUint), (SequenceId::Gamma, gamma)] {
            let (k, r) = sequence_mod_stream(id, &m, n).unwrap().last().unwrap();
            prop_assert_eq!(k, n);
            prop_assert_eq!(r, full(n as u64) % &m);
        }
    }

    #[test]
    fn composition_multiplies_stability(
        f in proptest::collection::vec(-40i64..40, 2..6),
        g in proptest::collection::vec(-40i64..40, 2..6),
        m in 2i64..8,
        k in 2i64..8,
    ) {
        let scale = |c: &[i64], s: i64| -> Vec<BigInt> {
            c.iter().enumerate().map(|(i, &v)| BigInt::from(if i == 0 { v } else { v * s })).collect()
        };
        let (f, g) = (scale(&f, m), scale(&g, k));
        let mk = Nat::from((m * k) as u64);
        prop_assert!(composed_is_stable(&f, &g, &mk));
        prop_assert!(all_divisible(&poly_compose(&f, &g), m * k));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// For a terminating `a` the orbit never runs off to 1 and infinity, and
    /// repeated runs agree.
    #[test]
    fn terminating_expansions_do_not_diverge(a in short_expansion()) {
        let e = parse_decimal(&a).unwrap();
        let opts = TrajectoryOptions::default();
        let r1 = trajectory(&e, &opts).unwrap();
        prop_assert_ne!(r1.class, TrajectoryClass::Diverges);
        let r2 = trajectory(&e, &opts).unwrap();
        prop_assert_eq!(r1.class, r2.class);
        prop_assert_eq!(r1.iterates, r2.iterates);
    }

    /// `L` is decreasing, so iterates alternate sides of the fixed point.
    #[test]
    fn iterates_interleave_around_fixed_point(a in short_expansion()) {
        let e = parse_decimal(&a).unwrap();
        let fp = fixed_point(&e, 30).unwrap();
        let r = trajectory(&e, &TrajectoryOptions::default()).unwrap();
        let omega = fp.omega.to_f64();
        let side: Vec<f64> = r.iterates.iter().take(40).map(|x| x.to_f64() - omega).collect();
        for w in side.windows(2) {
            if w[0].abs() > 1e-12 && w[1].abs() > 1e-12 {
                prop_assert!(w[0] * w[1] < 0.0, "{} {:?}", a, w);
            }
        }
    }

    /// The located fixed point solves `L(x) = x` under the reference
    /// evaluator, and `L(x) - x` changes sign across it.
    #[test]
    fn fixed_point_solves_reference_equation(a in short_expansion()) {
        let e = parse_decimal(&a).unwrap();
        let w = |d: &[u8]| d.iter().map(|&x| x as u32).collect::<Vec<_>>();
        let (int, pre, per) = (w(e.int_digits()), w(e.frac_pre()), w(e.frac_period()));
        let g = |x: f64| laurent_f64(&int, &pre, &per, x) - x;
        let omega = fixed_point(&e, 20).unwrap().omega.to_f64();
        prop_assert!(g(omega).abs() < 1e-12, "{} at {}", a, omega);
        prop_assert!(g(omega - 1e-6) > 0.0 && g(omega + 1e-6) < 0.0);
    }

    /// Residues modulo `10^j` are the reductions of those modulo `10^k`.
    #[test]
    fn residues_reduce_coherently(j in 1u32..8, extra in 1u32..8) {
        let small = pow_modulus(10, j);
        let large = pow_modulus(10, j + extra);
        let a: Vec<_> = sequence_mod_stream(SequenceId::Alpha, &small, 200).unwrap().collect();
        let b: Vec<_> = sequence_mod_stream(SequenceId::Alpha, &large, 200).unwrap().collect();
        for ((n, r), (k, s)) in a.iter().zip(&b) {
            prop_assert_eq!(n, k);
            prop_assert_eq!(r, &(s % &small));
        }
        let stab = |m: &Nat| match stabilization_point(SequenceId::Alpha, m, 400, 100).unwrap() {
            Stabilization::Stabilized { n0, .. } => n0,
            Stabilization::NotStabilized => u32::MAX,
        };
        prop_assert!(stab(&small) <= stab(&large));
    }
}

#[test]
fn exact_fixed_points_are_reported_exactly() {
    let opts = TrajectoryOptions::default();
    for a in ["1.04", "3", "1.(3)"] {
        let r = trajectory(&parse_decimal(a).unwrap(), &opts).unwrap();
        match r.witness {
            Witness::Fixed { exact: Some(_), .. } | Witness::Cycle { exact: Some(_), .. } => {}
            w => panic!("{a}: {:?} {w:?}", r.class),
        }
    }
}

/// Examples with each behaviour, plus a few in between.
const EXAMPLES: [&str; 9] = [
    "1.1", "1.02", "1.04", "1.05", "1.09", "1.1110000099", "1.(01)", "1.(001)", "1.9",
];

#[test]
fn even_and_odd_iterates_are_monotone() {
    let opts = TrajectoryOptions::default();
    for a in EXAMPLES {
        let r = trajectory(&parse_decimal(a).unwrap(), &opts).unwrap();
        let xs: Vec<f64> = r.iterates.iter().map(Fixed::to_f64).collect();
        for parity in 0..2 {
            let sub: Vec<f64> = xs.iter().skip(parity).step_by(2).copied().collect();
            let slack = 1e-25;
            let up = sub.windows(2).all(|w| w[1] >= w[0] - slack);
            let down = sub.windows(2).all(|w| w[1] <= w[0] + slack);
            assert!(up || down, "{a}, parity {parity}: {:?}", &sub[..sub.len().min(8)]);
        }
    }
}

#[test]
fn reported_cycles_are_symmetric() {
    let opts = TrajectoryOptions::default();
    for a in EXAMPLES {
        let e = parse_decimal(a).unwrap();
        let r = trajectory(&e, &opts).unwrap();
        if let Witness::Cycle { u, v, .. } = r.witness {
            let omega = fixed_point(&e, 20).unwrap().omega;
            assert!(u < omega && omega < v, "{a}");
            let (int, pre, per) = {
                let w = |d: &[u8]| d.iter().map(|&x| x as u32).collect::<Vec<_>>();
                (w(e.int_digits()), w(e.frac_pre()), w(e.frac_period()))
            };
            let l = |x: f64| laurent_f64(&int, &pre, &per, x);
            assert!((l(u.to_f64()) - v.to_f64()).abs() < 1e-9, "{a}");
            assert!((l(v.to_f64()) - u.to_f64()).abs() < 1e-9, "{a}");
        }
    }
}

/// A start strictly between `x0 = 10` and `L(L(10))` ends up in the same class.
#[test]
fn neighbouring_starts_share_the_class() {
    let opts = TrajectoryOptions::default();
    let ten = Rat::from_integer(BigInt::from(10));
    for a in EXAMPLES {
        let e = parse_decimal(a).unwrap();
        let base = trajectory(&e, &opts).unwrap();
        let x2 = laurent_eval(&e, &e.value()).unwrap();
        for t in [1, 2, 3] {
            let y = &ten + (&x2 - &ten) * Rat::new(BigInt::from(t), BigInt::from(4));
            let r = trajectory(&e, &TrajectoryOptions { x0: Some(y.clone()), ..opts.clone() }).unwrap();
            assert_eq!(r.class, base.class, "{a} from {y}");
        }
    }
}

/// Seven is not a prime below 10, yet the residue still settles: from
/// n = 70 on, every term is divisible by 7.
#[test]
fn alpha_mod_seven_settles_at_zero() {
    let m = Nat::from(7u32);
    let s = stabilization_point(SequenceId::Alpha, &m, 2000, 100).unwrap();
    assert_eq!(s, Stabilization::Stabilized { n0: 70, residue: Nat::from(0u32) });
    for n in [69u64, 70, 71, 120] {
        assert_eq!(alpha(n) % &m == Nat::from(0u32), n >= 70, "n = {n}");
    }
}
