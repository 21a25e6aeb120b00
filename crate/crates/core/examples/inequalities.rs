//! The orderings between the four sequences, term by term.
//!
//! cargo run --release --example inequalities

use dungeonlab::seq::{inequality_report, lbg_check};
use dungeonlab::Nat;

fn main() -> dungeonlab::Result<()> {
    let report = inequality_report(45)?;
    for row in report.rows.iter().step_by(5) {
        println!(
            "n = {:>2}  digits {:?}  {}",
            row.n, row.digits, row.alpha_vs_gamma
        );
    }
    println!("violations: {}", report.violations.len());

    let n = |v: u64| Nat::from(v);
    for (a, b, c, k) in [(5000, 40, 200, 100.0), (900, 30, 30_000, 20.0), (100, 100, 100, 11.0)] {
        match lbg_check(&n(a), &n(b), &n(c), k) {
            Ok(holds) => println!("a = {a}, b = {b}, c = {c}, k = {k}: {holds}"),
            Err(e) => println!("a = {a}, b = {b}, c = {c}, k = {k}: {e}"),
        }
    }
    Ok(())
}
