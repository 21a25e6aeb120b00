//! Orbits of x -> L<a>(x) from x_0 = 10 for a selection of a.
//!
//! cargo run --release --example dynamics_classes

use dungeonlab::dynamics::{fixed_point, trajectory, TrajectoryOptions, Witness};
use dungeonlab::parse_decimal;

fn main() -> dungeonlab::Result<()> {
    let opts = TrajectoryOptions::default();
    for text in [
        "1.1", "1.01", "1.02", "1.03", "1.04", "1.05", "1.09", "1.(1)", "1.(8)", "1.(01)",
        "1.(001)", "1.1110000099", "3", "1.9",
    ] {
        let a = parse_decimal(text)?;
        let report = trajectory(&a, &opts)?;
        let fp = fixed_point(&a, 20)?;
        let witness = match &report.witness {
            Witness::Fixed { omega, exact: Some(q) } => format!("omega = {q} (exact), {omega:.12}"),
            Witness::Fixed { omega, .. } => format!("omega = {omega:.12}"),
            Witness::Cycle { u, v, .. } => format!("cycle {u:.12} <-> {v:.12}"),
            Witness::Divergence { min_low, max_high } => {
                format!("iterates reach {min_low:.3e} and {max_high:.3e}", min_low = min_low.to_f64(), max_high = max_high.to_f64())
            }
            Witness::None => String::new(),
        };
        println!(
            "{text:>14}  {:<24} {witness}\n{:>14}  fixed point {:.12}, L' = {:.6}, {:?}",
            report.class.label(),
            "",
            fp.omega,
            fp.derivative_f64(),
            fp.local_class
        );
    }
    Ok(())
}
