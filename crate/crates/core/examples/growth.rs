//! log log alpha_n from the exact term and from the log-log recurrence, and
//! the ratio against n log log n.
//!
//! cargo run --release --example growth

use dungeonlab::seq::{
    growth_loglog, growth_ratio, tower_baseline_loglog_u, GrowthMode, SequenceId,
};

fn main() -> dungeonlab::Result<()> {
    println!("{:>4} {:>20} {:>20}", "n", "exact", "estimated");
    for n in (30..=110).step_by(10) {
        let exact = growth_loglog(SequenceId::Alpha, n, GrowthMode::Exact)?;
        let est = growth_loglog(SequenceId::Alpha, n, GrowthMode::Estimated)?;
        println!("{n:>4} {:>20.15} {:>20.15}", exact.loglog, est.loglog);
    }

    println!();
    for n in [100, 1_000, 10_000, 100_000, 1_000_000] {
        let alpha = growth_loglog(SequenceId::Alpha, n, GrowthMode::Estimated)?;
        let gamma = growth_loglog(SequenceId::Gamma, n, GrowthMode::Estimated)?;
        println!(
            "n = {n:>7}: ratio {:.5}, log log alpha {:>12.3}, log log gamma {:>12.3}, tower {:>12.3}",
            growth_ratio(&alpha),
            alpha.loglog,
            gamma.loglog,
            tower_baseline_loglog_u(n)?
        );
    }
    Ok(())
}
