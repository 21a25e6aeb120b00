//! The four dungeon sequences for n = 10..25 and the size of a few later terms.
//!
//! cargo run --release --example table1

use dungeonlab::radix::to_decimal_string;
use dungeonlab::seq::{magnitude, sequence_stream, sequence_term, SequenceId};

fn main() -> dungeonlab::Result<()> {
    let columns = SequenceId::ALL
        .map(|id| sequence_stream(id, 25).and_then(|s| s.collect::<dungeonlab::Result<Vec<_>>>()));
    let [alpha, beta, gamma, delta] = columns;
    let (alpha, beta, gamma, delta) = (alpha?, beta?, gamma?, delta?);

    println!("{:>3} {:>6} {:>16} {:>6} {:>18}", "n", "alpha", "beta", "gamma", "delta");
    for i in 0..alpha.len() {
        println!(
            "{:>3} {:>6} {:>16} {:>6} {:>18}",
            alpha[i].0, alpha[i].1, beta[i].1, gamma[i].1, delta[i].1
        );
    }

    println!();
    for (id, n) in [
        (SequenceId::Beta, 30),
        (SequenceId::Delta, 30),
        (SequenceId::Beta, 35),
        (SequenceId::Delta, 35),
        (SequenceId::Alpha, 100),
        (SequenceId::Gamma, 100),
        (SequenceId::Alpha, 109),
        (SequenceId::Gamma, 103),
    ] {
        let v = sequence_term(id, n)?;
        let (digits, _) = magnitude(&v);
        let text = to_decimal_string(&v);
        println!(
            "{id}({n}) ~ {}.{} x 10^{}  ({} {})",
            &text[..1],
            &text[1..5],
            digits - 1,
            id.oeis(),
            id.name()
        );
    }
    Ok(())
}
