//! `a_b`: the decimal digits of `a` read in base `b`, plus the rational
//! extension `L<a>(x)` for decimal expansions.
//!
//! cargo run --example reinterpret

use dungeonlab::seq::{dungeon_chain, Grouping};
use dungeonlab::{laurent_eval, lemma3_bounds, parse_decimal, parse_rational, reinterpret, Nat};

fn nat(v: u64) -> Nat {
    Nat::from(v)
}

fn main() -> dungeonlab::Result<()> {
    for (a, b) in [(12, 13), (10, 999), (123, 16), (999, 10)] {
        println!("{a}_{b} = {}", reinterpret(&nat(a), &nat(b))?);
    }

    // 10_11_12_13 grouped both ways
    let chain: Vec<Nat> = (10..=13).map(nat).collect();
    println!("bottom-up 10_11_12_13 = {}", dungeon_chain(&chain, Grouping::BottomUp)?);
    println!("top-down  10_11_12_13 = {}", dungeon_chain(&chain, Grouping::TopDown)?);

    let b = lemma3_bounds(&nat(4321), &nat(1000))?;
    println!(
        "4321_1000 lies between 10^{:.3} and 10^{:.3}",
        b.lower_exp, b.upper_exp
    );

    for (a, x) in [("1.1", "10"), ("1.1", "3/2"), ("1.(3)", "4"), ("2.5(05)", "7")] {
        let v = laurent_eval(&parse_decimal(a)?, &parse_rational(x)?)?;
        println!("L<{a}>({x}) = {v}");
    }
    Ok(())
}
