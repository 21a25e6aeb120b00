//! Cobweb plot data for x -> L<a>(x) as CSV: segments, a blank line, then
//! samples of the curve.
//!
//! cargo run --example cobweb -- 1.05 60 > cobweb.csv

use dungeonlab::dynamics::cobweb_points;
use dungeonlab::{parse_decimal, Rat};

fn main() -> dungeonlab::Result<()> {
    let mut args = std::env::args().skip(1);
    let a = parse_decimal(&args.next().unwrap_or_else(|| "1.1".into()))?;
    let steps = args.next().and_then(|s| s.parse().ok()).unwrap_or(12);

    let web = cobweb_points(&a, &Rat::from_integer(10.into()), steps)?;
    println!("x1,y1,x2,y2");
    for s in &web.segments {
        println!(
            "{:.12},{:.12},{:.12},{:.12}",
            s.from.0, s.from.1, s.to.0, s.to.1
        );
    }
    println!();
    println!("x,y");
    for (x, y) in &web.curve {
        println!("{x:.12},{y:.12}");
    }
    Ok(())
}
