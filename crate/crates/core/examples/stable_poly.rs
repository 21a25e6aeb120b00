//! m-stable polynomials: composing them multiplies the stabilities, which is
//! what pins down the last digits of alpha_n.
//!
//! cargo run --release --example stable_poly

use dungeonlab::seq::{compose_stable, digit_poly, is_m_stable, phi_composition, StablePoly};
use dungeonlab::Nat;
use num_bigint::BigInt;

fn main() -> dungeonlab::Result<()> {
    let f = StablePoly::new(vec![3.into(), 2.into()], Nat::from(2u32))?;
    let g = StablePoly::new(vec![7.into(), 0.into(), 5.into()], Nat::from(5u32))?;
    let h = compose_stable(&f, &g);
    println!("f = {:?}, g = {:?}", f.coeff_strings(), g.coeff_strings());
    println!("f(g(x)) = {:?}, {}-stable", h.coeff_strings(), h.stability());
    println!("10-stable: {}", is_m_stable(h.coeffs(), &Nat::from(10u32)));

    for k in [19u32, 23, 47] {
        let p = digit_poly(&Nat::from(k));
        println!("digits of {k}: {:?}, stability {}", p.coeff_strings(), p.stability());
    }

    // the innermost 50 reinterpretations, reduced mod 10^10
    let m = Nat::from(10u64.pow(10));
    let phi = phi_composition(59, &m)?;
    println!(
        "composition through 59: degree {}, certificate {}, constant term {}",
        phi.degree(),
        phi.stability(),
        phi.constant_term()
    );
    let at = |x: u64| phi.eval(&BigInt::from(x)) % BigInt::from(10u64.pow(10));
    println!("evaluated at 60, 61, 62: {} {} {}", at(60), at(61), at(62));
    Ok(())
}
