//! Residues of alpha_n and gamma_n modulo m, and the index from which they
//! stop changing.
//!
//! cargo run --release --example padic

use dungeonlab::seq::{
    pow_modulus, sequence_mod_stream, stabilization_point, SequenceId, Stabilization,
};

fn main() -> dungeonlab::Result<()> {
    let m = pow_modulus(10, 10);
    for (n, r) in sequence_mod_stream(SequenceId::Alpha, &m, 70)?.skip(45).step_by(5) {
        println!("alpha({n}) mod 10^10 = {r:0>10}");
    }

    let cases = [
        (SequenceId::Alpha, 10, 10, 500),
        (SequenceId::Alpha, 10, 20, 1200),
        (SequenceId::Alpha, 2, 20, 2000),
        (SequenceId::Alpha, 5, 20, 2000),
        (SequenceId::Alpha, 7, 1, 500),
        (SequenceId::Gamma, 10, 10, 2000),
    ];
    for (id, base, exp, n_max) in cases {
        let m = pow_modulus(base, exp);
        match stabilization_point(id, &m, n_max, 100)? {
            Stabilization::Stabilized { n0, residue } => {
                println!("{id} mod {base}^{exp}: constant {residue} from n = {n0}")
            }
            Stabilization::NotStabilized => {
                println!("{id} mod {base}^{exp}: still changing at n = {n_max}")
            }
        }
    }

    if let Err(e) = sequence_mod_stream(SequenceId::Beta, &m, 100) {
        println!("beta: {e}");
    }
    Ok(())
}
