//! Decide symmetrizability of the bundled legal families.
//!
//!     cargo run --example symmetrizability
//!
//! A family is symmetrizable when some `tau(t|a)` makes
//! `sum_t tau(t|a) W_t(a') = sum_t tau(t|a') W_t(a)` for all symbol pairs.
//! The check minimises the largest violation by linear programming.

use avwc::cli::bundled_examples;
use avwc::sym::{check_symmetrizable, residual, SymWitness, DEFAULT_TOL};

fn main() -> avwc::Result<()> {
    for (name, ch) in bundled_examples() {
        let res = check_symmetrizable(ch.legal(), DEFAULT_TOL)?;
        println!(
            "{name:<10} symmetrizable={:<5} residual={:.3e} lp_objective={:.9}",
            res.symmetrizable, res.residual, res.lp_objective
        );
        if let Some(w) = &res.witness {
            for (a, row) in w.tau().iter().enumerate() {
                println!("    tau(.|{}) = {row:?}", ch.alphabet()[a]);
            }
        }
    }

    // the jammer that copies the input symbol symmetrizes the first family
    let ex1 = &bundled_examples()[0].1;
    let copy = SymWitness::deterministic(&[0, 1], 2)?;
    println!("example1 copy-jammer residual = {:.3e}", residual(ex1.legal(), &copy)?);

    let res = check_symmetrizable(ex1.legal(), DEFAULT_TOL)?;
    println!("{}", res.witness_document(ex1.legal()));
    Ok(())
}
