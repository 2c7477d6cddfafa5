//! Prefix composition: an outer code selects which inner code carries the message.
//!
//!     cargo run --example prefix_composition
//!
//! Checks the error chain `error(composed) <= error(outer) + mean error(inner)`
//! and the leakage chain at every jammer sequence.

use avwc::cli::{example_one, example_two};
use avwc::sim::{basis_decoders, compose_prefix, composed_error_check, composed_leakage_check, Code, JammerSweep};

fn main() -> avwc::Result<()> {
    let outer = Code::deterministic(1, 2, &[0, 1], basis_decoders(2, 2, &[0, 1])?)?;
    let rep = Code::deterministic(2, 2, &[0, 3], basis_decoders(4, 2, &[0, 0, 1, 1])?)?;
    let swapped = Code::deterministic(2, 2, &[3, 0], basis_decoders(4, 2, &[1, 1, 0, 0])?)?;
    let inners = [rep, swapped];

    let composed = compose_prefix(&outer, &inners)?;
    println!("composed code: n={} J={} words={}", composed.n(), composed.messages(), composed.words());

    let sweep = JammerSweep::exhaustive();
    for ch in [example_one(), example_two()] {
        let err = composed_error_check(&outer, &inners, &ch, &sweep)?;
        let leak = composed_leakage_check(&outer, &inners, &ch, &sweep)?;
        println!("{}", ch.name());
        for (e, l) in err.rows.iter().zip(&leak.rows) {
            println!(
                "  t={:?} error {:.6} <= {:.6}   leakage {:.6} <= {:.6}",
                e.t_seq, e.composed, e.bound, l.composed, l.bound
            );
        }
        println!("  min slack: error {:.3e}, leakage {:.3e}", err.min_slack, leak.min_slack);
    }
    Ok(())
}
