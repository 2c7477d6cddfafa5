//! Error probability and leakage of small codes under every jammer sequence.
//!
//!     cargo run --example code_simulation

use avwc::cli::{example_one, example_two};
use avwc::sim::{basis_decoders, error_prob, leakage, worst_case, Code, JammerSweep};

fn main() -> avwc::Result<()> {
    // repetition code 00 / 11, decoded on the first letter
    let rep = Code::deterministic(2, 2, &[0, 3], basis_decoders(4, 2, &[0, 0, 1, 1])?)?;
    // all four words as messages
    let full = Code::deterministic(2, 2, &[0, 1, 2, 3], basis_decoders(4, 4, &[0, 1, 2, 3])?)?;

    for ch in [example_one(), example_two()] {
        println!("{}", ch.name());
        for (label, code) in [("repetition", &rep), ("all words", &full)] {
            for t in [[0, 0], [0, 1], [1, 0], [1, 1]] {
                println!(
                    "  {label:<10} t={t:?} error={:.9} leakage={:.9}",
                    error_prob(code, &ch, &t)?,
                    leakage(code, &ch, &t)?
                );
            }
            let w = worst_case(code, &ch, &JammerSweep::exhaustive())?;
            println!(
                "  {label:<10} worst error {:.9} at {:?}, worst leakage {:.9} at {:?}",
                w.max_error, w.t_seq, w.max_leakage, w.leakage_t_seq
            );
        }
    }

    let sampled = worst_case(&full, &example_two(), &JammerSweep::sampled(3, 42))?;
    println!("sampled sweep (lower bound on the max): {sampled:?}");
    Ok(())
}
