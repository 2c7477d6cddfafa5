//! Drawing codes from a weighted family and averaging their performance.
//!
//!     cargo run --example derandomization

use avwc::avc::CqFamily;
use avwc::cli::example_one;
use avwc::qmath::{DensityOp, SimplexDist};
use avwc::sim::{basis_decoders, derandomize_experiment, expected_error_under_tau, Code, JammerSweep};

fn main() -> avwc::Result<()> {
    let ch = example_one();
    let family = vec![
        Code::deterministic(1, 2, &[0, 1], basis_decoders(2, 2, &[0, 1])?)?,
        Code::deterministic(1, 2, &[1, 0], basis_decoders(2, 2, &[0, 1])?)?,
    ];
    let weights = SimplexDist::new(vec![0.7, 0.3])?;
    for k in [1, 10, 1000] {
        let r = derandomize_experiment(&family, &weights, &ch, k, 2024, &JammerSweep::exhaustive())?;
        println!("k={k:<5} max mean error {:.6}  max mean leakage {:.6}", r.max_mean_error, r.max_mean_leakage);
    }

    // a family whose uniform jammer mixture ignores the input: every code errs with 1 - 1/J
    let zero = DensityOp::basis(2, 0)?;
    let one = DensityOp::basis(2, 1)?;
    let mixable = CqFamily::from_states(vec![vec![zero.clone(), one.clone()], vec![one, zero]])?;
    let sigma = SimplexDist::uniform(2)?;
    for code in &family {
        println!("expected error under the symmetrizing jammer: {:.9}", expected_error_under_tau(code, &mixable, &sigma)?);
    }
    match expected_error_under_tau(&family[0], ch.legal(), &sigma) {
        Err(e) => println!("example1 legal family: {e}"),
        Ok(v) => println!("example1 legal family: {v}"),
    }
    Ok(())
}
