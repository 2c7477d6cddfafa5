//! Randomness-assisted secrecy lower bound and its inner minimisation.
//!
//!     cargo run --release --example secrecy_bound
//!
//! Prints `min_Q chi` along the jammer segment of the first example, the
//! analytic derivative against a finite difference, and the full bound.

use avwc::bounds::{chi_derivative, chi_gradient_check, min_chi_over_jammer, secrecy_lower_bound, BoundOptions};
use avwc::cli::example_one;
use avwc::qmath::SimplexDist;

fn main() -> avwc::Result<()> {
    let ch = example_one();
    let p = SimplexDist::uniform(2)?;

    println!("{:>5} {:>14}", "q", "dchi/dq");
    for q in [0.1, 0.3, 0.5, 0.7, 0.9] {
        println!("{q:>5} {:>14.9}", chi_derivative(ch.legal(), &p, q, 2.0)?);
    }
    println!("gradient check at q=0.3: {:.3e}", chi_gradient_check(ch.legal(), &p, 0.3, 1e-4)?);

    let opts = BoundOptions::default();
    let (q, v) = min_chi_over_jammer(ch.legal(), &p, &opts)?;
    println!("min_Q chi(P uniform) = {v:.9} at Q = {:?}", q.probs());

    let report = secrecy_lower_bound(&ch, &opts)?;
    println!("bound      = {:.9}", report.value);
    println!("legal term = {:.9}", report.legal_term);
    println!("leakage    = {:.9}", report.leakage_term);
    println!("P*         = {:?}", report.argmax_p);
    println!("Q*         = {:?}", report.argmin_q);
    println!("{}", report.grid_spec);
    Ok(())
}
