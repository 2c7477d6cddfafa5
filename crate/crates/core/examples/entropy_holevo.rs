//! Entropies, Holevo quantity, fidelity and trace distance on small states.
//!
//!     cargo run --example entropy_holevo

use avwc::qmath::{
    fidelity, holevo_chi, partial_trace, tensor, trace_distance, von_neumann_entropy, DensityOp, Ensemble, Keep,
    SimplexDist, C64,
};

fn main() -> avwc::Result<()> {
    let zero = DensityOp::basis(2, 0)?;
    let mixed = DensityOp::maximally_mixed(2)?;
    let skewed = DensityOp::diagonal(&[0.75, 0.25])?;
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let plus = DensityOp::pure(&[C64::new(h, 0.0), C64::new(h, 0.0)])?;

    println!("S(|0><0|)        = {:.9}", von_neumann_entropy(&zero, 2.0)?);
    println!("S(I/2)           = {:.9}", von_neumann_entropy(&mixed, 2.0)?);
    println!("S(diag(3/4,1/4)) = {:.9}", von_neumann_entropy(&skewed, 2.0)?);
    println!("S(I/2) in nats   = {:.9}", von_neumann_entropy(&mixed, std::f64::consts::E)?);

    // {|0><0|, I/2} with equal weights: the averaged mixture of Example 1 at q = 1/2
    let ens = Ensemble::new(SimplexDist::uniform(2)?, vec![DensityOp::diagonal(&[0.75, 0.25])?, DensityOp::diagonal(&[0.25, 0.75])?])?;
    println!("chi(diag(3/4,1/4), diag(1/4,3/4)) = {:.9}", holevo_chi(&ens, 2.0)?);

    println!("F(|0>, |+>)  = {:.9}", fidelity(&zero, &plus)?);
    println!("T(|0>, |+>)  = {:.9}", trace_distance(&zero, &plus)?);
    println!("T(|0>, I/2)  = {:.9}", trace_distance(&zero, &mixed)?);

    // product states: entropy is additive, partial trace recovers the factors
    let joint = tensor(&skewed, &plus)?;
    println!(
        "S(rho x sigma) = {:.9}  S(rho) + S(sigma) = {:.9}",
        von_neumann_entropy(&joint, 2.0)?,
        von_neumann_entropy(&skewed, 2.0)? + von_neumann_entropy(&plus, 2.0)?
    );
    let back = partial_trace(&joint, (2, 2), Keep::First)?;
    println!("tr_B(rho x sigma) recovers rho: T = {:.3e}", trace_distance(&back, &skewed)?);
    Ok(())
}
