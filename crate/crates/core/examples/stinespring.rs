//! Receiver and environment outputs of a channel given by Kraus operators.
//!
//!     cargo run --example stinespring
//!
//! The environment output is what a wiretapper holding the Stinespring
//! ancilla sees: `E[i][j] = tr(K_i rho K_j^dag)`.

use avwc::qmath::{complementary_outputs, von_neumann_entropy, CMatrix, DensityOp, C64};

fn dephasing(p: f64) -> Vec<CMatrix> {
    let k0 = CMatrix::identity(2, 2).scale((1.0 - p).sqrt());
    let mut k1 = CMatrix::zeros(2, 2);
    k1[(0, 0)] = C64::new(p.sqrt(), 0.0);
    k1[(1, 1)] = C64::new(-p.sqrt(), 0.0);
    vec![k0, k1]
}

fn main() -> avwc::Result<()> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let plus = DensityOp::pure(&[C64::new(h, 0.0), C64::new(h, 0.0)])?;
    println!("{:>5} {:>12} {:>12}", "p", "S(B)", "S(E)");
    for p in [0.0, 0.1, 0.25, 0.5] {
        let (b, e) = complementary_outputs(&dephasing(p), &plus)?;
        // pure input: receiver and environment have equal entropy
        println!(
            "{p:>5} {:>12.9} {:>12.9}",
            von_neumann_entropy(&b, 2.0)?,
            von_neumann_entropy(&e, 2.0)?
        );
    }

    let mut bad = dephasing(0.2);
    bad[0] = bad[0].scale(0.9);
    match complementary_outputs(&bad, &plus) {
        Err(e) => println!("scaled Kraus set rejected: {e}"),
        Ok(_) => unreachable!("not trace preserving"),
    }
    Ok(())
}
