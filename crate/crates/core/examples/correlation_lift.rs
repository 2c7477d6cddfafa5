//! Correlated side information: lifting a channel and evaluating assisted codes.
//!
//!     cargo run --example correlation_lift

use avwc::avc::{lift_correlation, mutual_information, Correlation};
use avwc::cli::example_two;
use avwc::sim::{basis_decoders, corr_code_eval, Code, CorrCode};
use avwc::Limits;

fn main() -> avwc::Result<()> {
    let ch = example_two();
    let corr = Correlation::from_table(vec![vec![0.4, 0.1], vec![0.1, 0.4]])?;
    println!("I(X;Y) = {:.9} bits", mutual_information(&corr, 2.0)?);

    let lifted = lift_correlation(ch.legal(), &corr, &Limits::default())?;
    println!(
        "lifted family: {} functions X -> A, output dimension {}",
        lifted.family().alphabet_size(),
        lifted.family().out_dim()
    );
    for (f, values) in lifted.functions().iter().enumerate() {
        println!("  {} = {values:?}", lifted.family().alphabet()[f]);
    }

    // n=1: the sender flips its codewords when x=1, the receiver undoes it when y=1
    let direct = Code::deterministic(1, 2, &[0, 1], basis_decoders(2, 2, &[0, 1])?)?;
    let flipped = Code::deterministic(1, 2, &[1, 0], basis_decoders(2, 2, &[1, 0])?)?;
    let code = CorrCode::new(
        1,
        2,
        2,
        vec![direct.encoder().to_vec(), flipped.encoder().to_vec()],
        vec![direct.decoders().to_vec(), flipped.decoders().to_vec()],
    )?;
    for t in 0..2 {
        let ev = corr_code_eval(&code, &ch, &corr, &[t])?;
        println!("t={t}: avg error {:.9}, avg leakage {:.9}", ev.avg_error, ev.avg_leakage);
    }
    Ok(())
}
