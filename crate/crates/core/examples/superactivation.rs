//! Two channels with zero deterministic secrecy bound whose product is positive.
//!
//!     cargo run --release --example superactivation

use avwc::avc::product_avwc;
use avwc::bounds::{dichotomy_report, BoundOptions};
use avwc::cli::{example_one, example_two};

fn main() -> avwc::Result<()> {
    let opts = BoundOptions::default();
    let (a, b) = (example_one(), example_two());
    let prod = product_avwc(&a, &b, &opts.limits)?;
    println!("{:<20} {:>13} {:>12} {:>14}", "channel", "symmetrizable", "random lb", "deterministic");
    for ch in [&a, &b, &prod] {
        let d = dichotomy_report(ch, &opts)?;
        println!(
            "{:<20} {:>13} {:>12.9} {:>14.9}",
            ch.name(),
            d.symmetrizable,
            d.random_lb.value,
            d.deterministic_secrecy_lb
        );
    }
    Ok(())
}
