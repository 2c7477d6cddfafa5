//! Write the bundled channels and the toy codes as JSON documents.
//!
//!     cargo run --example channel_files -- [DIR]
//!
//! DIR defaults to the crate's `data/` directory. Every file is re-loaded
//! after writing to confirm the round trip.

use std::fs;
use std::path::PathBuf;

use avwc::avc::Avwc;
use avwc::cli::bundled_examples;
use avwc::sim::{basis_decoders, load_code, Code};

fn toy_codes() -> avwc::Result<Vec<(&'static str, Code)>> {
    Ok(vec![
        // n=1, both symbols, measured in the computational basis
        ("code_basis_n1", Code::deterministic(1, 2, &[0, 1], basis_decoders(2, 2, &[0, 1])?)?),
        // n=2 repetition: 00 and 11, decoded on the first letter
        ("code_rep_n2", Code::deterministic(2, 2, &[0, 3], basis_decoders(4, 2, &[0, 0, 1, 1])?)?),
        // the same code with the message labels swapped
        ("code_rep_n2_swapped", Code::deterministic(2, 2, &[3, 0], basis_decoders(4, 2, &[1, 1, 0, 0])?)?),
    ])
}

fn main() -> avwc::Result<()> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data"));
    fs::create_dir_all(&dir)?;

    for (name, ch) in bundled_examples() {
        let path = dir.join(format!("{name}.json"));
        fs::write(&path, ch.to_document() + "\n")?;
        let back = Avwc::load_file(&path)?;
        assert_eq!(back.theta(), ch.theta());
        println!("{}  |A|={} |theta|={}", path.display(), ch.alphabet().len(), ch.theta().len());
    }
    for (name, code) in toy_codes()? {
        let path = dir.join(format!("{name}.json"));
        fs::write(&path, code.to_document() + "\n")?;
        assert_eq!(load_code(&fs::read_to_string(&path)?)?, code);
        println!("{}  n={} J={}", path.display(), code.n(), code.messages());
    }
    Ok(())
}
