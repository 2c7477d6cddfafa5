//! Numerical toolkit for arbitrarily varying classical-quantum wiretap channels.
//!
//! The crate is organised around the objects a jammed wiretap scenario needs:
//!
//! - [`qmath`]: density operators, von Neumann entropy, Holevo quantity,
//!   fidelity, trace distance, tensor products, partial traces and
//!   complementary (environment) outputs of Kraus channels.
//! - [`avc`]: classical-quantum channels, jammer-indexed families, wiretap
//!   pairs, jammer mixtures, n-letter outputs, product channels and the
//!   correlation-lifted channel. Also the JSON channel and correlation files.
//! - [`sym`]: symmetrizability as a linear feasibility problem, decided by a
//!   small dense simplex solver, returning a witness or the optimal residual.
//! - [`bounds`]: the randomness-assisted secrecy lower bound
//!   `max_P (min_Q chi(P, U^Q) - leakage(P))` and the dichotomy report.
//! - [`sim`]: finite-blocklength codes, error and leakage under worst-case
//!   jammers, prefix composition, the symmetrizable error identity,
//!   correlation-assisted codes and the derandomization experiment.
//! - [`cli`]: the `avwc` command line driver and the bundled example channels.
//!
//! Runnable walkthroughs of each capability live under `examples/`.

pub mod avc;
pub mod bounds;
pub mod cli;
mod error;
pub mod limits;
pub mod qmath;
pub mod sim;
pub mod sym;

pub use error::{Error, Result};
pub use limits::Limits;
