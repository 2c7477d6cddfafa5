use crate::avc::{product_avwc, Avwc, CqFamily};
use crate::qmath::DensityOp;
use crate::Limits;

fn diag(p0: f64) -> DensityOp {
    DensityOp::diagonal(&[p0, 1.0 - p0]).expect("diagonal probabilities")
}

fn family(states: [[f64; 2]; 2]) -> CqFamily {
    // states[t][a] is the weight on |0><0| of W_t(a)
    CqFamily::from_states(states.iter().map(|row| row.iter().map(|&p| diag(p)).collect()).collect())
        .expect("two-symbol qubit family")
}

/// The first example: a symmetrizable legal family with a useless wiretapper.
///
/// `W_1(0) = |0><0|`, `W_1(1) = I/2`, `W_2(0) = I/2`, `W_2(1) = |1><1|`,
/// and every `V_t(a) = |0><0|`.
pub fn example_one() -> Avwc {
    Avwc::new(
        "example1",
        family([[1.0, 0.5], [0.5, 0.0]]),
        family([[1.0, 1.0], [1.0, 1.0]]),
    )
    .expect("example one is well formed")
}

/// The second example: a jammer-independent noisy legal channel and a
/// wiretapper that sees the input perfectly.
///
/// `W'_t(0) = 3/4|0><0| + 1/4|1><1|`, `W'_t(1) = 1/4|0><0| + 3/4|1><1|`,
/// `V'_t(a) = |a><a|` for both jammer states.
pub fn example_two() -> Avwc {
    Avwc::new(
        "example2",
        family([[0.75, 0.25], [0.75, 0.25]]),
        family([[1.0, 0.0], [1.0, 0.0]]),
    )
    .expect("example two is well formed")
}

/// Both examples and their product, in that order.
pub fn bundled_examples() -> Vec<(String, Avwc)> {
    let one = example_one();
    let two = example_two();
    let prod = product_avwc(&one, &two, &Limits::default()).expect("4-dimensional product");
    vec![
        ("example1".to_string(), one),
        ("example2".to_string(), two),
        ("product".to_string(), prod),
    ]
}
