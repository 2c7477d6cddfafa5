//! Shared generators for the integration suites.
#![allow(dead_code)]

use avwc::avc::CqFamily;
use avwc::qmath::{hermitian_eigen, random_density, CMatrix, DensityOp, C64};
use avwc::sim::Code;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_state(rng: &mut ChaCha8Rng, dim: usize) -> DensityOp {
    let rank = rng.random_range(1..=dim);
    random_density(dim, rank, rng)
}

/// `states[t][a]` drawn independently.
pub fn random_family(rng: &mut ChaCha8Rng, num_states: usize, alphabet: usize, dim: usize) -> CqFamily {
    let states = (0..num_states)
        .map(|_| (0..alphabet).map(|_| random_state(rng, dim)).collect())
        .collect();
    CqFamily::from_states(states).unwrap()
}

pub fn mix(a: &DensityOp, b: &DensityOp, w: f64) -> DensityOp {
    DensityOp::new(a.matrix().scale(w) + b.matrix().scale(1.0 - w)).unwrap()
}

/// Two-symbol, two-state family that is symmetrizable by construction with
/// `tau(.|0) = (alpha, 1 - alpha)` and `tau(.|1) = (beta, 1 - beta)`, `beta <= alpha < 1`.
pub fn symmetrizable_family(rng: &mut ChaCha8Rng, dim: usize) -> (CqFamily, [f64; 2]) {
    let alpha: f64 = rng.random_range(0.05..0.95);
    let beta: f64 = rng.random_range(0.0..alpha);
    let r = random_state(rng, dim);
    let s = random_state(rng, dim);
    // W_1(0) = W_1(1) = r and W_2(1) = s; W_2(0) is chosen so that
    // alpha W_1(1) + (1 - alpha) W_2(1) = beta W_1(0) + (1 - beta) W_2(0)
    let w2_0 = DensityOp::new((r.matrix().scale(alpha - beta) + s.matrix().scale(1.0 - alpha)).unscale(1.0 - beta)).unwrap();
    let family = CqFamily::from_states(vec![vec![r.clone(), r], vec![w2_0, s]]).unwrap();
    (family, [alpha, beta])
}

/// Random stochastic matrix with `rows` rows over `cols` columns.
pub fn random_encoder(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Vec<Vec<f64>> {
    (0..rows)
        .map(|_| {
            let w: Vec<f64> = (0..cols).map(|_| rng.random::<f64>().powi(3)).collect();
            let s: f64 = w.iter().sum();
            w.into_iter().map(|x| x / s).collect()
        })
        .collect()
}

/// Random POVM `S^{-1/2} G_j S^{-1/2}` with `S = sum_j G_j` for random
/// full-rank `G_j`, so that `S` is invertible.
pub fn random_povm(rng: &mut ChaCha8Rng, messages: usize, dim: usize) -> Vec<CMatrix> {
    let gs: Vec<CMatrix> = (0..messages)
        .map(|_| random_density(dim, dim, rng).into_matrix())
        .collect();
    let s = gs.iter().fold(CMatrix::zeros(dim, dim), |acc, g| acc + g);
    let (vals, vecs) = hermitian_eigen(&s);
    let inv_sqrt = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        dim,
        vals.iter().map(|&l| C64::new(1.0 / l.sqrt(), 0.0)),
    ));
    let t = &vecs * inv_sqrt * vecs.adjoint();
    gs.iter()
        .map(|g| {
            let d = &t * g * &t;
            (&d + d.adjoint()).unscale(2.0)
        })
        .collect()
}

pub fn random_code(rng: &mut ChaCha8Rng, n: usize, alphabet: usize, dim: usize, messages: usize) -> Code {
    let words = alphabet.pow(n as u32);
    Code::new(n, random_encoder(rng, messages, words), random_povm(rng, messages, dim.pow(n as u32))).unwrap()
}

/// Distinct codeword indices over `0..words`.
pub fn distinct_codewords(rng: &mut ChaCha8Rng, messages: usize, words: usize) -> Vec<usize> {
    let mut all: Vec<usize> = (0..words).collect();
    for i in 0..messages {
        let j = rng.random_range(i..words);
        all.swap(i, j);
    }
    all.truncate(messages);
    all
}

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}
