use rand::Rng;

use super::state::{DensityOp, SimplexDist};
use super::{CMatrix, C64};

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    // Box-Muller
    let u1: f64 = rng.random::<f64>().max(f64::MIN_POSITIVE);
    let u2: f64 = rng.random();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

/// Random density operator `G G^dagger / tr(G G^dagger)` from a `dim x rank`
/// complex Gaussian matrix `G`.
pub fn random_density<R: Rng + ?Sized>(dim: usize, rank: usize, rng: &mut R) -> DensityOp {
    let rank = rank.clamp(1, dim);
    let g = CMatrix::from_fn(dim, rank, |_, _| C64::new(gaussian(rng), gaussian(rng)));
    let m = &g * g.adjoint();
    let tr = m.trace().re;
    let m = m.unscale(tr);
    DensityOp::validated((&m + m.adjoint()).unscale(2.0), "random state")
        .expect("Wishart sample is a valid state")
}

/// Uniform (flat Dirichlet) sample from the probability simplex.
pub fn random_distribution<R: Rng + ?Sized>(n: usize, rng: &mut R) -> SimplexDist {
    let w: Vec<f64> = (0..n)
        .map(|_| -rng.random::<f64>().max(f64::MIN_POSITIVE).ln())
        .collect();
    let total: f64 = w.iter().sum();
    SimplexDist::from_trusted(w.into_iter().map(|x| x / total).collect())
}
