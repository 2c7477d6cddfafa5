use super::linalg::{hermitian_eigen, hermitian_eigenvalues};
use super::state::{DensityOp, Ensemble};
use super::{check_base, CMatrix, C64, EIGEN_CLAMP};
use crate::{Error, Result};

/// `-sum l ln l / ln_base`, with eigenvalues below [`EIGEN_CLAMP`] taken as 0.
pub(crate) fn entropy_from_spectrum(spectrum: &[f64], ln_base: f64) -> f64 {
    let s: f64 = spectrum
        .iter()
        .filter(|&&l| l > EIGEN_CLAMP)
        .map(|&l| -l * l.ln())
        .sum();
    (s / ln_base).max(0.0)
}

pub(crate) fn entropy_of_matrix(m: &CMatrix, ln_base: f64) -> f64 {
    entropy_from_spectrum(&hermitian_eigenvalues(m), ln_base)
}

/// Holevo quantity of raw matrices; no validation.
pub(crate) fn chi_of_matrices(probs: &[f64], states: &[&CMatrix], ln_base: f64) -> f64 {
    let d = states[0].nrows();
    let mut avg = CMatrix::zeros(d, d);
    let mut mixed = 0.0;
    for (&p, s) in probs.iter().zip(states) {
        if p == 0.0 {
            continue;
        }
        avg += s.scale(p);
        mixed += p * entropy_of_matrix(s, ln_base);
    }
    (entropy_of_matrix(&avg, ln_base) - mixed).max(0.0)
}

/// Von Neumann entropy `S(rho) = -tr(rho log rho)` in the given base.
pub fn von_neumann_entropy(rho: &DensityOp, base: f64) -> Result<f64> {
    let ln_base = check_base(base)?;
    Ok(entropy_from_spectrum(&rho.eigenvalues(), ln_base))
}

/// Holevo quantity `S(sum p_x rho_x) - sum p_x S(rho_x)`.
pub fn holevo_chi(ens: &Ensemble, base: f64) -> Result<f64> {
    let ln_base = check_base(base)?;
    let mats: Vec<&CMatrix> = ens.states().iter().map(DensityOp::matrix).collect();
    Ok(chi_of_matrices(ens.dist().probs(), &mats, ln_base))
}

fn same_dim(rho: &DensityOp, sigma: &DensityOp) -> Result<()> {
    if rho.dim() != sigma.dim() {
        return Err(Error::Shape(format!(
            "states have dims {} and {}",
            rho.dim(),
            sigma.dim()
        )));
    }
    Ok(())
}

/// Square root with eigenvalue noise below the clamp removed; the root
/// would otherwise amplify `1e-16` noise to `1e-8`.
fn clamped_sqrt(l: f64) -> f64 {
    if l > EIGEN_CLAMP {
        l.sqrt()
    } else {
        0.0
    }
}

/// Fidelity `F = ||sqrt(rho) sqrt(sigma)||_1^2`, computed as
/// `(tr sqrt(sqrt(rho) sigma sqrt(rho)))^2`.
pub fn fidelity(rho: &DensityOp, sigma: &DensityOp) -> Result<f64> {
    same_dim(rho, sigma)?;
    let (vals, vecs) = hermitian_eigen(rho.matrix());
    let n = rho.dim();
    let mut sqrt_diag = CMatrix::zeros(n, n);
    for (i, &l) in vals.iter().enumerate() {
        sqrt_diag[(i, i)] = C64::new(clamped_sqrt(l), 0.0);
    }
    let sqrt_rho = &vecs * sqrt_diag * vecs.adjoint();
    let inner = &sqrt_rho * sigma.matrix() * &sqrt_rho;
    let inner = (&inner + inner.adjoint()).unscale(2.0);
    let root_sum: f64 = hermitian_eigenvalues(&inner)
        .into_iter()
        .map(clamped_sqrt)
        .sum();
    Ok((root_sum * root_sum).clamp(0.0, 1.0))
}

/// Trace distance `(1/2) ||rho - sigma||_1`.
pub fn trace_distance(rho: &DensityOp, sigma: &DensityOp) -> Result<f64> {
    same_dim(rho, sigma)?;
    let diff = rho.matrix() - sigma.matrix();
    let half: f64 = hermitian_eigenvalues(&diff).iter().map(|l| l.abs()).sum::<f64>() / 2.0;
    Ok(half.clamp(0.0, 1.0))
}
