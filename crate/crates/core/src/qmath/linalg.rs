use nalgebra::SymmetricEigen;

use super::{CMatrix, C64};

fn is_diagonal(m: &CMatrix) -> bool {
    let n = m.nrows();
    for j in 0..n {
        for i in 0..n {
            if i != j && m[(i, j)] != C64::new(0.0, 0.0) {
                return false;
            }
        }
    }
    true
}

/// Eigenvalues of a Hermitian matrix in ascending order.
///
/// Exactly diagonal inputs skip the decomposition.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let mut vals: Vec<f64> = if is_diagonal(m) {
        (0..m.nrows()).map(|i| m[(i, i)].re).collect()
    } else {
        SymmetricEigen::new(m.clone()).eigenvalues.iter().copied().collect()
    };
    vals.sort_by(f64::total_cmp);
    vals
}

/// Eigenvalues and unitary eigenvector matrix (columns) of a Hermitian matrix.
pub fn hermitian_eigen(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    if is_diagonal(m) {
        let n = m.nrows();
        return (
            (0..n).map(|i| m[(i, i)].re).collect(),
            CMatrix::identity(n, n),
        );
    }
    let eig = SymmetricEigen::new(m.clone());
    (eig.eigenvalues.iter().copied().collect(), eig.eigenvectors)
}

/// Largest elementwise complex modulus of `a - b`.
pub(crate) fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// `Re tr(a b)` without forming the product.
pub(crate) fn trace_product(a: &CMatrix, b: &CMatrix) -> f64 {
    let n = a.nrows();
    let mut acc = 0.0;
    for i in 0..n {
        for k in 0..n {
            acc += (a[(i, k)] * b[(k, i)]).re;
        }
    }
    acc
}
