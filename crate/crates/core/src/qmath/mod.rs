//! Finite-dimensional density-operator mathematics.
//!
//! Every [`DensityOp`] is validated once at construction (Hermitian, unit
//! trace, positive semidefinite); the operations here are pure functions of
//! validated inputs. Entropies take an explicit logarithm base; the crate
//! uses base 2 everywhere a default is needed.

mod entropy;
mod linalg;
mod ops;
mod random;
mod state;

pub use entropy::{fidelity, holevo_chi, trace_distance, von_neumann_entropy};
pub use linalg::{hermitian_eigen, hermitian_eigenvalues};
pub use ops::{complementary_outputs, partial_trace, tensor, tensor_with_cap, Keep};
pub use random::{random_density, random_distribution};
pub use state::{DensityOp, Ensemble, SimplexDist};

pub(crate) use entropy::chi_of_matrices;
pub(crate) use linalg::{max_abs_diff, trace_product};

/// Complex scalar used throughout.
pub type C64 = nalgebra::Complex<f64>;
/// Dense complex matrix.
pub type CMatrix = nalgebra::DMatrix<C64>;

/// Tolerance on Hermiticity; smaller asymmetry is symmetrized away.
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Tolerance on `|tr - 1|`.
pub const TRACE_TOL: f64 = 1e-9;
/// Smallest admissible eigenvalue.
pub const PSD_TOL: f64 = 1e-9;
/// Eigenvalues below this are treated as exactly zero in entropies.
pub const EIGEN_CLAMP: f64 = 1e-12;
/// Tolerance on probability vectors summing to one.
pub const SIMPLEX_TOL: f64 = 1e-9;

/// `|0><0|`-style computational basis projector.
pub fn basis_projector(dim: usize, k: usize) -> CMatrix {
    let mut m = CMatrix::zeros(dim, dim);
    m[(k, k)] = C64::new(1.0, 0.0);
    m
}

/// Real diagonal matrix.
pub fn diag_matrix(diag: &[f64]) -> CMatrix {
    let n = diag.len();
    let mut m = CMatrix::zeros(n, n);
    for (i, &d) in diag.iter().enumerate() {
        m[(i, i)] = C64::new(d, 0.0);
    }
    m
}

/// Convert natural-log quantities into the requested base.
pub(crate) fn check_base(base: f64) -> crate::Result<f64> {
    if base.is_finite() && base > 1.0 {
        Ok(base.ln())
    } else {
        Err(crate::Error::InvalidArgument(format!(
            "logarithm base must be > 1, got {base}"
        )))
    }
}
