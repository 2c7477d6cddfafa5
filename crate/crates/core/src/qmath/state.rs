use super::linalg::hermitian_eigenvalues;
use super::{CMatrix, C64, HERMITIAN_TOL, PSD_TOL, SIMPLEX_TOL, TRACE_TOL};
use crate::{Error, Result};

/// A density operator: Hermitian, positive semidefinite, unit trace.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOp {
    mat: CMatrix,
}

impl DensityOp {
    pub fn new(mat: CMatrix) -> Result<Self> {
        Self::validated(mat, "state")
    }

    /// Validate `mat`, naming it `what` in any error.
    ///
    /// Asymmetry up to [`HERMITIAN_TOL`] is removed by replacing `M` with
    /// `(M + M^dagger) / 2`.
    pub fn validated(mut mat: CMatrix, what: &str) -> Result<Self> {
        let n = mat.nrows();
        if n == 0 || mat.ncols() != n {
            return Err(Error::Shape(format!(
                "{what}: expected a nonempty square matrix, got {}x{}",
                mat.nrows(),
                mat.ncols()
            )));
        }
        if mat.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::invalid_state(what, "non-finite entry", f64::INFINITY));
        }
        let mut asym = 0.0f64;
        for i in 0..n {
            for j in i..n {
                asym = asym.max((mat[(i, j)] - mat[(j, i)].conj()).norm());
            }
        }
        if asym > HERMITIAN_TOL {
            return Err(Error::invalid_state(what, "not Hermitian", asym));
        }
        let adj = mat.adjoint();
        mat = (&mat + adj).unscale(2.0);

        let tr = mat.trace().re;
        if (tr - 1.0).abs() > TRACE_TOL {
            return Err(Error::invalid_state(
                what,
                format!("trace {tr} differs from 1"),
                (tr - 1.0).abs(),
            ));
        }
        let min_eig = hermitian_eigenvalues(&mat)[0];
        if min_eig < -PSD_TOL {
            return Err(Error::invalid_state(
                what,
                format!("negative eigenvalue {min_eig}"),
                -min_eig,
            ));
        }
        Ok(DensityOp { mat })
    }

    /// Skip validation. Callers guarantee the invariants up to roundoff.
    pub(crate) fn from_trusted(mat: CMatrix) -> Self {
        DensityOp { mat }
    }

    /// Diagonal state `diag(probs)`.
    pub fn diagonal(probs: &[f64]) -> Result<Self> {
        Self::new(super::diag_matrix(probs))
    }

    /// Computational basis state `|k><k|`.
    pub fn basis(dim: usize, k: usize) -> Result<Self> {
        if k >= dim {
            return Err(Error::Shape(format!("basis index {k} out of range for dim {dim}")));
        }
        Ok(DensityOp {
            mat: super::basis_projector(dim, k),
        })
    }

    /// `I / dim`.
    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Shape("dimension must be positive".into()));
        }
        Ok(DensityOp {
            mat: CMatrix::identity(dim, dim).unscale(dim as f64),
        })
    }

    /// Pure state `|psi><psi|` of a (not necessarily normalised) vector.
    pub fn pure(psi: &[C64]) -> Result<Self> {
        let norm2: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
        if psi.is_empty() || norm2 == 0.0 {
            return Err(Error::Shape("pure state needs a nonzero vector".into()));
        }
        let v = nalgebra::DVector::from_iterator(psi.len(), psi.iter().map(|z| z / norm2.sqrt()));
        Self::new(&v * v.adjoint())
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> CMatrix {
        self.mat
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.mat)
    }
}

/// Finite probability vector.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplexDist {
    probs: Vec<f64>,
}

impl SimplexDist {
    /// Entries in `[-1e-12, 0)` are clamped to zero; anything more negative is rejected.
    pub fn new(mut probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::Shape("distribution needs at least one entry".into()));
        }
        for (i, p) in probs.iter_mut().enumerate() {
            if !p.is_finite() || *p < -super::EIGEN_CLAMP {
                return Err(Error::invalid_state(
                    format!("probability[{i}]"),
                    format!("entry {p} is negative or non-finite"),
                    p.abs(),
                ));
            }
            if *p < 0.0 {
                *p = 0.0;
            }
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > SIMPLEX_TOL {
            return Err(Error::invalid_state(
                "distribution",
                format!("sums to {total}"),
                (total - 1.0).abs(),
            ));
        }
        Ok(SimplexDist { probs })
    }

    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Shape("distribution needs at least one entry".into()));
        }
        Ok(SimplexDist {
            probs: vec![1.0 / n as f64; n],
        })
    }

    pub fn point_mass(n: usize, k: usize) -> Result<Self> {
        if k >= n {
            return Err(Error::Shape(format!("point mass index {k} out of range {n}")));
        }
        let mut probs = vec![0.0; n];
        probs[k] = 1.0;
        Ok(SimplexDist { probs })
    }

    pub(crate) fn from_trusted(probs: Vec<f64>) -> Self {
        SimplexDist { probs }
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn support_size(&self) -> usize {
        self.probs.len()
    }

    /// Shannon entropy in the given base.
    pub fn entropy(&self, base: f64) -> f64 {
        let ln_base = base.ln();
        -self
            .probs
            .iter()
            .filter(|&&p| p > 0.0)
            .map(|&p| p * p.ln())
            .sum::<f64>()
            / ln_base
    }
}

/// A weighted family of states of equal dimension.
#[derive(Debug, Clone)]
pub struct Ensemble {
    dist: SimplexDist,
    states: Vec<DensityOp>,
}

impl Ensemble {
    pub fn new(dist: SimplexDist, states: Vec<DensityOp>) -> Result<Self> {
        if dist.support_size() != states.len() {
            return Err(Error::Shape(format!(
                "ensemble has {} weights but {} states",
                dist.support_size(),
                states.len()
            )));
        }
        let d = states[0].dim();
        if let Some(bad) = states.iter().position(|s| s.dim() != d) {
            return Err(Error::Shape(format!(
                "ensemble state {bad} has dim {} but state 0 has dim {d}",
                states[bad].dim()
            )));
        }
        Ok(Ensemble { dist, states })
    }

    pub fn dist(&self) -> &SimplexDist {
        &self.dist
    }

    pub fn states(&self) -> &[DensityOp] {
        &self.states
    }

    /// `sum_x p(x) rho_x`.
    pub fn average(&self) -> DensityOp {
        let d = self.states[0].dim();
        let mut acc = CMatrix::zeros(d, d);
        for (p, s) in self.dist.probs().iter().zip(&self.states) {
            acc += s.matrix().scale(*p);
        }
        DensityOp::from_trusted(acc)
    }
}
