use super::linalg::max_abs_diff;
use super::state::DensityOp;
use super::{CMatrix, C64};
use crate::{Error, Limits, Result};

/// Which factor of a bipartite system survives a partial trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Keep {
    First,
    Second,
}

/// Kronecker product with the default dimension cap.
pub fn tensor(a: &DensityOp, b: &DensityOp) -> Result<DensityOp> {
    tensor_with_cap(a, b, Limits::default().max_dim)
}

pub fn tensor_with_cap(a: &DensityOp, b: &DensityOp, max_dim: usize) -> Result<DensityOp> {
    let dim = a.dim() * b.dim();
    if dim > max_dim {
        return Err(Error::capacity("tensor dimension", dim, max_dim));
    }
    Ok(DensityOp::from_trusted(a.matrix().kronecker(b.matrix())))
}

/// Reduced state of one factor of a `d1 x d2` bipartite state.
pub fn partial_trace(rho: &DensityOp, dims: (usize, usize), keep: Keep) -> Result<DensityOp> {
    let (d1, d2) = dims;
    if d1 == 0 || d2 == 0 || d1 * d2 != rho.dim() {
        return Err(Error::Shape(format!(
            "cannot factor dim {} as {d1} x {d2}",
            rho.dim()
        )));
    }
    let m = rho.matrix();
    let out = match keep {
        Keep::First => CMatrix::from_fn(d1, d1, |i, j| {
            (0..d2).map(|k| m[(i * d2 + k, j * d2 + k)]).sum::<C64>()
        }),
        Keep::Second => CMatrix::from_fn(d2, d2, |k, l| {
            (0..d1).map(|i| m[(i * d2 + k, i * d2 + l)]).sum::<C64>()
        }),
    };
    Ok(DensityOp::from_trusted(out))
}

/// Receiver and environment outputs of the channel with Kraus operators `kraus`.
///
/// The receiver gets `sum_i K_i rho K_i^dagger`; the environment of the
/// Stinespring isometry `V = sum_i K_i (x) |i>` gets the matrix with entries
/// `tr(K_i rho K_j^dagger)`.
pub fn complementary_outputs(kraus: &[CMatrix], rho: &DensityOp) -> Result<(DensityOp, DensityOp)> {
    let first = kraus
        .first()
        .ok_or_else(|| Error::Shape("empty Kraus list".into()))?;
    let (d_out, d_in) = first.shape();
    if d_in != rho.dim() {
        return Err(Error::Shape(format!(
            "Kraus operators act on dim {d_in} but state has dim {}",
            rho.dim()
        )));
    }
    if let Some(bad) = kraus.iter().position(|k| k.shape() != (d_out, d_in)) {
        return Err(Error::Shape(format!(
            "Kraus operator {bad} has shape {:?}, expected {:?}",
            kraus[bad].shape(),
            (d_out, d_in)
        )));
    }

    let mut completeness = CMatrix::zeros(d_in, d_in);
    for k in kraus {
        completeness += k.adjoint() * k;
    }
    let residual = max_abs_diff(&completeness, &CMatrix::identity(d_in, d_in));
    if residual > 1e-9 {
        return Err(Error::ChannelValidity { residual });
    }

    let images: Vec<CMatrix> = kraus.iter().map(|k| k * rho.matrix()).collect();
    let mut receiver = CMatrix::zeros(d_out, d_out);
    for (img, k) in images.iter().zip(kraus) {
        receiver += img * k.adjoint();
    }
    let r = kraus.len();
    let env = CMatrix::from_fn(r, r, |i, j| {
        // tr(K_i rho K_j^dagger) = sum_{a,b} (K_i rho)[a,b] conj(K_j[a,b])
        images[i]
            .iter()
            .zip(kraus[j].iter())
            .map(|(x, y)| x * y.conj())
            .sum::<C64>()
    });
    Ok((
        DensityOp::validated(receiver, "receiver output")?,
        DensityOp::validated(env, "environment output")?,
    ))
}
