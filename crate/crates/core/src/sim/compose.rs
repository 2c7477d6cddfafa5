use serde::Serialize;

use super::code::Code;
use super::eval::{error_prob_family, leakage_family, JammerSweep};
use crate::avc::Avwc;
use crate::qmath::CMatrix;
use crate::{Error, Limits, Result};

/// Prefix composition: the outer code transmits which inner code is used.
///
/// Message `j` is encoded by picking `i` uniformly, sending outer codeword
/// `i` followed by inner code `i`'s encoding of `j`. The decoder is
/// `D_j = sum_i D_i^outer (x) D_{i,j}`.
pub fn compose_prefix(outer: &Code, inners: &[Code]) -> Result<Code> {
    compose_prefix_with(outer, inners, &Limits::default())
}

pub fn compose_prefix_with(outer: &Code, inners: &[Code], limits: &Limits) -> Result<Code> {
    let first = inners
        .first()
        .ok_or_else(|| Error::Shape("at least one inner code is required".into()))?;
    if outer.messages() != inners.len() {
        return Err(Error::Shape(format!(
            "outer code has {} messages for {} inner codes",
            outer.messages(),
            inners.len()
        )));
    }
    for (i, c) in inners.iter().enumerate() {
        if c.n() != first.n() || c.messages() != first.messages() || c.words() != first.words() || c.dim() != first.dim() {
            return Err(Error::Shape(format!("inner code {i} differs in shape from inner code 0")));
        }
    }
    let dim = outer.dim() * first.dim();
    if dim > limits.max_dim {
        return Err(Error::capacity("composed decoder dimension", dim, limits.max_dim));
    }
    let k = inners.len() as f64;
    let inner_words = first.words();
    let words = outer.words() * inner_words;
    let encoder: Vec<Vec<f64>> = (0..first.messages())
        .map(|j| {
            let mut row = vec![0.0; words];
            for (i, inner) in inners.iter().enumerate() {
                for (x, &ex) in outer.encoder()[i].iter().enumerate() {
                    if ex == 0.0 {
                        continue;
                    }
                    for (y, &ey) in inner.encoder()[j].iter().enumerate() {
                        row[x * inner_words + y] += ex * ey / k;
                    }
                }
            }
            row
        })
        .collect();
    let decoders: Vec<CMatrix> = (0..first.messages())
        .map(|j| {
            let mut acc = CMatrix::zeros(dim, dim);
            for (i, inner) in inners.iter().enumerate() {
                acc += outer.decoders()[i].kronecker(&inner.decoders()[j]);
            }
            acc
        })
        .collect();
    Code::new(outer.n() + first.n(), encoder, decoders)
}

/// One jammer sequence of a composition check.
#[derive(Debug, Clone, Serialize)]
pub struct CompositionRow {
    pub t_seq: Vec<usize>,
    /// Left-hand side: the composed code's error or leakage.
    pub composed: f64,
    /// Right-hand side of the inequality.
    pub bound: f64,
    /// `bound - composed`.
    pub slack: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CompositionReport {
    pub rows: Vec<CompositionRow>,
    pub min_slack: f64,
}

impl CompositionReport {
    fn from_rows(rows: Vec<CompositionRow>) -> Self {
        let min_slack = rows.iter().map(|r| r.slack).fold(f64::INFINITY, f64::min);
        CompositionReport { rows, min_slack }
    }
}

/// Error chain: `error(composed) <= error(outer, prefix) + mean_i error(inner_i, suffix)`.
pub fn composed_error_check(outer: &Code, inners: &[Code], channel: &Avwc, sweep: &JammerSweep) -> Result<CompositionReport> {
    let limits = Limits::default();
    let composed = compose_prefix(outer, inners)?;
    let mu = outer.n();
    let mut rows = Vec::new();
    for t in sweep.sequences(channel.theta().len(), composed.n())? {
        let (prefix, suffix) = t.split_at(mu);
        let lhs = error_prob_family(&composed, channel.legal(), &t, &limits)?;
        let outer_err = error_prob_family(outer, channel.legal(), prefix, &limits)?;
        let mut inner_err = 0.0;
        for c in inners {
            inner_err += error_prob_family(c, channel.legal(), suffix, &limits)?;
        }
        let bound = outer_err + inner_err / inners.len() as f64;
        rows.push(CompositionRow {
            t_seq: t,
            composed: lhs,
            bound,
            slack: bound - lhs,
        });
    }
    Ok(CompositionReport::from_rows(rows))
}

/// Leakage chain: `leakage(composed) <= mean_i leakage(inner_i) + (H(Y) - chi(Y; prefix))`
/// where `Y` is the uniform inner-code index and the prefix ensemble holds the
/// wiretapper's views of the outer codewords.
pub fn composed_leakage_check(outer: &Code, inners: &[Code], channel: &Avwc, sweep: &JammerSweep) -> Result<CompositionReport> {
    let limits = Limits::default();
    let composed = compose_prefix(outer, inners)?;
    let mu = outer.n();
    let k = inners.len();
    let mut rows = Vec::new();
    for t in sweep.sequences(channel.theta().len(), composed.n())? {
        let (prefix, suffix) = t.split_at(mu);
        let lhs = leakage_family(&composed, channel.wiretap(), &t, &limits)?;
        let mut inner_leak = 0.0;
        for c in inners {
            inner_leak += leakage_family(c, channel.wiretap(), suffix, &limits)?;
        }
        let prefix_chi = prefix_holevo(outer, channel, prefix, &limits)?;
        let bound = inner_leak / k as f64 + ((k as f64).log2() - prefix_chi);
        rows.push(CompositionRow {
            t_seq: t,
            composed: lhs,
            bound,
            slack: bound - lhs,
        });
    }
    Ok(CompositionReport::from_rows(rows))
}

/// `chi(Y_uni; {sum_x E_outer(x|i) V_{t^mu}(x)}_i)` in bits.
pub fn prefix_holevo(outer: &Code, channel: &Avwc, prefix: &[usize], limits: &Limits) -> Result<f64> {
    // the outer code's leakage is exactly this quantity
    leakage_family(outer, channel.wiretap(), prefix, limits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::basis_decoders;

    #[test]
    fn single_inner_with_empty_prefix_is_unchanged() {
        let inner = Code::deterministic(1, 2, &[0, 1], basis_decoders(2, 2, &[0, 1]).unwrap()).unwrap();
        let outer = Code::new(0, vec![vec![1.0]], vec![CMatrix::identity(1, 1)]).unwrap();
        let composed = compose_prefix(&outer, std::slice::from_ref(&inner)).unwrap();
        assert_eq!(composed, inner);
    }

    #[test]
    fn composition_shape_errors() {
        let inner = Code::deterministic(1, 2, &[0, 1], basis_decoders(2, 2, &[0, 1]).unwrap()).unwrap();
        let outer = Code::deterministic(1, 2, &[0, 1], basis_decoders(2, 2, &[0, 1]).unwrap()).unwrap();
        assert!(matches!(compose_prefix(&outer, std::slice::from_ref(&inner)), Err(Error::Shape(_))));
        let other = Code::deterministic(1, 2, &[0, 1, 1], basis_decoders(2, 3, &[0, 2]).unwrap()).unwrap();
        assert!(matches!(compose_prefix(&outer, &[inner, other]), Err(Error::Shape(_))));
    }

    #[test]
    fn composed_povm_is_complete() {
        let outer = Code::deterministic(1, 2, &[0, 1], basis_decoders(2, 2, &[0, 1]).unwrap()).unwrap();
        let a = Code::deterministic(1, 2, &[0, 1], basis_decoders(2, 2, &[0, 1]).unwrap()).unwrap();
        let b = Code::deterministic(1, 2, &[1, 0], basis_decoders(2, 2, &[1, 0]).unwrap()).unwrap();
        let c = compose_prefix(&outer, &[a, b]).unwrap();
        let total: CMatrix = c.decoders().iter().fold(CMatrix::zeros(4, 4), |acc, d| acc + d);
        assert!(crate::qmath::max_abs_diff(&total, &CMatrix::identity(4, 4)) < 1e-15);
        assert_eq!(c.n(), 2);
        // message 0: prefix 0 then word 0, or prefix 1 then word 1
        assert_eq!(c.encoder()[0], vec![0.5, 0.0, 0.0, 0.5]);
    }
}
