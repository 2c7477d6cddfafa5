//! Allocation-light Holevo evaluation for the optimisation loops.

use crate::avc::CqFamily;
use crate::qmath::{chi_of_matrices, CMatrix, C64};

fn is_diagonal(m: &CMatrix) -> bool {
    let n = m.nrows();
    (0..n).all(|j| (0..n).all(|i| i == j || m[(i, j)] == C64::new(0.0, 0.0)))
}

fn shannon(v: &[f64]) -> f64 {
    v.iter().filter(|&&x| x > crate::qmath::EIGEN_CLAMP).map(|&x| -x * x.ln()).sum()
}

/// A list of equal-dimension states; commuting diagonal sets are kept as
/// probability vectors.
#[derive(Debug, Clone)]
pub(crate) enum StateSet {
    Diagonal(Vec<Vec<f64>>),
    Dense(Vec<CMatrix>),
}

impl StateSet {
    pub(crate) fn new(states: &[&CMatrix]) -> Self {
        if states.iter().all(|m| is_diagonal(m)) {
            StateSet::Diagonal(
                states
                    .iter()
                    .map(|m| (0..m.nrows()).map(|i| m[(i, i)].re).collect())
                    .collect(),
            )
        } else {
            StateSet::Dense(states.iter().map(|m| (*m).clone()).collect())
        }
    }

    /// Holevo quantity of the ensemble with weights `w` in nats.
    pub(crate) fn chi_nats(&self, w: &[f64]) -> f64 {
        match self {
            StateSet::Diagonal(vs) => {
                let d = vs[0].len();
                let mut avg = vec![0.0; d];
                let mut mixed = 0.0;
                for (&p, v) in w.iter().zip(vs) {
                    if p == 0.0 {
                        continue;
                    }
                    for (x, y) in avg.iter_mut().zip(v) {
                        *x += p * y;
                    }
                    mixed += p * shannon(v);
                }
                (shannon(&avg) - mixed).max(0.0)
            }
            StateSet::Dense(ms) => {
                let refs: Vec<&CMatrix> = ms.iter().collect();
                chi_of_matrices(w, &refs, 1.0)
            }
        }
    }
}

/// Per-jammer-state output sets of a family, for forming `U^Q` quickly.
#[derive(Debug, Clone)]
pub(crate) struct FamilyBank {
    per_state: Vec<StateSet>,
    diagonal: bool,
}

impl FamilyBank {
    pub(crate) fn new(family: &CqFamily) -> Self {
        let all: Vec<&CMatrix> = family
            .channels()
            .iter()
            .flat_map(|ch| ch.outputs().iter().map(|s| s.matrix()))
            .collect();
        let diagonal = all.iter().all(|m| is_diagonal(m));
        let per_state = family
            .channels()
            .iter()
            .map(|ch| {
                let ms: Vec<&CMatrix> = ch.outputs().iter().map(|s| s.matrix()).collect();
                if diagonal {
                    StateSet::new(&ms)
                } else {
                    StateSet::Dense(ms.into_iter().cloned().collect())
                }
            })
            .collect();
        FamilyBank { per_state, diagonal }
    }

    /// Output set of `U^Q(a) = sum_t Q(t) W_t(a)`.
    pub(crate) fn mixture(&self, q: &[f64]) -> StateSet {
        if self.diagonal {
            let mut out: Option<Vec<Vec<f64>>> = None;
            for (&w, set) in q.iter().zip(&self.per_state) {
                let StateSet::Diagonal(vs) = set else { unreachable!() };
                let acc = out.get_or_insert_with(|| vs.iter().map(|v| vec![0.0; v.len()]).collect());
                if w == 0.0 {
                    continue;
                }
                for (a, v) in acc.iter_mut().zip(vs) {
                    for (x, y) in a.iter_mut().zip(v) {
                        *x += w * y;
                    }
                }
            }
            StateSet::Diagonal(out.expect("family is nonempty"))
        } else {
            let mut out: Option<Vec<CMatrix>> = None;
            for (&w, set) in q.iter().zip(&self.per_state) {
                let StateSet::Dense(ms) = set else { unreachable!() };
                let acc = out.get_or_insert_with(|| ms.iter().map(|m| CMatrix::zeros(m.nrows(), m.ncols())).collect());
                if w == 0.0 {
                    continue;
                }
                for (a, m) in acc.iter_mut().zip(ms) {
                    *a += m.scale(w);
                }
            }
            StateSet::Dense(out.expect("family is nonempty"))
        }
    }

    /// `chi(P, {U^Q(a)})` in nats.
    pub(crate) fn chi_nats(&self, p: &[f64], q: &[f64]) -> f64 {
        self.mixture(q).chi_nats(p)
    }
}
