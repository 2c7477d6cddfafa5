//! Symmetrizability of a jammer-indexed classical-quantum channel family.
//!
//! A family `(W_t)` is symmetrizable when there are distributions
//! `tau(.|a)` on the jammer states with
//! `sum_t tau(t|a) W_t(a') = sum_t tau(t|a') W_t(a)` for every pair of
//! inputs. The conditions are linear in `tau`, so the decision is made by
//! minimising the largest violation with a linear program: each complex
//! matrix equality on the upper triangle contributes one real and one
//! imaginary row, and an auxiliary variable bounds all of them.

mod lp;

pub use lp::{LinearProgram, LpOutcome};

use serde::Serialize;

use crate::avc::CqFamily;
use crate::qmath::{CMatrix, SIMPLEX_TOL};
use crate::{Error, Result};

/// Default decision tolerance on the residual.
pub const DEFAULT_TOL: f64 = 1e-8;
const MAX_PIVOTS: usize = 100_000;

/// Rows `tau(.|a)` indexed by input symbol, columns by jammer state.
#[derive(Debug, Clone, PartialEq)]
pub struct SymWitness {
    tau: Vec<Vec<f64>>,
}

impl SymWitness {
    /// Entries in `[-1e-12, 0)` are clamped to zero and the row renormalised.
    pub fn new(tau: Vec<Vec<f64>>) -> Result<Self> {
        let width = tau.first().map_or(0, Vec::len);
        if tau.is_empty() || width == 0 || tau.iter().any(|r| r.len() != width) {
            return Err(Error::Shape("witness must be a nonempty rectangular matrix".into()));
        }
        let mut tau = tau;
        for (a, row) in tau.iter_mut().enumerate() {
            for v in row.iter_mut() {
                if *v < -1e-12 || !v.is_finite() {
                    return Err(Error::invalid_state(
                        format!("tau row {a}"),
                        format!("entry {v} is negative"),
                        v.abs(),
                    ));
                }
                *v = v.max(0.0);
            }
            let s: f64 = row.iter().sum();
            if (s - 1.0).abs() > SIMPLEX_TOL {
                return Err(Error::invalid_state(
                    format!("tau row {a}"),
                    format!("sums to {s}"),
                    (s - 1.0).abs(),
                ));
            }
            row.iter_mut().for_each(|v| *v /= s);
        }
        Ok(SymWitness { tau })
    }

    /// `tau(t|a) = 1` iff `t = choice[a]`.
    pub fn deterministic(choice: &[usize], num_states: usize) -> Result<Self> {
        Self::new(
            choice
                .iter()
                .map(|&t| (0..num_states).map(|s| if s == t { 1.0 } else { 0.0 }).collect())
                .collect(),
        )
    }

    pub fn uniform(alphabet_size: usize, num_states: usize) -> Result<Self> {
        Self::new(vec![vec![1.0 / num_states as f64; num_states]; alphabet_size])
    }

    pub fn tau(&self) -> &[Vec<f64>] {
        &self.tau
    }

    pub fn alphabet_size(&self) -> usize {
        self.tau.len()
    }

    pub fn num_states(&self) -> usize {
        self.tau[0].len()
    }

    /// Entrywise convex combination `lambda * self + (1 - lambda) * other`.
    pub fn mix(&self, other: &SymWitness, lambda: f64) -> Result<Self> {
        if self.tau.len() != other.tau.len() || self.num_states() != other.num_states() {
            return Err(Error::Shape("witness shapes differ".into()));
        }
        Self::new(
            self.tau
                .iter()
                .zip(&other.tau)
                .map(|(r, s)| r.iter().zip(s).map(|(x, y)| lambda * x + (1.0 - lambda) * y).collect())
                .collect(),
        )
    }
}

/// Outcome of [`check_symmetrizable`].
#[derive(Debug, Clone)]
pub struct SymResult {
    pub symmetrizable: bool,
    pub witness: Option<SymWitness>,
    /// Complex-modulus residual of the witness when symmetrizable, otherwise
    /// the optimum of the residual minimisation.
    pub residual: f64,
    pub tolerance: f64,
    /// Optimal value of the linear program (largest real or imaginary violation).
    pub lp_objective: f64,
}

/// `sum_t tau(t|a) W_t(a')` for the given symbols.
fn averaged(family: &CqFamily, tau_row: &[f64], a_prime: usize) -> CMatrix {
    let d = family.out_dim();
    let mut acc = CMatrix::zeros(d, d);
    for (t, &w) in tau_row.iter().enumerate() {
        if w != 0.0 {
            acc += family.output(t, a_prime).matrix().scale(w);
        }
    }
    acc
}

fn check_shape(family: &CqFamily, tau: &SymWitness) -> Result<()> {
    if tau.alphabet_size() != family.alphabet_size() || tau.num_states() != family.num_states() {
        return Err(Error::Shape(format!(
            "witness is {}x{} but family has {} symbols and {} states",
            tau.alphabet_size(),
            tau.num_states(),
            family.alphabet_size(),
            family.num_states()
        )));
    }
    Ok(())
}

/// Largest complex modulus of
/// `sum_t tau(t|a) W_t(a') - sum_t tau(t|a') W_t(a)` over pairs and entries.
pub fn residual(family: &CqFamily, tau: &SymWitness) -> Result<f64> {
    check_shape(family, tau)?;
    let n = family.alphabet_size();
    let mut worst = 0.0f64;
    for a in 0..n {
        for b in a + 1..n {
            let lhs = averaged(family, &tau.tau[a], b);
            let rhs = averaged(family, &tau.tau[b], a);
            worst = worst.max(crate::qmath::max_abs_diff(&lhs, &rhs));
        }
    }
    Ok(worst)
}

/// Linear program minimising the largest real/imaginary constraint violation.
/// Variables are `tau(t|a)` at `a * |theta| + t`, then the bound `s`.
pub fn residual_program(family: &CqFamily) -> LinearProgram {
    let n_sym = family.alphabet_size();
    let n_st = family.num_states();
    let d = family.out_dim();
    let nv = n_sym * n_st + 1;
    let s = nv - 1;

    let mut lp = LinearProgram {
        num_vars: nv,
        objective: {
            let mut c = vec![0.0; nv];
            c[s] = 1.0;
            c
        },
        ..Default::default()
    };
    for a in 0..n_sym {
        let mut row = vec![0.0; nv];
        row[a * n_st..(a + 1) * n_st].iter_mut().for_each(|v| *v = 1.0);
        lp.eq_rows.push((row, 1.0));
    }
    for a in 0..n_sym {
        for b in a + 1..n_sym {
            for i in 0..d {
                for j in i..d {
                    let parts: &[fn(crate::qmath::C64) -> f64] = if i == j {
                        &[|z| z.re]
                    } else {
                        &[|z| z.re, |z| z.im]
                    };
                    for part in parts {
                        let mut g = vec![0.0; nv];
                        for t in 0..n_st {
                            g[a * n_st + t] += part(family.output(t, b).matrix()[(i, j)]);
                            g[b * n_st + t] -= part(family.output(t, a).matrix()[(i, j)]);
                        }
                        if g.iter().all(|v| v.abs() < 1e-15) {
                            continue;
                        }
                        let mut neg: Vec<f64> = g.iter().map(|v| -v).collect();
                        g[s] = -1.0;
                        neg[s] = -1.0;
                        lp.le_rows.push((g, 0.0));
                        lp.le_rows.push((neg, 0.0));
                    }
                }
            }
        }
    }
    lp
}

/// Decide symmetrizability of `family` at tolerance `tol`.
pub fn check_symmetrizable(family: &CqFamily, tol: f64) -> Result<SymResult> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    let n_st = family.num_states();
    let lp = residual_program(family);
    let (x, objective) = match lp.solve(MAX_PIVOTS) {
        LpOutcome::Optimal { x, objective } => (x, objective),
        LpOutcome::IterationLimit { iterations, objective } => {
            return Err(Error::Indeterminate {
                iterations,
                best_residual: objective,
            })
        }
        // tau rows on the simplex with s large enough are always feasible and s >= 0
        other => unreachable!("residual program cannot be {other:?}"),
    };
    let tau: Vec<Vec<f64>> = x[..x.len() - 1]
        .chunks(n_st)
        .map(|row| {
            let row: Vec<f64> = row.iter().map(|v| if *v < 0.0 && *v >= -1e-12 { 0.0 } else { *v }).collect();
            let s: f64 = row.iter().sum();
            row.into_iter().map(|v| v / s).collect()
        })
        .collect();
    let witness = SymWitness::new(tau)?;
    let witness_residual = residual(family, &witness)?;
    let objective = objective.max(0.0);

    if witness_residual <= tol {
        Ok(SymResult {
            symmetrizable: true,
            witness: Some(witness),
            residual: witness_residual,
            tolerance: tol,
            lp_objective: objective,
        })
    } else {
        Ok(SymResult {
            symmetrizable: false,
            witness: None,
            residual: if objective > tol { objective } else { witness_residual },
            tolerance: tol,
            lp_objective: objective,
        })
    }
}

#[derive(Serialize)]
struct WitnessDoc<'a> {
    alphabet: &'a [String],
    theta: &'a [String],
    symmetrizable: bool,
    tau: Option<&'a [Vec<f64>]>,
    residual: f64,
    tolerance: f64,
}

impl SymResult {
    /// Structured export: `tau` rows follow the alphabet, columns follow theta.
    pub fn witness_document(&self, family: &CqFamily) -> String {
        let doc = WitnessDoc {
            alphabet: family.alphabet(),
            theta: family.theta(),
            symmetrizable: self.symmetrizable,
            tau: self.witness.as_ref().map(|w| w.tau()),
            residual: self.residual,
            tolerance: self.tolerance,
        };
        serde_json::to_string_pretty(&doc).expect("witness serializes")
    }
}
