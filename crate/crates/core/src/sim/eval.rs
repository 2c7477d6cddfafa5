use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::code::{validate_povm, Code};
use crate::avc::{checked_power, index_to_sequence, n_fold_output, Avwc, CqFamily};
use crate::qmath::{chi_of_matrices, trace_product, CMatrix};
use crate::{Error, Limits, Result};

/// How jammer sequences `t^n` are chosen by [`worst_case`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepMode {
    Exhaustive,
    Sampled,
}

/// Exhaustive sweeps need `|theta|^n <= cap`; sampled sweeps draw `cap`
/// sequences uniformly from a ChaCha8 stream seeded with `seed`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct JammerSweep {
    pub mode: SweepMode,
    pub cap: usize,
    pub seed: u64,
}

impl JammerSweep {
    pub fn exhaustive() -> Self {
        JammerSweep {
            mode: SweepMode::Exhaustive,
            cap: Limits::default().max_sweep,
            seed: 0,
        }
    }

    pub fn sampled(cap: usize, seed: u64) -> Self {
        JammerSweep {
            mode: SweepMode::Sampled,
            cap,
            seed,
        }
    }

    /// The jammer sequences visited, in evaluation order.
    pub fn sequences(&self, num_states: usize, n: usize) -> Result<Vec<Vec<usize>>> {
        if self.cap == 0 {
            return Err(Error::InvalidArgument("sweep cap must be positive".into()));
        }
        match self.mode {
            SweepMode::Exhaustive => {
                let total = checked_power(num_states, n, self.cap, "exhaustive jammer sweep")?;
                Ok((0..total).map(|i| index_to_sequence(i, num_states, n)).collect())
            }
            SweepMode::Sampled => {
                let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
                Ok((0..self.cap)
                    .map(|_| (0..n).map(|_| rng.random_range(0..num_states)).collect())
                    .collect())
            }
        }
    }
}

/// `n`-letter outputs `W_{t^n}(a^n)` for the words some encoder row uses.
pub(crate) fn word_outputs(
    family: &CqFamily,
    t_seq: &[usize],
    encoders: &[&[Vec<f64>]],
    limits: &Limits,
) -> Result<Vec<Option<CMatrix>>> {
    let n = t_seq.len();
    let words = encoders[0][0].len();
    let expected = checked_power(family.alphabet_size(), n, usize::MAX, "input words")?;
    if words != expected {
        return Err(Error::Shape(format!(
            "encoder has {words} columns but |A|^n = {expected}"
        )));
    }
    checked_power(family.out_dim(), n, limits.max_dim, "n-letter output dimension")?;
    (0..words)
        .map(|w| {
            let used = encoders.iter().any(|e| e.iter().any(|row| row[w] != 0.0));
            if !used {
                return Ok(None);
            }
            let a_seq = index_to_sequence(w, family.alphabet_size(), n);
            Ok(Some(n_fold_output(family, t_seq, &a_seq, limits)?.into_matrix()))
        })
        .collect()
}

fn check_sequence(family: &CqFamily, n: usize, t_seq: &[usize]) -> Result<()> {
    if t_seq.len() != n {
        return Err(Error::Shape(format!(
            "jammer sequence has length {} for blocklength {n}",
            t_seq.len()
        )));
    }
    if let Some(&t) = t_seq.iter().find(|&&t| t >= family.num_states()) {
        return Err(Error::Shape(format!("jammer state index {t} out of range")));
    }
    Ok(())
}

/// `1 - (1/J) sum_j sum_w E(w|j) tr(W(w) D_j)` from precomputed word outputs.
pub(crate) fn error_with_outputs(encoder: &[Vec<f64>], decoders: &[CMatrix], outputs: &[Option<CMatrix>]) -> Result<f64> {
    let d = decoders[0].nrows();
    if let Some(m) = outputs.iter().flatten().next() {
        if m.nrows() != d {
            return Err(Error::Shape(format!(
                "decoders act on dim {d} but channel outputs have dim {}",
                m.nrows()
            )));
        }
    }
    let mut correct = 0.0;
    for (row, dj) in encoder.iter().zip(decoders) {
        for (w, &e) in row.iter().enumerate() {
            if e != 0.0 {
                let out = outputs[w].as_ref().expect("used word has an output");
                correct += e * trace_product(out, dj);
            }
        }
    }
    Ok((1.0 - correct / encoder.len() as f64).clamp(0.0, 1.0))
}

/// Wiretapper ensemble `{Z_j = sum_w E(w|j) V(w)}` with uniform weights; chi in bits.
pub(crate) fn leakage_with_outputs(encoder: &[Vec<f64>], outputs: &[Option<CMatrix>]) -> f64 {
    let d = outputs.iter().flatten().next().map_or(1, CMatrix::nrows);
    let states: Vec<CMatrix> = encoder
        .iter()
        .map(|row| {
            let mut z = CMatrix::zeros(d, d);
            for (w, &e) in row.iter().enumerate() {
                if e != 0.0 {
                    z += outputs[w].as_ref().expect("used word has an output").scale(e);
                }
            }
            z
        })
        .collect();
    let refs: Vec<&CMatrix> = states.iter().collect();
    let weights = vec![1.0 / encoder.len() as f64; encoder.len()];
    chi_of_matrices(&weights, &refs, std::f64::consts::LN_2)
}

/// Average error probability of `code` through a legal family at jammer sequence `t_seq`.
pub fn error_prob_family(code: &Code, legal: &CqFamily, t_seq: &[usize], limits: &Limits) -> Result<f64> {
    code.verify_povm()?;
    check_sequence(legal, code.n(), t_seq)?;
    let outputs = word_outputs(legal, t_seq, &[code.encoder()], limits)?;
    error_with_outputs(code.encoder(), code.decoders(), &outputs)
}

/// `P_e(C, t^n)` through the legal family of `channel`.
pub fn error_prob(code: &Code, channel: &Avwc, t_seq: &[usize]) -> Result<f64> {
    error_prob_family(code, channel.legal(), t_seq, &Limits::default())
}

/// Strong-secrecy leakage `chi(R_uni; Z_{t^n})` in bits through a wiretap family.
pub fn leakage_family(code: &Code, wiretap: &CqFamily, t_seq: &[usize], limits: &Limits) -> Result<f64> {
    check_sequence(wiretap, code.n(), t_seq)?;
    let outputs = word_outputs(wiretap, t_seq, &[code.encoder()], limits)?;
    Ok(leakage_with_outputs(code.encoder(), &outputs))
}

/// `chi(R_uni; Z_{t^n})` through the wiretap family of `channel`.
pub fn leakage(code: &Code, channel: &Avwc, t_seq: &[usize]) -> Result<f64> {
    leakage_family(code, channel.wiretap(), t_seq, &Limits::default())
}

/// Worst jammer sequences found by a sweep. Ties keep the first sequence visited.
#[derive(Debug, Clone, Serialize)]
pub struct WorstCase {
    pub t_seq: Vec<usize>,
    pub max_error: f64,
    pub leakage_t_seq: Vec<usize>,
    pub max_leakage: f64,
    pub evaluated: usize,
    /// False for sampled sweeps: the maxima are then lower bounds.
    pub exact: bool,
}

pub fn worst_case(code: &Code, channel: &Avwc, sweep: &JammerSweep) -> Result<WorstCase> {
    worst_case_with(code, channel, sweep, &Limits::default())
}

pub fn worst_case_with(code: &Code, channel: &Avwc, sweep: &JammerSweep, limits: &Limits) -> Result<WorstCase> {
    validate_povm(code.decoders(), "code")?;
    let seqs = sweep.sequences(channel.theta().len(), code.n())?;
    let mut best: Option<WorstCase> = None;
    for t in &seqs {
        let e = error_prob_family(code, channel.legal(), t, limits)?;
        let l = leakage_family(code, channel.wiretap(), t, limits)?;
        let w = best.get_or_insert_with(|| WorstCase {
            t_seq: t.clone(),
            max_error: e,
            leakage_t_seq: t.clone(),
            max_leakage: l,
            evaluated: 0,
            exact: sweep.mode == SweepMode::Exhaustive,
        });
        if e > w.max_error {
            w.max_error = e;
            w.t_seq = t.clone();
        }
        if l > w.max_leakage {
            w.max_leakage = l;
            w.leakage_t_seq = t.clone();
        }
        w.evaluated += 1;
    }
    best.ok_or_else(|| Error::InvalidArgument("empty jammer sweep".into()))
}
