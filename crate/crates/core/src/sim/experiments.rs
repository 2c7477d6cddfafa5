use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::code::{Code, CorrCode};
use super::eval::{error_with_outputs, leakage_with_outputs, word_outputs, JammerSweep};
use crate::avc::{checked_power, index_to_sequence, mixture_channel, Avwc, Correlation, CqFamily};
use crate::qmath::{max_abs_diff, SimplexDist};
use crate::{Error, Limits, Result};

/// Largest input dependence tolerated by [`expected_error_under_tau`].
pub const MIXTURE_TOL: f64 = 1e-9;

/// `sum_{t^n} sigma^n(t^n) P_e(code, t^n)`, evaluated through the mixed
/// channel `sum_t sigma(t) W_t`, which must not depend on the input.
///
/// When the mixture depends on the input, the error is
/// [`Error::Precondition`] carrying the largest entrywise difference between
/// mixed outputs.
pub fn expected_error_under_tau(code: &Code, legal: &CqFamily, sigma: &SimplexDist) -> Result<f64> {
    let mixed = mixture_channel(legal, sigma)?;
    let mut dependence = 0.0f64;
    for a in 0..mixed.alphabet().len() {
        for b in a + 1..mixed.alphabet().len() {
            dependence = dependence.max(max_abs_diff(mixed.output(a).matrix(), mixed.output(b).matrix()));
        }
    }
    if dependence > MIXTURE_TOL {
        return Err(Error::Precondition {
            reason: "jammer mixture depends on the channel input".into(),
            residual: dependence,
        });
    }
    let family = CqFamily::new(vec!["sigma".into()], vec![mixed])?;
    super::error_prob_family(code, &family, &vec![0; code.n()], &Limits::default())
}

/// Expected error and leakage of a correlation-assisted code when the
/// source emits i.i.d. pairs from `corr`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CorrEval {
    pub avg_error: f64,
    pub avg_leakage: f64,
}

pub fn corr_code_eval(code: &CorrCode, channel: &Avwc, corr: &Correlation, t_seq: &[usize]) -> Result<CorrEval> {
    corr_code_eval_with(code, channel, corr, t_seq, &Limits::default())
}

pub fn corr_code_eval_with(
    code: &CorrCode,
    channel: &Avwc,
    corr: &Correlation,
    t_seq: &[usize],
    limits: &Limits,
) -> Result<CorrEval> {
    let n = code.n();
    if t_seq.len() != n {
        return Err(Error::Shape(format!("jammer sequence length {} != {n}", t_seq.len())));
    }
    let nx = corr.x_alphabet().len();
    let ny = corr.y_alphabet().len();
    let n_xs = checked_power(nx, n, limits.max_corr_pairs, "x^n sequences")?;
    let n_ys = checked_power(ny, n, limits.max_corr_pairs, "y^n sequences")?;
    if n_xs * n_ys > limits.max_corr_pairs {
        return Err(Error::capacity("(x^n, y^n) pairs", n_xs * n_ys, limits.max_corr_pairs));
    }
    if code.encoders().len() != n_xs || code.decoders().len() != n_ys {
        return Err(Error::Shape("code keys do not match the correlation alphabets".into()));
    }
    let encs: Vec<&[Vec<f64>]> = code.encoders().iter().map(Vec::as_slice).collect();
    let legal_out = word_outputs(channel.legal(), t_seq, &encs, limits)?;
    let wiretap_out = word_outputs(channel.wiretap(), t_seq, &encs, limits)?;

    let mut avg_error = 0.0;
    let mut avg_leakage = 0.0;
    for xi in 0..n_xs {
        let xs = index_to_sequence(xi, nx, n);
        let leak = leakage_with_outputs(&code.encoders()[xi], &wiretap_out);
        for yi in 0..n_ys {
            let ys = index_to_sequence(yi, ny, n);
            let p = corr.sequence_probability(&xs, &ys);
            if p == 0.0 {
                continue;
            }
            avg_error += p * error_with_outputs(&code.encoders()[xi], &code.decoders()[yi], &legal_out)?;
            avg_leakage += p * leak;
        }
    }
    Ok(CorrEval { avg_error, avg_leakage })
}

/// Empirical averages of the drawn codes at one jammer sequence.
#[derive(Debug, Clone, Serialize)]
pub struct DerandomizeRow {
    pub t_seq: Vec<usize>,
    pub mean_error: f64,
    pub mean_leakage: f64,
    /// Largest leakage among the distinct drawn codes.
    pub max_individual_leakage: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct DerandomizeReport {
    /// Family indices of the `k` draws.
    pub draws: Vec<usize>,
    pub rows: Vec<DerandomizeRow>,
    pub max_mean_error: f64,
    pub max_mean_leakage: f64,
}

/// Draw `k` codes i.i.d. from `weights` over `family` and report the
/// empirical mean error and leakage at every jammer sequence of `sweep`.
pub fn derandomize_experiment(
    family: &[Code],
    weights: &SimplexDist,
    channel: &Avwc,
    k: usize,
    seed: u64,
    sweep: &JammerSweep,
) -> Result<DerandomizeReport> {
    let first = family
        .first()
        .ok_or_else(|| Error::Shape("code family is empty".into()))?;
    if weights.support_size() != family.len() {
        return Err(Error::Shape(format!(
            "{} weights for {} codes",
            weights.support_size(),
            family.len()
        )));
    }
    if family.iter().any(|c| c.n() != first.n()) {
        return Err(Error::Shape("codes in the family have different blocklengths".into()));
    }
    if k == 0 {
        return Err(Error::InvalidArgument("sample count must be positive".into()));
    }
    let dist = WeightedIndex::new(weights.probs()).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draws: Vec<usize> = (0..k).map(|_| dist.sample(&mut rng)).collect();
    let mut counts = vec![0usize; family.len()];
    for &d in &draws {
        counts[d] += 1;
    }

    let limits = Limits::default();
    let mut rows = Vec::new();
    for t in sweep.sequences(channel.theta().len(), first.n())? {
        let (mut err, mut leak, mut max_leak) = (0.0, 0.0, 0.0f64);
        for (code, &c) in family.iter().zip(&counts) {
            if c == 0 {
                continue;
            }
            let e = super::error_prob_family(code, channel.legal(), &t, &limits)?;
            let l = super::leakage_family(code, channel.wiretap(), &t, &limits)?;
            err += c as f64 * e;
            leak += c as f64 * l;
            max_leak = max_leak.max(l);
        }
        rows.push(DerandomizeRow {
            t_seq: t,
            mean_error: err / k as f64,
            mean_leakage: leak / k as f64,
            max_individual_leakage: max_leak,
        });
    }
    let max_mean_error = rows.iter().map(|r| r.mean_error).fold(0.0, f64::max);
    let max_mean_leakage = rows.iter().map(|r| r.mean_leakage).fold(0.0, f64::max);
    Ok(DerandomizeReport {
        draws,
        rows,
        max_mean_error,
        max_mean_leakage,
    })
}
