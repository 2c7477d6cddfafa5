//! Randomness-assisted secrecy lower bound and the dichotomy report.
//!
//! The bound evaluated is
//! `max_P [ min_Q chi(P, {U^Q(a)}) - max_{t^n} (1/n) chi(P^n, {V_{t^n}(a^n)}) ]`
//! with `U^Q(a) = sum_t Q(t) W_t(a)`, at a finite leakage order `n`.
//!
//! Both optimisations use an exhaustive simplex grid followed by pairwise
//! pattern-search refinement. For fixed `P` the Holevo quantity is convex in
//! the channel states (joint convexity of relative entropy), hence convex in
//! `Q`, so the refined inner minimum is global up to the step tolerance. The
//! outer objective is not concave in general; the reported maximum is a
//! search-resolution-limited lower bound.

mod eval;
mod search;

use serde::Serialize;

use crate::avc::{checked_power, index_to_sequence, n_fold_output, Avwc, CqFamily};
use crate::qmath::{check_base, CMatrix, DensityOp, SimplexDist};
use crate::sym::{check_symmetrizable, SymResult};
use crate::{Error, Limits, Result};

pub(crate) use eval::{FamilyBank, StateSet};
use search::{for_each_grid_point, grid_size, higher, lower, refine};

/// Search settings shared by the bound operations.
#[derive(Debug, Clone)]
pub struct BoundOptions {
    /// Grid points per simplex dimension for the input distribution.
    pub grid: usize,
    /// Grid resolution for the jammer mixture; `None` picks the largest
    /// resolution up to `grid` with at most 256 points.
    pub jammer_grid: Option<usize>,
    /// Smallest refinement step.
    pub tol: f64,
    /// Blocklength of the leakage surrogate.
    pub leakage_order: usize,
    pub base: f64,
    /// Largest input alphabet accepted by the exhaustive input grid.
    pub max_alphabet: usize,
    /// Largest wiretap output dimension `d^n` in the leakage surrogate.
    pub max_leakage_dim: usize,
    /// Symmetrizability tolerance used by the dichotomy report.
    pub sym_tol: f64,
    pub limits: Limits,
}

impl Default for BoundOptions {
    fn default() -> Self {
        BoundOptions {
            grid: 64,
            jammer_grid: None,
            tol: 1e-6,
            leakage_order: 1,
            base: 2.0,
            max_alphabet: 4,
            max_leakage_dim: 64,
            sym_tol: crate::sym::DEFAULT_TOL,
            limits: Limits::default(),
        }
    }
}

impl BoundOptions {
    fn jammer_resolution(&self, k: usize) -> usize {
        if let Some(g) = self.jammer_grid {
            return g.max(1);
        }
        let mut g = self.grid.max(1);
        while g > 1 && grid_size(k, g) > 256 {
            g -= 1;
        }
        g
    }

    fn validate(&self) -> Result<f64> {
        if self.grid == 0 || self.tol.is_nan() || self.tol <= 0.0 || self.leakage_order == 0 {
            return Err(Error::InvalidArgument(
                "grid, tolerance and leakage order must be positive".into(),
            ));
        }
        check_base(self.base)
    }
}

/// Outcome of [`secrecy_lower_bound`].
#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    /// `legal_term - leakage_term`; may be negative.
    pub value: f64,
    pub argmax_p: Vec<f64>,
    pub argmin_q: Vec<f64>,
    pub legal_term: f64,
    pub leakage_term: f64,
    pub leakage_order: usize,
    pub grid_spec: String,
}

impl BoundReport {
    pub fn clamped(&self) -> f64 {
        self.value.max(0.0)
    }
}

/// Symmetrizability decision combined with the randomness-assisted bound.
#[derive(Debug, Clone)]
pub struct DichotomyReport {
    pub symmetrizable: bool,
    pub sym: SymResult,
    pub random_lb: BoundReport,
    /// Zero when symmetrizable, otherwise the clamped random bound.
    pub deterministic_secrecy_lb: f64,
}

struct JammerSearch<'a> {
    bank: FamilyBank,
    k: usize,
    g: usize,
    opts: &'a BoundOptions,
}

impl<'a> JammerSearch<'a> {
    fn new(legal: &CqFamily, opts: &'a BoundOptions) -> Self {
        let k = legal.num_states();
        JammerSearch {
            bank: FamilyBank::new(legal),
            k,
            g: opts.jammer_resolution(k),
            opts,
        }
    }

    /// `(Q*, chi)` in nats.
    fn min_chi(&self, p: &[f64]) -> (Vec<f64>, f64) {
        if self.k == 1 {
            return (vec![1.0], self.bank.chi_nats(p, &[1.0]));
        }
        let mut best: Option<(Vec<f64>, f64)> = None;
        for_each_grid_point(self.k, self.g, |q| {
            let v = self.bank.chi_nats(p, q);
            if best.as_ref().is_none_or(|(_, b)| lower(v, *b)) {
                best = Some((q.to_vec(), v));
            }
        });
        let (q0, v0) = best.expect("grid is nonempty");
        let mut f = |q: &[f64]| self.bank.chi_nats(p, q);
        refine(q0, v0, 1.0 / self.g as f64, self.opts.tol, &mut f, lower)
    }
}

/// Leakage surrogate: per jammer sequence, the wiretap ensemble over `A^n`.
struct LeakageBank {
    n: usize,
    sets: Vec<StateSet>,
}

impl LeakageBank {
    fn new(wiretap: &CqFamily, n: usize, opts: &BoundOptions) -> Result<Self> {
        let d = wiretap.out_dim();
        checked_power(d, n, opts.max_leakage_dim.min(opts.limits.max_dim), "leakage output dimension")?;
        let n_seq = checked_power(wiretap.num_states(), n, opts.limits.max_sweep, "jammer sequences")?;
        let n_words = checked_power(wiretap.alphabet_size(), n, opts.limits.max_sweep, "input sequences")?;
        let mut sets = Vec::with_capacity(n_seq);
        for ti in 0..n_seq {
            let t_seq = index_to_sequence(ti, wiretap.num_states(), n);
            let states: Vec<DensityOp> = (0..n_words)
                .map(|ai| {
                    let a_seq = index_to_sequence(ai, wiretap.alphabet_size(), n);
                    n_fold_output(wiretap, &t_seq, &a_seq, &opts.limits)
                })
                .collect::<Result<_>>()?;
            let refs: Vec<&CMatrix> = states.iter().map(DensityOp::matrix).collect();
            sets.push(StateSet::new(&refs));
        }
        Ok(LeakageBank { n, sets })
    }

    /// `max_{t^n} (1/n) chi(P^n, .)` in nats.
    fn leakage_nats(&self, p: &[f64]) -> f64 {
        let k = p.len();
        let weights: Vec<f64> = (0..k.pow(self.n as u32))
            .map(|i| index_to_sequence(i, k, self.n).iter().map(|&a| p[a]).product())
            .collect();
        self.sets
            .iter()
            .map(|s| s.chi_nats(&weights))
            .fold(0.0, f64::max)
            / self.n as f64
    }
}

fn check_input_dist(family: &CqFamily, p: &SimplexDist) -> Result<()> {
    if p.support_size() != family.alphabet_size() {
        return Err(Error::Shape(format!(
            "input distribution has {} entries for {} symbols",
            p.support_size(),
            family.alphabet_size()
        )));
    }
    Ok(())
}

/// `min_Q chi(P, {U^Q(a)})`, returning the minimiser and the value in `opts.base`.
pub fn min_chi_over_jammer(legal: &CqFamily, p: &SimplexDist, opts: &BoundOptions) -> Result<(SimplexDist, f64)> {
    let ln_base = opts.validate()?;
    check_input_dist(legal, p)?;
    let (q, v) = JammerSearch::new(legal, opts).min_chi(p.probs());
    Ok((SimplexDist::from_trusted(q), v / ln_base))
}

/// `max_{t^n} (1/n) chi(P^n, {V_{t^n}(a^n)})` in bits, exhaustively over `theta^n`.
pub fn leakage_term(wiretap: &CqFamily, p: &SimplexDist, n: usize) -> Result<f64> {
    leakage_term_with(wiretap, p, n, &BoundOptions::default())
}

pub fn leakage_term_with(wiretap: &CqFamily, p: &SimplexDist, n: usize, opts: &BoundOptions) -> Result<f64> {
    let ln_base = check_base(opts.base)?;
    if n == 0 {
        return Err(Error::InvalidArgument("leakage order must be positive".into()));
    }
    check_input_dist(wiretap, p)?;
    Ok(LeakageBank::new(wiretap, n, opts)?.leakage_nats(p.probs()) / ln_base)
}

/// Grid-and-refine evaluation of the randomness-assisted secrecy lower bound.
pub fn secrecy_lower_bound(channel: &Avwc, opts: &BoundOptions) -> Result<BoundReport> {
    let ln_base = opts.validate()?;
    let n_sym = channel.alphabet().len();
    if n_sym > opts.max_alphabet {
        return Err(Error::capacity("input alphabet for exhaustive grid", n_sym, opts.max_alphabet));
    }
    let jammer = JammerSearch::new(channel.legal(), opts);
    let leak = LeakageBank::new(channel.wiretap(), opts.leakage_order, opts)?;
    let objective = |p: &[f64]| jammer.min_chi(p).1 - leak.leakage_nats(p);

    let mut best: Option<(Vec<f64>, f64)> = None;
    for_each_grid_point(n_sym, opts.grid, |p| {
        let v = objective(p);
        if best.as_ref().is_none_or(|(_, b)| higher(v, *b)) {
            best = Some((p.to_vec(), v));
        }
    });
    let (p0, v0) = best.expect("grid is nonempty");
    let mut f = |p: &[f64]| objective(p);
    let (p_star, _) = refine(p0, v0, 1.0 / opts.grid as f64, opts.tol, &mut f, higher);

    let (q_star, legal_nats) = jammer.min_chi(&p_star);
    let legal_term = legal_nats / ln_base;
    let leakage_term = leak.leakage_nats(&p_star) / ln_base;
    let grid_spec = format!(
        "lower bound, search-resolution limited: input grid {g}/dim ({np} points) + pairwise refinement to {tol:e}; \
         jammer grid {jg}/dim ({nq} points) + pairwise refinement to {tol:e}; leakage order {n} exhaustive over {ns} jammer sequences",
        g = opts.grid,
        np = grid_size(n_sym, opts.grid),
        tol = opts.tol,
        jg = jammer.g,
        nq = grid_size(jammer.k, jammer.g),
        n = opts.leakage_order,
        ns = leak.sets.len(),
    );
    Ok(BoundReport {
        value: legal_term - leakage_term,
        argmax_p: p_star,
        argmin_q: q_star,
        legal_term,
        leakage_term,
        leakage_order: opts.leakage_order,
        grid_spec,
    })
}

/// Symmetrizability of the legal family plus the randomness-assisted bound.
pub fn dichotomy_report(channel: &Avwc, opts: &BoundOptions) -> Result<DichotomyReport> {
    let sym = check_symmetrizable(channel.legal(), opts.sym_tol)?;
    let random_lb = secrecy_lower_bound(channel, opts)?;
    let deterministic_secrecy_lb = if sym.symmetrizable { 0.0 } else { random_lb.clamped() };
    Ok(DichotomyReport {
        symmetrizable: sym.symmetrizable,
        sym,
        random_lb,
        deterministic_secrecy_lb,
    })
}

fn two_state_family(legal: &CqFamily) -> Result<()> {
    if legal.num_states() != 2 {
        return Err(Error::Shape(format!(
            "derivative in q needs exactly two jammer states, got {}",
            legal.num_states()
        )));
    }
    Ok(())
}

/// `tr(X log rho)` in nats, skipping the kernel of `rho`.
fn trace_with_log(x: &CMatrix, rho: &CMatrix) -> f64 {
    let (vals, vecs) = crate::qmath::hermitian_eigen(rho);
    vals.iter()
        .enumerate()
        .filter(|(_, &l)| l > crate::qmath::EIGEN_CLAMP)
        .map(|(k, &l)| {
            let v = vecs.column(k);
            (v.adjoint() * x * v)[(0, 0)].re * l.ln()
        })
        .sum()
}

/// Analytic `d/dq chi(P, {U^(q, 1-q)(a)})` in `base`.
///
/// With `rho_a(q) = q W_1(a) + (1 - q) W_2(a)` and traceless derivative
/// `rho_a' = W_1(a) - W_2(a)`, `dS(rho)/dq = -tr(rho' log rho)`.
pub fn chi_derivative(legal: &CqFamily, p: &SimplexDist, q: f64, base: f64) -> Result<f64> {
    let ln_base = check_base(base)?;
    two_state_family(legal)?;
    check_input_dist(legal, p)?;
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::InvalidArgument(format!("q = {q} outside [0, 1]")));
    }
    let d = legal.out_dim();
    let mut avg = CMatrix::zeros(d, d);
    let mut avg_prime = CMatrix::zeros(d, d);
    let mut mixed = 0.0;
    for (a, &pa) in p.probs().iter().enumerate() {
        let w1 = legal.output(0, a).matrix();
        let w2 = legal.output(1, a).matrix();
        let rho = w1.scale(q) + w2.scale(1.0 - q);
        let rho_prime = w1 - w2;
        if pa != 0.0 {
            mixed += pa * trace_with_log(&rho_prime, &rho);
        }
        avg += rho.scale(pa);
        avg_prime += rho_prime.scale(pa);
    }
    Ok((-trace_with_log(&avg_prime, &avg) + mixed) / ln_base)
}

/// `|analytic derivative - central finite difference|` at `q` with step `h`.
pub fn chi_gradient_check(legal: &CqFamily, p: &SimplexDist, q: f64, h: f64) -> Result<f64> {
    two_state_family(legal)?;
    if !(h > 0.0 && h <= 1e-3) {
        return Err(Error::InvalidArgument(format!("step {h} outside (0, 1e-3]")));
    }
    if q - h < 0.0 || q + h > 1.0 {
        return Err(Error::Precondition {
            reason: format!("q = {q} is within step {h} of the simplex boundary"),
            residual: q.min(1.0 - q),
        });
    }
    let analytic = chi_derivative(legal, p, q, 2.0)?;
    let bank = FamilyBank::new(legal);
    let chi = |q: f64| bank.chi_nats(p.probs(), &[q, 1.0 - q]) / std::f64::consts::LN_2;
    let numeric = (chi(q + h) - chi(q - h)) / (2.0 * h);
    Ok((analytic - numeric).abs())
}
