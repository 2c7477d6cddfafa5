//! Channel algebra for arbitrarily varying classical-quantum wiretap channels.
//!
//! Symbols and jammer states are addressed by their index in the declared
//! alphabet order; labels are kept for files and reports. Sequences over an
//! alphabet are enumerated lexicographically with the first letter most
//! significant.

mod correlation;
mod io;

pub use correlation::{lift_correlation, mutual_information, Correlation, LiftedAvc};
pub use io::{load_avwc, load_correlation, ChannelDoc, CorrelationDoc};
pub(crate) use io::{matrix_from_doc, matrix_to_doc, MatrixDoc};

use crate::qmath::{CMatrix, DensityOp, SimplexDist};
use crate::{Error, Limits, Result};

/// A map from a finite input alphabet to density operators of one dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct CqChannel {
    alphabet: Vec<String>,
    out_dim: usize,
    states: Vec<DensityOp>,
}

impl CqChannel {
    pub fn new(alphabet: Vec<String>, states: Vec<DensityOp>) -> Result<Self> {
        if alphabet.is_empty() {
            return Err(Error::Shape("channel alphabet is empty".into()));
        }
        if alphabet.len() != states.len() {
            return Err(Error::Shape(format!(
                "{} symbols but {} output states",
                alphabet.len(),
                states.len()
            )));
        }
        let out_dim = states[0].dim();
        if let Some(bad) = states.iter().position(|s| s.dim() != out_dim) {
            return Err(Error::Shape(format!(
                "output for symbol {} has dim {}, expected {out_dim}",
                alphabet[bad],
                states[bad].dim()
            )));
        }
        Ok(CqChannel {
            alphabet,
            out_dim,
            states,
        })
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn out_dim(&self) -> usize {
        self.out_dim
    }

    pub fn output(&self, a: usize) -> &DensityOp {
        &self.states[a]
    }

    pub fn outputs(&self) -> &[DensityOp] {
        &self.states
    }

    pub fn symbol_index(&self, label: &str) -> Option<usize> {
        self.alphabet.iter().position(|s| s == label)
    }
}

/// A jammer-indexed family `(W_t)_{t in theta}` sharing alphabet and output dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct CqFamily {
    theta: Vec<String>,
    channels: Vec<CqChannel>,
}

impl CqFamily {
    pub fn new(theta: Vec<String>, channels: Vec<CqChannel>) -> Result<Self> {
        if theta.is_empty() {
            return Err(Error::Shape("jammer state set is empty".into()));
        }
        if theta.len() != channels.len() {
            return Err(Error::Shape(format!(
                "{} jammer states but {} channels",
                theta.len(),
                channels.len()
            )));
        }
        let first = &channels[0];
        for (t, ch) in theta.iter().zip(&channels) {
            if ch.alphabet != first.alphabet {
                return Err(Error::Shape(format!("channel {t} has a different alphabet")));
            }
            if ch.out_dim != first.out_dim {
                return Err(Error::Shape(format!(
                    "channel {t} has output dim {}, expected {}",
                    ch.out_dim, first.out_dim
                )));
            }
        }
        Ok(CqFamily { theta, channels })
    }

    /// Family with `W_t(a) = states[t][a]`, labels `0..` for symbols and `1..` for states.
    pub fn from_states(states: Vec<Vec<DensityOp>>) -> Result<Self> {
        let n_sym = states.first().map_or(0, Vec::len);
        let alphabet: Vec<String> = (0..n_sym).map(|a| a.to_string()).collect();
        let theta: Vec<String> = (1..=states.len()).map(|t| t.to_string()).collect();
        let channels = states
            .into_iter()
            .map(|row| CqChannel::new(alphabet.clone(), row))
            .collect::<Result<Vec<_>>>()?;
        Self::new(theta, channels)
    }

    pub fn theta(&self) -> &[String] {
        &self.theta
    }

    pub fn channels(&self) -> &[CqChannel] {
        &self.channels
    }

    pub fn channel(&self, t: usize) -> &CqChannel {
        &self.channels[t]
    }

    pub fn alphabet(&self) -> &[String] {
        self.channels[0].alphabet()
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet().len()
    }

    pub fn num_states(&self) -> usize {
        self.theta.len()
    }

    pub fn out_dim(&self) -> usize {
        self.channels[0].out_dim
    }

    /// `W_t(a)`.
    pub fn output(&self, t: usize, a: usize) -> &DensityOp {
        self.channels[t].output(a)
    }

    /// Reorder jammer states: the new family's state `k` is the old state `perm[k]`.
    pub fn permute_states(&self, perm: &[usize]) -> Result<Self> {
        check_permutation(perm, self.num_states())?;
        Self::new(
            perm.iter().map(|&k| self.theta[k].clone()).collect(),
            perm.iter().map(|&k| self.channels[k].clone()).collect(),
        )
    }

    /// Reorder input symbols: the new symbol `k` is the old symbol `perm[k]`.
    pub fn permute_symbols(&self, perm: &[usize]) -> Result<Self> {
        check_permutation(perm, self.alphabet_size())?;
        let channels = self
            .channels
            .iter()
            .map(|ch| {
                CqChannel::new(
                    perm.iter().map(|&k| ch.alphabet[k].clone()).collect(),
                    perm.iter().map(|&k| ch.states[k].clone()).collect(),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.theta.clone(), channels)
    }
}

fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    if perm.len() != n || perm.iter().any(|&k| k >= n || std::mem::replace(&mut seen[k], true)) {
        return Err(Error::Shape(format!("{perm:?} is not a permutation of 0..{n}")));
    }
    Ok(())
}

/// An arbitrarily varying classical-quantum wiretap channel `(W_t, V_t)_{t in theta}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Avwc {
    name: String,
    legal: CqFamily,
    wiretap: CqFamily,
}

impl Avwc {
    pub fn new(name: impl Into<String>, legal: CqFamily, wiretap: CqFamily) -> Result<Self> {
        if legal.theta != wiretap.theta {
            return Err(Error::Shape(
                "legal and wiretap families have different jammer states".into(),
            ));
        }
        if legal.alphabet() != wiretap.alphabet() {
            return Err(Error::Shape(
                "legal and wiretap families have different alphabets".into(),
            ));
        }
        Ok(Avwc {
            name: name.into(),
            legal,
            wiretap,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn legal(&self) -> &CqFamily {
        &self.legal
    }

    pub fn wiretap(&self) -> &CqFamily {
        &self.wiretap
    }

    pub fn alphabet(&self) -> &[String] {
        self.legal.alphabet()
    }

    pub fn theta(&self) -> &[String] {
        self.legal.theta()
    }

    pub fn legal_dim(&self) -> usize {
        self.legal.out_dim()
    }

    pub fn wiretap_dim(&self) -> usize {
        self.wiretap.out_dim()
    }
}

/// `U^Q(a) = sum_t Q(t) W_t(a)`.
pub fn mixture_channel(family: &CqFamily, q: &SimplexDist) -> Result<CqChannel> {
    if q.support_size() != family.num_states() {
        return Err(Error::Shape(format!(
            "jammer mixture has {} entries for {} states",
            q.support_size(),
            family.num_states()
        )));
    }
    let d = family.out_dim();
    let states = (0..family.alphabet_size())
        .map(|a| {
            let mut acc = CMatrix::zeros(d, d);
            for (t, &w) in q.probs().iter().enumerate() {
                if w != 0.0 {
                    acc += family.output(t, a).matrix().scale(w);
                }
            }
            DensityOp::validated(acc, &format!("mixture output for symbol {}", family.alphabet()[a]))
        })
        .collect::<Result<Vec<_>>>()?;
    CqChannel::new(family.alphabet().to_vec(), states)
}

/// `W_{t_1}(a_1) (x) ... (x) W_{t_n}(a_n)`; the empty sequence gives the 1x1 state `[1]`.
pub fn n_fold_output(family: &CqFamily, t_seq: &[usize], a_seq: &[usize], limits: &Limits) -> Result<DensityOp> {
    if t_seq.len() != a_seq.len() {
        return Err(Error::Shape(format!(
            "state sequence has length {} but input sequence has length {}",
            t_seq.len(),
            a_seq.len()
        )));
    }
    let dim = checked_power(family.out_dim(), t_seq.len(), limits.max_dim, "n-letter output dimension")?;
    let mut acc = CMatrix::identity(1, 1);
    for (&t, &a) in t_seq.iter().zip(a_seq) {
        if t >= family.num_states() || a >= family.alphabet_size() {
            return Err(Error::Shape(format!("index (t={t}, a={a}) out of range")));
        }
        acc = acc.kronecker(family.output(t, a).matrix());
    }
    debug_assert_eq!(acc.nrows(), dim);
    Ok(DensityOp::from_trusted(acc))
}

/// `base^exp`, or a capacity error once it exceeds `cap`.
pub(crate) fn checked_power(base: usize, exp: usize, cap: usize, what: &str) -> Result<usize> {
    let mut acc = 1usize;
    for _ in 0..exp {
        acc = acc.saturating_mul(base);
        if acc > cap {
            return Err(Error::capacity(what, acc, cap));
        }
    }
    Ok(acc)
}

/// Decode a lexicographic index into a length-`n` sequence over `0..base`.
pub fn index_to_sequence(mut idx: usize, base: usize, n: usize) -> Vec<usize> {
    let mut seq = vec![0; n];
    for slot in seq.iter_mut().rev() {
        *slot = idx % base;
        idx /= base;
    }
    seq
}

/// Product channel `(W_{t1} (x) W'_{t2}, V_{t1} (x) V'_{t2})_{(t1, t2)}` on pairs `(a, a')`.
pub fn product_avwc(c1: &Avwc, c2: &Avwc, limits: &Limits) -> Result<Avwc> {
    for (d1, d2) in [(c1.legal_dim(), c2.legal_dim()), (c1.wiretap_dim(), c2.wiretap_dim())] {
        if d1 * d2 > limits.max_dim {
            return Err(Error::capacity("product output dimension", d1 * d2, limits.max_dim));
        }
    }
    let pair = |x: &str, y: &str| format!("({x},{y})");
    let alphabet: Vec<String> = c1
        .alphabet()
        .iter()
        .flat_map(|a| c2.alphabet().iter().map(move |b| pair(a, b)))
        .collect();
    let theta: Vec<String> = c1
        .theta()
        .iter()
        .flat_map(|s| c2.theta().iter().map(move |t| pair(s, t)))
        .collect();

    let combine = |f1: &CqFamily, f2: &CqFamily| -> Result<CqFamily> {
        let mut channels = Vec::with_capacity(theta.len());
        for t1 in 0..f1.num_states() {
            for t2 in 0..f2.num_states() {
                let mut states = Vec::with_capacity(alphabet.len());
                for a1 in 0..f1.alphabet_size() {
                    for a2 in 0..f2.alphabet_size() {
                        let m = f1.output(t1, a1).matrix().kronecker(f2.output(t2, a2).matrix());
                        states.push(DensityOp::from_trusted(m));
                    }
                }
                channels.push(CqChannel::new(alphabet.clone(), states)?);
            }
        }
        CqFamily::new(theta.clone(), channels)
    };
    Avwc::new(
        format!("{}x{}", c1.name(), c2.name()),
        combine(c1.legal(), c2.legal())?,
        combine(c1.wiretap(), c2.wiretap())?,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::bundled_examples;
    use crate::qmath::{max_abs_diff, von_neumann_entropy};

    #[test]
    fn mixture_of_example_one() {
        let ex = &bundled_examples()[0].1;
        let q = SimplexDist::uniform(2).unwrap();
        let u = mixture_channel(ex.legal(), &q).unwrap();
        // brute-force average of the two jammer outputs
        for a in 0..2 {
            let oracle = (ex.legal().output(0, a).matrix() + ex.legal().output(1, a).matrix()).scale(0.5);
            assert!(max_abs_diff(u.output(a).matrix(), &oracle) < 1e-15);
        }
        let d0 = DensityOp::diagonal(&[0.75, 0.25]).unwrap();
        let d1 = DensityOp::diagonal(&[0.25, 0.75]).unwrap();
        assert!(max_abs_diff(u.output(0).matrix(), d0.matrix()) < 1e-15);
        assert!(max_abs_diff(u.output(1).matrix(), d1.matrix()) < 1e-15);

        let point = mixture_channel(ex.legal(), &SimplexDist::point_mass(2, 0).unwrap()).unwrap();
        assert_eq!(&point, ex.legal().channel(0));

        let bad = SimplexDist::uniform(3).unwrap();
        assert!(matches!(mixture_channel(ex.legal(), &bad), Err(Error::Shape(_))));
    }

    #[test]
    fn n_fold_examples() {
        let ex = &bundled_examples()[0].1;
        let lim = Limits::default();
        let one = n_fold_output(ex.legal(), &[1], &[0], &lim).unwrap();
        assert_eq!(&one, ex.legal().output(1, 0));

        let two = n_fold_output(ex.legal(), &[0, 1], &[0, 1], &lim).unwrap();
        let expected = crate::qmath::tensor(&DensityOp::basis(2, 0).unwrap(), &DensityOp::basis(2, 1).unwrap()).unwrap();
        assert!(max_abs_diff(two.matrix(), expected.matrix()) < 1e-15);

        let long = n_fold_output(ex.legal(), &[0, 1, 1, 0], &[1, 0, 1, 1], &lim).unwrap();
        assert!((long.matrix().trace().re - 1.0).abs() < 1e-12);
        let s: f64 = [(0, 1), (1, 0), (1, 1), (0, 1)]
            .iter()
            .map(|&(t, a)| von_neumann_entropy(ex.legal().output(t, a), 2.0).unwrap())
            .sum();
        assert!((von_neumann_entropy(&long, 2.0).unwrap() - s).abs() < 1e-9);

        let t = vec![0; 11];
        assert!(matches!(
            n_fold_output(ex.legal(), &t, &t, &lim),
            Err(Error::Capacity { .. })
        ));
        let empty = n_fold_output(ex.legal(), &[], &[], &lim).unwrap();
        assert_eq!(empty.dim(), 1);
    }

    #[test]
    fn product_of_examples() {
        let ex = bundled_examples();
        let (w, wp) = (&ex[0].1, &ex[1].1);
        let p = product_avwc(w, wp, &Limits::default()).unwrap();
        assert_eq!(p.alphabet().len(), 4);
        assert_eq!(p.theta().len(), 4);
        assert_eq!((p.legal_dim(), p.wiretap_dim()), (4, 4));

        let a = p.legal().channel(0).symbol_index("(0,1)").unwrap();
        let t = p.theta().iter().position(|s| s == "(1,2)").unwrap();
        let oracle = w.legal().output(0, 0).matrix().kronecker(wp.legal().output(1, 1).matrix());
        assert!(max_abs_diff(p.legal().output(t, a).matrix(), &oracle) < 1e-15);
    }

    #[test]
    fn product_with_trivial_channel_is_a_copy() {
        let ex = &bundled_examples()[0].1;
        let one = || CqFamily::from_states(vec![vec![DensityOp::basis(1, 0).unwrap()]]).unwrap();
        let trivial = Avwc::new("trivial", one(), one()).unwrap();
        let p = product_avwc(ex, &trivial, &Limits::default()).unwrap();
        for t in 0..2 {
            for a in 0..2 {
                assert_eq!(p.legal().output(t, a), ex.legal().output(t, a));
                assert_eq!(p.wiretap().output(t, a), ex.wiretap().output(t, a));
            }
        }
    }

    #[test]
    fn sequence_indexing_is_lexicographic() {
        assert_eq!(index_to_sequence(0, 2, 3), vec![0, 0, 0]);
        assert_eq!(index_to_sequence(1, 2, 3), vec![0, 0, 1]);
        assert_eq!(index_to_sequence(6, 2, 3), vec![1, 1, 0]);
        assert_eq!(index_to_sequence(5, 3, 2), vec![1, 2]);
    }
}
