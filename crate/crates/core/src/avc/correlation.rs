use super::{CqChannel, CqFamily};
use crate::qmath::{check_base, CMatrix, DensityOp, SIMPLEX_TOL};
use crate::{Error, Limits, Result};

/// Joint distribution `p(x, y)` of a bipartite source; rows follow `x_alphabet`.
#[derive(Debug, Clone, PartialEq)]
pub struct Correlation {
    x_alphabet: Vec<String>,
    y_alphabet: Vec<String>,
    joint: Vec<Vec<f64>>,
}

impl Correlation {
    pub fn new(x_alphabet: Vec<String>, y_alphabet: Vec<String>, joint: Vec<Vec<f64>>) -> Result<Self> {
        if x_alphabet.is_empty() || y_alphabet.is_empty() {
            return Err(Error::Shape("correlation alphabets must be nonempty".into()));
        }
        if joint.len() != x_alphabet.len() || joint.iter().any(|r| r.len() != y_alphabet.len()) {
            return Err(Error::Shape(format!(
                "joint table must be {}x{}",
                x_alphabet.len(),
                y_alphabet.len()
            )));
        }
        let mut total = 0.0;
        for (i, row) in joint.iter().enumerate() {
            for (j, &p) in row.iter().enumerate() {
                if !p.is_finite() || p < 0.0 {
                    return Err(Error::invalid_state(
                        format!("joint[{i}][{j}]"),
                        format!("entry {p} is negative or non-finite"),
                        p.abs(),
                    ));
                }
                total += p;
            }
        }
        if (total - 1.0).abs() > SIMPLEX_TOL {
            return Err(Error::invalid_state(
                "joint",
                format!("sums to {total}"),
                (total - 1.0).abs(),
            ));
        }
        Ok(Correlation {
            x_alphabet,
            y_alphabet,
            joint,
        })
    }

    /// Correlation with numeric labels `0..`.
    pub fn from_table(joint: Vec<Vec<f64>>) -> Result<Self> {
        let nx = joint.len();
        let ny = joint.first().map_or(0, Vec::len);
        Self::new(
            (0..nx).map(|i| i.to_string()).collect(),
            (0..ny).map(|i| i.to_string()).collect(),
            joint,
        )
    }

    pub fn x_alphabet(&self) -> &[String] {
        &self.x_alphabet
    }

    pub fn y_alphabet(&self) -> &[String] {
        &self.y_alphabet
    }

    pub fn joint(&self) -> &[Vec<f64>] {
        &self.joint
    }

    pub fn p(&self, x: usize, y: usize) -> f64 {
        self.joint[x][y]
    }

    pub fn marginal_x(&self) -> Vec<f64> {
        self.joint.iter().map(|r| r.iter().sum()).collect()
    }

    pub fn marginal_y(&self) -> Vec<f64> {
        (0..self.y_alphabet.len())
            .map(|j| self.joint.iter().map(|r| r[j]).sum())
            .collect()
    }

    /// `p(x^n, y^n) = prod_i p(x_i, y_i)`.
    pub fn sequence_probability(&self, xs: &[usize], ys: &[usize]) -> f64 {
        xs.iter().zip(ys).map(|(&x, &y)| self.joint[x][y]).product()
    }
}

/// Classical mutual information `I(X;Y)` of the joint table.
pub fn mutual_information(corr: &Correlation, base: f64) -> Result<f64> {
    let ln_base = check_base(base)?;
    let px = corr.marginal_x();
    let py = corr.marginal_y();
    let mut acc = 0.0;
    for (i, row) in corr.joint.iter().enumerate() {
        for (j, &p) in row.iter().enumerate() {
            if p > 0.0 {
                acc += p * (p / (px[i] * py[j])).ln();
            }
        }
    }
    Ok((acc / ln_base).max(0.0))
}

/// The single-letter correlation-lifted channel.
///
/// Inputs are functions `f: X -> A`, enumerated in lexicographic order of the
/// value tuple `(f(x_1), ..., f(x_|X|))`. For jammer state `t` the output is
/// `sum_{x,y} p(x,y) |y><y| (x) W_t(f(x))` on `C^|Y| (x) H`.
#[derive(Debug, Clone)]
pub struct LiftedAvc {
    functions: Vec<Vec<usize>>,
    correlation: Correlation,
    base_dim: usize,
    family: CqFamily,
}

impl LiftedAvc {
    /// Value tuples of the enumerated functions.
    pub fn functions(&self) -> &[Vec<usize>] {
        &self.functions
    }

    pub fn correlation(&self) -> &Correlation {
        &self.correlation
    }

    /// The lifted family, indexed by the same jammer states as the source.
    pub fn family(&self) -> &CqFamily {
        &self.family
    }

    /// Dimension of the source channel's output space.
    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    /// Index of the function with the given value tuple.
    pub fn function_index(&self, values: &[usize]) -> Option<usize> {
        self.functions.iter().position(|f| f == values)
    }

    /// Unnormalised `y`-block `<y| U_t(f) |y>` of a lifted output.
    pub fn block(&self, t: usize, f: usize, y: usize) -> CMatrix {
        let d = self.base_dim;
        self.family
            .output(t, f)
            .matrix()
            .view((y * d, y * d), (d, d))
            .into_owned()
    }
}

pub fn lift_correlation(legal: &CqFamily, corr: &Correlation, limits: &Limits) -> Result<LiftedAvc> {
    let n_sym = legal.alphabet_size();
    let nx = corr.x_alphabet.len();
    let ny = corr.y_alphabet.len();
    let n_fun = super::checked_power(n_sym, nx, limits.max_functions, "function alphabet size")?;
    let d = legal.out_dim();
    if ny * d > limits.max_dim {
        return Err(Error::capacity("lifted output dimension", ny * d, limits.max_dim));
    }

    let functions: Vec<Vec<usize>> = (0..n_fun)
        .map(|i| super::index_to_sequence(i, n_sym, nx))
        .collect();
    let labels: Vec<String> = functions
        .iter()
        .map(|f| {
            let vals: Vec<&str> = f.iter().map(|&a| legal.alphabet()[a].as_str()).collect();
            format!("f({})", vals.join(","))
        })
        .collect();

    let mut channels = Vec::with_capacity(legal.num_states());
    for t in 0..legal.num_states() {
        let states = functions
            .iter()
            .map(|f| {
                let mut out = CMatrix::zeros(ny * d, ny * d);
                for y in 0..ny {
                    let mut block = out.view_mut((y * d, y * d), (d, d));
                    for (x, &a) in f.iter().enumerate() {
                        let p = corr.joint[x][y];
                        if p != 0.0 {
                            block += legal.output(t, a).matrix().scale(p);
                        }
                    }
                }
                DensityOp::from_trusted(out)
            })
            .collect();
        channels.push(CqChannel::new(labels.clone(), states)?);
    }
    Ok(LiftedAvc {
        functions,
        correlation: corr.clone(),
        base_dim: d,
        family: CqFamily::new(legal.theta().to_vec(), channels)?,
    })
}
