use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::avc::{matrix_from_doc, matrix_to_doc, MatrixDoc};
use crate::qmath::{hermitian_eigenvalues, max_abs_diff, CMatrix, C64, PSD_TOL, SIMPLEX_TOL};
use crate::{Error, Result};

/// Tolerance on `sum_j D_j = I`.
pub const POVM_TOL: f64 = 1e-8;

fn validate_encoder(encoder: &[Vec<f64>], what: &str) -> Result<usize> {
    let cols = encoder.first().map_or(0, Vec::len);
    if encoder.is_empty() || cols == 0 || encoder.iter().any(|r| r.len() != cols) {
        return Err(Error::Shape(format!("{what}: encoder must be a nonempty rectangular matrix")));
    }
    for (j, row) in encoder.iter().enumerate() {
        if let Some(bad) = row.iter().find(|v| !v.is_finite() || **v < 0.0) {
            return Err(Error::invalid_state(
                format!("{what} encoder row {j}"),
                format!("entry {bad} is negative"),
                bad.abs(),
            ));
        }
        let s: f64 = row.iter().sum();
        if (s - 1.0).abs() > SIMPLEX_TOL {
            return Err(Error::invalid_state(
                format!("{what} encoder row {j}"),
                format!("sums to {s}"),
                (s - 1.0).abs(),
            ));
        }
    }
    Ok(cols)
}

/// Check that `decoders` is a POVM; returns the dimension.
pub(crate) fn validate_povm(decoders: &[CMatrix], what: &str) -> Result<usize> {
    let d = decoders.first().map_or(0, CMatrix::nrows);
    if decoders.is_empty() || d == 0 || decoders.iter().any(|m| m.shape() != (d, d)) {
        return Err(Error::Shape(format!("{what}: decoders must be equal-size square matrices")));
    }
    let mut total = CMatrix::zeros(d, d);
    for (j, m) in decoders.iter().enumerate() {
        let asym = max_abs_diff(m, &m.adjoint());
        if asym > crate::qmath::HERMITIAN_TOL {
            return Err(Error::invalid_state(format!("{what} decoder {j}"), "not Hermitian", asym));
        }
        let min = hermitian_eigenvalues(m)[0];
        if min < -PSD_TOL {
            return Err(Error::invalid_state(
                format!("{what} decoder {j}"),
                format!("negative eigenvalue {min}"),
                -min,
            ));
        }
        total += m;
    }
    let gap = max_abs_diff(&total, &CMatrix::identity(d, d));
    if gap > POVM_TOL {
        return Err(Error::invalid_state(format!("{what} decoders"), "do not sum to identity", gap));
    }
    Ok(d)
}

/// An `(n, J)` code: stochastic encoder rows `E(.|j)` over `A^n` in
/// lexicographic order, and a POVM `{D_j}` on the `n`-letter output space.
#[derive(Debug, Clone, PartialEq)]
pub struct Code {
    n: usize,
    encoder: Vec<Vec<f64>>,
    decoders: Vec<CMatrix>,
}

impl Code {
    pub fn new(n: usize, encoder: Vec<Vec<f64>>, decoders: Vec<CMatrix>) -> Result<Self> {
        validate_encoder(&encoder, "code")?;
        validate_povm(&decoders, "code")?;
        if encoder.len() != decoders.len() {
            return Err(Error::Shape(format!(
                "{} encoder rows but {} decoders",
                encoder.len(),
                decoders.len()
            )));
        }
        Ok(Code { n, encoder, decoders })
    }

    /// Deterministic encoder: message `j` is sent as the word with lexicographic index `codewords[j]`.
    pub fn deterministic(n: usize, alphabet_size: usize, codewords: &[usize], decoders: Vec<CMatrix>) -> Result<Self> {
        let cols = alphabet_size.pow(n as u32);
        let encoder = codewords
            .iter()
            .map(|&w| {
                if w >= cols {
                    return Err(Error::Shape(format!("codeword index {w} out of range {cols}")));
                }
                let mut row = vec![0.0; cols];
                row[w] = 1.0;
                Ok(row)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, encoder, decoders)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of messages `J`.
    pub fn messages(&self) -> usize {
        self.encoder.len()
    }

    pub fn encoder(&self) -> &[Vec<f64>] {
        &self.encoder
    }

    pub fn decoders(&self) -> &[CMatrix] {
        &self.decoders
    }

    /// Number of encoder columns, `|A|^n`.
    pub fn words(&self) -> usize {
        self.encoder[0].len()
    }

    pub fn dim(&self) -> usize {
        self.decoders[0].nrows()
    }

    pub fn verify_povm(&self) -> Result<()> {
        validate_povm(&self.decoders, "code").map(|_| ())
    }
}

/// Projective decoder in the computational basis of a `dim`-dimensional
/// space: basis vector `k` is decoded as message `assign[k]`.
pub fn basis_decoders(dim: usize, messages: usize, assign: &[usize]) -> Result<Vec<CMatrix>> {
    if assign.len() != dim || assign.iter().any(|&j| j >= messages) {
        return Err(Error::Shape(format!(
            "basis assignment must map {dim} vectors into {messages} messages"
        )));
    }
    let mut out = vec![CMatrix::zeros(dim, dim); messages];
    for (k, &j) in assign.iter().enumerate() {
        out[j][(k, k)] = C64::new(1.0, 0.0);
    }
    Ok(out)
}

/// A correlation-assisted code: the sender's encoder depends on `x^n`, the
/// receiver's decoder on `y^n`. Both are indexed lexicographically.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrCode {
    n: usize,
    messages: usize,
    encoders: Vec<Vec<Vec<f64>>>,
    decoders: Vec<Vec<CMatrix>>,
}

impl CorrCode {
    pub fn new(
        n: usize,
        x_size: usize,
        y_size: usize,
        encoders: Vec<Vec<Vec<f64>>>,
        decoders: Vec<Vec<CMatrix>>,
    ) -> Result<Self> {
        let nx = x_size.pow(n as u32);
        let ny = y_size.pow(n as u32);
        if encoders.len() != nx || decoders.len() != ny {
            return Err(Error::Shape(format!(
                "expected {nx} encoders and {ny} decoder sets, got {} and {}",
                encoders.len(),
                decoders.len()
            )));
        }
        let messages = encoders[0].len();
        let mut words = None;
        for (i, e) in encoders.iter().enumerate() {
            let cols = validate_encoder(e, &format!("encoder {i}"))?;
            if e.len() != messages || *words.get_or_insert(cols) != cols {
                return Err(Error::Shape(format!("encoder {i} has a different shape")));
            }
        }
        let mut dim = None;
        for (i, d) in decoders.iter().enumerate() {
            let di = validate_povm(d, &format!("decoder set {i}"))?;
            if d.len() != messages || *dim.get_or_insert(di) != di {
                return Err(Error::Shape(format!("decoder set {i} has a different shape")));
            }
        }
        Ok(CorrCode {
            n,
            messages,
            encoders,
            decoders,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn messages(&self) -> usize {
        self.messages
    }

    pub fn encoders(&self) -> &[Vec<Vec<f64>>] {
        &self.encoders
    }

    pub fn decoders(&self) -> &[Vec<CMatrix>] {
        &self.decoders
    }

    /// The plain code used when the source emits `(x^n, y^n)`.
    pub fn code_for(&self, x_idx: usize, y_idx: usize) -> Code {
        Code {
            n: self.n,
            encoder: self.encoders[x_idx].clone(),
            decoders: self.decoders[y_idx].clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeDoc {
    pub n: usize,
    #[serde(rename = "J")]
    pub j: usize,
    pub encoder: Vec<Vec<f64>>,
    pub decoders: Vec<MatrixDoc>,
}

pub fn load_code(document: &str) -> Result<Code> {
    let doc: CodeDoc = serde_json::from_str(document)?;
    if doc.encoder.len() != doc.j || doc.decoders.len() != doc.j {
        return Err(Error::Schema(format!(
            "J = {} but encoder has {} rows and there are {} decoders",
            doc.j,
            doc.encoder.len(),
            doc.decoders.len()
        )));
    }
    let decoders = doc
        .decoders
        .iter()
        .enumerate()
        .map(|(j, m)| matrix_from_doc(m, &format!("decoders[{j}]")))
        .collect::<Result<Vec<_>>>()?;
    Code::new(doc.n, doc.encoder, decoders)
}

impl Code {
    pub fn to_document(&self) -> String {
        let doc = CodeDoc {
            n: self.n,
            j: self.messages(),
            encoder: self.encoder.clone(),
            decoders: self.decoders.iter().map(matrix_to_doc).collect(),
        };
        serde_json::to_string_pretty(&doc).expect("code serializes")
    }
}

/// CorrCode file: encoders keyed by comma-joined `x^n` labels, decoders by `y^n` labels.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorrCodeDoc {
    pub n: usize,
    #[serde(rename = "J")]
    pub j: usize,
    pub x_alphabet: Vec<String>,
    pub y_alphabet: Vec<String>,
    pub encoders: BTreeMap<String, Vec<Vec<f64>>>,
    pub decoders: BTreeMap<String, Vec<MatrixDoc>>,
}

fn sequence_keys(alphabet: &[String], n: usize) -> Vec<String> {
    let total = alphabet.len().pow(n as u32);
    (0..total)
        .map(|i| {
            crate::avc::index_to_sequence(i, alphabet.len(), n)
                .iter()
                .map(|&k| alphabet[k].as_str())
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect()
}

pub fn load_corr_code(document: &str) -> Result<CorrCode> {
    let doc: CorrCodeDoc = serde_json::from_str(document)?;
    let x_keys = sequence_keys(&doc.x_alphabet, doc.n);
    let y_keys = sequence_keys(&doc.y_alphabet, doc.n);
    if doc.encoders.len() != x_keys.len() || doc.decoders.len() != y_keys.len() {
        return Err(Error::Schema(format!(
            "expected {} encoder keys and {} decoder keys",
            x_keys.len(),
            y_keys.len()
        )));
    }
    let encoders = x_keys
        .iter()
        .map(|k| {
            doc.encoders
                .get(k)
                .cloned()
                .ok_or_else(|| Error::Schema(format!("encoders: missing key {k:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    let decoders = y_keys
        .iter()
        .map(|k| {
            let set = doc
                .decoders
                .get(k)
                .ok_or_else(|| Error::Schema(format!("decoders: missing key {k:?}")))?;
            set.iter()
                .enumerate()
                .map(|(j, m)| matrix_from_doc(m, &format!("decoders[{k}][{j}]")))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let code = CorrCode::new(doc.n, doc.x_alphabet.len(), doc.y_alphabet.len(), encoders, decoders)?;
    if code.messages() != doc.j {
        return Err(Error::Schema(format!("J = {} but code has {} messages", doc.j, code.messages())));
    }
    Ok(code)
}

impl CorrCode {
    pub fn to_document(&self, x_alphabet: &[String], y_alphabet: &[String]) -> String {
        let doc = CorrCodeDoc {
            n: self.n,
            j: self.messages,
            x_alphabet: x_alphabet.to_vec(),
            y_alphabet: y_alphabet.to_vec(),
            encoders: sequence_keys(x_alphabet, self.n).into_iter().zip(self.encoders.iter().cloned()).collect(),
            decoders: sequence_keys(y_alphabet, self.n)
                .into_iter()
                .zip(self.decoders.iter().map(|s| s.iter().map(matrix_to_doc).collect()))
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("corr code serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn code_validation() {
        let id = vec![CMatrix::identity(2, 2)];
        assert!(Code::new(1, vec![vec![0.5, 0.5]], id.clone()).is_ok());
        assert!(Code::new(1, vec![vec![0.5, 0.6]], id.clone()).is_err());
        assert!(Code::new(1, vec![vec![1.2, -0.2]], id).is_err());
        let partial = basis_decoders(2, 2, &[0, 1]).unwrap();
        let mut broken = partial.clone();
        broken[1] = broken[1].scale(0.5);
        assert!(matches!(
            Code::new(1, vec![vec![1.0, 0.0], vec![0.0, 1.0]], broken),
            Err(Error::InvalidState { .. })
        ));
        assert!(Code::new(1, vec![vec![1.0, 0.0]], partial).is_err());
    }

    #[test]
    fn code_document_round_trip() {
        let code = Code::deterministic(2, 2, &[0, 3], basis_decoders(4, 2, &[0, 0, 1, 1]).unwrap()).unwrap();
        let back = load_code(&code.to_document()).unwrap();
        assert_eq!(back, code);
        let bad = code.to_document().replace("\"J\": 2", "\"J\": 3");
        assert!(matches!(load_code(&bad), Err(Error::Schema(_))));
    }

    #[test]
    fn corr_code_document_round_trip() {
        let xs = vec!["a".to_string(), "b".to_string()];
        let ys = vec!["u".to_string()];
        let enc = vec![vec![vec![1.0, 0.0]], vec![vec![0.0, 1.0]]];
        let dec = vec![vec![CMatrix::identity(2, 2)]];
        let code = CorrCode::new(1, 2, 1, enc, dec).unwrap();
        let doc = code.to_document(&xs, &ys);
        assert!(doc.contains("\"b\""));
        assert_eq!(load_corr_code(&doc).unwrap(), code);
    }
}
