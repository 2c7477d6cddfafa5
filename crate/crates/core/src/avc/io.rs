use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Avwc, Correlation, CqChannel, CqFamily};
use crate::qmath::{CMatrix, DensityOp, C64};
use crate::{Error, Result};

/// A matrix as rows of `[re, im]` pairs.
pub(crate) type MatrixDoc = Vec<Vec<[f64; 2]>>;

pub(crate) fn matrix_from_doc(doc: &MatrixDoc, what: &str) -> Result<CMatrix> {
    let rows = doc.len();
    let cols = doc.first().map_or(0, Vec::len);
    if rows == 0 || doc.iter().any(|r| r.len() != cols) {
        return Err(Error::Schema(format!("{what}: matrix rows are empty or ragged")));
    }
    Ok(CMatrix::from_fn(rows, cols, |i, j| {
        let [re, im] = doc[i][j];
        C64::new(re, im)
    }))
}

pub(crate) fn matrix_to_doc(m: &CMatrix) -> MatrixDoc {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
        .collect()
}

/// On-disk form of an [`Avwc`]: `legal` and `wiretap` map jammer state label
/// to symbol label to matrix.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelDoc {
    pub name: String,
    pub alphabet: Vec<String>,
    pub theta: Vec<String>,
    pub legal: BTreeMap<String, BTreeMap<String, MatrixDoc>>,
    pub wiretap: BTreeMap<String, BTreeMap<String, MatrixDoc>>,
}

fn family_from_doc(
    side: &str,
    alphabet: &[String],
    theta: &[String],
    map: &BTreeMap<String, BTreeMap<String, MatrixDoc>>,
) -> Result<CqFamily> {
    if let Some(extra) = map.keys().find(|k| !theta.contains(k)) {
        return Err(Error::Schema(format!("{side}: unknown jammer state {extra:?}")));
    }
    let mut channels = Vec::with_capacity(theta.len());
    for t in theta {
        let per_symbol = map
            .get(t)
            .ok_or_else(|| Error::Schema(format!("{side}: missing channel for jammer state {t:?}")))?;
        if let Some(extra) = per_symbol.keys().find(|k| !alphabet.contains(k)) {
            return Err(Error::Schema(format!("{side}[{t}]: unknown symbol {extra:?}")));
        }
        let mut states = Vec::with_capacity(alphabet.len());
        for a in alphabet {
            let what = format!("{side}[{t}][{a}]");
            let doc = per_symbol
                .get(a)
                .ok_or_else(|| Error::Schema(format!("{what}: missing output state")))?;
            states.push(DensityOp::validated(matrix_from_doc(doc, &what)?, &what)?);
        }
        channels.push(CqChannel::new(alphabet.to_vec(), states).map_err(|e| match e {
            Error::Shape(msg) => Error::Shape(format!("{side}[{t}]: {msg}")),
            other => other,
        })?);
    }
    CqFamily::new(theta.to_vec(), channels)
}

fn family_to_doc(family: &CqFamily) -> BTreeMap<String, BTreeMap<String, MatrixDoc>> {
    family
        .theta()
        .iter()
        .zip(family.channels())
        .map(|(t, ch)| {
            let per_symbol = ch
                .alphabet()
                .iter()
                .zip(ch.outputs())
                .map(|(a, s)| (a.clone(), matrix_to_doc(s.matrix())))
                .collect();
            (t.clone(), per_symbol)
        })
        .collect()
}

fn check_labels(kind: &str, labels: &[String]) -> Result<()> {
    if labels.is_empty() {
        return Err(Error::Schema(format!("{kind} is empty")));
    }
    for (i, l) in labels.iter().enumerate() {
        if labels[..i].contains(l) {
            return Err(Error::Schema(format!("{kind} repeats label {l:?}")));
        }
    }
    Ok(())
}

impl ChannelDoc {
    pub fn into_avwc(self) -> Result<Avwc> {
        check_labels("alphabet", &self.alphabet)?;
        check_labels("theta", &self.theta)?;
        let legal = family_from_doc("legal", &self.alphabet, &self.theta, &self.legal)?;
        let wiretap = family_from_doc("wiretap", &self.alphabet, &self.theta, &self.wiretap)?;
        Avwc::new(self.name, legal, wiretap)
    }

    pub fn from_avwc(ch: &Avwc) -> Self {
        ChannelDoc {
            name: ch.name().to_string(),
            alphabet: ch.alphabet().to_vec(),
            theta: ch.theta().to_vec(),
            legal: family_to_doc(ch.legal()),
            wiretap: family_to_doc(ch.wiretap()),
        }
    }
}

/// Parse and validate a channel document.
pub fn load_avwc(document: &str) -> Result<Avwc> {
    serde_json::from_str::<ChannelDoc>(document)?.into_avwc()
}

impl Avwc {
    pub fn to_document(&self) -> String {
        serde_json::to_string_pretty(&ChannelDoc::from_avwc(self)).expect("channel serializes")
    }

    pub fn load_file(path: impl AsRef<std::path::Path>) -> Result<Self> {
        load_avwc(&std::fs::read_to_string(path)?)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorrelationDoc {
    pub x_alphabet: Vec<String>,
    pub y_alphabet: Vec<String>,
    pub joint: Vec<Vec<f64>>,
}

pub fn load_correlation(document: &str) -> Result<Correlation> {
    let doc: CorrelationDoc = serde_json::from_str(document)?;
    check_labels("x_alphabet", &doc.x_alphabet)?;
    check_labels("y_alphabet", &doc.y_alphabet)?;
    Correlation::new(doc.x_alphabet, doc.y_alphabet, doc.joint)
}

impl Correlation {
    pub fn to_document(&self) -> String {
        let doc = CorrelationDoc {
            x_alphabet: self.x_alphabet().to_vec(),
            y_alphabet: self.y_alphabet().to_vec(),
            joint: self.joint().to_vec(),
        };
        serde_json::to_string_pretty(&doc).expect("correlation serializes")
    }
}
