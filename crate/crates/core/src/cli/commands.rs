use std::fs;
use std::path::Path;

use serde_json::{json, Map, Value};

use super::{bundled_examples, sig9, Command, RunConfig, RunOutput, SweepArg};
use crate::avc::{product_avwc, Avwc};
use crate::bounds::{
    chi_derivative, chi_gradient_check, dichotomy_report, min_chi_over_jammer, BoundOptions, DichotomyReport,
};
use crate::qmath::SimplexDist;
use crate::sim::{basis_decoders, leakage, load_code, worst_case, Code, JammerSweep};
use crate::sym::check_symmetrizable;
use crate::{Error, Result};

/// Execute a validated configuration, writing report files when `--out` is set.
pub fn run(config: &RunConfig) -> Result<RunOutput> {
    config.validate()?;
    let report = match &config.command {
        Command::CheckSym { file, tol, witness } => check_sym(file, *tol, witness.as_deref())?,
        Command::Bound { file, grid, leakage_order, base } => {
            let opts = BoundOptions {
                grid: *grid,
                leakage_order: *leakage_order,
                base: *base,
                ..BoundOptions::default()
            };
            let ch = load_channel(file)?;
            let r = crate::bounds::secrecy_lower_bound(&ch, &opts)?;
            json!({ "command": "bound", "channel": ch.name(), "base": base, "bound": r })
        }
        Command::Simulate { channel, code, sweep, cap, seed } => {
            let ch = load_channel(channel)?;
            let code = in_file(code, fs::read_to_string(code).map_err(Error::from).and_then(|s| load_code(&s)))?;
            let sweep = match sweep {
                SweepArg::Exhaustive => JammerSweep { cap: *cap, ..JammerSweep::exhaustive() },
                SweepArg::Sampled => JammerSweep::sampled(*cap, seed.expect("validated")),
            };
            let w = worst_case(&code, &ch, &sweep)?;
            json!({
                "command": "simulate",
                "channel": ch.name(),
                "n": code.n(),
                "messages": code.messages(),
                "sweep": { "mode": sweep.mode, "cap": sweep.cap, "seed": seed },
                "max_error": w.max_error,
                "error_t_seq": labels(&ch, &w.t_seq),
                "max_leakage": w.max_leakage,
                "leakage_t_seq": labels(&ch, &w.leakage_t_seq),
                "evaluated": w.evaluated,
                "exact": w.exact,
            })
        }
        Command::Superactivate { file1, file2, grid } => {
            let opts = BoundOptions { grid: *grid, ..BoundOptions::default() };
            let c1 = load_channel(file1)?;
            let c2 = load_channel(file2)?;
            superactivate(&c1, &c2, &opts)?
        }
        Command::Reproduce => reproduce()?,
    };
    let report = round_numbers(report);
    let mut summary = String::new();
    flatten("", &report, &mut summary);
    let text = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
    if let Some(dir) = &config.out {
        fs::create_dir_all(dir)?;
        let name = config.command.name();
        fs::write(dir.join(format!("{name}.json")), &text)?;
        fs::write(dir.join(format!("{name}.tsv")), &summary)?;
    }
    Ok(RunOutput { report: text, summary })
}

/// Prefix input errors with the offending file.
fn in_file<T>(path: &Path, r: Result<T>) -> Result<T> {
    let at = |m: String| format!("{}: {m}", path.display());
    r.map_err(|e| match e {
        Error::Parse(m) => Error::Parse(at(m)),
        Error::Schema(m) => Error::Schema(at(m)),
        Error::Io(e) => Error::Io(std::io::Error::new(e.kind(), at(e.to_string()))),
        other => other,
    })
}

fn load_channel(path: &Path) -> Result<Avwc> {
    in_file(path, Avwc::load_file(path))
}

fn labels(ch: &Avwc, seq: &[usize]) -> Vec<String> {
    seq.iter().map(|&t| ch.theta()[t].clone()).collect()
}

fn check_sym(file: &Path, tol: f64, witness: Option<&Path>) -> Result<Value> {
    let ch = load_channel(file)?;
    let res = check_symmetrizable(ch.legal(), tol)?;
    if let Some(path) = witness {
        fs::write(path, res.witness_document(ch.legal()) + "\n")?;
    }
    Ok(json!({
        "command": "check-sym",
        "channel": ch.name(),
        "symmetrizable": res.symmetrizable,
        "residual": res.residual,
        "lp_objective": res.lp_objective,
        "tolerance": res.tolerance,
        "tau": res.witness.as_ref().map(|w| w.tau().to_vec()),
    }))
}

fn dichotomy_json(ch: &Avwc, d: &DichotomyReport) -> Value {
    json!({
        "name": ch.name(),
        "symmetrizable": d.symmetrizable,
        "sym_residual": d.sym.residual,
        "random_lb": d.random_lb,
        "deterministic_secrecy_lb": d.deterministic_secrecy_lb,
    })
}

fn superactivate(c1: &Avwc, c2: &Avwc, opts: &BoundOptions) -> Result<Value> {
    let prod = product_avwc(c1, c2, &opts.limits)?;
    let mut parts = Vec::new();
    let mut lbs = Vec::new();
    for ch in [c1, c2, &prod] {
        let d = dichotomy_report(ch, opts)?;
        lbs.push(d.deterministic_secrecy_lb);
        parts.push(dichotomy_json(ch, &d));
    }
    Ok(json!({
        "command": "superactivate",
        "factor1": parts[0],
        "factor2": parts[1],
        "product": parts[2],
        "superactivation": lbs[0] == 0.0 && lbs[1] == 0.0 && lbs[2] > 0.0,
    }))
}

/// Deterministic two-letter code over a binary alphabet with basis decoding.
fn two_letter_code(messages: usize) -> Result<Code> {
    let (codewords, assign): (&[usize], &[usize]) = match messages {
        2 => (&[0, 3], &[0, 0, 1, 1]),
        _ => (&[0, 1, 2, 3], &[0, 1, 2, 3]),
    };
    Code::deterministic(2, 2, codewords, basis_decoders(4, messages, assign)?)
}

fn reproduce() -> Result<Value> {
    let examples = bundled_examples();
    let (ex1, ex2) = (&examples[0].1, &examples[1].1);
    let opts = BoundOptions::default();
    let uniform = SimplexDist::uniform(2)?;

    let (q, min_chi) = min_chi_over_jammer(ex1.legal(), &uniform, &opts)?;
    let stationarity = chi_derivative(ex1.legal(), &uniform, 0.5, 2.0)?.abs();
    let gradient = chi_gradient_check(ex1.legal(), &uniform, 0.3, 1e-4)?;

    let mut sym = Map::new();
    for (name, ch) in &examples {
        let r = check_symmetrizable(ch.legal(), opts.sym_tol)?;
        sym.insert(
            name.clone(),
            json!({ "symmetrizable": r.symmetrizable, "residual": r.residual }),
        );
    }

    let mut dichotomy = Map::new();
    for (name, ch) in &examples {
        let d = dichotomy_report(ch, &opts)?;
        dichotomy.insert(name.clone(), json!(d.deterministic_secrecy_lb));
    }

    let mut leak = Vec::new();
    for j in [2usize, 4] {
        let code = two_letter_code(j)?;
        let t_seq = [0, 0];
        leak.push(json!({
            "n": 2,
            "messages": j,
            "log2_messages": (j as f64).log2(),
            "example2_leakage": leakage(&code, ex2, &t_seq)?,
            "example1_leakage": leakage(&code, ex1, &t_seq)?,
        }));
    }

    Ok(json!({
        "command": "reproduce",
        "example1_min_chi": min_chi,
        "example1_argmin_q": q.probs()[0],
        "example1_stationarity_residual": stationarity,
        "example1_gradient_check_q0.3": gradient,
        "symmetrizable": sym,
        "deterministic_secrecy_lb": dichotomy,
        "leakage_demo": leak,
    }))
}

fn round_numbers(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = sig9(n.as_f64().expect("f64"));
            serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
        }
        Value::Array(a) => Value::Array(a.into_iter().map(round_numbers).collect()),
        Value::Object(m) => Value::Object(m.into_iter().map(|(k, v)| (k, round_numbers(v))).collect()),
        other => other,
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("null".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.as_f64().map_or_else(|| n.to_string(), super::fmt9)),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

/// `key<TAB>value` lines; nested keys are dot-joined, scalar arrays comma-joined.
fn flatten(prefix: &str, v: &Value, out: &mut String) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) => {
            for (k, v) in m {
                flatten(&key(k), v, out);
            }
        }
        Value::Array(a) => {
            let flat: Option<Vec<String>> = a.iter().map(scalar).collect();
            match flat {
                Some(items) => out.push_str(&format!("{prefix}\t{}\n", items.join(","))),
                None => {
                    for (i, v) in a.iter().enumerate() {
                        flatten(&key(&i.to_string()), v, out);
                    }
                }
            }
        }
        _ => out.push_str(&format!("{prefix}\t{}\n", scalar(v).expect("scalar"))),
    }
}
