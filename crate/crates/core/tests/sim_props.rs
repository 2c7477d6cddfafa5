//! Code evaluation against direct formulas, and the proof-chain identities.

mod common;

use avwc::avc::{index_to_sequence, Avwc, Correlation, CqFamily};
use avwc::cli::{example_one, example_two};
use avwc::qmath::{holevo_chi, CMatrix, DensityOp, Ensemble, SimplexDist, C64};
use avwc::sim::{
    basis_decoders, compose_prefix, composed_error_check, composed_leakage_check, corr_code_eval, derandomize_experiment,
    error_prob, expected_error_under_tau, leakage, worst_case, Code, CorrCode, JammerSweep,
};
use common::{distinct_codewords, random_code, random_encoder, random_family, random_povm, rng};
use rand::Rng;

/// `W_{t_1}(a_1) (x) ... (x) W_{t_n}(a_n)` by explicit Kronecker products.
fn word_state(f: &CqFamily, t: &[usize], a: &[usize]) -> CMatrix {
    t.iter()
        .zip(a)
        .fold(CMatrix::identity(1, 1), |acc, (&t, &a)| acc.kronecker(f.output(t, a).matrix()))
}

fn message_states(code: &Code, f: &CqFamily, t: &[usize]) -> Vec<CMatrix> {
    let n_sym = f.alphabet_size();
    code.encoder()
        .iter()
        .map(|row| {
            let d = f.out_dim().pow(code.n() as u32);
            let mut acc = CMatrix::zeros(d, d);
            for (w, &e) in row.iter().enumerate() {
                if e > 0.0 {
                    acc += word_state(f, t, &index_to_sequence(w, n_sym, code.n())).scale(e);
                }
            }
            acc
        })
        .collect()
}

fn error_oracle(code: &Code, f: &CqFamily, t: &[usize]) -> f64 {
    let states = message_states(code, f, t);
    let correct: f64 = states
        .iter()
        .zip(code.decoders())
        .map(|(s, d)| (s * d).trace().re)
        .sum();
    1.0 - correct / code.messages() as f64
}

fn leakage_oracle(code: &Code, f: &CqFamily, t: &[usize]) -> f64 {
    let states = message_states(code, f, t)
        .into_iter()
        .map(|m| DensityOp::new(m).unwrap())
        .collect();
    holevo_chi(&Ensemble::new(SimplexDist::uniform(code.messages()).unwrap(), states).unwrap(), 2.0).unwrap()
}

fn random_small_channel(r: &mut rand_chacha::ChaCha8Rng) -> Avwc {
    let k = r.random_range(1..=2);
    Avwc::new("r", random_family(r, k, 2, 2), random_family(r, k, 2, 2)).unwrap()
}

#[test]
fn evaluations_match_direct_formulas() {
    let mut r = rng(40);
    for case in 0..60 {
        let ch = random_small_channel(&mut r);
        let n = r.random_range(1..=3);
        let j = r.random_range(1..=4);
        let code = random_code(&mut r, n, 2, 2, j);
        for ti in 0..ch.theta().len().pow(n as u32) {
            let t = index_to_sequence(ti, ch.theta().len(), n);
            let e = error_prob(&code, &ch, &t).unwrap();
            let l = leakage(&code, &ch, &t).unwrap();
            assert!((e - error_oracle(&code, ch.legal(), &t)).abs() < 1e-12, "case {case}");
            assert!((l - leakage_oracle(&code, ch.wiretap(), &t)).abs() < 1e-10, "case {case}");
            assert!((0.0..=1.0).contains(&e));
            assert!(l >= 0.0 && l <= (j as f64).log2() + 1e-10);
        }
    }
}

#[test]
fn deterministic_encoder_reproduces_codeword_formula() {
    let mut r = rng(41);
    for _ in 0..60 {
        let ch = random_small_channel(&mut r);
        let n = r.random_range(1..=3);
        let words = 2usize.pow(n as u32);
        let j = r.random_range(1..=words.min(4));
        let cw: Vec<usize> = (0..j).map(|_| r.random_range(0..words)).collect();
        let code = Code::deterministic(n, 2, &cw, random_povm(&mut r, j, words)).unwrap();
        let t: Vec<usize> = (0..n).map(|_| r.random_range(0..ch.theta().len())).collect();
        // 1 - (1/J) sum_j tr(W_t(x_j) D_j)
        let direct: f64 = 1.0
            - cw.iter()
                .zip(code.decoders())
                .map(|(&w, d)| (word_state(ch.legal(), &t, &index_to_sequence(w, 2, n)) * d).trace().re)
                .sum::<f64>()
                / j as f64;
        assert!((error_prob(&code, &ch, &t).unwrap() - direct).abs() < 1e-12);
    }
}

#[test]
fn trivial_decoders_and_constant_encoders() {
    let mut r = rng(42);
    for _ in 0..50 {
        let ch = random_small_channel(&mut r);
        let n = r.random_range(1..=2);
        let j = r.random_range(1..=4);
        let words = 2usize.pow(n as u32);
        let d = 2usize.pow(n as u32);
        let uniform = vec![CMatrix::identity(d, d).unscale(j as f64); j];
        let code = Code::new(n, random_encoder(&mut r, j, words), uniform).unwrap();
        let t = vec![0; n];
        assert!((error_prob(&code, &ch, &t).unwrap() - (1.0 - 1.0 / j as f64)).abs() < 1e-12);

        let row = random_encoder(&mut r, 1, words).remove(0);
        let constant = Code::new(n, vec![row; j], random_povm(&mut r, j, d)).unwrap();
        assert!(leakage(&constant, &ch, &t).unwrap().abs() < 1e-12);
    }
    let single = Code::new(1, vec![vec![0.5, 0.5]], vec![CMatrix::identity(2, 2)]).unwrap();
    assert_eq!(error_prob(&single, &example_one(), &[0]).unwrap(), 0.0);
}

#[test]
fn basis_code_on_example_two_errs_one_quarter() {
    let code = Code::deterministic(1, 2, &[0, 1], basis_decoders(2, 2, &[0, 1]).unwrap()).unwrap();
    for t in 0..2 {
        assert!((error_prob(&code, &example_two(), &[t]).unwrap() - 0.25).abs() < 1e-15);
    }
}

#[test]
fn omniscient_and_blind_wiretappers() {
    let mut r = rng(43);
    let (ex1, ex2) = (example_one(), example_two());
    for _ in 0..60 {
        let n = r.random_range(1..=3);
        let words = 2usize.pow(n as u32);
        let j = r.random_range(1..=words.min(4));
        let cw = distinct_codewords(&mut r, j, words);
        let code = Code::deterministic(n, 2, &cw, random_povm(&mut r, j, words)).unwrap();
        let t: Vec<usize> = (0..n).map(|_| r.random_range(0..2)).collect();
        assert!((leakage(&code, &ex2, &t).unwrap() - (j as f64).log2()).abs() < 1e-10);
        assert!(leakage(&code, &ex1, &t).unwrap().abs() < 1e-12);
        // stochastic encoders too are invisible through a constant wiretap channel
        let stoch = random_code(&mut r, n, 2, 2, j);
        assert!(leakage(&stoch, &ex1, &t).unwrap().abs() < 1e-12);
    }
}

fn mixable() -> CqFamily {
    let (zero, one) = (DensityOp::basis(2, 0).unwrap(), DensityOp::basis(2, 1).unwrap());
    CqFamily::from_states(vec![vec![zero.clone(), one.clone()], vec![one, zero]]).unwrap()
}

#[test]
fn symmetrizing_jammer_forces_chance_error() {
    let fam = mixable();
    let ch = Avwc::new("mixable", fam.clone(), fam.clone()).unwrap();
    let sigma = SimplexDist::uniform(2).unwrap();
    let mut r = rng(44);
    for _ in 0..60 {
        let n = r.random_range(1..=3);
        let j = r.random_range(1..=4);
        let code = random_code(&mut r, n, 2, 2, j);
        let v = expected_error_under_tau(&code, &fam, &sigma).unwrap();
        assert!((v - (1.0 - 1.0 / j as f64)).abs() < 1e-10);
        // brute force over all jammer sequences
        let brute: f64 = (0..2usize.pow(n as u32))
            .map(|ti| error_prob(&code, &ch, &index_to_sequence(ti, 2, n)).unwrap())
            .sum::<f64>()
            / 2f64.powi(n as i32);
        assert!((brute - v).abs() < 1e-10);
    }
    let err = expected_error_under_tau(&random_code(&mut r, 1, 2, 2, 2), example_one().legal(), &sigma).unwrap_err();
    match err {
        avwc::Error::Precondition { residual, .. } => assert!((residual - 0.5).abs() < 1e-12),
        other => panic!("unexpected {other}"),
    }
}

#[test]
fn exhaustive_worst_case_is_the_brute_force_maximum() {
    let mut r = rng(45);
    for _ in 0..50 {
        let ch = random_small_channel(&mut r);
        let n = r.random_range(1..=3);
        // J >= 2 so that ties between jammer sequences are not rounding noise
        let j = r.random_range(2..=3);
        let code = random_code(&mut r, n, 2, 2, j);
        let w = worst_case(&code, &ch, &JammerSweep::exhaustive()).unwrap();
        let k = ch.theta().len();
        let seqs: Vec<Vec<usize>> = (0..k.pow(n as u32)).map(|i| index_to_sequence(i, k, n)).collect();
        let errs: Vec<f64> = seqs.iter().map(|t| error_oracle(&code, ch.legal(), t)).collect();
        let max = errs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        assert!((w.max_error - max).abs() < 1e-12);
        let first = errs.iter().position(|&e| (e - max).abs() < 1e-12).unwrap();
        assert_eq!(w.t_seq, seqs[first], "{errs:?} {}", w.max_error);
        assert!(w.exact);
        let sampled = worst_case(&code, &ch, &JammerSweep::sampled(5, 9)).unwrap();
        assert!(sampled.max_error <= w.max_error + 1e-15);
        assert!(!sampled.exact);
        let again = worst_case(&code, &ch, &JammerSweep::sampled(5, 9)).unwrap();
        assert_eq!(again.t_seq, sampled.t_seq);
    }
}

#[test]
fn composition_chains_hold_on_random_codes() {
    let mut r = rng(46);
    for case in 0..50 {
        let ch = random_small_channel(&mut r);
        let k = r.random_range(1..=3);
        let j = r.random_range(1..=3);
        let outer = random_code(&mut r, 1, 2, 2, k);
        let inners: Vec<Code> = (0..k).map(|_| random_code(&mut r, 1, 2, 2, j)).collect();
        let composed = compose_prefix(&outer, &inners).unwrap();
        composed.verify_povm().unwrap();
        let sweep = JammerSweep::exhaustive();
        let err = composed_error_check(&outer, &inners, &ch, &sweep).unwrap();
        let leak = composed_leakage_check(&outer, &inners, &ch, &sweep).unwrap();
        assert!(err.min_slack >= -1e-9, "case {case}: error slack {}", err.min_slack);
        assert!(leak.min_slack >= -1e-9, "case {case}: leakage slack {}", leak.min_slack);
        for row in &err.rows {
            assert!((row.composed - error_oracle(&composed, ch.legal(), &row.t_seq)).abs() < 1e-12);
        }
    }
}

#[test]
fn composition_with_uninformative_prefix() {
    let mut r = rng(47);
    let ex1 = example_one();
    for _ in 0..50 {
        let k = r.random_range(1..=3);
        let j = r.random_range(2..=3);
        let outer = random_code(&mut r, 1, 2, 2, k);
        let inner = random_code(&mut r, 1, 2, 2, j);
        let ch = Avwc::new("mix", ex1.legal().clone(), random_family(&mut r, 2, 2, 2)).unwrap();
        // identical inner codes: the prefix carries no message information
        let same = vec![inner.clone(); k];
        let composed = compose_prefix(&outer, &same).unwrap();
        for t in [[0, 0], [0, 1], [1, 0], [1, 1]] {
            let lc = leakage(&composed, &ch, &t).unwrap();
            assert!((lc - leakage(&inner, &ch, &t[1..]).unwrap()).abs() < 1e-9);
        }
        // constant wiretap image of the prefix letter: leakage is at most the mean inner
        // leakage, with equality for a single inner code
        let inners: Vec<Code> = (0..k).map(|_| random_code(&mut r, 1, 2, 2, j)).collect();
        let composed = compose_prefix(&outer, &inners).unwrap();
        let wt = random_family(&mut r, 1, 2, 2);
        // jammer state 0 gives a constant image, state 1 the random channel `wt`
        let two = CqFamily::from_states(vec![
            vec![ex1.wiretap().output(0, 0).clone(); 2],
            (0..2).map(|a| wt.output(0, a).clone()).collect(),
        ])
        .unwrap();
        let ch2 = Avwc::new("prefix-blind", ex1.legal().clone(), two).unwrap();
        let lc = leakage(&composed, &ch2, &[0, 1]).unwrap();
        let mean: f64 = inners.iter().map(|c| leakage(c, &ch2, &[1]).unwrap()).sum::<f64>() / k as f64;
        assert!(lc <= mean + 1e-9);
        if k == 1 {
            assert!((lc - mean).abs() < 1e-9);
        }
    }
}

fn identity_channel() -> Avwc {
    let fam = CqFamily::from_states(vec![vec![DensityOp::basis(2, 0).unwrap(), DensityOp::basis(2, 1).unwrap()]]).unwrap();
    Avwc::new("identity", fam.clone(), fam).unwrap()
}

#[test]
fn derandomization_concentrates() {
    let ch = identity_channel();
    let good = Code::deterministic(1, 2, &[0, 1], basis_decoders(2, 2, &[0, 1]).unwrap()).unwrap();
    let bad = Code::deterministic(1, 2, &[0, 1], basis_decoders(2, 2, &[1, 0]).unwrap()).unwrap();
    assert_eq!(error_prob(&good, &ch, &[0]).unwrap(), 0.0);
    assert_eq!(error_prob(&bad, &ch, &[0]).unwrap(), 1.0);
    let weights = SimplexDist::uniform(2).unwrap();
    let rep = derandomize_experiment(&[good.clone(), bad], &weights, &ch, 1000, 77, &JammerSweep::exhaustive()).unwrap();
    assert!((rep.rows[0].mean_error - 0.5).abs() < 0.05);

    let one = SimplexDist::point_mass(1, 0).unwrap();
    let single = derandomize_experiment(std::slice::from_ref(&good), &one, &example_two(), 1, 3, &JammerSweep::exhaustive()).unwrap();
    for row in &single.rows {
        assert!((row.mean_error - error_prob(&good, &example_two(), &row.t_seq).unwrap()).abs() < 1e-15);
        assert!((row.mean_leakage - leakage(&good, &example_two(), &row.t_seq).unwrap()).abs() < 1e-15);
    }

    let mut r = rng(48);
    for _ in 0..20 {
        let ch = random_small_channel(&mut r);
        let family: Vec<Code> = (0..3).map(|_| random_code(&mut r, 1, 2, 2, 2)).collect();
        let w = avwc::qmath::random_distribution(3, &mut r);
        let rep = derandomize_experiment(&family, &w, &ch, 25, r.random(), &JammerSweep::exhaustive()).unwrap();
        for row in &rep.rows {
            assert!(row.mean_leakage <= row.max_individual_leakage + 1e-15);
        }
    }
}

#[test]
fn correlation_assisted_reductions() {
    let mut r = rng(49);
    for _ in 0..50 {
        let ch = random_small_channel(&mut r);
        let c0 = random_code(&mut r, 1, 2, 2, 2);
        let c1 = random_code(&mut r, 1, 2, 2, 2);
        let t = [r.random_range(0..ch.theta().len())];

        // degenerate source: one (x, y) pair
        let point = Correlation::from_table(vec![vec![1.0]]).unwrap();
        let code = CorrCode::new(1, 1, 1, vec![c0.encoder().to_vec()], vec![c0.decoders().to_vec()]).unwrap();
        let ev = corr_code_eval(&code, &ch, &point, &t).unwrap();
        assert!((ev.avg_error - error_prob(&c0, &ch, &t).unwrap()).abs() < 1e-12);
        assert!((ev.avg_leakage - leakage(&c0, &ch, &t).unwrap()).abs() < 1e-12);

        // shared uniform bit selects the code
        let perfect = Correlation::from_table(vec![vec![0.5, 0.0], vec![0.0, 0.5]]).unwrap();
        let code = CorrCode::new(
            1,
            2,
            2,
            vec![c0.encoder().to_vec(), c1.encoder().to_vec()],
            vec![c0.decoders().to_vec(), c1.decoders().to_vec()],
        )
        .unwrap();
        let ev = corr_code_eval(&code, &ch, &perfect, &t).unwrap();
        let mean = (error_prob(&c0, &ch, &t).unwrap() + error_prob(&c1, &ch, &t).unwrap()) / 2.0;
        assert!((ev.avg_error - mean).abs() < 1e-12);

        // independent source, code ignoring both halves
        let p: f64 = r.random_range(0.1..0.9);
        let q: f64 = r.random_range(0.1..0.9);
        let indep = Correlation::from_table(vec![vec![p * q, p * (1.0 - q)], vec![(1.0 - p) * q, (1.0 - p) * (1.0 - q)]]).unwrap();
        let code = CorrCode::new(
            1,
            2,
            2,
            vec![c0.encoder().to_vec(); 2],
            vec![c0.decoders().to_vec(); 2],
        )
        .unwrap();
        let ev = corr_code_eval(&code, &ch, &indep, &t).unwrap();
        assert!((ev.avg_error - error_prob(&c0, &ch, &t).unwrap()).abs() < 1e-12);
        assert!((ev.avg_leakage - leakage(&c0, &ch, &t).unwrap()).abs() < 1e-12);
    }
}

#[test]
fn povm_completeness_is_enforced() {
    let mut d = basis_decoders(2, 2, &[0, 1]).unwrap();
    d[0][(0, 0)] = C64::new(0.9, 0.0);
    assert_eq!(Code::new(1, vec![vec![1.0, 0.0], vec![0.0, 1.0]], d).unwrap_err().exit_code(), 3);
}
