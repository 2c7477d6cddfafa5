//! Secrecy-bound search: oracles, grid consistency and relabeling invariance.

mod common;

use avwc::avc::{mixture_channel, Avwc, CqFamily};
use avwc::bounds::{
    chi_derivative, chi_gradient_check, leakage_term, min_chi_over_jammer, secrecy_lower_bound, BoundOptions,
};
use avwc::cli::{example_one, example_two};
use avwc::qmath::{holevo_chi, random_distribution, Ensemble, SimplexDist};
use common::{random_family, rng};
use rand::Rng;

fn chi_at(legal: &CqFamily, p: &SimplexDist, q: &SimplexDist) -> f64 {
    let u = mixture_channel(legal, q).unwrap();
    holevo_chi(&Ensemble::new(p.clone(), u.outputs().to_vec()).unwrap(), 2.0).unwrap()
}

fn random_channel(seed: u64) -> Avwc {
    let mut r = rng(seed);
    Avwc::new("r", random_family(&mut r, 2, 2, 2), random_family(&mut r, 2, 2, 2)).unwrap()
}

#[test]
fn inner_minimum_matches_fine_scan() {
    let opts = BoundOptions::default();
    let mut r = rng(30);
    for seed in 0..40 {
        let ch = random_channel(seed);
        let p = random_distribution(2, &mut r);
        let (q, v) = min_chi_over_jammer(ch.legal(), &p, &opts).unwrap();
        let scan = (0..=10_000)
            .map(|i| {
                let q = i as f64 / 10_000.0;
                chi_at(ch.legal(), &p, &SimplexDist::new(vec![q, 1.0 - q]).unwrap())
            })
            .fold(f64::INFINITY, f64::min);
        assert!(v <= scan + 1e-12, "seed {seed}: {v} > scan {scan}");
        assert!(v >= scan - 1e-6, "seed {seed}: {v} << scan {scan}");
        assert!((chi_at(ch.legal(), &p, &q) - v).abs() < 1e-12);
    }
}

#[test]
fn minimax_sandwich_and_report_consistency() {
    let opts = BoundOptions { grid: 32, ..BoundOptions::default() };
    let mut r = rng(31);
    for seed in 100..120 {
        let ch = random_channel(seed);
        let rep = secrecy_lower_bound(&ch, &opts).unwrap();
        assert!((rep.value - (rep.legal_term - rep.leakage_term)).abs() < 1e-12);
        let p_star = SimplexDist::new(rep.argmax_p.clone()).unwrap();
        let q_star = SimplexDist::new(rep.argmin_q.clone()).unwrap();
        assert!((chi_at(ch.legal(), &p_star, &q_star) - rep.legal_term).abs() < 1e-12);
        for _ in 0..20 {
            let q = random_distribution(2, &mut r);
            assert!(rep.legal_term <= chi_at(ch.legal(), &p_star, &q) + 1e-12);
        }
        // single-letter leakage is the worst state's Holevo quantity
        let leak = (0..2)
            .map(|t| holevo_chi(&Ensemble::new(p_star.clone(), ch.wiretap().channel(t).outputs().to_vec()).unwrap(), 2.0).unwrap())
            .fold(f64::NEG_INFINITY, f64::max);
        assert!((leak - rep.leakage_term).abs() < 1e-12);
    }
}

#[test]
fn doubling_the_grid_never_loses_more_than_tolerance() {
    let coarse = BoundOptions { grid: 32, ..BoundOptions::default() };
    let fine = BoundOptions { grid: 64, ..BoundOptions::default() };
    let mut channels = vec![example_one(), example_two()];
    channels.extend((200..215).map(random_channel));
    for ch in &channels {
        let a = secrecy_lower_bound(ch, &coarse).unwrap().value;
        let b = secrecy_lower_bound(ch, &fine).unwrap().value;
        assert!(b >= a - 1e-6, "{}: grid 64 gives {b}, grid 32 gives {a}", ch.name());
    }
}

#[test]
fn relabeling_theta_permutes_the_minimiser() {
    let opts = BoundOptions::default();
    let mut channels = vec![example_one()];
    channels.extend((300..310).map(random_channel));
    for ch in &channels {
        let swapped = Avwc::new(
            ch.name(),
            ch.legal().permute_states(&[1, 0]).unwrap(),
            ch.wiretap().permute_states(&[1, 0]).unwrap(),
        )
        .unwrap();
        let a = secrecy_lower_bound(ch, &opts).unwrap();
        let b = secrecy_lower_bound(&swapped, &opts).unwrap();
        assert!((a.value - b.value).abs() < 1e-10, "{} vs {}", a.value, b.value);
        // the minimiser of the permuted family is the permuted minimiser, at matching input
        let p = SimplexDist::new(a.argmax_p.clone()).unwrap();
        let (_, va) = min_chi_over_jammer(ch.legal(), &p, &opts).unwrap();
        let (qb, vb) = min_chi_over_jammer(swapped.legal(), &p, &opts).unwrap();
        assert!((va - vb).abs() < 1e-10);
        let permuted = SimplexDist::new(vec![qb.probs()[1], qb.probs()[0]]).unwrap();
        assert!((chi_at(ch.legal(), &p, &permuted) - va).abs() < 1e-10);
    }
    let ex1 = secrecy_lower_bound(&channels[0], &opts).unwrap();
    assert!((ex1.argmin_q[0] - 0.5).abs() < 1e-6);
}

#[test]
fn example_leakage_is_constant_in_blocklength() {
    let mut r = rng(32);
    for ch in [example_one(), example_two()] {
        for _ in 0..10 {
            let p = random_distribution(2, &mut r);
            let l1 = leakage_term(ch.wiretap(), &p, 1).unwrap();
            for n in 2..=4 {
                let ln = leakage_term(ch.wiretap(), &p, n).unwrap();
                assert!((ln - l1).abs() < 1e-9, "{} n={n}: {ln} vs {l1}", ch.name());
            }
        }
    }
}

#[test]
fn example_two_leakage_dominates_legal_information() {
    // sweep P on a fine grid: legal chi never exceeds the wiretapper's
    let ch = example_two();
    let opts = BoundOptions::default();
    for i in 0..=200 {
        let x = i as f64 / 200.0;
        let p = SimplexDist::new(vec![x, 1.0 - x]).unwrap();
        let (_, legal) = min_chi_over_jammer(ch.legal(), &p, &opts).unwrap();
        let leak = leakage_term(ch.wiretap(), &p, 1).unwrap();
        assert!(legal <= leak + 1e-12, "P = {x}: {legal} > {leak}");
    }
}

#[test]
fn analytic_derivative_matches_finite_differences() {
    let mut r = rng(33);
    for seed in 0..100 {
        let ch = random_channel(400 + seed);
        let p = random_distribution(2, &mut r);
        let q: f64 = r.random_range(0.05..0.95);
        assert!(chi_gradient_check(ch.legal(), &p, q, 1e-4).unwrap() < 1e-6, "seed {seed}");
    }
    // constant family: no dependence on q
    let mut r = rng(34);
    let fam = random_family(&mut r, 1, 2, 2);
    let doubled = CqFamily::from_states(vec![
        (0..2).map(|a| fam.output(0, a).clone()).collect(),
        (0..2).map(|a| fam.output(0, a).clone()).collect(),
    ])
    .unwrap();
    for q in [0.0, 0.2, 0.5, 0.8, 1.0] {
        assert!(chi_derivative(&doubled, &SimplexDist::uniform(2).unwrap(), q, 2.0).unwrap().abs() < 1e-12);
    }
}

#[test]
fn gradient_check_rejects_boundary_points() {
    let ex1 = example_one();
    let p = SimplexDist::uniform(2).unwrap();
    assert_eq!(chi_gradient_check(ex1.legal(), &p, 0.00005, 1e-4).unwrap_err().exit_code(), 3);
    assert_eq!(chi_gradient_check(ex1.legal(), &p, 0.5, 0.1).unwrap_err().exit_code(), 2);
}
