mod common;

use std::cell::RefCell;
use std::collections::HashSet;

use common::{brute_force_potentially_optimal, grid_max_2d};
use dropout_bo::direct::{maximize, potentially_optimal, Candidate, DirectConfig, DirectSearch};
use dropout_bo::objectives::gaussian_mixture;
use dropout_bo::{BoxDomain, Error};
use proptest::prelude::*;

fn mixture2(x: &[f64]) -> f64 {
    gaussian_mixture(x, &[2.0, 2.0], &[3.0, 3.0]).unwrap()
}

proptest! {
    #[test]
    fn potentially_optimal_matches_brute_force(
        raw in prop::collection::vec((1u32..60, -20i32..20), 1..25),
        eps in prop::sample::select(vec![0.0, 1e-4, 1e-2]),
    ) {
        // Small integers keep every slope comparison exact.
        let mut seen = HashSet::new();
        let cands: Vec<Candidate> = raw
            .into_iter()
            .filter(|(s, _)| seen.insert(*s))
            .enumerate()
            .map(|(id, (s, v))| Candidate { id, size: s as f64, value: v as f64 })
            .collect();
        let best = cands.iter().map(|c| c.value).fold(f64::NEG_INFINITY, f64::max);
        let mut got = potentially_optimal(&cands, best, eps);
        got.sort_unstable();
        prop_assert_eq!(got, brute_force_potentially_optimal(&cands, best, eps));
    }

    #[test]
    fn tiling_is_exact_and_budget_respected(budget in 1usize..400, dim in 1usize..5) {
        let domain = BoxDomain::unit(dim);
        let f = |x: &[f64]| -x.iter().map(|v| (v - 0.3).powi(2)).sum::<f64>();
        let mut s = DirectSearch::new(f, &domain, DirectConfig::with_max_evals(budget)).unwrap();
        while s.iterate().unwrap() {}
        let vol: f64 = s.rects().iter().map(|r| r.volume()).sum();
        prop_assert!((vol - 1.0).abs() < 1e-9);
        prop_assert_eq!(s.evals_used(), s.rects().len());
        prop_assert!(s.evals_used() <= budget.max(1));
    }
}

#[test]
fn no_point_is_evaluated_twice() {
    let seen = RefCell::new(HashSet::new());
    let dups = RefCell::new(0);
    let domain = BoxDomain::cube(3, -1.0, 2.0).unwrap();
    let f = |x: &[f64]| {
        let key: Vec<u64> = x.iter().map(|v| v.to_bits()).collect();
        if !seen.borrow_mut().insert(key) {
            *dups.borrow_mut() += 1;
        }
        -(x[0] - 0.1).powi(2) - (x[1] + 0.4).powi(2) - x[2].powi(2)
    };
    let out = maximize(f, &domain, DirectConfig::with_max_evals(1500)).unwrap();
    assert_eq!(*dups.borrow(), 0);
    assert_eq!(seen.borrow().len(), out.evals_used);
}

#[test]
fn running_max_is_monotone() {
    let domain = BoxDomain::cube(2, 1.0, 4.0).unwrap();
    let mut s = DirectSearch::new(mixture2, &domain, DirectConfig::with_max_evals(2000)).unwrap();
    let mut last = s.outcome().max_value;
    while s.iterate().unwrap() {
        let now = s.outcome().max_value;
        assert!(now >= last);
        last = now;
    }
}

#[test]
fn bowl_gap_shrinks_with_budget() {
    let domain = BoxDomain::unit(3);
    let target = [0.31, 0.77, 0.52];
    let f = |x: &[f64]| -x.iter().zip(&target).map(|(a, b)| (a - b).powi(2)).sum::<f64>();
    let gaps: Vec<f64> = [100, 500, 2000]
        .iter()
        .map(|&n| -maximize(f, &domain, DirectConfig::with_max_evals(n)).unwrap().max_value)
        .collect();
    assert!(gaps[0] >= gaps[1] && gaps[1] >= gaps[2], "{gaps:?}");
    assert!(gaps[2] < gaps[0]);
}

#[test]
fn mixture_2d_reaches_grid_maximum() {
    let (_, grid) = grid_max_2d(mixture2, 1.0, 4.0, 1000);
    let domain = BoxDomain::cube(2, 1.0, 4.0).unwrap();
    let out = maximize(mixture2, &domain, DirectConfig::with_max_evals(2000)).unwrap();
    assert!(out.max_value >= grid - 1e-3, "{} vs {grid}", out.max_value);
    assert!(domain.contains(&out.argmax));
}

#[test]
fn budgets_are_prefixes() {
    // A smaller budget stops on a division boundary of the larger run.
    let domain = BoxDomain::unit(2);
    let log = RefCell::new(Vec::new());
    let f = |x: &[f64]| {
        log.borrow_mut().push(x.to_vec());
        (x[0] * 7.0).sin() * (x[1] * 3.0).cos()
    };
    maximize(f, &domain, DirectConfig::with_max_evals(300)).unwrap();
    let long = log.take();
    maximize(f, &domain, DirectConfig::with_max_evals(120)).unwrap();
    let short = log.take();
    assert_eq!(&long[..short.len()], &short[..]);
}

#[test]
fn constant_objective_and_errors() {
    let domain = BoxDomain::unit(4);
    let out = maximize(|_: &[f64]| 1.0, &domain, DirectConfig::with_max_evals(200)).unwrap();
    assert_eq!(out.max_value, 1.0);
    assert_eq!(out.argmax, vec![0.5; 4]);
    let err = maximize(|x: &[f64]| if x[0] > 0.6 { f64::NAN } else { 0.0 }, &domain, DirectConfig::with_max_evals(200));
    assert!(matches!(err, Err(Error::NonFiniteObjective { .. })));
    assert!(maximize(|_: &[f64]| 0.0, &domain, DirectConfig::with_max_evals(0)).is_err());
}
