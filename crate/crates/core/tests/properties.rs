//! Randomized invariants of the solver, transforms, tree algorithm and
//! bounds, checked against a naive oracle where one is cheap.

use std::collections::HashSet;

use num_bigint::BigUint;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use pebblekit::bounds::{mindeg_upper_distribution, tree_two_thirds_distribution, two_thirds_distribution};
use pebblekit::graph::random::{random_connected_graph, random_tree};
use pebblekit::pebble::{verify_sequence, weight_profile};
use pebblekit::solver::{Solver, SolverConfig};
use pebblekit::tree;
use pebblekit::{Distribution, Graph};

fn cfg() -> SolverConfig {
    SolverConfig { audit_weights: true, ..SolverConfig::default() }
}

/// Plain exhaustive search over every configuration reachable from `d`.
fn oracle(g: &Graph, d: &Distribution, r: usize, m: u32) -> bool {
    let mut seen = HashSet::new();
    let mut stack = vec![d.counts().to_vec()];
    while let Some(c) = stack.pop() {
        if c[r] >= m {
            return true;
        }
        if !seen.insert(c.clone()) {
            continue;
        }
        for &(a, b) in g.edges() {
            for (u, w) in [(a, b), (b, a)] {
                if c[u] >= 2 {
                    let mut next = c.clone();
                    next[u] -= 2;
                    next[w] += 1;
                    stack.push(next);
                }
            }
        }
    }
    false
}

fn graph(seed: u64, n: usize, p: f64) -> Graph {
    random_connected_graph(n, p, &mut ChaCha8Rng::seed_from_u64(seed))
}

fn dist_for(n: usize, raw: &[u32]) -> Distribution {
    Distribution::new((0..n).map(|i| raw[i % raw.len()]).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reachability_matches_oracle(seed: u64, n in 2usize..6, p in 0.0f64..0.7,
                                   raw in prop::collection::vec(0u32..4, 6), r in 0usize..6, m in 1u64..3) {
        let g = graph(seed, n, p);
        let d = dist_for(n, &raw);
        let r = r % n;
        let s = Solver::new(&g, cfg()).unwrap();
        let res = s.reachable(&d, r, m).unwrap();
        prop_assert_eq!(res.reachable, oracle(&g, &d, r, m as u32));
        if let Some(w) = &res.witness {
            let after = verify_sequence(&g, &d, w).unwrap();
            prop_assert!(u64::from(after.get(r)) >= m);
        }
        if res.reachable {
            prop_assert!(weight_profile(&g, &d, r).unwrap().admits(m));
        }
        let st = s.stats();
        prop_assert_eq!(st.weight_violations + st.verdict_violations, 0);
    }

    #[test]
    fn reachability_is_monotone(seed: u64, n in 2usize..7, raw in prop::collection::vec(0u32..3, 7),
                                extra in prop::collection::vec(0u32..2, 7), r in 0usize..7) {
        let g = graph(seed, n, 0.3);
        let d = dist_for(n, &raw);
        let mut bigger = d.clone();
        for (v, &e) in extra.iter().enumerate().take(n) {
            bigger.add(v, e);
        }
        let s = Solver::new(&g, cfg()).unwrap();
        if s.reachable(&d, r % n, 1).unwrap().reachable {
            prop_assert!(s.reachable(&bigger, r % n, 1).unwrap().reachable);
        }
    }

    #[test]
    fn adding_an_edge_never_raises_the_numbers(seed: u64, n in 2usize..6, p in 0.0f64..0.5, a in 0usize..6, b in 0usize..6) {
        let g = graph(seed, n, p);
        let (a, b) = (a % n, b % n);
        prop_assume!(a != b && !g.has_edge(a, b));
        let h = g.with_edge(a, b).unwrap();
        let sg = Solver::new(&g, cfg()).unwrap();
        let sh = Solver::new(&h, cfg()).unwrap();
        prop_assert!(sh.pebbling_number().unwrap().value <= sg.pebbling_number().unwrap().value);
        prop_assert!(sh.optimal_pebbling_number().unwrap().value <= sg.optimal_pebbling_number().unwrap().value);
    }

    #[test]
    fn bounds_sandwich(seed: u64, n in 1usize..7, p in 0.0f64..0.6) {
        let g = graph(seed, n, p);
        let s = Solver::new(&g, cfg()).unwrap();
        let pi = s.pebbling_number().unwrap().value;
        let opt = s.optimal_pebbling_number().unwrap().value;
        prop_assert!(opt <= pi);
        prop_assert!(pi >= n as u64);
        prop_assert!(opt <= (2 * n as u64).div_ceil(3));
        if n >= 2 {
            let d = mindeg_upper_distribution(&g).unwrap();
            let Some(pebblekit::bounds::Witness::Distribution(w)) = d.witness else { panic!("witness") };
            prop_assert!(s.is_solvable(&w, 1).unwrap().solvable);
            prop_assert!(opt <= w.size());
        }
    }

    #[test]
    fn tree_invariants(seed: u64, n in 2usize..8) {
        let t = random_tree(n, &mut ChaCha8Rng::seed_from_u64(seed));
        let s = Solver::new(&t, cfg()).unwrap();
        let mut best = BigUint::from(0u32);
        for r in 0..n {
            let p = tree::rooted_partition(&t, r).unwrap();
            tree::validate_partition(&t, &p).unwrap();
            let formula = tree::rooted_pebbling_number(&t, r).unwrap();
            let exact = s.pebbling_number_rooted(r).unwrap().value;
            prop_assert_eq!(formula.clone(), BigUint::from(exact));
            // one pebble fewer than the formula, placed as the lower-bound witness
            let w = tree::lower_bound_witness(&t, &p).unwrap();
            prop_assert_eq!(BigUint::from(w.size()) + 1u32, formula.clone());
            prop_assert!(!s.reachable(&w, r, 1).unwrap().reachable);
            best = best.max(formula);
        }
        prop_assert_eq!(tree::tree_pebbling_number(&t).unwrap(), best);
        let opt = tree::optimal_partition(&t).unwrap();
        tree::validate_partition(&t, &opt).unwrap();

        let d = tree_two_thirds_distribution(&t, &cfg()).unwrap();
        prop_assert!(d.size() <= (2 * n as u64).div_ceil(3));
        prop_assert!(s.is_solvable(&d, 1).unwrap().solvable);
    }
}

#[test]
fn two_thirds_on_paths_and_cycles() {
    use pebblekit::graph::{generate, FamilySpec};
    for n in 1..=12 {
        let mut specs = vec![FamilySpec::Path { n }];
        if n >= 3 {
            specs.push(FamilySpec::Cycle { n });
        }
        for spec in specs {
            let g = generate(&spec).unwrap();
            let d = two_thirds_distribution(&g).unwrap();
            assert_eq!(d.size(), (2 * n as u64).div_ceil(3), "{spec}");
            assert!(Solver::new(&g, cfg()).unwrap().is_solvable(&d, 1).unwrap().solvable, "{spec}");
        }
    }
}
