//! Exact values computed once by exhaustive search and kept as regressions.

use pebblekit::bounds::sierpinski_distribution;
use pebblekit::graph::{fixtures, generate, FamilySpec};
use pebblekit::solver::{Solver, SolverConfig};

fn pi_opt(spec: FamilySpec) -> u64 {
    let g = generate(&spec).unwrap();
    Solver::new(&g, SolverConfig::default()).unwrap().optimal_pebbling_number().unwrap().value
}

#[test]
fn sierpinski_h3_is_tight() {
    // The six-pebble construction cannot be improved.
    assert_eq!(pi_opt(FamilySpec::SierpinskiH { m: 3 }), 6);
    let s = sierpinski_distribution(3, &SolverConfig::default()).unwrap();
    assert_eq!(s.distribution.size(), 6);
}

#[test]
fn small_family_values() {
    assert_eq!(pi_opt(FamilySpec::Hypercube { k: 3 }), 4);
    assert_eq!(pi_opt(FamilySpec::Complete { n: 5 }), 2);
    assert_eq!(pi_opt(FamilySpec::Hrs { r: 5, s: 3 }), 4);
    // meets the lower bound ceil(12/5); the four-pebble construction is not tight here
    assert_eq!(pi_opt(FamilySpec::Grs { r: 3, s: 3 }), 3);
}

#[test]
fn petersen_values() {
    let g = fixtures::petersen();
    let s = Solver::new(&g, SolverConfig::default()).unwrap();
    assert_eq!(s.pebbling_number().unwrap().value, 10);
    assert_eq!(s.optimal_pebbling_number().unwrap().value, 4);
}
