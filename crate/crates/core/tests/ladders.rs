//! Ladder values, including the m = 5 case where five pebbles already suffice.

use pebblekit::bounds::{ladder_distribution, LadderVariant};
use pebblekit::graph::{generate, Graph};
use pebblekit::pebble::{verify_sequence, MoveSequence, PebbleMove};
use pebblekit::solver::{Solver, SolverConfig};
use pebblekit::verify::ladder_expected;
use pebblekit::Distribution;

/// Checks one hand-written move list per root, independent of the solver.
fn check_by_hand(g: &Graph, d: &Distribution, per_root: &[&[(usize, usize)]]) {
    assert_eq!(per_root.len(), g.vertex_count());
    for (r, moves) in per_root.iter().enumerate() {
        let seq = MoveSequence(moves.iter().map(|&(a, b)| PebbleMove::new(a, b)).collect());
        let after = verify_sequence(g, d, &seq).unwrap_or_else(|e| panic!("root {r}: {e}"));
        assert!(after.get(r) >= 1, "root {r} not reached");
    }
}

#[test]
fn ladder_m5() {
    let cfg = SolverConfig::default();

    let prism = generate(&LadderVariant::Circular.spec(5)).unwrap();
    let d = Distribution::new(vec![0, 0, 0, 1, 0, 2, 0, 0, 0, 2]);
    check_by_hand(
        &prism,
        &d,
        &[
            &[(5, 3), (3, 1), (9, 1), (1, 0)],
            &[(9, 1)],
            &[(5, 3), (3, 2)],
            &[],
            &[(5, 4)],
            &[],
            &[(5, 7), (9, 7), (7, 6)],
            &[(5, 7)],
            &[(9, 8)],
            &[],
        ],
    );

    let mobius = generate(&LadderVariant::Moebius.spec(5)).unwrap();
    let d = Distribution::new(vec![0, 0, 0, 0, 0, 0, 0, 1, 0, 4]);
    check_by_hand(
        &mobius,
        &d,
        &[
            &[(9, 0)],
            &[(9, 0), (9, 0), (0, 1)],
            &[(9, 8), (9, 8), (8, 7), (7, 2)],
            &[(9, 4), (9, 4), (4, 3)],
            &[(9, 4)],
            &[(9, 0), (9, 0), (0, 5)],
            &[(9, 8), (9, 8), (8, 7), (7, 6)],
            &[],
            &[(9, 8)],
            &[],
        ],
    );

    // Four pebbles never suffice, so the value is exactly 5 for both; the
    // linear ladder, with two fewer edges, needs 6.
    for g in [&prism, &mobius] {
        assert_eq!(Solver::new(g, cfg.clone()).unwrap().optimal_pebbling_number().unwrap().value, 5);
    }
    let linear = generate(&LadderVariant::Linear.spec(5)).unwrap();
    assert_eq!(Solver::new(&linear, cfg).unwrap().optimal_pebbling_number().unwrap().value, 6);
}

#[test]
fn ladder_constructions_are_solvable() {
    let cfg = SolverConfig::default();
    for m in 2..=7 {
        for v in [LadderVariant::Linear, LadderVariant::Circular, LadderVariant::Moebius] {
            let g = generate(&v.spec(m)).unwrap();
            let d = ladder_distribution(m, v).unwrap();
            let s = Solver::new(&g, cfg.clone()).unwrap();
            assert!(s.is_solvable(&d, 1).unwrap().solvable, "{v:?} m={m}");
            let exact = s.optimal_pebbling_number().unwrap().value;
            assert!(exact <= d.size(), "{v:?} m={m}");
            assert_eq!(exact, ladder_expected(m, v), "{v:?} m={m}");
        }
    }
}
