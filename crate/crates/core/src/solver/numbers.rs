use std::ops::ControlFlow;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{Candidates, Solver, SolverError};
use crate::graph::{collapse, VertexPartition};
use crate::pebble::{threads, Distribution};

/// Per-candidate test: `Some` stops the scan with that value.
type CandidateFn<'a, T> = dyn Fn(&[u32]) -> Result<Option<T>, SolverError> + Sync + 'a;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootedPebbling {
    pub root: usize,
    pub value: u64,
    /// A non-solvable distribution of `value − 1` pebbles for this root.
    pub witness: Distribution,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PebblingNumber {
    pub value: u64,
    /// First root attaining the maximum, with roots taken in order of
    /// decreasing eccentricity and then id.
    pub root: usize,
    pub witness: Distribution,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OptimalPebbling {
    pub value: u64,
    /// The lexicographically least solvable candidate of that size.
    pub witness: Distribution,
}

impl Solver<'_> {
    /// Runs `f` over candidates until it yields a value, in lexicographic
    /// order; with several workers the candidate space is split on its first
    /// free vertex and the earliest split wins, so the answer is the same.
    fn first<T: Send>(
        &self,
        cands: &Candidates,
        f: &CandidateFn<'_, T>,
    ) -> Result<Option<T>, SolverError> {
        let step = |d: &[u32]| match f(d) {
            Ok(None) => ControlFlow::Continue(()),
            Ok(Some(t)) => ControlFlow::Break(Ok(t)),
            Err(e) => ControlFlow::Break(Err(e)),
        };
        match (&self.pool, cands.split()) {
            (Some(pool), Some((i, values))) if values.len() > 1 => pool.install(|| {
                values
                    .into_par_iter()
                    .find_map_first(|v| cands.for_each_fixed(i, v, &mut |d| step(d)))
                    .transpose()
            }),
            _ => cands.for_each(&mut |d| step(d)).transpose(),
        }
    }

    /// Candidates for a non-`r`-solvable distribution of size `k`. A vertex
    /// at distance `d` holding `2^d` pebbles reaches `r` on its own, so it is
    /// capped at `2^d − 1`.
    fn rooted_candidates(&self, r: usize, k: u32) -> Candidates {
        let caps = (0..self.g.vertex_count())
            .map(|v| {
                let d = self.distance(r, v);
                if d >= 32 {
                    k
                } else {
                    k.min(((1u64 << d) - 1) as u32)
                }
            })
            .collect();
        let c = Candidates::with_caps(caps, k);
        if self.cfg.restrict_candidates {
            c.squished_on(&threads(self.g, Some(r)))
        } else {
            c
        }
    }

    fn first_unsolvable_rooted(&self, r: usize, k: u32) -> Result<Option<Distribution>, SolverError> {
        self.first(&self.rooted_candidates(r, k), &|d| {
            Ok((!self.reach(d, r, 1, false, false)?.0).then(|| Distribution::new(d.to_vec())))
        })
    }

    /// Some non-`r`-solvable distribution of size `k`, trying one-pebble
    /// extensions of `prev` before a full scan.
    fn unsolvable_at_level(&self, r: usize, k: u32, prev: Option<&Distribution>) -> Result<Option<Distribution>, SolverError> {
        if let Some(prev) = prev {
            for v in 0..self.g.vertex_count() {
                if v == r {
                    continue;
                }
                let mut d = prev.clone();
                d.add(v, 1);
                if !self.reach(d.counts(), r, 1, false, false)?.0 {
                    return Ok(Some(d));
                }
            }
        }
        self.first_unsolvable_rooted(r, k)
    }

    /// Climbs from level `start` (known to be at most `π(G, r)`) to `π(G, r)`.
    fn climb(&self, r: usize, start: u64, mut prev: Option<Distribution>) -> Result<(u64, Option<Distribution>), SolverError> {
        let mut k = start;
        loop {
            let level = u32::try_from(k).map_err(|_| SolverError::InvalidInput("pebble count too large".into()))?;
            match self.unsolvable_at_level(r, level, prev.as_ref())? {
                Some(d) => {
                    prev = Some(d);
                    k += 1;
                }
                None => return Ok((k, prev)),
            }
        }
    }

    fn lower_start(&self, r: usize) -> Result<(u64, Distribution), SolverError> {
        let ecc = self.eccentricity(r);
        if ecc >= 32 {
            return Err(SolverError::InvalidInput(format!("eccentricity {ecc} is beyond exhaustive range")));
        }
        let n = self.g.vertex_count();
        let far = (0..n).find(|&v| self.distance(r, v) == ecc).expect("nonempty");
        let lb = 1u64 << ecc;
        Ok((lb, Distribution::single(n, far, (lb - 1) as u32)))
    }

    fn canonical_witness(&self, r: usize, value: u64, fallback: Distribution) -> Result<Distribution, SolverError> {
        if value <= 1 {
            return Ok(Distribution::zeros(self.g.vertex_count()));
        }
        Ok(self.first_unsolvable_rooted(r, (value - 1) as u32)?.unwrap_or(fallback))
    }

    /// `π(G, r)`: the least `k` such that every size-`k` distribution
    /// reaches `r`. The search starts at `2^{ecc(r)}` (a pile of one less on
    /// a farthest vertex fails the weight inequality) and climbs one level
    /// at a time; adding a pebble never breaks solvability, so the first
    /// level without a non-solvable candidate is the answer.
    pub fn pebbling_number_rooted(&self, r: usize) -> Result<RootedPebbling, SolverError> {
        self.check_root(r)?;
        let (lb, start) = self.lower_start(r)?;
        let (value, last) = self.climb(r, lb, Some(start.clone()))?;
        let witness = self.canonical_witness(r, value, last.unwrap_or(start))?;
        Ok(RootedPebbling { root: r, value, witness })
    }

    /// `π(G)`, the maximum of `π(G, r)` over all roots. Roots after the
    /// first are only checked at the current maximum.
    pub fn pebbling_number(&self) -> Result<PebblingNumber, SolverError> {
        let n = self.g.vertex_count();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&r| (std::cmp::Reverse(self.eccentricity(r)), r));
        let mut best: Option<(u64, usize, Distribution)> = None;
        for r in order {
            let (lb, start) = self.lower_start(r)?;
            let (from, prev) = match &best {
                Some((b, _, _)) if *b > lb => (*b, None),
                _ => (lb, Some(start.clone())),
            };
            let (value, last) = self.climb(r, from, prev)?;
            if best.as_ref().map_or(true, |(b, _, _)| value > *b) {
                best = Some((value, r, last.unwrap_or(start)));
            }
        }
        let (value, root, fallback) = best.expect("at least one vertex");
        let witness = self.canonical_witness(root, value, fallback)?;
        Ok(PebblingNumber { value, root, witness })
    }

    fn opt_candidates(&self, k: u32) -> Candidates {
        let g = self.g;
        let n = g.vertex_count();
        if self.cfg.restrict_candidates && n >= 3 {
            // some minimum solvable distribution is smooth with empty leaves
            let caps = (0..n)
                .map(|v| match g.degree(v) {
                    1 => 0,
                    2 => k.min(2),
                    _ => k,
                })
                .collect();
            Candidates::with_caps(caps, k)
        } else {
            Candidates::all(n, k)
        }
    }

    /// `π_OPT(G)`: the least size of a solvable distribution.
    pub fn optimal_pebbling_number(&self) -> Result<OptimalPebbling, SolverError> {
        let n = self.g.vertex_count() as u32;
        for k in 1..=n {
            let found = self.first(&self.opt_candidates(k), &|d| {
                Ok(self.solvable_quick(d, 1)?.then(|| Distribution::new(d.to_vec())))
            })?;
            if let Some(witness) = found {
                return Ok(OptimalPebbling { value: u64::from(k), witness });
            }
        }
        unreachable!("one pebble per vertex is solvable and smooth with empty leaves")
    }

    /// Least size of an `m`-fold solvable distribution (unrestricted search).
    pub fn min_m_solvable(&self, m: u64) -> Result<OptimalPebbling, SolverError> {
        if m == 0 {
            return Err(SolverError::InvalidInput("m must be at least 1".into()));
        }
        let n = self.g.vertex_count();
        let mut k = m;
        loop {
            let level = u32::try_from(k).map_err(|_| SolverError::InvalidInput("pebble count too large".into()))?;
            let found = self.first(&Candidates::all(n, level), &|d| {
                Ok(self.solvable_quick(d, m)?.then(|| Distribution::new(d.to_vec())))
            })?;
            if let Some(witness) = found {
                return Ok(OptimalPebbling { value: k, witness });
            }
            k += 1;
        }
    }

    /// Every 2-solvable distribution of `n + 1` pebbles on a path, in
    /// lexicographic order.
    pub fn enumerate_optimal_2solvable(&self) -> Result<Vec<Distribution>, SolverError> {
        let g = self.g;
        if !(g.is_tree() && g.max_degree() <= 2) {
            return Err(SolverError::InvalidInput("graph is not a path".into()));
        }
        let n = g.vertex_count();
        let mut out = Vec::new();
        let mut err = None;
        Candidates::all(n, n as u32 + 1).for_each::<()>(&mut |d| match self.solvable_quick(d, 2) {
            Ok(true) => {
                out.push(Distribution::new(d.to_vec()));
                ControlFlow::Continue(())
            }
            Ok(false) => ControlFlow::Continue(()),
            Err(e) => {
                err = Some(e);
                ControlFlow::Break(())
            }
        });
        match err {
            Some(e) => Err(e),
            None => Ok(out),
        }
    }

    /// Whether two pebbles can be gathered on the rung `{a, b}`, decided by
    /// collapsing the rung to one vertex and asking for 2-reachability there.
    pub fn rung_2reachable(&self, d: &Distribution, (a, b): (usize, usize)) -> Result<bool, SolverError> {
        self.check_distribution(d)?;
        if !self.g.has_edge(a, b) {
            return Err(SolverError::InvalidInput(format!("{a} and {b} do not form a rung")));
        }
        if d.get(a) + d.get(b) >= 2 {
            return Ok(true);
        }
        let p = VertexPartition::merging(self.g.vertex_count(), &[vec![a.min(b), a.max(b)]])?;
        let (h, map) = collapse(self.g, &p)?;
        let mut dh = Distribution::zeros(h.vertex_count());
        for (v, &b) in map.iter().enumerate() {
            dh.add(b, d.get(v));
        }
        let sub = Solver::new(&h, self.cfg.clone())?;
        Ok(sub.reachable(&dh, map[a], 2)?.reachable)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, FamilySpec, Graph};
    use crate::solver::SolverConfig;

    fn gen(spec: FamilySpec) -> Graph {
        generate(&spec).unwrap()
    }

    fn solver(g: &Graph) -> Solver<'_> {
        Solver::new(g, SolverConfig::default()).unwrap()
    }

    #[test]
    fn rooted_examples() {
        let p3 = gen(FamilySpec::Path { n: 3 });
        let res = solver(&p3).pebbling_number_rooted(0).unwrap();
        assert_eq!(res.value, 4);
        assert_eq!(res.witness.size(), 3);
        assert_eq!(res.witness.counts(), &[0, 0, 3]);
        let k2 = gen(FamilySpec::Path { n: 2 });
        for r in 0..2 {
            assert_eq!(solver(&k2).pebbling_number_rooted(r).unwrap().value, 2);
        }
        let c5 = gen(FamilySpec::Cycle { n: 5 });
        for r in 0..5 {
            assert_eq!(solver(&c5).pebbling_number_rooted(r).unwrap().value, 5);
        }
    }

    #[test]
    fn global_examples() {
        assert_eq!(solver(&gen(FamilySpec::Path { n: 4 })).pebbling_number().unwrap().value, 8);
        assert_eq!(solver(&gen(FamilySpec::Cycle { n: 6 })).pebbling_number().unwrap().value, 8);
        let k1 = Graph::empty(1);
        assert_eq!(solver(&k1).pebbling_number().unwrap().value, 1);
        assert_eq!(solver(&k1).optimal_pebbling_number().unwrap().value, 1);
    }

    #[test]
    fn optimal_examples() {
        let p4 = gen(FamilySpec::Path { n: 4 });
        let res = solver(&p4).optimal_pebbling_number().unwrap();
        assert_eq!(res.value, 3);
        assert!(solver(&p4).is_solvable(&res.witness, 1).unwrap().solvable);
        assert_eq!(solver(&gen(FamilySpec::Cycle { n: 6 })).optimal_pebbling_number().unwrap().value, 4);
    }

    #[test]
    fn m_fold_examples() {
        assert_eq!(solver(&gen(FamilySpec::Path { n: 3 })).min_m_solvable(2).unwrap().value, 4);
        assert_eq!(solver(&gen(FamilySpec::Path { n: 5 })).min_m_solvable(2).unwrap().value, 6);
        assert_eq!(solver(&Graph::empty(1)).min_m_solvable(2).unwrap().value, 2);
    }

    #[test]
    fn two_solvable_on_short_paths() {
        let p3 = gen(FamilySpec::Path { n: 3 });
        let all: Vec<Vec<u32>> =
            solver(&p3).enumerate_optimal_2solvable().unwrap().into_iter().map(|d| d.counts().to_vec()).collect();
        for want in [[2, 1, 1], [1, 2, 1], [1, 1, 2], [0, 4, 0], [2, 0, 2]] {
            assert!(all.contains(&want.to_vec()), "{want:?}");
        }
        let p2 = gen(FamilySpec::Path { n: 2 });
        let all: Vec<Vec<u32>> =
            solver(&p2).enumerate_optimal_2solvable().unwrap().into_iter().map(|d| d.counts().to_vec()).collect();
        assert_eq!(all, vec![vec![1, 2], vec![2, 1]]);
        assert!(solver(&gen(FamilySpec::Cycle { n: 4 })).enumerate_optimal_2solvable().is_err());
    }

    #[test]
    fn rungs() {
        let prism = gen(FamilySpec::CircularLadder { m: 3 });
        let s = solver(&prism);
        // three pebbles reach every vertex of the next rung, but only one
        // of them can arrive there at a time
        let d = Distribution::single(6, 0, 3);
        assert!(s.rung_2reachable(&d, (0, 1)).unwrap());
        assert!(!s.rung_2reachable(&d, (2, 3)).unwrap());
        assert!(s.rung_2reachable(&Distribution::single(6, 0, 4), (2, 3)).unwrap());
        assert!(s.rung_2reachable(&Distribution::new(vec![2, 2, 0, 0, 0, 0]), (2, 3)).unwrap());
        assert!(s.rung_2reachable(&Distribution::new(vec![1, 1, 0, 0, 0, 0]), (0, 1)).unwrap());
        assert!(!s.rung_2reachable(&Distribution::zeros(6), (2, 3)).unwrap());
        assert!(s.rung_2reachable(&d, (0, 2)).is_ok());
        assert!(s.rung_2reachable(&d, (0, 3)).is_err());
    }

    #[test]
    fn parallel_matches_sequential() {
        let g = gen(FamilySpec::Cycle { n: 7 });
        let par = SolverConfig { parallelism: 3, ..SolverConfig::default() };
        let a = Solver::new(&g, par.clone()).unwrap().pebbling_number().unwrap();
        let b = solver(&g).pebbling_number().unwrap();
        assert_eq!(a, b);
        let a = Solver::new(&g, par).unwrap().optimal_pebbling_number().unwrap();
        let b = solver(&g).optimal_pebbling_number().unwrap();
        assert_eq!(a, b);
    }
}
