use std::hash::Hash;

use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};

use super::{RootData, Solver, SolverError, SolverStats};
use crate::pebble::{weight_profile, Distribution, MoveSequence, PebbleMove};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReachResult {
    pub reachable: bool,
    /// A sequence leaving at least `m` pebbles on the root, when reachable.
    pub witness: Option<MoveSequence>,
    /// The root, when the weight inequality alone refutes reachability.
    pub weight_refuted_at: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Solvability {
    pub solvable: bool,
    /// One witness per vertex when solvable, indexed by root.
    pub witnesses: Vec<MoveSequence>,
    /// First root found unreachable, when not solvable.
    pub failed_root: Option<usize>,
    pub weight_refuted: bool,
}

/// Scaled weights `2^{ecc − dist(v)}` for exact integer weight arithmetic.
struct Scale {
    pow: Vec<u128>,
    target: u128,
}

const DOMINANCE_BUFFER: usize = 128;

impl Solver<'_> {
    fn scale(&self, r: usize, size: u64, m: u64) -> Option<Scale> {
        let rd = &self.roots[r];
        if rd.ecc > 64 || size >= 1 << 40 || m >= 1 << 60 {
            return None;
        }
        let pow = rd.dist.iter().map(|&d| 1u128 << (rd.ecc - d)).collect();
        Some(Scale { pow, target: u128::from(m) << rd.ecc })
    }

    fn weight_ok(&self, counts: &[u32], r: usize, m: u64, scale: Option<&Scale>) -> bool {
        match scale {
            Some(s) => weighted(counts, &s.pow) >= s.target,
            None => {
                let d = Distribution::new(counts.to_vec());
                weight_profile(self.g, &d, r).expect("checked sizes").admits(m)
            }
        }
    }

    /// Decides whether `r` can receive `m` pebbles from `d`.
    pub fn reachable(&self, d: &Distribution, r: usize, m: u64) -> Result<ReachResult, SolverError> {
        self.check_distribution(d)?;
        self.check_root(r)?;
        if m == 0 {
            return Err(SolverError::InvalidInput("m must be at least 1".into()));
        }
        let (ok, witness, refuted) = self.reach(d.counts(), r, m, true, true)?;
        Ok(ReachResult {
            reachable: ok,
            witness: witness.map(MoveSequence),
            weight_refuted_at: refuted.then_some(r),
        })
    }

    /// Whether every vertex is `m`-reachable, with a witness per root.
    pub fn is_solvable(&self, d: &Distribution, m: u64) -> Result<Solvability, SolverError> {
        self.check_distribution(d)?;
        if m == 0 {
            return Err(SolverError::InvalidInput("m must be at least 1".into()));
        }
        let n = self.g.vertex_count();
        let fail = |r, weight_refuted| Solvability { solvable: false, witnesses: Vec::new(), failed_root: Some(r), weight_refuted };
        for r in 0..n {
            let scale = self.scale(r, d.size(), m);
            if !self.weight_ok(d.counts(), r, m, scale.as_ref()) {
                SolverStats::bump(&self.stats.weight_refutations, 1);
                return Ok(fail(r, true));
            }
        }
        let mut witnesses = Vec::with_capacity(n);
        for r in 0..n {
            let (ok, w, _) = self.reach(d.counts(), r, m, true, false)?;
            if !ok {
                return Ok(fail(r, false));
            }
            witnesses.push(MoveSequence(w.unwrap_or_default()));
        }
        Ok(Solvability { solvable: true, witnesses, failed_root: None, weight_refuted: false })
    }

    /// Solvability without witnesses, ordered to fail fast: weights for all
    /// roots, then greedy pushes, then full searches.
    pub(crate) fn solvable_quick(&self, counts: &[u32], m: u64) -> Result<bool, SolverError> {
        let n = self.g.vertex_count();
        let size: u64 = counts.iter().map(|&c| u64::from(c)).sum();
        for r in 0..n {
            if u64::from(counts[r]) >= m {
                continue;
            }
            let scale = self.scale(r, size, m);
            if !self.weight_ok(counts, r, m, scale.as_ref()) {
                SolverStats::bump(&self.stats.weight_refutations, 1);
                return Ok(false);
            }
        }
        let mut hard = Vec::new();
        for r in 0..n {
            if u64::from(counts[r]) < m && !self.greedy(counts, r, m, None) {
                hard.push(r);
            }
        }
        for r in hard {
            if !self.reach(counts, r, m, false, false)?.0 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Core query. Returns `(reachable, witness, refuted_by_weight)`.
    pub(crate) fn reach(
        &self,
        counts: &[u32],
        r: usize,
        m: u64,
        want_witness: bool,
        check_weight: bool,
    ) -> Result<(bool, Option<Vec<PebbleMove>>, bool), SolverError> {
        SolverStats::bump(&self.stats.reach_queries, 1);
        if u64::from(counts[r]) >= m {
            return Ok((true, want_witness.then(Vec::new), false));
        }
        let size: u64 = counts.iter().map(|&c| u64::from(c)).sum();
        let scale = self.scale(r, size, m);
        let weight_holds = || self.weight_ok(counts, r, m, scale.as_ref());
        if (check_weight || self.cfg.use_weight_pruning) && !weight_holds() {
            SolverStats::bump(&self.stats.weight_refutations, 1);
            return Ok((false, None, true));
        }
        let mut moves = want_witness.then(Vec::new);
        if self.greedy(counts, r, m, moves.as_mut()) {
            SolverStats::bump(&self.stats.greedy_witnesses, 1);
            self.audit_verdict(counts, r, m, scale.as_ref());
            return Ok((true, moves, false));
        }
        SolverStats::bump(&self.stats.searches, 1);
        let n = counts.len();
        let bits = 64 - size.leading_zeros() as usize;
        let found = if n * bits.max(1) <= 128 {
            let b = bits.max(1);
            self.search(counts, r, m, scale.as_ref(), |c: &[u32]| {
                c.iter().fold(0u128, |acc, &x| acc << b | u128::from(x))
            })?
        } else {
            self.search(counts, r, m, scale.as_ref(), |c: &[u32]| c.to_vec().into_boxed_slice())?
        };
        let ok = found.is_some();
        if ok {
            self.audit_verdict(counts, r, m, scale.as_ref());
        }
        Ok((ok, found.filter(|_| want_witness), false))
    }

    fn audit_verdict(&self, counts: &[u32], r: usize, m: u64, scale: Option<&Scale>) {
        if self.cfg.audit_weights && !self.weight_ok(counts, r, m, scale) {
            SolverStats::bump(&self.stats.verdict_violations, 1);
        }
    }

    /// Pushes pebbles down the BFS tree, farthest vertices first.
    fn greedy(&self, counts: &[u32], r: usize, m: u64, mut moves: Option<&mut Vec<PebbleMove>>) -> bool {
        let rd = &self.roots[r];
        let mut c = counts.to_vec();
        for &v in &rd.far_first {
            let k = c[v] / 2;
            if k == 0 {
                continue;
            }
            let p = rd.parent[v];
            c[v] -= 2 * k;
            c[p] += k;
            if let Some(ms) = moves.as_deref_mut() {
                ms.extend(std::iter::repeat(PebbleMove::new(v, p)).take(k as usize));
            }
        }
        if self.cfg.audit_weights {
            // every greedy move steps one closer to the root: weight is unchanged
            let before = weighted_dyadic(counts, &rd.dist);
            let after = weighted_dyadic(&c, &rd.dist);
            SolverStats::bump(&self.stats.audited_moves, 1);
            if after > before {
                SolverStats::bump(&self.stats.weight_violations, 1);
            }
        }
        u64::from(c[r]) >= m
    }

    /// Iterative depth-first search over configurations reachable without
    /// moving pebbles off the root.
    fn search<K: Hash + Eq>(
        &self,
        start: &[u32],
        r: usize,
        m: u64,
        scale: Option<&Scale>,
        encode: impl Fn(&[u32]) -> K,
    ) -> Result<Option<Vec<PebbleMove>>, SolverError> {
        let rd: &RootData = &self.roots[r];
        let zeros;
        let (pow, target, pruning) = match scale {
            Some(s) => (&s.pow[..], s.target, self.cfg.use_weight_pruning),
            None => {
                zeros = vec![0u128; start.len()];
                (&zeros[..], 0, false)
            }
        };
        let audit = self.cfg.audit_weights && scale.is_some();
        let mut counts = start.to_vec();
        let mut w = weighted(&counts, pow);
        let mut visited = FxHashSet::default();
        visited.insert(encode(&counts));
        let mut states: u64 = 1;
        let mut audited: u64 = 0;
        let mut violations: u64 = 0;
        let mut dead: Vec<Vec<u32>> = Vec::new();
        let mut dead_next = 0;
        let mut frames: Vec<usize> = vec![0];
        let mut path: Vec<(usize, usize, u128)> = Vec::new();
        let arcs = &rd.arcs;

        let outcome = 'outer: loop {
            let Some(&top) = frames.last() else { break None };
            let mut i = top;
            let mut advanced = false;
            while i < arcs.len() {
                let (u, x) = arcs[i];
                i += 1;
                if counts[u] < 2 {
                    continue;
                }
                let nw = w + pow[x] - 2 * pow[u];
                if audit {
                    audited += 1;
                    if nw > w {
                        violations += 1;
                    }
                }
                if pruning && nw < target {
                    continue;
                }
                counts[u] -= 2;
                counts[x] += 1;
                if x == r && u64::from(counts[r]) >= m {
                    path.push((u, x, w));
                    break 'outer Some(path.iter().map(|&(a, b, _)| PebbleMove::new(a, b)).collect());
                }
                let dominated = self.cfg.use_dominance_pruning && dead.iter().any(|t| le(&counts, t));
                if dominated || !visited.insert(encode(&counts)) {
                    counts[x] -= 1;
                    counts[u] += 2;
                    continue;
                }
                states += 1;
                if states > self.cfg.max_states {
                    SolverStats::bump(&self.stats.states, states);
                    return Err(SolverError::BudgetExhausted { limit: self.cfg.max_states });
                }
                *frames.last_mut().unwrap() = i;
                path.push((u, x, w));
                w = nw;
                frames.push(0);
                advanced = true;
                break;
            }
            if !advanced {
                frames.pop();
                if self.cfg.use_dominance_pruning {
                    if dead.len() < DOMINANCE_BUFFER {
                        dead.push(counts.clone());
                    } else {
                        dead[dead_next] = counts.clone();
                        dead_next = (dead_next + 1) % DOMINANCE_BUFFER;
                    }
                }
                if let Some((u, x, ow)) = path.pop() {
                    counts[x] -= 1;
                    counts[u] += 2;
                    w = ow;
                }
            }
        };
        SolverStats::bump(&self.stats.states, states);
        if audit {
            SolverStats::bump(&self.stats.audited_moves, audited);
            SolverStats::bump(&self.stats.weight_violations, violations);
        }
        Ok(outcome)
    }
}

fn weighted(counts: &[u32], pow: &[u128]) -> u128 {
    counts.iter().zip(pow).map(|(&c, &p)| u128::from(c) * p).sum()
}

/// Exact weight by distance lists, independent of the scaled fast path.
fn weighted_dyadic(counts: &[u32], dist: &[usize]) -> crate::rational::Dyadic {
    let ecc = dist.iter().copied().max().unwrap_or(0);
    let mut coeff = vec![0u64; ecc + 1];
    for (v, &c) in counts.iter().enumerate() {
        coeff[dist[v]] += u64::from(c);
    }
    crate::rational::Dyadic::from_coefficients(&coeff)
}

fn le(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}
