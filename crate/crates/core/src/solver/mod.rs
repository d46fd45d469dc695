//! Exhaustive decision procedures for reachability and the pebbling
//! parameters.
//!
//! Every query first tries two cheap certificates: the weight inequality
//! (a refutation) and a greedy push of pebbles down a BFS tree toward the
//! root (a witness). Only when both are inconclusive does a depth-first
//! search over reachable configurations run, memoizing visited states and
//! pruning any configuration whose weight has dropped below the target.
//!
//! Budget exhaustion is always reported as [`SolverError::BudgetExhausted`],
//! never folded into a negative answer.

mod enumerate;
mod numbers;
mod reach;

pub use enumerate::Candidates;
pub use numbers::{OptimalPebbling, PebblingNumber, RootedPebbling};
pub use reach::{ReachResult, Solvability};

use std::sync::atomic::{AtomicU64, Ordering};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::pebble::{Distribution, PebbleError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolverError {
    #[error("search budget of {limit} states exhausted")]
    BudgetExhausted { limit: u64 },
    #[error("graph is empty or not connected")]
    NotConnected,
    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Pebble(#[from] PebbleError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Search settings. The state budget applies to each reachability query.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub max_states: u64,
    /// Worker threads for level enumeration; `1` keeps everything on the
    /// calling thread.
    pub parallelism: usize,
    pub use_weight_pruning: bool,
    /// Skip configurations pointwise below a recently refuted one.
    pub use_dominance_pruning: bool,
    /// Enumerate only squished (for `π`) or smooth, leaf-free (for `π_OPT`)
    /// candidates.
    pub restrict_candidates: bool,
    /// Recheck weight monotonicity on every explored move and the weight
    /// inequality on every positive verdict, counting violations in
    /// [`SolverStats`].
    pub audit_weights: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            max_states: 5_000_000,
            parallelism: 1,
            use_weight_pruning: true,
            use_dominance_pruning: false,
            restrict_candidates: true,
            audit_weights: false,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<(), SolverError> {
        if self.max_states == 0 {
            return Err(SolverError::InvalidConfig("max_states must be positive".into()));
        }
        if self.parallelism == 0 {
            return Err(SolverError::InvalidConfig("parallelism must be positive".into()));
        }
        Ok(())
    }
}

/// Counters shared by all queries of one [`Solver`].
#[derive(Debug, Default)]
pub struct SolverStats {
    reach_queries: AtomicU64,
    weight_refutations: AtomicU64,
    greedy_witnesses: AtomicU64,
    searches: AtomicU64,
    states: AtomicU64,
    audited_moves: AtomicU64,
    weight_violations: AtomicU64,
    verdict_violations: AtomicU64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatsSnapshot {
    pub reach_queries: u64,
    pub weight_refutations: u64,
    pub greedy_witnesses: u64,
    pub searches: u64,
    pub states: u64,
    pub audited_moves: u64,
    /// Explored moves that increased the weight toward the queried root.
    pub weight_violations: u64,
    /// Positive verdicts whose starting distribution failed the weight inequality.
    pub verdict_violations: u64,
}

impl SolverStats {
    fn bump(counter: &AtomicU64, by: u64) {
        counter.fetch_add(by, Ordering::Relaxed);
    }

    pub fn snapshot(&self) -> StatsSnapshot {
        let get = |c: &AtomicU64| c.load(Ordering::Relaxed);
        StatsSnapshot {
            reach_queries: get(&self.reach_queries),
            weight_refutations: get(&self.weight_refutations),
            greedy_witnesses: get(&self.greedy_witnesses),
            searches: get(&self.searches),
            states: get(&self.states),
            audited_moves: get(&self.audited_moves),
            weight_violations: get(&self.weight_violations),
            verdict_violations: get(&self.verdict_violations),
        }
    }
}

impl std::ops::AddAssign for StatsSnapshot {
    fn add_assign(&mut self, o: StatsSnapshot) {
        self.reach_queries += o.reach_queries;
        self.weight_refutations += o.weight_refutations;
        self.greedy_witnesses += o.greedy_witnesses;
        self.searches += o.searches;
        self.states += o.states;
        self.audited_moves += o.audited_moves;
        self.weight_violations += o.weight_violations;
        self.verdict_violations += o.verdict_violations;
    }
}

/// Per-root metric data shared by every query.
#[derive(Debug)]
struct RootData {
    dist: Vec<usize>,
    ecc: usize,
    /// Lowest-id neighbor one step closer to the root.
    parent: Vec<usize>,
    /// Non-root vertices by decreasing distance (ties by id).
    far_first: Vec<usize>,
    /// Every arc `(u, w)` with `u` not the root: toward the root first,
    /// then sideways, then away; ties by distance of `u`, then ids.
    arcs: Vec<(usize, usize)>,
}

/// An exact solver bound to one connected graph.
#[derive(Debug)]
pub struct Solver<'g> {
    g: &'g Graph,
    cfg: SolverConfig,
    roots: Vec<RootData>,
    stats: SolverStats,
    pool: Option<rayon::ThreadPool>,
}

impl<'g> Solver<'g> {
    pub fn new(g: &'g Graph, cfg: SolverConfig) -> Result<Self, SolverError> {
        cfg.validate()?;
        if g.vertex_count() == 0 || !g.is_connected() {
            return Err(SolverError::NotConnected);
        }
        let roots = (0..g.vertex_count()).map(|r| root_data(g, r)).collect();
        let pool = if cfg.parallelism > 1 {
            Some(
                rayon::ThreadPoolBuilder::new()
                    .num_threads(cfg.parallelism)
                    .build()
                    .map_err(|e| SolverError::InvalidConfig(e.to_string()))?,
            )
        } else {
            None
        };
        Ok(Solver { g, cfg, roots, stats: SolverStats::default(), pool })
    }

    pub fn graph(&self) -> &'g Graph {
        self.g
    }

    pub fn config(&self) -> &SolverConfig {
        &self.cfg
    }

    pub fn stats(&self) -> StatsSnapshot {
        self.stats.snapshot()
    }

    /// Eccentricity of `r`.
    pub fn eccentricity(&self, r: usize) -> usize {
        self.roots[r].ecc
    }

    pub fn distance(&self, u: usize, v: usize) -> usize {
        self.roots[u].dist[v]
    }

    fn check_root(&self, r: usize) -> Result<(), SolverError> {
        Ok(self.g.check_vertex(r)?)
    }

    fn check_distribution(&self, d: &Distribution) -> Result<(), SolverError> {
        Ok(d.check_graph(self.g)?)
    }
}

fn root_data(g: &Graph, r: usize) -> RootData {
    let dist = g.distances_from(r);
    let ecc = dist.iter().copied().max().unwrap_or(0);
    let parent = (0..g.vertex_count())
        .map(|v| {
            if v == r {
                usize::MAX
            } else {
                g.neighbors(v).iter().copied().find(|&w| dist[w] + 1 == dist[v]).expect("connected")
            }
        })
        .collect();
    let mut far_first: Vec<usize> = (0..g.vertex_count()).filter(|&v| v != r).collect();
    far_first.sort_by_key(|&v| (std::cmp::Reverse(dist[v]), v));
    let mut arcs: Vec<(usize, usize)> = (0..g.vertex_count())
        .filter(|&u| u != r)
        .flat_map(|u| g.neighbors(u).iter().map(move |&w| (u, w)))
        .collect();
    arcs.sort_by_key(|&(u, w)| (dist[w] + 1 - dist[u], dist[u], u, w));
    RootData { dist, ecc, parent, far_first, arcs }
}

/// `reachable(g, d, r, m, cfg)` as a one-shot call.
pub fn reachable(g: &Graph, d: &Distribution, r: usize, m: u64, cfg: &SolverConfig) -> Result<ReachResult, SolverError> {
    Solver::new(g, cfg.clone())?.reachable(d, r, m)
}

pub fn is_solvable(g: &Graph, d: &Distribution, m: u64, cfg: &SolverConfig) -> Result<Solvability, SolverError> {
    Solver::new(g, cfg.clone())?.is_solvable(d, m)
}

pub fn pebbling_number_rooted(g: &Graph, r: usize, cfg: &SolverConfig) -> Result<RootedPebbling, SolverError> {
    Solver::new(g, cfg.clone())?.pebbling_number_rooted(r)
}

pub fn pebbling_number(g: &Graph, cfg: &SolverConfig) -> Result<PebblingNumber, SolverError> {
    Solver::new(g, cfg.clone())?.pebbling_number()
}

pub fn optimal_pebbling_number(g: &Graph, cfg: &SolverConfig) -> Result<OptimalPebbling, SolverError> {
    Solver::new(g, cfg.clone())?.optimal_pebbling_number()
}

pub fn min_m_solvable(g: &Graph, m: u64, cfg: &SolverConfig) -> Result<OptimalPebbling, SolverError> {
    Solver::new(g, cfg.clone())?.min_m_solvable(m)
}

pub fn enumerate_optimal_2solvable(p: &Graph, cfg: &SolverConfig) -> Result<Vec<Distribution>, SolverError> {
    Solver::new(p, cfg.clone())?.enumerate_optimal_2solvable()
}

pub fn rung_2reachable(g: &Graph, d: &Distribution, rung: (usize, usize), cfg: &SolverConfig) -> Result<bool, SolverError> {
    Solver::new(g, cfg.clone())?.rung_2reachable(d, rung)
}
