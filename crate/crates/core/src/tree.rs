//! Path partitions of trees and the tree pebbling number.
//!
//! A path partition splits the edges of a rooted tree into paths directed
//! toward the root. Its length list, sorted nonincreasingly and compared
//! lexicographically, is maximal for the partitions that determine the
//! rooted pebbling number `Σ 2^{l_i} − m + 1`.

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;
use crate::pebble::Distribution;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("graph is not a tree")]
    NotATree,
    #[error("vertex {vertex} out of range for {n} vertices")]
    InvalidVertex { vertex: usize, n: usize },
    #[error("a tree with at least two vertices is required")]
    TooSmall,
    #[error("length list must be nonempty, positive and nonincreasing")]
    InvalidLengths,
    #[error("invalid path partition: {0}")]
    InvalidPartition(String),
    #[error("instance too large: {0}")]
    TooLarge(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathPartition {
    /// Vertex sequences, each walking toward the root.
    pub paths: Vec<Vec<usize>>,
    /// Edge counts of the paths, nonincreasing.
    pub length_list: Vec<usize>,
    pub root: usize,
}

impl PathPartition {
    fn new(paths: Vec<Vec<usize>>, root: usize) -> Self {
        let mut length_list: Vec<usize> = paths.iter().map(|p| p.len() - 1).collect();
        length_list.sort_unstable_by(|a, b| b.cmp(a));
        PathPartition { paths, length_list, root }
    }
}

fn check_tree(t: &Graph) -> Result<(), TreeError> {
    if t.is_tree() {
        Ok(())
    } else {
        Err(TreeError::NotATree)
    }
}

fn check_root(t: &Graph, r: usize) -> Result<(), TreeError> {
    t.check_vertex(r).map_err(|_| TreeError::InvalidVertex { vertex: r, n: t.vertex_count() })
}

/// `Σ 2^{l_i} − m + 1` for a length list `l_1 ≥ … ≥ l_m ≥ 1`.
pub fn pi_from_lengths(lengths: &[usize]) -> Result<BigUint, TreeError> {
    if lengths.is_empty() || lengths.contains(&0) || lengths.windows(2).any(|w| w[0] < w[1]) {
        return Err(TreeError::InvalidLengths);
    }
    let sum: BigUint = lengths.iter().map(|&l| BigUint::one() << l).sum();
    Ok(sum + 1u32 - BigUint::from(lengths.len()))
}

fn lowest_farthest(dist: &[usize]) -> usize {
    let far = *dist.iter().max().expect("nonempty");
    dist.iter().position(|&d| d == far).unwrap()
}

/// Partition whose length list is both `r`- and `r′`-optimal for the two
/// ends `r′ → r` of a longest path `R`, computed in linear time.
///
/// `r` is the lowest-id vertex farthest from vertex 0 and `r′` the lowest-id
/// vertex farthest from `r`. Leaves off `R` are taken in order of distance
/// from `R` (ties by id); each is peeled along its route toward `R` up to the
/// first vertex that still has degree at least 3. `R` is the last path.
pub fn optimal_partition(t: &Graph) -> Result<PathPartition, TreeError> {
    check_tree(t)?;
    let n = t.vertex_count();
    if n < 2 {
        return Err(TreeError::TooSmall);
    }
    let r = lowest_farthest(&t.distances_from(0));
    let dr = t.distances_from(r);
    let r2 = lowest_farthest(&dr);
    let mut spine = vec![r2];
    while *spine.last().unwrap() != r {
        let v = *spine.last().unwrap();
        spine.push(*t.neighbors(v).iter().find(|&&w| dr[w] + 1 == dr[v]).unwrap());
    }
    let to_spine = t.multi_source_distances(spine.iter().copied());
    let mut on_spine = vec![false; n];
    for &v in &spine {
        on_spine[v] = true;
    }
    // bucket the off-spine leaves by distance; ids stay ascending per bucket
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); n];
    for v in 0..n {
        if !on_spine[v] && t.degree(v) == 1 {
            buckets[to_spine[v]].push(v);
        }
    }
    let mut deg = t.degrees();
    let mut paths = Vec::new();
    for x in buckets.into_iter().flatten() {
        let mut path = vec![x];
        let mut cur = x;
        loop {
            cur = *t.neighbors(cur).iter().find(|&&w| to_spine[w] + 1 == to_spine[cur]).unwrap();
            path.push(cur);
            if deg[cur] >= 3 {
                break;
            }
        }
        deg[cur] -= 1;
        paths.push(path);
    }
    paths.push(spine);
    Ok(PathPartition::new(paths, r))
}

/// Parent pointers and children lists of `t` rooted at `r`, plus a BFS order.
fn rooted(t: &Graph, r: usize) -> (Vec<usize>, Vec<Vec<usize>>, Vec<usize>) {
    let n = t.vertex_count();
    let mut parent = vec![usize::MAX; n];
    let mut children = vec![Vec::new(); n];
    let mut order = vec![r];
    let mut seen = vec![false; n];
    seen[r] = true;
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        for &w in t.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                parent[w] = v;
                children[v].push(w);
                order.push(w);
            }
        }
        i += 1;
    }
    (parent, children, order)
}

/// Greedy longest-path-first partition rooted at `r`: at every non-root
/// vertex the path through its parent edge continues down into the child
/// of greatest height (ties by lowest id); every other child edge starts a
/// path ending there. All paths begin at leaves.
pub fn rooted_partition(t: &Graph, r: usize) -> Result<PathPartition, TreeError> {
    check_tree(t)?;
    check_root(t, r)?;
    let (parent, children, order) = rooted(t, r);
    let n = t.vertex_count();
    let mut height = vec![0usize; n];
    for &v in order.iter().rev() {
        height[v] = children[v].iter().map(|&c| height[c] + 1).max().unwrap_or(0);
    }
    let mut heavy = vec![usize::MAX; n];
    for v in 0..n {
        if v != r {
            heavy[v] = children[v].iter().copied().max_by_key(|&c| (height[c], std::cmp::Reverse(c))).unwrap_or(usize::MAX);
        }
    }
    let mut paths = Vec::new();
    for &x in &order {
        if x == r || !children[x].is_empty() {
            continue;
        }
        let mut path = vec![x];
        let mut cur = x;
        loop {
            let p = parent[cur];
            path.push(p);
            if p == r || heavy[p] != cur {
                break;
            }
            cur = p;
        }
        paths.push(path);
    }
    Ok(PathPartition::new(paths, r))
}

/// `π(T, r)` via [`rooted_partition`].
pub fn rooted_pebbling_number(t: &Graph, r: usize) -> Result<BigUint, TreeError> {
    let p = rooted_partition(t, r)?;
    if p.length_list.is_empty() {
        return Ok(BigUint::one());
    }
    pi_from_lengths(&p.length_list)
}

/// Searches every path partition rooted at `r` (each non-root vertex picks
/// which child edge, if any, continues through its parent edge) and returns
/// one with the lexicographically greatest length list.
///
/// Refuses trees with more than `max_partitions` partitions.
pub fn exhaustive_rooted_partition(t: &Graph, r: usize, max_partitions: u64) -> Result<PathPartition, TreeError> {
    check_tree(t)?;
    check_root(t, r)?;
    let (parent, children, _) = rooted(t, r);
    let n = t.vertex_count();
    let free: Vec<usize> = (0..n).filter(|&v| v != r && !children[v].is_empty()).collect();
    let total = free.iter().try_fold(1u64, |acc, &v| acc.checked_mul(children[v].len() as u64 + 1));
    match total {
        Some(c) if c <= max_partitions => {}
        _ => return Err(TreeError::TooLarge(format!("more than {max_partitions} partitions"))),
    }
    let mut choice = vec![usize::MAX; n];
    let mut best: Option<PathPartition> = None;
    fn build(parent: &[usize], children: &[Vec<usize>], choice: &[usize], r: usize) -> Vec<Vec<usize>> {
        let n = parent.len();
        let mut paths = Vec::new();
        for u in 0..n {
            // u starts a path when nothing continues into its parent edge
            if u == r || (!children[u].is_empty() && choice[u] != usize::MAX) {
                continue;
            }
            let mut path = vec![u];
            let mut cur = u;
            loop {
                let p = parent[cur];
                path.push(p);
                if p == r || choice[p] != cur {
                    break;
                }
                cur = p;
            }
            paths.push(path);
        }
        paths
    }
    fn go(
        i: usize,
        free: &[usize],
        parent: &[usize],
        children: &[Vec<usize>],
        choice: &mut Vec<usize>,
        r: usize,
        best: &mut Option<PathPartition>,
    ) {
        if i == free.len() {
            let cand = PathPartition::new(build(parent, children, choice, r), r);
            if best.as_ref().map_or(true, |b| cand.length_list > b.length_list) {
                *best = Some(cand);
            }
            return;
        }
        let v = free[i];
        for c in children[v].iter().copied().chain([usize::MAX]) {
            choice[v] = c;
            go(i + 1, free, parent, children, choice, r, best);
        }
        choice[v] = usize::MAX;
    }
    go(0, &free, &parent, &children, &mut choice, r, &mut best);
    Ok(best.expect("at least one partition"))
}

/// `π(T)`, computed from [`optimal_partition`]; `1` for the one-vertex tree.
pub fn tree_pebbling_number(t: &Graph) -> Result<BigUint, TreeError> {
    check_tree(t)?;
    if t.vertex_count() == 1 {
        return Ok(BigUint::one());
    }
    pi_from_lengths(&optimal_partition(t)?.length_list)
}

/// Checks that `p` partitions the edges of `t` into paths directed toward
/// `p.root` and that its length list matches.
pub fn validate_partition(t: &Graph, p: &PathPartition) -> Result<(), TreeError> {
    check_tree(t)?;
    check_root(t, p.root)?;
    let bad = |m: String| Err(TreeError::InvalidPartition(m));
    let dist = t.distances_from(p.root);
    let mut used = std::collections::HashSet::new();
    for path in &p.paths {
        if path.len() < 2 {
            return bad("path without edges".into());
        }
        for w in path.windows(2) {
            let (a, b) = (w[0], w[1]);
            if a >= t.vertex_count() || b >= t.vertex_count() || !t.has_edge(a, b) {
                return bad(format!("{a}-{b} is not an edge"));
            }
            if dist[b] + 1 != dist[a] {
                return bad(format!("{a}->{b} does not step toward the root"));
            }
            if !used.insert((a.min(b), a.max(b))) {
                return bad(format!("edge {a}-{b} used twice"));
            }
        }
    }
    if used.len() != t.edge_count() {
        return bad("edges left uncovered".into());
    }
    let mut lengths: Vec<usize> = p.paths.iter().map(|q| q.len() - 1).collect();
    lengths.sort_unstable_by(|a, b| b.cmp(a));
    if lengths != p.length_list {
        return bad("length list does not match the paths".into());
    }
    Ok(())
}

/// `2^{l} − 1` pebbles on the first vertex of each path of length `l`: a
/// distribution of `Σ (2^{l_i} − 1)` pebbles that cannot reach the root when
/// the partition is optimal for it.
pub fn lower_bound_witness(t: &Graph, p: &PathPartition) -> Result<Distribution, TreeError> {
    validate_partition(t, p)?;
    let mut d = Distribution::zeros(t.vertex_count());
    for path in &p.paths {
        let l = path.len() - 1;
        if l >= 32 {
            return Err(TreeError::TooLarge(format!("a path of length {l} needs 2^{l} − 1 pebbles")));
        }
        let add = (1u32 << l) - 1;
        if d.get(path[0]).checked_add(add).is_none() {
            return Err(TreeError::TooLarge("pebble count overflows".into()));
        }
        d.add(path[0], add);
    }
    Ok(d)
}
