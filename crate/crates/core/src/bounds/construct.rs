use std::sync::OnceLock;

use num_bigint::BigInt;
use regex::Regex;
use serde::{Deserialize, Serialize};

use super::{pre, BoundKind, BoundReport, BoundsError, Quantity, Witness};
use crate::graph::{collapse, generate, FamilySpec, Graph, VertexPartition, UNREACHABLE};
use crate::pebble::Distribution;
use crate::rational::{integer, ratio};
use crate::solver::{Solver, SolverConfig};

/// Vertices of a path graph in order, starting from its lowest-id end.
pub(crate) fn path_order(g: &Graph) -> Option<Vec<usize>> {
    if !g.is_tree() || g.max_degree() > 2 {
        return None;
    }
    let start = (0..g.vertex_count()).find(|&v| g.degree(v) <= 1)?;
    Some(walk(g, start))
}

/// Vertices of a cycle graph in order: `0`, then its lower neighbor, onward.
pub(crate) fn cycle_order(g: &Graph) -> Option<Vec<usize>> {
    if g.vertex_count() < 3 || g.regularity() != Some(2) || !g.is_connected() {
        return None;
    }
    Some(walk(g, 0))
}

fn walk(g: &Graph, start: usize) -> Vec<usize> {
    let mut order = vec![start];
    let mut seen = vec![false; g.vertex_count()];
    seen[start] = true;
    while let Some(&next) = g.neighbors(*order.last().unwrap()).iter().find(|&&w| !seen[w]) {
        seen[next] = true;
        order.push(next);
    }
    order
}

fn blocks_of_three(order: &[usize], n: usize) -> Distribution {
    let mut d = Distribution::zeros(n);
    let full = order.len() / 3;
    for b in 0..full {
        d.add(order[3 * b + 1], 2);
    }
    for &v in &order[3 * full..] {
        d.add(v, 1);
    }
    d
}

/// `⌈2n/3⌉` pebbles on a path or cycle: two on the middle of each block of
/// three consecutive vertices, one on each leftover vertex.
pub fn two_thirds_distribution(g: &Graph) -> Result<Distribution, BoundsError> {
    let order = path_order(g).or_else(|| cycle_order(g)).ok_or_else(|| pre("graph is neither a path nor a cycle"))?;
    Ok(blocks_of_three(&order, g.vertex_count()))
}

/// A solvable distribution with at most `⌈2n/3⌉` pebbles on a tree, built by
/// repeatedly trimming three or more vertices at the end of a longest path
/// and adding two pebbles. One of the trimming cases decides where the two
/// pebbles go by asking the solver whether a vertex is 2-reachable in the
/// trimmed tree.
pub fn tree_two_thirds_distribution(t: &Graph, cfg: &SolverConfig) -> Result<Distribution, BoundsError> {
    if !t.is_tree() {
        return Err(crate::tree::TreeError::NotATree.into());
    }
    let n = t.vertex_count();
    let mut alive = vec![true; n];
    let mut d = Distribution::zeros(n);
    // Each step records (trimmed vertices, vertex receiving 2 or a pending
    // decision); the decision needs the final distribution of the remainder,
    // so steps are resolved in reverse.
    enum Place {
        At(usize),
        XOrY { x: usize, y: usize },
    }
    let mut steps: Vec<(Vec<bool>, Place)> = Vec::new();
    loop {
        let verts: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
        let deg = |v: usize, alive: &[bool]| t.neighbors(v).iter().filter(|&&w| alive[w]).count();
        if verts.len() <= 3 {
            match verts.len() {
                1 => d.add(verts[0], 1),
                2 => d.add(verts[0], 2),
                _ => d.add(*verts.iter().find(|&&v| deg(v, &alive) == 2).unwrap(), 2),
            }
            break;
        }
        let far = |src: usize, alive: &[bool]| {
            let dist = bfs_alive(t, src, alive);
            let best = verts.iter().copied().max_by_key(|&v| (dist[v], std::cmp::Reverse(v))).unwrap();
            (best, dist)
        };
        let (a, _) = far(verts[0], &alive);
        let (z, dist_z) = far(a, &alive);
        // walk from z toward a along the longest path
        let dist_a = bfs_alive(t, a, &alive);
        let step = |v: usize| *t.neighbors(v).iter().find(|&&w| alive[w] && dist_a[w] + 1 == dist_a[v]).unwrap();
        let _ = dist_z;
        let y = step(z);
        let x = step(y);
        let before = alive.clone();
        let place = if deg(y, &alive) > 2 {
            alive[y] = false;
            for &w in t.neighbors(y) {
                if w != x {
                    alive[w] = false;
                }
            }
            Place::At(y)
        } else if deg(x, &alive) == 2 {
            for v in [x, y, z] {
                alive[v] = false;
            }
            Place::At(y)
        } else if let Some(&u) = t.neighbors(x).iter().find(|&&u| alive[u] && u != y && deg(u, &alive) == 1) {
            for v in [u, y, z] {
                alive[v] = false;
            }
            Place::At(y)
        } else {
            let w = step(x);
            let u = *t.neighbors(x).iter().find(|&&u| alive[u] && u != y && u != w).unwrap();
            let v = *t.neighbors(u).iter().find(|&&v| alive[v] && v != x && deg(v, &alive) == 1).unwrap();
            for q in [v, y, z] {
                alive[q] = false;
            }
            Place::XOrY { x, y }
        };
        let removed: Vec<bool> = (0..n).map(|v| before[v] && !alive[v]).collect();
        steps.push((removed, place));
    }
    // `alive` now marks the base; grow back step by step
    for (removed, place) in steps.into_iter().rev() {
        let target = match place {
            Place::At(v) => v,
            Place::XOrY { x, y } => {
                let keep: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
                let (sub, _) = t.induced_subgraph(&keep);
                let local = Distribution::new(keep.iter().map(|&v| d.get(v)).collect());
                let xi = keep.iter().position(|&v| v == x).unwrap();
                if Solver::new(&sub, cfg.clone())?.reachable(&local, xi, 2)?.reachable {
                    x
                } else {
                    y
                }
            }
        };
        for v in 0..n {
            if removed[v] {
                alive[v] = true;
            }
        }
        d.add(target, 2);
    }
    Ok(d)
}

fn bfs_alive(t: &Graph, src: usize, alive: &[bool]) -> Vec<usize> {
    let mut dist = vec![UNREACHABLE; t.vertex_count()];
    dist[src] = 0;
    let mut queue = std::collections::VecDeque::from([src]);
    while let Some(v) = queue.pop_front() {
        for &w in t.neighbors(v) {
            if alive[w] && dist[w] == UNREACHABLE {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Greedy set `S` whose members are pairwise more than `2d` apart and which
/// every vertex is within distance `2d` of: start from vertex 0, then keep
/// adding the lowest-id vertex farther than `2d` from `S`.
pub fn distance_dominating_set(g: &Graph, d: usize) -> Result<Vec<usize>, BoundsError> {
    if d < 1 {
        return Err(pre("radius must be at least 1"));
    }
    if g.vertex_count() == 0 || !g.is_connected() {
        return Err(pre("graph must be nonempty and connected"));
    }
    let mut s = vec![0];
    let mut dist = g.distances_from(0);
    while let Some(v) = (0..g.vertex_count()).find(|&v| dist[v] > 2 * d) {
        s.push(v);
        for (x, y) in dist.iter_mut().zip(g.distances_from(v)) {
            *x = (*x).min(y);
        }
    }
    Ok(s)
}

/// Four pebbles on each vertex of a distance-2 dominating set: an upper bound
/// `4|S| ≤ 4n/(k+1)` for minimum degree `k`.
pub fn mindeg_upper_distribution(g: &Graph) -> Result<BoundReport, BoundsError> {
    let k = g.min_degree();
    if k < 1 {
        return Err(pre("minimum degree must be at least 1"));
    }
    let s = distance_dominating_set(g, 1)?;
    let mut d = Distribution::zeros(g.vertex_count());
    for &v in &s {
        d.add(v, 4);
    }
    let n = g.vertex_count();
    Ok(BoundReport::new(Quantity::OptimalPebbling, BoundKind::Upper, integer(4 * s.len()), "4|S| <= 4n/(k+1)")
        .param("n", n)
        .param("k", k)
        .param("dominating_set_size", s.len())
        .param("bound", ratio(4 * n as i64, k as i64 + 1))
        .with_witness(Witness::Distribution(d)))
}

/// The distribution behind the refined girth bound, for minimum degree
/// `k ≥ 3`, girth at least `2t+1`, `t ≥ 2`, `(k,t) ≠ (3,2)`.
///
/// Centers come from [`distance_dominating_set`] with radius `t`. Each
/// vertex joins the region of the center that reaches it first in a
/// simultaneous BFS (ties to the lower center id). A center whose BFS tree
/// has `r′` internal vertices beyond depth `t` gets `2^{t+1}` pebbles plus one
/// on each of those when `r′ < 4^t − 2^{t+1}`, and `4^t` pebbles otherwise.
pub fn biggirth_distribution(g: &Graph, t: usize) -> Result<Distribution, BoundsError> {
    let k = g.min_degree();
    if k < 3 || t < 2 || (k, t) == (3, 2) {
        return Err(pre("needs minimum degree >= 3, t >= 2 and (k,t) != (3,2)"));
    }
    if t > 15 {
        return Err(pre("t above 15 overflows pebble counts"));
    }
    if g.girth().is_some_and(|c| c < 2 * t + 1) {
        return Err(pre(format!("girth must be at least {}", 2 * t + 1)));
    }
    let n = g.vertex_count();
    let centers = distance_dominating_set(g, t)?;
    let mut owner = vec![UNREACHABLE; n];
    let mut depth = vec![UNREACHABLE; n];
    let mut parent = vec![UNREACHABLE; n];
    let mut frontier = Vec::new();
    for &c in &centers {
        owner[c] = c;
        depth[c] = 0;
        frontier.push(c);
    }
    let mut level = 0;
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &v in &frontier {
            for &w in g.neighbors(v) {
                if depth[w] == UNREACHABLE {
                    depth[w] = level + 1;
                    owner[w] = owner[v];
                    parent[w] = v;
                    next.push(w);
                } else if depth[w] == level + 1 && owner[v] < owner[w] {
                    owner[w] = owner[v];
                    parent[w] = v;
                }
            }
        }
        frontier = next;
        level += 1;
    }
    let mut internal = vec![false; n];
    for v in 0..n {
        if parent[v] != UNREACHABLE {
            internal[parent[v]] = true;
        }
    }
    let big = 1u32 << (2 * t);
    let small = 1u32 << (t + 1);
    let mut d = Distribution::zeros(n);
    for &c in &centers {
        let deep: Vec<usize> = (0..n).filter(|&v| owner[v] == c && depth[v] > t && internal[v]).collect();
        if (deep.len() as u64) < u64::from(big - small) {
            d.add(c, small);
            for v in deep {
                d.add(v, 1);
            }
        } else {
            d.add(c, big);
        }
    }
    Ok(d)
}

/// `π_OPT(G) ≥ π_OPT(collapse(G, p))`, with the collapsed value computed
/// exhaustively.
pub fn collapsing_lower_bound(g: &Graph, p: &VertexPartition, cfg: &SolverConfig) -> Result<BoundReport, BoundsError> {
    let (h, _) = collapse(g, p)?;
    let value = Solver::new(&h, cfg.clone())?.optimal_pebbling_number()?.value;
    Ok(BoundReport::new(Quantity::OptimalPebbling, BoundKind::Lower, integer(value), "pi_opt(collapse(G))")
        .param("n", g.vertex_count())
        .param("collapsed_n", h.vertex_count())
        .with_witness(Witness::Partition(p.clone())))
}

fn clique_chain_distribution(r: usize, s: usize, closed: bool) -> Result<Distribution, BoundsError> {
    if s < 3 || r < 1 {
        return Err(pre("the construction needs s >= 3 and r >= 1"));
    }
    if closed && r < 3 {
        return Err(pre("a ring of cliques needs r >= 3"));
    }
    let mut d = Distribution::zeros(r * s);
    for start in (0..r).step_by(5) {
        let len = (r - start).min(5);
        d.add((start + (len - 1) / 2) * s, 4);
    }
    Ok(d)
}

/// Four pebbles on a vertex of the central clique of each group of five
/// consecutive cliques of `H_{r,s}`: `4⌈r/5⌉` pebbles.
pub fn hrs_distribution(r: usize, s: usize) -> Result<Distribution, BoundsError> {
    clique_chain_distribution(r, s, true)
}

/// As [`hrs_distribution`], for the open chain `G_{r,s}`.
pub fn grs_distribution(r: usize, s: usize) -> Result<Distribution, BoundsError> {
    clique_chain_distribution(r, s, false)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LadderVariant {
    Linear,
    Circular,
    Moebius,
}

impl LadderVariant {
    pub fn spec(self, m: usize) -> FamilySpec {
        match self {
            LadderVariant::Linear => FamilySpec::Ladder { m },
            LadderVariant::Circular => FamilySpec::CircularLadder { m },
            LadderVariant::Moebius => FamilySpec::Moebius { m },
        }
    }

    /// The two vertices of rung `i` in the generated labeling.
    pub fn rung(self, m: usize, i: usize) -> (usize, usize) {
        match self {
            LadderVariant::Moebius => (i, i + m),
            _ => (2 * i, 2 * i + 1),
        }
    }
}

/// A solvable distribution on a ladder with `m` rungs.
///
/// Rungs are covered by consecutive groups of three (two pebbles on one
/// vertex of the middle rung, one on the other) and four (two pebbles at
/// each of two opposite corners of the middle two rungs). Sizes: `m`, except
/// 6 for `m = 5`, and for `m = 2` three on the 4-cycle ladders and two on
/// `M_2 = K_4`.
pub fn ladder_distribution(m: usize, variant: LadderVariant) -> Result<Distribution, BoundsError> {
    if m < 2 {
        return Err(pre("a ladder needs m >= 2"));
    }
    let g = generate(&variant.spec(m))?;
    let mut d = Distribution::zeros(2 * m);
    let rung = |i| variant.rung(m, i);
    if m == 2 {
        let (a, _) = rung(0);
        d.add(a, 2);
        if variant != LadderVariant::Moebius {
            let (_, b) = rung(1);
            d.add(b, 1);
        }
        return Ok(d);
    }
    let groups: Vec<usize> = match (m % 3, m) {
        (_, 5) => vec![3, 2],
        (0, _) => vec![3; m / 3],
        (1, _) => std::iter::once(4).chain(std::iter::repeat(3).take((m - 4) / 3)).collect(),
        _ => [4, 4].into_iter().chain(std::iter::repeat(3).take((m - 8) / 3)).collect(),
    };
    let mut start = 0;
    for len in groups {
        match len {
            4 => {
                let (a, _) = rung(start + 1);
                let (c, e) = rung(start + 2);
                let opposite = if g.has_edge(a, c) { e } else { c };
                d.add(a, 2);
                d.add(opposite, 2);
            }
            _ => {
                // three rungs, or the last two rungs when m = 5
                let (a, b) = rung(start + 1.min(len - 1));
                d.add(a, 2);
                d.add(b, 1);
            }
        }
        start += len;
    }
    Ok(d)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SierpinskiVariant {
    /// `2·3^{m−2}` pebbles.
    Saving,
    /// `2·3^{m−2} + 6` pebbles: four on every corner of a copy of `G_3`.
    Base,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SierpinskiDistribution {
    pub distribution: Distribution,
    pub variant: SierpinskiVariant,
    /// Whether the solver confirmed solvability.
    pub verified: bool,
    /// Set when the saving variant failed the check and the base one was used.
    pub discrepancy: Option<String>,
}

fn sierpinski_points(m: usize) -> Result<Vec<(usize, usize)>, BoundsError> {
    if m < 3 {
        return Err(pre("the construction needs m >= 3"));
    }
    Ok(crate::graph::sierpinski_coordinates(m)?)
}

/// Four pebbles on every corner of a copy of `G_3` inside `H_m`.
pub fn sierpinski_base_distribution(m: usize) -> Result<Distribution, BoundsError> {
    let pts = sierpinski_points(m)?;
    let mut d = Distribution::zeros(pts.len());
    for (v, &(a, b)) in pts.iter().enumerate() {
        if a % 4 == 0 && b % 4 == 0 {
            d.add(v, 4);
        }
    }
    Ok(d)
}

/// The base distribution with the pebbles removed from the side joining
/// corners `y = 1` and `z = 2`, and two pebbles put on each interior corner of
/// a copy of `G_2` along that side. Corner `x = 0` keeps its four pebbles,
/// which cover `y`, `z` and their neighbors through the added corner edges.
pub fn sierpinski_saving_distribution(m: usize) -> Result<Distribution, BoundsError> {
    let pts = sierpinski_points(m)?;
    let side = 1usize << (m - 1);
    let mut d = sierpinski_base_distribution(m)?;
    for (v, &(a, b)) in pts.iter().enumerate() {
        if a + b == side {
            d.set(v, 0);
            if a % 2 == 0 && a != 0 && b != 0 {
                d.add(v, 2);
            }
        }
    }
    Ok(d)
}

/// The saving construction on `H_m`, checked with the solver when `H_m` is
/// small (`m = 3`); falls back to the base construction if the check fails.
pub fn sierpinski_distribution(m: usize, cfg: &SolverConfig) -> Result<SierpinskiDistribution, BoundsError> {
    let saving = sierpinski_saving_distribution(m)?;
    if m > 3 {
        return Ok(SierpinskiDistribution { distribution: saving, variant: SierpinskiVariant::Saving, verified: false, discrepancy: None });
    }
    let g = generate(&FamilySpec::SierpinskiH { m })?;
    let solver = Solver::new(&g, cfg.clone())?;
    if solver.is_solvable(&saving, 1)?.solvable {
        return Ok(SierpinskiDistribution { distribution: saving, variant: SierpinskiVariant::Saving, verified: true, discrepancy: None });
    }
    let base = sierpinski_base_distribution(m)?;
    let ok = solver.is_solvable(&base, 1)?.solvable;
    Ok(SierpinskiDistribution {
        distribution: base,
        variant: SierpinskiVariant::Base,
        verified: ok,
        discrepancy: Some(format!("saving construction with {} pebbles is not solvable", saving.size())),
    })
}

/// `H_{r,s}` with `s = k/3 + 1`, `r = ⌊n/s⌋`, padded to `n` vertices by
/// `n − rs` new vertices, the `i`th copying the neighborhood of
/// `duplicates[i]` (default: vertices `0, 1, …` of the first clique).
/// Collapsing each copy onto its original gives back `H_{r,s}`, so
/// `π_OPT ≥ ⌈4r/5⌉`; the report's partition is that collapse.
pub fn mindeg_lower_family(n: usize, k: usize, duplicates: Option<&[usize]>) -> Result<(Graph, BoundReport), BoundsError> {
    if k < 3 || k % 3 != 0 {
        return Err(pre("k must be a positive multiple of 3"));
    }
    if n < k + 3 {
        return Err(pre("n must be at least k + 3"));
    }
    let s = k / 3 + 1;
    let r = n / s;
    let h = generate(&FamilySpec::Hrs { r, s })?;
    let extra = n - r * s;
    let originals: Vec<usize> = match duplicates {
        Some(ds) => ds.to_vec(),
        None => (0..extra).collect(),
    };
    if originals.len() != extra {
        return Err(pre(format!("exactly {extra} duplicated vertices needed")));
    }
    if let Some(&bad) = originals.iter().find(|&&v| v >= r * s) {
        return Err(pre(format!("vertex {bad} is not in H_{{{r},{s}}}")));
    }
    let mut edges: Vec<(usize, usize)> = h.edges().to_vec();
    for (i, &o) in originals.iter().enumerate() {
        edges.extend(h.neighbors(o).iter().map(|&w| (r * s + i, w)));
    }
    let g = Graph::from_edges(n, edges)?;
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (i, &o) in originals.iter().enumerate() {
        match groups.iter_mut().find(|b| b[0] == o) {
            Some(b) => b.push(r * s + i),
            None => groups.push(vec![o, r * s + i]),
        }
    }
    let p = VertexPartition::merging(n, &groups)?;
    let bound = BigInt::from((4 * r).div_ceil(5));
    let report = BoundReport::new(Quantity::OptimalPebbling, BoundKind::Lower, integer(bound), "ceil(4r/5), s=k/3+1, r=floor(n/s)")
        .param("n", n)
        .param("k", k)
        .param("r", r)
        .param("s", s)
        .param("asymptotic", (ratio(12, 5) - ratio(24, 5 * k as i64 + 15)) * ratio(n as i64, k as i64 + 1))
        .with_witness(Witness::Partition(p));
    Ok((g, report))
}

fn segments() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"^(?:1*21*|1*0401*)(?:0(?:1*21*|1*0401*))*$").expect("valid pattern"))
}

/// Whether `d`, read along the path `p`, is a sequence of prime segments
/// (ones with a single two, or ones around a `0,4,0` core) separated by
/// single empty vertices.
pub fn prime_segment_check(p: &Graph, d: &Distribution) -> Result<bool, BoundsError> {
    let order = path_order(p).ok_or_else(|| pre("ambient graph is not a path"))?;
    d.check_graph(p).map_err(crate::solver::SolverError::from)?;
    let mut word = String::with_capacity(order.len());
    for &v in &order {
        match d.get(v) {
            c @ (0 | 1 | 2 | 4) => word.push(char::from(b'0' + c as u8)),
            _ => return Ok(false),
        }
    }
    Ok(segments().is_match(&word))
}
