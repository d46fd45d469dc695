//! Exhaustive catalogs of small graphs up to isomorphism.
//!
//! Both catalogs grow by one vertex at a time and deduplicate with a
//! canonical form, so they are only meant for the small orders used in
//! verification (trees to ~14 vertices, connected graphs to 7).

use std::collections::BTreeSet;

use super::Graph;

/// All non-isomorphic trees on exactly `n` vertices (`n >= 1`).
pub fn trees(n: usize) -> Vec<Graph> {
    assert!(n >= 1);
    let mut level: BTreeSet<String> = BTreeSet::new();
    let mut current = vec![Graph::empty(1)];
    for size in 2..=n {
        level.clear();
        let mut next = Vec::new();
        for t in &current {
            for v in 0..t.vertex_count() {
                let g = Graph::from_edges(size, t.edges().iter().copied().chain([(v, size - 1)])).unwrap();
                if level.insert(tree_code(&g)) {
                    next.push(g);
                }
            }
        }
        current = next;
    }
    current
}

/// All non-isomorphic trees with at most `n` vertices, in order of size.
pub fn trees_up_to(n: usize) -> Vec<Graph> {
    (1..=n).flat_map(trees).collect()
}

/// Canonical AHU string of a tree, taken from its center(s).
pub fn tree_code(t: &Graph) -> String {
    let n = t.vertex_count();
    if n == 1 {
        return "()".into();
    }
    // peel leaves to find the center
    let mut deg = t.degrees();
    let mut layer: Vec<usize> = (0..n).filter(|&v| deg[v] == 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            for &w in t.neighbors(v) {
                if deg[w] > 1 {
                    deg[w] -= 1;
                    if deg[w] == 1 {
                        next.push(w);
                    }
                }
            }
            deg[v] = 0;
        }
        layer = next;
    }
    layer.iter().map(|&c| rooted_code(t, c, usize::MAX)).min().unwrap()
}

fn rooted_code(t: &Graph, v: usize, parent: usize) -> String {
    let mut kids: Vec<String> = t.neighbors(v).iter().filter(|&&w| w != parent).map(|&w| rooted_code(t, w, v)).collect();
    kids.sort();
    format!("({})", kids.concat())
}

/// All non-isomorphic connected graphs on exactly `n` vertices (`1 <= n <= 8`).
///
/// Every connected graph has a non-cut vertex, so extending each connected
/// graph on `n - 1` vertices by a vertex with a nonempty neighborhood reaches
/// every class.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    assert!((1..=8).contains(&n));
    let mut current = vec![Graph::empty(1)];
    for size in 2..=n {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for g in &current {
            for mask in 1u32..(1 << (size - 1)) {
                let extra = (0..size - 1).filter(|&v| mask >> v & 1 == 1).map(|v| (v, size - 1));
                let h = Graph::from_edges(size, g.edges().iter().copied().chain(extra)).unwrap();
                if seen.insert(canonical_code(&h)) {
                    next.push(h);
                }
            }
        }
        current = next;
    }
    current
}

/// Connected graphs with `1..=n` vertices.
pub fn connected_graphs_up_to(n: usize) -> Vec<Graph> {
    (1..=n).flat_map(connected_graphs).collect()
}

/// Brute-force canonical code for graphs on at most 8 vertices: the largest
/// upper-triangle adjacency bit string over relabelings that list vertices
/// by nonincreasing degree.
pub fn canonical_code(g: &Graph) -> u64 {
    let n = g.vertex_count();
    assert!(n <= 11, "canonical_code is for tiny graphs");
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    let classes: Vec<usize> = order.iter().map(|&v| g.degree(v)).collect();
    let adj: Vec<u32> = (0..n).map(|v| g.neighbors(v).iter().fold(0, |m, &w| m | 1 << w)).collect();
    let mut best = 0u64;
    let mut placed = Vec::with_capacity(n);
    let mut used = 0u32;
    search(&adj, &classes, &mut placed, &mut used, 0, &mut best);
    best
}

fn search(adj: &[u32], classes: &[usize], placed: &mut Vec<usize>, used: &mut u32, code: u64, best: &mut u64) {
    let p = placed.len();
    if p == classes.len() {
        *best = (*best).max(code);
        return;
    }
    for v in 0..adj.len() {
        if *used >> v & 1 == 1 || adj[v].count_ones() as usize != classes[p] {
            continue;
        }
        // bits for pairs (i, p), i < p, appended in order
        let mut c = code;
        for &u in placed.iter() {
            c = c << 1 | u64::from(adj[u] >> v & 1);
        }
        placed.push(v);
        *used |= 1 << v;
        search(adj, classes, placed, used, c, best);
        *used &= !(1 << v);
        placed.pop();
    }
}
