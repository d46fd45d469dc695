//! Seeded random graphs for property tests and verification suites.

use rand::seq::SliceRandom;
use rand::Rng;

use super::{Graph, VertexPartition};

/// Uniform random labeled tree on `n >= 1` vertices (Prüfer decoding).
pub fn random_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Graph {
    if n <= 2 {
        return Graph::from_edges(n, (1..n).map(|i| (0, i))).expect("tiny tree");
    }
    let code: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &c in &code {
        degree[c] += 1;
    }
    let mut leaves: std::collections::BTreeSet<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &c in &code {
        let leaf = *leaves.iter().next().expect("a leaf always exists");
        leaves.remove(&leaf);
        edges.push((leaf, c));
        degree[c] -= 1;
        if degree[c] == 1 {
            leaves.insert(c);
        }
    }
    let mut rest = leaves.into_iter();
    edges.push((rest.next().unwrap(), rest.next().unwrap()));
    Graph::from_edges(n, edges).expect("prufer decoding yields a tree")
}

/// Random connected graph: a random spanning tree plus every other pair
/// independently with probability `p`.
pub fn random_connected_graph<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let tree = random_tree(n, rng);
    let mut edges = tree.edges().to_vec();
    for u in 0..n {
        for v in u + 1..n {
            if !tree.has_edge(u, v) && rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).expect("tree plus fresh pairs is simple")
}

/// Random partition of `0..n` into `blocks` nonempty blocks (`1 <= blocks <= n`).
pub fn random_partition<R: Rng + ?Sized>(n: usize, blocks: usize, rng: &mut R) -> VertexPartition {
    assert!(1 <= blocks && blocks <= n);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut parts: Vec<Vec<usize>> = order[..blocks].iter().map(|&v| vec![v]).collect();
    for &v in &order[blocks..] {
        parts[rng.gen_range(0..blocks)].push(v);
    }
    for p in &mut parts {
        p.sort_unstable();
    }
    VertexPartition::new(n, parts).expect("every vertex placed once")
}
