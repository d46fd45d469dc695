//! Simple undirected graphs on dense vertex ids `0..n`.
//!
//! A [`Graph`] is immutable once built. Every constructor validates that the
//! edge list is simple (no loops, no repeated edges, ids in range), so the
//! rest of the crate can rely on symmetric, sorted adjacency lists.

mod family;
pub mod fixtures;
pub mod random;
pub mod catalog;

pub use family::{generate, sierpinski_coordinates, FamilySpec};

use std::collections::VecDeque;
use std::fmt::Write as _;

use thiserror::Error;

/// Errors raised while building or querying a graph.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    InvalidVertex { vertex: usize, n: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid family parameters: {0}")]
    InvalidParameters(String),
    #[error("graph is not connected")]
    NotConnected,
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Immutable simple undirected graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Builds a graph on `n` vertices, rejecting loops, duplicate edges and
    /// out-of-range ids. Edges may be given in either orientation.
    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut adj = vec![Vec::new(); n];
        let mut list = Vec::new();
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::InvalidVertex { vertex: x, n });
                }
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        for w in list.windows(2) {
            if w[0] == w[1] {
                return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
            }
        }
        for &(u, v) in &list {
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Ok(Graph { adj, edges: list })
    }

    /// Like [`Graph::from_edges`] but silently drops loops and repeated edges.
    pub(crate) fn from_edges_lossy(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut list: Vec<(usize, usize)> = edges
            .into_iter()
            .filter(|&(u, v)| u != v)
            .map(|(u, v)| (u.min(v), u.max(v)))
            .collect();
        list.sort_unstable();
        list.dedup();
        Graph::from_edges(n, list).expect("lossy edge list is simple")
    }

    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n], edges: Vec::new() }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.adj.len() && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(GraphError::InvalidVertex { vertex: v, n: self.vertex_count() })
        }
    }

    /// Minimum degree; `0` for the empty graph.
    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// `Some(k)` when every vertex has degree `k`.
    pub fn regularity(&self) -> Option<usize> {
        let d = self.min_degree();
        (d == self.max_degree()).then_some(d)
    }

    /// Shortest-path distances from `src`; `None` marks unreachable vertices.
    pub fn bfs_distances(&self, src: usize) -> Result<Vec<Option<usize>>, GraphError> {
        self.check_vertex(src)?;
        Ok(self
            .distances_from(src)
            .into_iter()
            .map(|d| (d != UNREACHABLE).then_some(d))
            .collect())
    }

    /// Distances from `src` with [`UNREACHABLE`] for other components.
    pub(crate) fn distances_from(&self, src: usize) -> Vec<usize> {
        self.multi_source_distances(std::iter::once(src))
    }

    pub(crate) fn multi_source_distances(&self, sources: impl IntoIterator<Item = usize>) -> Vec<usize> {
        let mut dist = vec![UNREACHABLE; self.vertex_count()];
        let mut queue = VecDeque::new();
        for s in sources {
            if dist[s] == UNREACHABLE {
                dist[s] = 0;
                queue.push_back(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if dist[w] == UNREACHABLE {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// All-pairs distance matrix via repeated BFS.
    pub fn distance_matrix(&self) -> Vec<Vec<usize>> {
        (0..self.vertex_count()).map(|v| self.distances_from(v)).collect()
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        n == 0 || self.distances_from(0).iter().all(|&d| d != UNREACHABLE)
    }

    pub fn is_tree(&self) -> bool {
        self.vertex_count() >= 1 && self.edge_count() + 1 == self.vertex_count() && self.is_connected()
    }

    /// Largest finite distance; `None` if disconnected.
    pub fn diameter(&self) -> Option<usize> {
        let mut best = 0;
        for v in 0..self.vertex_count() {
            for d in self.distances_from(v) {
                if d == UNREACHABLE {
                    return None;
                }
                best = best.max(d);
            }
        }
        Some(best)
    }

    /// Length of a shortest cycle, `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let n = self.vertex_count();
        let mut best: Option<usize> = None;
        let mut dist = vec![UNREACHABLE; n];
        let mut parent = vec![usize::MAX; n];
        for root in 0..n {
            dist.iter_mut().for_each(|d| *d = UNREACHABLE);
            dist[root] = 0;
            parent[root] = usize::MAX;
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                if let Some(b) = best {
                    if 2 * dist[u] + 1 >= b {
                        break;
                    }
                }
                for &w in &self.adj[u] {
                    if dist[w] == UNREACHABLE {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        let len = dist[u] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// Subgraph induced by `keep` (in the given order). Returns the subgraph
    /// and, for each new vertex, its id in `self`.
    pub fn induced_subgraph(&self, keep: &[usize]) -> (Graph, Vec<usize>) {
        let mut new_id = vec![UNREACHABLE; self.vertex_count()];
        for (i, &v) in keep.iter().enumerate() {
            new_id[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| new_id[u] != UNREACHABLE && new_id[v] != UNREACHABLE)
            .map(|&(u, v)| (new_id[u], new_id[v]));
        (Graph::from_edges_lossy(keep.len(), edges), keep.to_vec())
    }

    /// Graph with one more edge `u v`.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        Graph::from_edges(self.vertex_count(), self.edges.iter().copied().chain([(u, v)]))
    }

    /// Parses the text format: a header `n m` followed by `m` lines `u v`.
    pub fn parse_text(text: &str) -> Result<Graph, GraphError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hline, header) = lines.next().ok_or(GraphError::Parse { line: 1, msg: "missing header".into() })?;
        let (n, m) = parse_pair(hline, header)?;
        let mut edges = Vec::with_capacity(m);
        for (line, l) in lines {
            edges.push(parse_pair(line, l)?);
        }
        if edges.len() != m {
            return Err(GraphError::Parse {
                line: hline,
                msg: format!("header declares {m} edges, found {}", edges.len()),
            });
        }
        Graph::from_edges(n, edges)
    }

    /// Serializes to the text format, edges in sorted order.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.vertex_count(), self.edge_count());
        for &(u, v) in &self.edges {
            let _ = writeln!(s, "{u} {v}");
        }
        s
    }
}

pub(crate) const UNREACHABLE: usize = usize::MAX;

fn parse_pair(line: usize, l: &str) -> Result<(usize, usize), GraphError> {
    let err = |msg: &str| GraphError::Parse { line, msg: msg.to_string() };
    let mut it = l.split_whitespace();
    let a = it.next().ok_or_else(|| err("expected two integers"))?;
    let b = it.next().ok_or_else(|| err("expected two integers"))?;
    if it.next().is_some() {
        return Err(err("trailing tokens"));
    }
    let a = a.parse().map_err(|_| err("invalid integer"))?;
    let b = b.parse().map_err(|_| err("invalid integer"))?;
    Ok((a, b))
}

/// Cartesian product `g □ h`; vertex `(u, v)` gets id `u * n(h) + v`.
pub fn cartesian_product(g: &Graph, h: &Graph) -> Graph {
    let nh = h.vertex_count();
    let id = |u: usize, v: usize| u * nh + v;
    let mut edges = Vec::with_capacity(g.vertex_count() * h.edge_count() + nh * g.edge_count());
    for u in 0..g.vertex_count() {
        for &(a, b) in h.edges() {
            edges.push((id(u, a), id(u, b)));
        }
    }
    for v in 0..nh {
        for &(a, b) in g.edges() {
            edges.push((id(a, v), id(b, v)));
        }
    }
    Graph::from_edges(g.vertex_count() * nh, edges).expect("product of simple graphs is simple")
}

/// Disjoint nonempty vertex blocks covering `0..n`. Serialized as the list
/// of blocks.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(try_from = "Vec<Vec<usize>>", into = "Vec<Vec<usize>>")]
pub struct VertexPartition {
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl TryFrom<Vec<Vec<usize>>> for VertexPartition {
    type Error = GraphError;
    fn try_from(blocks: Vec<Vec<usize>>) -> Result<Self, GraphError> {
        let n = blocks.iter().map(Vec::len).sum();
        VertexPartition::new(n, blocks)
    }
}

impl From<VertexPartition> for Vec<Vec<usize>> {
    fn from(p: VertexPartition) -> Self {
        p.blocks
    }
}

impl VertexPartition {
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self, GraphError> {
        let mut block_of = vec![UNREACHABLE; n];
        for (i, b) in blocks.iter().enumerate() {
            if b.is_empty() {
                return Err(GraphError::InvalidPartition(format!("block {i} is empty")));
            }
            for &v in b {
                if v >= n {
                    return Err(GraphError::InvalidPartition(format!("vertex {v} out of range")));
                }
                if block_of[v] != UNREACHABLE {
                    return Err(GraphError::InvalidPartition(format!("vertex {v} in two blocks")));
                }
                block_of[v] = i;
            }
        }
        if let Some(v) = block_of.iter().position(|&b| b == UNREACHABLE) {
            return Err(GraphError::InvalidPartition(format!("vertex {v} not covered")));
        }
        Ok(VertexPartition { blocks, block_of })
    }

    pub fn singletons(n: usize) -> Self {
        VertexPartition { blocks: (0..n).map(|v| vec![v]).collect(), block_of: (0..n).collect() }
    }

    /// Partition whose listed groups are merged and every other vertex is a
    /// singleton. Groups keep their order, followed by singletons ascending.
    pub fn merging(n: usize, groups: &[Vec<usize>]) -> Result<Self, GraphError> {
        let mut used = vec![false; n];
        for &v in groups.iter().flatten() {
            if v < n {
                used[v] = true;
            }
        }
        let mut blocks = groups.to_vec();
        blocks.extend((0..n).filter(|&v| !used[v]).map(|v| vec![v]));
        VertexPartition::new(n, blocks)
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_of(&self, v: usize) -> usize {
        self.block_of[v]
    }

    pub fn vertex_count(&self) -> usize {
        self.block_of.len()
    }

    /// The partition of the original vertices obtained by collapsing with
    /// `self` and then with `outer` (a partition of the blocks of `self`).
    pub fn compose(&self, outer: &VertexPartition) -> Result<VertexPartition, GraphError> {
        if outer.vertex_count() != self.blocks.len() {
            return Err(GraphError::InvalidPartition("outer partition size mismatch".into()));
        }
        let blocks = outer
            .blocks
            .iter()
            .map(|ob| {
                let mut b: Vec<usize> = ob.iter().flat_map(|&i| self.blocks[i].iter().copied()).collect();
                b.sort_unstable();
                b
            })
            .collect();
        VertexPartition::new(self.vertex_count(), blocks)
    }
}

/// Collapses each block of `p` to one vertex (block `i` becomes vertex `i`).
/// Loops and parallel edges produced by the merge are dropped. Returns the
/// collapsed graph and the map from old vertex to new vertex.
pub fn collapse(g: &Graph, p: &VertexPartition) -> Result<(Graph, Vec<usize>), GraphError> {
    if p.vertex_count() != g.vertex_count() {
        return Err(GraphError::InvalidPartition(format!(
            "partition covers {} vertices, graph has {}",
            p.vertex_count(),
            g.vertex_count()
        )));
    }
    let map: Vec<usize> = (0..g.vertex_count()).map(|v| p.block_of(v)).collect();
    let edges = g.edges().iter().map(|&(u, v)| (map[u], map[v]));
    Ok((Graph::from_edges_lossy(p.blocks().len(), edges), map))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        generate(&FamilySpec::Path { n }).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        generate(&FamilySpec::Cycle { n }).unwrap()
    }

    #[test]
    fn rejects_non_simple_input() {
        assert_eq!(Graph::from_edges(3, [(0, 0)]), Err(GraphError::Loop(0)));
        assert_eq!(Graph::from_edges(3, [(0, 1), (1, 0)]), Err(GraphError::DuplicateEdge(0, 1)));
        assert!(matches!(Graph::from_edges(2, [(0, 2)]), Err(GraphError::InvalidVertex { vertex: 2, .. })));
    }

    #[test]
    fn bfs_on_path_and_cycle() {
        let d: Vec<_> = path(4).bfs_distances(0).unwrap().into_iter().flatten().collect();
        assert_eq!(d, vec![0, 1, 2, 3]);
        let mut d: Vec<_> = cycle(6).bfs_distances(4).unwrap().into_iter().flatten().collect();
        d.sort_unstable();
        assert_eq!(d, vec![0, 1, 1, 2, 2, 3]);
        assert!(path(3).bfs_distances(3).is_err());
    }

    #[test]
    fn hypercube_distance_layers_are_binomial() {
        let q3 = generate(&FamilySpec::Hypercube { k: 3 }).unwrap();
        for v in 0..8 {
            let mut layers = [0; 4];
            for d in q3.bfs_distances(v).unwrap().into_iter().flatten() {
                layers[d] += 1;
            }
            assert_eq!(layers, [1, 3, 3, 1]);
        }
    }

    #[test]
    fn girth_examples() {
        assert_eq!(cycle(7).girth(), Some(7));
        assert_eq!(path(5).girth(), None);
        assert_eq!(fixtures::star(3).girth(), None);
        assert_eq!(fixtures::petersen().girth(), Some(5));
        assert_eq!(fixtures::mcgee().girth(), Some(7));
    }

    #[test]
    fn min_degree_examples() {
        assert_eq!(cycle(9).min_degree(), 2);
        assert_eq!(fixtures::star(3).min_degree(), 1);
        let h = generate(&FamilySpec::Hrs { r: 4, s: 4 }).unwrap();
        assert_eq!(h.min_degree(), 9);
        assert_eq!(h.regularity(), Some(9));
    }

    #[test]
    fn products() {
        let k2 = generate(&FamilySpec::Complete { n: 2 }).unwrap();
        let sq = cartesian_product(&k2, &k2);
        assert_eq!((sq.vertex_count(), sq.edge_count(), sq.regularity()), (4, 4, Some(2)));
        assert!(sq.is_connected());
        let prism = cartesian_product(&cycle(3), &k2);
        assert_eq!((prism.vertex_count(), prism.edge_count(), prism.regularity()), (6, 9, Some(3)));
        let p2 = cartesian_product(&path(2), &path(2));
        assert_eq!(p2.girth(), Some(4));
        assert_eq!(p2.edge_count(), 4);
    }

    #[test]
    fn collapse_rungs_of_circular_ladder() {
        let ladder = generate(&FamilySpec::CircularLadder { m: 4 }).unwrap();
        let blocks = (0..4).map(|i| vec![2 * i, 2 * i + 1]).collect();
        let p = VertexPartition::new(8, blocks).unwrap();
        let (c, map) = collapse(&ladder, &p).unwrap();
        assert_eq!(c, cycle(4));
        assert_eq!(map, vec![0, 0, 1, 1, 2, 2, 3, 3]);
    }

    #[test]
    fn collapse_internal_vertices_of_clique_ring() {
        let g = generate(&FamilySpec::CliqueRing { n: 12, k: 3 }).unwrap();
        // each copy of J is [a, i1, i2, b] with the missing edge a-b
        let groups: Vec<Vec<usize>> = (0..3).map(|c| vec![4 * c + 1, 4 * c + 2]).collect();
        let p = VertexPartition::merging(12, &groups).unwrap();
        let (c, _) = collapse(&g, &p).unwrap();
        assert_eq!(c.vertex_count(), 9);
        assert_eq!(c.regularity(), Some(2));
        assert!(c.is_connected());
    }

    #[test]
    fn singleton_collapse_is_identity() {
        let g = fixtures::petersen();
        let (c, map) = collapse(&g, &VertexPartition::singletons(10)).unwrap();
        assert_eq!(c, g);
        assert_eq!(map, (0..10).collect::<Vec<_>>());
    }

    #[test]
    fn invalid_partitions() {
        assert!(VertexPartition::new(3, vec![vec![0, 1]]).is_err());
        assert!(VertexPartition::new(3, vec![vec![0, 1], vec![1, 2]]).is_err());
        assert!(VertexPartition::new(3, vec![vec![0, 1, 2], vec![]]).is_err());
        assert!(collapse(&path(4), &VertexPartition::singletons(3)).is_err());
    }

    #[test]
    fn text_round_trip_and_errors() {
        let g = fixtures::petersen();
        assert_eq!(Graph::parse_text(&g.to_text()).unwrap(), g);
        assert!(matches!(Graph::parse_text("3 1\n0 0\n"), Err(GraphError::Loop(0))));
        assert!(matches!(Graph::parse_text("3 2\n0 1\n1 0\n"), Err(GraphError::DuplicateEdge(0, 1))));
        assert!(matches!(Graph::parse_text("3 1\n0 3\n"), Err(GraphError::InvalidVertex { .. })));
        assert!(matches!(Graph::parse_text("3 2\n0 1\n"), Err(GraphError::Parse { .. })));
        assert!(matches!(Graph::parse_text("3 1\n0 x\n"), Err(GraphError::Parse { line: 2, .. })));
    }
}
