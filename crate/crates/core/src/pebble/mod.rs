//! Distributions, pebbling moves and the weight argument.

mod multigraph;
mod transform;

pub use multigraph::{acyclify, balance, order_moves, MoveMultigraph};
pub use transform::{is_smooth, is_squished, smooth, squish, strip_leaves, threads};

use std::fmt::Write as _;
use std::ops::Index;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, UNREACHABLE};
use crate::rational::Dyadic;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PebbleError {
    #[error("vertex {vertex} holds {have} pebble(s); a move needs 2")]
    InsufficientPebbles { vertex: usize, have: u32 },
    #[error("vertices {from} and {to} are not adjacent")]
    NotAdjacent { from: usize, to: usize },
    #[error("invalid move at index {index}: {cause}")]
    InvalidMove { index: usize, cause: Box<PebbleError> },
    #[error("vertex {vertex} out of range for {n} vertices")]
    InvalidVertex { vertex: usize, n: usize },
    #[error("distribution has {got} entries, graph has {expected} vertices")]
    SizeMismatch { expected: usize, got: usize },
    #[error("move multigraph is not orderable; {} arc(s) remain", residual.arc_count())]
    NotOrderable { residual: MoveMultigraph },
    #[error("invalid thread: {0}")]
    InvalidThread(String),
    #[error("smoothing moves cycle forever on this distribution")]
    SmoothingDiverges,
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Pebble counts per vertex with the total cached.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "Vec<u32>", into = "Vec<u32>")]
pub struct Distribution {
    counts: Vec<u32>,
    size: u64,
}

impl From<Vec<u32>> for Distribution {
    fn from(counts: Vec<u32>) -> Self {
        Distribution::new(counts)
    }
}

impl From<Distribution> for Vec<u32> {
    fn from(d: Distribution) -> Self {
        d.counts
    }
}

impl Index<usize> for Distribution {
    type Output = u32;
    fn index(&self, v: usize) -> &u32 {
        &self.counts[v]
    }
}

impl Distribution {
    pub fn new(counts: Vec<u32>) -> Self {
        let size = counts.iter().map(|&c| u64::from(c)).sum();
        Distribution { counts, size }
    }

    pub fn zeros(n: usize) -> Self {
        Distribution { counts: vec![0; n], size: 0 }
    }

    /// `count` pebbles on `v`, nothing elsewhere.
    pub fn single(n: usize, v: usize, count: u32) -> Self {
        let mut d = Distribution::zeros(n);
        d.add(v, count);
        d
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn vertex_count(&self) -> usize {
        self.counts.len()
    }

    pub fn get(&self, v: usize) -> u32 {
        self.counts[v]
    }

    pub fn add(&mut self, v: usize, count: u32) {
        self.counts[v] += count;
        self.size += u64::from(count);
    }

    /// Removes `count` pebbles from `v`; panics if fewer are present.
    pub fn remove(&mut self, v: usize, count: u32) {
        self.counts[v] = self.counts[v].checked_sub(count).expect("removing more pebbles than present");
        self.size -= u64::from(count);
    }

    pub fn set(&mut self, v: usize, count: u32) {
        self.size = self.size - u64::from(self.counts[v]) + u64::from(count);
        self.counts[v] = count;
    }

    /// Occupied vertices in increasing order.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.counts.iter().enumerate().filter(|(_, &c)| c > 0).map(|(v, _)| v)
    }

    /// Pointwise `self <= other`.
    pub fn le(&self, other: &Distribution) -> bool {
        self.counts.len() == other.counts.len() && self.counts.iter().zip(&other.counts).all(|(a, b)| a <= b)
    }

    pub fn check_graph(&self, g: &Graph) -> Result<(), PebbleError> {
        if self.vertex_count() == g.vertex_count() {
            Ok(())
        } else {
            Err(PebbleError::SizeMismatch { expected: g.vertex_count(), got: self.vertex_count() })
        }
    }

    /// Parses `v count` lines (occupied vertices only) for a graph on `n` vertices.
    pub fn parse_text(n: usize, text: &str) -> Result<Distribution, PebbleError> {
        let mut d = Distribution::zeros(n);
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: &str| PebbleError::Parse { line: i + 1, msg: msg.into() };
            let parts: Vec<&str> = line.split_whitespace().collect();
            let [v, c] = parts[..] else {
                return Err(err("expected `vertex count`"));
            };
            let v: usize = v.parse().map_err(|_| err("invalid vertex"))?;
            let c: u32 = c.parse().map_err(|_| err("invalid count"))?;
            if v >= n {
                return Err(PebbleError::InvalidVertex { vertex: v, n });
            }
            d.add(v, c);
        }
        Ok(d)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for v in self.support() {
            let _ = writeln!(s, "{v} {}", self.counts[v]);
        }
        s
    }
}

/// Takes two pebbles from `from` and adds one to `to`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PebbleMove {
    pub from: usize,
    pub to: usize,
}

impl PebbleMove {
    pub fn new(from: usize, to: usize) -> Self {
        PebbleMove { from, to }
    }
}

/// An ordered list of moves; validity depends on the starting distribution.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MoveSequence(pub Vec<PebbleMove>);

impl MoveSequence {
    pub fn moves(&self) -> &[PebbleMove] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl FromIterator<PebbleMove> for MoveSequence {
    fn from_iter<I: IntoIterator<Item = PebbleMove>>(iter: I) -> Self {
        MoveSequence(iter.into_iter().collect())
    }
}

fn check_move(g: &Graph, d: &Distribution, mv: PebbleMove) -> Result<(), PebbleError> {
    let n = g.vertex_count();
    for v in [mv.from, mv.to] {
        if v >= n {
            return Err(PebbleError::InvalidVertex { vertex: v, n });
        }
    }
    if !g.has_edge(mv.from, mv.to) {
        return Err(PebbleError::NotAdjacent { from: mv.from, to: mv.to });
    }
    if d.get(mv.from) < 2 {
        return Err(PebbleError::InsufficientPebbles { vertex: mv.from, have: d.get(mv.from) });
    }
    Ok(())
}

pub fn apply_move(g: &Graph, d: &Distribution, mv: PebbleMove) -> Result<Distribution, PebbleError> {
    d.check_graph(g)?;
    check_move(g, d, mv)?;
    let mut out = d.clone();
    out.remove(mv.from, 2);
    out.add(mv.to, 1);
    Ok(out)
}

/// Applies `s` in order and returns the final distribution, or the index of
/// the first invalid move.
pub fn verify_sequence(g: &Graph, d: &Distribution, s: &MoveSequence) -> Result<Distribution, PebbleError> {
    d.check_graph(g)?;
    let mut cur = d.clone();
    for (index, &mv) in s.moves().iter().enumerate() {
        check_move(g, &cur, mv).map_err(|e| PebbleError::InvalidMove { index, cause: Box::new(e) })?;
        cur.remove(mv.from, 2);
        cur.add(mv.to, 1);
    }
    Ok(cur)
}

/// Pebble counts by distance from a root, and the resulting weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightProfile {
    pub root: usize,
    /// `coefficients[i]` is the number of pebbles at distance `i` from the root.
    pub coefficients: Vec<u64>,
    /// `Σ coefficients[i] · 2^{-i}`.
    pub weight: Dyadic,
}

impl WeightProfile {
    /// The necessary condition for putting `m` pebbles on the root.
    pub fn admits(&self, m: u64) -> bool {
        self.weight.at_least(m)
    }
}

/// Pebbles in other components of a disconnected graph contribute nothing.
pub fn weight_profile(g: &Graph, d: &Distribution, r: usize) -> Result<WeightProfile, PebbleError> {
    d.check_graph(g)?;
    g.check_vertex(r).map_err(|_| PebbleError::InvalidVertex { vertex: r, n: g.vertex_count() })?;
    let dist = g.distances_from(r);
    let ecc = dist.iter().filter(|&&x| x != UNREACHABLE).max().copied().unwrap_or(0);
    let mut coefficients = vec![0u64; ecc + 1];
    for (v, &c) in d.counts().iter().enumerate() {
        if dist[v] != UNREACHABLE {
            coefficients[dist[v]] += u64::from(c);
        }
    }
    let weight = Dyadic::from_coefficients(&coefficients);
    Ok(WeightProfile { root: r, coefficients, weight })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, FamilySpec};
    use crate::rational::ratio;

    fn path(n: usize) -> Graph {
        generate(&FamilySpec::Path { n }).unwrap()
    }

    fn dist(c: &[u32]) -> Distribution {
        Distribution::new(c.to_vec())
    }

    #[test]
    fn single_moves() {
        assert_eq!(apply_move(&path(2), &dist(&[2, 0]), PebbleMove::new(0, 1)).unwrap(), dist(&[0, 1]));
        let d = apply_move(&path(3), &dist(&[4, 0, 0]), PebbleMove::new(0, 1)).unwrap();
        assert_eq!((d.counts(), d.size()), (&[2, 1, 0][..], 3));
        assert_eq!(
            apply_move(&path(2), &dist(&[1, 0]), PebbleMove::new(0, 1)),
            Err(PebbleError::InsufficientPebbles { vertex: 0, have: 1 })
        );
        assert_eq!(
            apply_move(&path(3), &dist(&[2, 0, 0]), PebbleMove::new(0, 2)),
            Err(PebbleError::NotAdjacent { from: 0, to: 2 })
        );
    }

    #[test]
    fn sequences() {
        let g = path(3);
        let start = dist(&[4, 0, 0]);
        let bad = MoveSequence(vec![PebbleMove::new(0, 1), PebbleMove::new(1, 2)]);
        assert!(matches!(verify_sequence(&g, &start, &bad), Err(PebbleError::InvalidMove { index: 1, .. })));
        let good = MoveSequence(vec![PebbleMove::new(0, 1), PebbleMove::new(0, 1), PebbleMove::new(1, 2)]);
        assert_eq!(verify_sequence(&g, &start, &good).unwrap(), dist(&[0, 0, 1]));
        assert_eq!(verify_sequence(&g, &start, &MoveSequence::default()).unwrap(), start);
    }

    #[test]
    fn weights() {
        let w = weight_profile(&path(3), &dist(&[2, 0, 0]), 2).unwrap();
        assert_eq!(w.weight.to_rational(), ratio(1, 2));
        assert_eq!(w.coefficients, vec![0, 0, 2]);
        let w = weight_profile(&path(4), &dist(&[0, 0, 3, 0]), 2).unwrap();
        assert_eq!(w.weight.to_rational(), ratio(3, 1));
        let q3 = generate(&FamilySpec::Hypercube { k: 3 }).unwrap();
        for r in 0..8 {
            let w = weight_profile(&q3, &dist(&[1; 8]), r).unwrap();
            assert_eq!(w.weight.to_rational(), ratio(27, 8));
            assert_eq!(w.coefficients, vec![1, 3, 3, 1]);
        }
    }

    #[test]
    fn text_and_json_forms() {
        let d = dist(&[0, 3, 0, 1]);
        assert_eq!(d.to_text(), "1 3\n3 1\n");
        assert_eq!(Distribution::parse_text(4, &d.to_text()).unwrap(), d);
        assert!(Distribution::parse_text(4, "4 1").is_err());
        assert!(Distribution::parse_text(4, "1 x").is_err());
        let json = serde_json::to_string(&d).unwrap();
        assert_eq!(json, "[0,3,0,1]");
        let back: Distribution = serde_json::from_str(&json).unwrap();
        assert_eq!((back.size(), back), (4, d));
    }
}
