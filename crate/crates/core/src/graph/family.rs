use std::collections::BTreeSet;
use std::fmt;

use super::{cartesian_product, Graph, GraphError};

/// A named graph family with its parameters.
///
/// Labelings are fixed so fixtures are reproducible:
///
/// * `Path`/`Cycle`: vertices in order along the path or cycle.
/// * `Hypercube`: vertex id is the bit vector of coordinates.
/// * `CliqueRing`: copy `c` of the near-clique occupies a contiguous id range;
///   its first and last ids are the two non-internal vertices.
/// * `Grs`/`Hrs`: clique `i` occupies `[i*s, (i+1)*s)`; vertex `j` of clique
///   `i` is adjacent to every vertex of clique `i+1` except vertex `j`.
/// * `Ladder`/`CircularLadder`: rung `i` is `{2i, 2i+1}`.
/// * `Moebius`: the `2m`-cycle `0..2m` with chords `i ~ i+m`; rung `i` is `{i, i+m}`.
/// * `SierpinskiG`/`SierpinskiH`: the three outer corners are `0, 1, 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    Path { n: usize },
    Cycle { n: usize },
    Hypercube { k: usize },
    Complete { n: usize },
    /// `k`-regular ring of near-cliques on `n` vertices (one enlarged copy
    /// when `k + 1` does not divide `n`).
    CliqueRing { n: usize, k: usize },
    /// `r` copies of `K_s` in a row.
    Grs { r: usize, s: usize },
    /// `r` copies of `K_s` in a circle.
    Hrs { r: usize, s: usize },
    /// `P_m □ K_2`.
    Ladder { m: usize },
    /// `C_m □ K_2` (the 4-cycle when `m = 2`).
    CircularLadder { m: usize },
    Moebius { m: usize },
    SierpinskiG { m: usize },
    SierpinskiH { m: usize },
    CartesianProduct(Box<FamilySpec>, Box<FamilySpec>),
}

impl FamilySpec {
    pub fn tag(&self) -> &'static str {
        match self {
            FamilySpec::Path { .. } => "path",
            FamilySpec::Cycle { .. } => "cycle",
            FamilySpec::Hypercube { .. } => "hypercube",
            FamilySpec::Complete { .. } => "complete",
            FamilySpec::CliqueRing { .. } => "clique_ring",
            FamilySpec::Grs { .. } => "grs",
            FamilySpec::Hrs { .. } => "hrs",
            FamilySpec::Ladder { .. } => "ladder",
            FamilySpec::CircularLadder { .. } => "circular_ladder",
            FamilySpec::Moebius { .. } => "moebius",
            FamilySpec::SierpinskiG { .. } => "sierpinski_g",
            FamilySpec::SierpinskiH { .. } => "sierpinski_h",
            FamilySpec::CartesianProduct(..) => "cartesian_product",
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Path { n } | FamilySpec::Cycle { n } | FamilySpec::Complete { n } => {
                write!(f, "{}(n={n})", self.tag())
            }
            FamilySpec::Hypercube { k } => write!(f, "hypercube(k={k})"),
            FamilySpec::CliqueRing { n, k } => write!(f, "clique_ring(n={n},k={k})"),
            FamilySpec::Grs { r, s } | FamilySpec::Hrs { r, s } => write!(f, "{}(r={r},s={s})", self.tag()),
            FamilySpec::Ladder { m }
            | FamilySpec::CircularLadder { m }
            | FamilySpec::Moebius { m }
            | FamilySpec::SierpinskiG { m }
            | FamilySpec::SierpinskiH { m } => write!(f, "{}(m={m})", self.tag()),
            FamilySpec::CartesianProduct(a, b) => write!(f, "{a} x {b}"),
        }
    }
}

fn invalid(msg: impl Into<String>) -> GraphError {
    GraphError::InvalidParameters(msg.into())
}

/// Builds the graph named by `spec`. Every output is simple and connected.
pub fn generate(spec: &FamilySpec) -> Result<Graph, GraphError> {
    let g = match *spec {
        FamilySpec::Path { n } => {
            if n < 1 {
                return Err(invalid("path needs n >= 1"));
            }
            Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))?
        }
        FamilySpec::Cycle { n } => {
            if n < 3 {
                return Err(invalid("cycle needs n >= 3"));
            }
            Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))?
        }
        FamilySpec::Complete { n } => {
            if n < 1 {
                return Err(invalid("complete graph needs n >= 1"));
            }
            Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))?
        }
        FamilySpec::Hypercube { k } => {
            if k > 20 {
                return Err(invalid("hypercube dimension above 20"));
            }
            let n = 1usize << k;
            Graph::from_edges(n, (0..n).flat_map(|v| (0..k).map(move |b| (v, v ^ (1 << b))).filter(|&(u, w)| u < w)))?
        }
        FamilySpec::CliqueRing { n, k } => clique_ring(n, k)?,
        FamilySpec::Grs { r, s } => {
            if r < 1 || s < 2 {
                return Err(invalid("grs needs r >= 1 and s >= 2"));
            }
            clique_chain(r, s, false)
        }
        FamilySpec::Hrs { r, s } => {
            if r < 3 || s < 2 {
                return Err(invalid("hrs needs r >= 3 and s >= 2"));
            }
            clique_chain(r, s, true)
        }
        FamilySpec::Ladder { m } => {
            if m < 2 {
                return Err(invalid("ladder needs m >= 2"));
            }
            cartesian_product(&generate(&FamilySpec::Path { n: m })?, &generate(&FamilySpec::Complete { n: 2 })?)
        }
        FamilySpec::CircularLadder { m } => {
            if m < 2 {
                return Err(invalid("circular ladder needs m >= 2"));
            }
            if m == 2 {
                generate(&FamilySpec::Ladder { m: 2 })?
            } else {
                cartesian_product(&generate(&FamilySpec::Cycle { n: m })?, &generate(&FamilySpec::Complete { n: 2 })?)
            }
        }
        FamilySpec::Moebius { m } => {
            if m < 2 {
                return Err(invalid("moebius ladder needs m >= 2"));
            }
            let n = 2 * m;
            Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)).chain((0..m).map(|i| (i, i + m))))?
        }
        FamilySpec::SierpinskiG { m } => sierpinski(m, false)?,
        FamilySpec::SierpinskiH { m } => sierpinski(m, true)?,
        FamilySpec::CartesianProduct(ref a, ref b) => cartesian_product(&generate(a)?, &generate(b)?),
    };
    if !g.is_connected() {
        return Err(GraphError::NotConnected);
    }
    Ok(g)
}

fn clique_ring(n: usize, k: usize) -> Result<Graph, GraphError> {
    if !(n > k && k >= 2) {
        return Err(invalid("clique_ring needs n > k >= 2"));
    }
    let r = n / (k + 1);
    if r <= 1 {
        // a single near-clique closed on itself is the complete graph
        return generate(&FamilySpec::Complete { n });
    }
    let mut sizes = vec![k + 1; r];
    sizes[0] = n - (r - 1) * (k + 1);
    let starts: Vec<usize> = sizes.iter().scan(0, |acc, &s| {
        let st = *acc;
        *acc += s;
        Some(st)
    }).collect();
    let mut edges = Vec::new();
    for (c, (&st, &sz)) in starts.iter().zip(&sizes).enumerate() {
        let (first, last) = (st, st + sz - 1);
        for u in st..st + sz {
            for v in u + 1..st + sz {
                if (u, v) != (first, last) {
                    edges.push((u, v));
                }
            }
        }
        let next_first = starts[(c + 1) % r];
        edges.push((last, next_first));
    }
    Graph::from_edges(n, edges)
}

fn clique_chain(r: usize, s: usize, closed: bool) -> Graph {
    let id = |i: usize, j: usize| i * s + j;
    let mut edges = Vec::new();
    for i in 0..r {
        for a in 0..s {
            for b in a + 1..s {
                edges.push((id(i, a), id(i, b)));
            }
        }
        let links = if closed { r } else { r - 1 };
        if i < links {
            let nxt = (i + 1) % r;
            for a in 0..s {
                for b in 0..s {
                    if a != b {
                        edges.push((id(i, a), id(nxt, b)));
                    }
                }
            }
        }
    }
    Graph::from_edges(r * s, edges).expect("clique chain is simple")
}

/// Triangular-lattice coordinates `(i, j)` of the Sierpinski graph `G_m`,
/// indexed by vertex id. Side length is `2^(m-1)`; corners `(0,0)`,
/// `(L,0)`, `(0,L)` get ids `0, 1, 2`, the rest follow in lexicographic order.
pub fn sierpinski_coordinates(m: usize) -> Result<Vec<(usize, usize)>, GraphError> {
    Ok(sierpinski_layout(m)?.0)
}

/// Offsets of the unit triangles (copies of `G_1`) making up `G_m`.
fn unit_triangles(m: usize) -> Vec<(usize, usize)> {
    let mut offsets = vec![(0, 0)];
    for level in 2..=m {
        let h = 1 << (level - 2);
        let prev = offsets.clone();
        offsets.extend(prev.iter().map(|&(a, b)| (a + h, b)));
        offsets.extend(prev.iter().map(|&(a, b)| (a, b + h)));
    }
    offsets
}

#[allow(clippy::type_complexity)]
fn sierpinski_layout(m: usize) -> Result<(Vec<(usize, usize)>, Vec<((usize, usize), (usize, usize))>), GraphError> {
    if !(1..=12).contains(&m) {
        return Err(invalid("sierpinski needs 1 <= m <= 12"));
    }
    let l = 1 << (m - 1);
    let tris = unit_triangles(m);
    let mut points = BTreeSet::new();
    let mut sides = Vec::new();
    for &(a, b) in &tris {
        let (p, q, r) = ((a, b), (a + 1, b), (a, b + 1));
        points.extend([p, q, r]);
        sides.extend([(p, q), (p, r), (q, r)]);
    }
    let corners = [(0, 0), (l, 0), (0, l)];
    let mut coords: Vec<(usize, usize)> = corners.to_vec();
    coords.extend(points.into_iter().filter(|p| !corners.contains(p)));
    Ok((coords, sides))
}

fn sierpinski(m: usize, close_corners: bool) -> Result<Graph, GraphError> {
    let (coords, sides) = sierpinski_layout(m)?;
    let index: std::collections::HashMap<_, _> = coords.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut edges: Vec<(usize, usize)> = sides.iter().map(|(p, q)| (index[p], index[q])).collect();
    if close_corners && m > 1 {
        edges.extend([(0, 1), (0, 2), (1, 2)]);
    }
    Ok(Graph::from_edges_lossy(coords.len(), edges))
}
