//! Squishing, smoothing and leaf stripping.

use std::collections::HashSet;

use super::{Distribution, PebbleError};
use crate::graph::Graph;

/// Maximal threads avoiding `root`: the components of the subgraph induced
/// by degree-2 vertices other than `root`, each listed as a path starting at
/// its lower-id end. A component that closes into a cycle (only possible
/// when `g` is itself a cycle and no root is excluded) is not a path and is
/// skipped.
pub fn threads(g: &Graph, root: Option<usize>) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let inside = |v: usize| g.degree(v) == 2 && Some(v) != root;
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] || !inside(s) {
            continue;
        }
        // collect the component
        let mut comp = vec![s];
        seen[s] = true;
        let mut i = 0;
        while i < comp.len() {
            for &w in g.neighbors(comp[i]) {
                if inside(w) && !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
            i += 1;
        }
        let inner_degree = |v: usize| g.neighbors(v).iter().filter(|&&w| inside(w)).count();
        let Some(start) = comp.iter().copied().filter(|&v| inner_degree(v) <= 1).min() else {
            continue;
        };
        let mut path = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        while let Some(&next) = g.neighbors(cur).iter().find(|&&w| inside(w) && w != prev) {
            path.push(next);
            prev = cur;
            cur = next;
        }
        if path.last() > path.first() {
            out.push(path);
        } else {
            path.reverse();
            out.push(path);
        }
    }
    out
}

fn check_thread(g: &Graph, d: &Distribution, thread: &[usize]) -> Result<(), PebbleError> {
    d.check_graph(g)?;
    let bad = |msg: String| Err(PebbleError::InvalidThread(msg));
    if thread.is_empty() {
        return bad("empty thread".into());
    }
    let mut seen = HashSet::new();
    for &v in thread {
        if v >= g.vertex_count() {
            return Err(PebbleError::InvalidVertex { vertex: v, n: g.vertex_count() });
        }
        if g.degree(v) != 2 {
            return bad(format!("vertex {v} has degree {}", g.degree(v)));
        }
        if !seen.insert(v) {
            return bad(format!("vertex {v} repeated"));
        }
    }
    for w in thread.windows(2) {
        if !g.has_edge(w[0], w[1]) {
            return bad(format!("{} and {} are not adjacent", w[0], w[1]));
        }
    }
    Ok(())
}

/// Positions along `thread` that hold pebbles.
fn occupied(d: &Distribution, thread: &[usize]) -> Vec<usize> {
    (0..thread.len()).filter(|&i| d.get(thread[i]) > 0).collect()
}

/// Pebbles on the thread sit on one vertex or on two adjacent vertices.
pub fn is_squished(g: &Graph, d: &Distribution, thread: &[usize]) -> Result<bool, PebbleError> {
    check_thread(g, d, thread)?;
    let occ = occupied(d, thread);
    Ok(occ.len() <= 1 || (occ.len() == 2 && occ[1] == occ[0] + 1))
}

/// Applies squishing moves until the thread is squished.
///
/// With the thread read from its lower-id end, each move takes one pebble
/// from the first occupied vertex `y` and one from the last occupied vertex
/// `z`, and puts both on `x`: the first occupied vertex strictly between
/// them, or the vertex right after `y` when nothing lies between. Every
/// move strictly lowers `Σ 2^{-b(p)}` over the thread's pebbles (`b` the
/// distance from the lower-id end), so the loop terminates.
pub fn squish(g: &Graph, d: &Distribution, thread: &[usize]) -> Result<Distribution, PebbleError> {
    check_thread(g, d, thread)?;
    let mut t = thread.to_vec();
    if t.first() > t.last() {
        t.reverse();
    }
    let mut out = d.clone();
    loop {
        let occ = occupied(&out, &t);
        if occ.len() <= 1 || (occ.len() == 2 && occ[1] == occ[0] + 1) {
            return Ok(out);
        }
        let (y, z) = (occ[0], occ[occ.len() - 1]);
        let x = if occ.len() > 2 { occ[1] } else { y + 1 };
        out.remove(t[y], 1);
        out.remove(t[z], 1);
        out.add(t[x], 2);
    }
}

/// At most two pebbles on every vertex of degree 2.
pub fn is_smooth(g: &Graph, d: &Distribution) -> bool {
    (0..g.vertex_count()).all(|v| g.degree(v) != 2 || d.get(v) <= 2)
}

/// Applies smoothing moves (take two pebbles from a degree-2 vertex holding
/// at least three, add one to each neighbor) at the lowest eligible vertex
/// until none applies.
///
/// Off cycles the process always terminates. On a cycle it terminates when
/// `|D| <= n`; with more pebbles it can revisit a configuration, which is
/// reported as [`PebbleError::SmoothingDiverges`].
pub fn smooth(g: &Graph, d: &Distribution) -> Result<Distribution, PebbleError> {
    d.check_graph(g)?;
    let mut out = d.clone();
    let on_cycle = g.regularity() == Some(2);
    let mut seen = HashSet::new();
    while let Some(v) = (0..g.vertex_count()).find(|&v| g.degree(v) == 2 && out.get(v) >= 3) {
        if on_cycle && !seen.insert(out.counts().to_vec()) {
            return Err(PebbleError::SmoothingDiverges);
        }
        out.remove(v, 2);
        for &w in g.neighbors(v) {
            out.add(w, 1);
        }
    }
    Ok(out)
}

/// Empties every leaf onto its neighbor, leaf by leaf in increasing id:
/// with `j` pebbles on the neighbor and `k >= 1` on the leaf, `j + k >= 3`
/// moves `k − 1` pebbles over (dropping one), `j + k = 2` leaves exactly two
/// on the neighbor, and `(j, k) = (0, 1)` moves the single pebble.
///
/// Solvability is preserved for graphs on at least three vertices; smaller
/// graphs are returned unchanged.
pub fn strip_leaves(g: &Graph, d: &Distribution) -> Result<Distribution, PebbleError> {
    d.check_graph(g)?;
    let mut out = d.clone();
    if g.vertex_count() < 3 {
        return Ok(out);
    }
    for v in 0..g.vertex_count() {
        if g.degree(v) != 1 || out.get(v) == 0 {
            continue;
        }
        let u = g.neighbors(v)[0];
        let (j, k) = (out.get(u), out.get(v));
        out.set(v, 0);
        match j + k {
            s if s >= 3 => out.add(u, k - 1),
            2 => out.set(u, 2),
            _ => out.set(u, 1),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{fixtures, generate, FamilySpec};

    fn path(n: usize) -> Graph {
        generate(&FamilySpec::Path { n }).unwrap()
    }

    fn dist(c: &[u32]) -> Distribution {
        Distribution::new(c.to_vec())
    }

    #[test]
    fn thread_discovery() {
        assert_eq!(threads(&path(5), None), vec![vec![1, 2, 3]]);
        let c6 = generate(&FamilySpec::Cycle { n: 6 }).unwrap();
        assert_eq!(threads(&c6, Some(0)), vec![vec![1, 2, 3, 4, 5]]);
        assert!(threads(&c6, None).is_empty());
        let spider = fixtures::spider(&[2, 3, 1]);
        assert_eq!(threads(&spider, None), vec![vec![1], vec![3, 4]]);
        assert_eq!(threads(&spider, Some(3)), vec![vec![1], vec![4]]);
    }

    #[test]
    fn squish_examples() {
        // the thread is the middle of a longer path
        let g = path(5);
        let d = squish(&g, &dist(&[0, 1, 0, 1, 0]), &[1, 2, 3]).unwrap();
        assert_eq!(d, dist(&[0, 0, 2, 0, 0]));
        let fixed = dist(&[0, 0, 3, 0, 0]);
        assert_eq!(squish(&g, &fixed, &[1, 2, 3]).unwrap(), fixed);

        let g = path(6);
        let d = squish(&g, &dist(&[0, 2, 0, 0, 2, 0]), &[1, 2, 3, 4]).unwrap();
        assert_eq!(d.size(), 4);
        assert!(is_squished(&g, &d, &[1, 2, 3, 4]).unwrap());
        assert!(squish(&g, &d, &[0, 1]).is_err());
        assert!(squish(&g, &d, &[1, 3]).is_err());
    }

    #[test]
    fn squished_predicate() {
        let g = path(6);
        assert!(is_squished(&g, &dist(&[0, 0, 2, 1, 0, 0]), &[1, 2, 3, 4]).unwrap());
        assert!(!is_squished(&g, &dist(&[0, 1, 0, 1, 0, 0]), &[1, 2, 3, 4]).unwrap());
    }

    #[test]
    fn smoothing_examples() {
        let p3 = path(3);
        assert_eq!(smooth(&p3, &dist(&[0, 4, 0])).unwrap(), dist(&[1, 2, 1]));
        assert_eq!(smooth(&p3, &dist(&[1, 2, 1])).unwrap(), dist(&[1, 2, 1]));
        assert!(is_smooth(&p3, &dist(&[1, 2, 1])));
        assert!(!is_smooth(&p3, &dist(&[0, 3, 0])));
        let c6 = generate(&FamilySpec::Cycle { n: 6 }).unwrap();
        let s = smooth(&c6, &Distribution::single(6, 0, 6)).unwrap();
        assert!(is_smooth(&c6, &s));
        assert_eq!(s.size(), 6);
        let c3 = generate(&FamilySpec::Cycle { n: 3 }).unwrap();
        assert_eq!(smooth(&c3, &Distribution::single(3, 0, 7)), Err(PebbleError::SmoothingDiverges));
    }

    #[test]
    fn leaf_stripping() {
        let p4 = path(4);
        assert_eq!(strip_leaves(&p4, &dist(&[1, 0, 0, 1])).unwrap(), dist(&[0, 1, 1, 0]));
        assert_eq!(strip_leaves(&p4, &dist(&[2, 0, 1, 1])).unwrap(), dist(&[0, 2, 2, 0]));
        assert_eq!(strip_leaves(&p4, &dist(&[3, 1, 0, 0])).unwrap(), dist(&[0, 3, 0, 0]));
        let k2 = path(2);
        assert_eq!(strip_leaves(&k2, &dist(&[1, 0])).unwrap(), dist(&[1, 0]));
    }
}
