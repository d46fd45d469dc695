use std::collections::HashSet;

use super::{Distribution, MoveSequence, PebbleError, PebbleMove};
use crate::graph::Graph;

/// A multiset of pebbling moves, forgetting their order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MoveMultigraph {
    n: usize,
    /// Sorted arc list; repeated entries are parallel arcs.
    arcs: Vec<(usize, usize)>,
}

impl MoveMultigraph {
    /// Every arc must join adjacent vertices of `g`.
    pub fn new(g: &Graph, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, PebbleError> {
        let n = g.vertex_count();
        let mut list = Vec::new();
        for (u, v) in arcs {
            for x in [u, v] {
                if x >= n {
                    return Err(PebbleError::InvalidVertex { vertex: x, n });
                }
            }
            if !g.has_edge(u, v) {
                return Err(PebbleError::NotAdjacent { from: u, to: v });
            }
            list.push((u, v));
        }
        list.sort_unstable();
        Ok(MoveMultigraph { n, arcs: list })
    }

    pub fn from_sequence(g: &Graph, s: &MoveSequence) -> Result<Self, PebbleError> {
        MoveMultigraph::new(g, s.moves().iter().map(|m| (m.from, m.to)))
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn indegree(&self, v: usize) -> usize {
        self.arcs.iter().filter(|a| a.1 == v).count()
    }

    pub fn outdegree(&self, v: usize) -> usize {
        self.arcs.iter().filter(|a| a.0 == v).count()
    }

    /// Whether the underlying directed graph has no directed cycle
    /// (antiparallel arc pairs count as 2-cycles).
    pub fn is_acyclic(&self) -> bool {
        find_cycle(self.n, &self.arcs).is_none()
    }
}

/// `indegree + D(v) − 2·outdegree`: the count left on `v` after all of `h`
/// has been fired, when `h` is orderable.
pub fn balance(h: &MoveMultigraph, d: &Distribution, v: usize) -> i64 {
    h.indegree(v) as i64 + i64::from(d.get(v)) - 2 * h.outdegree(v) as i64
}

/// Finds an ordering of `h` that is a valid pebbling sequence from `d`.
///
/// A greedy pass fires the first arc whose tail holds two pebbles. Firing a
/// legal arc never changes any balance, so on acyclic `h` the greedy pass
/// cannot get stuck unless some balance is negative. On cyclic `h` a bad
/// early choice can strand the rest, so when the greedy pass stalls there an
/// exact memoized search over remaining-arc multisets decides the question.
pub fn order_moves(g: &Graph, d: &Distribution, h: &MoveMultigraph) -> Result<MoveSequence, PebbleError> {
    d.check_graph(g)?;
    let (seq, residual) = greedy_order(d, &h.arcs);
    if residual.is_empty() {
        return Ok(seq);
    }
    if !h.is_acyclic() {
        if let Some(seq) = exact_order(d, &h.arcs) {
            return Ok(seq);
        }
    }
    Err(PebbleError::NotOrderable { residual: MoveMultigraph { n: h.n, arcs: residual } })
}

fn greedy_order(d: &Distribution, arcs: &[(usize, usize)]) -> (MoveSequence, Vec<(usize, usize)>) {
    let mut counts = d.counts().to_vec();
    let mut left = arcs.to_vec();
    let mut seq = Vec::with_capacity(arcs.len());
    while let Some(i) = left.iter().position(|&(u, _)| counts[u] >= 2) {
        let (u, v) = left.remove(i);
        counts[u] -= 2;
        counts[v] += 1;
        seq.push(PebbleMove::new(u, v));
    }
    (MoveSequence(seq), left)
}

fn exact_order(d: &Distribution, arcs: &[(usize, usize)]) -> Option<MoveSequence> {
    let mut kinds: Vec<(usize, usize)> = arcs.to_vec();
    kinds.dedup();
    let mut left: Vec<u32> = kinds.iter().map(|k| arcs.iter().filter(|a| *a == k).count() as u32).collect();
    let mut counts: Vec<i64> = d.counts().iter().map(|&c| i64::from(c)).collect();
    let mut dead = HashSet::new();
    let mut seq = Vec::new();

    fn go(
        kinds: &[(usize, usize)],
        left: &mut Vec<u32>,
        counts: &mut Vec<i64>,
        dead: &mut HashSet<Vec<u32>>,
        seq: &mut Vec<PebbleMove>,
    ) -> bool {
        if left.iter().all(|&c| c == 0) {
            return true;
        }
        if dead.contains(left) {
            return false;
        }
        for i in 0..kinds.len() {
            let (u, v) = kinds[i];
            if left[i] == 0 || counts[u] < 2 {
                continue;
            }
            left[i] -= 1;
            counts[u] -= 2;
            counts[v] += 1;
            seq.push(PebbleMove::new(u, v));
            if go(kinds, left, counts, dead, seq) {
                return true;
            }
            seq.pop();
            counts[v] -= 1;
            counts[u] += 2;
            left[i] += 1;
        }
        dead.insert(left.clone());
        false
    }

    go(&kinds, &mut left, &mut counts, &mut dead, &mut seq).then_some(MoveSequence(seq))
}

/// Directed cycle in the support of `arcs`, as a list of arc indices.
fn find_cycle(n: usize, arcs: &[(usize, usize)]) -> Option<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, &(u, _)) in arcs.iter().enumerate() {
        out[u].push(i);
    }
    // 0 = unvisited, 1 = on stack, 2 = done
    let mut state = vec![0u8; n];
    let mut via = vec![usize::MAX; n];
    for s in 0..n {
        if state[s] != 0 {
            continue;
        }
        let mut stack = vec![(s, 0usize)];
        state[s] = 1;
        while let Some(&mut (u, ref mut next)) = stack.last_mut() {
            if let Some(&ai) = out[u].get(*next) {
                *next += 1;
                let w = arcs[ai].1;
                match state[w] {
                    0 => {
                        state[w] = 1;
                        via[w] = ai;
                        stack.push((w, 0));
                    }
                    1 => {
                        let mut cycle = vec![ai];
                        let mut x = u;
                        while x != w {
                            cycle.push(via[x]);
                            x = arcs[via[x]].0;
                        }
                        return Some(cycle);
                    }
                    _ => {}
                }
            } else {
                state[u] = 2;
                stack.pop();
            }
        }
    }
    None
}

/// Removes directed cycles (one copy of each arc on the cycle) until none
/// remain. Each removal raises the balance of every cycle vertex by one and
/// leaves the others unchanged, so the result stays orderable.
pub fn acyclify(g: &Graph, d: &Distribution, h: &MoveMultigraph) -> Result<MoveMultigraph, PebbleError> {
    order_moves(g, d, h)?;
    let mut arcs = h.arcs.clone();
    while let Some(cycle) = find_cycle(h.n, &arcs) {
        let mut drop = cycle;
        drop.sort_unstable_by(|a, b| b.cmp(a));
        for i in drop {
            arcs.remove(i);
        }
    }
    let out = MoveMultigraph { n: h.n, arcs };
    order_moves(g, d, &out)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, FamilySpec};

    fn path(n: usize) -> Graph {
        generate(&FamilySpec::Path { n }).unwrap()
    }

    fn dist(c: &[u32]) -> Distribution {
        Distribution::new(c.to_vec())
    }

    #[test]
    fn balances() {
        let g = path(2);
        let d = dist(&[2, 0]);
        let empty = MoveMultigraph::new(&g, []).unwrap();
        assert_eq!((balance(&empty, &d, 0), balance(&empty, &d, 1)), (2, 0));
        let h = MoveMultigraph::new(&g, [(0, 1)]).unwrap();
        assert_eq!((balance(&h, &d, 0), balance(&h, &d, 1)), (0, 1));
        let h = MoveMultigraph::new(&g, [(0, 1), (0, 1)]).unwrap();
        assert_eq!(balance(&h, &d, 0), -2);
        assert!(MoveMultigraph::new(&path(3), [(0, 2)]).is_err());
    }

    #[test]
    fn ordering_examples() {
        let g = path(3);
        let h = MoveMultigraph::new(&g, [(1, 2), (0, 1), (0, 1)]).unwrap();
        let s = order_moves(&g, &dist(&[4, 0, 0]), &h).unwrap();
        assert_eq!(super::super::verify_sequence(&g, &dist(&[4, 0, 0]), &s).unwrap(), dist(&[0, 0, 1]));

        let k2 = path(2);
        let h = MoveMultigraph::new(&k2, [(0, 1)]).unwrap();
        assert!(matches!(order_moves(&k2, &dist(&[1, 0]), &h), Err(PebbleError::NotOrderable { .. })));
        let h = MoveMultigraph::new(&k2, [(0, 1), (1, 0)]).unwrap();
        assert!(order_moves(&k2, &dist(&[2, 0]), &h).is_err());
    }

    #[test]
    fn greedy_alone_is_not_enough_on_cycles() {
        // star with center a=0, b=1, c=2: firing a->c first strands the rest
        let g = Graph::from_edges(3, [(0, 1), (0, 2)]).unwrap();
        let h = MoveMultigraph::new(&g, [(0, 2), (0, 1), (1, 0)]).unwrap();
        let d = dist(&[3, 1, 0]);
        let (_, residual) = greedy_order(&d, &[(0, 2), (0, 1), (1, 0)]);
        assert_eq!(residual.len(), 2);
        let s = order_moves(&g, &d, &h).unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(super::super::verify_sequence(&g, &d, &s).unwrap(), dist(&[0, 0, 1]));
    }

    #[test]
    fn acyclify_examples() {
        let k2 = path(2);
        let d = dist(&[4, 0]);
        let h = MoveMultigraph::new(&k2, [(0, 1), (1, 0), (0, 1)]).unwrap();
        let a = acyclify(&k2, &d, &h).unwrap();
        assert!(a.is_acyclic());
        assert_eq!(a.arcs(), &[(0, 1)]);
        assert!(balance(&a, &d, 1) >= balance(&h, &d, 1));
        let acyclic = MoveMultigraph::new(&path(3), [(0, 1), (0, 1), (1, 2)]).unwrap();
        assert_eq!(acyclify(&path(3), &dist(&[4, 0, 0]), &acyclic).unwrap(), acyclic);
        let bad = MoveMultigraph::new(&k2, [(0, 1)]).unwrap();
        assert!(acyclify(&k2, &dist(&[0, 0]), &bad).is_err());
    }
}
