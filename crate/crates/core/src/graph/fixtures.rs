//! Named small graphs used throughout the tests and the book.

use super::Graph;

/// Builds a cubic graph from LCF notation on an `n`-cycle.
pub fn lcf(n: usize, shifts: &[isize], repeats: usize) -> Graph {
    let mut edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    for i in 0..shifts.len() * repeats {
        let j = (i as isize + shifts[i % shifts.len()]).rem_euclid(n as isize) as usize;
        edges.push((i, j));
    }
    Graph::from_edges_lossy(n, edges)
}

/// Petersen graph: outer 5-cycle `0..5`, spokes `i ~ i+5`, inner pentagram.
pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::from_edges(10, edges).expect("petersen")
}

/// McGee graph, the (3,7)-cage: 24 vertices, LCF `[12, 7, -7]^8`.
pub fn mcgee() -> Graph {
    lcf(24, &[12, 7, -7], 8)
}

/// Heawood graph, the (3,6)-cage: 14 vertices, LCF `[5, -5]^7`.
pub fn heawood() -> Graph {
    lcf(14, &[5, -5], 7)
}

/// `K_{1,k}` with center `0`.
pub fn star(k: usize) -> Graph {
    Graph::from_edges(k + 1, (1..=k).map(|i| (0, i))).expect("star")
}

/// A subdivided star: center `0` and one leg per entry of `legs`, each leg
/// numbered outward from the center.
pub fn spider(legs: &[usize]) -> Graph {
    let mut edges = Vec::new();
    let mut next = 1;
    for &len in legs {
        let mut prev = 0;
        for _ in 0..len {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
    }
    Graph::from_edges(next, edges).expect("spider")
}
