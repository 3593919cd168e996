//! Small named graphs used as seeds and test corpora.

use crate::graph::Graph;

/// Path on `n` vertices, `0 - 1 - ... - (n-1)`.
pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &edges).expect("path edges are simple")
}

/// Cycle on `n >= 3` vertices.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycles need at least three vertices");
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges).expect("cycle edges are simple")
}

pub fn complete(n: usize) -> Graph {
    let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    Graph::from_edges(n, &edges).expect("complete graph edges are simple")
}

/// Star K_{1,leaves} with center 0.
pub fn star(leaves: usize) -> Graph {
    let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
    Graph::from_edges(leaves + 1, &edges).expect("star edges are simple")
}

/// Petersen graph: outer 5-cycle 0..5, inner pentagram 5..10.
pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::from_edges(10, &edges).expect("petersen edges are simple")
}

/// Index helpers for the dodecahedron in its three-ring plane layout:
/// inner pentagon `0..5`, middle ten-cycle `5..15`, outer pentagon `15..20`.
pub mod dodeca {
    pub fn inner(i: usize) -> usize {
        i % 5
    }
    pub fn middle(j: usize) -> usize {
        5 + j % 10
    }
    pub fn outer(i: usize) -> usize {
        15 + i % 5
    }

    /// The six edges of rotation sector `i`, in a fixed order shared with
    /// the layout templates: inner side, inner spoke, two middle edges,
    /// outer spoke, outer side.
    pub fn sector_edges(i: usize) -> [(usize, usize); 6] {
        [
            (inner(i), inner(i + 1)),
            (inner(i), middle(2 * i + 1)),
            (middle(2 * i), middle(2 * i + 1)),
            (middle(2 * i + 1), middle(2 * i + 2)),
            (middle(2 * i), outer(i)),
            (outer(i), outer(i + 1)),
        ]
    }
}

/// The dodecahedron graph: 20 vertices, 30 edges, cubic, girth five.
pub fn dodecahedron() -> Graph {
    let edges: Vec<_> = (0..5).flat_map(dodeca::sector_edges).collect();
    Graph::from_edges(20, &edges).expect("dodecahedron edges are simple")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!((path(4).n(), path(4).m()), (4, 3));
        assert_eq!(cycle(7).m(), 7);
        assert_eq!(complete(5).m(), 10);
        assert_eq!(star(5).max_degree(), 5);
        let p = petersen();
        assert_eq!((p.n(), p.m(), p.min_degree(), p.max_degree()), (10, 15, 3, 3));
        let d = dodecahedron();
        assert_eq!((d.n(), d.m(), d.min_degree(), d.max_degree()), (20, 30, 3, 3));
        assert!(d.is_connected());
    }
}
