//! Simple undirected graphs and the structural operators used by the
//! constructions: uniform subdivision, clique substitution, girth and the
//! corner-removal (dismantlability) test.

use std::collections::VecDeque;

use serde::Serialize;
use thiserror::Error;

/// Where a vertex came from, carried through the graph operators so that
/// results on derived graphs can be traced back to the seed graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Origin {
    /// A vertex of the seed graph.
    Original(usize),
    /// Interior vertex `index` (1-based, counted from the smaller endpoint)
    /// of the path that replaced edge `edge`.
    Subdivision { edge: usize, index: usize },
    /// Port `port` of the clique that replaced vertex `knot`.
    Port { knot: usize, port: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {v} out of range for a graph on {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("adjacency is not symmetric at {0}-{1}")]
    Asymmetric(usize, usize),
    #[error("subdivision length must be at least 1")]
    ZeroLength,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph has no vertices")]
    Empty,
}

/// Undirected simple graph on vertices `0..n` with sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    labels: Option<Vec<Origin>>,
}

impl Graph {
    /// Graph on `n` isolated vertices.
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n], labels: None }
    }

    /// Builds a graph from an edge list, rejecting loops, repeated edges and
    /// out-of-range ids. Edge order does not matter.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { v: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                let (a, b) = (u.min(w[0]), u.max(w[0]));
                return Err(GraphError::DuplicateEdge(a, b));
            }
        }
        Ok(Graph { adj, labels: None })
    }

    pub fn with_labels(mut self, labels: Vec<Origin>) -> Self {
        assert_eq!(labels.len(), self.n(), "one label per vertex");
        self.labels = Some(labels);
        self
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn labels(&self) -> Option<&[Origin]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: usize) -> Origin {
        self.labels.as_ref().map_or(Origin::Original(v), |l| l[v])
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order. The position
    /// of an edge in this list is its edge id.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m());
        for (u, list) in self.adj.iter().enumerate() {
            out.extend(list.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    /// Re-checks the structural invariants.
    pub fn validate(&self) -> Result<(), GraphError> {
        let n = self.n();
        for (u, list) in self.adj.iter().enumerate() {
            for (i, &v) in list.iter().enumerate() {
                if v >= n {
                    return Err(GraphError::VertexOutOfRange { v, n });
                }
                if v == u {
                    return Err(GraphError::SelfLoop(u));
                }
                if i > 0 && list[i - 1] >= v {
                    return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
                }
                if !self.has_edge(v, u) {
                    return Err(GraphError::Asymmetric(u, v));
                }
            }
        }
        Ok(())
    }

    pub fn is_connected(&self) -> bool {
        if self.n() == 0 {
            return true;
        }
        self.bfs_distances(0).iter().all(|d| d.is_some())
    }

    pub fn bfs_distances(&self, root: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        dist[root] = Some(0);
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap() + 1;
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(d);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub(crate) fn require_connected(&self) -> Result<(), GraphError> {
        if self.n() == 0 {
            Err(GraphError::Empty)
        } else if !self.is_connected() {
            Err(GraphError::Disconnected)
        } else {
            Ok(())
        }
    }
}

/// Vertex id of interior vertex `index` (1-based) on the path replacing edge
/// `edge` when every edge of an `n`-vertex graph becomes a path of length `l`.
#[inline]
pub fn subdivision_vertex(n: usize, l: usize, edge: usize, index: usize) -> usize {
    debug_assert!(index >= 1 && index < l);
    n + edge * (l - 1) + index - 1
}

/// Replaces every edge by a path of length `l`.
///
/// Original vertices keep their ids. Interior vertices of the path for edge
/// `e = (u, v)` (edge ids from [`Graph::edges`]) are numbered consecutively
/// from `u` towards `v`, see [`subdivision_vertex`].
pub fn subdivide(g: &Graph, l: usize) -> Result<Graph, GraphError> {
    if l == 0 {
        return Err(GraphError::ZeroLength);
    }
    let n = g.n();
    let edges = g.edges();
    let total = n + edges.len() * (l - 1);
    let mut adj = vec![Vec::new(); total];
    let mut labels: Vec<Origin> = (0..n).map(Origin::Original).collect();
    labels.reserve(total - n);
    for (e, &(u, v)) in edges.iter().enumerate() {
        let mut prev = u;
        for i in 1..l {
            let w = subdivision_vertex(n, l, e, i);
            labels.push(Origin::Subdivision { edge: e, index: i });
            adj[prev].push(w);
            adj[w].push(prev);
            prev = w;
        }
        adj[prev].push(v);
        adj[v].push(prev);
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    Ok(Graph { adj, labels: Some(labels) })
}

/// Clique substitution K(G): each vertex of degree d becomes a clique on d
/// ports, one per incident edge, and each edge joins the two matching ports.
///
/// Ports are numbered vertex by vertex, following the sorted neighbor list.
/// Isolated vertices have no ports and disappear.
pub fn clique_substitute(g: &Graph) -> Graph {
    let n = g.n();
    let mut first_port = Vec::with_capacity(n + 1);
    let mut next = 0;
    for v in 0..n {
        first_port.push(next);
        if g.degree(v) == 0 {
            log::warn!("clique substitution drops isolated vertex {v}");
        }
        next += g.degree(v);
    }
    first_port.push(next);
    let total = next;
    let port_of = |v: usize, w: usize| -> usize {
        let j = g.neighbors(v).binary_search(&w).expect("edge endpoints are neighbors");
        first_port[v] + j
    };

    let mut adj = vec![Vec::new(); total];
    let mut labels = Vec::with_capacity(total);
    for v in 0..n {
        let (lo, hi) = (first_port[v], first_port[v + 1]);
        for p in lo..hi {
            labels.push(Origin::Port { knot: v, port: p - lo });
            adj[p].extend((lo..hi).filter(|&q| q != p));
        }
    }
    for (u, v) in g.edges() {
        let (pu, pv) = (port_of(u, v), port_of(v, u));
        adj[pu].push(pv);
        adj[pv].push(pu);
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    Graph { adj, labels: Some(labels) }
}

/// Length of a shortest cycle, or `None` for a forest.
pub fn girth(g: &Graph) -> Option<usize> {
    let n = g.n();
    let mut best: Option<usize> = None;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for root in 0..n {
        dist.fill(usize::MAX);
        dist[root] = 0;
        parent[root] = usize::MAX;
        queue.clear();
        queue.push_back(root);
        'bfs: while let Some(u) = queue.pop_front() {
            if let Some(b) = best {
                // no shorter cycle through root can be found beyond this depth
                if 2 * dist[u] >= b {
                    break 'bfs;
                }
            }
            for &w in g.neighbors(u) {
                if dist[w] == usize::MAX {
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

/// Lower bound on the cop number: the minimum degree when the girth is at
/// least five, otherwise the trivial bound 1.
pub fn girth_lower_bound(g: &Graph) -> Result<usize, GraphError> {
    g.require_connected()?;
    match girth(g) {
        Some(c) if c < 5 => Ok(1),
        _ => Ok(g.min_degree().max(1)),
    }
}

/// Corner-removal test: repeatedly deletes a vertex whose closed
/// neighborhood is contained in that of another vertex. A connected graph is
/// one-cop-win exactly when this reduces it to a single vertex.
pub fn is_dismantlable(g: &Graph) -> bool {
    let n = g.n();
    if n <= 1 {
        return true;
    }
    let words = n.div_ceil(64);
    let mut closed: Vec<Vec<u64>> = (0..n)
        .map(|v| {
            let mut bits = vec![0u64; words];
            bits[v / 64] |= 1 << (v % 64);
            for &w in g.neighbors(v) {
                bits[w / 64] |= 1 << (w % 64);
            }
            bits
        })
        .collect();
    let mut alive = vec![true; n];
    let mut remaining = n;
    while remaining > 1 {
        let corner = (0..n).filter(|&u| alive[u]).find_map(|u| {
            (0..n)
                .filter(|&v| v != u && alive[v])
                .find(|&v| closed[u].iter().zip(&closed[v]).all(|(a, b)| a & !b == 0))
                .map(|_| u)
        });
        let Some(u) = corner else { return false };
        alive[u] = false;
        remaining -= 1;
        for bits in closed.iter_mut() {
            bits[u / 64] &= !(1 << (u % 64));
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn subdivide_identity_and_cycle() {
        let k2 = families::complete(2);
        let s = subdivide(&k2, 1).unwrap();
        assert_eq!(s.edges(), k2.edges());
        let c6 = subdivide(&families::cycle(3), 2).unwrap();
        assert_eq!((c6.n(), c6.m()), (6, 6));
        assert!((0..6).all(|v| c6.degree(v) == 2));
        assert_eq!(girth(&c6), Some(6));
        assert_eq!(subdivide(&k2, 0), Err(GraphError::ZeroLength));
    }

    #[test]
    fn subdivide_dodecahedron_to_440() {
        let g = subdivide(&families::dodecahedron(), 15).unwrap();
        assert_eq!((g.n(), g.m()), (440, 450));
        for v in 20..440 {
            assert!(matches!(g.label(v), Origin::Subdivision { .. }));
            assert_eq!(g.degree(v), 2);
        }
        assert_eq!(girth(&g), Some(75));
    }

    #[test]
    fn subdivision_labels_follow_edges() {
        let g = families::complete(4);
        let s = subdivide(&g, 3).unwrap();
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            let a = subdivision_vertex(4, 3, e, 1);
            let b = subdivision_vertex(4, 3, e, 2);
            assert!(s.has_edge(u, a) && s.has_edge(a, b) && s.has_edge(b, v));
            assert_eq!(s.label(b), Origin::Subdivision { edge: e, index: 2 });
        }
    }

    #[test]
    fn clique_substitution_examples() {
        let p4 = clique_substitute(&families::path(3));
        assert_eq!((p4.n(), p4.m()), (4, 3));
        assert_eq!(girth(&p4), None);
        assert!(p4.is_connected());

        let k = clique_substitute(&families::complete(4));
        assert_eq!((k.n(), k.m()), (12, 18));
        k.validate().unwrap();

        let c10 = clique_substitute(&families::cycle(5));
        assert_eq!((c10.n(), c10.m()), (10, 10));
        assert_eq!(girth(&c10), Some(10));
    }

    #[test]
    fn clique_substitution_drops_isolated() {
        let g = Graph::from_edges(3, &[(0, 1)]).unwrap();
        let k = clique_substitute(&g);
        assert_eq!((k.n(), k.m()), (2, 1));
    }

    #[test]
    fn knots_are_cliques_with_one_external_edge_per_port() {
        let g = families::petersen();
        let k = clique_substitute(&g);
        for p in 0..k.n() {
            let Origin::Port { knot, .. } = k.label(p) else { panic!("port label") };
            let outside = k
                .neighbors(p)
                .iter()
                .filter(|&&q| !matches!(k.label(q), Origin::Port { knot: o, .. } if o == knot))
                .count();
            assert_eq!(outside, 1);
            assert_eq!(k.degree(p), g.degree(knot));
        }
    }

    #[test]
    fn girth_values() {
        assert_eq!(girth(&families::path(5)), None);
        assert_eq!(girth(&families::complete(4)), Some(3));
        assert_eq!(girth(&families::cycle(4)), Some(4));
        assert_eq!(girth(&families::petersen()), Some(5));
        assert_eq!(girth(&families::dodecahedron()), Some(5));
    }

    #[test]
    fn lower_bound_certificates() {
        assert_eq!(girth_lower_bound(&families::dodecahedron()), Ok(3));
        assert_eq!(girth_lower_bound(&families::petersen()), Ok(3));
        assert_eq!(girth_lower_bound(&families::complete(4)), Ok(1));
        let split = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(girth_lower_bound(&split), Err(GraphError::Disconnected));
    }

    #[test]
    fn from_edges_rejects_bad_input() {
        assert_eq!(Graph::from_edges(2, &[(0, 0)]), Err(GraphError::SelfLoop(0)));
        assert_eq!(Graph::from_edges(2, &[(0, 1), (1, 0)]), Err(GraphError::DuplicateEdge(0, 1)));
        assert!(matches!(Graph::from_edges(2, &[(0, 2)]), Err(GraphError::VertexOutOfRange { .. })));
    }

    #[test]
    fn dismantlable_examples() {
        assert!(is_dismantlable(&families::path(6)));
        assert!(is_dismantlable(&families::complete(5)));
        assert!(!is_dismantlable(&families::cycle(4)));
        assert!(!is_dismantlable(&families::petersen()));
    }
}
