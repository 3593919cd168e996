//! Graph generators for property tests.

use std::collections::HashSet;

use geocop::Graph;
use rand::Rng;

/// Bit of pair (u, v), u < v, in a graph on at most 11 vertices.
fn bit(u: usize, v: usize) -> u64 {
    let (u, v) = (u.min(v), u.max(v));
    1 << (v * (v - 1) / 2 + u)
}

fn adjacent(mask: u64, u: usize, v: usize) -> bool {
    u != v && mask & bit(u, v) != 0
}

fn permute(mask: u64, n: usize, p: &[usize]) -> u64 {
    let mut out = 0;
    for v in 1..n {
        for u in 0..v {
            if adjacent(mask, u, v) {
                out |= bit(p[u], p[v]);
            }
        }
    }
    out
}

/// Smallest relabeling among those that list vertices by increasing
/// (degree, sorted neighbor degrees).
fn canonical(mask: u64, n: usize) -> u64 {
    let deg: Vec<usize> = (0..n).map(|v| (0..n).filter(|&u| adjacent(mask, u, v)).count()).collect();
    let key = |v: usize| {
        let mut nd: Vec<usize> = (0..n).filter(|&u| adjacent(mask, u, v)).map(|u| deg[u]).collect();
        nd.sort_unstable();
        (deg[v], nd)
    };
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| key(v));
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for &v in &order {
        match cells.last_mut() {
            Some(c) if key(c[0]) == key(v) => c.push(v),
            _ => cells.push(vec![v]),
        }
    }
    let mut best = u64::MAX;
    let mut pos = vec![0; n];
    fn rec(cells: &mut [Vec<usize>], i: usize, slot: usize, pos: &mut [usize], mask: u64, n: usize, best: &mut u64) {
        if i == cells.len() {
            *best = (*best).min(permute(mask, n, pos));
            return;
        }
        let len = cells[i].len();
        // all orders of cell i via Heap's algorithm on a copy
        let mut cell = cells[i].clone();
        let mut c = vec![0; len];
        let place = |cell: &[usize], pos: &mut [usize]| {
            for (j, &v) in cell.iter().enumerate() {
                pos[v] = slot + j;
            }
        };
        place(&cell, pos);
        rec(cells, i + 1, slot + len, pos, mask, n, best);
        let mut j = 0;
        while j < len {
            if c[j] < j {
                if j % 2 == 0 {
                    cell.swap(0, j);
                } else {
                    cell.swap(c[j], j);
                }
                place(&cell, pos);
                rec(cells, i + 1, slot + len, pos, mask, n, best);
                c[j] += 1;
                j = 0;
            } else {
                c[j] = 0;
                j += 1;
            }
        }
    }
    rec(&mut cells, 0, 0, &mut pos, mask, n, &mut best);
    best
}

fn to_graph(mask: u64, n: usize) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        for u in 0..v {
            if adjacent(mask, u, v) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// All graphs on `n` vertices up to isomorphism, as edge masks.
pub fn all_graphs(n: usize) -> Vec<u64> {
    let mut level: Vec<u64> = vec![0];
    for size in 2..=n {
        let mut seen = HashSet::new();
        for &g in &level {
            for subset in 0u64..1 << (size - 1) {
                let mut h = g;
                for u in 0..size - 1 {
                    if subset >> u & 1 == 1 {
                        h |= bit(u, size - 1);
                    }
                }
                seen.insert(canonical(h, size));
            }
        }
        let mut v: Vec<u64> = seen.into_iter().collect();
        v.sort_unstable();
        level = v;
    }
    if n == 0 {
        Vec::new()
    } else {
        level
    }
}

/// Connected graphs on `n` vertices up to isomorphism.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    all_graphs(n).into_iter().map(|m| to_graph(m, n)).filter(|g| g.is_connected()).collect()
}

/// Random spanning tree plus each further pair with probability `p`.
pub fn random_connected(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    for v in 1..n {
        for u in 0..v {
            if !edges.contains(&(u, v)) && rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}
