//! Slow reference for the cops and robbers game: ordered cop tuples,
//! repeated sweeps until nothing changes.

use geocop::Graph;

fn closed(g: &Graph, v: usize) -> Vec<usize> {
    let mut out = vec![v];
    out.extend_from_slice(g.neighbors(v));
    out
}

fn decode(mut idx: usize, n: usize, k: usize) -> Vec<usize> {
    let mut cops = vec![0; k];
    for c in cops.iter_mut() {
        *c = idx % n;
        idx /= n;
    }
    cops
}

fn encode(cops: &[usize], n: usize) -> usize {
    cops.iter().rev().fold(0, |acc, &c| acc * n + c)
}

/// Every tuple reachable by moving each cop within its closed neighborhood.
fn joint_moves(g: &Graph, cops: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &c in cops {
        let mut next = Vec::new();
        for prefix in &out {
            for w in closed(g, c) {
                let mut p = prefix.clone();
                p.push(w);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

pub fn copwin(g: &Graph, k: usize) -> bool {
    let n = g.n();
    let configs = n.pow(k as u32);
    let moves: Vec<Vec<usize>> =
        (0..configs).map(|i| joint_moves(g, &decode(i, n, k)).iter().map(|c| encode(c, n)).collect()).collect();
    let table: Vec<Vec<bool>> = (0..configs)
        .map(|c| {
            let cops = decode(c, n, k);
            (0..n).map(|r| cops.contains(&r)).collect()
        })
        .collect();
    let caught = |c: usize, r: usize| table[c][r];
    // cop[c][r]: cops to move win; rob[c][r]: robber to move, cops win.
    let mut cop = vec![vec![false; n]; configs];
    let mut rob = vec![vec![false; n]; configs];
    loop {
        let mut changed = false;
        for c in 0..configs {
            for r in 0..n {
                if !rob[c][r] && (caught(c, r) || closed(g, r).iter().all(|&s| cop[c][s])) {
                    rob[c][r] = true;
                    changed = true;
                }
                if !cop[c][r] && (caught(c, r) || moves[c].iter().any(|&d| caught(d, r) || rob[d][r])) {
                    cop[c][r] = true;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    (0..configs).any(|c| (0..n).all(|r| cop[c][r]))
}

/// Smallest k ≤ k_max with a cop win.
pub fn cop_number(g: &Graph, k_max: usize) -> Option<usize> {
    (1..=k_max).find(|&k| copwin(g, k))
}
