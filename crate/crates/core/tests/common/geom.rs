//! Brute-force reference checks for drawings.

use geocop::{Drawing, Point};

/// All-pairs check: edges within r, non-edges beyond r, with an absolute
/// slack `tol`.
pub fn brute_geometric(d: &Drawing, tol: f64) -> Result<(), String> {
    let n = d.coords.len();
    for u in 0..n {
        for v in u + 1..n {
            let dist = d.coords[u].dist(d.coords[v]);
            let adj = d.graph.has_edge(u, v);
            if adj && dist > d.r + tol {
                return Err(format!("edge {u}-{v} too long: {dist}"));
            }
            if !adj && dist <= d.r - tol {
                return Err(format!("non-edge {u}-{v} too close: {dist}"));
            }
        }
    }
    Ok(())
}

fn cross(o: Point, a: Point, b: Point) -> f64 {
    (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)
}

/// Floating-point proper-or-touching intersection test, good enough for
/// configurations away from degeneracy.
pub fn segments_meet(a: Point, b: Point, c: Point, d: Point) -> bool {
    let d1 = cross(c, d, a);
    let d2 = cross(c, d, b);
    let d3 = cross(a, b, c);
    let d4 = cross(a, b, d);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0)) {
        return true;
    }
    let on = |p: Point, q: Point, x: Point, c: f64| {
        c == 0.0 && x.x >= p.x.min(q.x) && x.x <= p.x.max(q.x) && x.y >= p.y.min(q.y) && x.y <= p.y.max(q.y)
    };
    on(c, d, a, d1) || on(c, d, b, d2) || on(a, b, c, d3) || on(a, b, d, d4)
}

/// Pairwise check of straight edges: edges that share no endpoint must not
/// meet, edges sharing one must meet only there.
pub fn brute_planar_straight(d: &Drawing) -> Result<(), String> {
    let edges = d.graph.edges();
    for (i, &(a, b)) in edges.iter().enumerate() {
        for &(c, e) in &edges[i + 1..] {
            let shared = [a, b].iter().filter(|&&x| x == c || x == e).count();
            let (pa, pb, pc, pe) = (d.coords[a], d.coords[b], d.coords[c], d.coords[e]);
            if shared == 0 {
                if segments_meet(pa, pb, pc, pe) {
                    return Err(format!("{a}-{b} meets {c}-{e}"));
                }
            } else {
                // shared endpoint: the other endpoints must not be collinear-overlapping
                let s = if a == c || a == e { a } else { b };
                let p = if s == a { pb } else { pa };
                let q = if s == c { pe } else { pc };
                let o = d.coords[s];
                if cross(o, p, q) == 0.0 && (p.x - o.x) * (q.x - o.x) + (p.y - o.y) * (q.y - o.y) > 0.0 {
                    return Err(format!("{a}-{b} overlaps {c}-{e}"));
                }
            }
        }
    }
    Ok(())
}
