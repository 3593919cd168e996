//! Plain-text graph and drawing formats, SVG rendering and run reports.
//!
//! Graph files:
//!
//! ```text
//! p <n> <m>
//! e <u> <v>        (m lines)
//! ```
//!
//! Drawing files:
//!
//! ```text
//! d <n> <m> <r>
//! v <id> <x> <y>   (n lines)
//! e <u> <v>        (m lines)
//! pl <u> <v> <x1> <y1> ...   (bend points of edge uv, listed from u)
//! ```
//!
//! Lines starting with `#` are comments. Writers emit edges sorted with
//! `u < v` and real numbers with 17 significant digits.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::geometry::{Drawing, Point, ValidationReport};
use crate::graph::{Graph, GraphError};
use crate::solver::SolveResult;

#[derive(Debug, Error, Clone, PartialEq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, message: message.into() })
}

/// Non-empty, non-comment lines with their 1-based numbers.
fn records(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, s)| {
        let s = s.trim();
        (!s.is_empty() && !s.starts_with('#')).then(|| (i + 1, s.split_whitespace().collect()))
    })
}

fn num<T: std::str::FromStr>(line: usize, tok: &str, what: &str) -> Result<T, ParseError> {
    tok.parse().or_else(|_| err(line, format!("invalid {what} '{tok}'")))
}

fn real(line: usize, tok: &str) -> Result<f64, ParseError> {
    let x: f64 = num(line, tok, "number")?;
    if x.is_finite() {
        Ok(x)
    } else {
        err(line, format!("non-finite number '{tok}'"))
    }
}

fn fmt_real(x: f64) -> String {
    format!("{x:.16e}")
}

/// Reads and checks one edge against the vertex count and earlier edges.
fn edge(line: usize, t: &[&str], n: usize, seen: &mut Vec<(usize, usize)>) -> Result<(usize, usize), ParseError> {
    if t.len() != 3 {
        return err(line, "expected 'e <u> <v>'");
    }
    let (u, v): (usize, usize) = (num(line, t[1], "vertex id")?, num(line, t[2], "vertex id")?);
    if u == v {
        return err(line, format!("self-loop at vertex {u}"));
    }
    if u.max(v) >= n {
        return err(line, format!("vertex {} out of range for {n} vertices", u.max(v)));
    }
    let key = (u.min(v), u.max(v));
    if seen.contains(&key) {
        return err(line, format!("duplicate edge {}-{}", key.0, key.1));
    }
    seen.push(key);
    Ok(key)
}

fn graph_error(line: usize, e: GraphError) -> ParseError {
    ParseError { line, message: e.to_string() }
}

pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut recs = records(text);
    let Some((line, head)) = recs.next() else {
        return err(1, "missing header 'p <n> <m>'");
    };
    if head.len() != 3 || head[0] != "p" {
        return err(line, "expected header 'p <n> <m>'");
    }
    let n: usize = num(line, head[1], "vertex count")?;
    let m: usize = num(line, head[2], "edge count")?;
    let mut edges = Vec::with_capacity(m);
    let mut last = line;
    for (line, t) in recs {
        last = line;
        if t[0] != "e" {
            return err(line, format!("unexpected record '{}'", t[0]));
        }
        edge(line, &t, n, &mut edges)?;
    }
    if edges.len() != m {
        return err(last, format!("header announces {m} edges, found {}", edges.len()));
    }
    Graph::from_edges(n, &edges).map_err(|e| graph_error(last, e))
}

pub fn emit_graph(g: &Graph) -> String {
    let mut s = format!("p {} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        let _ = writeln!(s, "e {u} {v}");
    }
    s
}

pub fn parse_drawing(text: &str) -> Result<Drawing, ParseError> {
    let mut recs = records(text);
    let Some((line, head)) = recs.next() else {
        return err(1, "missing header 'd <n> <m> <r>'");
    };
    if head.len() != 4 || head[0] != "d" {
        return err(line, "expected header 'd <n> <m> <r>'");
    }
    let n: usize = num(line, head[1], "vertex count")?;
    let m: usize = num(line, head[2], "edge count")?;
    let r = real(line, head[3])?;
    if r <= 0.0 {
        return err(line, format!("parameter r must be positive, got {r}"));
    }
    let mut coords: Vec<Option<Point>> = vec![None; n];
    let mut edges = Vec::with_capacity(m);
    let mut bends = Vec::new();
    let mut last = line;
    for (line, t) in recs {
        last = line;
        match t[0] {
            "v" => {
                if t.len() != 4 {
                    return err(line, "expected 'v <id> <x> <y>'");
                }
                let id: usize = num(line, t[1], "vertex id")?;
                if id >= n {
                    return err(line, format!("vertex {id} out of range for {n} vertices"));
                }
                if coords[id].is_some() {
                    return err(line, format!("duplicate vertex id {id}"));
                }
                coords[id] = Some(Point::new(real(line, t[2])?, real(line, t[3])?));
            }
            "e" => {
                edge(line, &t, n, &mut edges)?;
            }
            "pl" => {
                if t.len() < 5 || t.len() % 2 == 0 {
                    return err(line, "expected 'pl <u> <v> <x1> <y1> ...'");
                }
                let (u, v): (usize, usize) = (num(line, t[1], "vertex id")?, num(line, t[2], "vertex id")?);
                let pts = t[3..]
                    .chunks(2)
                    .map(|c| Ok(Point::new(real(line, c[0])?, real(line, c[1])?)))
                    .collect::<Result<Vec<_>, ParseError>>()?;
                bends.push((line, u, v, pts));
            }
            other => return err(line, format!("unexpected record '{other}'")),
        }
    }
    if edges.len() != m {
        return err(last, format!("header announces {m} edges, found {}", edges.len()));
    }
    if let Some(v) = coords.iter().position(Option::is_none) {
        return err(last, format!("vertex {v} has no coordinates"));
    }
    let g = Graph::from_edges(n, &edges).map_err(|e| graph_error(last, e))?;
    let coords = coords.into_iter().map(Option::unwrap).collect();
    let mut d = Drawing::new(g, coords, r).map_err(|e| ParseError { line: last, message: e.to_string() })?;
    for (line, u, v, pts) in bends {
        d.set_bends(u, v, pts).map_err(|e| ParseError { line, message: e.to_string() })?;
    }
    Ok(d)
}

pub fn emit_drawing(d: &Drawing) -> String {
    let g = &d.graph;
    let mut s = format!("d {} {} {}\n", g.n(), g.m(), fmt_real(d.r));
    for (i, p) in d.coords.iter().enumerate() {
        let _ = writeln!(s, "v {i} {} {}", fmt_real(p.x), fmt_real(p.y));
    }
    for (u, v) in g.edges() {
        let _ = writeln!(s, "e {u} {v}");
    }
    for (&(u, v), pts) in d.bent_edges() {
        let _ = write!(s, "pl {u} {v}");
        for p in pts {
            let _ = write!(s, " {} {}", fmt_real(p.x), fmt_real(p.y));
        }
        s.push('\n');
    }
    s
}

#[derive(Clone, Debug, PartialEq)]
pub struct SvgOptions {
    /// Width of the picture in pixels; the height follows the aspect ratio.
    pub width: f64,
    /// Vertex circle radius in pixels.
    pub vertex_radius: f64,
    /// Draw a disk of radius r/2 around every vertex.
    pub disks: bool,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions { width: 800.0, vertex_radius: 2.0, disks: false }
    }
}

/// Renders `d` with the y axis pointing up. Output depends only on the
/// drawing and the options.
pub fn emit_svg(d: &Drawing, opts: &SvgOptions) -> String {
    let (lo, hi) = d.bounding_box().unwrap_or((Point::new(0.0, 0.0), Point::new(1.0, 1.0)));
    let pad = if opts.disks { d.r / 2.0 } else { 0.0 };
    let (w, h) = ((hi.x - lo.x + 2.0 * pad).max(1e-12), (hi.y - lo.y + 2.0 * pad).max(1e-12));
    let margin = 10.0 + opts.vertex_radius;
    let scale = (opts.width - 2.0 * margin) / w.max(h);
    let width = w * scale + 2.0 * margin;
    let height = h * scale + 2.0 * margin;
    let tx = |p: Point| ((p.x - lo.x + pad) * scale + margin, (hi.y + pad - p.y) * scale + margin);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.3}" height="{height:.3}" viewBox="0 0 {width:.3} {height:.3}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    if opts.disks {
        let _ = writeln!(s, r##"<g fill="#4a90d9" fill-opacity="0.15" stroke="none">"##);
        for p in &d.coords {
            let (x, y) = tx(*p);
            let _ = writeln!(s, r#"<circle class="disk" cx="{x:.3}" cy="{y:.3}" r="{:.3}"/>"#, d.r / 2.0 * scale);
        }
        s.push_str("</g>\n");
    }
    s.push_str("<g stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n");
    for (u, v) in d.graph.edges() {
        let pts = d.edge_points(u, v);
        if pts.len() == 2 {
            let ((x1, y1), (x2, y2)) = (tx(pts[0]), tx(pts[1]));
            let _ = writeln!(s, r#"<line x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}"/>"#);
        } else {
            let list: Vec<String> = pts
                .iter()
                .map(|&p| {
                    let (x, y) = tx(p);
                    format!("{x:.3},{y:.3}")
                })
                .collect();
            let _ = writeln!(s, r#"<polyline points="{}"/>"#, list.join(" "));
        }
    }
    s.push_str("</g>\n<g fill=\"black\">\n");
    for p in &d.coords {
        let (x, y) = tx(*p);
        let _ = writeln!(s, r#"<circle cx="{x:.3}" cy="{y:.3}" r="{:.3}"/>"#, opts.vertex_radius);
    }
    s.push_str("</g>\n</svg>\n");
    s
}

/// Short form of a validator report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValidationSummary {
    pub kind: String,
    pub passed: bool,
    pub r: f64,
    pub max_edge_distance: f64,
    pub min_non_edge_distance: f64,
    pub boundary_pairs: usize,
    pub violations: usize,
}

impl ValidationSummary {
    pub fn new(kind: &str, rep: &ValidationReport) -> Self {
        ValidationSummary {
            kind: kind.to_string(),
            passed: rep.passed,
            r: rep.r,
            max_edge_distance: rep.max_edge_distance,
            min_non_edge_distance: rep.min_non_edge_distance,
            boundary_pairs: rep.boundary_pairs.len(),
            violations: rep.violations.len(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolverSummary {
    pub k: usize,
    pub copwin: bool,
    pub states: u64,
    pub winning_states: u64,
    pub placement: Option<Vec<usize>>,
    pub capture_time: Option<u32>,
}

impl From<&SolveResult> for SolverSummary {
    fn from(r: &SolveResult) -> Self {
        SolverSummary {
            k: r.k,
            copwin: r.copwin,
            states: r.states,
            winning_states: r.winning_states,
            placement: r.placement.clone(),
            capture_time: r.capture_time,
        }
    }
}

/// What a command did, for machine-readable logs.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Vec<String>,
    pub parameters: BTreeMap<String, f64>,
    pub validation: Vec<ValidationSummary>,
    pub solver: Vec<SolverSummary>,
    pub wall_time_s: f64,
    pub peak_memory_bytes: Option<u64>,
}
