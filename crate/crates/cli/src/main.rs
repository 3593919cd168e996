use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use geocop::bender::{find_safe_orientation, theorem_a_pipeline, PipelineOptions, RAY_CLEARANCE};
use geocop::constructions::{build_dodec440, dodecahedron, theorem_b_combinatorial};
use geocop::geometry::adjust_gamma_length;
use geocop::io::{
    emit_drawing, emit_graph, emit_svg, parse_drawing, parse_graph, RunReport, SolverSummary, SvgOptions,
    ValidationSummary,
};
use geocop::solver::{is_k_copwin, memory_estimate, verify_clique_lemma, verify_subdivision_lemma};
use geocop::{
    build_gamma, clique_substitute, families, subdivide, validate_geometric, validate_planar_drawing, Drawing, Graph,
    Point, SolveOptions,
};

#[derive(Parser)]
#[command(name = "geocop", version, about = "Geometric graphs of small cop number")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SolverArgs {
    /// Worker threads for the solver.
    #[arg(long, env = "GEOCOP_THREADS", default_value_t = 1)]
    threads: usize,
    /// Abort before solving if the estimated memory exceeds this many bytes.
    #[arg(long)]
    mem_limit: Option<u64>,
}

impl SolverArgs {
    fn options(&self, strategy: bool) -> SolveOptions {
        SolveOptions {
            want_strategy: strategy,
            threads: self.threads.max(1),
            mem_limit: self.mem_limit,
            ..SolveOptions::default()
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compute the cop number of a graph, up to a bound.
    Copnumber {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        kmax: usize,
        /// Write the cops' strategy for the cop number found.
        #[arg(long)]
        strategy: Option<PathBuf>,
        #[arg(long)]
        report: Option<PathBuf>,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Replace every edge by a path of the given length.
    Subdivide {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        length: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Replace every vertex by a clique with one vertex per incident edge.
    Cliquesub {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Write the zigzag path of order k, optionally with a given length.
    Gamma {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        target: Option<usize>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Turn a straight-line plane drawing into a geometric drawing of a
    /// uniform subdivision.
    Bend {
        #[arg(long)]
        embedding: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Built-in constructions.
    Construct {
        #[command(subcommand)]
        what: Construct,
    },
    /// Check that a drawing is geometric for its parameter and plane.
    Validate {
        #[arg(long)]
        drawing: PathBuf,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Render a drawing as SVG.
    Svg {
        #[arg(long)]
        drawing: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Draw disks of radius r/2 around the vertices.
        #[arg(long)]
        disks: bool,
        #[arg(long, default_value_t = 800.0)]
        width: f64,
    },
    /// Check the subdivision, clique substitution and hexagon orientation
    /// properties on small graphs and random inputs.
    VerifyLemmas {
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[command(flatten)]
        solver: SolverArgs,
    },
}

#[derive(Subcommand)]
enum Construct {
    /// The 440-vertex geometric drawing with parameter 2.
    Dodec440 {
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// The dodecahedron with its built-in straight-line embedding.
    Dodecahedron {
        #[arg(long)]
        out: PathBuf,
        /// Also write the bare graph.
        #[arg(long)]
        graph_out: Option<PathBuf>,
    },
    /// Clique substitution with inter-knot edges subdivided.
    Kgraph {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        lout: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn load_graph(path: &Path) -> Result<Graph> {
    parse_graph(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn load_drawing(path: &Path) -> Result<Drawing> {
    parse_drawing(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn write_report(path: Option<&PathBuf>, report: &RunReport) -> Result<()> {
    if let Some(p) = path {
        write(p, &(serde_json::to_string_pretty(report)? + "\n"))?;
    }
    Ok(())
}

/// Validates `d` and prints one line per check; returns whether both pass.
fn validate_and_print(d: &Drawing, report: &mut RunReport) -> bool {
    let geo = validate_geometric(d);
    let plane = validate_planar_drawing(d, None);
    for (name, rep) in [("geometric", &geo), ("plane", &plane)] {
        let s = ValidationSummary::new(name, rep);
        let verdict = if s.passed { "pass" } else { "FAIL" };
        if name == "plane" {
            println!("{name}: {verdict} ({} violations)", s.violations);
        } else {
            println!(
                "{name}: {verdict} (r = {}, max edge distance {}, min non-edge distance {}, {} boundary pairs, {} violations)",
                s.r, s.max_edge_distance, s.min_non_edge_distance, s.boundary_pairs, s.violations
            );
        }
        for v in rep.violations.iter().take(10) {
            println!("  {v:?}");
        }
        report.validation.push(s);
    }
    geo.passed && plane.passed
}

fn run(cli: Cli) -> Result<bool> {
    let start = Instant::now();
    let mut report = RunReport::default();
    let mut ok = true;
    match cli.command {
        Command::Copnumber { graph, kmax, strategy, report: out, solver } => {
            report.command = "copnumber".into();
            report.inputs.push(graph.display().to_string());
            let g = load_graph(&graph)?;
            let opts = solver.options(false);
            let mut value = None;
            for k in 1..=kmax {
                log::info!("trying k = {k} (about {} bytes)", memory_estimate(g.n(), k, &opts));
                let res = is_k_copwin(&g, k, &opts)?;
                eprintln!("k = {k}: {} ({} states)", if res.copwin { "cop win" } else { "robber win" }, res.states);
                report.solver.push(SolverSummary::from(&res));
                if res.copwin {
                    value = Some(k);
                    if let Some(path) = &strategy {
                        let res = is_k_copwin(&g, k, &solver.options(true))?;
                        write(path, &(res.strategy_lines().join("\n") + "\n"))?;
                    }
                    break;
                }
            }
            match value {
                Some(c) => println!("{c}"),
                None => println!(">{kmax}"),
            }
            report.parameters.insert("kmax".into(), kmax as f64);
            report.wall_time_s = start.elapsed().as_secs_f64();
            write_report(out.as_ref(), &report)?;
        }
        Command::Subdivide { graph, length, out } => {
            let g = subdivide(&load_graph(&graph)?, length)?;
            write(&out, &emit_graph(&g))?;
            println!("{} vertices, {} edges", g.n(), g.m());
        }
        Command::Cliquesub { graph, out } => {
            let g = clique_substitute(&load_graph(&graph)?);
            write(&out, &emit_graph(&g))?;
            println!("{} vertices, {} edges", g.n(), g.m());
        }
        Command::Gamma { k, target, out, svg } => {
            let mut path = build_gamma(k, Point::new(0.0, 0.0), Point::new(1.0, 0.0))?;
            if let Some(t) = target {
                path = adjust_gamma_length(&path, t)?;
            }
            let d = path.to_drawing();
            write(&out, &emit_drawing(&d))?;
            if let Some(s) = svg {
                write(&s, &emit_svg(&d, &SvgOptions::default()))?;
            }
            println!("{} vertices, r = {}", d.graph.n(), d.r);
            ok = validate_and_print(&d, &mut report);
        }
        Command::Bend { embedding, out, k, report: rep } => {
            report.command = "bend".into();
            report.inputs.push(embedding.display().to_string());
            let d = load_drawing(&embedding)?;
            let opts = PipelineOptions { k, ..PipelineOptions::default() };
            let (res, cfg) = theorem_a_pipeline(&d, &opts)?;
            write(&out, &emit_drawing(&res))?;
            println!("a = {}, k = {}, L = {}, r = {}, {} vertices", cfg.a, cfg.k, cfg.l, cfg.r, res.graph.n());
            report.parameters = BTreeMap::from([
                ("a".to_string(), cfg.a),
                ("k".to_string(), cfg.k as f64),
                ("L".to_string(), cfg.l as f64),
                ("r".to_string(), cfg.r),
                ("alpha".to_string(), cfg.alpha),
            ]);
            report.validation.push(ValidationSummary::new("geometric", &cfg.geometric));
            report.validation.push(ValidationSummary::new("plane", &cfg.planar));
            report.wall_time_s = start.elapsed().as_secs_f64();
            if let Some(p) = rep {
                let full = serde_json::json!({ "run": report, "pipeline": cfg });
                write(&p, &(serde_json::to_string_pretty(&full)? + "\n"))?;
            }
        }
        Command::Construct { what } => match what {
            Construct::Dodec440 { out, svg } => {
                let d = build_dodec440();
                write(&out, &emit_drawing(&d))?;
                if let Some(s) = svg {
                    write(&s, &emit_svg(&d, &SvgOptions::default()))?;
                }
                println!("{} vertices, {} edges, r = {}", d.graph.n(), d.graph.m(), d.r);
                ok = validate_and_print(&d, &mut report);
            }
            Construct::Dodecahedron { out, graph_out } => {
                let (g, d) = dodecahedron();
                write(&out, &emit_drawing(&d))?;
                if let Some(p) = graph_out {
                    write(&p, &emit_graph(&g))?;
                }
                println!("{} vertices, {} edges", g.n(), g.m());
            }
            Construct::Kgraph { graph, lout, out } => {
                let res = theorem_b_combinatorial(&load_graph(&graph)?, lout)?;
                write(&out, &emit_graph(&res.graph))?;
                println!("{} vertices, {} edges", res.graph.n(), res.graph.m());
            }
        },
        Command::Validate { drawing, report: out } => {
            report.command = "validate".into();
            report.inputs.push(drawing.display().to_string());
            let d = load_drawing(&drawing)?;
            ok = validate_and_print(&d, &mut report);
            report.wall_time_s = start.elapsed().as_secs_f64();
            write_report(out.as_ref(), &report)?;
        }
        Command::Svg { drawing, out, disks, width } => {
            let d = load_drawing(&drawing)?;
            if !(width > 0.0 && width.is_finite()) {
                bail!("width must be positive");
            }
            write(&out, &emit_svg(&d, &SvgOptions { width, disks, ..SvgOptions::default() }))?;
        }
        Command::VerifyLemmas { seed, samples, solver } => {
            ok = verify_lemmas(seed, samples, &solver.options(false))?;
        }
    }
    Ok(ok)
}

fn random_connected(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(0.25) && !edges.contains(&(u, v)) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("simple graph")
}

fn verify_lemmas(seed: u64, samples: usize, opts: &SolveOptions) -> Result<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut corpus = vec![
        families::path(4),
        families::cycle(4),
        families::cycle(5),
        families::complete(4),
        families::star(3),
        families::petersen(),
    ];
    for _ in 0..12 {
        let n = rng.gen_range(3..=6);
        corpus.push(random_connected(&mut rng, n));
    }

    let mut ok = true;
    let mut sub_checks = 0;
    let mut clique_checks = 0;
    for g in &corpus {
        for l in 2..=3 {
            if !verify_subdivision_lemma(g, l, 4, opts)? {
                println!("subdivision: FAIL on {} with length {l}", emit_graph(g).trim());
                ok = false;
            }
            sub_checks += 1;
        }
        if !verify_clique_lemma(g, 4, opts)? {
            println!("clique substitution: FAIL on {}", emit_graph(g).trim());
            ok = false;
        }
        clique_checks += 1;
    }
    println!("subdivision keeps the cop number or adds one: {sub_checks} cases");
    println!("clique substitution does not lower the cop number: {clique_checks} cases");

    let mut worst = f64::INFINITY;
    for _ in 0..samples {
        let deg = rng.gen_range(1..=5);
        let dirs: Vec<f64> = (0..deg).map(|_| rng.gen_range(0.0..std::f64::consts::TAU)).collect();
        match find_safe_orientation(Point::new(0.0, 0.0), &dirs, RAY_CLEARANCE) {
            Ok(rs) => worst = worst.min(rs.clearance(&dirs)),
            Err(e) => {
                println!("hexagon orientation: FAIL for {dirs:?}: {e}");
                ok = false;
            }
        }
    }
    println!("hexagon orientation: {samples} random fans, smallest clearance {worst:.6} > {RAY_CLEARANCE:.6}");
    println!("{}", if ok { "all properties hold" } else { "FAILURES" });
    Ok(ok)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
