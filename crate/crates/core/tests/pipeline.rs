use geocop::bender::{refine, theorem_a_pipeline, PipelineOptions};
use geocop::constructions::dodecahedron;
use geocop::families;
use geocop::{build_gamma, subdivide, validate_geometric, validate_planar_drawing, Drawing, Point};

fn check(d: &Drawing) -> usize {
    let (out, cfg) = theorem_a_pipeline(d, &PipelineOptions::default()).unwrap();
    eprintln!("a={} k={} r={} L={} n={}", cfg.a, cfg.k, cfg.r, cfg.l, out.graph.n());
    assert_eq!(out.graph, subdivide(&d.graph, cfg.l).unwrap());
    assert!(validate_geometric(&out).passed);
    assert!(validate_planar_drawing(&out, None).passed);
    for e in &cfg.edges {
        assert!(e.endings <= cfg.ending_bound);
        assert_eq!(e.endings + e.middle, cfg.l);
    }
    cfg.l
}

#[test]
fn single_edge() {
    let g = families::path(2);
    let d = Drawing::new(g, vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0)], 1.0).unwrap();
    check(&d);
}

#[test]
fn five_star() {
    let g = families::star(5);
    let mut coords = vec![Point::new(0.0, 0.0)];
    coords.extend((0..5).map(|i| Point::polar(0.3 + 1.2 * i as f64) * (1.0 + 0.2 * i as f64)));
    check(&Drawing::new(g, coords, 1.0).unwrap());
}

#[test]
fn dodecahedron_end_to_end() {
    let (_, d) = dodecahedron();
    check(&d);
}

#[test]
fn refinement_halves_parameter() {
    let d = geocop::constructions::build_dodec440();
    let fine = refine(&d, 2).unwrap();
    assert_eq!(fine.r, 1.0);
    assert_eq!(fine.graph, subdivide(&d.graph, 2).unwrap());
    assert!(validate_geometric(&fine).passed);
    assert!(refine(&d, 0).is_err());
    assert_eq!(refine(&d, 1).unwrap().coords, d.coords);

    let gamma = build_gamma(1, Point::new(0.0, 0.0), Point::new(1.0, 0.0)).unwrap().to_drawing();
    let third = refine(&gamma, 3).unwrap();
    assert!((third.r - gamma.r / 3.0).abs() < 1e-15);
    assert!(validate_geometric(&third).passed);
}
