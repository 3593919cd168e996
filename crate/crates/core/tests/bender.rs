use std::f64::consts::PI;

use geocop::bender::{bend_endings, find_safe_orientation, s_coefficient, RAY_CLEARANCE};
use geocop::geometry::angular_distance;
use geocop::Point;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_directions(rng: &mut impl Rng, max: usize) -> Vec<f64> {
    let d = rng.gen_range(1..=max);
    (0..d).map(|_| rng.gen_range(0.0..2.0 * PI)).collect()
}

#[test]
fn safe_orientation_on_random_sets() {
    assert!(10.0 * PI / 37.0 < PI / 3.0);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..10_000 {
        let dirs = random_directions(&mut rng, 5);
        let rs = find_safe_orientation(Point::new(0.0, 0.0), &dirs, RAY_CLEARANCE).unwrap();
        for &d in &dirs {
            for &ray in &rs.rays {
                assert!(angular_distance(d, ray) > RAY_CLEARANCE);
            }
        }
    }
}

#[test]
fn bending_random_configurations() {
    assert!(s_coefficient() > 0.093);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut worst = f64::INFINITY;
    let mut failures = Vec::new();
    for i in 0..1000 {
        let dirs = random_directions(&mut rng, 5);
        let apex = Point::new(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
        let plan = match bend_endings(i, apex, &dirs, 1.5, 1.0) {
            Ok(p) => p,
            Err(e) => {
                failures.push(format!("{dirs:?}: {e}"));
                continue;
            }
        };
        let c = plan.check();
        assert!(c.passed, "{dirs:?}: {c:?}");
        worst = worst.min(c.min_turn_angle);
    }
    assert!(failures.is_empty(), "{failures:#?}");
    assert!(worst > PI / 3.0);
}

fn assert_plan(dirs: &[f64]) -> geocop::bender::BendPlan {
    let plan = bend_endings(0, Point::new(0.0, 0.0), dirs, 1.5, 1.0).unwrap();
    let c = plan.check();
    assert!(c.passed, "{c:?}");
    assert!(c.min_segment_ratio > 0.093);
    assert!(c.min_turn_angle > PI / 3.0 + 1e-9 && c.min_spoke_angle > PI / 3.0 + 1e-9);
    plan
}

#[test]
fn all_edges_through_one_side() {
    let dirs: Vec<f64> = (1..=5).map(|i| (10.0 * i as f64).to_radians()).collect();
    let plan = assert_plan(&dirs);
    // every edge crosses the same side of both hexagons
    let rs = plan.orientation;
    let side = |a: f64| ((a - rs.theta0).rem_euclid(2.0 * PI) / (PI / 3.0)).floor();
    assert!(dirs.iter().all(|&d| side(d) == side(dirs[0])));
    assert!(plan.edges.iter().any(|e| e.hexagon == 1) && plan.edges.iter().any(|e| e.hexagon == 2));
}

#[test]
fn one_edge_per_side() {
    let dirs: Vec<f64> = (0..5).map(|i| (30.0 + 72.0 * i as f64).to_radians()).collect();
    let plan = assert_plan(&dirs);
    let rs = plan.orientation;
    let mut sides: Vec<i64> =
        dirs.iter().map(|&a| ((a - rs.theta0).rem_euclid(2.0 * PI) / (PI / 3.0)).floor() as i64).collect();
    sides.sort();
    sides.dedup();
    assert_eq!(sides.len(), 5);
    // already far apart: nothing needs rerouting
    assert!(plan.edges.iter().all(|e| e.is_straight()));
}
