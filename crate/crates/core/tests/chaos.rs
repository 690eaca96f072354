mod common;

use common::load;
use gcg_core::chaos::burn_in_steps;
use gcg_core::hull::Halfspaces;
use gcg_core::ifs::hutchinson_iterate;
use gcg_core::{gcg_run, GcgConfig, Point, Polytope};

/// Depth of `x` in the level-k copy whose ancestry is `maps`, first-applied
/// map first. Negative inside.
fn depth_in_level_copy(hull: &Halfspaces, p: &Polytope, r: f64, maps: &[usize], x: &Point) -> f64 {
    let s = 1.0 - r;
    let mut offset = Point::zeros(p.dimension());
    for &m in maps {
        offset = &offset * s + &p.vertices()[m] * r;
    }
    let scale = s.powi(maps.len() as i32);
    hull.max_violation(&((x - offset) / scale)) * scale
}

#[test]
fn sierpinski_points_avoid_other_copies() {
    let p = load("triangle");
    let hull = Halfspaces::from_points(p.vertices()).unwrap();
    let cloud = gcg_run(&p, &GcgConfig::new(0.5, 50_000, 7)).unwrap();
    let tau = 1e-9 * p.diameter();
    for (x, &c) in cloud.points.iter().zip(&cloud.colors) {
        assert!(depth_in_level_copy(&hull, &p, 0.5, &[c], x) <= tau);
        for j in (0..3).filter(|&j| j != c) {
            assert!(depth_in_level_copy(&hull, &p, 0.5, &[j], x) >= -tau, "{x:?} inside copy {j}");
        }
    }
}

#[test]
fn square_at_one_half_fills_the_square() {
    let p = load("square");
    let cloud = gcg_run(&p, &GcgConfig::new(0.5, 100_000, 3)).unwrap();
    let (lo, hi) = p.bounding_box();
    let mut hit = [[false; 16]; 16];
    for x in &cloud.points {
        let cell = |k: usize| (((x[k] - lo[k]) / (hi[k] - lo[k]) * 16.0) as usize).min(15);
        hit[cell(0)][cell(1)] = true;
    }
    let filled = hit.iter().flatten().filter(|&&h| h).count();
    assert!(filled as f64 / 256.0 > 0.99, "{filled} of 256 cells");
}

#[test]
fn vertex_choices_are_uniform() {
    for id in ["pentagon", "cube", "24-cell"] {
        let p = load(id);
        let n = 100_000;
        let cloud = gcg_run(&p, &GcgConfig::new(0.5, n, 11).with_discard(0)).unwrap();
        let v = p.vertex_count();
        let mut counts = vec![0usize; v];
        cloud.colors.iter().for_each(|&c| counts[c] += 1);
        let prob = 1.0 / v as f64;
        let mean = n as f64 * prob;
        let sigma = (n as f64 * prob * (1.0 - prob)).sqrt();
        for (k, &c) in counts.iter().enumerate() {
            assert!((c as f64 - mean).abs() < 5.0 * sigma, "{id} vertex {k}: {c}");
        }
    }
}

#[test]
fn points_stay_in_the_hull() {
    for id in ["hexagon", "icosahedron", "8-cell", "simplex:5"] {
        let p = load(id);
        let hull = Halfspaces::from_points(p.vertices()).unwrap();
        let cloud = gcg_run(&p, &GcgConfig::new(0.6, 20_000, 5)).unwrap();
        let tol = 1e-9 * p.diameter();
        assert!(cloud.points.iter().all(|x| hull.max_violation(x) <= tol), "{id}");
    }
}

#[test]
fn retained_points_lie_in_their_level_six_copy() {
    let k = 6;
    for (id, r) in [("triangle", 0.5), ("pentagon", 0.618_033_988_749_895), ("cube", 0.5)] {
        let p = load(id);
        let hull = Halfspaces::from_points(p.vertices()).unwrap();
        let cloud = gcg_run(&p, &GcgConfig::new(r, 5_000, 9).with_discard(k)).unwrap();
        let tol = 1e-9 * p.diameter();
        // The last k colours are the maps that produced the point, oldest first.
        for m in k - 1..cloud.len() {
            let maps = &cloud.colors[m + 1 - k..=m];
            assert!(depth_in_level_copy(&hull, &p, r, maps, &cloud.points[m]) <= tol, "{id} point {m}");
        }
        // The first points have colours that were discarded; check against the
        // whole level-k family instead.
        let copies = hutchinson_iterate(&p, r, k as u32).unwrap();
        for x in cloud.points.iter().take(k - 1) {
            let inside = copies
                .copies
                .iter()
                .any(|c| depth_in_level_copy(&hull, &p, r, &c.ancestry, x) <= tol);
            assert!(inside, "{id}: early point outside every level-{k} copy");
        }
    }
}

#[test]
fn burn_in_absorbs_an_outside_start() {
    let p = load("tetrahedron");
    let hull = Halfspaces::from_points(p.vertices()).unwrap();
    let r = 0.5;
    let start = vec![40.0, -25.0, 13.0];
    let d0 = hull.max_violation(&Point::from_column_slice(&start));
    assert!(d0 > 10.0);
    let eps = 1e-10;
    let discard = burn_in_steps(r, eps);
    assert_eq!(discard, 34);
    let cfg = GcgConfig::new(r, discard + 1000, 1)
        .with_discard(discard)
        .with_initial_point(start);
    let cloud = gcg_run(&p, &cfg).unwrap();
    let norm_bound = 60.0 * eps;
    assert!(cloud.points.iter().all(|x| hull.max_violation(x) <= norm_bound));
}

#[test]
fn same_seed_same_cloud() {
    let p = load("octahedron");
    let a = gcg_run(&p, &GcgConfig::new(0.5, 2000, 42)).unwrap();
    let b = gcg_run(&p, &GcgConfig::new(0.5, 2000, 42)).unwrap();
    let c = gcg_run(&p, &GcgConfig::new(0.5, 2000, 43)).unwrap();
    assert_eq!(a, b);
    assert_ne!(a.points, c.points);
}
