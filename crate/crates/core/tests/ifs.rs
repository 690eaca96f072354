mod common;

use common::load;
use gcg_core::ifs::{directed_hausdorff, hutchinson_iterate_capped};
use gcg_core::{gcg_run, hausdorff_distance, hutchinson_iterate, GcgConfig, Point, Polytope};
use proptest::prelude::*;

/// The Hutchinson operator applied to a finite point set.
fn apply_w(p: &Polytope, r: f64, set: &[Point]) -> Vec<Point> {
    p.vertices()
        .iter()
        .flat_map(|v| set.iter().map(move |x| x * (1.0 - r) + v * r))
        .collect()
}

fn points(dim: usize, flat: &[f64]) -> Vec<Point> {
    flat.chunks_exact(dim).map(Point::from_column_slice).collect()
}

#[test]
fn copy_counts_and_edge_scaling() {
    for (id, r) in [("triangle", 0.5), ("square", 0.5), ("tetrahedron", 0.5), ("pentagon", 0.618), ("cube", 0.5)] {
        let p = load(id);
        let v = p.vertex_count();
        for k in 0..=5u32 {
            if (v as u64).pow(k) > 40_000 {
                continue;
            }
            let set = hutchinson_iterate(&p, r, k).unwrap();
            assert_eq!(set.len(), v.pow(k), "{id} level {k}");
            let expected = p.edge_length() * (1.0 - r).powi(k as i32);
            for c in &set.copies {
                assert_eq!(c.ancestry.len(), k as usize);
                for &(i, j) in p.edges() {
                    let e = (&c.vertices[i] - &c.vertices[j]).norm();
                    assert!((e - expected).abs() < 1e-12, "{id} level {k}: {e}");
                }
            }
        }
    }
}

#[test]
fn copy_cap_is_enforced() {
    let p = load("dodecahedron");
    assert!(hutchinson_iterate_capped(&p, 0.7, 6, 10_000_000).is_err());
    assert_eq!(hutchinson_iterate_capped(&p, 0.7, 2, 400).unwrap().len(), 400);
}

#[test]
fn iterates_converge_to_the_attractor() {
    let p = load("triangle");
    let r = 0.5;
    let s: f64 = 1.0 - r;
    let diam = p.diameter();
    let reference = hutchinson_iterate(&p, r, 8).unwrap().flatten();
    let mut last = f64::INFINITY;
    for k in 1..=7 {
        let level = hutchinson_iterate(&p, r, k).unwrap().flatten();
        let h = hausdorff_distance(&level, &reference).unwrap();
        assert!(h <= (s.powi(k as i32) + s.powi(8)) * diam + 1e-12, "level {k}: {h}");
        assert!(h <= last + 1e-12);
        last = h;
    }
}

#[test]
fn chaos_cloud_matches_level_eight() {
    let p = load("triangle");
    let r = 0.5;
    let reference = hutchinson_iterate(&p, r, 8).unwrap().flatten();
    let cloud = gcg_run(&p, &GcgConfig::new(r, 100_000, 2).with_discard(8)).unwrap();
    let h = hausdorff_distance(&cloud.points, &reference).unwrap();
    let band = 2.0 * (1.0 - r).powi(8) * p.diameter();
    assert!(h <= band, "{h} > {band}");
}

#[test]
fn directed_distance_is_asymmetric() {
    let a = points(2, &[0.0, 0.0]);
    let b = points(2, &[0.0, 0.0, 3.0, 4.0]);
    assert_eq!(directed_hausdorff(&a, &b).unwrap(), 0.0);
    assert_eq!(directed_hausdorff(&b, &a).unwrap(), 5.0);
    assert_eq!(hausdorff_distance(&a, &b).unwrap(), 5.0);
    assert!(hausdorff_distance(&a, &[]).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hausdorff_axioms(
        a in proptest::collection::vec(-5.0f64..5.0, 3..60),
        b in proptest::collection::vec(-5.0f64..5.0, 3..60),
        c in proptest::collection::vec(-5.0f64..5.0, 3..60),
    ) {
        let (a, b, c) = (points(3, &a), points(3, &b), points(3, &c));
        prop_assume!(!a.is_empty() && !b.is_empty() && !c.is_empty());
        prop_assert_eq!(hausdorff_distance(&a, &a).unwrap(), 0.0);
        let ab = hausdorff_distance(&a, &b).unwrap();
        prop_assert_eq!(ab, hausdorff_distance(&b, &a).unwrap());
        let bc = hausdorff_distance(&b, &c).unwrap();
        let ac = hausdorff_distance(&a, &c).unwrap();
        prop_assert!(ac <= ab + bc + 1e-12);
    }

    #[test]
    fn hutchinson_operator_is_a_contraction(
        r in 0.05f64..0.95,
        a in proptest::collection::vec(-2.0f64..2.0, 2..40),
        b in proptest::collection::vec(-2.0f64..2.0, 2..40),
    ) {
        let p = load("pentagon");
        let (a, b) = (points(2, &a), points(2, &b));
        prop_assume!(!a.is_empty() && !b.is_empty());
        let before = hausdorff_distance(&a, &b).unwrap();
        let after = hausdorff_distance(&apply_w(&p, r, &a), &apply_w(&p, r, &b)).unwrap();
        prop_assert!(after <= (1.0 - r) * before + 1e-12);
    }
}
