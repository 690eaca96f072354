mod common;

use common::{catalog_ids, expected_counts, load};
use gcg_core::{detect_edges, orient_edge_to_axis, CatalogId, Polytope};

#[test]
fn vertex_and_edge_counts() {
    for id in catalog_ids() {
        let p = load(&id);
        let (v, e) = expected_counts(&id);
        assert_eq!(p.vertex_count(), v, "{id} vertices");
        assert_eq!(p.edges().len(), e, "{id} edges");
    }
}

#[test]
fn edges_realise_the_minimum_distance() {
    for id in catalog_ids() {
        let p = load(&id);
        let vs = p.vertices();
        let mut min = f64::INFINITY;
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                min = min.min((&vs[i] - &vs[j]).norm());
            }
        }
        assert!((min - 1.0).abs() < 1e-12, "{id}: min distance {min}");
        for &(i, j) in p.edges() {
            assert!(((&vs[i] - &vs[j]).norm() - 1.0).abs() < 1e-9, "{id} edge ({i},{j})");
        }
    }
}

#[test]
fn vertices_are_centred_and_equidistant() {
    for id in catalog_ids() {
        let p = load(&id);
        assert!(p.centroid().norm() < 1e-12, "{id}");
        let radii: Vec<f64> = p.vertices().iter().map(|v| v.norm()).collect();
        let r0 = radii[0];
        assert!(radii.iter().all(|r| (r - r0).abs() < 1e-12), "{id}");
    }
}

#[test]
fn every_vertex_has_the_same_degree() {
    for id in catalog_ids() {
        let p = load(&id);
        let mut degree = vec![0usize; p.vertex_count()];
        for &(i, j) in p.edges() {
            degree[i] += 1;
            degree[j] += 1;
        }
        assert!(degree.iter().all(|&d| d == degree[0]), "{id}: {degree:?}");
    }
}

#[test]
fn twenty_four_cell() {
    let p = load("24-cell");
    assert_eq!(p.dimension(), 4);
    assert_eq!(p.vertex_count(), 24);
    assert_eq!(p.edges().len(), 96);
}

#[test]
fn orientation_preserves_distances_and_aligns_an_edge() {
    for id in catalog_ids() {
        let p = load(&id);
        let q = orient_edge_to_axis(&p);
        let (pv, qv) = (p.vertices(), q.vertices());
        for i in 0..pv.len() {
            for j in i + 1..pv.len() {
                let a = (&pv[i] - &pv[j]).norm();
                let b = (&qv[i] - &qv[j]).norm();
                assert!((a - b).abs() < 1e-12, "{id}");
            }
        }
        let aligned = q.edges().iter().any(|&(i, j)| {
            let d = &qv[i] - &qv[j];
            d[0].abs() / d.norm() >= 1.0 - 1e-9
        });
        assert!(aligned, "{id}: no edge on the first axis");
    }
}

#[test]
fn edge_length_parameter_scales_geometry() {
    let id: CatalogId = "dodecahedron".parse().unwrap();
    let p = id.generate(2.5).unwrap();
    assert!((p.edge_length() - 2.5).abs() < 1e-12);
    assert_eq!(p.edges().len(), 30);
}

#[test]
fn detect_edges_on_a_custom_polytope() {
    let p = Polytope::new(
        "rectangle",
        vec![
            nalgebra::dvector![0.0, 0.0],
            nalgebra::dvector![2.0, 0.0],
            nalgebra::dvector![2.0, 1.0],
            nalgebra::dvector![0.0, 1.0],
        ],
    )
    .unwrap();
    assert_eq!(detect_edges(p.vertices()).unwrap(), vec![(0, 3), (1, 2)]);
}

#[test]
fn rejected_ids() {
    for bad in ["polygon:2", "cube:4", "24-cell:5", "hypercube:1", "dodecagon", ""] {
        let parsed = bad.parse::<CatalogId>();
        assert!(parsed.is_err() || parsed.unwrap().generate(1.0).is_err(), "{bad}");
    }
}
