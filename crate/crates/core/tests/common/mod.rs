#![allow(dead_code)]

use gcg_core::hull::Halfspaces;
use gcg_core::{CatalogId, Point, Polytope};
use rand::Rng;

pub const PHI: f64 = 1.618_033_988_749_895;

pub fn load(id: &str) -> Polytope {
    id.parse::<CatalogId>().unwrap().generate(1.0).unwrap()
}

/// Closed-form optimal ratio of a regular k-gon.
pub fn polygon_r_opt(k: usize) -> f64 {
    let sum: f64 = (1..=k / 4)
        .map(|j| (2.0 * std::f64::consts::PI * j as f64 / k as f64).cos())
        .sum();
    1.0 - 1.0 / (2.0 * (1.0 + sum))
}

/// Known optimal ratios of the tabulated polytopes.
pub fn expected_r_opt(id: &str) -> f64 {
    match id {
        "tetrahedron" | "cube" | "octahedron" | "5-cell" | "8-cell" | "16-cell" | "simplex:5"
        | "hypercube:5" | "orthoplex:5" => 0.5,
        "icosahedron" => 1.0 / PHI,
        "dodecahedron" => (PHI + 1.0) / (PHI + 2.0),
        "24-cell" => 2.0 / 3.0,
        other => {
            let k = other
                .strip_prefix("polygon:")
                .unwrap_or_else(|| panic!("no closed form for {other}"));
            polygon_r_opt(k.parse().unwrap())
        }
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Expected (vertex count, edge count).
pub fn expected_counts(id: &str) -> (usize, usize) {
    let n_of = |s: &str| s.split(':').nth(1).unwrap().parse::<usize>().unwrap();
    match id {
        "tetrahedron" => (4, 6),
        "cube" => (8, 12),
        "octahedron" => (6, 12),
        "icosahedron" => (12, 30),
        "dodecahedron" => (20, 30),
        "5-cell" => (5, 10),
        "8-cell" => (16, 32),
        "16-cell" => (8, 24),
        "24-cell" => (24, 96),
        s if s.starts_with("polygon:") => (n_of(s), n_of(s)),
        s if s.starts_with("simplex:") => {
            let n = n_of(s);
            (n + 1, n * (n + 1) / 2)
        }
        s if s.starts_with("hypercube:") => {
            let n = n_of(s);
            (1 << n, n << (n - 1))
        }
        s if s.starts_with("orthoplex:") => {
            let n = n_of(s);
            (2 * n, 2 * n * (n - 1))
        }
        other => panic!("unknown id {other}"),
    }
}

pub fn catalog_ids() -> Vec<String> {
    let mut ids: Vec<String> = (3..=12).map(|k| format!("polygon:{k}")).collect();
    for s in [
        "tetrahedron",
        "cube",
        "octahedron",
        "icosahedron",
        "dodecahedron",
        "5-cell",
        "8-cell",
        "16-cell",
        "24-cell",
    ] {
        ids.push(s.to_string());
    }
    for n in 2..=6 {
        ids.push(format!("simplex:{n}"));
        ids.push(format!("hypercube:{n}"));
        ids.push(format!("orthoplex:{n}"));
    }
    ids
}

/// Copy `j` of the level-1 family: `(1 - r) K + r v_j`.
pub fn copy_vertices(p: &Polytope, r: f64, j: usize) -> Vec<Point> {
    let v = &p.vertices()[j];
    p.vertices().iter().map(|x| x * (1.0 - r) + v * r).collect()
}

/// Signed depth of `x` inside copy `j` (negative inside), measured in the
/// original frame.
pub fn depth_in_copy(hull: &Halfspaces, p: &Polytope, r: f64, j: usize, x: &Point) -> f64 {
    let s = 1.0 - r;
    let y = (x - &p.vertices()[j] * r) / s;
    hull.max_violation(&y) * s
}

/// Points of the convex hull of `verts`, biased towards its low-dimensional
/// faces: vertices, segment points, triangle points and Dirichlet interior
/// points.
pub fn skeleton_samples<R: Rng>(verts: &[Point], count: usize, rng: &mut R) -> Vec<Point> {
    let n = verts.len();
    let mut out: Vec<Point> = verts.to_vec();
    for i in 0..n {
        for j in i + 1..n {
            for t in [0.25, 0.5, 0.75] {
                out.push(&verts[i] * (1.0 - t) + &verts[j] * t);
            }
        }
    }
    while out.len() < count {
        let k = match rng.random_range(0..3) {
            0 => 2,
            1 => 3.min(n),
            _ => n,
        };
        let mut weights: Vec<f64> = (0..k).map(|_| -rng.random::<f64>().max(1e-300).ln()).collect();
        let total: f64 = weights.iter().sum();
        weights.iter_mut().for_each(|w| *w /= total);
        let mut x = Point::zeros(verts[0].len());
        for w in &weights {
            x += &verts[rng.random_range(0..n)] * *w;
        }
        out.push(x);
    }
    out
}
