//! Closest point of a convex hull to a query point (Gilbert's algorithm with
//! an exhaustive sub-simplex solve; dimensions here are small).

use nalgebra::DMatrix;

use crate::polytope::Point;

const MAX_ITERS: usize = 1000;

/// Nearest point of `conv(points)` to `query`, and its distance.
pub fn nearest_in_hull(points: &[Point], query: &Point) -> (Point, f64) {
    assert!(!points.is_empty(), "hull of an empty point set");
    let scale = points
        .iter()
        .map(|p| (p - query).amax())
        .fold(0.0_f64, f64::max)
        .max(f64::MIN_POSITIVE);

    let start = points
        .iter()
        .min_by(|a, b| (*a - query).norm_squared().total_cmp(&(*b - query).norm_squared()))
        .unwrap()
        .clone();
    let mut simplex = vec![start.clone()];
    let mut x = start;

    for _ in 0..MAX_ITERS {
        let v = &x - query;
        let vv = v.norm_squared();
        if vv.sqrt() <= 1e-14 * scale {
            return (x, 0.0);
        }
        let w = points
            .iter()
            .min_by(|a, b| a.dot(&v).total_cmp(&b.dot(&v)))
            .unwrap();
        // Frank-Wolfe gap: no hull point is closer along -v.
        if v.dot(&(&x - w)) <= 1e-12 * vv {
            break;
        }
        if simplex.iter().any(|s| (s - w).amax() == 0.0) {
            break;
        }
        simplex.push(w.clone());
        let (nx, support) = closest_on_simplex(&simplex, query);
        simplex = support;
        x = nx;
    }
    let d = (&x - query).norm();
    (x, d)
}

/// Closest point of the simplex spanned by `verts` to `q`, together with the
/// smallest face (as a vertex list) containing it.
fn closest_on_simplex(verts: &[Point], q: &Point) -> (Point, Vec<Point>) {
    let k = verts.len();
    let mut best: Option<(f64, Point, u32)> = None;
    for mask in 1u32..(1 << k) {
        let idx: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).collect();
        let Some((x, weights)) = affine_projection(verts, &idx, q) else {
            continue;
        };
        if weights.iter().any(|&w| w < -1e-12) {
            continue;
        }
        let d = (&x - q).norm_squared();
        let better = match &best {
            None => true,
            Some((bd, _, bm)) => {
                d < *bd * (1.0 - 1e-12) || (d <= *bd && mask.count_ones() < bm.count_ones())
            }
        };
        if better {
            best = Some((d, x, mask));
        }
    }
    let (_, x, mask) = best.expect("single vertices always project");
    let face = (0..k)
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| verts[i].clone())
        .collect();
    (x, face)
}

/// Orthogonal projection of `q` onto the affine hull of the chosen vertices,
/// with barycentric weights; `None` when they are affinely dependent.
fn affine_projection(verts: &[Point], idx: &[usize], q: &Point) -> Option<(Point, Vec<f64>)> {
    let base = &verts[idx[0]];
    let m = idx.len() - 1;
    if m == 0 {
        return Some((base.clone(), vec![1.0]));
    }
    let dirs: Vec<Point> = idx[1..].iter().map(|&i| &verts[i] - base).collect();
    let rhs_vec = q - base;
    let mut gram = DMatrix::<f64>::zeros(m, m);
    let mut rhs = nalgebra::DVector::<f64>::zeros(m);
    for a in 0..m {
        rhs[a] = dirs[a].dot(&rhs_vec);
        for b in 0..m {
            gram[(a, b)] = dirs[a].dot(&dirs[b]);
        }
    }
    let scale = (0..m).map(|a| gram[(a, a)]).fold(0.0_f64, f64::max);
    let lu = gram.clone().full_piv_lu();
    let det = lu.determinant();
    if det.abs() <= 1e-12 * scale.powi(m as i32) {
        return None;
    }
    let lambda = lu.solve(&rhs)?;
    let mut x = base.clone();
    for (a, d) in dirs.iter().enumerate() {
        x += d * lambda[a];
    }
    let mut weights = Vec::with_capacity(m + 1);
    weights.push(1.0 - lambda.sum());
    weights.extend(lambda.iter().copied());
    Some((x, weights))
}
