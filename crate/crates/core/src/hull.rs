//! Facet (halfspace) representation of the convex hull of a point set.
//!
//! The facets of a full-dimensional hull containing the origin in its
//! interior are the vertices of its polar `{h : y.h <= 1 for all points y}`.
//! Those vertices are enumerated with the double description method: start
//! from a large box, then cut by one point constraint at a time, creating a
//! new vertex on every edge that crosses the cutting hyperplane. Edges are
//! recognised algebraically (the constraints tight at both ends have rank
//! n - 1), which stays correct for the highly degenerate, symmetric point
//! sets produced by regular polytopes.

use fixedbitset::FixedBitSet;
use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::polytope::Point;

const SLACK_TOL: f64 = 1e-9;
const RANK_TOL: f64 = 1e-9;
const INITIAL_BOX: f64 = 16.0;
const MAX_BOX: f64 = 1e6;

/// The hull as `{x : normal_k . x <= offset_k}` with unit normals.
#[derive(Debug, Clone)]
pub struct Halfspaces {
    normals: Vec<Point>,
    offsets: Vec<f64>,
}

impl Halfspaces {
    /// H-representation of the convex hull of `points`, which must span
    /// their ambient space.
    pub fn from_points(points: &[Point]) -> Result<Self> {
        let dim = points
            .first()
            .map(|p| p.len())
            .ok_or(Error::EmptySet)?;
        if points.len() <= dim {
            return Err(Error::Degenerate(format!(
                "{} points cannot span {} dimensions",
                points.len(),
                dim
            )));
        }
        let center = points.iter().fold(Point::zeros(dim), |acc, p| acc + p) / points.len() as f64;
        let radius = points
            .iter()
            .map(|p| (p - &center).norm())
            .fold(0.0_f64, f64::max);
        if radius == 0.0 {
            return Err(Error::Degenerate("all points coincide".into()));
        }

        // Normalised, de-duplicated, farthest first: outer points define the
        // facets and make later constraints redundant early.
        let mut rows: Vec<Point> = Vec::with_capacity(points.len());
        for p in points {
            let y = (p - &center) / radius;
            if !rows.iter().any(|r| (r - &y).amax() < 1e-12) {
                rows.push(y);
            }
        }
        rows.sort_by(|a, b| b.norm().total_cmp(&a.norm()));

        let mut bound = INITIAL_BOX;
        let polar_vertices = loop {
            if let Some(vs) = polar_vertices(&rows, dim, bound) {
                break vs;
            }
            bound *= 16.0;
            if bound > MAX_BOX {
                return Err(Error::Degenerate(
                    "points do not span their ambient space".into(),
                ));
            }
        };

        let mut normals: Vec<Point> = Vec::with_capacity(polar_vertices.len());
        let mut offsets = Vec::with_capacity(polar_vertices.len());
        for h in polar_vertices {
            let len = h.norm();
            let n = h / len;
            if normals.iter().any(|m| (m - &n).amax() < 1e-9) {
                continue;
            }
            offsets.push(radius / len + n.dot(&center));
            normals.push(n);
        }
        Ok(Self { normals, offsets })
    }

    pub fn len(&self) -> usize {
        self.normals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.normals.is_empty()
    }

    pub fn normals(&self) -> &[Point] {
        &self.normals
    }

    pub fn offsets(&self) -> &[f64] {
        &self.offsets
    }

    /// `max_k (normal_k . x - offset_k)`. Non-positive inside the hull, where
    /// its magnitude is the distance to the boundary; positive outside.
    pub fn max_violation(&self, x: &Point) -> f64 {
        self.normals
            .iter()
            .zip(&self.offsets)
            .map(|(n, c)| n.dot(x) - c)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Like `max_violation` for the hull scaled by `factor` about the origin.
    pub fn max_violation_scaled(&self, x: &Point, factor: f64) -> f64 {
        self.normals
            .iter()
            .zip(&self.offsets)
            .map(|(n, c)| n.dot(x) - factor * c)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Membership with an absolute boundary tolerance.
    pub fn contains(&self, x: &Point, tol: f64) -> bool {
        self.max_violation(x) <= tol
    }
}

struct Vertex {
    point: DVector<f64>,
    tight: FixedBitSet,
}

/// Vertices of `{h : row.h <= 1} ∩ [-bound, bound]^dim`, or `None` if the
/// box still touches the result (bound too small or unbounded polar).
fn polar_vertices(rows: &[Point], dim: usize, bound: f64) -> Option<Vec<Point>> {
    // Constraint k: a_k . h <= b_k. Box constraints come first.
    let mut normals: Vec<DVector<f64>> = Vec::with_capacity(2 * dim + rows.len());
    let mut rhs: Vec<f64> = Vec::with_capacity(2 * dim + rows.len());
    for axis in 0..dim {
        for sign in [1.0, -1.0] {
            let mut a = DVector::zeros(dim);
            a[axis] = sign;
            normals.push(a);
            rhs.push(bound);
        }
    }
    for r in rows {
        normals.push(r.clone());
        rhs.push(1.0);
    }
    let total = normals.len();

    let mut vertices: Vec<Vertex> = (0..1usize << dim)
        .map(|bits| {
            let mut point = DVector::zeros(dim);
            let mut tight = FixedBitSet::with_capacity(total);
            for axis in 0..dim {
                if bits >> axis & 1 == 1 {
                    point[axis] = bound;
                    tight.insert(2 * axis);
                } else {
                    point[axis] = -bound;
                    tight.insert(2 * axis + 1);
                }
            }
            Vertex { point, tight }
        })
        .collect();

    for k in 2 * dim..total {
        let a = &normals[k];
        let b = rhs[k];
        let slacks: Vec<f64> = vertices.iter().map(|v| b - a.dot(&v.point)).collect();
        let tols: Vec<f64> = vertices
            .iter()
            .map(|v| SLACK_TOL * (b.abs() + a.norm() * v.point.norm()))
            .collect();

        let mut plus = Vec::new();
        let mut minus = Vec::new();
        for (idx, (&s, &t)) in slacks.iter().zip(&tols).enumerate() {
            if s > t {
                plus.push(idx);
            } else if s < -t {
                minus.push(idx);
            } else {
                vertices[idx].tight.insert(k);
            }
        }
        if minus.is_empty() {
            continue;
        }

        let mut created = Vec::new();
        for &pi in &plus {
            for &mi in &minus {
                let common = {
                    let mut c = vertices[pi].tight.clone();
                    c.intersect_with(&vertices[mi].tight);
                    c
                };
                if common.count_ones(..) + 1 < dim {
                    continue;
                }
                if constraint_rank(&normals, &common, dim) + 1 != dim {
                    continue;
                }
                let (sp, sm) = (slacks[pi], slacks[mi]);
                let t = sp / (sp - sm);
                let p = &vertices[pi].point;
                let m = &vertices[mi].point;
                let point = p + (m - p) * t;
                let mut tight = common;
                tight.insert(k);
                created.push(Vertex { point, tight });
            }
        }

        let mut keep = vec![true; vertices.len()];
        for &mi in &minus {
            keep[mi] = false;
        }
        let mut next: Vec<Vertex> = vertices
            .into_iter()
            .zip(keep)
            .filter_map(|(v, k)| k.then_some(v))
            .collect();
        next.extend(created);
        vertices = next;
    }

    let touches_box = vertices
        .iter()
        .any(|v| v.tight.ones().any(|k| k < 2 * dim));
    if touches_box {
        return None;
    }
    Some(vertices.into_iter().map(|v| v.point).collect())
}

fn constraint_rank(normals: &[DVector<f64>], set: &FixedBitSet, dim: usize) -> usize {
    let idx: Vec<usize> = set.ones().collect();
    let mut m = DMatrix::<f64>::zeros(idx.len(), dim);
    for (row, &k) in idx.iter().enumerate() {
        let n = &normals[k];
        let len = n.norm();
        for c in 0..dim {
            m[(row, c)] = n[c] / len;
        }
    }
    gaussian_rank(m)
}

fn gaussian_rank(mut m: DMatrix<f64>) -> usize {
    let (rows, cols) = m.shape();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let (pivot, val) = (rank..rows)
            .map(|r| (r, m[(r, col)].abs()))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        if val <= RANK_TOL {
            continue;
        }
        m.swap_rows(rank, pivot);
        for r in rank + 1..rows {
            let f = m[(r, col)] / m[(rank, col)];
            if f != 0.0 {
                for c in col..cols {
                    m[(r, c)] -= f * m[(rank, c)];
                }
            }
        }
        rank += 1;
    }
    rank
}
