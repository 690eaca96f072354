//! Optimal contraction ratio from the longest edge-parallel vertex chord.
//!
//! Every unordered vertex pair contributes one chord vector (set A); the
//! edges contribute the subset B. `delta_parallel` is the length of the
//! longest chord in A parallel to some edge in B, and the ratio at which the
//! level-1 copies touch without overlapping is `delta / (delta + edge)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::polytope::{orient_edge_to_axis, Point, Polytope};
use crate::tol::{PARALLEL_TOL, REL_TOL};

/// One chord vector per unordered vertex pair, sign-canonicalised so that
/// the first non-negligible component is positive.
#[derive(Debug, Clone)]
pub struct VectorSetA {
    pub vectors: Vec<Point>,
    pub source_pairs: Vec<(usize, usize)>,
}

/// The chord vectors of `VectorSetA` that are edges.
#[derive(Debug, Clone)]
pub struct VectorSetB {
    pub vectors: Vec<Point>,
    pub source_pairs: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioReport {
    pub delta_parallel: f64,
    pub edge_length: f64,
    pub r_opt: f64,
    pub witness_pair: (usize, usize),
    pub witness_edge: (usize, usize),
}

impl RatioReport {
    pub fn delta_over_edge(&self) -> f64 {
        self.delta_parallel / self.edge_length
    }
}

fn canonical_sign(mut v: Point, scale: f64) -> Point {
    if let Some(&c) = v.iter().find(|c| c.abs() > REL_TOL * scale) {
        if c < 0.0 {
            v.neg_mut();
        }
    }
    v
}

pub fn build_vector_sets(p: &Polytope) -> (VectorSetA, VectorSetB) {
    let verts = p.vertices();
    let scale = p.edge_length();
    let v = verts.len();
    let mut a = VectorSetA {
        vectors: Vec::with_capacity(v * (v - 1) / 2),
        source_pairs: Vec::with_capacity(v * (v - 1) / 2),
    };
    for i in 0..v {
        for j in i + 1..v {
            a.vectors
                .push(canonical_sign(&verts[j] - &verts[i], scale));
            a.source_pairs.push((i, j));
        }
    }
    let mut b = VectorSetB {
        vectors: Vec::with_capacity(p.edges().len()),
        source_pairs: Vec::with_capacity(p.edges().len()),
    };
    for &(i, j) in p.edges() {
        b.vectors.push(canonical_sign(&verts[j] - &verts[i], scale));
        b.source_pairs.push((i, j));
    }
    (a, b)
}

fn parallel(u: &Point, v: &Point) -> bool {
    u.dot(v).abs() >= (1.0 - PARALLEL_TOL) * u.norm() * v.norm()
}

/// Longest chord in `a` parallel to some edge in `b`, with the
/// lexicographically smallest witness among chords of (numerically) equal
/// length and the smallest edge it is parallel to.
pub fn delta_parallel(a: &VectorSetA, b: &VectorSetB) -> (f64, (usize, usize), (usize, usize)) {
    // (length, chord index, edge index) for every chord parallel to an edge.
    let candidates: Vec<(f64, usize, usize)> = a
        .vectors
        .iter()
        .enumerate()
        .filter_map(|(ai, u)| {
            b.vectors
                .iter()
                .position(|v| parallel(u, v))
                .map(|bi| (u.norm(), ai, bi))
        })
        .collect();

    let longest = candidates
        .iter()
        .map(|c| c.0)
        .fold(0.0_f64, f64::max);
    let &(_, ai, bi) = candidates
        .iter()
        .filter(|c| longest - c.0 <= REL_TOL * longest)
        .min_by_key(|c| a.source_pairs[c.1])
        .expect("every edge is parallel to itself");
    (longest, a.source_pairs[ai], b.source_pairs[bi])
}

/// Largest spread of vertex coordinates along the first axis. Requires an
/// edge parallel to that axis.
pub fn delta_parallel_axis(p: &Polytope) -> Result<f64> {
    let verts = p.vertices();
    let oriented = p.edges().iter().any(|&(i, j)| {
        let d = &verts[j] - &verts[i];
        d[0].abs() >= (1.0 - PARALLEL_TOL) * d.norm()
    });
    if !oriented {
        return Err(Error::NotAxisOriented);
    }
    let (lo, hi) = verts
        .iter()
        .map(|v| v[0])
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| {
            (lo.min(x), hi.max(x))
        });
    Ok(hi - lo)
}

/// `delta / (delta + edge_length)`.
pub fn r_opt_formula(delta: f64, edge_length: f64) -> Result<f64> {
    if !(edge_length > 0.0 && edge_length.is_finite() && delta.is_finite()) {
        return Err(Error::InvalidSize(edge_length));
    }
    if delta < edge_length * (1.0 - REL_TOL) {
        return Err(Error::DeltaBelowEdge { delta, edge_length });
    }
    Ok(delta / (delta + edge_length))
}

/// Full report via the exhaustive parallel-chord scan.
pub fn ratio_report(p: &Polytope) -> RatioReport {
    let (a, b) = build_vector_sets(p);
    let (delta, witness_pair, witness_edge) = delta_parallel(&a, &b);
    let edge_length = p.edge_length();
    let r_opt = r_opt_formula(delta, edge_length).expect("edges are chords, so delta >= edge");
    RatioReport {
        delta_parallel: delta,
        edge_length,
        r_opt,
        witness_pair,
        witness_edge,
    }
}

/// Orient `p`, then compute the report by the exhaustive scan and confirm
/// it against the axis spread. Disagreement is an error; the scan result
/// is the one reported.
pub fn cross_checked_report(p: &Polytope) -> Result<RatioReport> {
    let oriented = orient_edge_to_axis(p);
    let report = ratio_report(&oriented);
    let axis = delta_parallel_axis(&oriented)?;
    if (axis - report.delta_parallel).abs() > REL_TOL * report.delta_parallel {
        return Err(Error::MethodDisagreement {
            exact: report.delta_parallel,
            axis,
        });
    }
    Ok(report)
}
