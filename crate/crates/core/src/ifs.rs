//! Deterministic Hutchinson iteration on polytope copies, and the Hausdorff
//! distance between finite point sets.
//!
//! A level-k copy with ancestry `(i1, ..., ik)` is
//! `w_ik ∘ ... ∘ w_i1 (P)` where `w_i(x) = (1 - r) x + r v_i`. Copies are
//! kept in ancestry-lexicographic order.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::chaos::check_ratio;
use crate::error::{Error, Result};
use crate::polytope::{Point, Polytope};
use crate::tol::DEFAULT_COPY_CAP;

#[derive(Debug, Clone, PartialEq)]
pub struct PolytopeCopy {
    pub vertices: Vec<Point>,
    /// 0-based vertex indices, first-applied map first.
    pub ancestry: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CopySet {
    pub level: u32,
    pub copies: Vec<PolytopeCopy>,
    pub ratio: f64,
    pub base: String,
}

impl CopySet {
    /// `W^0(P) = {P}`.
    pub fn level_zero(p: &Polytope, r: f64) -> Result<Self> {
        check_ratio(r)?;
        Ok(Self {
            level: 0,
            copies: vec![PolytopeCopy {
                vertices: p.vertices().to_vec(),
                ancestry: Vec::new(),
            }],
            ratio: r,
            base: p.name().to_string(),
        })
    }

    /// All copy vertices in copy order.
    pub fn flatten(&self) -> Vec<Point> {
        self.copies
            .iter()
            .flat_map(|c| c.vertices.iter().cloned())
            .collect()
    }

    pub fn len(&self) -> usize {
        self.copies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.copies.is_empty()
    }
}

/// Apply every vertex map of `p` to every copy.
pub fn hutchinson_step(c: &CopySet, p: &Polytope) -> Result<CopySet> {
    let dim = p.dimension();
    if let Some(bad) = c
        .copies
        .iter()
        .flat_map(|copy| copy.vertices.iter())
        .find(|v| v.len() != dim)
    {
        return Err(Error::PointDimension {
            expected: dim,
            got: bad.len(),
        });
    }
    let r = c.ratio;
    let s = 1.0 - r;
    let mut copies = Vec::with_capacity(c.copies.len() * p.vertex_count());
    for copy in &c.copies {
        for (i, fixed) in p.vertices().iter().enumerate() {
            let vertices = copy.vertices.iter().map(|x| x * s + fixed * r).collect();
            let mut ancestry = Vec::with_capacity(copy.ancestry.len() + 1);
            ancestry.extend_from_slice(&copy.ancestry);
            ancestry.push(i);
            copies.push(PolytopeCopy { vertices, ancestry });
        }
    }
    Ok(CopySet {
        level: c.level + 1,
        copies,
        ratio: r,
        base: c.base.clone(),
    })
}

pub fn hutchinson_iterate(p: &Polytope, r: f64, level: u32) -> Result<CopySet> {
    hutchinson_iterate_capped(p, r, level, DEFAULT_COPY_CAP)
}

/// `W^level(P)`, refusing to build more than `cap` copies.
pub fn hutchinson_iterate_capped(p: &Polytope, r: f64, level: u32, cap: u64) -> Result<CopySet> {
    let copies = (p.vertex_count() as u128).checked_pow(level);
    match copies {
        Some(n) if n <= cap as u128 => {}
        other => {
            return Err(Error::CopyCap {
                level,
                copies: other.unwrap_or(u128::MAX),
                cap,
            })
        }
    }
    let mut set = CopySet::level_zero(p, r)?;
    for _ in 0..level {
        set = hutchinson_step(&set, p)?;
    }
    Ok(set)
}

/// `max_{a in from} min_{b in to} |a - b|`, with the usual early exit: the
/// inner scan stops as soon as `a` is provably not the new maximum.
/// Worst case O(|from| |to|); the inner order is shuffled (fixed seed) so
/// structured inputs do not defeat the early exit.
pub fn directed_hausdorff(from: &[Point], to: &[Point]) -> Result<f64> {
    if from.is_empty() || to.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut order: Vec<usize> = (0..to.len()).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(0x5eed));
    let mut outer: Vec<usize> = (0..from.len()).collect();
    outer.shuffle(&mut ChaCha8Rng::seed_from_u64(0x0de7));

    let mut cmax = 0.0_f64;
    for &ai in &outer {
        let a = &from[ai];
        let mut cmin = f64::INFINITY;
        for &bi in &order {
            let d = squared_distance(a, &to[bi]);
            if d < cmax {
                cmin = d;
                break;
            }
            cmin = cmin.min(d);
        }
        cmax = cmax.max(cmin);
    }
    Ok(cmax.sqrt())
}

fn squared_distance(a: &Point, b: &Point) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Symmetric Hausdorff distance under the Euclidean metric.
pub fn hausdorff_distance(a: &[Point], b: &[Point]) -> Result<f64> {
    Ok(directed_hausdorff(a, b)?.max(directed_hausdorff(b, a)?))
}
