//! Level-1 copy overlap test and the empirical search for the optimal ratio.
//!
//! Copy `i` at ratio `r` is `w_i(hull P) = s hull(P) + r v_i` with
//! `s = 1 - r`. Two copies are translates of one body, so their signed
//! distance equals the signed distance from `d = r (v_j - v_i)` to the
//! scaled difference body `s (P - P)`. Inside that body the margin is minus
//! the distance to its boundary (read off the facets); outside it is the
//! Euclidean gap between the copies.

use serde::Serialize;

use crate::chaos::check_ratio;
use crate::error::{Error, Result};
use crate::hull::Halfspaces;
use crate::nearest::nearest_in_hull;
use crate::polytope::{Point, Polytope};
use crate::tol::SEPARATION_REL_TOL;

pub const DEFAULT_R_MIN: f64 = 0.3;
pub const DEFAULT_R_MAX: f64 = 0.99;

const MIN_PROBE: f64 = 1e-6;
const MAX_PROBE: f64 = 1.0 - 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OverlapVerdict {
    pub ratio: f64,
    /// Pairs `(i, j)`, `i < j`, whose copies share interior points.
    pub overlapping_pairs: Vec<(usize, usize)>,
    /// Most negative margin over all pairs, or 0 when none is negative.
    pub max_penetration: f64,
    /// Separation tolerance used for the verdict.
    pub tolerance: f64,
}

impl OverlapVerdict {
    pub fn overlaps(&self) -> bool {
        !self.overlapping_pairs.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchResult {
    /// Largest probed ratio with overlap.
    pub r_low: f64,
    /// Smallest probed ratio without overlap.
    pub r_high: f64,
    pub r_estimate: f64,
    pub probes: Vec<(f64, OverlapVerdict)>,
    /// Bracket width at termination.
    pub tolerance: f64,
}

/// Precomputed difference body of a polytope, reused across ratios and pairs.
#[derive(Debug, Clone)]
pub struct OverlapTester {
    polytope: Polytope,
    differences: Vec<Point>,
    difference_hull: Halfspaces,
    tau: f64,
}

impl OverlapTester {
    pub fn new(p: &Polytope) -> Result<Self> {
        let verts = p.vertices();
        let scale = p.edge_length();
        let mut differences: Vec<Point> = Vec::new();
        for (a, va) in verts.iter().enumerate() {
            for (b, vb) in verts.iter().enumerate() {
                if a == b {
                    continue;
                }
                let d = va - vb;
                if !differences.iter().any(|e| (e - &d).amax() <= 1e-12 * scale) {
                    differences.push(d);
                }
            }
        }
        let difference_hull = Halfspaces::from_points(&differences)?;
        Ok(Self {
            polytope: p.clone(),
            differences,
            difference_hull,
            tau: SEPARATION_REL_TOL * p.diameter(),
        })
    }

    pub fn polytope(&self) -> &Polytope {
        &self.polytope
    }

    /// Separation tolerance τ (absolute length).
    pub fn tau(&self) -> f64 {
        self.tau
    }

    fn check_pair(&self, i: usize, j: usize) -> Result<()> {
        let n = self.polytope.vertex_count();
        if i == j || i >= n || j >= n {
            return Err(Error::InvalidCopyPair {
                i,
                j,
                vertex_count: n,
            });
        }
        Ok(())
    }

    /// Signed separation between copies `i` and `j` at ratio `r`: the
    /// Euclidean gap when disjoint, minus the penetration depth otherwise.
    pub fn margin(&self, r: f64, i: usize, j: usize) -> Result<f64> {
        check_ratio(r)?;
        self.check_pair(i, j)?;
        // Always evaluate the pair in one orientation so (i, j) and (j, i)
        // agree bit for bit.
        let (i, j) = (i.min(j), i.max(j));
        let s = 1.0 - r;
        let verts = self.polytope.vertices();
        let d = (&verts[j] - &verts[i]) * r;
        let inside = self.difference_hull.max_violation_scaled(&d, s);
        if inside <= 0.0 {
            return Ok(inside);
        }
        let (_, gap) = nearest_in_hull(&self.differences, &(d / s));
        Ok(gap * s)
    }

    /// `(overlaps, margin)`; touching copies (|margin| <= τ) do not overlap.
    pub fn copies_overlap(&self, r: f64, i: usize, j: usize) -> Result<(bool, f64)> {
        let m = self.margin(r, i, j)?;
        Ok((m < -self.tau, m))
    }

    /// Ratio at which copies `i` and `j` start to touch: they overlap exactly
    /// when `r` is below it. Follows from the gauge of `v_j - v_i` with
    /// respect to the difference body.
    pub fn touching_ratio(&self, i: usize, j: usize) -> Result<f64> {
        self.check_pair(i, j)?;
        let (i, j) = (i.min(j), i.max(j));
        let verts = self.polytope.vertices();
        let u = &verts[j] - &verts[i];
        let gauge = self
            .difference_hull
            .normals()
            .iter()
            .zip(self.difference_hull.offsets())
            .map(|(n, c)| n.dot(&u) / c)
            .fold(0.0_f64, f64::max);
        Ok(1.0 / (1.0 + gauge))
    }

    /// Verdict over all `C(V, 2)` pairs.
    pub fn verdict(&self, r: f64) -> Result<OverlapVerdict> {
        check_ratio(r)?;
        let n = self.polytope.vertex_count();
        let mut overlapping_pairs = Vec::new();
        let mut worst = 0.0_f64;
        for i in 0..n {
            for j in i + 1..n {
                let (overlaps, m) = self.copies_overlap(r, i, j)?;
                if overlaps {
                    overlapping_pairs.push((i, j));
                }
                worst = worst.min(m);
            }
        }
        Ok(OverlapVerdict {
            ratio: r,
            overlapping_pairs,
            max_penetration: worst,
            tolerance: self.tau,
        })
    }

    /// Bisection on the overlap predicate. The bracket `[r_min, r_max]` is
    /// widened first if its ends do not show overlap / no overlap.
    pub fn search(&self, tolerance: f64, r_min: f64, r_max: f64) -> Result<SearchResult> {
        if !(tolerance > 0.0 && tolerance.is_finite()) {
            return Err(Error::InvalidSearch(format!(
                "tolerance must be positive, got {tolerance}"
            )));
        }
        if !(r_min > 0.0 && r_max < 1.0 && r_min < r_max) {
            return Err(Error::InvalidSearch(format!(
                "need 0 < r_min < r_max < 1, got [{r_min}, {r_max}]"
            )));
        }
        let mut probes: Vec<(f64, OverlapVerdict)> = Vec::new();
        let mut probe = |r: f64| -> Result<bool> {
            let v = self.verdict(r)?;
            let overlaps = v.overlaps();
            probes.push((r, v));
            Ok(overlaps)
        };

        let mut low = r_min;
        while !probe(low)? {
            if low <= MIN_PROBE {
                return Err(Error::Bracket {
                    reason: format!("no overlap even at r = {low}"),
                });
            }
            low = (low / 2.0).max(MIN_PROBE);
        }
        let mut high = r_max.max(low);
        while probe(high)? {
            if high >= MAX_PROBE {
                return Err(Error::Bracket {
                    reason: format!("copies still overlap at r = {high}"),
                });
            }
            high = (1.0 - (1.0 - high) / 2.0).min(MAX_PROBE);
        }

        while high - low > tolerance {
            let mid = 0.5 * (low + high);
            if probe(mid)? {
                low = mid;
            } else {
                high = mid;
            }
        }

        let consistent = probes
            .iter()
            .all(|(r, v)| if v.overlaps() { *r <= low } else { *r >= high });
        if !consistent {
            let log: Vec<String> = probes
                .iter()
                .map(|(r, v)| format!("{r}:{}", if v.overlaps() { "overlap" } else { "clear" }))
                .collect();
            return Err(Error::Bracket {
                reason: format!("overlap predicate is not monotone in r; probes {}", log.join(", ")),
            });
        }

        Ok(SearchResult {
            r_low: low,
            r_high: high,
            r_estimate: 0.5 * (low + high),
            probes,
            tolerance: high - low,
        })
    }
}

/// Whether copies `w_i(P)` and `w_j(P)` share interior points at ratio `r`,
/// with the signed margin.
pub fn copies_overlap(p: &Polytope, r: f64, i: usize, j: usize) -> Result<(bool, f64)> {
    OverlapTester::new(p)?.copies_overlap(r, i, j)
}

pub fn any_overlap_at(p: &Polytope, r: f64) -> Result<OverlapVerdict> {
    OverlapTester::new(p)?.verdict(r)
}

pub fn search_r_opt(p: &Polytope, tolerance: f64, r_min: f64, r_max: f64) -> Result<SearchResult> {
    OverlapTester::new(p)?.search(tolerance, r_min, r_max)
}
