//! The generalized chaos game: `x <- (1 - r) x + r v_i` with `v_i` drawn
//! uniformly from the polytope's vertices at every step.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hull::Halfspaces;
use crate::polytope::{Point, Polytope};

pub const DEFAULT_DISCARD: usize = 6;

const INITIAL_POINT_STREAM: u64 = 0;
const VERTEX_STREAM: u64 = 1;
const MAX_REJECTION_TRIES: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GcgConfig {
    pub ratio: f64,
    pub iterations: usize,
    pub discard: usize,
    pub seed: u64,
    /// Starting point; sampled uniformly inside the hull when absent.
    pub initial_point: Option<Vec<f64>>,
}

impl GcgConfig {
    pub fn new(ratio: f64, iterations: usize, seed: u64) -> Self {
        Self {
            ratio,
            iterations,
            discard: DEFAULT_DISCARD,
            seed,
            initial_point: None,
        }
    }

    pub fn with_discard(mut self, discard: usize) -> Self {
        self.discard = discard;
        self
    }

    pub fn with_initial_point(mut self, point: Vec<f64>) -> Self {
        self.initial_point = Some(point);
        self
    }

    pub fn validate(&self) -> Result<()> {
        check_ratio(self.ratio)?;
        if self.iterations == 0 {
            return Err(Error::InvalidConfig("iterations must be positive".into()));
        }
        if self.discard >= self.iterations {
            return Err(Error::InvalidConfig(format!(
                "discard ({}) must be below iterations ({})",
                self.discard, self.iterations
            )));
        }
        Ok(())
    }
}

pub(crate) fn check_ratio(r: f64) -> Result<()> {
    if r > 0.0 && r < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidRatio(r))
    }
}

/// Retained chaos game points, each tagged with the (0-based) index of the
/// vertex chosen at the step that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    pub dimension: usize,
    pub points: Vec<Point>,
    pub colors: Vec<usize>,
    pub config: GcgConfig,
    pub polytope_name: String,
}

impl PointCloud {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// One chaos game step: `(1 - r) x + r vertex`.
pub fn gcg_step(x: &Point, vertex: &Point, r: f64) -> Result<Point> {
    if x.len() != vertex.len() {
        return Err(Error::PointDimension {
            expected: vertex.len(),
            got: x.len(),
        });
    }
    check_ratio(r)?;
    Ok(x * (1.0 - r) + vertex * r)
}

/// Steps after which a start point anywhere within distance `D` of the hull
/// is within `eps * D` of it: `ceil(ln eps / ln(1 - r))`.
pub fn burn_in_steps(r: f64, eps: f64) -> usize {
    (eps.ln() / (1.0 - r).ln()).ceil().max(0.0) as usize
}

/// Play the chaos game on `p`. Deterministic for a fixed seed.
pub fn gcg_run(p: &Polytope, cfg: &GcgConfig) -> Result<PointCloud> {
    cfg.validate()?;
    let dim = p.dimension();
    let mut x = match &cfg.initial_point {
        Some(start) => {
            if start.len() != dim {
                return Err(Error::PointDimension {
                    expected: dim,
                    got: start.len(),
                });
            }
            Point::from_column_slice(start)
        }
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(INITIAL_POINT_STREAM);
            sample_in_hull(p, &mut rng)?
        }
    };

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(VERTEX_STREAM);
    let vertex_count = p.vertex_count() as u32;
    let keep = cfg.iterations - cfg.discard;
    let mut points = Vec::with_capacity(keep);
    let mut colors = Vec::with_capacity(keep);
    let (r, s) = (cfg.ratio, 1.0 - cfg.ratio);
    for step in 0..cfg.iterations {
        let i = rng.random_range(0..vertex_count) as usize;
        let v = &p.vertices()[i];
        x.zip_apply(v, |xc, vc| *xc = s * *xc + r * vc);
        if step >= cfg.discard {
            points.push(x.clone());
            colors.push(i);
        }
    }
    Ok(PointCloud {
        dimension: dim,
        points,
        colors,
        config: cfg.clone(),
        polytope_name: p.name().to_string(),
    })
}

/// Uniform point in the hull by rejection from the bounding box. Falls back
/// to a random convex combination of vertices when the hull fills too
/// little of its box (high-dimensional orthoplexes).
pub fn sample_in_hull<R: Rng>(p: &Polytope, rng: &mut R) -> Result<Point> {
    let hull = Halfspaces::from_points(p.vertices())?;
    let (lo, hi) = p.bounding_box();
    let tol = 1e-12 * p.diameter();
    for _ in 0..MAX_REJECTION_TRIES {
        let x = Point::from_fn(p.dimension(), |k, _| lo[k] + (hi[k] - lo[k]) * rng.random::<f64>());
        if hull.contains(&x, -tol) {
            return Ok(x);
        }
    }
    let weights: Vec<f64> = (0..p.vertex_count())
        .map(|_| -(1.0 - rng.random::<f64>()).ln())
        .collect();
    let total: f64 = weights.iter().sum();
    Ok(p.vertices()
        .iter()
        .zip(&weights)
        .fold(Point::zeros(p.dimension()), |acc, (v, w)| acc + v * (w / total)))
}
