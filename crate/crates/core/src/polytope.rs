//! Regular polytope catalog.
//!
//! Every generated polytope is centred on its vertex centroid and scaled so
//! that its edge length equals the requested size. Edges are the vertex pairs
//! at minimal pairwise distance, which holds for every regular polytope.

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::tol::{PARALLEL_TOL, REL_TOL};

pub type Point = DVector<f64>;

/// The golden ratio (1 + sqrt 5) / 2.
pub const PHI: f64 = 1.618_033_988_749_895;

/// A family of regular polytopes, independent of size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// Regular polygon with the given number of vertices.
    Polygon(usize),
    Tetrahedron,
    Cube,
    Octahedron,
    Icosahedron,
    Dodecahedron,
    FiveCell,
    EightCell,
    SixteenCell,
    TwentyFourCell,
    Simplex,
    Hypercube,
    Orthoplex,
}

impl Family {
    /// The dimension this family is fixed to, if any.
    pub fn fixed_dimension(self) -> Option<usize> {
        match self {
            Family::Polygon(_) => Some(2),
            Family::Tetrahedron
            | Family::Cube
            | Family::Octahedron
            | Family::Icosahedron
            | Family::Dodecahedron => Some(3),
            Family::FiveCell | Family::EightCell | Family::SixteenCell | Family::TwentyFourCell => {
                Some(4)
            }
            Family::Simplex | Family::Hypercube | Family::Orthoplex => None,
        }
    }

    /// Number of vertices of the family member in `dimension`.
    pub fn vertex_count(self, dimension: usize) -> usize {
        match self {
            Family::Polygon(k) => k,
            Family::Tetrahedron => 4,
            Family::Cube => 8,
            Family::Octahedron => 6,
            Family::Icosahedron => 12,
            Family::Dodecahedron => 20,
            Family::FiveCell => 5,
            Family::EightCell => 16,
            Family::SixteenCell => 8,
            Family::TwentyFourCell => 24,
            Family::Simplex => dimension + 1,
            Family::Hypercube => 1 << dimension,
            Family::Orthoplex => 2 * dimension,
        }
    }

    fn base_name(self) -> &'static str {
        match self {
            Family::Polygon(_) => "polygon",
            Family::Tetrahedron => "tetrahedron",
            Family::Cube => "cube",
            Family::Octahedron => "octahedron",
            Family::Icosahedron => "icosahedron",
            Family::Dodecahedron => "dodecahedron",
            Family::FiveCell => "5-cell",
            Family::EightCell => "8-cell",
            Family::SixteenCell => "16-cell",
            Family::TwentyFourCell => "24-cell",
            Family::Simplex => "simplex",
            Family::Hypercube => "hypercube",
            Family::Orthoplex => "orthoplex",
        }
    }
}

/// A family together with its dimension; parses and prints the stable
/// catalog identifiers (`polygon:5`, `icosahedron`, `simplex:5`, ...).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CatalogId {
    pub family: Family,
    pub dimension: usize,
}

impl CatalogId {
    pub fn new(family: Family, dimension: usize) -> Result<Self> {
        validate_family(family, dimension)?;
        Ok(Self { family, dimension })
    }

    /// Generate the polytope with the given edge length.
    pub fn generate(self, edge_length: f64) -> Result<Polytope> {
        generate_polytope(self.family, self.dimension, edge_length)
    }
}

impl fmt::Display for CatalogId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::Polygon(k) => write!(f, "polygon:{k}"),
            Family::Simplex | Family::Hypercube | Family::Orthoplex => {
                write!(f, "{}:{}", self.family.base_name(), self.dimension)
            }
            other => f.write_str(other.base_name()),
        }
    }
}

impl FromStr for CatalogId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let id = s.trim().to_ascii_lowercase();
        let (head, arg) = match id.split_once(':') {
            Some((h, a)) => {
                let n = a
                    .parse::<usize>()
                    .map_err(|_| Error::UnknownFamily(s.to_string()))?;
                (h, Some(n))
            }
            None => (id.as_str(), None),
        };
        let with_arg = |family: fn(usize) -> (Family, usize)| match arg {
            Some(n) => Ok(family(n)),
            None => Err(Error::UnknownFamily(s.to_string())),
        };
        let no_arg = |family: Family, dim: usize| match arg {
            None => Ok((family, dim)),
            Some(_) => Err(Error::UnknownFamily(s.to_string())),
        };
        let (family, dimension) = match head {
            "polygon" => with_arg(|k| (Family::Polygon(k), 2))?,
            "simplex" => with_arg(|n| (Family::Simplex, n))?,
            "hypercube" => with_arg(|n| (Family::Hypercube, n))?,
            "orthoplex" => with_arg(|n| (Family::Orthoplex, n))?,
            "triangle" => no_arg(Family::Polygon(3), 2)?,
            "square" => no_arg(Family::Polygon(4), 2)?,
            "pentagon" => no_arg(Family::Polygon(5), 2)?,
            "hexagon" => no_arg(Family::Polygon(6), 2)?,
            "heptagon" => no_arg(Family::Polygon(7), 2)?,
            "octagon" => no_arg(Family::Polygon(8), 2)?,
            "tetrahedron" => no_arg(Family::Tetrahedron, 3)?,
            "cube" => no_arg(Family::Cube, 3)?,
            "octahedron" => no_arg(Family::Octahedron, 3)?,
            "icosahedron" => no_arg(Family::Icosahedron, 3)?,
            "dodecahedron" => no_arg(Family::Dodecahedron, 3)?,
            "5-cell" => no_arg(Family::FiveCell, 4)?,
            "8-cell" | "tesseract" => no_arg(Family::EightCell, 4)?,
            "16-cell" => no_arg(Family::SixteenCell, 4)?,
            "24-cell" => no_arg(Family::TwentyFourCell, 4)?,
            _ => return Err(Error::UnknownFamily(s.to_string())),
        };
        CatalogId::new(family, dimension)
    }
}

fn validate_family(family: Family, dimension: usize) -> Result<()> {
    if let Family::Polygon(k) = family {
        if k < 3 {
            return Err(Error::TooFewPolygonVertices(k));
        }
    }
    let ok = match family.fixed_dimension() {
        Some(d) => d == dimension,
        // 2^n vertices must stay addressable.
        None => (2..=24).contains(&dimension),
    };
    if ok {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            family: family.base_name().to_string(),
            dimension,
        })
    }
}

/// A regular polytope in R^n: vertices, minimal-distance edges and edge length.
#[derive(Debug, Clone, PartialEq)]
pub struct Polytope {
    name: String,
    dimension: usize,
    vertices: Vec<Point>,
    edges: Vec<(usize, usize)>,
    edge_length: f64,
}

impl Polytope {
    /// Build a polytope from explicit vertices. Edges are detected as the
    /// minimal-distance pairs.
    pub fn new(name: impl Into<String>, vertices: Vec<Point>) -> Result<Self> {
        let dimension = vertices.first().map_or(0, |v| v.len());
        if dimension == 0 {
            return Err(Error::TooFewVertices {
                needed: 2,
                got: vertices.len(),
            });
        }
        if let Some(bad) = vertices.iter().find(|v| v.len() != dimension) {
            return Err(Error::PointDimension {
                expected: dimension,
                got: bad.len(),
            });
        }
        let edges = detect_edges(&vertices)?;
        let (i, j) = edges[0];
        let edge_length = (&vertices[j] - &vertices[i]).norm();
        Ok(Self {
            name: name.into(),
            dimension,
            vertices,
            edges,
            edge_length,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_length(&self) -> f64 {
        self.edge_length
    }

    pub fn centroid(&self) -> Point {
        let mut c = Point::zeros(self.dimension);
        for v in &self.vertices {
            c += v;
        }
        c / self.vertices.len() as f64
    }

    /// Largest pairwise vertex distance.
    pub fn diameter(&self) -> f64 {
        let mut best = 0.0_f64;
        for (i, a) in self.vertices.iter().enumerate() {
            for b in &self.vertices[i + 1..] {
                best = best.max((a - b).norm());
            }
        }
        best
    }

    /// Axis-aligned bounding box as (min corner, max corner).
    pub fn bounding_box(&self) -> (Point, Point) {
        let mut lo = self.vertices[0].clone();
        let mut hi = self.vertices[0].clone();
        for v in &self.vertices[1..] {
            for k in 0..self.dimension {
                lo[k] = lo[k].min(v[k]);
                hi[k] = hi[k].max(v[k]);
            }
        }
        (lo, hi)
    }

    /// Uniform scaling about the origin.
    pub fn scaled(&self, factor: f64) -> Polytope {
        Polytope {
            name: self.name.clone(),
            dimension: self.dimension,
            vertices: self.vertices.iter().map(|v| v * factor).collect(),
            edges: self.edges.clone(),
            edge_length: self.edge_length * factor.abs(),
        }
    }

    /// Apply a linear map given as a square matrix. The map is assumed to
    /// preserve distances, so the edge list is reused.
    pub fn transformed(&self, map: &nalgebra::DMatrix<f64>) -> Polytope {
        Polytope {
            name: self.name.clone(),
            dimension: self.dimension,
            vertices: self.vertices.iter().map(|v| map * v).collect(),
            edges: self.edges.clone(),
            edge_length: self.edge_length,
        }
    }
}

/// Generate a catalog polytope in `dimension` with edge length `edge_length`,
/// centred on its vertex centroid.
pub fn generate_polytope(family: Family, dimension: usize, edge_length: f64) -> Result<Polytope> {
    validate_family(family, dimension)?;
    if !(edge_length.is_finite() && edge_length > 0.0) {
        return Err(Error::InvalidSize(edge_length));
    }
    let raw = match family {
        Family::Polygon(k) => polygon(k),
        Family::Tetrahedron => vec![
            vec![1.0, 1.0, 1.0],
            vec![1.0, -1.0, -1.0],
            vec![-1.0, 1.0, -1.0],
            vec![-1.0, -1.0, 1.0],
        ],
        Family::Cube => hypercube(3),
        Family::Octahedron => orthoplex(3),
        Family::Icosahedron => icosahedron(),
        Family::Dodecahedron => dodecahedron(),
        Family::FiveCell => simplex(4),
        Family::EightCell => hypercube(4),
        Family::SixteenCell => orthoplex(4),
        Family::TwentyFourCell => twenty_four_cell(),
        Family::Simplex => simplex(dimension),
        Family::Hypercube => hypercube(dimension),
        Family::Orthoplex => orthoplex(dimension),
    };
    let mut vertices: Vec<Point> = raw.into_iter().map(Point::from_vec).collect();

    let n = vertices.len() as f64;
    let centroid = vertices.iter().fold(Point::zeros(dimension), |acc, v| acc + v) / n;
    for v in &mut vertices {
        *v -= &centroid;
    }
    let min_dist = min_pairwise_distance(&vertices);
    let factor = edge_length / min_dist;
    for v in &mut vertices {
        *v *= factor;
    }
    let id = CatalogId { family, dimension };
    Polytope::new(id.to_string(), vertices)
}

/// Vertices on a circle, ordered counter-clockwise, with the edge between
/// the first and last vertex horizontal at the bottom.
fn polygon(k: usize) -> Vec<Vec<f64>> {
    let kf = k as f64;
    (0..k)
        .map(|j| {
            let theta = -PI / 2.0 + PI / kf + 2.0 * PI * j as f64 / kf;
            vec![theta.cos(), theta.sin()]
        })
        .collect()
}

/// Vertex `b` has coordinate `+1` on axis `i` when bit `i` of `b` is set.
fn hypercube(n: usize) -> Vec<Vec<f64>> {
    (0..1usize << n)
        .map(|b| {
            (0..n)
                .map(|i| if b >> i & 1 == 1 { 1.0 } else { -1.0 })
                .collect()
        })
        .collect()
}

/// `+e_i, -e_i` for each axis in turn.
fn orthoplex(n: usize) -> Vec<Vec<f64>> {
    let mut out = Vec::with_capacity(2 * n);
    for i in 0..n {
        for sign in [1.0, -1.0] {
            let mut v = vec![0.0; n];
            v[i] = sign;
            out.push(v);
        }
    }
    out
}

/// Standard basis of R^(n+1) expressed in an orthonormal (Helmert) basis of
/// the hyperplane `sum x = 1`, shifted to the origin.
fn simplex(n: usize) -> Vec<Vec<f64>> {
    (0..=n)
        .map(|j| {
            (1..=n)
                .map(|k| {
                    let norm = ((k * (k + 1)) as f64).sqrt();
                    match j.cmp(&k) {
                        Ordering::Less => 1.0 / norm,
                        Ordering::Equal => -(k as f64) / norm,
                        Ordering::Greater => 0.0,
                    }
                })
                .collect()
        })
        .collect()
}

/// (0, ±φ, ±1), (±1, 0, ±φ), (±φ, ±1, 0); edge length 2.
fn icosahedron() -> Vec<Vec<f64>> {
    let mut out = Vec::with_capacity(12);
    for a in [-1.0, 1.0] {
        for b in [-1.0, 1.0] {
            out.push(vec![0.0, a * PHI, b]);
            out.push(vec![a, 0.0, b * PHI]);
            out.push(vec![a * PHI, b, 0.0]);
        }
    }
    out
}

/// (±1, ±1, ±1), (0, ±1/φ, ±φ), (±1/φ, ±φ, 0), (±φ, 0, ±1/φ); edge length 2/φ.
fn dodecahedron() -> Vec<Vec<f64>> {
    let inv = 1.0 / PHI;
    let mut out = Vec::with_capacity(20);
    for a in [-1.0, 1.0] {
        for b in [-1.0, 1.0] {
            for c in [-1.0, 1.0] {
                out.push(vec![a, b, c]);
            }
            out.push(vec![0.0, a * inv, b * PHI]);
            out.push(vec![a * inv, b * PHI, 0.0]);
            out.push(vec![a * PHI, 0.0, b * inv]);
        }
    }
    out
}

/// All permutations of (±1, ±1, 0, 0).
fn twenty_four_cell() -> Vec<Vec<f64>> {
    let mut out = Vec::with_capacity(24);
    for i in 0..4 {
        for j in i + 1..4 {
            for si in [-1.0, 1.0] {
                for sj in [-1.0, 1.0] {
                    let mut v = vec![0.0; 4];
                    v[i] = si;
                    v[j] = sj;
                    out.push(v);
                }
            }
        }
    }
    out
}

fn min_pairwise_distance(vertices: &[Point]) -> f64 {
    let mut best = f64::INFINITY;
    for (i, a) in vertices.iter().enumerate() {
        for b in &vertices[i + 1..] {
            best = best.min((a - b).norm());
        }
    }
    best
}

/// All vertex pairs `(i, j)`, `i < j`, whose distance equals the minimal
/// pairwise distance within relative tolerance.
pub fn detect_edges(vertices: &[Point]) -> Result<Vec<(usize, usize)>> {
    if vertices.len() < 2 {
        return Err(Error::TooFewVertices {
            needed: 2,
            got: vertices.len(),
        });
    }
    let dim = vertices[0].len();
    if let Some(bad) = vertices.iter().find(|v| v.len() != dim) {
        return Err(Error::PointDimension {
            expected: dim,
            got: bad.len(),
        });
    }
    let scale = vertices
        .iter()
        .map(|v| v.amax())
        .fold(0.0_f64, f64::max)
        .max(f64::MIN_POSITIVE);

    let mut pairs = Vec::with_capacity(vertices.len() * (vertices.len() - 1) / 2);
    let mut min_dist = f64::INFINITY;
    for (i, a) in vertices.iter().enumerate() {
        for (j, b) in vertices.iter().enumerate().skip(i + 1) {
            let d = (a - b).norm();
            if d <= REL_TOL * scale {
                return Err(Error::DuplicateVertex(i, j));
            }
            min_dist = min_dist.min(d);
            pairs.push((i, j, d));
        }
    }
    Ok(pairs
        .into_iter()
        .filter(|&(_, _, d)| d - min_dist <= REL_TOL * min_dist)
        .map(|(i, j, _)| (i, j))
        .collect())
}

fn is_axis_parallel(u: &Point) -> bool {
    u[0].abs() >= (1.0 - PARALLEL_TOL) * u.norm()
}

fn lex_cmp(a: &Point, b: &Point) -> Ordering {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

/// Rotate `p` so that an edge is parallel to the first coordinate axis.
///
/// If some edge already is, `p` is returned unchanged. Otherwise the edge
/// with the lexicographically smallest (sorted) endpoint coordinates is
/// mapped onto `+e1` by a Householder reflection followed by a reflection
/// of axis 2, which together form a proper rotation.
pub fn orient_edge_to_axis(p: &Polytope) -> Polytope {
    let verts = p.vertices();
    if p.edges()
        .iter()
        .any(|&(i, j)| is_axis_parallel(&(&verts[j] - &verts[i])))
    {
        return p.clone();
    }

    let sorted_endpoints = |&(i, j): &(usize, usize)| {
        if lex_cmp(&verts[i], &verts[j]).is_le() {
            (i, j)
        } else {
            (j, i)
        }
    };
    let (a, b) = p
        .edges()
        .iter()
        .map(sorted_endpoints)
        .min_by(|&(a1, b1), &(a2, b2)| {
            lex_cmp(&verts[a1], &verts[a2]).then_with(|| lex_cmp(&verts[b1], &verts[b2]))
        })
        .expect("polytope has at least one edge");

    let n = p.dimension();
    let mut u = &verts[b] - &verts[a];
    u /= u.norm();
    if u[0] < 0.0 {
        u = -u;
    }
    let mut w = u;
    w[0] -= 1.0;
    let ww = w.norm_squared();
    let mut map = nalgebra::DMatrix::<f64>::identity(n, n) - (&w * w.transpose()) * (2.0 / ww);
    if n >= 2 {
        map.row_mut(1).neg_mut();
    }
    p.transformed(&map)
}
