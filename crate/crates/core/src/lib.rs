//! The generalized chaos game on regular polytopes of any dimension.
//!
//! * [`polytope`]: catalog of regular polytopes, edge detection, orientation.
//! * [`ratio`]: longest edge-parallel chord and the optimal contraction ratio.
//! * [`chaos`]: seeded chaos game producing vertex-coloured point clouds.
//! * [`ifs`]: deterministic Hutchinson iterates and Hausdorff distance.
//! * [`overlap`]: level-1 copy overlap test and bisection search for the
//!   empirical optimal ratio.
//! * [`export`]: CSV, PLY and SVG writers.

pub mod catalog;
pub mod chaos;
pub mod error;
pub mod export;
pub mod hull;
pub mod ifs;
pub mod nearest;
pub mod overlap;
pub mod polytope;
pub mod ratio;
pub mod tol;

pub use chaos::{gcg_run, gcg_step, GcgConfig, PointCloud};
pub use error::{Error, Result};
pub use ifs::{hausdorff_distance, hutchinson_iterate, hutchinson_step, CopySet};
pub use overlap::{
    any_overlap_at, copies_overlap, search_r_opt, OverlapTester, OverlapVerdict, SearchResult,
};
pub use polytope::{
    detect_edges, generate_polytope, orient_edge_to_axis, CatalogId, Family, Point, Polytope, PHI,
};
pub use ratio::{
    build_vector_sets, cross_checked_report, delta_parallel, delta_parallel_axis, r_opt_formula,
    ratio_report,
    RatioReport,
};
