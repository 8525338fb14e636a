//! Lattice-point counting: the jackpot simplex, slack normalisation of
//! inequality systems, and Pick's theorem for lattice polygons.

mod jackpot;
mod pick;
mod slack;

use thiserror::Error;

pub use jackpot::{count_jackpots, enumerate_points, jackpot_polynomial, CountMode, JackpotInstance, JackpotPoints, BRUTE_LIMIT};
pub use pick::{count_interior_brute, parse_polygon_csv, pick_count, LatticePolygon, PickReport, ENUMERATION_LIMIT};
pub use slack::{parse_system, slackify, Equation, EqualitySystem, Inequality, LinearSystem, Relation};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("k = {k} exceeds the brute-force limit {limit}")]
    ResourceGuard { k: u64, limit: u64 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("consecutive vertices {0} and {1} coincide")]
    RepeatedVertex(usize, usize),
    #[error("polygon is not counterclockwise (twice signed area {0})")]
    NotCounterclockwise(i128),
    #[error("polygon is self-intersecting: edges {0} and {1} meet")]
    SelfIntersecting(usize, usize),
    #[error("Pick count {pick} disagrees with enumerated interior {enumerated}")]
    PickMismatch { pick: String, enumerated: String },
}
