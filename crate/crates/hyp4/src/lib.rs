//! Geometry of the upper half-space model of hyperbolic 4-space.
//!
//! The crate provides:
//!
//! * [`geom`]: points, geodesic segments, rays and totally geodesic planes in
//!   the upper half-space `{x in R^4 : x4 > 0}` with the metric `|dx| / x4`,
//!   together with distance computations between them;
//! * [`isometry`]: orientation-preserving isometries fixing the point at
//!   infinity (loxodromic and parabolic), their powers, one-parameter flows
//!   and displacement functions;
//! * [`margulis`]: elementary groups fixing infinity, minimal displacement
//!   over a group, thin-part cones, the projection to the cone boundary and
//!   boundary meshing;
//! * [`films`]: ruled surfaces ("films") spanned between a geodesic and its
//!   translate, transversality certificates and intersection counting;
//! * [`bounds`]: closed-form numerical bounds used by the verification
//!   suites, with log-space evaluation for astronomically large values;
//! * [`surface2d`]: hyperbolic plane helpers (hypercycles, 2x2 Moebius
//!   transformations, Christoffel words for (p,q) curves);
//! * [`verify`]: randomized verification suites with deterministic seeding
//!   and machine-readable reports.

pub mod bounds;
pub mod films;
pub mod geom;
pub mod isometry;
pub mod margulis;
pub mod mesh;
pub mod surface2d;
pub mod verify;

pub use films::{
    ExtendedRuledFilm, FilmEnd, FilmFilmIntersections, FilmFilmRoot, FilmPlaneRoot, FilmRegion,
    FilmSheet, GeneralPositionCertificate, PlaneIntersections, RuledFilm,
};
pub use geom::{BoundaryPoint, GeodesicPlane2, GeodesicRay, GeodesicSegment, Point4};
pub use isometry::{DisplacementAudit, Isometry4, IsometryKind, Motion, Rotation3};
pub use margulis::{ElementaryGroup, FoliationCoordinate, MargulisCone};
pub use mesh::{MeshVertex, QuadMesh};

use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Hyp4Error {
    /// A point had `x4 <= 0` (or small enough to underflow the metric).
    #[error("point outside the upper half-space: x4 = {x4}")]
    NotInHalfSpace { x4: f64 },
    /// Construction data fails a validity requirement.
    #[error("invalid construction: {0}")]
    Invalid(String),
    /// The requested map is elliptic (fixes an interior point), which the
    /// isometry type excludes.
    #[error("elliptic isometry rejected: {0}")]
    Elliptic(String),
    /// The requested map is the identity, which the isometry type excludes.
    #[error("identity isometry rejected")]
    Identity,
    /// A group is outside the supported class (e.g. degenerate parabolic
    /// rank-2 generators).
    #[error("unsupported group: {0}")]
    UnsupportedGroup(String),
    /// A truncated enumeration cannot certify its result.
    #[error("truncation insufficient: {0}")]
    TruncationInsufficient(String),
    /// An enumeration would exceed the configured work budget.
    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),
    /// A numerical routine failed to certify transversality.
    #[error("non-transversal configuration: {0}")]
    NonTransversal(String),
    /// A root search failed to converge.
    #[error("no convergence: {0}")]
    NoConvergence(String),
    /// Invalid input to a bound evaluator or CLI-facing routine.
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Hyp4Error>;
