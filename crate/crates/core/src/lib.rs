//! Exact computation of Thom polynomials for A-classified map-germs
//! `(C^m, 0) -> (C^n, 0)` in low dimensions, together with the
//! flag-manifold pipelines that turn those universal polynomials into
//! enumerative degree formulas for projective surfaces and 3-folds.
//!
//! Everything is computed over arbitrary-precision rationals; there is no
//! floating point anywhere in the crate.
//!
//! Module map:
//! - [`scalar`]: exact rational scalars.
//! - [`poly`]: weighted-graded sparse multivariate polynomials.
//! - [`text`]: canonical text rendering, parsing, and the LaTeX emitter.
//! - [`ring`]: quotient cohomology rings, Chern-class calculus and the
//!   Gysin pushforward along projectivized bundles.
//! - [`registry`]: the catalogue of singularity types (normal forms, torus
//!   weight systems) and the golden Thom polynomial tables.
//! - [`linalg`]: exact Gaussian elimination.
//! - [`solver`]: the restriction/interpolation method.
//! - [`enumerative`]: degree formulas for singular projections of surfaces
//!   in P^3, P^4 and hypersurfaces in P^4.
//! - [`verify`]: table-by-table reproduction checks used by the CLI and
//!   the acceptance suite.

pub mod enumerative;
pub mod linalg;
pub mod poly;
pub mod registry;
pub mod ring;
pub mod scalar;
pub mod solver;
pub mod text;
pub mod verify;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("mismatched variable tables: {0}")]
    MismatchedVars(String),
    #[error("unbound variable `{0}` in substitution")]
    UnboundVariable(String),
    #[error("series inversion requires constant term 1, found {0}")]
    NonUnitSeries(String),
    #[error("unknown singularity type `{name}` for pair ({m},{n})")]
    UnknownType { name: String, m: usize, n: usize },
    #[error("type `{0}` has a modulus direction (zero torus weight in its normal slice); the principal equation degenerates")]
    ModulusDirection(String),
    #[error("type `{0}` is not solvable by the restriction method")]
    NotSolvable(String),
    #[error("type `{0}` carries no torus weight data")]
    NoTorusData(String),
    #[error("inconsistent linear system: row {row_a} contradicts row {row_b}")]
    InconsistentSystem { row_a: String, row_b: String },
    #[error("underdetermined system: kernel dimension {kernel_dim}; add constraint types ({suggestion})")]
    Underdetermined {
        kernel_dim: usize,
        suggestion: String,
    },
    #[error("solved coefficients are not integral: {0}")]
    NonIntegralSolution(String),
    #[error("empty locus: class degree {degree} exceeds flag dimension {flag_dim}")]
    EmptyLocus { degree: u64, flag_dim: u64 },
    #[error("unknown pipeline `{0}`")]
    UnknownPipeline(String),
    #[error("malformed characters: {0}")]
    MalformedChars(String),
    #[error("registry validation failed:\n{}", .0.join("\n"))]
    Validation(Vec<String>),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
