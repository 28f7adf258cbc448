//! Exact piecewise-linear curve topology on the torus T^2 = R^2/Z^2 and
//! numerical rotation-set estimation for homeomorphism lifts.
//!
//! The exact side works over arbitrary-precision rationals: simple closed
//! PL curves and their lifts, transverse intersection counting, annulus
//! charts with arc projections and widths, twist numbers, lift-counting
//! distances, wedge and quasi-path surgery, and the Farey layer for slopes.
//! The numerical side estimates rotation sets of expression-tree lifts by
//! sampling displacement fields over a grid, in parallel when the
//! `parallel` feature (default) is enabled.

pub mod annuli;
pub mod curves;
pub mod cylinder;
pub mod dynamics;
pub mod geom;
pub mod graphs;
pub mod io;
pub mod rat;
pub mod suite;
pub mod surgery;
pub mod svg;

use thiserror::Error as ThisError;

/// Domain errors shared across modules.
#[derive(Debug, Clone, PartialEq, Eq, ThisError)]
pub enum Error {
    #[error("curve is not closed: last vertex must equal first + closure")]
    NotClosed,
    #[error("curve projection self-intersects")]
    SelfIntersecting,
    #[error("closure vector is zero or non-primitive")]
    Inessential,
    #[error("curves share a segment of positive length")]
    OverlappingSegments,
    #[error("curve shares a segment with the annulus core")]
    CoreOverlap,
    #[error("curves are not isotopic")]
    NotIsotopic,
    #[error("curve has no arc in the annulus strip: {0}")]
    NoArc(String),
    #[error("empty projection for {0}")]
    EmptyProjection(String),
    #[error("curves are not transverse")]
    NonTransverse,
    #[error("no surgery path found: {0}")]
    NoPath(String),
    #[error("perturbation budget too small: need less than {0}")]
    BudgetTooSmall(String),
    #[error("expression is not a piecewise-linear word")]
    NotPlWord,
    #[error("matrix is not invertible")]
    NonInvertible,
    #[error("condition check failed: {0:?}")]
    ConditionFailed(Vec<String>),
    #[error("degenerate input: {0}")]
    DegenerateCurve(String),
    #[error("marking curves must intersect exactly once, transversely")]
    InvalidMarking,
    #[error("invalid slope: {0}")]
    InvalidSlope(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported operation: {0}")]
    Unsupported(String),
}

pub use curves::{HomologyClass, IntersectionReport, TorusCurve};
pub use cylinder::StripCurve;
pub use rat::{QPoint, Rat};
