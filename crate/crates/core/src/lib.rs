//! Symmetric unions, flat band diagrams and branched double covers.
//!
//! This crate is a toolkit for working with ribbon knots presented as
//! symmetric unions. It provides:
//!
//! - [`diagram`] — oriented knot diagrams as PD codes, validation, mirror
//!   images, connected sums and the Seifert algorithm;
//! - [`invariants`] — exact integer and polynomial invariants: Alexander
//!   polynomial, determinant, Goeritz matrices, Smith normal form, the first
//!   homology of the branched double cover, and the lower-bound report that
//!   ties them together;
//! - [`symmetric`] — symmetric union presentations (half tangle plus axis
//!   twist insertions), their realization as knot diagrams, partial knots
//!   and the projection curve of the associated symmetric ribbon disk;
//! - [`band`] — junction-free, crossing-free band diagrams of ribbon disks,
//!   conversion to and from symmetric unions, boundary knots, orientation
//!   normalization, Seifert counts and Heegaard/free-genus bounds;
//! - [`tangle`] — 4-ended tangles, partial sums and the generator of the
//!   twisted family `K_n` with its 2-singularity ribbon band;
//! - [`report`] — the JSON analysis report emitted by the CLI.
//!
//! All values are immutable and all operations are pure functions, so the
//! whole crate is safe to use from concurrent batch drivers.

pub mod band;
pub mod braid;
pub mod diagram;
pub mod invariants;
pub mod matrix;
pub mod poly;
pub mod report;
mod seifert;
pub mod svg;
pub mod symmetric;
pub mod tangle;
pub mod wiring;

pub use band::FlatBandDiagram;
pub use diagram::{KnotDiagram, SeifertData};
pub use invariants::{AbelianGroup, BoundsReport, LaurentPolynomial};
pub use symmetric::{AxisInsertion, HalfTangle, SymmetricUnionDiagram};
pub use tangle::{FamilyKnot, Tangle};

/// Errors reported by parsing, validation and conversion routines.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid diagram: {0}")]
    Invalid(String),
    #[error("conversion error: {0}")]
    Convert(String),
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

impl Error {
    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
    pub(crate) fn convert(msg: impl Into<String>) -> Self {
        Error::Convert(msg.into())
    }
    pub(crate) fn inconsistency(msg: impl Into<String>) -> Self {
        Error::Inconsistency(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
