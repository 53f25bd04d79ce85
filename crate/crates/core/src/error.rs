use thiserror::Error;

use crate::system::Kind;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Everything that can go wrong while building, composing or simulating open systems.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid function: {0}")]
    InvalidFunction(String),

    #[error("cannot compose {dom}-element codomain with {cod}-element domain")]
    Composition { dom: usize, cod: usize },

    #[error("span legs have different domains ({left} vs {right})")]
    Span { left: usize, right: usize },

    #[error("cocone does not commute: {0}")]
    NotACocone(String),

    #[error("isomorphism search exceeded its budget of {budget} nodes")]
    BudgetExceeded { budget: u64 },

    #[error("invalid system: {0}")]
    InvalidSystem(String),

    #[error("morphism shape mismatch: {0}")]
    MorphismShape(String),

    #[error("expected a {expected} system, found {found}")]
    Kind { expected: Kind, found: Kind },

    #[error("unsupported gluing: {0}")]
    UnsupportedGluing(String),

    #[error("cospans are not composable: right foot has {right} elements, left foot has {left}")]
    Composability { right: usize, left: usize },

    #[error("2-morphism boundary mismatch: {0}")]
    Boundary(String),

    #[error("foot is not in the image of the discrete functor: {0}")]
    NotInImageOfL(String),

    #[error("invalid cospan: {0}")]
    InvalidCospan(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("state became non-finite after t = {last_good_time}")]
    Divergence { last_good_time: f64 },

    #[error("invalid simulation input: {0}")]
    InvalidSimulation(String),

    /// Malformed input files: bad JSON, unknown fields, wrong versions.
    #[error("parse error: {0}")]
    Parse(String),
}
