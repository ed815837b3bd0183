use thiserror::Error;

use crate::algebra::RelationReport;

#[derive(Debug, Error)]
pub enum Error {
    #[error("norm violation: |v|^2 = {norm_sq} (expected 1)")]
    NormViolation { norm_sq: f64 },

    #[error("degenerate coin: both a and b must be non-zero")]
    DegenerateCoin,

    #[error("parameter violation: {0}")]
    ParamViolation(String),

    #[error("requested {requested} steps, limit is {limit}")]
    ResourceLimit { requested: usize, limit: usize },

    #[error("coefficient and quadrature sides differ by {gap:e} with {nodes} nodes")]
    QuadratureDivergence { gap: f64, nodes: usize },

    #[error("quadrature failed: {0}")]
    QuadratureFailure(String),

    #[error("relations exceed tolerance: {}", failing.join(", "))]
    RelationFailure {
        failing: Vec<String>,
        report: RelationReport,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
