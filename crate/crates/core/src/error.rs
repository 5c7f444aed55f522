use thiserror::Error;

use crate::cover::CoverSolution;
use crate::system::{ElementId, SetId};

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid instance: {0}")]
    Validation(String),

    #[error("trace error: {0}")]
    Trace(String),

    #[error("unknown set id {0}")]
    UnknownSet(SetId),

    #[error("element {0} is not contained in any set")]
    Infeasible(ElementId),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("dual infeasible at set {set}: load {load} exceeds cost {cost}")]
    InfeasibleDual { set: SetId, load: f64, cost: f64 },

    #[error("node budget of {nodes} exhausted (incumbent cost {}, lower bound {lower_bound})", best.cost())]
    BudgetExhausted {
        best: CoverSolution,
        lower_bound: f64,
        nodes: u64,
    },

    #[error("audit failed: {0}")]
    Audit(String),

    #[error("internal consistency: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
