use thiserror::Error;

use crate::model::{EdgeId, NodeId, SegmentId};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid network: {reason}")]
    InvalidNetwork {
        reason: String,
        node: Option<NodeId>,
        segment: Option<SegmentId>,
    },
    #[error("inconsistent state: {0}")]
    InconsistentState(String),
    #[error("node {0} is not a crossing node")]
    NotACrossingNode(NodeId),
    #[error("intersection points of an edge with itself are undefined (edge {0})")]
    SameEdge(EdgeId),
    #[error("lens is misoriented: x(e_ab) = {e_arc} > x(f_ab) = {f_arc}")]
    MisorientedLens { e_arc: usize, f_arc: usize },
    #[error("lens between edges {0} and {1} is no longer present")]
    StaleLens(EdgeId, EdgeId),
    #[error("invalid quasi-0 witness: {0}")]
    InvalidWitness(String),
    #[error("drawing is not {k}-plane: edge {edge} has {crossings} crossings")]
    NotKPlane {
        k: usize,
        edge: EdgeId,
        crossings: usize,
    },
    #[error("drawing is not 4-plane: edge {edge} has {crossings} crossings")]
    Not4Plane { edge: EdgeId, crossings: usize },
    #[error("drawing is not in its initial state")]
    NotInitial,
    #[error("phase order violation: {0}")]
    PhaseOrderViolation(String),
    #[error("unexpected lens survived phase 3: {0}")]
    UnexpectedLens(String),
    #[error("k must be positive")]
    NonPositiveK,
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("input not in general position: {0}")]
    NotGeneralPosition(String),
    #[error("schema error at {path}: {message}")]
    SchemaError { path: String, message: String },
    #[error("cannot parse rational {0:?}")]
    RationalParse(String),
    #[error("generation failed after {attempts} attempts ({placed} of {wanted} edges placed)")]
    GenerationFailed {
        attempts: usize,
        placed: usize,
        wanted: usize,
    },
    #[error("invalid generator config: {0}")]
    InvalidConfig(String),
}

impl Error {
    pub(crate) fn network(reason: impl Into<String>) -> Self {
        Error::InvalidNetwork {
            reason: reason.into(),
            node: None,
            segment: None,
        }
    }

    pub(crate) fn at_node(node: NodeId, reason: impl Into<String>) -> Self {
        Error::InvalidNetwork {
            reason: reason.into(),
            node: Some(node),
            segment: None,
        }
    }

    pub(crate) fn at_segment(segment: SegmentId, reason: impl Into<String>) -> Self {
        Error::InvalidNetwork {
            reason: reason.into(),
            node: None,
            segment: Some(segment),
        }
    }

    pub(crate) fn schema(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::SchemaError {
            path: path.into(),
            message: message.into(),
        }
    }
}
