use alloc::string::String;
use alloc::vec::Vec;

/// Errors raised by graph construction and the analysis routines.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("vertex {vertex} is out of range for a graph on {order} vertices")]
    InvalidVertex { vertex: usize, order: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),

    #[error("graph has {cycles} independent cycles; expected at most one")]
    NotUnicyclic { cycles: usize },

    #[error("graph is not connected")]
    NotConnected,

    #[error("{what} needs n <= {limit}, got {actual}")]
    LimitExceeded {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    #[error("edge {0}-{1} does not cross the given bipartition")]
    InvalidPartition(usize, usize),

    #[error("vertex sets overlap at vertex {0}")]
    Overlap(usize),

    #[error("set is not independent: edge {0}-{1} inside it")]
    NotIndependent(usize, usize),

    #[error("precondition violated: {reason}")]
    Precondition {
        reason: String,
        /// Offending subset when the violation is witnessed by one.
        witness: Option<Vec<usize>>,
    },

    #[error("build step {step}: {fault}")]
    Script { step: usize, fault: ScriptFault },
}

/// Why a build script was rejected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum ScriptFault {
    #[error("cycle length {0} must be odd and at least 3")]
    BadCycleLength(usize),
    #[error("vertex {0} does not exist yet")]
    UnknownVertex(usize),
    #[error("no vertex colored red")]
    NoRedVertex,
    #[error("vertex {0} is not red")]
    NotRed(usize),
    #[error("leaf steps requested but no path steps to create a red vertex")]
    LeavesWithoutPaths,
}

pub type Result<T, E = Error> = core::result::Result<T, E>;

impl Error {
    pub(crate) fn precondition(reason: impl Into<String>) -> Self {
        Error::Precondition {
            reason: reason.into(),
            witness: None,
        }
    }
}
