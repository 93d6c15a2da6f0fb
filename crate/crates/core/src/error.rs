use thiserror::Error;

use crate::graph::{EdgeId, VertexId};

pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong between reading a drawing and printing an
/// invariant. The CLI maps [`Error::is_numeric`] failures to exit code 2 and
/// the rest to exit code 1.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid graph: {}", .0.join("; "))]
    InvalidGraph(Vec<String>),

    #[error("parameter {name} = {value} is below the minimum {min}")]
    Parameter { name: &'static str, value: i64, min: i64 },

    #[error("unknown vertex v{0}")]
    UnknownVertex(VertexId),

    #[error("unknown edge e{0}")]
    UnknownEdge(EdgeId),

    #[error("edge e{0} belongs to the spanning tree")]
    TreeEdge(EdgeId),

    #[error("tube edge {0} belongs to the tube spanning tree")]
    TubeTreeEdge(String),

    #[error("not a cycle: {0}")]
    NotACycle(String),

    #[error("invalid subgraph: {0}")]
    InvalidSubgraph(String),

    #[error("malformed immersion: {0}")]
    MalformedImmersion(String),

    #[error("not a generic immersion: {}", .0.join("; "))]
    NotGeneric(Vec<String>),

    #[error("coincident germ directions at v{vertex}: e{first} and e{second}")]
    CoincidentGerms {
        vertex: VertexId,
        first: EdgeId,
        second: EdgeId,
    },

    #[error("not an immersion: {0}")]
    NotImmersion(String),

    #[error("polyline is not closed")]
    NotClosed,

    #[error("tracing scale {eps} exceeds the suggested scale {suggested}")]
    EpsTooLarge { eps: f64, suggested: f64 },

    #[error("pair collapsed below tolerance in {cell} at parameter {param}")]
    CoincidentPair { cell: String, param: f64 },

    #[error("refinement depth limit hit in {cell} at parameter {param}")]
    RefinementLimit { cell: String, param: f64 },

    #[error("winding total {total} is not an integer multiple of pi")]
    NonIntegerWinding { total: f64 },

    #[error("insufficient clearance for move: {0}")]
    Clearance(String),

    #[error("cannot preserve genericity: {0}")]
    Perturbation(String),

    #[error("unrealizable parameters: {0}")]
    Unrealizable(String),

    #[error("immersions are not comparable: {0}")]
    Mismatch(String),
}

impl Error {
    /// Failures of the winding computation itself rather than of the input.
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            Error::CoincidentPair { .. } | Error::RefinementLimit { .. } | Error::NonIntegerWinding { .. }
        )
    }

    /// Short machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidGraph(_) => "invalid_graph",
            Error::Parameter { .. } => "parameter",
            Error::UnknownVertex(_) => "unknown_vertex",
            Error::UnknownEdge(_) => "unknown_edge",
            Error::TreeEdge(_) => "tree_edge",
            Error::TubeTreeEdge(_) => "tube_tree_edge",
            Error::NotACycle(_) => "not_a_cycle",
            Error::InvalidSubgraph(_) => "invalid_subgraph",
            Error::MalformedImmersion(_) => "malformed_immersion",
            Error::NotGeneric(_) => "not_generic",
            Error::CoincidentGerms { .. } => "coincident_germs",
            Error::NotImmersion(_) => "not_immersion",
            Error::NotClosed => "not_closed",
            Error::EpsTooLarge { .. } => "eps_too_large",
            Error::CoincidentPair { .. } => "coincident_pair",
            Error::RefinementLimit { .. } => "refinement_limit",
            Error::NonIntegerWinding { .. } => "non_integer_winding",
            Error::Clearance(_) => "clearance",
            Error::Perturbation(_) => "perturbation",
            Error::Unrealizable(_) => "unrealizable",
            Error::Mismatch(_) => "mismatch",
        }
    }
}
