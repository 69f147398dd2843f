use thiserror::Error;

use crate::diagram::ValidationReport;
use crate::io::ParseError;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),

    #[error("invalid diagram: {0}")]
    InvalidDiagram(ValidationReport),

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("surface not realizable (rank {rank}, b {boundary}, {})", if *.orientable { "orientable" } else { "nonorientable" })]
    Unrealizable { rank: u32, boundary: u32, orientable: bool },

    #[error("size bound exceeded: {vertices} vertices, limit {limit}")]
    SizeBound { vertices: usize, limit: usize },

    #[error("infeasible parameters: {0}")]
    Infeasible(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("malformed structure: {0}")]
    Malformed(String),

    #[error("node {node} is a {found} node, expected a {expected} node")]
    WrongNodeKind {
        node: usize,
        expected: &'static str,
        found: &'static str,
    },

    #[error("unknown node {0}")]
    UnknownNode(usize),

    #[error("malformed canonical code: {0}")]
    BadCode(String),
}
