use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum RbError {
    /// A vertex name or index is outside the 2k grid of the diagram.
    #[error("invalid vertex {vertex} for a diagram with k = {k}")]
    InvalidVertex { vertex: String, k: usize },

    /// A vertex appears in more than one edge.
    #[error("vertex {vertex} used by more than one edge")]
    DuplicateVertex { vertex: String },

    /// An edge joins a vertex to itself.
    #[error("edge joins vertex {vertex} to itself")]
    SelfLoop { vertex: String },

    /// Two diagrams or elements with different k were combined.
    #[error("size mismatch: k = {left} vs k = {right}")]
    KMismatch { left: usize, right: usize },

    /// A size bound (enumeration width, tensor dimension, ...) was exceeded.
    #[error("{what} = {requested} exceeds the configured bound {limit}")]
    BoundExceeded {
        what: &'static str,
        requested: usize,
        limit: usize,
    },

    /// A sequence of parts is not a partition (not weakly decreasing, or
    /// contains a zero part).
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    /// A numeric parameter sits on (or within 1e-6 of) a pole or branch
    /// point of the seminormal coefficient formulas.
    #[error("parameter x = {x} is singular for the seminormal construction: {context}")]
    SingularParameter { x: f64, context: String },

    /// Malformed textual input (JSON payloads, generator tokens, ...).
    #[error("parse error: {0}")]
    Parse(String),
}
