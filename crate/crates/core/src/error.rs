use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("duplicate name `{0}`")]
    DuplicateName(String),

    #[error("arrow `{arrow}` uses undeclared vertex `{vertex}`")]
    UndeclaredVertex { arrow: String, vertex: String },

    #[error("quiver contains a cycle through vertex `{0}`")]
    Cyclic(String),

    #[error("{what} has {size} elements, exceeding the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("operands belong to different {0}")]
    Mismatch(&'static str),

    #[error("invalid relation: {0}")]
    InvalidRelation(String),

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("lattice axiom violated: {0}")]
    Lattice(String),
}

pub type Result<T> = std::result::Result<T, Error>;
