use thiserror::Error;

/// Errors surfaced by the geometric and combinatorial layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension error: {0}")]
    Dimension(String),

    #[error("point {label} is not a vertex of the convex hull")]
    NotVertex { label: usize },

    #[error("degenerate configuration: {0}")]
    Degenerate(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("frame is not admissible: projection degenerates on the {dim}-face {face:?} at level {level}")]
    NotAdmissible { face: Vec<usize>, dim: i64, level: usize },

    #[error("hyperplane is not generic: it contains vertices {labels:?}")]
    NotGeneric { labels: Vec<usize> },

    #[error("poset orientation is not thin on the diamond over {bottom:?} below {top:?}")]
    NotThin { bottom: Vec<usize>, top: Vec<usize> },

    #[error("chain complex axiom failed on basis element {label}: {detail}")]
    ChainAxiom { label: String, detail: String },

    #[error("correspondence is not a degree-preserving bijection: {0}")]
    BadCorrespondence(String),

    #[error("out of scope: {0}")]
    Scope(String),

    #[error("search budget exceeded: {0}")]
    Budget(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}
