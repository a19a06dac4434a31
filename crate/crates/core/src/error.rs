use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("orbital list {0:?} is not strictly ascending")]
    NotAscending(Vec<usize>),

    #[error("orbital {orbital} is outside the {n_sp}-orbital space")]
    OrbitalOutOfRange { orbital: usize, n_sp: usize },

    #[error("duplicate term with creations {q:?} and annihilations {p:?}")]
    DuplicateTerm { q: Vec<usize>, p: Vec<usize> },

    #[error("term (q={q:?}, p={p:?}) and its conjugate are both present; fold the list first")]
    ConjugatePresent { q: Vec<usize>, p: Vec<usize> },

    #[error("conjugate terms (q={q:?}, p={p:?}) disagree by {mismatch:e}")]
    ConjugateMismatch {
        q: Vec<usize>,
        p: Vec<usize>,
        mismatch: f64,
    },

    #[error("diagonal term (q=p={0:?}) has a non-real coefficient")]
    NonRealDiagonal(Vec<usize>),

    #[error("coefficient magnitude {magnitude} exceeds scale {lambda}")]
    ScaleViolation { magnitude: f64, lambda: f64 },

    #[error("invalid angular momentum arguments: {0}")]
    AngularMomentum(String),

    #[error("register layout needs {0} qubits, more than the 64 supported")]
    LayoutTooWide(usize),

    #[error("Krylov dimension must be at least 1")]
    EmptyKrylov,

    #[error("moment index {needed} requested but only {available} moments are available")]
    MissingMoment { needed: usize, available: usize },

    #[error("no overlap eigenvalue exceeds the threshold {xi:e}; retained space is empty")]
    EmptyRetainedSpace { xi: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("pivot state is outside the requested symmetry sector")]
    PivotOutsideSector,

    #[error("symmetry sector is empty")]
    EmptySector,

    #[error("malformed input: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
