use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty complex")]
    EmptyComplex,
    #[error("not a face: {0:?}")]
    NotAFace(Vec<usize>),
    #[error("complex is not pure")]
    NotPure,
    #[error("not a pseudomanifold: ridge {0:?} lies in three or more facets")]
    NotPseudomanifold(Vec<usize>),
    #[error("improper coloring: {0}")]
    ImproperColoring(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("construction data error: {0}")]
    ConstructionData(String),
    #[error("input error: {0}")]
    Input(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors caused by bad input or unmet preconditions.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::Io(_))
    }
}
