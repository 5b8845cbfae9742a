use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("malformed state: {0}")]
    MalformedState(String),
    #[error("state vector is zero")]
    ZeroState,
    #[error("unsupported size {n} (supported range {min}..={max})")]
    UnsupportedSize { n: usize, min: usize, max: usize },
    #[error("unknown named state `{0}`")]
    UnknownState(String),
    #[error("bad qubit subset: {0}")]
    BadSubset(String),
    #[error("bad bipartition: {0}")]
    BadBipartition(String),
    #[error("expected a {expected}-dimensional operator, got {got}")]
    BadDimension { expected: usize, got: usize },
    #[error("distance queried on the diagonal ({0}, {0})")]
    DiagonalQuery(usize),
    #[error("degenerate simplex (Cayley-Menger determinant vanishes)")]
    DegenerateSimplex,
    #[error("malformed barcode: {0}")]
    MalformedBarcode(String),
    #[error("signature {0} is not in the class table")]
    UnclassifiedSignature(String),
    #[error("invalid configuration: {0}")]
    Config(String),
}

impl Error {
    /// Errors caused by user input, as opposed to broken internal invariants.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::MalformedBarcode(_))
    }
}
