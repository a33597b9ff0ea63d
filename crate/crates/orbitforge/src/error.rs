use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: String, found: String },
    #[error("vector is not in the required subspace")]
    NotInSubspace,
    #[error("matrix is singular")]
    Singular,
    #[error("invalid group kind: {0}")]
    InvalidKind(String),
    #[error("element is not in the Lie algebra: {0}")]
    NotInAlgebra(String),
    #[error("group element invariant violated: {0}")]
    NotInGroup(String),
    #[error("point is not in Δ: ω*p ≠ 0")]
    NotInDelta,
    #[error("vector lies outside ker ω*")]
    OutsideKernel,
    #[error("map does not preserve the flag at step {step}")]
    FlagNotPreserved { step: usize },
    #[error("map does not preserve the quotient form at step {step}")]
    FormNotPreserved { step: usize },
    #[error("skew-symmetric forms are not accepted here")]
    SkewForm,
    #[error("no quotient form at step {0}")]
    NoSuchStep(usize),
    #[error("unsupported leaf so({p},{q}): only definite, so(1,1), so(1,2) and so(1,3) leaves are classified")]
    UnsupportedLeaf { p: usize, q: usize },
    #[error("expected an affine label")]
    NotAffineLabel,
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("unsupported for this group: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl Error {
    pub(crate) fn dims(expected: impl ToString, found: impl ToString) -> Self {
        Error::DimensionMismatch { expected: expected.to_string(), found: found.to_string() }
    }

    /// Stable machine-readable tag, used by the CLI's error JSON.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "dimension-mismatch",
            Error::NotInSubspace => "not-in-subspace",
            Error::Singular => "singular",
            Error::InvalidKind(_) => "invalid-kind",
            Error::NotInAlgebra(_) => "not-in-algebra",
            Error::NotInGroup(_) => "not-in-group",
            Error::NotInDelta => "not-in-delta",
            Error::OutsideKernel => "outside-kernel",
            Error::FlagNotPreserved { .. } => "flag-not-preserved",
            Error::FormNotPreserved { .. } => "form-not-preserved",
            Error::SkewForm => "skew-form",
            Error::NoSuchStep(_) => "no-such-step",
            Error::UnsupportedLeaf { .. } => "unsupported-leaf",
            Error::NotAffineLabel => "not-affine-label",
            Error::UnknownSuite(_) => "unknown-suite",
            Error::Unsupported(_) => "unsupported",
            Error::Parse(_) => "parse",
            Error::Verification(_) => "verification",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
