//! Crate-wide error type.

/// Everything that can go wrong while parsing scenes, validating input,
/// or running one of the exact computations.
///
/// Obstructions are not errors: a nonzero obstruction is a successful
/// computation whose outcome is "no", and it is reported through the
/// result types of [`crate::moment`] and [`crate::complexes`].
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    /// Syntax or semantic failure while reading a scene or map file.
    /// `at` is a JSON-pointer-style path into the document.
    #[error("{at}: {message}")]
    Parse { at: String, message: String },

    #[error("dimension mismatch in {context}: expected {expected}, got {got}")]
    Dimension {
        context: String,
        expected: usize,
        got: usize,
    },

    #[error("malformed rational literal `{0}` (expected `p` or `p/q` with nonzero q)")]
    BadRational(String),

    #[error("{context}: form is not closed (residual {residual})")]
    NotClosed { context: String, residual: String },

    #[error("structure form is degenerate at ({point}): kernel direction ({direction})")]
    Degenerate { point: String, direction: String },

    #[error("pairing is not {property}")]
    BadPairing { property: String },

    #[error("{context}: element does not lie in the expected subspace")]
    NotInSpan { context: String },

    #[error("moment map flavor mismatch: expected {expected}, found {found}")]
    FlavorMismatch { expected: String, found: String },

    /// An operation was invoked on input that violates its hypotheses,
    /// e.g. extending a map that does not verify.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// A mathematical invariant the library relies on failed to hold.
    /// Reaching this variant means a bug, not bad input.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// Shorthand for a parse error at a document path.
    pub fn parse(at: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            at: at.into(),
            message: message.into(),
        }
    }
}
