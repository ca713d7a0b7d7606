use thiserror::Error;

/// Errors produced by parsing, validation and the bijective maps.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("value underflow: cannot subtract 1 from {0}")]
    ValueUnderflow(String),

    #[error("malformed token {0:?}")]
    MalformedToken(String),

    #[error("duplicate underlying value {0}")]
    DuplicateValue(u32),

    #[error("underlying values do not form the ground set {{{min}, ..., {max}}}")]
    NonContiguousGround { min: u32, max: u32 },

    #[error("invalid ground minimum {0}: expected 0 or 1")]
    InvalidGround(u32),

    #[error("expected a signed permutation on {expected}, got one on {actual}")]
    WrongGround {
        expected: &'static str,
        actual: &'static str,
    },

    #[error("not a relative derangement of type B: {0}")]
    NotRelativeDerangement(String),

    #[error("not a derangement of type B: {0}")]
    NotDerangement(String),

    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),

    #[error("malformed skew derangement: {0}")]
    MalformedSkew(String),

    #[error(
        "n = {n} exceeds the brute-force limit of {limit}; refusing without an explicit override"
    )]
    SizeGuard { n: usize, limit: usize },

    #[error("invalid JSON notation: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;
