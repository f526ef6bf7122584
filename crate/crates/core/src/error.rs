use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("GF({0}) requires a prime characteristic")]
    NotPrime(u64),

    #[error("modulus polynomial {0} is not monic")]
    NotMonic(String),

    #[error("modulus out of range: {0}")]
    ModulusOutOfRange(String),

    #[error("element `{text}` is not valid in {ring}: {reason}")]
    BadElement {
        text: String,
        ring: String,
        reason: String,
    },

    #[error("{what} of size {size} exceeds the configured limit of {limit}")]
    GuardExceeded {
        what: &'static str,
        size: u128,
        limit: usize,
    },

    #[error("the ideal is not proper (it contains 1)")]
    ImproperIdeal,

    #[error("ideals #{0} and #{1} of the congruence system are not comaximal")]
    NotComaximal(usize, usize),

    #[error("{0} is not a semi-unit")]
    NotSemiUnit(String),

    #[error("the given set is not a semi-inverse set for {0}")]
    NotSemiInverseSet(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A computed result contradicted a proven identity or a second,
    /// independent computation of the same quantity.
    #[error("internal consistency defect: {0}")]
    Defect(String),
}

impl Error {
    pub(crate) fn syntax(pos: usize, msg: impl Into<String>) -> Self {
        Error::Syntax {
            pos,
            msg: msg.into(),
        }
    }

    pub(crate) fn defect(msg: impl Into<String>) -> Self {
        Error::Defect(msg.into())
    }

    pub fn is_defect(&self) -> bool {
        matches!(self, Error::Defect(_))
    }

    pub fn is_guard(&self) -> bool {
        matches!(self, Error::GuardExceeded { .. })
    }
}
