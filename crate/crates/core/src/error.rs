use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("cannot parse `{input}`: {reason}")]
    Parse { input: String, reason: String },

    #[error("group order {order} exceeds the configured limit {limit}")]
    OrderLimit { order: u64, limit: usize },

    #[error("element id {id} out of range for a group of order {order}")]
    InvalidElement { id: usize, order: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("{what} of size {size} exceeds the limit {limit}")]
    TooLarge {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("function is not balanced")]
    Unbalanced,

    #[error("group of odd order {0} admits no balanced function")]
    OddOrder(usize),

    #[error("no balanced class function exists on this group")]
    NoBalancedClassFunction,

    #[error("character table degenerate: {0}")]
    Degenerate(String),

    #[error("invariant violated: {0}")]
    InvariantViolated(String),
}

impl Error {
    /// Short stable tag for machine-readable error lines.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "parse",
            Error::OrderLimit { .. } => "order_limit",
            Error::InvalidElement { .. } => "invalid_element",
            Error::InvalidInput(_) => "invalid_input",
            Error::Unsupported(_) => "unsupported",
            Error::TooLarge { .. } => "too_large",
            Error::Unbalanced => "unbalanced",
            Error::OddOrder(_) => "odd_order",
            Error::NoBalancedClassFunction => "no_balanced_class_function",
            Error::Degenerate(_) => "degenerate",
            Error::InvariantViolated(_) => "invariant_violated",
        }
    }

    /// Whether the failure comes from user input rather than from a computation.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. }
                | Error::OrderLimit { .. }
                | Error::InvalidElement { .. }
                | Error::InvalidInput(_)
                | Error::Unsupported(_)
                | Error::TooLarge { .. }
                | Error::OddOrder(_)
        )
    }
}
