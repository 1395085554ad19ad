use thiserror::Error;

/// Failure classes shared by every operation in the crate.
///
/// The CLI maps these onto disjoint exit codes via [`Error::exit_code`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("no {what} found within bound {bound}")]
    NotFoundWithinBound { what: String, bound: u64 },

    #[error("window {window} exceeded: least candidate is {needed}")]
    WindowExceeded { window: u64, needed: u64 },

    #[error("window check failed at {point}: {detail}")]
    WindowViolation { point: u64, detail: String },

    #[error("internal invariant violated: {0}")]
    InternalInvariant(String),

    #[error("{value} is a member of the set x^2 + {n}x")]
    MemberInput { n: u64, value: u64 },

    #[error("map leaves the positive integers at x = {x} (value {value})")]
    NotSelfMap { x: u64, value: i128 },

    #[error("h({power}) = {value} is not a power of h({base}) = {image}")]
    NoExponent {
        base: u64,
        image: u64,
        power: u64,
        value: u64,
    },

    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    pub(crate) fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    /// Exit status for the command-line front end.
    ///
    /// 2: the input violates a mathematical precondition.
    /// 3: a bounded search or window ran out.
    /// 1: anything else (overflow, internal invariants).
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Precondition(_)
            | Error::MemberInput { .. }
            | Error::NotSelfMap { .. }
            | Error::WindowViolation { .. }
            | Error::NoExponent { .. }
            | Error::Invalid(_) => 2,
            Error::NotFoundWithinBound { .. } | Error::WindowExceeded { .. } => 3,
            Error::Overflow(_) | Error::InternalInvariant(_) => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
