use thiserror::Error;

/// Errors shared across the library.
///
/// `Unsupported` marks inputs that are structurally valid but outside the
/// implemented scope (dimension caps, enumeration caps, non-simplicial
/// intersection patterns); callers such as the CLI map it to a dedicated
/// exit code, distinct from plain invalid input.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("enumeration cap of {cap} exceeded while {context}")]
    CapExceeded { cap: u64, context: String },
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Enumeration guard used by every potentially exponential search.
///
/// The cap defaults to 10^6 items and can be raised or lowered through the
/// `GBG_ENUM_CAP` environment variable. Exceeding it is a hard error, never a
/// silent truncation.
pub fn enum_cap() -> u64 {
    std::env::var("GBG_ENUM_CAP")
        .ok()
        .and_then(|s| s.parse::<u64>().ok())
        .unwrap_or(1_000_000)
}

/// Counter that errors out once the enumeration cap is hit.
#[derive(Debug, Clone)]
pub struct CapCounter {
    cap: u64,
    used: u64,
    context: &'static str,
}

impl CapCounter {
    pub fn new(context: &'static str) -> Self {
        CapCounter { cap: enum_cap(), used: 0, context }
    }

    pub fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.cap {
            Err(Error::CapExceeded { cap: self.cap, context: self.context.to_string() })
        } else {
            Ok(())
        }
    }
}
