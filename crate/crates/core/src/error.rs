//! Error type shared by all modules.

/// Crate-wide error enumeration.
///
/// The variants map one-to-one onto the CLI exit codes: `Input`, `Domain`
/// and `Inconsistency` exit with 2, parse failures (CLI side) with 3,
/// `Capacity` with 4 and `Internal` with 5.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Malformed or out-of-contract input (dimension mismatch, non-finite
    /// entries, unknown subsystem label, ...).
    #[error("invalid input: {0}")]
    Input(String),

    /// A parameter outside the mathematical domain of a bound; the message
    /// names the violated constraint.
    #[error("domain error: {0}")]
    Domain(String),

    /// Input exceeds a configured size cap.
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// Numerically inconsistent data that signals an invalid input state
    /// rather than round-off (e.g. a squeezed probability below -tau_psd).
    #[error("inconsistent input state: {0}")]
    Inconsistency(String),

    /// A failed internal cross-check (two algebraic routes disagreeing,
    /// a bisection bracket without a sign change, ...).
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
