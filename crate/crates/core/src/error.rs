use thiserror::Error;

/// Errors raised by the engine. Numeric payloads are reported as `f64` regardless of the scalar type.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("point at distance {distance} lies outside the admissible disk of radius {limit}")]
    OutOfDisk { distance: f64, limit: f64 },

    #[error("non-finite value produced while {0}")]
    Overflow(&'static str),

    #[error("germ of order {0} cannot be differentiated")]
    DegenerateOrder(usize),

    #[error("operation needs order >= {needed}, germ has order {got}")]
    InsufficientOrder { needed: usize, got: usize },

    #[error("germ centers differ by {0}")]
    CenterMismatch(f64),

    #[error("continuation stalled at ({re}, {im}) before closing the loop")]
    StalledLoop { re: f64, im: f64 },

    #[error("z = ({re}, {im}) is outside the half-plane of validity for rotation {theta}")]
    SectorViolation { re: f64, im: f64, theta: f64 },

    #[error("{what} did not converge (last change {last_change})")]
    NoConvergence { what: &'static str, last_change: f64 },

    #[error("adjacent sectors disagree by {mismatch} at rotation {theta}")]
    OverlapMismatch { theta: f64, mismatch: f64 },

    #[error("gamma has a pole at ({re}, {im})")]
    PoleAtNonpositiveInteger { re: f64, im: f64 },

    #[error("outside the supported domain: {0}")]
    DomainViolation(String),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("zeros {0} and {1} coincide")]
    MultipleZero(usize, usize),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
