use thiserror::Error;

/// Errors raised by the numerical library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid {family} parameters: {constraint}")]
    InvalidParameter {
        family: &'static str,
        constraint: String,
    },

    #[error("density vanishes at interior point x = {x}")]
    ZeroDensity { x: f64 },

    #[error("ordering violated: {0}")]
    Ordering(String),

    #[error("band bounds cross at x = {x}: g0 = {g0}, g1 = {g1}")]
    Dominance { x: f64, g0: f64, g1: f64 },

    #[error("x = {x} lies within 1e-9 of the regime boundary {boundary}")]
    Kink { x: f64, boundary: f64 },

    #[error("unsupported utility: {0}")]
    UnsupportedUtility(String),

    #[error("unsupported setting: {0}")]
    Unsupported(String),

    #[error("quadrature on [{a}, {b}] did not reach tolerance {tol} (estimate {estimate})")]
    Quadrature { a: f64, b: f64, tol: f64, estimate: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
