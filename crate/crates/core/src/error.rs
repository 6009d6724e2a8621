use thiserror::Error;

/// Failure modes shared by every numerical routine in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(&'static str),
    #[error("series or iteration did not converge: {0}")]
    Convergence(&'static str),
    #[error("argument lies within tolerance of a pole")]
    Pole,
    #[error("argument outside the strip of Fourier convergence")]
    Strip,
    #[error("integer or floating overflow: {0}")]
    Overflow(&'static str),
    #[error("singular system: {0}")]
    Singular(&'static str),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("parameter lies in the essential-spectrum regime |param| = 1")]
    Regime,
    #[error("point too close to the spectrum (distance {0:e})")]
    Spectrum(f64),
    #[error("Newton iteration failed to converge after {0} steps")]
    NoConvergence(usize),
}

pub type Result<T> = core::result::Result<T, Error>;
