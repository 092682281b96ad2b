use thiserror::Error;

/// Errors surfaced by series arithmetic, the catalog, and the solvers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("empty coefficient sequence")]
    EmptySeries,

    #[error("exp requires zero constant term, got |c0| = {0:e}")]
    NonzeroConstantTerm(f64),

    #[error("psi must be normalized psi(0)=1, got constant term offset {0:e}")]
    UnnormalizedPsi(f64),

    #[error("series reciprocal requires nonzero constant term")]
    ZeroConstantTerm,

    #[error("bernardi transform requires nu >= 0, got {0}")]
    NegativeBernardiOrder(f64),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("point outside the unit disk: |z| = {0}")]
    OutsideDisk(f64),

    #[error("no bracket for a sign change on (0, {search_max}]: f({scan_step}) = {first}, f({search_max}) = {last}")]
    NoBracket {
        scan_step: f64,
        search_max: f64,
        first: f64,
        last: f64,
    },

    #[error("no convexity-radius bracket on (0, 1)")]
    NoConvexityBracket,

    #[error("zero encountered at r = {r}, theta = {theta}: {what}")]
    ZeroEncountered { r: f64, theta: f64, what: String },

    #[error("unknown psi name: {0}")]
    UnknownPsi(String),
}

pub type Result<T> = std::result::Result<T, Error>;
