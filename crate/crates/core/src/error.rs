use thiserror::Error;

/// Errors raised by the numerical kernels and the formula catalogue.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole of the Gamma function at non-positive integer {0}")]
    GammaPole(f64),
    #[error("leading coefficient vanishes")]
    DegenerateLeadingCoefficient,
    #[error("polynomial has no positive real root")]
    NoPositiveRealRoot,
    #[error("parameter c = {0} is a non-positive integer")]
    InvalidC(f64),
    #[error("{0} did not converge")]
    NonConvergent(&'static str),
    #[error("endpoint exponent {0} is not integrable")]
    NonIntegrable(f64),
    #[error("exterior pole {0} lies inside the integration interval")]
    ExteriorPoleInsideInterval(f64),
    #[error("Euler integral needs Re(c) > Re(a) > 0 (a = {a}, c = {c})")]
    ParameterOutOfEulerRange { a: f64, c: f64 },
    #[error("argument {0} lies on the branch cut [1, inf)")]
    ArgumentOnCut(f64),
    #[error("coincident points in cross-ratio")]
    CoincidentPoints,
    #[error("exponents sum to {0}, expected 2")]
    ExponentSumViolation(f64),
    #[error("boundary exponent {0} is not integrable")]
    NonIntegrableBoundary(f64),
    #[error("parameters outside the domain: {0}")]
    DomainViolation(String),
    #[error("could not draw an in-domain sample: {0}")]
    EmptyDomain(String),
    #[error("unknown formula id `{0}`")]
    UnknownFormula(String),
    #[error("series needs every |x| < 1, got {0}")]
    OutsideDisc(f64),
    #[error("i/o: {0}")]
    Io(String),
}

impl Error {
    /// True for errors caused by the caller's parameters rather than by the
    /// numerical engines.
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::GammaPole(_)
                | Error::InvalidC(_)
                | Error::ParameterOutOfEulerRange { .. }
                | Error::ArgumentOnCut(_)
                | Error::DomainViolation(_)
                | Error::CoincidentPoints
                | Error::ExponentSumViolation(_)
                | Error::ExteriorPoleInsideInterval(_)
                | Error::NonIntegrable(_)
                | Error::NonIntegrableBoundary(_)
                | Error::OutsideDisc(_)
                | Error::DegenerateLeadingCoefficient
                | Error::NoPositiveRealRoot
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
