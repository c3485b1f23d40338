use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("series has zero constant term")]
    ZeroConstantTerm,
    #[error("series is not a unit series (constant term must be 1, got {0})")]
    NotUnitSeries(String),
    #[error("inner series of a composition must have zero constant term")]
    InnerConstantNonzero,
    #[error("series is not normalized (need c0 = 0, c1 = 1)")]
    NotNormalized,
    #[error("series must have at least one coefficient")]
    EmptySeries,

    #[error("c = {0} is a nonpositive integer; 2F1(a,b;c;z) is undefined")]
    InvalidC(f64),
    #[error("parameter {name} = {value} is not finite")]
    NonFiniteParameter { name: &'static str, value: f64 },
    #[error("multiplier psi_{index} vanishes; operator is not invertible")]
    SingularMultiplier { index: usize },
    #[error("unknown preset '{0}'")]
    UnknownPreset(String),
    #[error("preset parameter out of range: {0}")]
    ParamOutOfRange(String),

    #[error("invalid Herglotz atoms: {0}")]
    InvalidAtoms(String),
    #[error("invalid Libera-Zlotkiewicz point: {0}")]
    InvalidLzPoint(String),

    #[error("functional {functional} needs a_{index}, which was not supplied")]
    MissingCoefficient { functional: &'static str, index: usize },
    #[error("functional {0} requires a value of mu")]
    MuRequired(&'static str),
    #[error("FS_REAL takes a real mu; use FS_COMPLEX for complex mu")]
    ComplexMuForRealFunctional,

    #[error("I f/z leaves the right half-plane at z = {z}; principal power undefined")]
    BranchFailure { z: String },
    #[error("I f(z) vanishes at or inside the sampling circle (near z = {z})")]
    DenominatorVanishes { z: String },
    #[error("VIOLATED status produced on a witness that fails certification: {0}")]
    UncertifiedViolation(String),
    #[error("non-finite value produced: {0}")]
    NonFinite(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("series file: {0}")]
    SeriesFormat(String),
}

impl Error {
    /// True for failures caused by bad inputs, as opposed to numerical breakdown.
    pub fn is_invalid_input(&self) -> bool {
        !matches!(
            self,
            Error::BranchFailure { .. }
                | Error::DenominatorVanishes { .. }
                | Error::UncertifiedViolation(_)
                | Error::NonFinite(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
