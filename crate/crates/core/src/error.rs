use num_complex::Complex64;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by a series with zero constant term")]
    DivisionByNonUnit,

    #[error("composition requires an inner series with zero constant term (got {0})")]
    CompositionAtNonOrigin(Complex64),

    #[error("logarithm of a series with zero constant term")]
    LogOfZeroConstant,

    #[error("evaluation radius {radius} exceeds the series cap {cap}")]
    EvalRadiusExceeded { radius: f64, cap: f64 },

    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),

    #[error("critical point s0 is not inside (0, r) for r = {r}: h(r) = {h} <= 0")]
    CriticalPointOutsideRange { r: f64, h: f64 },

    #[error("f'(0) = 0: P_f and S_f are undefined at the origin")]
    NotLocallyUnivalentAtOrigin,

    #[error("omega value {0} is numerically equal to 1")]
    OmegaHitsOne(Complex64),

    #[error("inadmissible omega data: {0}")]
    InadmissibleOmegaValue(String),

    #[error("extremal f_z0 is not defined at z0 = {z0}: h(|z0|) = {h} <= 0, use the half-plane extremal")]
    ExtremalNotDefined { z0: f64, h: f64 },

    #[error("Blaschke parameter b = {0} is outside the unit disk")]
    BlaschkeParamOutOfDisk(f64),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("evaluator failed at z = {z}: {source}")]
    EvaluatorFailure {
        z: Complex64,
        #[source]
        source: Box<Error>,
    },

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}
