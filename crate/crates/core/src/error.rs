use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("model needs at least 2 states, got {states}")]
    TooFewStates { states: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("state index {index} out of range for {states} states")]
    IndexOutOfRange { index: usize, states: usize },

    #[error("probability component {index} = {value} outside [0, 1]")]
    ComponentOutOfRange { index: usize, value: f64 },

    #[error("probabilities sum to {sum}, expected 1")]
    SimplexSum { sum: f64 },

    #[error("matrix is not square: row {row} has {found} entries, expected {expected}")]
    NotSquare { row: usize, expected: usize, found: usize },

    #[error("matrix entry ({row}, {col}) = {value} outside [0, 1]")]
    EntryOutOfRange { row: usize, col: usize, value: f64 },

    #[error("mean fitness W(p) = {value} is not positive")]
    ZeroMeanFitness { value: f64 },

    #[error("normalizer W(p) = {value} is not positive")]
    DegenerateNormalizer { value: f64 },

    #[error("direction matrix is singular (reciprocal condition {rcond:e})")]
    SingularDirectionMatrix { rcond: f64 },

    #[error("no interior equilibrium: rho[{index}] = {value}")]
    InadmissibleEquilibrium { index: usize, value: f64 },

    #[error("direction parameter {index} = {value} exceeds 1")]
    OutOfRangeDirection { index: usize, value: f64 },

    #[error("fluctuation representation requires a diagonal, row-consistent model")]
    NotDiagonalModel,

    #[error("iterate left the simplex at step {step}, component {index} = {value}")]
    NonFiniteIterate { step: usize, index: usize, value: f64 },

    #[error("initial state is not interior: component {index} = {value}")]
    NonInteriorStart { index: usize, value: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
