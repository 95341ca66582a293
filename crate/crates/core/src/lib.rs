//! Multivariant Wright-Fisher dynamics.
//!
//! The crate is generic over the [`Scalar`] the formulas are evaluated in.
//! `f64` is the working type; `f32` is supported, and with the `rational`
//! feature every formula can also be evaluated in exact `BigRational`
//! arithmetic. Concrete aliases for `f64` are exported at the crate root.

pub mod binary;
pub mod dynamics;
pub mod equilibrium;
pub mod error;
pub mod matrix;
pub mod model;
pub mod model_file;
pub mod scalar;
pub mod simplex;
pub mod stochastic;

pub use binary::{
    binary_drift, binary_equilibrium, binary_fitness, binary_normalizer, binary_step, BinaryModel,
};
pub use dynamics::{
    balance_residual, classify_zones, fluctuation_drift, fluctuation_drift_vector,
    fluctuation_normalizer, iterate, mean_fluctuation, IncrementMap, IterateOptions, Trajectory,
    Zone,
};
pub use equilibrium::{
    diagonal_from_equilibrium, fluctuation_scalar_product, solve_equilibrium,
    solve_equilibrium_with, EquilibriumOptions, EquilibriumProfile,
};
pub use error::{Error, Result};
pub use matrix::{DirectionMatrix, SquareMatrix, SurvivalMatrix};
pub use model::{
    direction_transform, drift_direction_form, drift_direction_vector, fitness_component,
    increment_drift, increment_numerators, increment_vector, mean_fitness,
    normalizer_direction_form, regression_step, scalar_product,
};
pub use model_file::{ModelFileError, ModelSpec};
pub use scalar::Scalar;
pub use simplex::SimplexVector;
pub use stochastic::{
    conditional_dispersion, martingale_difference, moment_summary, predictable_component,
    sample_multinomial, sample_next_generation, simulate_paths, MartingaleRecord, MomentSummary,
    PopulationState, RandomSeed, ReplicaPath, SimulationConfig, StateMoments, StochasticRun,
};

pub type Simplex = SimplexVector<f64>;
pub type Survival = SurvivalMatrix<f64>;
pub type Direction = DirectionMatrix<f64>;
pub type Profile = EquilibriumProfile<f64>;
pub type Binary = BinaryModel<f64>;

#[cfg(feature = "rational")]
pub use num_rational::BigRational;

#[cfg(feature = "rational")]
pub type ExactSimplex = SimplexVector<BigRational>;
#[cfg(feature = "rational")]
pub type ExactSurvival = SurvivalMatrix<BigRational>;
#[cfg(feature = "rational")]
pub type ExactDirection = DirectionMatrix<BigRational>;
#[cfg(feature = "rational")]
pub type ExactProfile = EquilibriumProfile<BigRational>;
#[cfg(feature = "rational")]
pub type ExactBinary = BinaryModel<BigRational>;
