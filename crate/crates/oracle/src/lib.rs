//! Reference implementations for checking `wfeq-core`.
//!
//! Everything here is evaluated literally from the defining formulas, in
//! exact rational arithmetic or by exhaustive enumeration, and never calls
//! the formula code in `wfeq-core`. The only exception is [`adjudication`],
//! whose whole purpose is to compare the core's exact-arithmetic output with
//! the literal reference.

pub mod adjudication;
pub mod bisection;
pub mod enumeration;
pub mod rational;
pub mod solve;
pub mod step;

pub use adjudication::{
    adjudicate_binary_equilibrium, adjudicate_binary_fitness_index,
    adjudicate_fluctuation_prefactor, Adjudication,
};
pub use bisection::bisection_equilibrium;
pub use enumeration::{enumerate_from_probabilities, enumerate_generation, GenerationDistribution, MAX_ENUMERATION_N};
pub use rational::{rat, Rational, RationalMatrix, RationalSampler};
pub use solve::{exact_equilibrium, ExactEquilibrium};
pub use step::{exact_increment_numerators, exact_mean_fitness, exact_step};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("mean fitness is exactly zero")]
    DegenerateModel,

    #[error("direction matrix is singular")]
    SingularDirectionMatrix,

    #[error("drift does not change sign on the open interval")]
    NoSignChange,

    #[error("enumeration limited to N <= {max}, got {n}")]
    ScopeExceeded { n: u64, max: u64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

pub type Result<T> = std::result::Result<T, OracleError>;
