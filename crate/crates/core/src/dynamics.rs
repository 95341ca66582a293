//! Equilibrium-parameterized drift and deterministic iteration.
//!
//! Given a profile `(ρ, π)`, the increment numerator is
//! `π p_m [Σ_n p_n²/ρ_n - p_m/ρ_m]` and the normalizer is
//! `1 - π Σ_n p_n²/ρ_n`. The prefactor is `p_m`: this is what substituting
//! `(V_m, p) = π p_m / ρ_m` into the direction-form drift produces, and it
//! is the form whose components sum to zero.

use crate::equilibrium::EquilibriumProfile;
use crate::error::{Error, Result};
use crate::matrix::SurvivalMatrix;
use crate::model::increment_vector;
use crate::scalar::{sum, Scalar};
use crate::simplex::SimplexVector;

/// `Σ_n p_n (p_n / ρ_n)`: the mean of the probability ratios `p_n / ρ_n`
/// under the current frequencies. Equals one at `p = ρ` and is never below
/// one.
pub fn mean_fluctuation<T: Scalar>(profile: &EquilibriumProfile<T>, p: &SimplexVector<T>) -> Result<T> {
    p.check_states(profile.states())?;
    Ok(p.values()
        .iter()
        .zip(profile.rho().values())
        .fold(T::zero(), |acc, (pn, rn)| {
            acc + pn.clone() * pn.clone() / rn.clone()
        }))
}

pub fn fluctuation_drift<T: Scalar>(
    profile: &EquilibriumProfile<T>,
    p: &SimplexVector<T>,
    m: usize,
) -> Result<T> {
    p.check_index(m)?;
    Ok(fluctuation_drift_vector(profile, p)?.swap_remove(m))
}

pub fn fluctuation_drift_vector<T: Scalar>(
    profile: &EquilibriumProfile<T>,
    p: &SimplexVector<T>,
) -> Result<Vec<T>> {
    let average = mean_fluctuation(profile, p)?;
    let pi = profile.pi();
    Ok(p.values()
        .iter()
        .zip(profile.rho().values())
        .map(|(pm, rm)| {
            pi.clone() * pm.clone() * (average.clone() - pm.clone() / rm.clone())
        })
        .collect())
}

/// `W(p) = 1 - π Σ_n p_n² / ρ_n`.
pub fn fluctuation_normalizer<T: Scalar>(profile: &EquilibriumProfile<T>, p: &SimplexVector<T>) -> Result<T> {
    let value = T::one() - profile.pi().clone() * mean_fluctuation(profile, p)?;
    if value <= T::degeneracy_threshold() {
        return Err(Error::DegenerateNormalizer {
            value: value.to_f64_lossy(),
        });
    }
    Ok(value)
}

/// `Σ_m` of the fluctuation drift; zero up to rounding.
pub fn balance_residual<T: Scalar>(profile: &EquilibriumProfile<T>, p: &SimplexVector<T>) -> Result<T> {
    Ok(sum(&fluctuation_drift_vector(profile, p)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Zone {
    /// `p_m < ρ_m`
    Plus,
    /// `p_m > ρ_m`
    Minus,
    /// `p_m = ρ_m` within tolerance
    Zero,
}

pub fn classify_zones<T: Scalar>(profile: &EquilibriumProfile<T>, p: &SimplexVector<T>, tol: &T) -> Result<Vec<Zone>> {
    p.check_states(profile.states())?;
    Ok(p.values()
        .iter()
        .zip(profile.rho().values())
        .map(|(pm, rm)| {
            if *pm < rm.clone() - tol.clone() {
                Zone::Plus
            } else if *pm > rm.clone() + tol.clone() {
                Zone::Minus
            } else {
                Zone::Zero
            }
        })
        .collect())
}

/// A deterministic one-generation map, expressed through its increments.
pub trait IncrementMap<T: Scalar> {
    fn states(&self) -> usize;

    /// `ΔP_m = P_m(k+1) - P_m(k)` at the current state.
    fn increments(&self, p: &SimplexVector<T>) -> Result<Vec<T>>;
}

impl<T: Scalar> IncrementMap<T> for SurvivalMatrix<T> {
    fn states(&self) -> usize {
        SurvivalMatrix::states(self)
    }

    fn increments(&self, p: &SimplexVector<T>) -> Result<Vec<T>> {
        increment_vector(self, p)
    }
}

impl<T: Scalar> IncrementMap<T> for EquilibriumProfile<T> {
    fn states(&self) -> usize {
        EquilibriumProfile::states(self)
    }

    fn increments(&self, p: &SimplexVector<T>) -> Result<Vec<T>> {
        let normalizer = fluctuation_normalizer(self, p)?;
        Ok(fluctuation_drift_vector(self, p)?
            .into_iter()
            .map(|d| d / normalizer.clone())
            .collect())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct IterateOptions<T> {
    pub max_steps: usize,
    /// Stop once `max_m |ΔP_m|` drops below this.
    pub tol: T,
    /// Accept initial states on the simplex boundary.
    pub allow_boundary: bool,
}

impl<T: Scalar> Default for IterateOptions<T> {
    fn default() -> Self {
        Self {
            max_steps: 1_000_000,
            tol: T::from_f64(1e-10).unwrap_or_else(T::zero),
            allow_boundary: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory<T> {
    pub states: Vec<SimplexVector<T>>,
    pub converged: bool,
    /// `max_m |ΔP_m|` of the last increment evaluated.
    pub final_increment_norm: T,
    pub steps_taken: usize,
}

impl<T: Scalar> Trajectory<T> {
    pub fn last(&self) -> &SimplexVector<T> {
        self.states.last().expect("trajectory holds the initial state")
    }
}

fn max_abs<T: Scalar>(values: &[T]) -> T {
    values
        .iter()
        .fold(T::zero(), |acc, v| if v.abs() > acc { v.abs() } else { acc })
}

/// Iterates `P(k+1) = P(k) + ΔP(k)` until the increment max-norm falls
/// below `options.tol` or `options.max_steps` steps have been taken.
///
/// The state is renormalized only to absorb a rounding residue of at most
/// `1e-12` in its sum; components are never clamped.
pub fn iterate<T: Scalar, D: IncrementMap<T> + ?Sized>(
    model: &D,
    p0: &SimplexVector<T>,
    options: &IterateOptions<T>,
) -> Result<Trajectory<T>> {
    p0.check_states(model.states())?;
    if !options.allow_boundary {
        if let Some((index, value)) = p0
            .values()
            .iter()
            .enumerate()
            .find(|(_, v)| !(**v > T::zero() && **v < T::one()))
        {
            return Err(Error::NonInteriorStart {
                index,
                value: value.to_f64_lossy(),
            });
        }
    }
    let slack = T::from_f64(1e-9).unwrap_or_else(T::zero);
    let residue = T::from_f64(1e-12).unwrap_or_else(T::zero);
    let lower = -slack.clone();
    let upper = T::one() + slack;

    let mut states = vec![p0.clone()];
    let mut step = 0;
    loop {
        let current = states.last().expect("non-empty");
        let delta = model.increments(current)?;
        let norm = max_abs(&delta);
        if !norm.is_finite_value() {
            return Err(Error::NonFiniteIterate {
                step,
                index: 0,
                value: f64::NAN,
            });
        }
        if norm < options.tol {
            return Ok(Trajectory {
                states,
                converged: true,
                final_increment_norm: norm,
                steps_taken: step,
            });
        }
        if step == options.max_steps {
            return Ok(Trajectory {
                states,
                converged: false,
                final_increment_norm: norm,
                steps_taken: step,
            });
        }
        let mut next: Vec<T> = current
            .values()
            .iter()
            .zip(delta)
            .map(|(p, d)| p.clone() + d)
            .collect();
        step += 1;
        if let Some((index, value)) = next
            .iter()
            .enumerate()
            .find(|(_, v)| !v.is_finite_value() || **v < lower || **v > upper)
        {
            return Err(Error::NonFiniteIterate {
                step,
                index,
                value: value.to_f64_lossy(),
            });
        }
        let total = sum(&next);
        if (total.clone() - T::one()).abs() > residue {
            return Err(Error::SimplexSum {
                sum: total.to_f64_lossy(),
            });
        }
        if !total.is_one() {
            next = next.into_iter().map(|v| v / total.clone()).collect();
        }
        states.push(SimplexVector::from_trusted(next));
    }
}
