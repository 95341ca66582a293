//! Two-state evolutionary process with its cubic drift.
//!
//! With survival parameters `W_±` (heterozygote survival fixed at one) the
//! map is `p_+ ↦ W_+(p)/W(p)` where `W_±(p) = p_±(W_± p_± + p_∓)` and
//! `W(p) = W_+p_+² + 2p_+p_- + W_-p_-²`. Writing `V_± = 1 - W_±`, the
//! increment numerator is the cubic `-(V_+ + V_-) p_+ p_- (p_+ - ρ_+)` with
//! interior root `ρ_+ = V_- / (V_+ + V_-)`.

use crate::dynamics::IncrementMap;
use crate::error::{Error, Result};
use crate::matrix::SurvivalMatrix;
use crate::scalar::Scalar;
use crate::simplex::SimplexVector;

#[derive(Clone, Debug, PartialEq)]
pub struct BinaryModel<T> {
    w_plus: T,
    w_minus: T,
}

impl<T: Scalar> BinaryModel<T> {
    /// Survival parameters must lie in `(0, 1]`. Values of exactly one make
    /// the corresponding homozygote neutral; the model then has no interior
    /// equilibrium unless the other parameter is below one.
    pub fn new(w_plus: T, w_minus: T) -> Result<Self> {
        for (name, w) in [("w_plus", &w_plus), ("w_minus", &w_minus)] {
            if !w.is_finite_value() || *w <= T::zero() || *w > T::one() {
                return Err(Error::InvalidParameter(format!(
                    "{name} = {} must lie in (0, 1]",
                    w.to_f64_lossy()
                )));
            }
        }
        Ok(Self { w_plus, w_minus })
    }

    pub fn from_direction(v_plus: T, v_minus: T) -> Result<Self> {
        Self::new(T::one() - v_plus, T::one() - v_minus)
    }

    pub fn w_plus(&self) -> &T {
        &self.w_plus
    }

    pub fn w_minus(&self) -> &T {
        &self.w_minus
    }

    pub fn v_plus(&self) -> T {
        T::one() - self.w_plus.clone()
    }

    pub fn v_minus(&self) -> T {
        T::one() - self.w_minus.clone()
    }

    /// `V_+ + V_-`; the cubic drift carries this factor.
    pub fn drift_scale(&self) -> T {
        self.v_plus() + self.v_minus()
    }

    /// `(ρ_+, ρ_-)` when `V_+ + V_- > 0`.
    pub fn equilibrium(&self) -> Option<(T, T)> {
        let s = self.drift_scale();
        if s <= T::zero() {
            return None;
        }
        Some((self.v_minus() / s.clone(), self.v_plus() / s))
    }

    /// `π = ρ_+ ρ_-`.
    pub fn pi(&self) -> Option<T> {
        self.equilibrium().map(|(a, b)| a * b)
    }

    /// True when `V_+ + V_- = 1` within the simplex tolerance.
    pub fn is_normalized(&self) -> bool {
        (self.drift_scale() - T::one()).abs() <= T::simplex_tolerance()
    }

    /// The same model as a general `2 × 2` survival matrix.
    pub fn survival_matrix(&self) -> SurvivalMatrix<T> {
        SurvivalMatrix::from_rows(vec![
            vec![self.w_plus.clone(), T::one()],
            vec![T::one(), self.w_minus.clone()],
        ])
        .expect("parameters validated at construction")
    }
}

fn check_frequency<T: Scalar>(p_plus: &T) -> Result<()> {
    if !p_plus.is_finite_value() || *p_plus < T::zero() || *p_plus > T::one() {
        return Err(Error::ComponentOutOfRange {
            index: 0,
            value: p_plus.to_f64_lossy(),
        });
    }
    Ok(())
}

/// `W(p) = W_+p_+² + 2p_+p_- + W_-p_-²`.
pub fn binary_normalizer<T: Scalar>(model: &BinaryModel<T>, p_plus: &T) -> Result<T> {
    check_frequency(p_plus)?;
    let p = p_plus.clone();
    let q = T::one() - p.clone();
    let two = T::one() + T::one();
    Ok(model.w_plus.clone() * p.clone() * p.clone()
        + two * p.clone() * q.clone()
        + model.w_minus.clone() * q.clone() * q)
}

/// `p_+ ↦ W_+(p) / W(p)`.
pub fn binary_step<T: Scalar>(model: &BinaryModel<T>, p_plus: &T) -> Result<T> {
    let total = binary_normalizer(model, p_plus)?;
    if total <= T::degeneracy_threshold() {
        return Err(Error::DegenerateNormalizer {
            value: total.to_f64_lossy(),
        });
    }
    let p = p_plus.clone();
    let q = T::one() - p.clone();
    let fitness_plus = p.clone() * (model.w_plus.clone() * p + q);
    Ok(fitness_plus / total)
}

/// `(W_+(p), W_-(p))` in the expanded form `p_±(1 - V_± p_±)`, which equals
/// `p_±(W_± p_± + p_∓)` for every parameter value.
pub fn binary_fitness<T: Scalar>(model: &BinaryModel<T>, p_plus: &T) -> Result<(T, T)> {
    check_frequency(p_plus)?;
    let p = p_plus.clone();
    let q = T::one() - p.clone();
    Ok((
        p.clone() * (T::one() - model.v_plus() * p),
        q.clone() * (T::one() - model.v_minus() * q),
    ))
}

/// Increment numerator of `p_+`: `-(V_+ + V_-) p_+ p_- (p_+ - ρ_+)`.
///
/// Under `V_+ + V_- = 1` this is the familiar cubic `-p_+p_-(p_+ - ρ_+)`.
pub fn binary_drift<T: Scalar>(model: &BinaryModel<T>, p_plus: &T) -> Result<T> {
    check_frequency(p_plus)?;
    let Some((rho_plus, _)) = model.equilibrium() else {
        return Ok(T::zero());
    };
    let p = p_plus.clone();
    let q = T::one() - p.clone();
    Ok(-(model.drift_scale() * p.clone() * q * (p - rho_plus)))
}

/// `ρ_± = V_∓ / (V_+ + V_-)`, for direction parameters in `(0, 1)`.
pub fn binary_equilibrium<T: Scalar>(v_plus: &T, v_minus: &T) -> Result<(T, T)> {
    for (name, v) in [("v_plus", v_plus), ("v_minus", v_minus)] {
        if !v.is_finite_value() || *v <= T::zero() || *v >= T::one() {
            return Err(Error::InvalidParameter(format!(
                "{name} = {} must lie in (0, 1)",
                v.to_f64_lossy()
            )));
        }
    }
    let s = v_plus.clone() + v_minus.clone();
    Ok((v_minus.clone() / s.clone(), v_plus.clone() / s))
}

impl<T: Scalar> IncrementMap<T> for BinaryModel<T> {
    fn states(&self) -> usize {
        2
    }

    fn increments(&self, p: &SimplexVector<T>) -> Result<Vec<T>> {
        p.check_states(2)?;
        let p_plus = &p.values()[0];
        let total = binary_normalizer(self, p_plus)?;
        if total <= T::degeneracy_threshold() {
            return Err(Error::DegenerateNormalizer {
                value: total.to_f64_lossy(),
            });
        }
        let delta = binary_drift(self, p_plus)? / total;
        Ok(vec![delta.clone(), -delta])
    }
}
