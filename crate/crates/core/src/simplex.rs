//! Probability vectors over the `M + 1` genotype states.

use crate::error::{Error, Result};
use crate::scalar::{sum, Scalar};

/// Genotype frequencies `p = (p_0, ..., p_M)`.
///
/// Every component lies in `[0, 1]` and the components sum to one, both up
/// to the tolerance the vector was validated with. Boundary points are
/// accepted: vertices and faces are absorbing but legitimate states.
#[derive(Clone, Debug, PartialEq)]
pub struct SimplexVector<T> {
    values: Vec<T>,
}

impl<T: Scalar> SimplexVector<T> {
    pub fn new(values: Vec<T>) -> Result<Self> {
        Self::with_tolerance(values, &T::simplex_tolerance())
    }

    pub fn with_tolerance(values: Vec<T>, tol: &T) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::TooFewStates {
                states: values.len(),
            });
        }
        let lower = -tol.clone();
        let upper = T::one() + tol.clone();
        for (index, v) in values.iter().enumerate() {
            if !v.is_finite_value() || *v < lower || *v > upper {
                return Err(Error::ComponentOutOfRange {
                    index,
                    value: v.to_f64_lossy(),
                });
            }
        }
        let total = sum(&values);
        if (total.clone() - T::one()).abs() > *tol {
            return Err(Error::SimplexSum {
                sum: total.to_f64_lossy(),
            });
        }
        Ok(Self { values })
    }

    /// Builds a vector by dividing non-negative weights by their total.
    pub fn from_weights(weights: Vec<T>) -> Result<Self> {
        let total = sum(&weights);
        if total <= T::zero() {
            return Err(Error::SimplexSum {
                sum: total.to_f64_lossy(),
            });
        }
        Self::new(weights.into_iter().map(|w| w / total.clone()).collect())
    }

    pub fn uniform(states: usize) -> Result<Self> {
        if states < 2 {
            return Err(Error::TooFewStates { states });
        }
        let share = T::one() / T::from_usize_exact(states);
        Ok(Self {
            values: vec![share; states],
        })
    }

    pub fn vertex(states: usize, m: usize) -> Result<Self> {
        if states < 2 {
            return Err(Error::TooFewStates { states });
        }
        if m >= states {
            return Err(Error::IndexOutOfRange { index: m, states });
        }
        let mut values = vec![T::zero(); states];
        values[m] = T::one();
        Ok(Self { values })
    }

    /// Wraps values that are on the simplex by construction.
    pub(crate) fn from_trusted(values: Vec<T>) -> Self {
        debug_assert!(values.len() >= 2);
        Self { values }
    }

    pub fn states(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn get(&self, m: usize) -> Result<&T> {
        self.values.get(m).ok_or(Error::IndexOutOfRange {
            index: m,
            states: self.values.len(),
        })
    }

    /// True when every component is strictly inside `(0, 1)`.
    pub fn is_interior(&self) -> bool {
        self.values
            .iter()
            .all(|v| *v > T::zero() && *v < T::one())
    }

    pub fn into_inner(self) -> Vec<T> {
        self.values
    }

    pub(crate) fn check_index(&self, m: usize) -> Result<()> {
        if m < self.values.len() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: m,
                states: self.values.len(),
            })
        }
    }

    pub(crate) fn check_states(&self, states: usize) -> Result<()> {
        if self.values.len() == states {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: states,
                found: self.values.len(),
            })
        }
    }
}

impl SimplexVector<f64> {
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

impl<T> AsRef<[T]> for SimplexVector<T> {
    fn as_ref(&self) -> &[T] {
        &self.values
    }
}
