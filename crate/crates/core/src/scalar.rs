//! Scalar abstraction shared by every formula in the crate.

use std::fmt::Debug;

use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

/// Field the model formulas are evaluated in.
///
/// Floating-point scalars carry non-zero default tolerances; the exact
/// rational scalar (feature `rational`) uses zero for all of them, so every
/// comparison becomes an equality test.
pub trait Scalar:
    Clone + Debug + PartialOrd + Num + Signed + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    /// Allowed deviation of a probability vector's sum from one.
    fn simplex_tolerance() -> Self;

    /// Normalizers at or below this value are treated as zero.
    fn degeneracy_threshold() -> Self;

    /// Smallest acceptable reciprocal condition number for a matrix inverse.
    fn singular_rcond() -> Self;

    /// Relative tolerance for the equilibrium consistency diagnostics.
    fn consistency_tolerance() -> Self;

    fn is_finite_value(&self) -> bool;

    /// Lossy conversion used for error reporting and statistics.
    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn from_usize_exact(n: usize) -> Self {
        Self::from_usize(n).expect("usize is representable")
    }
}

impl Scalar for f64 {
    fn simplex_tolerance() -> Self {
        1e-12
    }
    fn degeneracy_threshold() -> Self {
        1e-15
    }
    fn singular_rcond() -> Self {
        1e-12
    }
    fn consistency_tolerance() -> Self {
        1e-10
    }
    fn is_finite_value(&self) -> bool {
        self.is_finite()
    }
}

impl Scalar for f32 {
    fn simplex_tolerance() -> Self {
        1e-5
    }
    fn degeneracy_threshold() -> Self {
        1e-7
    }
    fn singular_rcond() -> Self {
        1e-6
    }
    fn consistency_tolerance() -> Self {
        1e-4
    }
    fn is_finite_value(&self) -> bool {
        self.is_finite()
    }
}

#[cfg(feature = "rational")]
impl Scalar for num_rational::BigRational {
    fn simplex_tolerance() -> Self {
        num_traits::Zero::zero()
    }
    fn degeneracy_threshold() -> Self {
        num_traits::Zero::zero()
    }
    fn singular_rcond() -> Self {
        num_traits::Zero::zero()
    }
    fn consistency_tolerance() -> Self {
        num_traits::Zero::zero()
    }
    fn is_finite_value(&self) -> bool {
        true
    }
}

/// `|a - b| <= tol * max(1, |a|, |b|)`.
pub(crate) fn approx_eq<T: Scalar>(a: &T, b: &T, tol: &T) -> bool {
    let mut scale = T::one();
    if a.abs() > scale {
        scale = a.abs();
    }
    if b.abs() > scale {
        scale = b.abs();
    }
    (a.clone() - b.clone()).abs() <= tol.clone() * scale
}

pub(crate) fn sum<'a, T: Scalar>(values: impl IntoIterator<Item = &'a T>) -> T {
    values
        .into_iter()
        .fold(T::zero(), |acc, v| acc + v.clone())
}
