//! Interior equilibria from the inverse direction matrix.
//!
//! For an invertible direction matrix `V` with inverse entries `V̄_mn` and
//! row sums `V̄_m = Σ_n V̄_mn`, the equilibrium is `ρ_m = π V̄_m` with
//! `π = 1 / Σ_m V̄_m`. By construction `V ρ = π 1`, so every increment
//! numerator vanishes at `ρ`. Whether `π` also equals `Π_n ρ_n` depends on
//! the model and is reported as a diagnostic.

use crate::error::{Error, Result};
use crate::matrix::DirectionMatrix;
use crate::scalar::{approx_eq, sum, Scalar};
use crate::simplex::SimplexVector;

#[derive(Clone, Debug, PartialEq)]
pub struct EquilibriumOptions<T> {
    /// Minimum reciprocal condition number accepted for `V`.
    pub singular_rcond: T,
    /// Relative tolerance for `product_consistent` and `row_consistent`.
    pub consistency: T,
    /// Simplex tolerance for the returned `ρ`.
    pub simplex: T,
}

impl<T: Scalar> Default for EquilibriumOptions<T> {
    fn default() -> Self {
        Self {
            singular_rcond: T::singular_rcond(),
            consistency: T::consistency_tolerance(),
            simplex: T::simplex_tolerance() * T::from_f64(100.0).expect("small constant"),
        }
    }
}

/// Equilibrium `ρ`, normalizing constant `π` and consistency diagnostics.
#[derive(Clone, Debug, PartialEq)]
pub struct EquilibriumProfile<T> {
    rho: SimplexVector<T>,
    pi: T,
    inverse_row_sums: Vec<T>,
    product_consistent: bool,
    row_consistent: bool,
    diagonal: bool,
}

impl<T: Scalar> EquilibriumProfile<T> {
    /// Profile of the diagonal model whose equilibrium is `rho`.
    pub fn from_diagonal_equilibrium(rho: &SimplexVector<T>) -> Result<Self> {
        solve_equilibrium(&diagonal_from_equilibrium(rho)?)
    }

    pub fn rho(&self) -> &SimplexVector<T> {
        &self.rho
    }

    pub fn pi(&self) -> &T {
        &self.pi
    }

    pub fn inverse_row_sums(&self) -> &[T] {
        &self.inverse_row_sums
    }

    /// `π = Π_n ρ_n` within tolerance.
    pub fn product_consistent(&self) -> bool {
        self.product_consistent
    }

    /// `(V_m, ρ) = π` for all `m` within tolerance.
    pub fn row_consistent(&self) -> bool {
        self.row_consistent
    }

    pub fn diagonal(&self) -> bool {
        self.diagonal
    }

    pub fn states(&self) -> usize {
        self.rho.states()
    }
}

pub fn solve_equilibrium<T: Scalar>(v: &DirectionMatrix<T>) -> Result<EquilibriumProfile<T>> {
    solve_equilibrium_with(v, &EquilibriumOptions::default())
}

pub fn solve_equilibrium_with<T: Scalar>(
    v: &DirectionMatrix<T>,
    options: &EquilibriumOptions<T>,
) -> Result<EquilibriumProfile<T>> {
    let inverse = v.matrix().inverse(&options.singular_rcond)?;
    let inverse_row_sums: Vec<T> = inverse.rows().map(|row| sum(row)).collect();
    let total = sum(&inverse_row_sums);
    if total.is_zero() || !total.is_finite_value() {
        return Err(Error::InadmissibleEquilibrium {
            index: 0,
            value: f64::INFINITY,
        });
    }
    let pi = T::one() / total;
    let rho: Vec<T> = inverse_row_sums
        .iter()
        .map(|s| pi.clone() * s.clone())
        .collect();
    if let Some((index, value)) = rho.iter().enumerate().find(|(_, r)| **r <= T::zero()) {
        return Err(Error::InadmissibleEquilibrium {
            index,
            value: value.to_f64_lossy(),
        });
    }
    if pi.partial_cmp(&T::zero()) != Some(std::cmp::Ordering::Greater) {
        return Err(Error::InadmissibleEquilibrium {
            index: 0,
            value: pi.to_f64_lossy(),
        });
    }

    let product = rho.iter().fold(T::one(), |acc, r| acc * r.clone());
    let product_consistent = approx_eq(&pi, &product, &options.consistency);
    let row_consistent = (0..v.states()).all(|m| {
        let vm = v
            .row(m)
            .iter()
            .zip(&rho)
            .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone());
        approx_eq(&vm, &pi, &options.consistency)
    });

    Ok(EquilibriumProfile {
        rho: SimplexVector::with_tolerance(rho, &options.simplex)?,
        pi,
        inverse_row_sums,
        product_consistent,
        row_consistent,
        diagonal: v.is_diagonal(),
    })
}

/// Diagonal direction matrix `V_m = π / ρ_m` with `π = Π_n ρ_n`.
pub fn diagonal_from_equilibrium<T: Scalar>(rho: &SimplexVector<T>) -> Result<DirectionMatrix<T>> {
    if let Some((index, value)) = rho
        .values()
        .iter()
        .enumerate()
        .find(|(_, r)| **r <= T::zero())
    {
        return Err(Error::InadmissibleEquilibrium {
            index,
            value: value.to_f64_lossy(),
        });
    }
    let pi = rho.values().iter().fold(T::one(), |acc, r| acc * r.clone());
    let diag: Vec<T> = rho.values().iter().map(|r| pi.clone() / r.clone()).collect();
    if let Some((index, value)) = diag.iter().enumerate().find(|(_, d)| **d > T::one()) {
        return Err(Error::OutOfRangeDirection {
            index,
            value: value.to_f64_lossy(),
        });
    }
    DirectionMatrix::diagonal(diag)
}

/// `(V_m, p) = π p_m / ρ_m`, exact for diagonal models only.
pub fn fluctuation_scalar_product<T: Scalar>(
    profile: &EquilibriumProfile<T>,
    p: &SimplexVector<T>,
    m: usize,
) -> Result<T> {
    if !(profile.diagonal && profile.row_consistent) {
        return Err(Error::NotDiagonalModel);
    }
    p.check_states(profile.states())?;
    p.check_index(m)?;
    Ok(profile.pi.clone() * p.values()[m].clone() / profile.rho.values()[m].clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::scalar_product;

    fn simplex(v: &[f64]) -> SimplexVector<f64> {
        SimplexVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn three_state_diagonal() {
        let v = DirectionMatrix::diagonal(vec![1.0 / 18.0, 1.0 / 12.0, 1.0 / 6.0]).unwrap();
        let profile = solve_equilibrium(&v).unwrap();
        let expected = [0.5f64, 1.0 / 3.0, 1.0 / 6.0];
        for (a, b) in profile.rho().values().iter().zip(expected) {
            assert!((a - b).abs() < 1e-14);
        }
        assert!((*profile.pi() - 1.0 / 36.0f64).abs() < 1e-15);
        assert!(profile.product_consistent());
        assert!(profile.row_consistent());
        assert!(profile.diagonal());
    }

    #[test]
    fn identity_is_uniform_but_not_product_consistent() {
        let v = DirectionMatrix::diagonal(vec![1.0, 1.0]).unwrap();
        let profile = solve_equilibrium(&v).unwrap();
        assert_eq!(profile.rho().values(), &[0.5, 0.5]);
        assert_eq!(*profile.pi(), 0.5);
        assert!(!profile.product_consistent());
        assert!(profile.row_consistent());

        let v = DirectionMatrix::diagonal(vec![1.0; 4]).unwrap();
        let profile = solve_equilibrium(&v).unwrap();
        assert_eq!(profile.rho().values(), &[0.25; 4]);
    }

    #[test]
    fn zero_matrix_is_singular() {
        let v = DirectionMatrix::filled(3, 0.0).unwrap();
        assert!(matches!(
            solve_equilibrium(&v),
            Err(Error::SingularDirectionMatrix { .. })
        ));
    }

    #[test]
    fn negative_equilibrium_is_inadmissible() {
        // Inverse row sums have opposite signs.
        let v = DirectionMatrix::from_rows(vec![vec![0.2, 0.9], vec![0.1, 0.6]]).unwrap();
        assert!(matches!(
            solve_equilibrium(&v),
            Err(Error::InadmissibleEquilibrium { .. })
        ));
    }

    #[test]
    fn diagonal_from_three_state_equilibrium() {
        let v = diagonal_from_equilibrium(&simplex(&[0.5, 1.0 / 3.0, 1.0 / 6.0])).unwrap();
        let expected = [1.0 / 18.0, 1.0 / 12.0, 1.0 / 6.0];
        for m in 0..3 {
            assert!((v.get(m, m) - expected[m]).abs() < 1e-16);
        }
        assert!(v.is_diagonal());

        let v = diagonal_from_equilibrium(&simplex(&[0.5, 0.5])).unwrap();
        assert_eq!(v.to_rows(), vec![vec![0.5, 0.0], vec![0.0, 0.5]]);

        let v = diagonal_from_equilibrium(&simplex(&[0.999, 0.001])).unwrap();
        assert!((v.get(1, 1) - 0.999).abs() < 1e-15);
    }

    #[test]
    fn diagonal_from_boundary_rho_is_rejected() {
        assert!(matches!(
            diagonal_from_equilibrium(&simplex(&[1.0, 0.0])),
            Err(Error::InadmissibleEquilibrium { index: 1, .. })
        ));
    }

    #[test]
    fn fluctuation_scalar_product_matches_direct() {
        let rho = simplex(&[0.5, 0.5]);
        let profile = EquilibriumProfile::from_diagonal_equilibrium(&rho).unwrap();
        let p = simplex(&[0.6, 0.4]);
        let v = diagonal_from_equilibrium(&rho).unwrap();
        let got = fluctuation_scalar_product(&profile, &p, 0).unwrap();
        assert!((got - 0.3).abs() < 1e-15);
        assert!((got - scalar_product(&v, &p, 0).unwrap()).abs() < 1e-14);
        assert_eq!(fluctuation_scalar_product(&profile, &rho, 1).unwrap(), 0.25);
        assert_eq!(
            fluctuation_scalar_product(&profile, &simplex(&[1.0, 0.0]), 1).unwrap(),
            0.0
        );
    }

    #[test]
    fn fluctuation_scalar_product_requires_diagonal() {
        let v = DirectionMatrix::from_rows(vec![vec![0.6, 0.1], vec![0.2, 0.5]]).unwrap();
        let profile = solve_equilibrium(&v).unwrap();
        assert!(!profile.diagonal());
        assert_eq!(
            fluctuation_scalar_product(&profile, &simplex(&[0.5, 0.5]), 0),
            Err(Error::NotDiagonalModel)
        );
    }
}
