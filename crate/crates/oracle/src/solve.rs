//! Exact equilibrium via fraction-free (Bareiss) elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::rational::{sum, Rational};
use crate::{OracleError, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct ExactEquilibrium {
    /// `V⁻¹ 1`, the inverse-matrix row sums.
    pub inverse_row_sums: Vec<Rational>,
    /// `1 / Σ_m V̄_m`.
    pub pi: Rational,
    /// `π V⁻¹ 1`; components are returned as computed, even if not positive.
    pub rho: Vec<Rational>,
}

/// Solves `A x = b` exactly. Rows are first cleared of denominators so the
/// elimination runs on integers.
pub fn solve_exact(a: &[Vec<Rational>], b: &[Rational]) -> Result<Vec<Rational>> {
    let n = a.len();
    if b.len() != n || a.iter().any(|row| row.len() != n) {
        return Err(OracleError::DimensionMismatch {
            expected: n,
            found: b.len(),
        });
    }
    // Integer augmented matrix [A | b], row i scaled by the lcm of its denominators.
    let mut m: Vec<Vec<BigInt>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let lcm = row
                .iter()
                .chain(std::iter::once(bi))
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter()
                .chain(std::iter::once(bi))
                .map(|x| x.numer() * (&lcm / x.denom()))
                .collect()
        })
        .collect();

    let mut prev = BigInt::one();
    for k in 0..n {
        let pivot = (k..n)
            .find(|&r| !m[r][k].is_zero())
            .ok_or(OracleError::SingularDirectionMatrix)?;
        m.swap(k, pivot);
        for i in k + 1..n {
            for j in k + 1..=n {
                let value = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = value;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }

    let mut x = vec![Rational::zero(); n];
    for i in (0..n).rev() {
        let mut acc = BigRational::from_integer(m[i][n].clone());
        for j in i + 1..n {
            acc -= BigRational::from_integer(m[i][j].clone()) * &x[j];
        }
        x[i] = acc / BigRational::from_integer(m[i][i].clone());
    }
    Ok(x)
}

/// `ρ = π V⁻¹ 1` with `π = 1 / Σ V̄_m`.
pub fn exact_equilibrium(v: &[Vec<Rational>]) -> Result<ExactEquilibrium> {
    let ones = vec![Rational::one(); v.len()];
    let inverse_row_sums = solve_exact(v, &ones)?;
    let total = sum(&inverse_row_sums);
    if total.is_zero() {
        return Err(OracleError::DegenerateModel);
    }
    let pi = total.recip();
    let rho = inverse_row_sums.iter().map(|s| &pi * s).collect();
    Ok(ExactEquilibrium {
        inverse_row_sums,
        pi,
        rho,
    })
}
