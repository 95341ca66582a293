//! Survival (`W`) and direction (`V = 1 - W`) parameter matrices.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Dense row-major square matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct SquareMatrix<T> {
    dim: usize,
    data: Vec<T>,
}

impl<T: Scalar> SquareMatrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for (row, entries) in rows.into_iter().enumerate() {
            if entries.len() != dim {
                return Err(Error::NotSquare {
                    row,
                    expected: dim,
                    found: entries.len(),
                });
            }
            data.extend(entries);
        }
        Ok(Self { dim, data })
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                data.push(f(r, c));
            }
        }
        Self { dim, data }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |r, c| if r == c { T::one() } else { T::zero() })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.dim + c]
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.dim..(r + 1) * self.dim]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T]> {
        self.data.chunks(self.dim)
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        self.rows().map(<[T]>::to_vec).collect()
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.dim).all(|r| {
            (0..self.dim).all(|c| r == c || self.get(r, c).is_zero())
        })
    }

    /// Maximum absolute column sum.
    pub fn norm_one(&self) -> T {
        let mut best = T::zero();
        for c in 0..self.dim {
            let col = (0..self.dim).fold(T::zero(), |acc, r| acc + self.get(r, c).abs());
            if col > best {
                best = col;
            }
        }
        best
    }

    fn map(&self, f: impl Fn(&T) -> T) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(f).collect(),
        }
    }

    fn check_unit_entries(&self) -> Result<()> {
        if self.dim < 2 {
            return Err(Error::TooFewStates { states: self.dim });
        }
        for (i, v) in self.data.iter().enumerate() {
            if !v.is_finite_value() || *v < T::zero() || *v > T::one() {
                return Err(Error::EntryOutOfRange {
                    row: i / self.dim,
                    col: i % self.dim,
                    value: v.to_f64_lossy(),
                });
            }
        }
        Ok(())
    }

    /// Gauss-Jordan inverse with partial pivoting.
    ///
    /// Fails with [`Error::SingularDirectionMatrix`] on an exactly zero pivot
    /// or when the reciprocal 1-norm condition number falls below
    /// `min_rcond`.
    pub fn inverse(&self, min_rcond: &T) -> Result<Self> {
        let n = self.dim;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot_row = (col..n)
                .max_by(|&i, &j| {
                    a.get(i, col)
                        .abs()
                        .partial_cmp(&a.get(j, col).abs())
                        .unwrap_or(std::cmp::Ordering::Equal)
                })
                .unwrap_or(col);
            if a.get(pivot_row, col).is_zero() || !a.get(pivot_row, col).is_finite_value() {
                return Err(Error::SingularDirectionMatrix { rcond: 0.0 });
            }
            if pivot_row != col {
                a.swap_rows(pivot_row, col);
                inv.swap_rows(pivot_row, col);
            }
            let pivot = a.get(col, col).clone();
            a.scale_row(col, &pivot);
            inv.scale_row(col, &pivot);
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let factor = a.get(r, col).clone();
                a.eliminate(r, col, &factor);
                inv.eliminate(r, col, &factor);
            }
        }
        let rcond = T::one() / (self.norm_one() * inv.norm_one());
        if !rcond.is_finite_value() || rcond < *min_rcond {
            return Err(Error::SingularDirectionMatrix {
                rcond: rcond.to_f64_lossy(),
            });
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for c in 0..self.dim {
            self.data.swap(a * self.dim + c, b * self.dim + c);
        }
    }

    fn scale_row(&mut self, r: usize, divisor: &T) {
        for c in 0..self.dim {
            let i = r * self.dim + c;
            self.data[i] = self.data[i].clone() / divisor.clone();
        }
    }

    /// `row[target] -= factor * row[source]`
    fn eliminate(&mut self, target: usize, source: usize, factor: &T) {
        for c in 0..self.dim {
            let s = self.data[source * self.dim + c].clone();
            let i = target * self.dim + c;
            self.data[i] = self.data[i].clone() - factor.clone() * s;
        }
    }
}

/// Survival parameters `W_mn` in `[0, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct SurvivalMatrix<T>(SquareMatrix<T>);

/// Direction parameters `V_mn = 1 - W_mn` in `[0, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct DirectionMatrix<T>(SquareMatrix<T>);

macro_rules! unit_matrix {
    ($name:ident) => {
        impl<T: Scalar> $name<T> {
            pub fn new(matrix: SquareMatrix<T>) -> Result<Self> {
                matrix.check_unit_entries()?;
                Ok(Self(matrix))
            }

            pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
                Self::new(SquareMatrix::from_rows(rows)?)
            }

            pub fn filled(states: usize, value: T) -> Result<Self> {
                Self::new(SquareMatrix::from_fn(states, |_, _| value.clone()))
            }

            pub fn diagonal(values: Vec<T>) -> Result<Self> {
                Self::new(SquareMatrix::from_fn(values.len(), |r, c| {
                    if r == c {
                        values[r].clone()
                    } else {
                        T::zero()
                    }
                }))
            }

            /// Number of states `M + 1`.
            pub fn states(&self) -> usize {
                self.0.dim()
            }

            #[inline]
            pub fn get(&self, m: usize, n: usize) -> &T {
                self.0.get(m, n)
            }

            #[inline]
            pub fn row(&self, m: usize) -> &[T] {
                self.0.row(m)
            }

            pub fn matrix(&self) -> &SquareMatrix<T> {
                &self.0
            }

            pub fn is_diagonal(&self) -> bool {
                self.0.is_diagonal()
            }

            pub fn to_rows(&self) -> Vec<Vec<T>> {
                self.0.to_rows()
            }
        }
    };
}

unit_matrix!(SurvivalMatrix);
unit_matrix!(DirectionMatrix);

impl<T: Scalar> SurvivalMatrix<T> {
    /// Entrywise complement `V_mn = 1 - W_mn`.
    pub fn to_direction(&self) -> DirectionMatrix<T> {
        DirectionMatrix(self.0.map(|w| T::one() - w.clone()))
    }
}

impl<T: Scalar> DirectionMatrix<T> {
    /// Entrywise complement `W_mn = 1 - V_mn`.
    pub fn to_survival(&self) -> SurvivalMatrix<T> {
        SurvivalMatrix(self.0.map(|v| T::one() - v.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation_names_offending_entry() {
        let err = SurvivalMatrix::from_rows(vec![vec![0.4, 1.0], vec![1.5, 0.8]]).unwrap_err();
        assert_eq!(
            err,
            Error::EntryOutOfRange {
                row: 1,
                col: 0,
                value: 1.5
            }
        );
        let err = DirectionMatrix::from_rows(vec![vec![0.4, 1.0], vec![0.8]]).unwrap_err();
        assert!(matches!(err, Error::NotSquare { row: 1, .. }));
        let err = SurvivalMatrix::from_rows(vec![vec![0.4]]).unwrap_err();
        assert_eq!(err, Error::TooFewStates { states: 1 });
    }

    #[test]
    fn inverse_of_small_matrix() {
        let a = SquareMatrix::from_rows(vec![vec![0.0, 2.0], vec![4.0, 1.0]]).unwrap();
        let inv = a.inverse(&1e-12).unwrap();
        let expected = [[-0.125f64, 0.25], [0.5, 0.0]];
        for r in 0..2 {
            for c in 0..2 {
                assert!((*inv.get(r, c) - expected[r][c]).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn inverse_rejects_singular() {
        let zero = SquareMatrix::from_fn(3, |_, _| 0.0);
        assert!(matches!(
            zero.inverse(&1e-12),
            Err(Error::SingularDirectionMatrix { .. })
        ));
        let rank_one = SquareMatrix::from_rows(vec![vec![0.5, 0.5], vec![0.5, 0.5]]).unwrap();
        assert!(rank_one.inverse(&1e-12).is_err());
        let nearly = SquareMatrix::from_rows(vec![vec![1.0, 1.0], vec![1.0, 1.0 + 1e-14]]).unwrap();
        assert!(nearly.inverse(&1e-12).is_err());
    }

    #[test]
    fn complement_is_involutive() {
        let w = SurvivalMatrix::from_rows(vec![vec![0.4, 1.0], vec![1.0, 0.8]]).unwrap();
        let v = w.to_direction();
        assert!((*v.get(0, 0) - 0.6f64).abs() < 1e-15);
        assert_eq!(*v.get(0, 1), 0.0);
        assert!((*v.get(1, 1) - 0.2f64).abs() < 1e-15);
        assert_eq!(v.to_survival(), w);
    }
}
