//! Literal exact evaluation of the regression map.

use num_traits::Zero;

use crate::rational::{sum, Rational};
use crate::{OracleError, Result};

fn check(w: &[Vec<Rational>], p: &[Rational]) -> Result<()> {
    if w.len() != p.len() {
        return Err(OracleError::DimensionMismatch {
            expected: w.len(),
            found: p.len(),
        });
    }
    for row in w {
        if row.len() != p.len() {
            return Err(OracleError::DimensionMismatch {
                expected: p.len(),
                found: row.len(),
            });
        }
    }
    Ok(())
}

/// `[W_m(p)]_m` with `W_m(p) = p_m Σ_n W_mn p_n`.
fn fitness(w: &[Vec<Rational>], p: &[Rational]) -> Vec<Rational> {
    w.iter()
        .zip(p)
        .map(|(row, pm)| {
            let inner = row
                .iter()
                .zip(p)
                .fold(Rational::zero(), |acc, (wmn, pn)| acc + wmn * pn);
            pm * inner
        })
        .collect()
}

pub fn exact_mean_fitness(w: &[Vec<Rational>], p: &[Rational]) -> Result<Rational> {
    check(w, p)?;
    Ok(sum(&fitness(w, p)))
}

/// `P(k+1)_m = W_m(p) / W(p)` in exact arithmetic.
pub fn exact_step(w: &[Vec<Rational>], p: &[Rational]) -> Result<Vec<Rational>> {
    check(w, p)?;
    let f = fitness(w, p);
    let total = sum(&f);
    if total.is_zero() {
        return Err(OracleError::DegenerateModel);
    }
    Ok(f.into_iter().map(|x| x / &total).collect())
}

/// `V_0^(m)(p) = W_m(p) - p_m W(p)`.
pub fn exact_increment_numerators(w: &[Vec<Rational>], p: &[Rational]) -> Result<Vec<Rational>> {
    check(w, p)?;
    let f = fitness(w, p);
    let total = sum(&f);
    Ok(f.into_iter().zip(p).map(|(x, pm)| x - pm * &total).collect())
}
