//! General Wright-Fisher regression step and increment drift.
//!
//! With survival parameters `W_mn` and frequencies `p`, the per-state
//! fitness is `W_m(p) = p_m Σ_n W_mn p_n`, the mean fitness is
//! `W(p) = Σ_m W_m(p)` and one generation maps `p_m ↦ W_m(p) / W(p)`.
//! The same drift can be written through the direction parameters
//! `V = 1 - W`; both forms are provided so they can be checked against
//! each other.

use crate::error::{Error, Result};
use crate::matrix::{DirectionMatrix, SurvivalMatrix};
use crate::scalar::{sum, Scalar};
use crate::simplex::SimplexVector;

fn dot<T: Scalar>(row: &[T], p: &[T]) -> T {
    row.iter()
        .zip(p)
        .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
}

/// `W_m(p) = p_m Σ_n W_mn p_n`.
pub fn fitness_component<T: Scalar>(w: &SurvivalMatrix<T>, p: &SimplexVector<T>, m: usize) -> Result<T> {
    p.check_states(w.states())?;
    p.check_index(m)?;
    let pv = p.values();
    Ok(pv[m].clone() * dot(w.row(m), pv))
}

fn fitness_vector<T: Scalar>(w: &SurvivalMatrix<T>, p: &[T]) -> Vec<T> {
    (0..w.states())
        .map(|m| p[m].clone() * dot(w.row(m), p))
        .collect()
}

/// `W(p) = Σ_m W_m(p)`.
pub fn mean_fitness<T: Scalar>(w: &SurvivalMatrix<T>, p: &SimplexVector<T>) -> Result<T> {
    p.check_states(w.states())?;
    Ok(sum(&fitness_vector(w, p.values())))
}

fn positive_fitness<T: Scalar>(total: T) -> Result<T> {
    if total <= T::degeneracy_threshold() {
        Err(Error::ZeroMeanFitness {
            value: total.to_f64_lossy(),
        })
    } else {
        Ok(total)
    }
}

/// One generation of selection: `p_m ↦ W_m(p) / W(p)`.
pub fn regression_step<T: Scalar>(w: &SurvivalMatrix<T>, p: &SimplexVector<T>) -> Result<SimplexVector<T>> {
    p.check_states(w.states())?;
    let fitness = fitness_vector(w, p.values());
    let total = positive_fitness(sum(&fitness))?;
    Ok(SimplexVector::from_trusted(
        fitness.into_iter().map(|f| f / total.clone()).collect(),
    ))
}

/// Unnormalized increment `V_0^(m)(p) = W_m(p) - p_m W(p)` for every state.
pub fn increment_numerators<T: Scalar>(w: &SurvivalMatrix<T>, p: &SimplexVector<T>) -> Result<Vec<T>> {
    p.check_states(w.states())?;
    let pv = p.values();
    let fitness = fitness_vector(w, pv);
    let total = sum(&fitness);
    Ok(fitness
        .into_iter()
        .zip(pv)
        .map(|(f, pm)| f - pm.clone() * total.clone())
        .collect())
}

/// Normalized increments `W_0^(m)(p) = V_0^(m)(p) / W(p)` for every state.
pub fn increment_vector<T: Scalar>(w: &SurvivalMatrix<T>, p: &SimplexVector<T>) -> Result<Vec<T>> {
    let total = positive_fitness(mean_fitness(w, p)?)?;
    Ok(increment_numerators(w, p)?
        .into_iter()
        .map(|v| v / total.clone())
        .collect())
}

/// `W_0^(m)(p)`, the expected change of `p_m` over one generation.
pub fn increment_drift<T: Scalar>(w: &SurvivalMatrix<T>, p: &SimplexVector<T>, m: usize) -> Result<T> {
    p.check_index(m)?;
    Ok(increment_vector(w, p)?.swap_remove(m))
}

pub fn direction_transform<T: Scalar>(w: &SurvivalMatrix<T>) -> DirectionMatrix<T> {
    w.to_direction()
}

/// `(V_m, p) = Σ_n V_mn p_n`.
pub fn scalar_product<T: Scalar>(v: &DirectionMatrix<T>, p: &SimplexVector<T>, m: usize) -> Result<T> {
    p.check_states(v.states())?;
    p.check_index(m)?;
    Ok(dot(v.row(m), p.values()))
}

fn scalar_products<T: Scalar>(v: &DirectionMatrix<T>, p: &[T]) -> Vec<T> {
    (0..v.states()).map(|m| dot(v.row(m), p)).collect()
}

/// `Σ_n p_n (V_n, p)`.
fn weighted_direction<T: Scalar>(p: &[T], products: &[T]) -> T {
    dot(p, products)
}

/// Drift numerator in direction form: `p_m [Σ_n p_n (V_n, p) - (V_m, p)]`.
pub fn drift_direction_form<T: Scalar>(v: &DirectionMatrix<T>, p: &SimplexVector<T>, m: usize) -> Result<T> {
    p.check_states(v.states())?;
    p.check_index(m)?;
    let pv = p.values();
    let products = scalar_products(v, pv);
    let average = weighted_direction(pv, &products);
    Ok(pv[m].clone() * (average - products[m].clone()))
}

/// All drift numerators in direction form.
pub fn drift_direction_vector<T: Scalar>(v: &DirectionMatrix<T>, p: &SimplexVector<T>) -> Result<Vec<T>> {
    p.check_states(v.states())?;
    let pv = p.values();
    let products = scalar_products(v, pv);
    let average = weighted_direction(pv, &products);
    Ok(pv
        .iter()
        .zip(products)
        .map(|(pm, vm)| pm.clone() * (average.clone() - vm))
        .collect())
}

/// Mean fitness in direction form: `W(p) = 1 - Σ_n p_n (V_n, p)`.
pub fn normalizer_direction_form<T: Scalar>(v: &DirectionMatrix<T>, p: &SimplexVector<T>) -> Result<T> {
    p.check_states(v.states())?;
    let pv = p.values();
    Ok(T::one() - weighted_direction(pv, &scalar_products(v, pv)))
}
