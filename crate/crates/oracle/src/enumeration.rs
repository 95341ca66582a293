//! Exhaustive enumeration of one multinomial generation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use crate::rational::Rational;
use crate::step::exact_step;
use crate::{OracleError, Result};

/// Largest population for which all compositions are enumerated.
pub const MAX_ENUMERATION_N: u64 = 6;

#[derive(Clone, Debug, PartialEq)]
pub struct GenerationDistribution {
    pub population_size: u64,
    /// Offspring probabilities `V(p)`.
    pub predictable: Vec<Rational>,
    /// Every next-generation count vector with non-zero probability.
    pub outcomes: Vec<(Vec<u64>, Rational)>,
}

impl GenerationDistribution {
    pub fn total_probability(&self) -> Rational {
        self.outcomes
            .iter()
            .fold(Rational::zero(), |acc, (_, pr)| acc + pr)
    }

    fn delta_mu(&self, counts: &[u64], m: usize) -> Rational {
        BigRational::new(BigInt::from(counts[m]), BigInt::from(self.population_size))
            - &self.predictable[m]
    }

    /// `E[Δμ_m]` under the enumerated law.
    pub fn mean_delta_mu(&self, m: usize) -> Rational {
        self.outcomes
            .iter()
            .fold(Rational::zero(), |acc, (c, pr)| acc + pr * self.delta_mu(c, m))
    }

    /// `E[Δμ_m²]` under the enumerated law.
    pub fn second_moment_delta_mu(&self, m: usize) -> Rational {
        self.outcomes.iter().fold(Rational::zero(), |acc, (c, pr)| {
            let d = self.delta_mu(c, m);
            acc + pr * &d * &d
        })
    }

    /// `E[Δμ_m Δμ_n]`.
    pub fn cross_moment_delta_mu(&self, m: usize, n: usize) -> Rational {
        self.outcomes.iter().fold(Rational::zero(), |acc, (c, pr)| {
            acc + pr * self.delta_mu(c, m) * self.delta_mu(c, n)
        })
    }

    /// `V_m (1 - V_m)`.
    pub fn dispersion(&self, m: usize) -> Rational {
        let v = &self.predictable[m];
        v * (Rational::one() - v)
    }

    pub fn probability_of(&self, counts: &[u64]) -> Rational {
        self.outcomes
            .iter()
            .find(|(c, _)| c == counts)
            .map(|(_, pr)| pr.clone())
            .unwrap_or_else(Rational::zero)
    }
}

fn compositions(n: u64, parts: usize) -> Vec<Vec<u64>> {
    if parts == 1 {
        return vec![vec![n]];
    }
    let mut out = Vec::new();
    for first in (0..=n).rev() {
        for mut rest in compositions(n - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Law of the next generation's counts when `population_size` offspring
/// are drawn independently with probabilities `predictable`.
pub fn enumerate_from_probabilities(
    predictable: &[Rational],
    population_size: u64,
) -> Result<GenerationDistribution> {
    if population_size > MAX_ENUMERATION_N {
        return Err(OracleError::ScopeExceeded {
            n: population_size,
            max: MAX_ENUMERATION_N,
        });
    }
    let n_fact = factorial(population_size);
    let outcomes = compositions(population_size, predictable.len())
        .into_iter()
        .filter_map(|counts| {
            let denom = counts.iter().fold(BigInt::one(), |acc, &c| acc * factorial(c));
            let coefficient = BigRational::new(n_fact.clone(), denom);
            let pr = counts
                .iter()
                .zip(predictable)
                .fold(coefficient, |acc, (&c, q)| acc * Pow::pow(q, c as u32));
            (!pr.is_zero()).then_some((counts, pr))
        })
        .collect();
    Ok(GenerationDistribution {
        population_size,
        predictable: predictable.to_vec(),
        outcomes,
    })
}

/// Law of the next generation from current `counts` under survival matrix `w`.
pub fn enumerate_generation(w: &[Vec<Rational>], counts: &[u64]) -> Result<GenerationDistribution> {
    let n: u64 = counts.iter().sum();
    if n > MAX_ENUMERATION_N {
        return Err(OracleError::ScopeExceeded {
            n,
            max: MAX_ENUMERATION_N,
        });
    }
    if n == 0 {
        return Err(OracleError::DegenerateModel);
    }
    let p: Vec<Rational> = counts
        .iter()
        .map(|&c| BigRational::new(BigInt::from(c), BigInt::from(n)))
        .collect();
    let predictable = exact_step(w, &p)?;
    enumerate_from_probabilities(&predictable, n)
}
