//! Rational helpers and small-denominator instance generation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Rational = BigRational;
pub type RationalMatrix = Vec<Vec<Rational>>;

pub fn rat(numer: i64, denom: i64) -> Rational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn to_f64_vec(v: &[Rational]) -> Vec<f64> {
    v.iter().map(to_f64).collect()
}

pub fn to_f64_matrix(m: &[Vec<Rational>]) -> Vec<Vec<f64>> {
    m.iter().map(|row| to_f64_vec(row)).collect()
}

/// Exact rational value of a finite `f64`.
pub fn from_f64(x: f64) -> Rational {
    BigRational::from_float(x).expect("finite float")
}

pub fn sum(values: &[Rational]) -> Rational {
    values.iter().fold(Rational::zero(), |acc, v| acc + v)
}

pub fn product(values: &[Rational]) -> Rational {
    values.iter().fold(Rational::one(), |acc, v| acc * v)
}

/// Random rationals with denominators at most [`RationalSampler::MAX_DENOM`].
pub struct RationalSampler {
    rng: ChaCha8Rng,
}

impl RationalSampler {
    pub const MAX_DENOM: i64 = 64;

    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn states(&mut self, min: usize, max: usize) -> usize {
        self.rng.random_range(min..=max)
    }

    /// Rational in the closed interval `[0, 1]`.
    pub fn unit(&mut self) -> Rational {
        let d = self.rng.random_range(1..=Self::MAX_DENOM);
        let n = self.rng.random_range(0..=d);
        rat(n, d)
    }

    /// Rational in the open interval `(0, 1)`.
    pub fn open_unit(&mut self) -> Rational {
        let d = self.rng.random_range(2..=Self::MAX_DENOM);
        let n = self.rng.random_range(1..d);
        rat(n, d)
    }

    pub fn matrix(&mut self, states: usize) -> RationalMatrix {
        (0..states)
            .map(|_| (0..states).map(|_| self.unit()).collect())
            .collect()
    }

    /// Interior probability vector from integer weights in `1..=MAX_DENOM`.
    pub fn interior_simplex(&mut self, states: usize) -> Vec<Rational> {
        let weights: Vec<i64> = (0..states)
            .map(|_| self.rng.random_range(1..=Self::MAX_DENOM))
            .collect();
        let total: i64 = weights.iter().sum();
        weights.into_iter().map(|w| rat(w, total)).collect()
    }

    /// Probability vector that may have zero components.
    pub fn simplex(&mut self, states: usize) -> Vec<Rational> {
        loop {
            let weights: Vec<i64> = (0..states)
                .map(|_| self.rng.random_range(0..=Self::MAX_DENOM))
                .collect();
            let total: i64 = weights.iter().sum();
            if total > 0 {
                return weights.into_iter().map(|w| rat(w, total)).collect();
            }
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}
