//! Finite-population sampling around the deterministic regression map.
//!
//! The frequency vector of `N` individuals evolves as
//! `S_N(k+1) = V(S_N(k)) + Δμ_N(k+1)`: the predictable part `V(p)` is one
//! regression step and `Δμ_N` is a martingale difference produced by
//! multinomial resampling of `N` offspring with probabilities `V(p)`. Its
//! conditional second moment is `V_m(p)(1 - V_m(p)) / N`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::SurvivalMatrix;
use crate::model::regression_step;
use crate::scalar::Scalar;
use crate::simplex::SimplexVector;

/// Counts of `N` individuals over the `M + 1` states.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PopulationState {
    counts: Vec<u64>,
    population_size: u64,
}

impl PopulationState {
    pub fn new(counts: Vec<u64>) -> Result<Self> {
        if counts.len() < 2 {
            return Err(Error::TooFewStates {
                states: counts.len(),
            });
        }
        let population_size: u64 = counts.iter().sum();
        if population_size == 0 {
            return Err(Error::InvalidParameter(
                "population size must be at least 1".into(),
            ));
        }
        Ok(Self {
            counts,
            population_size,
        })
    }

    /// `N` individuals spread as evenly as possible, remainder to the
    /// lowest-indexed states.
    pub fn even(population_size: u64, states: usize) -> Result<Self> {
        if states < 2 {
            return Err(Error::TooFewStates { states });
        }
        let base = population_size / states as u64;
        let extra = (population_size % states as u64) as usize;
        Self::new(
            (0..states)
                .map(|m| base + u64::from(m < extra))
                .collect(),
        )
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn population_size(&self) -> u64 {
        self.population_size
    }

    pub fn states(&self) -> usize {
        self.counts.len()
    }

    /// `S_N = counts / N`.
    pub fn frequencies<T: Scalar>(&self) -> SimplexVector<T> {
        let n = T::from_u64(self.population_size).expect("u64 is representable");
        SimplexVector::from_trusted(
            self.counts
                .iter()
                .map(|&c| T::from_u64(c).expect("u64 is representable") / n.clone())
                .collect(),
        )
    }
}

/// One generation's decomposition `realized = predictable + delta_mu`.
#[derive(Clone, Debug, PartialEq)]
pub struct MartingaleRecord<T> {
    pub delta_mu: Vec<T>,
    pub predictable: SimplexVector<T>,
    pub realized: SimplexVector<T>,
}

/// Seed plus stream id. Each `(seed, stream)` pair keys its own ChaCha
/// generator and replica `r` draws from ChaCha stream `r` of that key, so
/// replicas never share state and reproduce bit-for-bit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct RandomSeed {
    pub seed: u64,
    pub stream: u64,
}

impl RandomSeed {
    pub fn new(seed: u64) -> Self {
        Self { seed, stream: 0 }
    }

    pub fn replica_rng(&self, replica: u64) -> ChaCha8Rng {
        let mut key = [0u8; 32];
        key[..8].copy_from_slice(&self.seed.to_le_bytes());
        key[8..16].copy_from_slice(&self.stream.to_le_bytes());
        let mut rng = ChaCha8Rng::from_seed(key);
        rng.set_stream(replica);
        rng
    }
}

/// Predictable component `V(S_N(k))`, i.e. one regression step from the
/// current frequencies.
pub fn predictable_component<T: Scalar>(w: &SurvivalMatrix<T>, s: &PopulationState) -> Result<SimplexVector<T>> {
    regression_step(w, &s.frequencies())
}

/// Multinomial draw of `n` individuals via sequential conditional binomials.
pub fn sample_multinomial<R: Rng + ?Sized>(n: u64, probabilities: &[f64], rng: &mut R) -> Vec<u64> {
    let k = probabilities.len();
    let mut counts = vec![0u64; k];
    let mut remaining = n;
    let mut mass = 1.0f64;
    for (i, &p) in probabilities.iter().enumerate().take(k.saturating_sub(1)) {
        if remaining == 0 {
            break;
        }
        let q = if mass > 0.0 { (p / mass).clamp(0.0, 1.0) } else { 0.0 };
        let draw = Binomial::new(remaining, q)
            .expect("probability clamped to [0, 1]")
            .sample(rng);
        counts[i] = draw;
        remaining -= draw;
        mass -= p;
    }
    if let Some(last) = counts.last_mut() {
        *last += remaining;
    }
    counts
}

/// Draws the next generation: `N` offspring, each independently of state
/// `m` with probability `V_m(S_N(k))`.
pub fn sample_next_generation<T: Scalar, R: Rng + ?Sized>(
    w: &SurvivalMatrix<T>,
    s: &PopulationState,
    rng: &mut R,
) -> Result<PopulationState> {
    let predictable = predictable_component(w, s)?;
    sample_from(&predictable, s.population_size, rng)
}

fn sample_from<T: Scalar, R: Rng + ?Sized>(
    predictable: &SimplexVector<T>,
    population_size: u64,
    rng: &mut R,
) -> Result<PopulationState> {
    let probabilities: Vec<f64> = predictable.values().iter().map(T::to_f64_lossy).collect();
    PopulationState::new(sample_multinomial(population_size, &probabilities, rng))
}

/// `Δμ = S_N(k+1) - V(S_N(k))`.
pub fn martingale_difference<T: Scalar>(
    predictable: &SimplexVector<T>,
    realized: &PopulationState,
) -> Result<MartingaleRecord<T>> {
    predictable.check_states(realized.states())?;
    let realized = realized.frequencies::<T>();
    let delta_mu = realized
        .values()
        .iter()
        .zip(predictable.values())
        .map(|(r, v)| r.clone() - v.clone())
        .collect();
    Ok(MartingaleRecord {
        delta_mu,
        predictable: predictable.clone(),
        realized,
    })
}

/// Per-individual dispersion `σ_m²(p) = V_m(p)(1 - V_m(p))`. The variance
/// of the averaged frequency is this value divided by `N`.
pub fn conditional_dispersion<T: Scalar>(w: &SurvivalMatrix<T>, p: &SimplexVector<T>, m: usize) -> Result<T> {
    p.check_index(m)?;
    let vm = regression_step(w, p)?.values()[m].clone();
    Ok(vm.clone() * (T::one() - vm))
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimulationConfig {
    pub steps: usize,
    pub replicas: usize,
    pub seed: RandomSeed,
    /// Worker threads for replicas; `None` uses the rayon default.
    pub jobs: Option<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReplicaPath<T> {
    pub replica: usize,
    /// `steps + 1` states starting from the initial one.
    pub states: Vec<PopulationState>,
    pub records: Vec<MartingaleRecord<T>>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StateMoments {
    pub empirical_mean_dmu: f64,
    /// Mean of `Δμ²`; the conditional mean of `Δμ` is zero, so this
    /// estimates the conditional variance averaged over visited states.
    pub empirical_var_dmu: f64,
    /// Mean of `σ_m²(p_k) / N` over the same conditioning states.
    pub predicted_var: f64,
    pub n_samples: usize,
    /// `sqrt(predicted_var / n_samples)`.
    pub std_error_mean: f64,
    /// Standard error of `empirical_var_dmu` from the sample fourth moment.
    pub std_error_var: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MomentSummary {
    pub states: Vec<StateMoments>,
    /// Empirical `E[Δμ_m Δμ_n]`.
    pub empirical_cov_dmu: Vec<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StochasticRun<T> {
    pub paths: Vec<ReplicaPath<T>>,
    pub summary: MomentSummary,
}

/// Conditional moment summary over records, grouped by the conditioning
/// state carried in each record's predictable component.
pub fn moment_summary<'a, T: Scalar>(
    records: impl IntoIterator<Item = &'a MartingaleRecord<T>>,
    population_size: u64,
    states: usize,
) -> MomentSummary {
    let n_pop = population_size as f64;
    let mut sum = vec![0.0; states];
    let mut sum_sq = vec![0.0; states];
    let mut sum_fourth = vec![0.0; states];
    let mut predicted = vec![0.0; states];
    let mut cross = vec![vec![0.0; states]; states];
    let mut count = 0usize;
    for record in records {
        count += 1;
        let d: Vec<f64> = record.delta_mu.iter().map(T::to_f64_lossy).collect();
        for m in 0..states {
            let v = record.predictable.values()[m].to_f64_lossy();
            sum[m] += d[m];
            sum_sq[m] += d[m] * d[m];
            sum_fourth[m] += d[m].powi(4);
            predicted[m] += v * (1.0 - v) / n_pop;
            for n in 0..states {
                cross[m][n] += d[m] * d[n];
            }
        }
    }
    let c = count.max(1) as f64;
    let moments = (0..states)
        .map(|m| {
            let second = sum_sq[m] / c;
            let fourth = sum_fourth[m] / c;
            let predicted_var = predicted[m] / c;
            StateMoments {
                empirical_mean_dmu: sum[m] / c,
                empirical_var_dmu: second,
                predicted_var,
                n_samples: count,
                std_error_mean: (predicted_var / c).sqrt(),
                std_error_var: ((fourth - second * second).max(0.0) / c).sqrt(),
            }
        })
        .collect();
    MomentSummary {
        states: moments,
        empirical_cov_dmu: cross
            .into_iter()
            .map(|row| row.into_iter().map(|x| x / c).collect())
            .collect(),
    }
}

fn run_replica<T: Scalar>(
    w: &SurvivalMatrix<T>,
    initial: &PopulationState,
    steps: usize,
    seed: &RandomSeed,
    replica: usize,
) -> Result<ReplicaPath<T>> {
    let mut rng = seed.replica_rng(replica as u64);
    let mut states = Vec::with_capacity(steps + 1);
    let mut records = Vec::with_capacity(steps);
    let mut current = initial.clone();
    for _ in 0..steps {
        let predictable = predictable_component(w, &current)?;
        let next = sample_from(&predictable, current.population_size, &mut rng)?;
        records.push(martingale_difference(&predictable, &next)?);
        states.push(std::mem::replace(&mut current, next));
    }
    states.push(current);
    Ok(ReplicaPath {
        replica,
        states,
        records,
    })
}

/// Runs independent replicas from `initial` and summarizes the martingale
/// differences. Output is independent of the number of worker threads.
pub fn simulate_paths<T: Scalar>(
    w: &SurvivalMatrix<T>,
    initial: &PopulationState,
    config: &SimulationConfig,
) -> Result<StochasticRun<T>> {
    if config.steps == 0 || config.replicas == 0 {
        return Err(Error::InvalidParameter(
            "steps and replicas must be at least 1".into(),
        ));
    }
    if initial.states() != w.states() {
        return Err(Error::DimensionMismatch {
            expected: w.states(),
            found: initial.states(),
        });
    }
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(jobs) = config.jobs {
        builder = builder.num_threads(jobs.max(1));
    }
    let pool = builder
        .build()
        .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
    let paths: Vec<ReplicaPath<T>> = pool.install(|| {
        (0..config.replicas)
            .into_par_iter()
            .map(|r| run_replica(w, initial, config.steps, &config.seed, r))
            .collect::<Result<_>>()
    })?;
    let summary = moment_summary(
        paths.iter().flat_map(|p| p.records.iter()),
        initial.population_size(),
        initial.states(),
    );
    Ok(StochasticRun { paths, summary })
}
