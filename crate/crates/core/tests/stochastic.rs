use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wfeq_core::{
    sample_multinomial, sample_next_generation, simulate_paths, PopulationState, RandomSeed,
    SimulationConfig, Survival,
};

fn example_w() -> Survival {
    Survival::from_rows(vec![vec![0.4, 1.0], vec![1.0, 0.8]]).unwrap()
}

fn config(jobs: Option<usize>) -> SimulationConfig {
    SimulationConfig {
        steps: 50,
        replicas: 16,
        seed: RandomSeed { seed: 11, stream: 3 },
        jobs,
    }
}

#[test]
fn thread_count_does_not_change_paths() {
    let w = Survival::from_rows(vec![
        vec![0.5, 0.9, 0.7],
        vec![0.9, 0.6, 1.0],
        vec![0.7, 1.0, 0.4],
    ])
    .unwrap();
    let initial = PopulationState::even(30, 3).unwrap();
    let one = simulate_paths(&w, &initial, &config(Some(1))).unwrap();
    let four = simulate_paths(&w, &initial, &config(Some(4))).unwrap();
    assert_eq!(one, four);
    let again = simulate_paths(&w, &initial, &config(None)).unwrap();
    assert_eq!(one, again);
}

#[test]
fn replicas_draw_distinct_streams() {
    let initial = PopulationState::even(50, 2).unwrap();
    let run = simulate_paths(&example_w(), &initial, &config(Some(2))).unwrap();
    assert_ne!(run.paths[0].states, run.paths[1].states);
    let other = SimulationConfig {
        seed: RandomSeed { seed: 11, stream: 4 },
        ..config(Some(2))
    };
    assert_ne!(run, simulate_paths(&example_w(), &initial, &other).unwrap());
}

#[test]
fn neutral_model_has_zero_mean_noise() {
    let w = Survival::filled(2, 1.0).unwrap();
    let initial = PopulationState::even(20, 2).unwrap();
    let cfg = SimulationConfig {
        steps: 20,
        replicas: 500,
        seed: RandomSeed::new(5),
        jobs: None,
    };
    let run = simulate_paths(&w, &initial, &cfg).unwrap();
    for s in &run.summary.states {
        assert!(s.empirical_mean_dmu.abs() <= 5.0 * s.std_error_mean);
    }
}

#[test]
fn zero_steps_is_rejected() {
    let initial = PopulationState::even(10, 2).unwrap();
    let cfg = SimulationConfig { steps: 0, ..config(None) };
    assert!(simulate_paths(&example_w(), &initial, &cfg).is_err());
}

#[test]
fn single_state_probability_takes_everyone() {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    assert_eq!(sample_multinomial(7, &[0.0, 1.0, 0.0], &mut rng), vec![0, 7, 0]);
    assert_eq!(sample_multinomial(7, &[1.0, 0.0], &mut rng), vec![7, 0]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn counts_stay_on_grid(n in 1u64..200, seed in any::<u64>(), steps in 1usize..20) {
        let initial = PopulationState::even(n, 2).unwrap();
        let cfg = SimulationConfig { steps, replicas: 2, seed: RandomSeed::new(seed), jobs: Some(1) };
        let run = simulate_paths(&example_w(), &initial, &cfg).unwrap();
        for path in &run.paths {
            prop_assert_eq!(path.states.len(), steps + 1);
            for s in &path.states {
                prop_assert_eq!(s.counts().iter().sum::<u64>(), n);
            }
            for (k, record) in path.records.iter().enumerate() {
                prop_assert_eq!(&record.realized, &path.states[k + 1].frequencies::<f64>());
                for m in 0..2 {
                    let rebuilt = record.predictable.values()[m] + record.delta_mu[m];
                    prop_assert!((rebuilt - record.realized.values()[m]).abs() <= 1e-15);
                }
            }
        }
    }

    #[test]
    fn next_generation_keeps_population(counts in prop::collection::vec(0u64..40, 2..5), seed in any::<u64>()) {
        prop_assume!(counts.iter().sum::<u64>() > 0);
        let states = counts.len();
        let w = Survival::filled(states, 0.7).unwrap();
        let s = PopulationState::new(counts.clone()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let next = sample_next_generation(&w, &s, &mut rng).unwrap();
        prop_assert_eq!(next.population_size(), s.population_size());
        prop_assert_eq!(next.states(), states);
    }
}
