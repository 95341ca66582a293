use proptest::prelude::*;
use wfeq_core::{
    balance_residual, binary_drift, binary_step, diagonal_from_equilibrium, drift_direction_form,
    drift_direction_vector, fluctuation_drift_vector, increment_drift, increment_numerators,
    increment_vector, iterate, mean_fitness, mean_fluctuation, normalizer_direction_form,
    regression_step, solve_equilibrium, Binary, Direction, IterateOptions, Profile, Simplex,
    Survival,
};

fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1.0)
}

fn simplex_from(weights: Vec<f64>) -> Simplex {
    Simplex::from_weights(weights).unwrap()
}

/// Interior point of a simplex with `states` components.
fn interior(states: usize) -> impl Strategy<Value = Simplex> {
    prop::collection::vec(0.01f64..1.0, states).prop_map(simplex_from)
}

/// Survival matrix with entries bounded away from zero, plus an interior state.
fn model_and_state() -> impl Strategy<Value = (Survival, Simplex)> {
    (2usize..=6).prop_flat_map(|n| {
        (
            prop::collection::vec(prop::collection::vec(0.05f64..=1.0, n), n)
                .prop_map(|rows| Survival::from_rows(rows).unwrap()),
            interior(n),
        )
    })
}

fn equilibrium_and_state() -> impl Strategy<Value = (Simplex, Simplex)> {
    (2usize..=6).prop_flat_map(|n| (interior(n), interior(n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn step_stays_on_simplex((w, p) in model_and_state()) {
        let next = regression_step(&w, &p).unwrap();
        let total: f64 = next.values().iter().sum();
        prop_assert!((total - 1.0).abs() < 1e-13);
        prop_assert!(next.values().iter().all(|&x| x >= 0.0));
    }

    #[test]
    fn increment_is_step_minus_state((w, p) in model_and_state()) {
        let next = regression_step(&w, &p).unwrap();
        let inc = increment_vector(&w, &p).unwrap();
        for m in 0..p.states() {
            prop_assert!(rel_err(inc[m], next.values()[m] - p.values()[m]) <= 1e-13);
            prop_assert_eq!(inc[m], increment_drift(&w, &p, m).unwrap());
        }
    }

    #[test]
    fn survival_and_direction_forms_agree((w, p) in model_and_state()) {
        let v = w.to_direction();
        prop_assert!(rel_err(mean_fitness(&w, &p).unwrap(), normalizer_direction_form(&v, &p).unwrap()) <= 1e-13);
        let num = increment_numerators(&w, &p).unwrap();
        let dir = drift_direction_vector(&v, &p).unwrap();
        for m in 0..p.states() {
            prop_assert!(rel_err(num[m], dir[m]) <= 1e-13);
            prop_assert_eq!(dir[m], drift_direction_form(&v, &p, m).unwrap());
        }
    }

    #[test]
    fn drift_sums_to_zero((w, p) in model_and_state()) {
        let total: f64 = increment_numerators(&w, &p).unwrap().iter().sum();
        prop_assert!(total.abs() <= 1e-14);
    }

    #[test]
    fn diagonal_round_trip(rho in (2usize..=6).prop_flat_map(interior)) {
        let v = diagonal_from_equilibrium(&rho).unwrap();
        prop_assert!(v.is_diagonal());
        let profile = solve_equilibrium(&v).unwrap();
        prop_assert!(profile.rho().max_abs_diff(&rho) <= 1e-10);
        prop_assert!(profile.diagonal() && profile.row_consistent() && profile.product_consistent());
    }

    #[test]
    fn equilibrium_is_fixed_point(rho in (2usize..=6).prop_flat_map(interior)) {
        let v = diagonal_from_equilibrium(&rho).unwrap();
        let profile = solve_equilibrium(&v).unwrap();
        for d in drift_direction_vector(&v, profile.rho()).unwrap() {
            prop_assert!(d.abs() <= 1e-12);
        }
        for d in fluctuation_drift_vector(&profile, profile.rho()).unwrap() {
            prop_assert!(d.abs() <= 1e-14);
        }
    }

    #[test]
    fn generic_solution_is_normalized_and_solves_system(
        rows in (2usize..=5).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(0.0f64..=1.0, n), n))
    ) {
        let v = Direction::from_rows(rows).unwrap();
        if let Ok(profile) = solve_equilibrium(&v) {
            let rho = profile.rho().values();
            prop_assert!((rho.iter().sum::<f64>() - 1.0).abs() <= 1e-10);
            for r in 0..v.states() {
                let vr: f64 = v.row(r).iter().zip(rho).map(|(a, b)| a * b).sum();
                prop_assert!(rel_err(vr, *profile.pi()) <= 1e-8);
            }
        }
    }

    #[test]
    fn balance_holds((rho, p) in equilibrium_and_state()) {
        let profile = Profile::from_diagonal_equilibrium(&rho).unwrap();
        prop_assert!(balance_residual(&profile, &p).unwrap().abs() <= 1e-13);
    }

    #[test]
    fn fluctuation_form_matches_diagonal_model((rho, p) in equilibrium_and_state()) {
        let profile = Profile::from_diagonal_equilibrium(&rho).unwrap();
        let v = diagonal_from_equilibrium(&rho).unwrap();
        let a = fluctuation_drift_vector(&profile, &p).unwrap();
        let b = drift_direction_vector(&v, &p).unwrap();
        for m in 0..p.states() {
            prop_assert!((a[m] - b[m]).abs() <= 1e-13);
        }
    }

    #[test]
    fn mean_fluctuation_at_least_one((rho, p) in equilibrium_and_state()) {
        let profile = Profile::from_diagonal_equilibrium(&rho).unwrap();
        prop_assert!(mean_fluctuation(&profile, &p).unwrap() >= 1.0 - 1e-12);
        prop_assert!((mean_fluctuation(&profile, &rho).unwrap() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn binary_matches_general_model(wp in 0.01f64..=1.0, wm in 0.01f64..=1.0, p in 0.0f64..=1.0) {
        let model = Binary::new(wp, wm).unwrap();
        let state = Simplex::new(vec![p, 1.0 - p]).unwrap();
        let w = model.survival_matrix();
        let general = regression_step(&w, &state).unwrap();
        prop_assert!((binary_step(&model, &p).unwrap() - general.values()[0]).abs() <= 1e-14);
        let num = increment_numerators(&w, &state).unwrap();
        prop_assert!((binary_drift(&model, &p).unwrap() - num[0]).abs() <= 1e-14);
    }

    #[test]
    fn binary_error_never_grows(wp in 0.05f64..0.95, wm in 0.05f64..0.95, p0 in 0.01f64..0.99) {
        let model = Binary::new(wp, wm).unwrap();
        let (rho, _) = model.equilibrium().unwrap();
        let options = IterateOptions { max_steps: 2000, ..IterateOptions::default() };
        let start = Simplex::new(vec![p0, 1.0 - p0]).unwrap();
        let trajectory = iterate(&model, &start, &options).unwrap();
        let errors: Vec<f64> = trajectory.states.iter().map(|s| (s.values()[0] - rho).abs()).collect();
        for pair in errors.windows(2) {
            prop_assert!(pair[1] <= pair[0] + 1e-15);
        }
    }
}
