use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wfeq_core::{
    balance_residual, drift_direction_vector, fluctuation_drift_vector, increment_numerators,
    regression_step, sample_multinomial, solve_equilibrium, BigRational, Direction,
    ExactDirection, ExactProfile, ExactSimplex, ExactSurvival, Simplex, Survival,
};
use wfeq_oracle::rational::{to_f64, to_f64_matrix, to_f64_vec};
use wfeq_oracle::{
    enumerate_from_probabilities, enumerate_generation, exact_equilibrium,
    exact_increment_numerators, exact_step, rat, OracleError, Rational, RationalSampler,
};

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

#[test]
fn float_step_matches_exact_step() {
    let mut sampler = RationalSampler::new(1);
    let mut checked = 0;
    while checked < 500 {
        let n = sampler.states(2, 6);
        let w = sampler.matrix(n);
        let p = sampler.interior_simplex(n);
        let Ok(exact) = exact_step(&w, &p) else { continue };
        let fw = Survival::from_rows(to_f64_matrix(&w)).unwrap();
        let fp = Simplex::new(to_f64_vec(&p)).unwrap();
        let step = regression_step(&fw, &fp).unwrap();
        let num = increment_numerators(&fw, &fp).unwrap();
        let exact_num = exact_increment_numerators(&w, &p).unwrap();
        for m in 0..n {
            assert!(close(step.values()[m], to_f64(&exact[m]), 1e-13));
            assert!((num[m] - to_f64(&exact_num[m])).abs() <= 1e-14);
        }
        checked += 1;
    }
}

#[test]
fn exact_core_matches_literal_formulas() {
    let mut sampler = RationalSampler::new(2);
    for _ in 0..100 {
        let n = sampler.states(2, 4);
        let w = sampler.matrix(n);
        let p = sampler.interior_simplex(n);
        let ew = ExactSurvival::from_rows(w.clone()).unwrap();
        let ep = ExactSimplex::new(p.clone()).unwrap();
        assert_eq!(increment_numerators(&ew, &ep).unwrap(), exact_increment_numerators(&w, &p).unwrap());
        assert_eq!(
            drift_direction_vector(&ew.to_direction(), &ep).unwrap(),
            exact_increment_numerators(&w, &p).unwrap()
        );
    }
}

#[test]
fn float_equilibrium_matches_exact_solution() {
    let mut sampler = RationalSampler::new(3);
    let mut checked = 0;
    while checked < 500 {
        let n = sampler.states(2, 5);
        let v = sampler.matrix(n);
        let exact = match exact_equilibrium(&v) {
            Ok(e) => e,
            Err(OracleError::SingularDirectionMatrix) => continue,
            Err(e) => panic!("{e}"),
        };
        let float = solve_equilibrium(&Direction::from_rows(to_f64_matrix(&v)).unwrap());
        let admissible = exact.rho.iter().all(|r| *r > Rational::zero());
        match float {
            Ok(profile) => {
                assert!(admissible);
                for m in 0..n {
                    assert!(close(profile.rho().values()[m], to_f64(&exact.rho[m]), 1e-8));
                }
                assert!(close(*profile.pi(), to_f64(&exact.pi), 1e-8));
                checked += 1;
            }
            // Ill-conditioned or inadmissible instances may be rejected.
            Err(_) => continue,
        }
    }
}

#[test]
fn exact_fixed_point_and_balance_are_zero() {
    let mut sampler = RationalSampler::new(4);
    for _ in 0..100 {
        let n = sampler.states(2, 5);
        let rho = ExactSimplex::new(sampler.interior_simplex(n)).unwrap();
        let p = ExactSimplex::new(sampler.interior_simplex(n)).unwrap();
        let profile = ExactProfile::from_diagonal_equilibrium(&rho).unwrap();
        assert!(balance_residual(&profile, &p).unwrap().is_zero());
        assert!(fluctuation_drift_vector(&profile, &rho).unwrap().iter().all(Zero::is_zero));

        let v = wfeq_core::diagonal_from_equilibrium(&rho).unwrap();
        assert!(drift_direction_vector(&v, &rho).unwrap().iter().all(Zero::is_zero));
        let solved = solve_equilibrium::<BigRational>(&v).unwrap();
        assert_eq!(solved.rho(), &rho);
        let literal = exact_equilibrium(&v.to_rows()).unwrap();
        assert_eq!(literal.rho, rho.values());
    }
}

#[test]
fn exact_generic_direction_matrix_has_product_mismatch() {
    let v = ExactDirection::from_rows(vec![
        vec![rat(1, 2), rat(1, 5), rat(1, 10)],
        vec![rat(1, 10), rat(3, 5), rat(1, 5)],
        vec![rat(1, 5), rat(1, 10), rat(7, 10)],
    ])
    .unwrap();
    let profile = solve_equilibrium(&v).unwrap();
    let literal = exact_equilibrium(&v.to_rows()).unwrap();
    assert_eq!(profile.rho().values(), literal.rho.as_slice());
    assert_eq!(profile.pi(), &literal.pi);
    assert!(!profile.product_consistent());
    assert!(profile.row_consistent());
}

#[test]
fn enumerated_moments_are_exact() {
    let mut sampler = RationalSampler::new(5);
    for n in 1..=4u64 {
        for _ in 0..20 {
            let w = sampler.matrix(2);
            let c0 = rand::Rng::random_range(sampler.rng(), 0..=n);
            let Ok(dist) = enumerate_generation(&w, &[c0, n - c0]) else { continue };
            assert_eq!(dist.total_probability(), rat(1, 1));
            let size = Rational::from_integer(n.into());
            for m in 0..2 {
                assert!(dist.mean_delta_mu(m).is_zero());
                assert_eq!(dist.second_moment_delta_mu(m), dist.dispersion(m) / &size);
            }
            assert_eq!(dist.cross_moment_delta_mu(0, 1), -dist.dispersion(0) / &size);
        }
    }
}

#[test]
fn sampler_frequencies_match_enumeration() {
    let q = [rat(3, 10), rat(1, 2), rat(1, 5)];
    let dist = enumerate_from_probabilities(&q, 2).unwrap();
    let probs = to_f64_vec(&q);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let draws = 200_000;
    let mut tally = std::collections::HashMap::new();
    for _ in 0..draws {
        *tally.entry(sample_multinomial(2, &probs, &mut rng)).or_insert(0usize) += 1;
    }
    for (counts, pr) in &dist.outcomes {
        let expected = to_f64(pr);
        let observed = *tally.get(counts).unwrap_or(&0) as f64 / draws as f64;
        let se = (expected * (1.0 - expected) / draws as f64).sqrt();
        assert!((observed - expected).abs() <= 5.0 * se, "{counts:?}: {observed} vs {expected}");
    }
    assert_eq!(tally.len(), dist.outcomes.len());
}
