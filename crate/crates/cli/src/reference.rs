//! Exact values for the worked examples in the README.

use num_traits::One;
use serde_json::{json, Value};
use wfeq_oracle::{
    adjudicate_binary_equilibrium, adjudicate_binary_fitness_index,
    adjudicate_fluctuation_prefactor, enumerate_generation, exact_equilibrium,
    exact_increment_numerators, exact_mean_fitness, exact_step, rat, Adjudication, Rational,
};

fn text(values: &[Rational]) -> Vec<String> {
    values.iter().map(ToString::to_string).collect()
}

fn adjudication(a: &Adjudication) -> Value {
    json!({
        "name": a.name,
        "instance": a.instance,
        "reference": text(&a.reference),
        "implemented": text(&a.implemented),
        "printed": text(&a.printed),
        "implemented_matches": a.implemented_matches(),
        "printed_matches": a.printed_matches(),
    })
}

fn regression_example() -> Value {
    let w = vec![vec![rat(2, 5), rat(1, 1)], vec![rat(1, 1), rat(4, 5)]];
    let p = vec![rat(1, 2), rat(1, 2)];
    json!({
        "W": [["2/5", "1"], ["1", "4/5"]],
        "p": ["1/2", "1/2"],
        "mean_fitness": exact_mean_fitness(&w, &p).expect("positive fitness").to_string(),
        "increment_numerators": text(&exact_increment_numerators(&w, &p).expect("square model")),
        "step": text(&exact_step(&w, &p).expect("positive fitness")),
    })
}

fn diagonal_equilibrium_example() -> Value {
    let rho = [rat(1, 2), rat(1, 3), rat(1, 6)];
    let pi: Rational = rho.iter().product();
    let v: Vec<Vec<Rational>> = (0..3)
        .map(|r| {
            (0..3)
                .map(|c| if r == c { &pi / &rho[r] } else { rat(0, 1) })
                .collect()
        })
        .collect();
    let solved = exact_equilibrium(&v).expect("invertible diagonal");
    json!({
        "rho_in": text(&rho),
        "V_diagonal": text(&(0..3).map(|m| v[m][m].clone()).collect::<Vec<_>>()),
        "rho": text(&solved.rho),
        "pi": solved.pi.to_string(),
        "inverse_row_sums": text(&solved.inverse_row_sums),
    })
}

fn binary_example() -> Value {
    let (w_plus, w_minus) = (rat(2, 5), rat(4, 5));
    let v_plus = Rational::one() - &w_plus;
    let v_minus = Rational::one() - &w_minus;
    let total = &v_plus + &v_minus;
    json!({
        "w_plus": w_plus.to_string(),
        "w_minus": w_minus.to_string(),
        "rho_plus": (&v_minus / &total).to_string(),
        "rho_minus": (&v_plus / &total).to_string(),
    })
}

fn sampling_example() -> Value {
    let w = vec![vec![rat(2, 5), rat(1, 1)], vec![rat(1, 1), rat(4, 5)]];
    let dist = enumerate_generation(&w, &[1, 1]).expect("small population");
    json!({
        "counts": [1, 1],
        "population_size": dist.population_size,
        "predictable": text(&dist.predictable),
        "mean_delta_mu": text(&[dist.mean_delta_mu(0), dist.mean_delta_mu(1)]),
        "second_moment_delta_mu": text(&[dist.second_moment_delta_mu(0), dist.second_moment_delta_mu(1)]),
        "dispersion": text(&[dist.dispersion(0), dist.dispersion(1)]),
    })
}

pub fn report() -> Value {
    json!({
        "regression_step": regression_example(),
        "diagonal_equilibrium": diagonal_equilibrium_example(),
        "binary_equilibrium": binary_example(),
        "sampling": sampling_example(),
        "adjudications": [
            adjudication(&adjudicate_fluctuation_prefactor()),
            adjudication(&adjudicate_binary_fitness_index()),
            adjudication(&adjudicate_binary_equilibrium()),
        ],
    })
}
