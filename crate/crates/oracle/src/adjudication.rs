//! Executable checks that settle three misprinted formulas.
//!
//! Each check evaluates, on one concrete rational instance, the defining
//! (reference) quantity, the variant implemented in `wfeq-core` evaluated
//! in exact arithmetic, and the variant as printed. The implemented variant
//! must match the reference exactly; the printed one is a counterexample.

use std::fmt;

use num_traits::{One, Zero};
use wfeq_core::{
    binary_equilibrium, binary_fitness, fluctuation_drift_vector, BinaryModel,
    EquilibriumProfile, SimplexVector,
};

use crate::rational::{product, rat, Rational};
use crate::step::exact_increment_numerators;

#[derive(Clone, Debug, PartialEq)]
pub struct Adjudication {
    pub name: &'static str,
    /// Human-readable description of the instance.
    pub instance: String,
    pub reference: Vec<Rational>,
    pub implemented: Vec<Rational>,
    pub printed: Vec<Rational>,
}

impl Adjudication {
    pub fn implemented_matches(&self) -> bool {
        self.implemented == self.reference
    }

    pub fn printed_matches(&self) -> bool {
        self.printed == self.reference
    }
}

fn join(v: &[Rational]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

impl fmt::Display for Adjudication {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} at {}", self.name, self.instance)?;
        writeln!(f, "  reference   = ({})", join(&self.reference))?;
        writeln!(f, "  implemented = ({})", join(&self.implemented))?;
        write!(f, "  printed     = ({})", join(&self.printed))
    }
}

/// Equilibrium-form drift: prefactor `π p_m` (implemented) against
/// `π ρ_m` (printed), both compared with `W_m(p) - p_m W(p)` for the
/// diagonal model `V_m = π / ρ_m`.
pub fn adjudicate_fluctuation_prefactor() -> Adjudication {
    let rho = vec![rat(1, 2), rat(1, 3), rat(1, 6)];
    let p = vec![rat(1, 5), rat(3, 10), rat(1, 2)];
    let pi = product(&rho);
    let n = rho.len();

    let w: Vec<Vec<Rational>> = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| {
                    if r == c {
                        Rational::one() - &pi / &rho[r]
                    } else {
                        Rational::one()
                    }
                })
                .collect()
        })
        .collect();
    let reference = exact_increment_numerators(&w, &p).expect("square model");

    let profile = EquilibriumProfile::from_diagonal_equilibrium(
        &SimplexVector::new(rho.clone()).expect("exact simplex"),
    )
    .expect("interior equilibrium");
    let implemented = fluctuation_drift_vector(&profile, &SimplexVector::new(p.clone()).expect("exact simplex"))
        .expect("matching dimensions");

    let mean = p
        .iter()
        .zip(&rho)
        .fold(Rational::zero(), |acc, (pn, rn)| acc + pn * pn / rn);
    let printed = p
        .iter()
        .zip(&rho)
        .map(|(pm, rm)| &pi * rm * (&mean - pm / rm))
        .collect();

    Adjudication {
        name: "equilibrium-form drift prefactor",
        instance: format!("rho = ({}), p = ({})", join(&rho), join(&p)),
        reference,
        implemented,
        printed,
    }
}

/// Two-state fitness: `p_±(1 - π p_±/ρ_±)` (implemented, via
/// `p_±(1 - V_± p_±)`) against `p_±(1 - π p_∓/ρ_±)` (printed), both compared
/// with `p_±(W_± p_± + p_∓)` under `V_+ + V_- = 1`.
pub fn adjudicate_binary_fitness_index() -> Adjudication {
    let (v_plus, v_minus) = (rat(3, 5), rat(2, 5));
    let p = rat(3, 10);
    let q = Rational::one() - &p;
    let w_plus = Rational::one() - &v_plus;
    let w_minus = Rational::one() - &v_minus;

    let reference = vec![
        &p * (&w_plus * &p + &q),
        &q * (&w_minus * &q + &p),
    ];

    let model = BinaryModel::new(w_plus, w_minus).expect("parameters in (0, 1]");
    let (plus, minus) = binary_fitness(&model, &p).expect("frequency in [0, 1]");
    let implemented = vec![plus, minus];

    // Normalized case: rho_± = V_∓, pi = rho_+ rho_-.
    let (rho_plus, rho_minus) = (v_minus.clone(), v_plus.clone());
    let pi = &rho_plus * &rho_minus;
    let printed = vec![
        &p * (Rational::one() - &pi * &q / &rho_plus),
        &q * (Rational::one() - &pi * &p / &rho_minus),
    ];

    Adjudication {
        name: "two-state fitness index",
        instance: format!("V_+ = {v_plus}, V_- = {v_minus}, p_+ = {p}"),
        reference,
        implemented,
        printed,
    }
}

/// Two-state equilibrium: `ρ_+ = V_-/(V_+ + V_-)` (implemented) against
/// `ρ_+ = 1/V_+` (printed). The reference is the value the literal increment
/// numerator `W_+(p) - p W(p)` must take at an equilibrium: zero.
pub fn adjudicate_binary_equilibrium() -> Adjudication {
    let (v_plus, v_minus) = (rat(3, 5), rat(1, 5));
    let w_plus = Rational::one() - &v_plus;
    let w_minus = Rational::one() - &v_minus;
    let numerator = |p: &Rational| {
        let q = Rational::one() - p;
        let fitness_plus = p * (&w_plus * p + &q);
        let total = &w_plus * p * p + rat(2, 1) * p * &q + &w_minus * &q * &q;
        fitness_plus - p * total
    };

    let (rho_impl, _) = binary_equilibrium(&v_plus, &v_minus).expect("parameters in (0, 1)");
    let rho_printed = v_plus.recip();

    Adjudication {
        name: "two-state equilibrium",
        instance: format!(
            "V_+ = {v_plus}, V_- = {v_minus}; implemented rho_+ = {rho_impl}, printed rho_+ = {rho_printed}"
        ),
        reference: vec![Rational::zero()],
        implemented: vec![numerator(&rho_impl)],
        printed: vec![numerator(&rho_printed)],
    }
}
