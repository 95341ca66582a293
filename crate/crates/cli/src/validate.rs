//! Identity checks run against a user model.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use wfeq_core::{
    balance_residual, drift_direction_vector, fluctuation_drift_vector, increment_numerators,
    increment_vector, mean_fitness, mean_fluctuation, normalizer_direction_form,
    regression_step, solve_equilibrium, DirectionMatrix, Error, ModelFileError, ModelSpec,
    Profile, SimplexVector, SurvivalMatrix,
};

use crate::args::ValidateArgs;
use crate::output::write_json;
use crate::{exit, output, CliError};

const ALGEBRA_TOL: f64 = 1e-12;
const FIXED_POINT_TOL: f64 = 1e-12;
const BALANCE_TOL: f64 = 1e-13;

#[derive(Debug)]
enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug)]
struct Check {
    name: &'static str,
    status: Status,
    residual: Option<f64>,
    tolerance: Option<f64>,
    detail: Option<String>,
}

impl Check {
    fn measured(name: &'static str, residual: Result<f64, Error>, tolerance: f64) -> Self {
        match residual {
            Ok(r) => Self {
                name,
                status: if r <= tolerance { Status::Pass } else { Status::Fail },
                residual: Some(r),
                tolerance: Some(tolerance),
                detail: None,
            },
            Err(e) => Self::failed(name, e.to_string()),
        }
    }

    fn failed(name: &'static str, detail: String) -> Self {
        Self {
            name,
            status: Status::Fail,
            residual: None,
            tolerance: None,
            detail: Some(detail),
        }
    }

    fn skipped(name: &'static str, detail: &str) -> Self {
        Self {
            name,
            status: Status::Skipped,
            residual: None,
            tolerance: None,
            detail: Some(detail.to_string()),
        }
    }

    fn passed(&self) -> bool {
        !matches!(self.status, Status::Fail)
    }

    fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "status": match self.status {
                Status::Pass => "pass",
                Status::Fail => "fail",
                Status::Skipped => "skipped",
            },
            "residual": self.residual,
            "tolerance": self.tolerance,
            "detail": self.detail,
        })
    }
}

/// Flat random points of the open simplex.
fn sample_states(states: usize, count: usize, seed: u64) -> Vec<SimplexVector<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let weights = (0..states)
                .map(|_| -(1.0 - rng.random::<f64>()).ln() + f64::MIN_POSITIVE)
                .collect();
            SimplexVector::from_weights(weights).expect("positive weights")
        })
        .collect()
}

fn max_over<F>(samples: &[SimplexVector<f64>], mut f: F) -> Result<f64, Error>
where
    F: FnMut(&SimplexVector<f64>) -> Result<f64, Error>,
{
    samples.iter().try_fold(0.0f64, |acc, p| Ok(acc.max(f(p)?)))
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0f64, |acc, (x, y)| acc.max((x - y).abs()))
}

fn algebraic_checks(w: &SurvivalMatrix<f64>, v: &DirectionMatrix<f64>, samples: &[SimplexVector<f64>]) -> Vec<Check> {
    vec![
        Check::measured(
            "step_equals_increment",
            max_over(samples, |p| {
                let step = regression_step(w, p)?;
                let moved: Vec<f64> = step.values().iter().zip(p.values()).map(|(s, x)| s - x).collect();
                Ok(max_diff(&moved, &increment_vector(w, p)?))
            }),
            ALGEBRA_TOL,
        ),
        Check::measured(
            "normalizer_equivalence",
            max_over(samples, |p| Ok((mean_fitness(w, p)? - normalizer_direction_form(v, p)?).abs())),
            ALGEBRA_TOL,
        ),
        Check::measured(
            "drift_equivalence",
            max_over(samples, |p| {
                Ok(max_diff(&increment_numerators(w, p)?, &drift_direction_vector(v, p)?))
            }),
            ALGEBRA_TOL,
        ),
        Check::measured(
            "zero_sum_drift",
            max_over(samples, |p| Ok(increment_numerators(w, p)?.iter().sum::<f64>().abs())),
            ALGEBRA_TOL,
        ),
    ]
}

fn equilibrium_checks(v: &DirectionMatrix<f64>, profile: &Profile, samples: &[SimplexVector<f64>]) -> Vec<Check> {
    let rho = profile.rho();
    let mut checks = vec![
        Check::measured(
            "equilibrium_normalization",
            Ok((rho.values().iter().sum::<f64>() - 1.0).abs()),
            ALGEBRA_TOL,
        ),
        Check::measured(
            "fixed_point",
            drift_direction_vector(v, rho).map(|d| d.iter().fold(0.0f64, |a, x| a.max(x.abs()))),
            FIXED_POINT_TOL,
        ),
        Check::measured(
            "balance",
            max_over(samples, |p| Ok(balance_residual(profile, p)?.abs())),
            BALANCE_TOL,
        ),
        Check::measured(
            "mean_fluctuation_at_least_one",
            max_over(samples, |p| Ok((1.0 - mean_fluctuation(profile, p)?).max(0.0))),
            ALGEBRA_TOL,
        ),
    ];
    if profile.diagonal() && profile.row_consistent() {
        checks.push(Check::measured(
            "fluctuation_equivalence",
            max_over(samples, |p| {
                Ok(max_diff(&fluctuation_drift_vector(profile, p)?, &drift_direction_vector(v, p)?))
            }),
            ALGEBRA_TOL,
        ));
    } else {
        checks.push(Check::skipped(
            "fluctuation_equivalence",
            "model is not in the diagonal subclass",
        ));
    }
    checks
}

/// Builds the report; the flag is true when every check passed or was skipped.
pub fn report(model: &ModelSpec, samples: usize, seed: u64) -> (Value, bool) {
    let w = match model.survival() {
        Ok(w) => w,
        Err(e) => {
            let check = Check::failed("model", e.to_string());
            return (json!({"passed": false, "checks": [check.to_json()], "flags": null}), false);
        }
    };
    let v = w.to_direction();
    let points = sample_states(w.states(), samples, seed);
    let mut checks = algebraic_checks(&w, &v, &points);
    let flags = match solve_equilibrium(&v) {
        Ok(profile) => {
            checks.extend(equilibrium_checks(&v, &profile, &points));
            json!({
                "product_consistent": profile.product_consistent(),
                "row_consistent": profile.row_consistent(),
                "diagonal": profile.diagonal(),
            })
        }
        Err(e) => {
            checks.push(Check::skipped("equilibrium", &format!("no interior equilibrium: {e}")));
            Value::Null
        }
    };
    let passed = checks.iter().all(Check::passed);
    let report = json!({
        "passed": passed,
        "checks": checks.iter().map(Check::to_json).collect::<Vec<_>>(),
        "flags": flags,
    });
    (report, passed)
}

pub fn run(args: &ValidateArgs) -> Result<i32, CliError> {
    let (report, passed) = match ModelSpec::load(&args.model) {
        Ok(model) => report(&model, args.samples, args.seed),
        Err(ModelFileError::Invalid(e)) => {
            let check = Check::failed("model", e.to_string());
            (json!({"passed": false, "checks": [check.to_json()], "flags": null}), false)
        }
        Err(e) => return Err(CliError::usage(format!("{}: {e}", args.model.display()))),
    };
    let mut out = output::open(args.output.out.as_deref(), output::stdout())?;
    write_json(&mut *out, &report)?;
    Ok(if passed { exit::SUCCESS } else { exit::VALIDATION_FAILED })
}
