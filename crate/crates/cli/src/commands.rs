use std::io::Write;
use std::path::Path;

use serde_json::{json, Value};
use wfeq_core::{
    iterate, simulate_paths, solve_equilibrium, BinaryModel, IncrementMap, IterateOptions,
    ModelSpec, PopulationState, RandomSeed, SimplexVector, SimulationConfig, Trajectory,
};

use crate::args::{
    BinaryArgs, Cli, Command, EquilibriumArgs, Form, IterationArgs, OracleArgs, SimulateArgs,
    StochasticArgs,
};
use crate::output::{self, state_columns, write_json, write_paths, write_trajectory};
use crate::{exit, validate, CliError};

/// Runs a parsed command and returns its exit code.
pub fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Equilibrium(args) => equilibrium(&args),
        Command::Simulate(args) => simulate(&args),
        Command::SimulateStochastic(args) => simulate_stochastic(&args),
        Command::Binary(args) => binary(&args),
        Command::Validate(args) => validate::run(&args),
        Command::Oracle(args) => oracle(&args),
    }
}

fn load(path: &Path) -> Result<ModelSpec, CliError> {
    ModelSpec::load(path).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

fn main_output(path: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(output::open(path, output::stdout())?)
}

fn summary_output(path: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(output::open(path, output::stderr())?)
}

fn equilibrium(args: &EquilibriumArgs) -> Result<i32, CliError> {
    let model = load(&args.model)?;
    let profile = solve_equilibrium(&model.direction()?)?;
    let report = json!({
        "rho": profile.rho().values(),
        "pi": profile.pi(),
        "inverse_row_sums": profile.inverse_row_sums(),
        "product_consistent": profile.product_consistent(),
        "row_consistent": profile.row_consistent(),
        "diagonal": profile.diagonal(),
    });
    write_json(&mut *main_output(args.output.out.as_deref())?, &report)?;
    Ok(exit::SUCCESS)
}

fn iterate_options(args: &IterationArgs, allow_boundary: bool) -> Result<IterateOptions<f64>, CliError> {
    if !args.tol.is_finite() || args.tol <= 0.0 {
        return Err(CliError::usage("--tol must be positive and finite"));
    }
    Ok(IterateOptions {
        max_steps: usize::try_from(args.steps).map_err(|_| CliError::usage("--steps too large"))?,
        tol: args.tol,
        allow_boundary,
    })
}

fn finish_trajectory(
    trajectory: &Trajectory<f64>,
    columns: &[String],
    rho: Value,
    pi: Value,
    iteration: &IterationArgs,
    out: Option<&Path>,
) -> Result<i32, CliError> {
    let mut main = main_output(out)?;
    write_trajectory(&mut *main, columns, &trajectory.states)?;
    main.flush()?;
    let summary = json!({
        "converged": trajectory.converged,
        "steps_taken": trajectory.steps_taken,
        "final_increment_norm": trajectory.final_increment_norm,
        "rho": rho,
        "pi": pi,
    });
    write_json(&mut *summary_output(iteration.summary.as_deref())?, &summary)?;
    Ok(if trajectory.converged {
        exit::SUCCESS
    } else {
        exit::NOT_CONVERGED
    })
}

fn simulate(args: &SimulateArgs) -> Result<i32, CliError> {
    let model = load(&args.model)?;
    let options = iterate_options(&args.iteration, args.allow_boundary)?;
    let p0 = match &args.p0 {
        Some(values) => SimplexVector::new(values.clone())?,
        None => SimplexVector::uniform(model.states())?,
    };
    let solved = solve_equilibrium(&model.direction()?);
    let increments: Box<dyn IncrementMap<f64>> = match args.form {
        Form::Regression => Box::new(model.survival()?),
        Form::Fluctuation => Box::new(solved.clone()?),
    };
    let trajectory = iterate(increments.as_ref(), &p0, &options)?;
    let (rho, pi) = match &solved {
        Ok(profile) => (json!(profile.rho().values()), json!(profile.pi())),
        Err(_) => (Value::Null, Value::Null),
    };
    finish_trajectory(
        &trajectory,
        &state_columns(model.states()),
        rho,
        pi,
        &args.iteration,
        args.output.out.as_deref(),
    )
}

fn binary(args: &BinaryArgs) -> Result<i32, CliError> {
    let model = BinaryModel::new(args.w_plus, args.w_minus)?;
    let options = iterate_options(&args.iteration, args.allow_boundary)?;
    let p0 = SimplexVector::new(vec![args.p0, 1.0 - args.p0])?;
    let trajectory = iterate(&model, &p0, &options)?;
    let (rho, pi) = match (model.equilibrium(), model.pi()) {
        (Some((plus, minus)), Some(pi)) => (json!([plus, minus]), json!(pi)),
        _ => (Value::Null, Value::Null),
    };
    finish_trajectory(
        &trajectory,
        &["p_plus".to_string(), "p_minus".to_string()],
        rho,
        pi,
        &args.iteration,
        args.output.out.as_deref(),
    )
}

fn simulate_stochastic(args: &StochasticArgs) -> Result<i32, CliError> {
    let model = load(&args.model)?;
    let w = model.survival()?;
    let initial = match &args.init {
        Some(counts) => {
            let state = PopulationState::new(counts.clone())?;
            if state.population_size() != args.pop {
                return Err(CliError::usage(format!(
                    "--init counts sum to {}, expected --pop {}",
                    state.population_size(),
                    args.pop
                )));
            }
            state
        }
        None => PopulationState::even(args.pop, w.states())?,
    };
    let too_large = |flag: &str| CliError::usage(format!("{flag} too large"));
    let config = SimulationConfig {
        steps: usize::try_from(args.steps).map_err(|_| too_large("--steps"))?,
        replicas: usize::try_from(args.replicas).map_err(|_| too_large("--replicas"))?,
        seed: RandomSeed {
            seed: args.seed,
            stream: args.stream,
        },
        jobs: args
            .jobs
            .map(|j| usize::try_from(j).map_err(|_| too_large("--jobs")))
            .transpose()?,
    };
    let run = simulate_paths(&w, &initial, &config)?;

    let mut main = main_output(args.output.out.as_deref())?;
    write_paths(&mut *main, w.states(), &run.paths)?;
    main.flush()?;
    let summary = json!({
        "population_size": args.pop,
        "steps": args.steps,
        "replicas": args.replicas,
        "seed": args.seed,
        "stream": args.stream,
        "states": run.summary.states,
        "empirical_cov_dmu": run.summary.empirical_cov_dmu,
    });
    write_json(&mut *summary_output(args.summary.as_deref())?, &summary)?;
    Ok(exit::SUCCESS)
}

fn oracle(args: &OracleArgs) -> Result<i32, CliError> {
    let report = crate::reference::report();
    write_json(&mut *main_output(args.output.out.as_deref())?, &report)?;
    Ok(exit::SUCCESS)
}
