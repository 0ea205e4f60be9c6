//! Solve the configured problem, write the CSV profile and print a summary.
//!
//! CSV schema: header `x,t,u_numeric` plus `,u_exact,abs_error` when the
//! exact solution is known (example2). Values carry 17 significant digits so
//! the file round-trips bit-exactly; comma delimiter, LF line endings, UTF-8.

use std::fmt::Write as _;
use std::time::Instant;

use lfade::benchmarks::{
    self, example1_problem_with_basis, example2_exact, example2_problem_with_basis,
};
use lfade::jacobi::{gauss_lobatto_nodes, JacobiParams};
use lfade::riesz::RieszFellerParams;
use lfade::solver::{solve, ProblemSpec};

use crate::config::{EvalGrid, Preset, RunConfig};
use crate::AppError;

fn build_problem(config: &RunConfig) -> Result<ProblemSpec, AppError> {
    let problem = match config.preset {
        Preset::Example1 => example1_problem_with_basis(
            config.alpha,
            config.theta,
            config.d,
            config.e,
            config.beta,
            config.gamma,
            config.t_final,
            config.dt,
        ),
        Preset::Example2 => example2_problem_with_basis(
            config.alpha,
            config.theta,
            config.beta,
            config.gamma,
            config.t_final,
            config.dt,
        ),
        Preset::Custom => RieszFellerParams::new(config.alpha, config.theta).and_then(|rf| {
            ProblemSpec::new(
                config.d,
                config.e,
                Box::new(|_, _| 0.0),
                Box::new(|x: f64| x * (1.0 - x)),
                rf,
                JacobiParams::new(config.beta, config.gamma, 1.0)?,
                config.t_final,
                config.dt,
            )
        }),
    };
    problem.map_err(|e| AppError::run(e.to_string()))
}

fn eval_points(config: &RunConfig) -> Result<Vec<f64>, AppError> {
    match &config.eval_grid {
        EvalGrid::Explicit(points) => Ok(points.clone()),
        EvalGrid::Nodes => {
            let basis = JacobiParams::new(config.beta, config.gamma, config.length())
                .map_err(|e| AppError::run(e.to_string()))?;
            gauss_lobatto_nodes(config.m, &basis).map_err(|e| AppError::run(e.to_string()))
        }
    }
}

/// Run one configuration end to end. Prints one summary line on success.
pub fn run(config: &RunConfig) -> Result<(), AppError> {
    let started = Instant::now();
    let problem = build_problem(config)?;
    let solution = solve(&problem, config.m).map_err(|e| AppError::run(e.to_string()))?;
    let n_final = solution
        .time_index(config.t_final)
        .map_err(|e| AppError::run(e.to_string()))?;
    let points = eval_points(config)?;

    let with_exact = config.preset == Preset::Example2;
    let mut csv = String::new();
    csv.push_str(if with_exact {
        "x,t,u_numeric,u_exact,abs_error\n"
    } else {
        "x,t,u_numeric\n"
    });
    let t = solution.time(n_final);
    for &x in &points {
        let u = solution
            .evaluate(n_final, x)
            .map_err(|e| AppError::run(e.to_string()))?;
        if with_exact {
            let exact = example2_exact(x, t);
            let _ = writeln!(
                csv,
                "{x:.16e},{t:.16e},{u:.16e},{exact:.16e},{:.16e}",
                (u - exact).abs()
            );
        } else {
            let _ = writeln!(csv, "{x:.16e},{t:.16e},{u:.16e}");
        }
    }
    std::fs::write(&config.output, csv).map_err(|e| {
        AppError::run(format!("cannot write {}: {e}", config.output.display()))
    })?;

    let m1 = if with_exact {
        let m1 = benchmarks::max_error_over_history(&solution, example2_exact, &points)
            .map_err(|e| AppError::run(e.to_string()))?;
        format!("{m1:.4e}")
    } else {
        "n/a".to_string()
    };
    println!(
        "preset={} alpha={} theta={} m={} dt={} n_steps={} m1={} runtime={:.3}s output={}",
        match config.preset {
            Preset::Example1 => "example1",
            Preset::Example2 => "example2",
            Preset::Custom => "custom",
        },
        config.alpha,
        config.theta,
        config.m,
        config.dt,
        solution.num_steps(),
        m1,
        started.elapsed().as_secs_f64(),
        config.output.display()
    );
    Ok(())
}

/// Fan out one run per sweep alpha, concurrently. The output path gets an
/// `-alpha<value>` suffix per run.
pub fn run_sweep(base: &RunConfig, alphas: &[f64]) -> Result<(), AppError> {
    let configs: Vec<RunConfig> = alphas
        .iter()
        .map(|&alpha| {
            let mut config = base.clone();
            config.alpha = alpha;
            config.sweep = None;
            let stem = base
                .output
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "lfade".into());
            let ext = base
                .output
                .extension()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "csv".into());
            config.output = base.output.with_file_name(format!("{stem}-alpha{alpha}.{ext}"));
            config
        })
        .collect();
    for config in &configs {
        // the skewness bound depends on alpha, so re-check before dispatch
        let bound = config.alpha.min(2.0 - config.alpha);
        if !(config.theta.abs() <= bound) {
            return Err(AppError::config(format!(
                "theta: sweep alpha {} allows |theta| <= {bound}, got {}",
                config.alpha, config.theta
            )));
        }
    }
    let results: Vec<Result<(), AppError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = configs
            .iter()
            .map(|config| scope.spawn(move || run(config)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("sweep run panicked"))
            .collect()
    });
    results.into_iter().collect()
}
