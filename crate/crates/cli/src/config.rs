//! Run configuration: command-line flags layered over an optional key=value
//! config file, then validated against the solver preconditions.
//!
//! Precedence: flag > config file > preset default. Unknown config-file keys
//! are rejected. Every validation failure names the offending field.

use std::collections::HashMap;
use std::path::PathBuf;

use clap::Parser;

use crate::AppError;

pub const MAX_ORDER: usize = 50;

#[derive(Parser, Debug)]
#[command(
    name = "lfade",
    about = "Jacobi spectral collocation solver for the Levy-Feller advection-dispersion equation",
    long_about = "Solves du/dt = d*D^alpha_theta u - e*du/dx + s(x,t) on an interval with \
                  homogeneous Dirichlet boundaries, writing the solution profile at the final \
                  time as CSV.\n\nPresets:\n  example1  sin(x) initial data on [0,pi], zero \
                  source (d, e free)\n  example2  manufactured solution x(1-x)e^{-3t/2} on [0,1] \
                  with d = Gamma(3-alpha), e = 1; exact errors reported\n  custom    x(1-x) \
                  initial data on [0,1], zero source, d and e free"
)]
pub struct Cli {
    /// Problem preset: example1, example2 or custom
    #[arg(long)]
    pub preset: Option<String>,

    /// Optional key=value config file ('#' comments); flags override it
    #[arg(long)]
    pub config: Option<PathBuf>,

    /// Fractional order, in (1, 2]
    #[arg(long)]
    pub alpha: Option<f64>,

    /// Skewness, |theta| <= min(alpha, 2-alpha)
    #[arg(long)]
    pub theta: Option<f64>,

    /// Basis index beta > -1
    #[arg(long)]
    pub beta: Option<f64>,

    /// Basis index gamma > -1
    #[arg(long)]
    pub gamma: Option<f64>,

    /// Truncation order m >= 2
    #[arg(short, long)]
    pub m: Option<usize>,

    /// Time step
    #[arg(long)]
    pub dt: Option<f64>,

    /// Final time (must be an integer multiple of dt)
    #[arg(long = "t-final")]
    pub t_final: Option<f64>,

    /// Dispersion coefficient d > 0 (example1/custom; example2 pins d = Gamma(3-alpha))
    #[arg(long)]
    pub d: Option<f64>,

    /// Advection velocity e >= 0 (example1/custom; example2 pins e = 1)
    #[arg(long)]
    pub e: Option<f64>,

    /// Output CSV path
    #[arg(long)]
    pub output: Option<PathBuf>,

    /// Evaluation grid: "nodes" or a comma-separated x list
    #[arg(long = "eval-grid")]
    pub eval_grid: Option<String>,

    /// Comma-separated alpha values; runs one solve per value concurrently
    #[arg(long)]
    pub sweep: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preset {
    Example1,
    Example2,
    Custom,
}

impl Preset {
    fn parse(text: &str) -> Result<Self, AppError> {
        match text {
            "example1" => Ok(Preset::Example1),
            "example2" => Ok(Preset::Example2),
            "custom" => Ok(Preset::Custom),
            other => Err(AppError::config(format!(
                "preset: unknown preset `{other}` (expected example1, example2 or custom)"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum EvalGrid {
    Nodes,
    Explicit(Vec<f64>),
}

/// Fully resolved and validated configuration for one run.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub preset: Preset,
    pub alpha: f64,
    pub theta: f64,
    pub beta: f64,
    pub gamma: f64,
    pub m: usize,
    pub dt: f64,
    pub t_final: f64,
    pub d: f64,
    pub e: f64,
    pub output: PathBuf,
    pub eval_grid: EvalGrid,
    pub sweep: Option<Vec<f64>>,
}

impl RunConfig {
    pub fn length(&self) -> f64 {
        match self.preset {
            Preset::Example1 => std::f64::consts::PI,
            Preset::Example2 | Preset::Custom => 1.0,
        }
    }
}

const FILE_KEYS: [&str; 13] = [
    "preset", "alpha", "theta", "beta", "gamma", "m", "dt", "t_final", "d", "e", "output",
    "eval_grid", "sweep",
];

fn parse_config_file(path: &PathBuf) -> Result<HashMap<String, String>, AppError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| AppError::config(format!("config: cannot read {}: {e}", path.display())))?;
    let mut map = HashMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            AppError::config(format!(
                "config: line {} is not a key=value pair: `{raw}`",
                lineno + 1
            ))
        })?;
        let key = key.trim().to_string();
        if !FILE_KEYS.contains(&key.as_str()) {
            return Err(AppError::config(format!(
                "config: unknown key `{key}` on line {}",
                lineno + 1
            )));
        }
        map.insert(key, value.trim().to_string());
    }
    Ok(map)
}

fn parse_f64(field: &str, text: &str) -> Result<f64, AppError> {
    text.parse::<f64>()
        .map_err(|_| AppError::config(format!("{field}: `{text}` is not a number")))
}

fn parse_usize(field: &str, text: &str) -> Result<usize, AppError> {
    text.parse::<usize>()
        .map_err(|_| AppError::config(format!("{field}: `{text}` is not a non-negative integer")))
}

fn parse_f64_list(field: &str, text: &str) -> Result<Vec<f64>, AppError> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| parse_f64(field, s))
        .collect()
}

macro_rules! resolve {
    ($flag:expr, $file:expr, $key:literal, $parse:ident, $default:expr) => {
        match ($flag, $file.get($key)) {
            (Some(v), _) => v,
            (None, Some(text)) => $parse($key, text)?,
            (None, None) => $default,
        }
    };
}

/// Layer flags over the config file and preset defaults, then validate.
pub fn resolve(cli: Cli) -> Result<RunConfig, AppError> {
    let file = match &cli.config {
        Some(path) => parse_config_file(path)?,
        None => HashMap::new(),
    };

    let preset = match (cli.preset.as_deref(), file.get("preset")) {
        (Some(p), _) => Preset::parse(p)?,
        (None, Some(p)) => Preset::parse(p)?,
        (None, None) => Preset::Custom,
    };

    // preset defaults for the canonical configurations
    let (def_alpha, def_theta, def_m, def_dt, def_t_final, def_d, def_e) = match preset {
        Preset::Example1 => (1.7, 0.3, 5, 1e-3, 0.3, 1.5, 1.0),
        Preset::Example2 => (1.4, -0.5, 3, 0.01, 0.5, f64::NAN, 1.0), // d pinned later
        Preset::Custom => (1.5, 0.0, 6, 0.01, 0.5, 1.0, 0.0),
    };

    let alpha = resolve!(cli.alpha, file, "alpha", parse_f64, def_alpha);
    let theta = resolve!(cli.theta, file, "theta", parse_f64, def_theta);
    let beta = resolve!(cli.beta, file, "beta", parse_f64, 0.0);
    let gamma = resolve!(cli.gamma, file, "gamma", parse_f64, 0.0);
    let m = resolve!(cli.m, file, "m", parse_usize, def_m);
    let dt = resolve!(cli.dt, file, "dt", parse_f64, def_dt);
    let t_final = resolve!(cli.t_final, file, "t_final", parse_f64, def_t_final);
    let d = resolve!(cli.d, file, "d", parse_f64, def_d);
    let e = resolve!(cli.e, file, "e", parse_f64, def_e);
    let output = match (cli.output, file.get("output")) {
        (Some(p), _) => p,
        (None, Some(p)) => PathBuf::from(p),
        (None, None) => PathBuf::from("lfade.csv"),
    };
    let eval_text = match (cli.eval_grid, file.get("eval_grid")) {
        (Some(t), _) => Some(t),
        (None, Some(t)) => Some(t.clone()),
        (None, None) => None,
    };
    let sweep = match (cli.sweep, file.get("sweep")) {
        (Some(t), _) => Some(parse_f64_list("sweep", &t)?),
        (None, Some(t)) => Some(parse_f64_list("sweep", t)?),
        (None, None) => None,
    };

    let mut config = RunConfig {
        preset,
        alpha,
        theta,
        beta,
        gamma,
        m,
        dt,
        t_final,
        d,
        e,
        output,
        eval_grid: EvalGrid::Nodes,
        sweep,
    };
    if preset == Preset::Example2 {
        if cli.d.is_some() || file.contains_key("d") {
            return Err(AppError::config(
                "d: example2 pins d = Gamma(3-alpha); remove the override",
            ));
        }
        if cli.e.is_some() || file.contains_key("e") {
            return Err(AppError::config(
                "e: example2 pins e = 1; remove the override",
            ));
        }
        // pinned by the manufactured problem; kept out of validation below
        config.d = f64::NAN;
    }
    config.eval_grid = match eval_text.as_deref() {
        None | Some("nodes") => EvalGrid::Nodes,
        Some(list) => {
            let xs = parse_f64_list("eval_grid", list)?;
            if xs.is_empty() {
                return Err(AppError::config("eval_grid: empty point list"));
            }
            let length = config.length();
            for &x in &xs {
                if !(0.0..=length).contains(&x) {
                    return Err(AppError::config(format!(
                        "eval_grid: point {x} outside [0, {length}]"
                    )));
                }
            }
            EvalGrid::Explicit(xs)
        }
    };
    validate(&config)?;
    Ok(config)
}

fn validate(config: &RunConfig) -> Result<(), AppError> {
    let RunConfig {
        alpha,
        theta,
        beta,
        gamma,
        m,
        dt,
        t_final,
        d,
        e,
        ..
    } = config;
    if !(*alpha > 1.0 && *alpha <= 2.0) {
        return Err(AppError::config(format!(
            "alpha: must lie in (1, 2], got {alpha}"
        )));
    }
    if config.preset == Preset::Example2 && *alpha == 2.0 {
        return Err(AppError::config(
            "alpha: example2's source term requires alpha < 2",
        ));
    }
    let bound = alpha.min(2.0 - alpha);
    if !(theta.abs() <= bound) {
        return Err(AppError::config(format!(
            "theta: must satisfy |theta| <= min(alpha, 2-alpha) = {bound}, got {theta}"
        )));
    }
    if !(*beta > -1.0) {
        return Err(AppError::config(format!("beta: must be > -1, got {beta}")));
    }
    if !(*gamma > -1.0) {
        return Err(AppError::config(format!("gamma: must be > -1, got {gamma}")));
    }
    if !(2..=MAX_ORDER).contains(m) {
        return Err(AppError::config(format!(
            "m: must lie in [2, {MAX_ORDER}], got {m}"
        )));
    }
    if !(*dt > 0.0) {
        return Err(AppError::config(format!("dt: must be positive, got {dt}")));
    }
    if !(*t_final >= *dt) {
        return Err(AppError::config(format!(
            "t_final: must be at least dt = {dt}, got {t_final}"
        )));
    }
    let steps = (t_final / dt).round();
    if (steps * dt - t_final).abs() > 1e-12 * t_final {
        return Err(AppError::config(format!(
            "dt: t_final = {t_final} is not an integer multiple of dt = {dt}"
        )));
    }
    if config.preset != Preset::Example2 && !(*d > 0.0) {
        return Err(AppError::config(format!("d: must be positive, got {d}")));
    }
    if !(*e >= 0.0) {
        return Err(AppError::config(format!(
            "e: must be non-negative, got {e}"
        )));
    }
    if let Some(alphas) = &config.sweep {
        if alphas.is_empty() {
            return Err(AppError::config("sweep: empty alpha list"));
        }
        for &a in alphas {
            if !(a > 1.0 && a <= 2.0) {
                return Err(AppError::config(format!(
                    "sweep: alpha {a} must lie in (1, 2]"
                )));
            }
        }
    }
    Ok(())
}
