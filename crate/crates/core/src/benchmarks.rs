//! Benchmark problems with known behaviour, error metrics and convergence
//! studies.
//!
//! Two canonical configurations are provided. The first evolves sin(x) on
//! [0, π] with zero source; at α = 2, d = 1, e = 0 it reduces to the heat
//! equation with exact solution sin(x)e^{−t}. The second is a manufactured
//! problem on [0, 1] with exact solution u(x,t) = x(1−x)e^{−3t/2}, dispersion
//! d = Γ(3−α), velocity e = 1, and the source term that makes the equation
//! hold exactly.

use crate::error::{Error, Result};
use crate::jacobi::{expand_coeffs, gauss_lobatto_nodes, shifted_deriv_unchecked, JacobiParams};
use crate::riesz::{FracDerivCoeffs, RieszFellerParams};
use crate::solver::{solve, ProblemSpec, SpectralSolution};
use crate::special::{gamma, sin_pi};

/// sin(x) initial profile on [0, π], zero source. With the default Legendre
/// basis (β = γ = 0).
pub fn example1_problem(
    alpha: f64,
    theta: f64,
    dispersion: f64,
    velocity: f64,
    t_final: f64,
    dt: f64,
) -> Result<ProblemSpec> {
    example1_problem_with_basis(alpha, theta, dispersion, velocity, 0.0, 0.0, t_final, dt)
}

/// sin(x) initial profile on [0, π] with basis indices (β, γ).
#[allow(clippy::too_many_arguments)]
pub fn example1_problem_with_basis(
    alpha: f64,
    theta: f64,
    dispersion: f64,
    velocity: f64,
    beta: f64,
    gam: f64,
    t_final: f64,
    dt: f64,
) -> Result<ProblemSpec> {
    let rf = RieszFellerParams::new(alpha, theta)?;
    let basis = JacobiParams::new(beta, gam, std::f64::consts::PI)?;
    ProblemSpec::new(
        dispersion,
        velocity,
        Box::new(|_, _| 0.0),
        Box::new(f64::sin),
        rf,
        basis,
        t_final,
        dt,
    )
}

/// Exact solution of the α = 2, d = 1, e = 0 configuration: sin(x) e^{−t}.
pub fn example1_classical_exact(x: f64, t: f64) -> f64 {
    x.sin() * (-t).exp()
}

/// Manufactured problem on [0, 1] with the Legendre basis.
pub fn example2_problem(alpha: f64, theta: f64, t_final: f64, dt: f64) -> Result<ProblemSpec> {
    example2_problem_with_basis(alpha, theta, 0.0, 0.0, t_final, dt)
}

/// Manufactured problem on [0, 1] with basis indices (β, γ).
pub fn example2_problem_with_basis(
    alpha: f64,
    theta: f64,
    beta: f64,
    gam: f64,
    t_final: f64,
    dt: f64,
) -> Result<ProblemSpec> {
    if alpha >= 2.0 {
        return Err(Error::parameter(
            "alpha",
            "the manufactured source contains 1/sin(alpha*pi); alpha must lie in (1, 2)",
        ));
    }
    let rf = RieszFellerParams::new(alpha, theta)?;
    let basis = JacobiParams::new(beta, gam, 1.0)?;
    let dispersion = gamma(3.0 - alpha)?;
    ProblemSpec::new(
        dispersion,
        1.0,
        Box::new(move |x, t| example2_source(alpha, theta, x, t)),
        Box::new(|x: f64| x * (1.0 - x)),
        rf,
        basis,
        t_final,
        dt,
    )
}

/// Exact solution of the manufactured problem: x(1−x) e^{−3t/2}.
pub fn example2_exact(x: f64, t: f64) -> f64 {
    x * (1.0 - x) * (-1.5 * t).exp()
}

/// Source term of the manufactured problem,
///
/// s(x,t) = { (2−α)/sin(απ) [ sin((α−θ)π/2) x^{1−α} + sin((α+θ)π/2) (1−x)^{1−α} ]
///          − 2/sin(απ)     [ sin((α−θ)π/2) x^{2−α} + sin((α+θ)π/2) (1−x)^{2−α} ]
///          + 3x²/2 − 7x/2 + 1 } e^{−3t/2}.
///
/// Singular at the endpoints for α > 1; only ever sampled at interior nodes.
pub fn example2_source(alpha: f64, theta: f64, x: f64, t: f64) -> f64 {
    let sa = sin_pi(alpha);
    let sp = sin_pi((alpha - theta) / 2.0);
    let sm = sin_pi((alpha + theta) / 2.0);
    let fractional = (2.0 - alpha) / sa
        * (sp * x.powf(1.0 - alpha) + sm * (1.0 - x).powf(1.0 - alpha))
        - 2.0 / sa * (sp * x.powf(2.0 - alpha) + sm * (1.0 - x).powf(2.0 - alpha));
    (fractional + 1.5 * x * x - 3.5 * x + 1.0) * (-1.5 * t).exp()
}

/// Residual of the exact manufactured solution under the semi-discrete
/// operator at time t, one entry per interior node:
///
///   r_q = Σ_j u̇_j J_{L,j}(x_q) − d Σ_j u_j D^α_θ J_{L,j}(x_q)
///         + e Σ_j u_j J'_{L,j}(x_q) − s(x_q, t).
///
/// The exact profile is quadratic, so for m ≥ 2 the residual vanishes to
/// roundoff — this single check validates the source transcription, the
/// fractional-derivative formulas and the advection sign at once.
pub fn example2_semidiscrete_residual(
    alpha: f64,
    theta: f64,
    beta: f64,
    gam: f64,
    order: usize,
    t: f64,
) -> Result<Vec<f64>> {
    if order < 2 {
        return Err(Error::parameter("m", "need order >= 2"));
    }
    let rf = RieszFellerParams::new(alpha, theta)?;
    let basis = JacobiParams::new(beta, gam, 1.0)?;
    let dispersion = gamma(3.0 - alpha)?;
    let frac = FracDerivCoeffs::new(order, &rf, &basis)?;
    // exact expansion of the quadratic profile
    let coeffs = expand_coeffs(|x| x * (1.0 - x), order, &basis)?;
    let decay = (-1.5 * t).exp();
    let nodes = gauss_lobatto_nodes(order, &basis)?;
    let mut residuals = Vec::with_capacity(order - 1);
    for &x_q in &nodes[1..order] {
        let diffusive = frac.riesz_feller_all(order, x_q)?;
        let mut r = 0.0;
        for (j, &c) in coeffs.coeffs().iter().enumerate() {
            let u_j = c * decay;
            let du_j = -1.5 * u_j;
            r += du_j * crate::jacobi::shifted_eval(j, &basis, x_q)?;
            r -= dispersion * u_j * diffusive[j];
            r += u_j * shifted_deriv_unchecked(1, j, &basis, x_q);
        }
        r -= example2_source(alpha, theta, x_q, t);
        residuals.push(r);
    }
    Ok(residuals)
}

/// One sampled absolute error |u_exact − u_m| at (x, t).
#[derive(Clone, Copy, Debug)]
pub struct PointError {
    pub x: f64,
    pub t: f64,
    pub abs_error: f64,
}

/// Pointwise errors at one time level plus their maximum, with the
/// configuration they were computed under.
#[derive(Clone, Debug)]
pub struct ErrorReport {
    pub pointwise: Vec<PointError>,
    pub max_error: f64,
    pub config: crate::solver::ConfigEcho,
}

/// Absolute errors against an exact solution on a grid at one stored time.
pub fn error_report<F: Fn(f64, f64) -> f64>(
    sol: &SpectralSolution,
    exact: F,
    grid: &[f64],
    t: f64,
) -> Result<ErrorReport> {
    let n = sol.time_index(t)?;
    let t_n = sol.time(n);
    let mut pointwise = Vec::with_capacity(grid.len());
    let mut max_error: f64 = 0.0;
    for &x in grid {
        let abs_error = (sol.evaluate(n, x)? - exact(x, t_n)).abs();
        max_error = max_error.max(abs_error);
        pointwise.push(PointError {
            x,
            t: t_n,
            abs_error,
        });
    }
    Ok(ErrorReport {
        pointwise,
        max_error,
        config: *sol.config(),
    })
}

/// Maximum absolute error over every stored time level and every grid point
/// (the metric usually written M₁).
pub fn max_error_over_history<F: Fn(f64, f64) -> f64>(
    sol: &SpectralSolution,
    exact: F,
    grid: &[f64],
) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for n in 0..=sol.num_steps() {
        let t = sol.time(n);
        for &x in grid {
            worst = worst.max((sol.evaluate(n, x)? - exact(x, t)).abs());
        }
    }
    Ok(worst)
}

/// One cell of a convergence study.
#[derive(Clone, Copy, Debug)]
pub struct StudyCell {
    pub order: usize,
    pub dt: f64,
    pub max_error: f64,
}

/// Grid of M₁ values over (m, Δt) combinations.
#[derive(Clone, Debug)]
pub struct ConvergenceTable {
    pub cells: Vec<StudyCell>,
}

impl ConvergenceTable {
    pub fn max_error(&self, order: usize, dt: f64) -> Option<f64> {
        self.cells
            .iter()
            .find(|c| c.order == order && c.dt == dt)
            .map(|c| c.max_error)
    }

    /// Errors at fixed Δt, ordered as the m-list the study was built with.
    pub fn errors_for_dt(&self, dt: f64) -> Vec<f64> {
        self.cells
            .iter()
            .filter(|c| c.dt == dt)
            .map(|c| c.max_error)
            .collect()
    }

    /// Errors at fixed m, ordered as the Δt-list the study was built with.
    pub fn errors_for_order(&self, order: usize) -> Vec<f64> {
        self.cells
            .iter()
            .filter(|c| c.order == order)
            .map(|c| c.max_error)
            .collect()
    }
}

/// Run the solver over every (m, Δt) pair and record M₁ on the given grid.
/// Cells are independent and run concurrently.
pub fn convergence_study<B, F>(
    build: B,
    exact: F,
    orders: &[usize],
    dts: &[f64],
    grid: &[f64],
) -> Result<ConvergenceTable>
where
    B: Fn(f64) -> Result<ProblemSpec> + Sync,
    F: Fn(f64, f64) -> f64 + Sync,
{
    if orders.is_empty() {
        return Err(Error::parameter("m_list", "must not be empty"));
    }
    if dts.is_empty() {
        return Err(Error::parameter("dt_list", "must not be empty"));
    }
    let mut pairs = Vec::new();
    for &order in orders {
        for &dt in dts {
            pairs.push((order, dt));
        }
    }
    let results: Vec<Result<StudyCell>> = std::thread::scope(|scope| {
        let handles: Vec<_> = pairs
            .iter()
            .map(|&(order, dt)| {
                let build = &build;
                let exact = &exact;
                scope.spawn(move || -> Result<StudyCell> {
                    let problem = build(dt)?;
                    let sol = solve(&problem, order)?;
                    let max_error = max_error_over_history(&sol, exact, grid)?;
                    Ok(StudyCell {
                        order,
                        dt,
                        max_error,
                    })
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("study cell panicked"))
            .collect()
    });
    let cells = results.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(ConvergenceTable { cells })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example1_construction() {
        assert!(example1_problem(1.7, 0.3, 1.5, 1.0, 0.3, 1e-3).is_ok());
        assert!(example1_problem(2.0, 0.0, 1.0, 0.0, 3.0, 0.05).is_ok());
        // skewness bound
        assert!(example1_problem(1.7, 0.9, 1.5, 1.0, 0.3, 1e-3).is_err());
    }

    #[test]
    fn example2_construction_and_exact() {
        let p = example2_problem(1.4, -0.5, 0.5, 0.01).unwrap();
        assert!((p.dispersion() - gamma(3.0 - 1.4).unwrap()).abs() < 1e-15);
        assert_eq!(p.velocity(), 1.0);
        assert!(example2_problem(2.0, 0.0, 1.0, 0.01).is_err());
        assert_eq!(example2_exact(0.5, 0.0), 0.25);
        assert!(example2_source(1.5, 0.0, 0.5, 0.0).is_finite());
    }

    #[test]
    fn manufactured_residual_vanishes() {
        // validates the source transcription, the derivative formulas and the
        // advection sign in one shot
        for &(alpha, theta) in &[(1.2, 0.3), (1.5, 0.0), (1.8, -0.1)] {
            for &t in &[0.0, 0.4] {
                let residuals =
                    example2_semidiscrete_residual(alpha, theta, 0.0, 0.0, 4, t).unwrap();
                for (q, r) in residuals.iter().enumerate() {
                    assert!(
                        r.abs() <= 1e-6,
                        "alpha={alpha} theta={theta} t={t} node {q}: residual {r:e}"
                    );
                }
            }
        }
    }

    #[test]
    fn manufactured_residual_rejects_flipped_advection() {
        // flipping the advection sign leaves a residual 2e·u_x, far above tolerance
        let alpha = 1.5;
        let basis = JacobiParams::new(0.0, 0.0, 1.0).unwrap();
        let rf = RieszFellerParams::new(alpha, 0.0).unwrap();
        let dispersion = gamma(3.0 - alpha).unwrap();
        let frac = FracDerivCoeffs::new(3, &rf, &basis).unwrap();
        let coeffs = expand_coeffs(|x| x * (1.0 - x), 3, &basis).unwrap();
        let nodes = gauss_lobatto_nodes(3, &basis).unwrap();
        let x_q = nodes[1];
        let mut r = 0.0;
        for (j, &c) in coeffs.coeffs().iter().enumerate() {
            r += -1.5 * c * crate::jacobi::shifted_eval(j, &basis, x_q).unwrap();
            r -= dispersion * c * frac.riesz_feller(j, x_q).unwrap();
            r -= c * shifted_deriv_unchecked(1, j, &basis, x_q); // wrong sign
        }
        r -= example2_source(alpha, 0.0, x_q, 0.0);
        assert!(r.abs() > 1e-2, "flipped sign should leave a visible residual, got {r:e}");
    }

    #[test]
    fn error_report_mechanics() {
        let problem = example2_problem(1.5, 0.0, 0.2, 0.02).unwrap();
        let sol = solve(&problem, 3).unwrap();
        let grid: Vec<f64> = (0..=10).map(|i| i as f64 / 10.0).collect();

        // against its own values the report is exactly zero
        let own =
            error_report(&sol, |x, t| {
                let n = sol.time_index(t).unwrap();
                sol.evaluate(n, x).unwrap()
            }, &grid, 0.2)
            .unwrap();
        assert_eq!(own.max_error, 0.0);
        assert!(own.pointwise.iter().all(|p| p.abs_error == 0.0));

        // max equals the maximum of the pointwise list
        let report = error_report(&sol, example2_exact, &grid, 0.2).unwrap();
        let max = report
            .pointwise
            .iter()
            .map(|p| p.abs_error)
            .fold(0.0f64, f64::max);
        assert_eq!(report.max_error, max);
        assert_eq!(report.config.order, 3);
        assert_eq!(report.config.alpha, 1.5);

        // off-grid time is rejected
        assert!(error_report(&sol, example2_exact, &grid, 0.013).is_err());
    }

    #[test]
    fn convergence_study_mechanics() {
        let grid: Vec<f64> = (0..=10).map(|i| i as f64 / 10.0).collect();
        let build = |dt: f64| example2_problem(1.5, 0.2, 0.2, dt);
        let table =
            convergence_study(build, example2_exact, &[3, 6], &[0.02, 0.01], &grid).unwrap();
        assert_eq!(table.cells.len(), 4);
        assert!(table.max_error(3, 0.02).is_some());
        assert_eq!(table.errors_for_order(3).len(), 2);
        assert_eq!(table.errors_for_dt(0.01).len(), 2);

        assert!(convergence_study(build, example2_exact, &[], &[0.01], &grid).is_err());
        assert!(convergence_study(build, example2_exact, &[3], &[], &grid).is_err());
    }
}
