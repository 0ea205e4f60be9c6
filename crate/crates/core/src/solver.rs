//! Spatial collocation system and trapezoidal time stepping.
//!
//! The solution is sought as u_m(x,t) = Σ_{j=0..m} u_j(t) J_{L,j}^{β,γ}(x).
//! Collocating the advection-dispersion equation
//!
//!   ∂u/∂t = d · D^α_θ u − e · ∂u/∂x + s(x,t),   u(0,t) = u(L,t) = 0,
//!
//! at the m−1 interior Gauss-Lobatto points and appending the two boundary
//! rows yields, after the trapezoidal rule with step Δt,
//!
//!   (J₁ − A) Uⁿ = (J₀ + A) Uⁿ⁻¹ + ½Δt (Sⁿ + Sⁿ⁻¹),
//!
//! where interior rows of J₀, J₁ hold basis values at the nodes, the top and
//! bottom rows of J₁ hold the endpoint values (the boundary equations), the
//! same rows of J₀ and A are zero, and A holds the Ω entries below. The
//! left-hand matrix is time independent and factored once.

use nalgebra::{DMatrix, DVector, LU};

use crate::error::{Error, Result};
use crate::jacobi::{
    gauss_lobatto_nodes, shifted_at_left, shifted_at_right, shifted_deriv_unchecked,
    shifted_eval_unchecked, JacobiParams,
};
use crate::riesz::{FracDerivCoeffs, RieszFellerParams};

pub type SpaceTimeFn = Box<dyn Fn(f64, f64) -> f64 + Send + Sync>;
pub type ProfileFn = Box<dyn Fn(f64) -> f64 + Send + Sync>;

/// One initial-boundary-value problem: coefficients, data and discretization
/// steps. Homogeneous Dirichlet data is assumed and checked at setup.
pub struct ProblemSpec {
    dispersion: f64,
    velocity: f64,
    source: SpaceTimeFn,
    initial: ProfileFn,
    rf: RieszFellerParams,
    basis: JacobiParams,
    t_final: f64,
    dt: f64,
}

impl ProblemSpec {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        dispersion: f64,
        velocity: f64,
        source: SpaceTimeFn,
        initial: ProfileFn,
        rf: RieszFellerParams,
        basis: JacobiParams,
        t_final: f64,
        dt: f64,
    ) -> Result<Self> {
        if !(dispersion > 0.0) || !dispersion.is_finite() {
            return Err(Error::parameter(
                "d",
                format!("dispersion coefficient must be positive, got {dispersion}"),
            ));
        }
        if !(velocity >= 0.0) || !velocity.is_finite() {
            return Err(Error::parameter(
                "e",
                format!("advection velocity must be non-negative, got {velocity}"),
            ));
        }
        if !(dt > 0.0) || !dt.is_finite() {
            return Err(Error::parameter("dt", format!("time step must be positive, got {dt}")));
        }
        if !(t_final >= dt) {
            return Err(Error::parameter(
                "t_final",
                format!("final time {t_final} must be at least one step {dt}"),
            ));
        }
        let steps = (t_final / dt).round();
        if (steps * dt - t_final).abs() > 1e-12 * t_final {
            return Err(Error::parameter(
                "dt",
                format!("t_final = {t_final} is not an integer multiple of dt = {dt}"),
            ));
        }
        if initial(0.0).abs() > 1e-10 || initial(basis.length()).abs() > 1e-10 {
            return Err(Error::parameter(
                "initial",
                format!(
                    "initial profile must vanish at the boundary: f(0) = {}, f(L) = {}",
                    initial(0.0),
                    initial(basis.length())
                ),
            ));
        }
        Ok(Self {
            dispersion,
            velocity,
            source,
            initial,
            rf,
            basis,
            t_final,
            dt,
        })
    }

    pub fn dispersion(&self) -> f64 {
        self.dispersion
    }

    pub fn velocity(&self) -> f64 {
        self.velocity
    }

    pub fn rf(&self) -> &RieszFellerParams {
        &self.rf
    }

    pub fn basis(&self) -> &JacobiParams {
        &self.basis
    }

    pub fn t_final(&self) -> f64 {
        self.t_final
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn num_steps(&self) -> usize {
        (self.t_final / self.dt).round() as usize
    }

    pub fn source_at(&self, x: f64, t: f64) -> f64 {
        (self.source)(x, t)
    }

    pub fn initial_at(&self, x: f64) -> f64 {
        (self.initial)(x)
    }
}

/// Ω_{j,q} = ½Δt [ d · D^α_θ J_{L,j}(x_q) − e · (d/dx) J_{L,j}(x_q) ].
///
/// The advection term carries a minus sign, matching the collocated equation
/// (moving −e ∂u/∂x to the right-hand side); the opposite sign demonstrably
/// fails the manufactured-solution residual check.
pub fn omega_entry(
    frac: &FracDerivCoeffs,
    j: usize,
    x_q: f64,
    dispersion: f64,
    velocity: f64,
    dt: f64,
) -> Result<f64> {
    let diffusive = frac.riesz_feller(j, x_q)?;
    let advective = shifted_deriv_unchecked(1, j, frac.basis(), x_q);
    Ok(0.5 * dt * (dispersion * diffusive - velocity * advective))
}

/// Assembled matrices and the prefactored left-hand side for one problem.
pub struct CollocationSystem {
    order: usize,
    nodes: Vec<f64>,
    a: DMatrix<f64>,
    j0: DMatrix<f64>,
    j1: DMatrix<f64>,
    rhs_matrix: DMatrix<f64>,
    lhs_lu: LU<f64, nalgebra::Dyn, nalgebra::Dyn>,
}

impl CollocationSystem {
    pub fn order(&self) -> usize {
        self.order
    }

    /// All m+1 Gauss-Lobatto nodes, endpoints included.
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// The m−1 interior collocation points.
    pub fn interior_nodes(&self) -> &[f64] {
        &self.nodes[1..self.order]
    }

    pub fn matrix_a(&self) -> &DMatrix<f64> {
        &self.a
    }

    pub fn matrix_j0(&self) -> &DMatrix<f64> {
        &self.j0
    }

    pub fn matrix_j1(&self) -> &DMatrix<f64> {
        &self.j1
    }
}

/// Build nodes, matrices A, J₀, J₁ and factor (J₁ − A).
pub fn assemble(problem: &ProblemSpec, order: usize) -> Result<CollocationSystem> {
    if order < 2 {
        return Err(Error::parameter(
            "m",
            format!("collocation needs order >= 2, got {order}"),
        ));
    }
    let basis = problem.basis();
    let nodes = gauss_lobatto_nodes(order, basis)?;
    let frac = FracDerivCoeffs::new(order, problem.rf(), basis)?;

    let n = order + 1;
    let mut a = DMatrix::zeros(n, n);
    let mut j0 = DMatrix::zeros(n, n);
    let mut j1 = DMatrix::zeros(n, n);

    for j in 0..n {
        j1[(0, j)] = shifted_at_left(j, basis);
        j1[(order, j)] = shifted_at_right(j, basis);
    }
    for q in 1..order {
        let x_q = nodes[q];
        let diffusive = frac.riesz_feller_all(order, x_q)?;
        for j in 0..n {
            let value = shifted_eval_unchecked(j, basis, x_q);
            j0[(q, j)] = value;
            j1[(q, j)] = value;
            let advective = shifted_deriv_unchecked(1, j, basis, x_q);
            a[(q, j)] = 0.5
                * problem.dt()
                * (problem.dispersion() * diffusive[j] - problem.velocity() * advective);
        }
    }

    let lhs = &j1 - &a;
    let rhs_matrix = &j0 + &a;
    let lhs_lu = lhs.clone().lu();
    if !lhs_lu.is_invertible() {
        return Err(Error::Numeric(format!(
            "collocation matrix (J1 - A) is singular at m = {order} (det = {:e})",
            lhs_lu.determinant()
        )));
    }
    Ok(CollocationSystem {
        order,
        nodes,
        a,
        j0,
        j1,
        rhs_matrix,
        lhs_lu,
    })
}

/// Initial coefficients by interpolation at all m+1 nodes:
/// solve V U⁰ = f(nodes) with V_{q,j} = J_{L,j}(x_q).
pub fn initial_coeffs(problem: &ProblemSpec, sys: &CollocationSystem) -> Result<DVector<f64>> {
    let basis = problem.basis();
    let n = sys.order() + 1;
    let mut vandermonde = DMatrix::zeros(n, n);
    for (q, &x_q) in sys.nodes().iter().enumerate() {
        for j in 0..n {
            vandermonde[(q, j)] = shifted_eval_unchecked(j, basis, x_q);
        }
    }
    let rhs = DVector::from_iterator(n, sys.nodes().iter().map(|&x| problem.initial_at(x)));
    vandermonde
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::Numeric("interpolation matrix is singular".into()))
}

/// One trapezoidal step from t_prev to t_prev + Δt.
pub fn step(
    sys: &CollocationSystem,
    u_prev: &DVector<f64>,
    t_prev: f64,
    problem: &ProblemSpec,
) -> Result<DVector<f64>> {
    let t_next = t_prev + problem.dt();
    let mut rhs = &sys.rhs_matrix * u_prev;
    for q in 1..sys.order() {
        let x_q = sys.nodes()[q];
        rhs[q] += 0.5
            * problem.dt()
            * (problem.source_at(x_q, t_next) + problem.source_at(x_q, t_prev));
    }
    let u_next = sys
        .lhs_lu
        .solve(&rhs)
        .ok_or_else(|| Error::Numeric("linear solve failed".into()))?;
    if u_next.iter().any(|v| !v.is_finite()) {
        return Err(Error::Numeric(format!(
            "solution coefficients not finite at t = {t_next}"
        )));
    }
    Ok(u_next)
}

/// Echo of the configuration a solution was computed with.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConfigEcho {
    pub alpha: f64,
    pub theta: f64,
    pub beta: f64,
    pub gamma: f64,
    pub length: f64,
    pub dispersion: f64,
    pub velocity: f64,
    pub dt: f64,
    pub t_final: f64,
    pub order: usize,
}

/// Coefficient history Uⁿ for n = 0..N with evaluation of the spectral ansatz.
pub struct SpectralSolution {
    history: Vec<DVector<f64>>,
    basis: JacobiParams,
    dt: f64,
    config: ConfigEcho,
}

impl SpectralSolution {
    /// Number of stored time levels minus one (the step count N).
    pub fn num_steps(&self) -> usize {
        self.history.len() - 1
    }

    pub fn time(&self, n: usize) -> f64 {
        n as f64 * self.dt
    }

    pub fn times(&self) -> Vec<f64> {
        (0..self.history.len()).map(|n| self.time(n)).collect()
    }

    pub fn coefficients(&self, n: usize) -> &DVector<f64> {
        &self.history[n]
    }

    pub fn basis(&self) -> &JacobiParams {
        &self.basis
    }

    pub fn config(&self) -> &ConfigEcho {
        &self.config
    }

    /// Index of the stored level with tₙ = t, to within roundoff.
    pub fn time_index(&self, t: f64) -> Result<usize> {
        let n = (t / self.dt).round();
        let idx = n as usize;
        if n < 0.0 || idx >= self.history.len() || (n * self.dt - t).abs() > 1e-9 {
            return Err(Error::Domain(format!(
                "t = {t} is not on the solution time grid (dt = {}, N = {})",
                self.dt,
                self.num_steps()
            )));
        }
        Ok(idx)
    }

    /// u_m(x, tₙ) = Σ_j u_jⁿ J_{L,j}(x).
    pub fn evaluate(&self, n: usize, x: f64) -> Result<f64> {
        if n >= self.history.len() {
            return Err(Error::Domain(format!(
                "time index {n} out of range 0..={}",
                self.num_steps()
            )));
        }
        if x < 0.0 || x > self.basis.length() {
            return Err(Error::Domain(format!(
                "x = {x} outside [0, {}]",
                self.basis.length()
            )));
        }
        Ok(self.history[n]
            .iter()
            .enumerate()
            .map(|(j, &c)| c * shifted_eval_unchecked(j, &self.basis, x))
            .sum())
    }
}

/// Assemble, interpolate the initial data and advance N = t_final/Δt steps.
pub fn solve(problem: &ProblemSpec, order: usize) -> Result<SpectralSolution> {
    let sys = assemble(problem, order)?;
    let steps = problem.num_steps();
    let mut history = Vec::with_capacity(steps + 1);
    history.push(initial_coeffs(problem, &sys)?);
    for n in 0..steps {
        let t_prev = n as f64 * problem.dt();
        let u_next = step(&sys, &history[n], t_prev, problem)?;
        history.push(u_next);
    }
    let config = ConfigEcho {
        alpha: problem.rf().alpha(),
        theta: problem.rf().theta(),
        beta: problem.basis().beta(),
        gamma: problem.basis().gamma(),
        length: problem.basis().length(),
        dispersion: problem.dispersion(),
        velocity: problem.velocity(),
        dt: problem.dt(),
        t_final: problem.t_final(),
        order,
    };
    Ok(SpectralSolution {
        history,
        basis: *problem.basis(),
        dt: problem.dt(),
        config,
    })
}
