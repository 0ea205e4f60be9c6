//! Jacobi and shifted Jacobi polynomials: evaluation, derivatives, norms,
//! Gauss-Lobatto nodes, Gauss-Jacobi quadrature and expansions.
//!
//! J_k^{β,γ} is the Jacobi polynomial orthogonal on [−1,1] under
//! (1−x)^β (1+x)^γ; the shifted family J_{L,k}^{β,γ}(x) = J_k^{β,γ}((2x−L)/L)
//! is orthogonal on [0,L] under x^γ (L−x)^β. Evaluation uses the three-term
//! recurrence throughout; the explicit monomial forms are kept only as a
//! low-degree cross-check (they cancel catastrophically at high degree).

use crate::error::{Error, Result};
use crate::special::{ln_factorial, ln_gamma, rising};

/// Basis indices β, γ > −1 and interval length L > 0 of a shifted Jacobi family.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JacobiParams {
    beta: f64,
    gamma: f64,
    length: f64,
}

impl JacobiParams {
    pub fn new(beta: f64, gamma: f64, length: f64) -> Result<Self> {
        validate_indices(beta, gamma)?;
        if !(length > 0.0) || !length.is_finite() {
            return Err(Error::parameter(
                "length",
                format!("interval length must be positive and finite, got {length}"),
            ));
        }
        Ok(Self {
            beta,
            gamma,
            length,
        })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn length(&self) -> f64 {
        self.length
    }
}

fn validate_indices(beta: f64, gamma: f64) -> Result<()> {
    if !(beta > -1.0) || !beta.is_finite() {
        return Err(Error::parameter(
            "beta",
            format!("basis index must be > -1, got {beta}"),
        ));
    }
    if !(gamma > -1.0) || !gamma.is_finite() {
        return Err(Error::parameter(
            "gamma",
            format!("basis index must be > -1, got {gamma}"),
        ));
    }
    Ok(())
}

fn check_domain(p: &JacobiParams, x: f64) -> Result<()> {
    if x < 0.0 || x > p.length() {
        return Err(Error::Domain(format!(
            "x = {x} outside [0, {}]",
            p.length()
        )));
    }
    Ok(())
}

/// Three-term recurrence, no argument checks. Valid for all β, γ > −1.
fn eval_recurrence(k: usize, beta: f64, gamma: f64, x: f64) -> f64 {
    if k == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut curr = ((beta + gamma + 2.0) * x + beta - gamma) / 2.0;
    for n in 1..k {
        let n = n as f64;
        let s = 2.0 * n + beta + gamma;
        let a_n = (s + 1.0) * (s + 2.0) / (2.0 * (n + 1.0) * (n + beta + gamma + 1.0));
        let b_n = (s + 1.0) * (gamma * gamma - beta * beta)
            / (2.0 * (n + 1.0) * (n + beta + gamma + 1.0) * s);
        let c_n = (n + beta) * (n + gamma) * (s + 2.0)
            / ((n + 1.0) * (n + beta + gamma + 1.0) * s);
        let next = (a_n * x - b_n) * curr - c_n * prev;
        prev = curr;
        curr = next;
    }
    curr
}

fn deriv_recurrence(order: usize, k: usize, beta: f64, gamma: f64, x: f64) -> f64 {
    if order > k {
        return 0.0;
    }
    // dᵐ/dxᵐ J_k^{β,γ} = (k+β+γ+1)_m / 2^m · J_{k−m}^{β+m,γ+m}
    let m = order as f64;
    let scale = rising(k as f64 + beta + gamma + 1.0, order as i32) / 2f64.powf(m);
    scale * eval_recurrence(k - order, beta + m, gamma + m, x)
}

/// J_k^{β,γ}(x) on [−1,1].
pub fn jacobi_eval(k: usize, beta: f64, gamma: f64, x: f64) -> Result<f64> {
    validate_indices(beta, gamma)?;
    Ok(eval_recurrence(k, beta, gamma, x))
}

/// m-th derivative of J_k^{β,γ} at x; zero when m > k.
pub fn jacobi_deriv(order: usize, k: usize, beta: f64, gamma: f64, x: f64) -> Result<f64> {
    validate_indices(beta, gamma)?;
    Ok(deriv_recurrence(order, k, beta, gamma, x))
}

/// Shifted polynomial J_{L,k}^{β,γ}(x) for x ∈ [0, L].
pub fn shifted_eval(k: usize, p: &JacobiParams, x: f64) -> Result<f64> {
    check_domain(p, x)?;
    Ok(shifted_eval_unchecked(k, p, x))
}

pub(crate) fn shifted_eval_unchecked(k: usize, p: &JacobiParams, x: f64) -> f64 {
    eval_recurrence(k, p.beta, p.gamma, (2.0 * x - p.length) / p.length)
}

/// m-th derivative of the shifted polynomial, including the (2/L)^m chain factor.
pub fn shifted_deriv(order: usize, k: usize, p: &JacobiParams, x: f64) -> Result<f64> {
    check_domain(p, x)?;
    Ok(shifted_deriv_unchecked(order, k, p, x))
}

pub(crate) fn shifted_deriv_unchecked(order: usize, k: usize, p: &JacobiParams, x: f64) -> f64 {
    let scale = (2.0 / p.length).powi(order as i32);
    scale * deriv_recurrence(order, k, p.beta, p.gamma, (2.0 * x - p.length) / p.length)
}

/// Closed-form value at x = 0: (−1)^k Γ(k+γ+1)/(Γ(γ+1) k!).
pub fn shifted_at_left(k: usize, p: &JacobiParams) -> f64 {
    let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    sign * binomial_like(p.gamma, k)
}

/// Closed-form value at x = L: Γ(k+β+1)/(Γ(β+1) k!).
pub fn shifted_at_right(k: usize, p: &JacobiParams) -> f64 {
    binomial_like(p.beta, k)
}

/// Γ(k+a+1)/(Γ(a+1) k!) as a stable product Π_{t=1..k} (a+t)/t.
fn binomial_like(a: f64, k: usize) -> f64 {
    let mut v = 1.0;
    for t in 1..=k {
        v *= (a + t as f64) / t as f64;
    }
    v
}

/// Squared norm h_k = L^{β+γ+1} Γ(k+β+1) Γ(k+γ+1) / ((2k+β+γ+1) k! Γ(k+β+γ+1)).
///
/// At k = 0 the denominator is rewritten as (β+γ+1)Γ(β+γ+1) = Γ(β+γ+2),
/// which stays finite when β+γ → −1 (the printed form is 0·∞ there).
pub fn norm_h(k: usize, p: &JacobiParams) -> f64 {
    let (b, g) = (p.beta, p.gamma);
    let kf = k as f64;
    let ln_denom = if k == 0 {
        ln_gamma(b + g + 2.0)
    } else {
        (2.0 * kf + b + g + 1.0).ln() + ln_gamma(kf + b + g + 1.0)
    };
    let ln = ln_gamma(kf + b + 1.0) + ln_gamma(kf + g + 1.0) - ln_factorial(k) - ln_denom;
    p.length.powf(b + g + 1.0) * ln.exp()
}

const NEWTON_TOL: f64 = 1e-14;
const NEWTON_MAX_ITER: usize = 100;

/// Newton iteration kept inside a bracket [lo, hi] with f(lo)·f(hi) < 0;
/// falls back to bisection whenever the Newton step leaves the bracket.
fn bracketed_newton<F, G>(mut lo: f64, mut hi: f64, f: F, fp: G) -> Result<f64>
where
    F: Fn(f64) -> f64,
    G: Fn(f64) -> f64,
{
    let (flo, fhi) = (f(lo), f(hi));
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo * fhi > 0.0 {
        return Err(Error::Numeric(format!(
            "root bracket [{lo}, {hi}] does not change sign"
        )));
    }
    let mut sign_lo = flo.signum();
    let mut xi = 0.5 * (lo + hi);
    for _ in 0..NEWTON_MAX_ITER {
        let fx = f(xi);
        if fx == 0.0 {
            return Ok(xi);
        }
        if fx.signum() == sign_lo {
            lo = xi;
            sign_lo = fx.signum();
        } else {
            hi = xi;
        }
        let step = fx / fp(xi);
        let mut next = xi - step;
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if (next - xi).abs() < NEWTON_TOL {
            return Ok(next);
        }
        xi = next;
    }
    Err(Error::Numeric(format!(
        "Newton iteration did not reach {NEWTON_TOL:e} within {NEWTON_MAX_ITER} steps (last xi = {xi})"
    )))
}

/// Roots of J_n^{β,γ} on (−1, 1), strictly increasing.
///
/// Built degree by degree: the roots of J_{k} strictly interlace those of
/// J_{k−1}, so {−1, roots of J_{k−1}, 1} brackets exactly one simple root of
/// J_k per interval. Plain Newton from Chebyshev guesses collapses adjacent
/// roots for asymmetric (β, γ); the brackets make each iteration safe for
/// every β, γ > −1, with no eigensolver.
fn jacobi_roots(n: usize, beta: f64, gamma: f64) -> Result<Vec<f64>> {
    let mut roots: Vec<f64> = Vec::new();
    for k in 1..=n {
        let mut brackets = Vec::with_capacity(roots.len() + 2);
        brackets.push(-1.0);
        brackets.extend_from_slice(&roots);
        brackets.push(1.0);
        let mut next = Vec::with_capacity(k);
        for w in brackets.windows(2) {
            next.push(bracketed_newton(
                w[0],
                w[1],
                |xi| eval_recurrence(k, beta, gamma, xi),
                |xi| deriv_recurrence(1, k, beta, gamma, xi),
            )?);
        }
        roots = next;
    }
    check_increasing(&roots, "jacobi_roots")?;
    Ok(roots)
}

fn check_increasing(nodes: &[f64], context: &str) -> Result<()> {
    if nodes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Numeric(format!(
            "{context}: root finder produced non-increasing nodes {nodes:?}"
        )));
    }
    Ok(())
}

/// Gauss-Lobatto points of the (m+1)-point rule on [0, L]: both endpoints plus
/// the m−1 interior roots of d/dx J_{L,m}^{β,γ}, strictly increasing.
///
/// d/dx J_m^{β,γ} is a multiple of J_{m−1}^{β+1,γ+1}, so the interior points
/// come from the same bracketed root finder.
pub fn gauss_lobatto_nodes(m: usize, p: &JacobiParams) -> Result<Vec<f64>> {
    if m < 1 {
        return Err(Error::parameter("m", "Gauss-Lobatto order must be >= 1"));
    }
    let mut nodes = Vec::with_capacity(m + 1);
    nodes.push(0.0);
    for xi in jacobi_roots(m - 1, p.beta + 1.0, p.gamma + 1.0)? {
        nodes.push(p.length * (1.0 + xi) / 2.0);
    }
    nodes.push(p.length);
    check_increasing(&nodes, "gauss_lobatto_nodes")?;
    Ok(nodes)
}

/// Gauss-Jacobi quadrature on [0, L] with weight x^γ (L−x)^β:
/// ∫₀ᴸ f(x) x^γ (L−x)^β dx ≈ Σ wᵢ f(xᵢ), exact for deg f ≤ 2n−1.
#[derive(Clone, Debug)]
pub struct GaussJacobiRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussJacobiRule {
    pub fn new(n: usize, p: &JacobiParams) -> Result<Self> {
        if n < 1 {
            return Err(Error::parameter("n", "quadrature needs at least 1 point"));
        }
        let (b, g) = (p.beta, p.gamma);
        let xis = jacobi_roots(n, b, g)?;
        // wᵢ = C / ((1−ξᵢ²) J_n'(ξᵢ)²), C = 2^{β+γ+1} Γ(n+β+1)Γ(n+γ+1)/(n! Γ(n+β+γ+1))
        let nf = n as f64;
        let ln_c = (b + g + 1.0) * 2f64.ln() + ln_gamma(nf + b + 1.0) + ln_gamma(nf + g + 1.0)
            - ln_factorial(n)
            - ln_gamma(nf + b + g + 1.0);
        let c = ln_c.exp();
        let half_l = p.length / 2.0;
        let scale = half_l.powf(b + g + 1.0);
        let mut nodes = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        for &xi in &xis {
            let dj = deriv_recurrence(1, n, b, g, xi);
            let w = c / ((1.0 - xi * xi) * dj * dj);
            if !w.is_finite() || w <= 0.0 {
                return Err(Error::Numeric(format!(
                    "Gauss-Jacobi weight at xi = {xi} is {w}"
                )));
            }
            nodes.push(half_l * (1.0 + xi));
            weights.push(scale * w);
        }
        Ok(Self { nodes, weights })
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// Truncated expansion f ≈ Σ_{j=0..M} c_j J_{L,j}^{β,γ}.
#[derive(Clone, Debug)]
pub struct ExpansionCoeffs {
    coeffs: Vec<f64>,
    params: JacobiParams,
}

impl ExpansionCoeffs {
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn params(&self) -> &JacobiParams {
        &self.params
    }

    pub fn evaluate(&self, x: f64) -> Result<f64> {
        check_domain(&self.params, x)?;
        Ok(self
            .coeffs
            .iter()
            .enumerate()
            .map(|(j, &c)| c * shifted_eval_unchecked(j, &self.params, x))
            .sum())
    }
}

/// Expansion coefficients c_j = (1/h_j) ∫ w f J_{L,j} by Gauss-Jacobi quadrature
/// with M+8 points (exact through degree 2M+15, so exact for polynomial f of
/// degree ≤ M with a wide margin).
pub fn expand_coeffs<F: Fn(f64) -> f64>(
    f: F,
    truncation: usize,
    p: &JacobiParams,
) -> Result<ExpansionCoeffs> {
    let rule = GaussJacobiRule::new(truncation + 8, p)?;
    let samples: Vec<f64> = rule.nodes().iter().map(|&x| f(x)).collect();
    if samples.iter().any(|v| !v.is_finite()) {
        return Err(Error::Numeric(
            "function not finite on the quadrature nodes".into(),
        ));
    }
    let mut coeffs = Vec::with_capacity(truncation + 1);
    for j in 0..=truncation {
        let mut acc = 0.0;
        for ((&x, &w), &fx) in rule.nodes().iter().zip(rule.weights()).zip(&samples) {
            acc += w * fx * shifted_eval_unchecked(j, p, x);
        }
        coeffs.push(acc / norm_h(j, p));
    }
    Ok(ExpansionCoeffs {
        coeffs,
        params: *p,
    })
}

/// Coefficients a_i of J_{L,j}^{β,γ}(x) = Σ_i a_i x^i:
/// a_i = (−1)^{j−i} (1+β+γ+j)_i (1+γ+i)_{j−i} / ((j−i)! i! L^i).
///
/// Written with rising factorials rather than raw gamma ratios so the
/// β+γ = −1 families stay finite. Low degree only (alternating, cancels
/// badly for j beyond ~10).
pub fn power_series_at_left(j: usize, p: &JacobiParams) -> Vec<f64> {
    let (b, g, l) = (p.beta, p.gamma, p.length);
    (0..=j)
        .map(|i| {
            let sign = if (j - i).is_multiple_of(2) { 1.0 } else { -1.0 };
            sign * rising(1.0 + b + g + j as f64, i as i32)
                * rising(1.0 + g + i as f64, (j - i) as i32)
                / (factorial(j - i) * factorial(i) * l.powi(i as i32))
        })
        .collect()
}

/// Coefficients b_i of J_{L,j}^{β,γ}(x) = Σ_i b_i (x−L)^i:
/// b_i = (1+β+γ+j)_i (1+β+i)_{j−i} / ((j−i)! i! L^i).
pub fn power_series_at_right(j: usize, p: &JacobiParams) -> Vec<f64> {
    let (b, g, l) = (p.beta, p.gamma, p.length);
    (0..=j)
        .map(|i| {
            rising(1.0 + b + g + j as f64, i as i32) * rising(1.0 + b + i as f64, (j - i) as i32)
                / (factorial(j - i) * factorial(i) * l.powi(i as i32))
        })
        .collect()
}

fn factorial(k: usize) -> f64 {
    let mut v = 1.0;
    for t in 2..=k {
        v *= t as f64;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn params(beta: f64, gamma: f64, length: f64) -> JacobiParams {
        JacobiParams::new(beta, gamma, length).unwrap()
    }

    const TEST_FAMILIES: [(f64, f64); 4] = [(0.0, 0.0), (0.5, 0.5), (-0.5, -0.5), (1.0, 0.5)];

    #[test]
    fn params_validation() {
        assert!(JacobiParams::new(-1.0, 0.0, 1.0).is_err());
        assert!(JacobiParams::new(0.0, -1.5, 1.0).is_err());
        assert!(JacobiParams::new(0.0, 0.0, 0.0).is_err());
        assert!(JacobiParams::new(0.0, 0.0, -2.0).is_err());
        assert!(jacobi_eval(3, -2.0, 0.0, 0.5).is_err());
    }

    #[test]
    fn eval_low_degree() {
        assert_eq!(jacobi_eval(0, 0.7, -0.2, 0.3).unwrap(), 1.0);
        assert!((jacobi_eval(1, 0.0, 0.0, 0.5).unwrap() - 0.5).abs() < 1e-15);
        // P_2(x) = (3x²−1)/2
        assert!((jacobi_eval(2, 0.0, 0.0, 0.5).unwrap() - (-0.125)).abs() < 1e-15);
        // endpoint identity: J_k(1) = Γ(k+β+1)/(k! Γ(β+1)); k=3, β=1 gives Γ(5)/(6 Γ(2)) = 4
        assert!((jacobi_eval(3, 1.0, 0.5, 1.0).unwrap() - 4.0).abs() < 1e-13);
    }

    #[test]
    fn deriv_low_degree() {
        assert!((jacobi_deriv(1, 1, 0.0, 0.0, 0.7).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(jacobi_deriv(3, 2, 0.8, -0.3, 0.2).unwrap(), 0.0);
        // d/dx P_2 = 3x
        assert!((jacobi_deriv(1, 2, 0.0, 0.0, 0.5).unwrap() - 1.5).abs() < 1e-15);
    }

    #[test]
    fn deriv_matches_finite_differences() {
        let h = 1e-6;
        for &(b, g) in &TEST_FAMILIES {
            for k in 0..=10 {
                for &x in &[-0.8, -0.3, 0.1, 0.6, 0.9] {
                    let fd = (eval_recurrence(k, b, g, x + h) - eval_recurrence(k, b, g, x - h))
                        / (2.0 * h);
                    let an = jacobi_deriv(1, k, b, g, x).unwrap();
                    assert!(
                        (fd - an).abs() < 1e-5,
                        "k={k} b={b} g={g} x={x}: fd={fd} analytic={an}"
                    );
                }
            }
        }
    }

    #[test]
    fn reflection_identity() {
        for &(b, g) in &TEST_FAMILIES {
            for k in 0..=12 {
                for &x in &[-0.9, -0.4, 0.0, 0.3, 0.77] {
                    let lhs = jacobi_eval(k, b, g, -x).unwrap();
                    let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
                    let rhs = sign * jacobi_eval(k, g, b, x).unwrap();
                    let scale = 1.0 + lhs.abs().max(rhs.abs());
                    assert!(
                        (lhs - rhs).abs() <= 1e-12 * scale,
                        "k={k} b={b} g={g} x={x}: {lhs} vs {rhs}"
                    );
                }
            }
        }
    }

    #[test]
    fn shifted_eval_basics() {
        let p = params(0.0, 0.0, 1.0);
        assert_eq!(shifted_eval(0, &p, 0.42).unwrap(), 1.0);
        // 2x−1 at 0.75
        assert!((shifted_eval(1, &p, 0.75).unwrap() - 0.5).abs() < 1e-15);
        // J_{L,2}(0) = (−1)² · 1
        assert!((shifted_eval(2, &p, 0.0).unwrap() - 1.0).abs() < 1e-14);
        assert!(shifted_eval(1, &p, 1.5).is_err());
        assert!(shifted_eval(1, &p, -0.1).is_err());
    }

    #[test]
    fn shifted_endpoint_identities() {
        for &(b, g) in &TEST_FAMILIES {
            for &length in &[1.0, PI] {
                let p = params(b, g, length);
                for k in 0..=15 {
                    let left = shifted_eval(k, &p, 0.0).unwrap();
                    let right = shifted_eval(k, &p, length).unwrap();
                    let left_closed = shifted_at_left(k, &p);
                    let right_closed = shifted_at_right(k, &p);
                    assert!(
                        (left - left_closed).abs() <= 1e-12 * left_closed.abs(),
                        "left endpoint k={k} b={b} g={g}: {left} vs {left_closed}"
                    );
                    assert!(
                        (right - right_closed).abs() <= 1e-12 * right_closed.abs(),
                        "right endpoint k={k} b={b} g={g}: {right} vs {right_closed}"
                    );
                }
            }
        }
    }

    #[test]
    fn shifted_deriv_basics() {
        let p = params(0.0, 0.0, 1.0);
        assert!((shifted_deriv(1, 1, &p, 0.3).unwrap() - 2.0).abs() < 1e-15);
        assert_eq!(shifted_deriv(1, 0, &p, 0.6).unwrap(), 0.0);
        let p_pi = params(0.0, 0.0, PI);
        // shifted P_2 has its extremum at the midpoint
        assert!(shifted_deriv(1, 2, &p_pi, PI / 2.0).unwrap().abs() < 1e-14);
    }

    #[test]
    fn power_series_match_recurrence() {
        for &(b, g) in &TEST_FAMILIES {
            let p = params(b, g, 1.0);
            for j in 0..=10 {
                let left = power_series_at_left(j, &p);
                let right = power_series_at_right(j, &p);
                for t in 0..50 {
                    let x = (t as f64 + 0.5) / 50.0;
                    let reference = shifted_eval(j, &p, x).unwrap();
                    let via_left: f64 = left
                        .iter()
                        .enumerate()
                        .map(|(i, &c)| c * x.powi(i as i32))
                        .sum();
                    let via_right: f64 = right
                        .iter()
                        .enumerate()
                        .map(|(i, &c)| c * (x - 1.0).powi(i as i32))
                        .sum();
                    let scale = 1.0 + reference.abs();
                    assert!(
                        (via_left - reference).abs() <= 1e-9 * scale,
                        "left series j={j} b={b} g={g} x={x}: {via_left} vs {reference}"
                    );
                    assert!(
                        (via_right - reference).abs() <= 1e-9 * scale,
                        "right series j={j} b={b} g={g} x={x}: {via_right} vs {reference}"
                    );
                }
            }
        }
    }

    #[test]
    fn lobatto_trivial_and_symmetric() {
        let p = params(0.3, 0.9, 1.0);
        assert_eq!(gauss_lobatto_nodes(1, &p).unwrap(), vec![0.0, 1.0]);

        let p_pi = params(0.0, 0.0, PI);
        let nodes = gauss_lobatto_nodes(2, &p_pi).unwrap();
        assert!((nodes[1] - PI / 2.0).abs() < 1e-14);

        let p1 = params(0.0, 0.0, 1.0);
        let nodes = gauss_lobatto_nodes(4, &p1).unwrap();
        assert_eq!(nodes.len(), 5);
        for q in 0..=4 {
            assert!(
                (nodes[q] + nodes[4 - q] - 1.0).abs() < 1e-13,
                "asymmetric pair {nodes:?}"
            );
        }
    }

    #[test]
    fn lobatto_monotone_for_asymmetric_family() {
        let p = params(1.0, 0.5, 2.0);
        for m in [2, 5, 9, 16] {
            let nodes = gauss_lobatto_nodes(m, &p).unwrap();
            assert_eq!(nodes.len(), m + 1);
            assert_eq!(nodes[0], 0.0);
            assert_eq!(nodes[m], 2.0);
            assert!(nodes.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn norm_values() {
        assert!((norm_h(0, &params(0.0, 0.0, 1.0)) - 1.0).abs() < 1e-14);
        assert!((norm_h(1, &params(0.0, 0.0, 1.0)) - 1.0 / 3.0).abs() < 1e-14);
        assert!((norm_h(0, &params(0.0, 0.0, 2.0)) - 2.0).abs() < 1e-14);
    }

    #[test]
    fn quadrature_total_mass() {
        // Σ wᵢ = ∫ w dx = h_0 since J_{L,0} = 1
        for &(b, g) in &TEST_FAMILIES {
            for &length in &[1.0, 2.5] {
                let p = params(b, g, length);
                for n in [1, 4, 12, 25] {
                    let rule = GaussJacobiRule::new(n, &p).unwrap();
                    let mass: f64 = rule.weights().iter().sum();
                    let h0 = norm_h(0, &p);
                    assert!(
                        (mass - h0).abs() <= 1e-12 * h0,
                        "n={n} b={b} g={g} L={length}: {mass} vs {h0}"
                    );
                }
            }
        }
    }

    #[test]
    fn expansion_examples() {
        let p = params(0.3, 0.7, 1.0);
        // a basis element expands to a unit vector
        let e = expand_coeffs(|x| shifted_eval_unchecked(2, &p, x), 5, &p).unwrap();
        for (j, &c) in e.coeffs().iter().enumerate() {
            let expected = if j == 2 { 1.0 } else { 0.0 };
            assert!((c - expected).abs() < 1e-12, "coeff {j} = {c}");
        }

        // x = ½·1 + ½·(2x−1) on [0,1] with β=γ=0
        let p0 = params(0.0, 0.0, 1.0);
        let e = expand_coeffs(|x| x, 1, &p0).unwrap();
        assert!((e.coeffs()[0] - 0.5).abs() < 1e-13);
        assert!((e.coeffs()[1] - 0.5).abs() < 1e-13);

        let z = expand_coeffs(|_| 0.0, 3, &p).unwrap();
        assert!(z.coeffs().iter().all(|&c| c == 0.0));

        // reconstruction of a polynomial of degree ≤ M is exact to roundoff
        let f = |x: f64| 3.0 * x * x * x - 2.0 * x + 0.25;
        let e = expand_coeffs(f, 4, &p).unwrap();
        for &x in &[0.0, 0.21, 0.5, 0.98, 1.0] {
            assert!((e.evaluate(x).unwrap() - f(x)).abs() < 1e-12);
        }
    }

    #[test]
    fn expansion_rejects_non_finite_samples() {
        let p = params(0.0, 0.0, 1.0);
        assert!(expand_coeffs(|x| 1.0 / (x - x), 2, &p).is_err());
    }
}
