//! The Kobayashi `k`-metric.
//!
//! `K^k(p, ξ) = inf 1/λ` over holomorphic discs `f` into the domain with
//! `f(0) = p` and `k`-jet `λ·ξ`. The solver searches polynomial discs
//! `p + Σ_{j≤d} a_j ζ^j` whose first `k` coefficients are pinned to
//! `λ^j ξ_j / j!`, bisecting on `λ` and solving a convex feasibility problem
//! for the free tail at each step. Only boundary nodes are constrained: for a
//! plurisubharmonic `ρ`, `ρ∘f` is subharmonic, so the boundary controls the
//! interior.

use std::f64::consts::TAU;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::discs::AnalyticDisc;
use crate::domains::Domain;
use crate::error::{Error, Result};
use crate::jets::{factorial, jet_pushforward, jet_scale, vec_norm, AnalyticMapSeries, JetVector};
use crate::lsq::{levenberg_marquardt, LmOptions};

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SolverConfig {
    /// Polynomial degree of competitor discs.
    pub degree: usize,
    /// Boundary nodes; admissibility is rechecked on a grid four times finer.
    pub grid: usize,
    /// Relative width of the final bracket on `λ`.
    pub bisect_tol: f64,
    pub inner_max_iter: usize,
    pub max_outer: usize,
    /// Feasible means `ρ(f) ≤ -margin` at every node.
    pub margin: f64,
    pub seed: u64,
    /// Upper end of the initial bracket; derived from a Parseval bound if unset.
    pub lambda_max: Option<f64>,
    /// Extra random starts tried when the warm start fails.
    pub multistart: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            degree: 12,
            grid: 256,
            bisect_tol: 1e-3,
            inner_max_iter: 200,
            max_outer: 60,
            margin: 1e-6,
            seed: 0,
            lambda_max: None,
            multistart: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverReport {
    pub outer_iterations: usize,
    pub inner_iterations: usize,
    pub bracket: [f64; 2],
    pub lambda_max: f64,
    /// Largest `ρ(f)` over the solver grid.
    pub max_rho_nodes: f64,
    /// Largest `ρ(f)` over the fine grid.
    pub max_rho_fine: f64,
    pub fine_grid: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricResult {
    pub value: f64,
    pub lambda: f64,
    pub jet: JetVector,
    pub extremal: AnalyticDisc,
    pub report: SolverReport,
    pub config: SolverConfig,
}

/// `|v| / (1 - |p|²)`.
pub fn k1_disc_closed_form(p: Complex64, v: Complex64) -> Result<f64> {
    if !(p.norm() < 1.0) {
        return Err(Error::OutsideDomain);
    }
    Ok(v.norm() / (1.0 - p.norm_sqr()))
}

/// `√(|ξ_1|² + |ξ_2|/2)` for a scalar 2-jet at the origin.
pub fn k2_disc_closed_form(xi: &JetVector) -> Result<f64> {
    if xi.dim() != 1 {
        return Err(Error::DimensionMismatch("closed form needs a scalar jet".into()));
    }
    if xi.order() != 2 {
        return Err(Error::InvalidOrder(format!("expected order 2, got {}", xi.order())));
    }
    if xi.base()[0] != ZERO {
        return Err(Error::BasePointNotZero);
    }
    let (a, b) = (xi.component(1)[0], xi.component(2)[0]);
    Ok((a.norm_sqr() + b.norm() / 2.0).sqrt())
}

/// `e^{ijθ_m}` for every node `m` and `0 ≤ j ≤ d`.
struct Nodes {
    powers: Vec<Vec<Complex64>>,
}

impl Nodes {
    fn new(n_nodes: usize, degree: usize) -> Self {
        let powers = (0..n_nodes)
            .map(|m| {
                let z = Complex64::from_polar(1.0, TAU * m as f64 / n_nodes as f64);
                let mut pow = Complex64::new(1.0, 0.0);
                (0..=degree)
                    .map(|_| {
                        let out = pow;
                        pow *= z;
                        out
                    })
                    .collect()
            })
            .collect();
        Self { powers }
    }

    fn len(&self) -> usize {
        self.powers.len()
    }
}

/// Competitor discs at fixed `λ`; the unknowns are the real and imaginary
/// parts of the tail coefficients `a_{k+1}, ..., a_d`.
struct Problem<'a> {
    domain: &'a Domain,
    /// Pinned coefficients `a_0, ..., a_k`.
    head: Vec<Vec<Complex64>>,
    degree: usize,
    dim: usize,
    target: f64,
    hood: Option<&'a Neighborhood>,
}

/// Ball constraint `‖a_j - center_j‖ ≤ radius` on every tail coefficient.
#[derive(Debug, Clone)]
pub(crate) struct Neighborhood {
    /// `a_{k+1}, ..., a_d` of the reference disc.
    pub center: Vec<Vec<Complex64>>,
    pub radius: f64,
}

impl Neighborhood {
    fn flatten(&self) -> DVector<f64> {
        DVector::from_iterator(
            self.center.len() * self.center.first().map_or(0, Vec::len) * 2,
            self.center.iter().flatten().flat_map(|z| [z.re, z.im]),
        )
    }
}

impl<'a> Problem<'a> {
    fn new(
        domain: &'a Domain,
        xi: &JetVector,
        lambda: f64,
        degree: usize,
        target: f64,
        hood: Option<&'a Neighborhood>,
    ) -> Self {
        let mut head = vec![xi.base().to_vec()];
        let mut pow = 1.0;
        for (i, c) in xi.components().iter().enumerate() {
            pow *= lambda;
            let scale = pow / factorial(i + 1);
            head.push(c.iter().map(|z| z * scale).collect());
        }
        Self {
            domain,
            head,
            degree,
            dim: xi.dim(),
            target,
            hood,
        }
    }

    fn order(&self) -> usize {
        self.head.len() - 1
    }

    fn n_vars(&self) -> usize {
        2 * self.dim * (self.degree - self.order())
    }

    fn coefficients(&self, x: &DVector<f64>) -> Vec<Vec<Complex64>> {
        let mut coeffs = self.head.clone();
        for j in self.order() + 1..=self.degree {
            let base = 2 * self.dim * (j - self.order() - 1);
            coeffs.push(
                (0..self.dim)
                    .map(|h| Complex64::new(x[base + 2 * h], x[base + 2 * h + 1]))
                    .collect(),
            );
        }
        coeffs
    }

    fn point(&self, coeffs: &[Vec<Complex64>], powers: &[Complex64]) -> Vec<Complex64> {
        (0..self.dim)
            .map(|h| coeffs.iter().zip(powers).map(|(a, z)| a[h] * z).sum())
            .collect()
    }

    fn in_neighborhood(&self, x: &DVector<f64>, margin: f64) -> bool {
        let Some(hood) = self.hood else { return true };
        let coeffs = self.coefficients(x);
        hood.center.iter().enumerate().all(|(i, center)| {
            let diff: Vec<Complex64> = coeffs[self.order() + 1 + i].iter().zip(center).map(|(a, c)| a - c).collect();
            vec_norm(&diff).powi(2) <= hood.radius * hood.radius - margin
        })
    }

    fn max_rho(&self, nodes: &Nodes, x: &DVector<f64>) -> f64 {
        let coeffs = self.coefficients(x);
        nodes
            .powers
            .iter()
            .map(|pw| self.domain.rho(&self.point(&coeffs, pw)))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Hinge residuals `max(0, ρ(f(ζ_m)) + target)` and their Jacobian.
    fn residuals(&self, nodes: &Nodes, x: &DVector<f64>) -> (DVector<f64>, DMatrix<f64>) {
        let coeffs = self.coefficients(x);
        let k = self.order();
        let extra = if self.hood.is_some() { self.degree - k } else { 0 };
        let mut r = DVector::zeros(nodes.len() + extra);
        let mut jac = DMatrix::zeros(nodes.len() + extra, self.n_vars());
        if let Some(hood) = self.hood {
            for (i, center) in hood.center.iter().enumerate() {
                let row = nodes.len() + i;
                let base = 2 * self.dim * i;
                let diff: Vec<Complex64> = coeffs[k + 1 + i].iter().zip(center).map(|(a, c)| a - c).collect();
                let value = vec_norm(&diff).powi(2) - hood.radius * hood.radius + self.target;
                if value > 0.0 {
                    r[row] = value;
                    for (h, d) in diff.iter().enumerate() {
                        jac[(row, base + 2 * h)] = 2.0 * d.re;
                        jac[(row, base + 2 * h + 1)] = 2.0 * d.im;
                    }
                }
            }
        }
        for (m, pw) in nodes.powers.iter().enumerate() {
            let z = self.point(&coeffs, pw);
            let value = self.domain.rho(&z) + self.target;
            if value <= 0.0 {
                continue;
            }
            r[m] = value;
            let grad = self.domain.drho(&z);
            for j in k + 1..=self.degree {
                let base = 2 * self.dim * (j - k - 1);
                for (h, g) in grad.iter().enumerate() {
                    let w = pw[j] * g;
                    jac[(m, base + 2 * h)] = 2.0 * w.re;
                    jac[(m, base + 2 * h + 1)] = -2.0 * w.im;
                }
            }
        }
        (r, jac)
    }

    /// Drives every node to `ρ ≤ -margin`; returns the iterations spent.
    fn solve(&self, nodes: &Nodes, x0: DVector<f64>, margin: f64, max_iter: usize) -> (Option<DVector<f64>>, usize) {
        if self.n_vars() == 0 {
            let ok = self.max_rho(nodes, &x0) <= -margin && self.in_neighborhood(&x0, margin);
            return (ok.then_some(x0), 0);
        }
        // Each hinge residual is at most `target - margin` once the cost is
        // below half its square.
        let slack = self.target - margin;
        let out = levenberg_marquardt(
            x0,
            LmOptions {
                max_iter,
                target_cost: 0.5 * slack * slack,
                ..Default::default()
            },
            |x| self.residuals(nodes, x),
        );
        let ok = self.max_rho(nodes, &out.x) <= -margin && self.in_neighborhood(&out.x, margin);
        (ok.then_some(out.x), out.iterations)
    }
}

fn parseval_lambda_max(domain: &Domain, xi: &JetVector) -> f64 {
    let r2 = domain.bounding_radius().powi(2);
    let room = (r2 - vec_norm(xi.base()).powi(2)).max(1e-300).sqrt();
    xi.components()
        .iter()
        .enumerate()
        .filter_map(|(i, c)| {
            let norm = vec_norm(c);
            (norm > 0.0).then(|| (room * factorial(i + 1) / norm).powf(1.0 / (i + 1) as f64))
        })
        .fold(f64::INFINITY, f64::min)
        * 1.01
}

/// Numerical `K^k_Ω(p, ξ)` with `p` the base point of `ξ` and `k` its order.
pub fn kobayashi_k_metric(domain: &Domain, xi: &JetVector, cfg: &SolverConfig) -> Result<MetricResult> {
    solve_extremal(domain, xi, cfg, None)
}

/// Bisection on `λ`, optionally with tail coefficients confined to `hood`.
pub(crate) fn solve_extremal(
    domain: &Domain,
    xi: &JetVector,
    cfg: &SolverConfig,
    hood: Option<&Neighborhood>,
) -> Result<MetricResult> {
    if xi.dim() != domain.dim() {
        return Err(Error::DimensionMismatch(format!(
            "jet in C^{} for a domain in C^{}",
            xi.dim(),
            domain.dim()
        )));
    }
    if xi.is_zero() {
        return Err(Error::ZeroJet);
    }
    if !domain.flags().claims_psh {
        return Err(Error::NotPlurisubharmonic);
    }
    if cfg.degree < xi.order() {
        return Err(Error::InvalidOrder(format!(
            "degree {} below jet order {}",
            cfg.degree,
            xi.order()
        )));
    }
    crate::circle::check_grid(cfg.grid)?;
    let rho_p = domain.rho(xi.base());
    if rho_p > -cfg.margin {
        return Err(Error::InfeasibleAtZero(rho_p));
    }

    let nodes = Nodes::new(cfg.grid, cfg.degree);
    let fine = Nodes::new(4 * cfg.grid, cfg.degree);
    let lambda_max = cfg.lambda_max.unwrap_or_else(|| parseval_lambda_max(domain, xi));
    let n_vars = 2 * xi.dim() * (cfg.degree - xi.order());
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let target = 2.0 * cfg.margin;

    let mut lo = 0.0;
    let mut hi = lambda_max;
    if let Some(h) = hood {
        if h.center.len() != cfg.degree - xi.order() || h.center.iter().any(|c| c.len() != xi.dim()) {
            return Err(Error::DimensionMismatch("neighborhood center does not match the tail".into()));
        }
    }
    let mut best = hood.map_or_else(|| DVector::zeros(n_vars), Neighborhood::flatten);
    let mut inner = 0;
    let mut outer = 0;

    let mut attempt = |lambda: f64, warm: &DVector<f64>, inner: &mut usize| -> Option<DVector<f64>> {
        let problem = Problem::new(domain, xi, lambda, cfg.degree, target, hood);
        let mut starts = vec![warm.clone()];
        let fallback = hood.map_or_else(|| DVector::zeros(n_vars), Neighborhood::flatten);
        if warm != &fallback {
            starts.push(fallback);
        }
        for _ in 0..cfg.multistart {
            let scale = 0.1 * domain.bounding_radius();
            starts.push(DVector::from_fn(n_vars, |_, _| rng.gen_range(-scale..scale)));
        }
        for x0 in starts {
            let (found, its) = problem.solve(&nodes, x0, cfg.margin, cfg.inner_max_iter);
            *inner += its;
            let Some(x) = found else { continue };
            if problem.max_rho(&fine, &x) <= 0.0 {
                return Some(x);
            }
            let (found, its) = problem.solve(&fine, x, cfg.margin, cfg.inner_max_iter);
            *inner += its;
            if let Some(x) = found {
                return Some(x);
            }
        }
        None
    };

    while hi - lo > cfg.bisect_tol * hi {
        if outer >= cfg.max_outer {
            return Err(Error::NotConverged {
                lo,
                hi,
                iterations: outer,
            });
        }
        outer += 1;
        let mid = 0.5 * (lo + hi);
        match attempt(mid, &best, &mut inner) {
            Some(x) => {
                lo = mid;
                best = x;
            }
            None => hi = mid,
        }
    }
    if lo == 0.0 {
        return Err(Error::NotConverged {
            lo,
            hi,
            iterations: outer,
        });
    }

    let problem = Problem::new(domain, xi, lo, cfg.degree, target, hood);
    let coeffs = problem.coefficients(&best);
    let numerators = (0..xi.dim())
        .map(|h| coeffs.iter().map(|a| a[h]).collect())
        .collect();
    Ok(MetricResult {
        value: 1.0 / lo,
        lambda: lo,
        jet: xi.clone(),
        extremal: AnalyticDisc::polynomial(numerators)?,
        report: SolverReport {
            outer_iterations: outer,
            inner_iterations: inner,
            bracket: [lo, hi],
            lambda_max,
            max_rho_nodes: problem.max_rho(&nodes, &best),
            max_rho_fine: problem.max_rho(&fine, &best),
            fine_grid: 4 * cfg.grid,
        },
        config: cfg.clone(),
    })
}

/// Higher-order metric over discs `p + ζ^k Ψ` with `Ψ(0) = λ v`, i.e. the
/// `k`-metric on the jet `(0, ..., 0, v)`.
pub fn yu_metric(
    domain: &Domain,
    p: &[Complex64],
    v: &[Complex64],
    k: usize,
    cfg: &SolverConfig,
) -> Result<MetricResult> {
    if k == 0 {
        return Err(Error::InvalidOrder("order must be at least 1".into()));
    }
    if v.iter().all(|z| *z == ZERO) {
        return Err(Error::ZeroJet);
    }
    let mut components = vec![vec![ZERO; v.len()]; k - 1];
    components.push(v.to_vec());
    kobayashi_k_metric(domain, &JetVector::new(p.to_vec(), components)?, cfg)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyCheck {
    pub name: String,
    pub samples: usize,
    /// Largest amount by which the property failed (negative when it held
    /// with room to spare).
    pub worst_violation: f64,
    pub allowed: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub checks: Vec<PropertyCheck>,
    pub pass: bool,
}

impl PropertyReport {
    pub fn from_checks(checks: Vec<PropertyCheck>) -> Self {
        let pass = checks.iter().all(|c| c.pass);
        Self { checks, pass }
    }
}

struct Tracker {
    name: &'static str,
    samples: usize,
    worst: f64,
    allowed: f64,
    pass: bool,
}

impl Tracker {
    fn new(name: &'static str, allowed: f64) -> Self {
        Self {
            name,
            samples: 0,
            worst: f64::NEG_INFINITY,
            allowed,
            pass: true,
        }
    }

    /// Records a violation measured against a tolerance of `allowed·scale`.
    fn record(&mut self, violation: f64, scale: f64) {
        self.samples += 1;
        let normalized = violation / scale.max(1e-300);
        self.worst = self.worst.max(normalized);
        if !(normalized <= self.allowed) {
            self.pass = false;
        }
    }

    fn finish(self) -> PropertyCheck {
        PropertyCheck {
            name: self.name.into(),
            samples: self.samples,
            worst_violation: self.worst,
            allowed: self.allowed,
            pass: self.pass,
        }
    }
}

fn random_vec(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect()
}

fn random_jet(rng: &mut ChaCha8Rng, base: &[Complex64], k: usize) -> Result<JetVector> {
    let comps = (0..k).map(|_| random_vec(rng, base.len())).collect();
    JetVector::new(base.to_vec(), comps)
}

/// Homogeneity, monotonicity in `k` and the decreasing property under `map`,
/// each on `samples` random jets at the reference point of `source`.
///
/// Tolerances are relative: a numerical violation counts when it exceeds
/// three bisection tolerances of the larger side. On the unit disc the closed
/// forms are checked too, to `1e-12`.
pub fn metric_property_suite(
    source: &Domain,
    target: &Domain,
    map: &AnalyticMapSeries,
    samples: usize,
    seed: u64,
    cfg: &SolverConfig,
) -> Result<PropertyReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = source.reference_point().to_vec();
    let n = source.dim();
    let slack = 3.0 * cfg.bisect_tol;
    let closed = n == 1 && p[0] == ZERO && source.rho(&[Complex64::new(1.0, 0.0)]).abs() < 1e-15
        && source.rho(&[ZERO]) == -1.0;

    let mut closed_homog = Tracker::new("closed_form_homogeneity", 1e-12);
    let mut closed_mono = Tracker::new("closed_form_monotonicity", 1e-12);
    let mut homog = Tracker::new("homogeneity", slack);
    let mut mono = Tracker::new("monotonicity", slack);
    let mut decr = Tracker::new("decreasing", slack);

    for _ in 0..samples {
        let xi = random_jet(&mut rng, &p, 2)?;
        let modulus = rng.gen_range(0.3..2.0);
        let c = Complex64::from_polar(modulus, rng.gen_range(0.0..TAU));
        let scaled = jet_scale(c, &xi);

        if closed {
            let a = k2_disc_closed_form(&scaled)?;
            let b = modulus * k2_disc_closed_form(&xi)?;
            closed_homog.record((a - b).abs(), a.max(b));
            let k1 = k1_disc_closed_form(ZERO, xi.component(1)[0])?;
            let k2 = k2_disc_closed_form(&xi)?;
            closed_mono.record(k1 - k2, k2);
        }

        let base_value = kobayashi_k_metric(source, &xi, cfg)?.value;
        let scaled_value = kobayashi_k_metric(source, &scaled, cfg)?.value;
        let expected = modulus * base_value;
        homog.record((scaled_value - expected).abs(), scaled_value.max(expected));

        let first = JetVector::new(p.clone(), vec![xi.component(1).to_vec()])?;
        if !first.is_zero() {
            let k1 = kobayashi_k_metric(source, &first, cfg)?.value;
            mono.record(k1 - base_value, base_value.max(k1));
        }

        let pushed = jet_pushforward(map, &xi)?;
        if !pushed.is_zero() {
            let image = kobayashi_k_metric(target, &pushed, cfg)?.value;
            decr.record(image - base_value, base_value.max(image));
        }
    }

    let mut checks = Vec::new();
    if closed {
        checks.push(closed_homog.finish());
        checks.push(closed_mono.finish());
    }
    checks.extend([homog.finish(), mono.finish(), decr.finish()]);
    Ok(PropertyReport::from_checks(checks))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domains::{make_ellipsoid, make_unit_ball, make_unit_disc};
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn closed_forms() {
        assert_eq!(k1_disc_closed_form(ZERO, c(1.0, 0.0)).unwrap(), 1.0);
        assert_eq!(k1_disc_closed_form(ZERO, ZERO).unwrap(), 0.0);
        assert_relative_eq!(k1_disc_closed_form(c(0.5, 0.0), c(1.0, 0.0)).unwrap(), 4.0 / 3.0);
        assert!(matches!(k1_disc_closed_form(c(1.0, 0.0), c(1.0, 0.0)), Err(Error::OutsideDomain)));
        let k2 = |a: f64, b: f64| k2_disc_closed_form(&JetVector::scalar(&[c(a, 0.0), c(b, 0.0)]).unwrap()).unwrap();
        assert_eq!(k2(1.0, 0.0), 1.0);
        assert_eq!(k2(0.0, 2.0), 1.0);
        assert_relative_eq!(k2(1.0, 2.0), 2f64.sqrt());
        let off = JetVector::new(vec![c(0.1, 0.0)], vec![vec![c(1.0, 0.0)], vec![ZERO]]).unwrap();
        assert!(matches!(k2_disc_closed_form(&off), Err(Error::BasePointNotZero)));
    }

    #[test]
    fn solver_reproduces_k2_on_disc() {
        let xi = JetVector::scalar(&[c(1.0, 0.0), c(2.0, 0.0)]).unwrap();
        let r = kobayashi_k_metric(&make_unit_disc(), &xi, &SolverConfig::default()).unwrap();
        assert!((r.value / 2f64.sqrt() - 1.0).abs() < 0.02, "value {}", r.value);
        assert_relative_eq!(r.value * r.lambda, 1.0, epsilon = 1e-12);
        assert!(r.report.max_rho_fine <= 0.0);
    }

    #[test]
    fn solver_k1_examples() {
        let cfg = SolverConfig::default();
        let xi = JetVector::scalar(&[c(2.0, 0.0)]).unwrap();
        let r = kobayashi_k_metric(&make_unit_disc(), &xi, &cfg).unwrap();
        assert!((r.value / 2.0 - 1.0).abs() < 0.02);
        let ball = make_unit_ball(2).unwrap();
        let xi = JetVector::at_origin(vec![vec![c(1.0, 0.0), ZERO]]).unwrap();
        let r = kobayashi_k_metric(&ball, &xi, &cfg).unwrap();
        assert!((r.value - 1.0).abs() < 0.02);
    }

    #[test]
    fn yu_examples() {
        let cfg = SolverConfig::default();
        let r = yu_metric(&make_unit_disc(), &[ZERO], &[c(2.0, 0.0)], 2, &cfg).unwrap();
        assert!((r.value - 1.0).abs() < 0.02);
        assert_eq!(r.extremal.taylor(0, 1)[1], ZERO);
        let r = yu_metric(&make_unit_disc(), &[ZERO], &[c(1.0, 0.0)], 1, &cfg).unwrap();
        assert!((r.value - 1.0).abs() < 0.02);
    }

    #[test]
    fn errors() {
        let cfg = SolverConfig::default();
        let disc = make_unit_disc();
        let zero = JetVector::scalar(&[ZERO, ZERO]).unwrap();
        assert!(matches!(kobayashi_k_metric(&disc, &zero, &cfg), Err(Error::ZeroJet)));
        let outside = JetVector::new(vec![c(2.0, 0.0)], vec![vec![c(1.0, 0.0)]]).unwrap();
        assert!(matches!(
            kobayashi_k_metric(&disc, &outside, &cfg),
            Err(Error::InfeasibleAtZero(_))
        ));
        let e = make_ellipsoid(&[1.0, 2.0]).unwrap();
        let xi = JetVector::scalar(&[c(1.0, 0.0)]).unwrap();
        assert!(matches!(kobayashi_k_metric(&e, &xi, &cfg), Err(Error::DimensionMismatch(_))));
    }
}
