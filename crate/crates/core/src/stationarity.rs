//! Stationary discs.
//!
//! A disc `f` attached to `bΩ` is `k`-stationary when some positive weight
//! `c` on the circle makes `ζ^k c ∂ρ(f)` the boundary trace of a holomorphic
//! map, the lift `f̃`. On the unit disc the weight comes out of a winding
//! number and a harmonic conjugate; in general it is searched for as
//! `c = e^h` with `h` a real trigonometric polynomial.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use nalgebra::{DMatrix, DVector};

use crate::circle::{
    self, continuous_log, fourier_transform, holomorphic_extension, monomial_trace, real_completion,
    spectrum_residual, winding_number, CircleFunction, FourierSpectrum,
};
use crate::discs::{reparametrize, AnalyticDisc};
use crate::domains::{boundary_distance_profile, Domain};
use crate::error::{Error, Result};
use crate::jets::{factorial, first_nonzero_index, jet_of_disc, jet_scale, vec_norm, JetVector};
use crate::kobayashi::{solve_extremal, MetricResult, Neighborhood, SolverConfig};
use crate::lsq::{levenberg_marquardt, LmOptions};

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Tolerance met by certificates from [`scalar_stationarity_exact`].
pub const EXACT_TOL: f64 = 1e-10;
const MIN_MODULUS: f64 = 1e-8;
const UNIT_MODULUS_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct StationarityConfig {
    pub grid: usize,
    /// Highest Fourier mode of `log c` in the search.
    pub modes: usize,
    pub stat_tol: f64,
    pub el_tol: f64,
    /// Largest `|ρ(f)|` on the grid accepted as boundary attachment.
    pub boundary_tol: f64,
    pub max_iter: usize,
    pub perturbation_radius: f64,
    pub extremality_tol: f64,
    pub properness_tol: f64,
    pub properness_fraction: f64,
    pub solver: SolverConfig,
}

impl Default for StationarityConfig {
    fn default() -> Self {
        Self {
            grid: circle::DEFAULT_GRID,
            modes: 64,
            stat_tol: 1e-8,
            el_tol: 1e-2,
            boundary_tol: 1e-8,
            max_iter: 100,
            perturbation_radius: 0.1,
            extremality_tol: 1e-3,
            properness_tol: 5e-2,
            properness_fraction: 0.95,
            solver: SolverConfig::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StationarityCertificate {
    pub k: usize,
    pub grid: usize,
    /// Samples of the weight at `θ_m = 2πm/N`, normalized so `mean(log c) = 0`.
    pub c: Vec<f64>,
    pub lift: AnalyticDisc,
    /// Relative negative-frequency mass of `ζ^k c ∂ρ(f)`.
    pub residual: f64,
    pub tolerance: f64,
    /// Winding number of `ζ^k conj(f)` (scalar disc case only).
    pub winding: Option<i64>,
    /// `max |ρ(f)|` over the grid.
    pub boundary_defect: f64,
    /// Number of modes in the search for `log c`; absent for exact certificates.
    pub modes: Option<usize>,
}

impl StationarityCertificate {
    pub fn log_weight(&self) -> Vec<f64> {
        self.c.iter().map(|c| c.ln()).collect()
    }
}

/// Exact certificate for a scalar inner disc against `ρ = |z|² - 1`.
///
/// `ζ^k conj(f)` must have winding number zero; its continuous logarithm `g`
/// is completed by a real `h` so that `g + h` is holomorphic, and `c = e^h`.
pub fn scalar_stationarity_exact(
    f: &AnalyticDisc,
    k: usize,
    n_samples: usize,
) -> Result<StationarityCertificate> {
    if f.dim() != 1 {
        return Err(Error::DimensionMismatch("exact certificate needs a scalar disc".into()));
    }
    if k == 0 {
        return Err(Error::InvalidOrder("order must be at least 1".into()));
    }
    let trace = f.boundary_trace(n_samples)?;
    let defect = trace
        .component(0)
        .iter()
        .map(|z| (z.norm() - 1.0).abs())
        .fold(0.0, f64::max);
    if defect > UNIT_MODULUS_TOL {
        return Err(Error::NotOnBoundary(defect));
    }
    let monomial = monomial_trace(k as i64, n_samples);
    let target = trace.conj().scale_by(&monomial)?;
    let winding = winding_number(&target, MIN_MODULUS)?;
    if winding != 0 {
        return Err(Error::NonzeroWinding(winding));
    }
    let log = continuous_log(&target, MIN_MODULUS)?;
    let h = real_completion(&log)?;
    let c: Vec<f64> = h.real_values().iter().map(|x| x.exp()).collect();
    let weighted = target.scale_by(&c.iter().map(|x| Complex64::from(*x)).collect::<Vec<_>>())?;
    let residual = circle::negative_tail_residual(&weighted)?;
    if residual > EXACT_TOL {
        return Err(Error::ResidualAboveTolerance {
            best: residual,
            tol: EXACT_TOL,
        });
    }
    Ok(StationarityCertificate {
        k,
        grid: n_samples,
        c,
        lift: holomorphic_extension(&weighted, EXACT_TOL)?,
        residual,
        tolerance: EXACT_TOL,
        winding: Some(winding),
        boundary_defect: defect,
        modes: None,
    })
}

/// Outcome of the weight search on a fixed trace.
struct WeightFit {
    log_weight: Vec<f64>,
    weighted: CircleFunction,
    residual: f64,
}

/// Spectrum shifted by `s` modes: slot `i` receives the coefficient of `i - s`.
fn shifted(spectrum: &[Complex64], s: isize) -> impl Iterator<Item = Complex64> + '_ {
    let n = spectrum.len() as isize;
    (0..n).map(move |i| spectrum[(i - s).rem_euclid(n) as usize])
}

fn log_weight_samples(x: &DVector<f64>, modes: usize, n_samples: usize) -> Vec<f64> {
    (0..n_samples)
        .map(|m| {
            let theta = circle::node(m, n_samples);
            (1..=modes)
                .map(|q| {
                    let (s, c) = (q as f64 * theta).sin_cos();
                    x[2 * q - 2] * c + x[2 * q - 1] * s
                })
                .sum()
        })
        .collect()
}

/// Minimizes the relative negative tail of `e^h u` over
/// `h = Σ_{q=1}^{M} (α_q cos qθ + β_q sin qθ)`, starting from `h = 0`.
///
/// Multiplying by `cos qθ` or `sin qθ` shifts the spectrum by `±q`, so the
/// Jacobian columns are combinations of shifted copies of the spectrum.
fn fit_weight(u: &CircleFunction, modes: usize, max_iter: usize) -> Result<WeightFit> {
    let n = u.len();
    let half = n / 2;
    if modes >= half {
        return Err(Error::InvalidOrder(format!("{modes} modes need a grid finer than {n}")));
    }
    let dim = u.dim();
    let rows = 2 * dim * half;
    let weighted_at = |x: &DVector<f64>| -> Result<CircleFunction> {
        let w: Vec<Complex64> = log_weight_samples(x, modes, n)
            .into_iter()
            .map(|h| Complex64::from(h.exp()))
            .collect();
        u.scale_by(&w)
    };
    let eval = |x: &DVector<f64>| -> (DVector<f64>, DMatrix<f64>) {
        let v = weighted_at(x).expect("grid matches");
        let spec = fourier_transform(&v);
        let coeffs = spec.fft_order();
        let total: f64 = spec.total_mass();
        let s = total.sqrt();
        let mut r = DVector::zeros(rows);
        for (h, c) in coeffs.iter().enumerate() {
            for (i, z) in c[half..].iter().enumerate() {
                r[2 * (h * half + i)] = z.re / s;
                r[2 * (h * half + i) + 1] = z.im / s;
            }
        }
        let mut jac = DMatrix::zeros(rows, 2 * modes);
        for q in 1..=modes {
            for (col, kind) in [(2 * q - 2, 0), (2 * q - 1, 1)] {
                let mut dmass = 0.0;
                let mut dneg: Vec<Complex64> = Vec::with_capacity(dim * half);
                for c in coeffs {
                    let plus = shifted(c, q as isize);
                    let minus = shifted(c, -(q as isize));
                    for (i, (a, b)) in plus.zip(minus).enumerate() {
                        let dz = if kind == 0 { 0.5 * (a + b) } else { (a - b) / (2.0 * I) };
                        dmass += (c[i].conj() * dz).re;
                        if i >= half {
                            dneg.push(dz);
                        }
                    }
                }
                // d s = (1/s) Σ Re(conj(v̂) dv̂)
                let ds = dmass / s;
                for (idx, dz) in dneg.iter().enumerate() {
                    let row = 2 * idx;
                    jac[(row, col)] = dz.re / s - r[row] * ds / s;
                    jac[(row + 1, col)] = dz.im / s - r[row + 1] * ds / s;
                }
            }
        }
        (r, jac)
    };
    let out = levenberg_marquardt(
        DVector::zeros(2 * modes),
        LmOptions {
            max_iter,
            target_cost: 0.5 * 1e-28,
            ..Default::default()
        },
        eval,
    );
    let weighted = weighted_at(&out.x)?;
    let residual = spectrum_residual(&fourier_transform(&weighted))?;
    Ok(WeightFit {
        log_weight: log_weight_samples(&out.x, modes, n),
        weighted,
        residual,
    })
}

/// `(ζ^k ∂ρ(f(ζ_m)))_m` with the gradient checked for zeros.
fn weighted_gradient(domain: &Domain, trace: &CircleFunction, k: usize) -> Result<CircleFunction> {
    let n = trace.len();
    let mut comps = vec![Vec::with_capacity(n); domain.dim()];
    let monomial = monomial_trace(k as i64, n);
    for m in 0..n {
        let g = domain.drho(&trace.sample(m));
        if !(vec_norm(&g) > 1e-12) {
            return Err(Error::VanishingGradient(m));
        }
        for (c, z) in comps.iter_mut().zip(g) {
            c.push(z * monomial[m]);
        }
    }
    CircleFunction::new(comps)
}

fn check_inputs(domain: &Domain, f: &AnalyticDisc, k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidOrder("order must be at least 1".into()));
    }
    if f.dim() != domain.dim() {
        return Err(Error::DimensionMismatch(format!(
            "disc in C^{} against a domain in C^{}",
            f.dim(),
            domain.dim()
        )));
    }
    Ok(())
}

/// Searches for a weight certifying `k`-stationarity of `f` for `domain`.
///
/// Failure to reach `cfg.stat_tol` is reported with the best residual; it is
/// not a proof that no weight exists.
pub fn stationarity_search(
    domain: &Domain,
    f: &AnalyticDisc,
    k: usize,
    cfg: &StationarityConfig,
) -> Result<StationarityCertificate> {
    check_inputs(domain, f, k)?;
    let profile = boundary_distance_profile(domain, f, cfg.grid)?;
    let defect = profile.real_values().iter().map(|v| v.abs()).fold(0.0, f64::max);
    if defect > cfg.boundary_tol {
        return Err(Error::NotOnBoundary(defect));
    }
    certify(domain, f, k, cfg, cfg.stat_tol, defect)
}

fn certify(
    domain: &Domain,
    f: &AnalyticDisc,
    k: usize,
    cfg: &StationarityConfig,
    tol: f64,
    defect: f64,
) -> Result<StationarityCertificate> {
    let trace = f.boundary_trace(cfg.grid)?;
    let u = weighted_gradient(domain, &trace, k)?;
    let fit = fit_weight(&u, cfg.modes, cfg.max_iter)?;
    if !(fit.residual <= tol) {
        return Err(Error::ResidualAboveTolerance {
            best: fit.residual,
            tol,
        });
    }
    Ok(StationarityCertificate {
        k,
        grid: cfg.grid,
        c: fit.log_weight.iter().map(|h| h.exp()).collect(),
        lift: holomorphic_extension(&fit.weighted, tol)?,
        residual: fit.residual,
        tolerance: tol,
        winding: None,
        boundary_defect: defect,
        modes: Some(cfg.modes),
    })
}

/// `S(λ) = Re Σ_{j=1}^{k} (1 + λ + ... + λ^{j-1}) / (j!(k-j)!) ⟨f^{(j)}(0), f̃^{(k-j)}(0)⟩`
/// with the bilinear pairing `⟨v, w⟩ = Σ v_h w_h`.
pub fn pairing_sum(f: &AnalyticDisc, lift: &AnalyticDisc, lambda: f64, k: usize) -> Result<f64> {
    if k == 0 {
        return Err(Error::InvalidOrder("order must be at least 1".into()));
    }
    if !(lambda > 0.0 && lambda <= 1.0) {
        return Err(Error::BadLambda(lambda));
    }
    if f.dim() != lift.dim() {
        return Err(Error::DimensionMismatch("disc and lift differ in dimension".into()));
    }
    // f^{(j)}(0) = j! a_j and f̃^{(k-j)}(0) = (k-j)! b_{k-j}; the factorials cancel.
    let a = f.taylor_vectors(k);
    let b = lift.taylor_vectors(k);
    let mut total = 0.0;
    let mut geometric = 0.0;
    let mut pow = 1.0;
    for j in 1..=k {
        geometric += pow;
        pow *= lambda;
        let pairing: Complex64 = a[j].iter().zip(&b[k - j]).map(|(x, y)| x * y).sum();
        total += geometric * pairing.re;
    }
    Ok(total)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyPoint {
    pub lambda: f64,
    /// Distance between the jet of `f(λζ)` and `λ·ξ`.
    pub jet_defect: f64,
    /// `(1 - λ) S(λ)`.
    pub weighted_pairing: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub best_mu: f64,
    pub bracket: [f64; 2],
    pub competitor: AnalyticDisc,
    /// `min_θ Re⟨f - g, ∂ρ(f)⟩` for the best competitor `g`.
    pub min_convexity_pairing: f64,
    /// `(1 - μ) S(μ)` at the best competitor.
    pub weighted_pairing: f64,
    pub family: Vec<FamilyPoint>,
    /// `S(1)`.
    pub pairing_at_one: f64,
    pub certificate_residual: f64,
    pub pass: bool,
}

pub const FAMILY_LAMBDAS: [f64; 4] = [0.5, 0.7, 0.9, 0.99];

/// Looks for competitors near `f` that beat it for its own jet.
///
/// The solver is rerun with every tail coefficient confined to a ball of
/// radius `cfg.perturbation_radius` around the corresponding Taylor
/// coefficient of `f`; a best `μ` above `1 + cfg.extremality_tol` is returned
/// as [`Error::ProbeFailed`] with the full report.
pub fn local_extremality_probe(
    domain: &Domain,
    f: &AnalyticDisc,
    k: usize,
    cfg: &StationarityConfig,
) -> Result<ProbeReport> {
    check_inputs(domain, f, k)?;
    let cert = stationarity_search(domain, f, k, cfg)
        .map_err(|e| Error::NotCertifiedStationary(e.to_string()))?;
    if !domain.flags().claims_strictly_convex {
        return Err(Error::InvalidDomain("the probe needs a strictly convex domain".into()));
    }
    let xi = jet_of_disc(f, k)?;
    let degree = cfg.solver.degree;
    if degree <= k {
        return Err(Error::InvalidOrder(format!("degree {degree} leaves no free tail at order {k}")));
    }
    let taylor = f.taylor_vectors(degree);
    let hood = Neighborhood {
        center: taylor[k + 1..].to_vec(),
        radius: cfg.perturbation_radius,
    };
    let result = solve_extremal(domain, &xi, &cfg.solver, Some(&hood))?;
    let mu = result.lambda;
    let g = result.extremal;

    let f_trace = f.boundary_trace(cfg.grid)?;
    let g_trace = g.boundary_trace(cfg.grid)?;
    let min_convexity_pairing = (0..cfg.grid)
        .map(|m| {
            let fz = f_trace.sample(m);
            let grad = domain.drho(&fz);
            fz.iter()
                .zip(g_trace.sample(m))
                .zip(&grad)
                .map(|((a, b), d)| (a - b) * d)
                .sum::<Complex64>()
                .re
        })
        .fold(f64::INFINITY, f64::min);

    let mut family = Vec::new();
    for lambda in FAMILY_LAMBDAS {
        let g_lambda = reparametrize(f, lambda)?;
        let jet_defect = jet_of_disc(&g_lambda, k)?.component_distance(&jet_scale(lambda.into(), &xi));
        family.push(FamilyPoint {
            lambda,
            jet_defect,
            weighted_pairing: (1.0 - lambda) * pairing_sum(f, &cert.lift, lambda, k)?,
        });
    }
    let weighted_pairing = (1.0 - mu) * pairing_sum(f, &cert.lift, mu.min(1.0), k)?;
    let report = ProbeReport {
        best_mu: mu,
        bracket: result.report.bracket,
        competitor: g,
        min_convexity_pairing,
        weighted_pairing,
        family,
        pairing_at_one: pairing_sum(f, &cert.lift, 1.0, k)?,
        certificate_residual: cert.residual,
        pass: mu <= 1.0 + cfg.extremality_tol,
    };
    if !report.pass {
        return Err(Error::ProbeFailed(Box::new(report)));
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EulerLagrangeReport {
    /// Fraction of grid nodes with `ρ(f) > -properness_tol`.
    pub properness_fraction: f64,
    pub properness_tol: f64,
    pub residual: f64,
    pub el_tol: f64,
    pub pass: bool,
    /// Present when the check fails, for inspection.
    pub witness: Option<AnalyticDisc>,
}

/// Necessary conditions for an extremal disc, checked on a solver witness:
/// the disc should be almost proper and `k`-stationary up to `cfg.el_tol`.
pub fn euler_lagrange_check(
    domain: &Domain,
    result: &MetricResult,
    k: usize,
    cfg: &StationarityConfig,
) -> Result<EulerLagrangeReport> {
    let f = &result.extremal;
    check_inputs(domain, f, k)?;
    let profile = boundary_distance_profile(domain, f, cfg.grid)?.real_values();
    let proper = profile.iter().filter(|v| **v > -cfg.properness_tol).count();
    let properness_fraction = proper as f64 / profile.len() as f64;
    let trace = f.boundary_trace(cfg.grid)?;
    let residual = match weighted_gradient(domain, &trace, k) {
        Ok(u) => fit_weight(&u, cfg.modes, cfg.max_iter)?.residual,
        Err(Error::VanishingGradient(_)) => 1.0,
        Err(e) => return Err(e),
    };
    let pass = properness_fraction >= cfg.properness_fraction && residual <= cfg.el_tol;
    Ok(EulerLagrangeReport {
        properness_fraction,
        properness_tol: cfg.properness_tol,
        residual,
        el_tol: cfg.el_tol,
        pass,
        witness: (!pass).then(|| f.clone()),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FunctionalValue {
    pub name: String,
    /// Derivative order the functional reads (0 for the base point).
    pub order: usize,
    /// Coordinate or complement-vector index (one-based; 0 when unused).
    pub index: usize,
    /// `None` when the value is undefined (a fractional power of a
    /// nonpositive normalizer).
    pub value: Option<f64>,
    /// Prescribed value; `None` for the objective.
    pub target: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PoletskyTable {
    pub first_nonzero: usize,
    pub values: Vec<FunctionalValue>,
    /// The objective `j₀!/‖ξ_{j₀}‖² Re⟨a_{j₀}, conj ξ_{j₀}⟩`.
    pub objective: f64,
    pub max_violation: f64,
    /// All constraints hold within `tol` and the objective is positive.
    pub verdict: bool,
    pub tol: f64,
}

pub const POLETSKY_TOL: f64 = 1e-8;

/// `n - 1` vectors spanning `{η : Σ ξ_h η_h = 0}`, orthonormal in the
/// Hermitian product, from Gram-Schmidt on the standard basis.
pub fn complement_basis(xi: &[Complex64]) -> Result<Vec<Vec<Complex64>>> {
    let norm = vec_norm(xi);
    if norm == 0.0 {
        return Err(Error::ZeroJet);
    }
    let n = xi.len();
    let mut basis: Vec<Vec<Complex64>> = vec![xi.iter().map(|z| z.conj() / norm).collect()];
    let mut out = Vec::with_capacity(n - 1);
    for i in 0..n {
        if out.len() == n - 1 {
            break;
        }
        let mut v = vec![ZERO; n];
        v[i] = Complex64::new(1.0, 0.0);
        for _ in 0..2 {
            for q in &basis {
                let proj: Complex64 = v.iter().zip(q).map(|(a, b)| a * b.conj()).sum();
                for (a, b) in v.iter_mut().zip(q) {
                    *a -= proj * b;
                }
            }
        }
        let len = vec_norm(&v);
        if len > 1e-6 {
            v.iter_mut().for_each(|z| *z /= len);
            basis.push(v.clone());
            out.push(v);
        }
    }
    Ok(out)
}

/// Evaluates the constraint functionals characterizing discs with
/// `f(0) = p` and jet `μ·ξ` for some `μ > 0`, from a boundary trace.
///
/// Trapezoid quadrature on the grid gives `(1/2π)∫ f ζ^{-m} dθ = a_m` up to
/// aliasing. Orders below the first nonzero component must vanish
/// identically, so all `2n` real parts are constrained there.
pub fn poletsky_functionals(trace: &CircleFunction, xi: &JetVector) -> Result<PoletskyTable> {
    if trace.dim() != xi.dim() {
        return Err(Error::DimensionMismatch("trace and jet differ in dimension".into()));
    }
    if xi.is_zero() {
        return Err(Error::ZeroJet);
    }
    let k = xi.order();
    if k >= trace.len() / 2 {
        return Err(Error::InvalidOrder("grid too coarse for the jet order".into()));
    }
    let spec = fourier_transform(trace);
    let coeff = |m: usize| spec.coeff_vec(m as i64);
    let bilinear = |a: &[Complex64], b: &[Complex64]| -> Complex64 { a.iter().zip(b).map(|(x, y)| x * y).sum() };
    let conj = |v: &[Complex64]| -> Vec<Complex64> { v.iter().map(|z| z.conj()).collect() };
    let n = xi.dim();
    let p = xi.base();
    let j0 = first_nonzero_index(xi)?;
    let mut values = Vec::new();
    let mut push = |name: &str, order: usize, index: usize, value: Option<f64>, target: Option<f64>| {
        values.push(FunctionalValue {
            name: name.into(),
            order,
            index,
            value,
            target,
        })
    };

    let a0 = coeff(0);
    for h in 0..n {
        push("base_re", 0, h + 1, Some(a0[h].re), Some(p[h].re));
        push("base_im", 0, h + 1, Some(a0[h].im), Some(p[h].im));
    }
    for m in 1..j0 {
        let am = coeff(m);
        for h in 0..n {
            push("vanishing_re", m, h + 1, Some(am[h].re), Some(0.0));
            push("vanishing_im", m, h + 1, Some(am[h].im), Some(0.0));
        }
    }
    let xi0 = xi.component(j0);
    let objective = factorial(j0) / vec_norm(xi0).powi(2) * bilinear(&coeff(j0), &conj(xi0)).re;
    push("objective", j0, 0, Some(objective), None);
    for m in j0..=k {
        let am = coeff(m);
        let xim = xi.component(m);
        if vec_norm(xim) > 0.0 {
            for (l, eta) in complement_basis(xim)?.iter().enumerate() {
                let t = bilinear(&am, eta);
                push("transverse_re", m, l + 1, Some(t.re), Some(0.0));
                // Re(-i t) = Im t
                push("transverse_im", m, l + 1, Some(t.im), Some(0.0));
            }
            let along = bilinear(&am, &conj(xim));
            push("phase", m, 0, Some(along.im), Some(0.0));
            if m > j0 {
                let ratio = factorial(m) / vec_norm(xim).powi(2) * along.re;
                let power = (objective > 0.0).then(|| objective.powf(m as f64 / j0 as f64));
                push("ratio", m, 0, power.map(|pw| ratio - pw), Some(0.0));
            }
        } else {
            for l in 0..n - 1 {
                push("transverse_re", m, l + 1, Some(am[l].re), Some(0.0));
                push("transverse_im", m, l + 1, Some(am[l].im), Some(0.0));
            }
            push("phase", m, 0, Some(am[n - 1].im), Some(0.0));
            push("ratio", m, 0, Some(am[n - 1].re), Some(0.0));
        }
    }

    let mut max_violation: f64 = 0.0;
    let mut defined = true;
    for v in &values {
        match (v.value, v.target) {
            (Some(x), Some(t)) => max_violation = max_violation.max((x - t).abs()),
            (None, _) => defined = false,
            _ => {}
        }
    }
    let verdict = defined && max_violation <= POLETSKY_TOL && objective > POLETSKY_TOL;
    Ok(PoletskyTable {
        first_nonzero: j0,
        values,
        objective,
        max_violation: if defined { max_violation } else { f64::INFINITY },
        verdict,
        tol: POLETSKY_TOL,
    })
}

/// Functionals of a disc's boundary trace on an `N`-point grid.
pub fn poletsky_functionals_of_disc(f: &AnalyticDisc, xi: &JetVector, n_samples: usize) -> Result<PoletskyTable> {
    poletsky_functionals(&f.boundary_trace(n_samples)?, xi)
}

/// Direct test of `f(0) = p` and `a_j = μ^j ξ_j / j!` for some `μ > 0`, on
/// Taylor coefficients, to `tol`.
pub fn jet_condition(f: &AnalyticDisc, xi: &JetVector, tol: f64) -> Result<bool> {
    if f.dim() != xi.dim() {
        return Err(Error::DimensionMismatch("disc and jet differ in dimension".into()));
    }
    let k = xi.order();
    let a = f.taylor_vectors(k);
    let base_gap = a[0].iter().zip(xi.base()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
    if base_gap > tol {
        return Ok(false);
    }
    let j0 = first_nonzero_index(xi)?;
    let xi0 = xi.component(j0);
    let t: Complex64 = factorial(j0) / vec_norm(xi0).powi(2)
        * a[j0].iter().zip(xi0).map(|(x, y)| x * y.conj()).sum::<Complex64>();
    if t.im.abs() > tol || t.re <= tol {
        return Ok(false);
    }
    let mu = t.re.powf(1.0 / j0 as f64);
    Ok((1..=k).all(|j| {
        let scale = mu.powi(j as i32) / factorial(j);
        a[j].iter()
            .zip(xi.component(j))
            .all(|(x, y)| (x - y * scale).norm() <= tol)
    }))
}

/// Spectrum of `ζ^k c ∂ρ(f)` for a certificate, for export.
pub fn certificate_spectrum(
    domain: &Domain,
    f: &AnalyticDisc,
    cert: &StationarityCertificate,
) -> Result<FourierSpectrum> {
    let trace = f.boundary_trace(cert.grid)?;
    let u = weighted_gradient(domain, &trace, cert.k)?;
    let w: Vec<Complex64> = cert.c.iter().map(|c| Complex64::from(*c)).collect();
    Ok(fourier_transform(&u.scale_by(&w)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discs::blaschke_product;
    use crate::domains::{make_unit_ball, make_unit_disc};
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn exact_monomials() {
        for k in 1..=4 {
            let cert = scalar_stationarity_exact(&AnalyticDisc::monomial(k), k, 64).unwrap();
            assert!(cert.residual <= 1e-12);
            assert!(cert.c.iter().all(|x| (x - 1.0).abs() < 1e-12));
            assert_abs_diff_eq!((cert.lift.eval(c(0.3, 0.1)).unwrap()[0] - 1.0).norm(), 0.0, epsilon = 1e-12);
            assert_eq!(cert.winding, Some(0));
        }
        assert!(matches!(
            scalar_stationarity_exact(&AnalyticDisc::monomial(2), 1, 64),
            Err(Error::NonzeroWinding(-1))
        ));
    }

    #[test]
    fn exact_blaschke_weight() {
        // c = |1 - conj(a) ζ|² up to a constant for a single zero a, k = 1.
        let a = c(0.4, -0.3);
        let f = blaschke_product(&[a]).unwrap();
        let cert = scalar_stationarity_exact(&f, 1, 256).unwrap();
        let expected: Vec<f64> = (0..256)
            .map(|m| (1.0 - a.conj() * Complex64::from_polar(1.0, circle::node(m, 256))).norm_sqr())
            .collect();
        let gauge = expected.iter().map(|x| x.ln()).sum::<f64>() / 256.0;
        for (x, e) in cert.c.iter().zip(&expected) {
            assert_abs_diff_eq!(x.ln(), e.ln() - gauge, epsilon = 1e-12);
        }
    }

    #[test]
    fn search_matches_exact() {
        let f = blaschke_product(&[c(0.3, 0.0), c(-0.2, 0.5)]).unwrap();
        let exact = scalar_stationarity_exact(&f, 2, 512).unwrap();
        let found = stationarity_search(&make_unit_disc(), &f, 2, &StationarityConfig::default()).unwrap();
        assert!(found.residual <= 1e-8, "residual {}", found.residual);
        let gap = exact.c.iter().zip(&found.c).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        assert!(gap <= 1e-6, "gap {gap}");
    }

    #[test]
    fn search_ball_linear_disc() {
        let f = AnalyticDisc::identity().product(&AnalyticDisc::constant(&[ZERO]));
        let cert = stationarity_search(&make_unit_ball(2).unwrap(), &f, 1, &StationarityConfig::default()).unwrap();
        assert!(cert.residual < 1e-14);
        assert!(cert.c.iter().all(|x| (x - 1.0).abs() < 1e-12));
        let half = AnalyticDisc::polynomial(vec![vec![ZERO, c(0.5, 0.0), c(0.5, 0.0)], vec![ZERO]]).unwrap();
        assert!(matches!(
            stationarity_search(&make_unit_ball(2).unwrap(), &half, 1, &StationarityConfig::default()),
            Err(Error::NotOnBoundary(_))
        ));
    }

    #[test]
    fn pairing_examples() {
        let one = AnalyticDisc::constant(&[c(1.0, 0.0)]);
        assert_abs_diff_eq!(pairing_sum(&AnalyticDisc::identity(), &one, 0.9, 1).unwrap(), 1.0);
        let sq = AnalyticDisc::monomial(2);
        assert_abs_diff_eq!(pairing_sum(&sq, &one, 0.6, 2).unwrap(), 1.6, epsilon = 1e-15);
        assert_abs_diff_eq!(pairing_sum(&sq, &one, 1.0, 2).unwrap(), 2.0);
    }

    #[test]
    fn complement_is_bilinear_orthogonal() {
        let xi = [c(1.0, 2.0), c(-0.5, 0.3), c(0.0, 1.0)];
        let basis = complement_basis(&xi).unwrap();
        assert_eq!(basis.len(), 2);
        for eta in &basis {
            let p: Complex64 = xi.iter().zip(eta).map(|(a, b)| a * b).sum();
            assert!(p.norm() < 1e-14);
        }
    }

    #[test]
    fn poletsky_examples() {
        let p = [c(0.1, -0.2), c(0.3, 0.0)];
        let xi = JetVector::new(p.to_vec(), vec![vec![c(1.0, 0.0), c(0.5, 0.5)], vec![c(0.0, 1.0), c(2.0, 0.0)]]).unwrap();
        let constant = AnalyticDisc::constant(&p);
        let t = poletsky_functionals_of_disc(&constant, &xi, 64).unwrap();
        assert_abs_diff_eq!(t.objective, 0.0);
        assert!(!t.verdict);

        let lambda = 0.7;
        let coeffs = [p.to_vec()]
            .into_iter()
            .chain(jet_scale(lambda.into(), &xi).taylor_coefficients())
            .collect::<Vec<_>>();
        let numerators = (0..2).map(|h| coeffs.iter().map(|a| a[h]).collect()).collect();
        let f = AnalyticDisc::polynomial(numerators).unwrap();
        let t = poletsky_functionals_of_disc(&f, &xi, 64).unwrap();
        assert_abs_diff_eq!(t.objective, 0.7, epsilon = 1e-14);
        assert!(t.verdict);
        assert!(jet_condition(&f, &xi, 1e-8).unwrap());

        // μ = 0.7 i: jet components picked up phases i and -1.
        let rotated = jet_scale(c(0.0, 0.7), &xi).taylor_coefficients();
        let coeffs = [p.to_vec()].into_iter().chain(rotated).collect::<Vec<_>>();
        let numerators = (0..2).map(|h| coeffs.iter().map(|a| a[h]).collect()).collect();
        let g = AnalyticDisc::polynomial(numerators).unwrap();
        let t = poletsky_functionals_of_disc(&g, &xi, 64).unwrap();
        assert!(!t.verdict);
        assert!(t.values.iter().any(|v| v.name == "phase" && v.value.unwrap().abs() > 0.1));
        assert!(!jet_condition(&g, &xi, 1e-8).unwrap());
    }
}
