//! Bounded domains `Ω = {ρ < 0}` given by defining functions.
//!
//! Built-in families carry analytic gradients `∂ρ = (∂ρ/∂z_1, ..., ∂ρ/∂z_n)`.
//! Custom domains may omit the gradient, in which case a central finite
//! difference with step `1e-6` is used. Either way the gradient is checked
//! against finite differences of `ρ` at construction.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::circle::CircleFunction;
use crate::discs::AnalyticDisc;
use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

pub const FD_GRADIENT_STEP: f64 = 1e-6;
const GRADIENT_PROBES: usize = 100;
const GRADIENT_REL_TOL: f64 = 1e-5;
const GRADIENT_SEED: u64 = 0x5eed_0fd0;

/// Boundary points are located to `|ρ| ≤ 1e-10`.
pub const BOUNDARY_TOL: f64 = 1e-10;
/// Chord half-length for second differences in [`convexity_probe`].
pub const CHORD_STEP: f64 = 1e-5;
/// Second differences below this flag the strict-convexity claim.
pub const CURVATURE_FLOOR: f64 = 1e-8;

pub type RhoFn = Arc<dyn Fn(&[Complex64]) -> f64 + Send + Sync>;
pub type GradFn = Arc<dyn Fn(&[Complex64]) -> Vec<Complex64> + Send + Sync>;

#[derive(Clone)]
enum DefiningFunction {
    /// `Σ c_j |z_j|^{2 m_j} - 1`; ellipsoids have every `m_j = 1`.
    Monomial { coeffs: Vec<f64>, exponents: Vec<u32> },
    Custom { rho: RhoFn, drho: GradFn },
}

/// Structural claims supplied by the constructor; see [`convexity_probe`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DomainFlags {
    pub claims_psh: bool,
    pub claims_convex: bool,
    pub claims_strictly_convex: bool,
}

impl DomainFlags {
    pub const ALL: Self = Self {
        claims_psh: true,
        claims_convex: true,
        claims_strictly_convex: true,
    };
}

#[derive(Clone)]
pub struct Domain {
    dim: usize,
    defining: DefiningFunction,
    flags: DomainFlags,
    bounding_radius: f64,
    reference_point: Vec<Complex64>,
    spec: Option<DomainSpec>,
}

impl fmt::Debug for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Domain")
            .field("dim", &self.dim)
            .field("spec", &self.spec)
            .field("flags", &self.flags)
            .field("bounding_radius", &self.bounding_radius)
            .finish()
    }
}

/// JSON description of a built-in domain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DomainSpec {
    pub kind: DomainKind,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub coeffs: Vec<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub exponents: Vec<u32>,
    /// Dimension of a ball; ignored by the other kinds.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DomainKind {
    Disc,
    Ball,
    Ellipsoid,
    ComplexEllipsoid,
}

impl DomainSpec {
    pub fn build(&self) -> Result<Domain> {
        match self.kind {
            DomainKind::Disc => Ok(make_unit_disc()),
            DomainKind::Ball => make_unit_ball(self.dim.unwrap_or(2)),
            DomainKind::Ellipsoid => make_ellipsoid(&self.coeffs),
            DomainKind::ComplexEllipsoid => {
                let coeffs = if self.coeffs.is_empty() {
                    vec![1.0; self.exponents.len()]
                } else {
                    self.coeffs.clone()
                };
                make_complex_ellipsoid(&coeffs, &self.exponents)
            }
        }
    }
}

impl Domain {
    /// Domain from a user-supplied defining function.
    ///
    /// Without `drho` the gradient falls back to central finite differences.
    pub fn custom(
        dim: usize,
        rho: RhoFn,
        drho: Option<GradFn>,
        flags: DomainFlags,
        bounding_radius: f64,
        reference_point: Vec<Complex64>,
    ) -> Result<Self> {
        let drho = drho.unwrap_or_else(|| {
            let rho = rho.clone();
            Arc::new(move |z: &[Complex64]| fd_gradient(&*rho, z, FD_GRADIENT_STEP))
        });
        Self::assemble(
            dim,
            DefiningFunction::Custom { rho, drho },
            flags,
            bounding_radius,
            reference_point,
            None,
        )
    }

    fn assemble(
        dim: usize,
        defining: DefiningFunction,
        flags: DomainFlags,
        bounding_radius: f64,
        reference_point: Vec<Complex64>,
        spec: Option<DomainSpec>,
    ) -> Result<Self> {
        if dim == 0 || reference_point.len() != dim {
            return Err(Error::InvalidDomain("reference point dimension".into()));
        }
        if !(bounding_radius > 0.0 && bounding_radius.is_finite()) {
            return Err(Error::InvalidDomain("bounding radius must be positive".into()));
        }
        let domain = Self {
            dim,
            defining,
            flags,
            bounding_radius,
            reference_point,
            spec,
        };
        if !(domain.rho(&domain.reference_point) < 0.0) {
            return Err(Error::InvalidDomain("reference point is not interior".into()));
        }
        domain.check_gradient()?;
        Ok(domain)
    }

    fn check_gradient(&self) -> Result<()> {
        let mut rng = ChaCha8Rng::seed_from_u64(GRADIENT_SEED);
        for _ in 0..GRADIENT_PROBES {
            let z: Vec<Complex64> = (0..self.dim)
                .map(|_| {
                    Complex64::new(
                        rng.gen_range(-1.0..1.0) * self.bounding_radius,
                        rng.gen_range(-1.0..1.0) * self.bounding_radius,
                    )
                })
                .collect();
            let analytic = self.drho(&z);
            let numeric = fd_gradient(&|w: &[Complex64]| self.rho(w), &z, FD_GRADIENT_STEP);
            let diff: f64 = analytic
                .iter()
                .zip(&numeric)
                .map(|(a, b)| (a - b).norm_sqr())
                .sum::<f64>()
                .sqrt();
            let scale = analytic.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt().max(1.0);
            if !(diff <= GRADIENT_REL_TOL * scale) {
                return Err(Error::InvalidDomain(format!(
                    "gradient disagrees with finite differences by {diff:.3e} at {z:?}"
                )));
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn flags(&self) -> DomainFlags {
        self.flags
    }

    pub fn bounding_radius(&self) -> f64 {
        self.bounding_radius
    }

    pub fn reference_point(&self) -> &[Complex64] {
        &self.reference_point
    }

    pub fn spec(&self) -> Option<&DomainSpec> {
        self.spec.as_ref()
    }

    pub fn rho(&self, z: &[Complex64]) -> f64 {
        match &self.defining {
            DefiningFunction::Monomial { coeffs, exponents } => {
                coeffs
                    .iter()
                    .zip(exponents)
                    .zip(z)
                    .map(|((c, &m), w)| c * w.norm_sqr().powi(m as i32))
                    .sum::<f64>()
                    - 1.0
            }
            DefiningFunction::Custom { rho, .. } => rho(z),
        }
    }

    pub fn drho(&self, z: &[Complex64]) -> Vec<Complex64> {
        match &self.defining {
            DefiningFunction::Monomial { coeffs, exponents } => coeffs
                .iter()
                .zip(exponents)
                .zip(z)
                .map(|((c, &m), w)| {
                    c * m as f64 * w.norm_sqr().powi(m as i32 - 1) * w.conj()
                })
                .collect(),
            DefiningFunction::Custom { drho, .. } => drho(z),
        }
    }

    /// `ρ(z + δ) - ρ(z)` without cancellation for the built-in families.
    pub fn rho_increment(&self, z: &[Complex64], delta: &[Complex64]) -> f64 {
        match &self.defining {
            DefiningFunction::Monomial { coeffs, exponents } => coeffs
                .iter()
                .zip(exponents)
                .zip(z.iter().zip(delta))
                .map(|((c, &m), (w, d))| {
                    let s = w.norm_sqr();
                    let t = (w + d).norm_sqr();
                    let diff = 2.0 * (w.conj() * d).re + d.norm_sqr();
                    let sum: f64 = (0..m).map(|i| t.powi(i as i32) * s.powi((m - 1 - i) as i32)).sum();
                    c * diff * sum
                })
                .sum(),
            DefiningFunction::Custom { rho, .. } => {
                let shifted: Vec<Complex64> = z.iter().zip(delta).map(|(a, b)| a + b).collect();
                rho(&shifted) - rho(z)
            }
        }
    }
}

/// `∂ρ/∂z_j = (∂ρ/∂x_j - i ∂ρ/∂y_j)/2` by central differences.
pub fn fd_gradient(rho: &dyn Fn(&[Complex64]) -> f64, z: &[Complex64], step: f64) -> Vec<Complex64> {
    let mut w = z.to_vec();
    (0..z.len())
        .map(|j| {
            let orig = w[j];
            w[j] = orig + step;
            let xp = rho(&w);
            w[j] = orig - step;
            let xm = rho(&w);
            w[j] = orig + Complex64::new(0.0, step);
            let yp = rho(&w);
            w[j] = orig - Complex64::new(0.0, step);
            let ym = rho(&w);
            w[j] = orig;
            let dx = (xp - xm) / (2.0 * step);
            let dy = (yp - ym) / (2.0 * step);
            Complex64::new(dx / 2.0, -dy / 2.0)
        })
        .collect()
}

/// `ρ(ζ) = |ζ|² - 1` on `C`.
pub fn make_unit_disc() -> Domain {
    build_monomial(
        vec![1.0],
        vec![1],
        DomainSpec {
            kind: DomainKind::Disc,
            coeffs: vec![],
            exponents: vec![],
            dim: None,
        },
    )
    .expect("unit disc is valid")
}

/// Unit ball of `C^n`.
pub fn make_unit_ball(n: usize) -> Result<Domain> {
    if n == 0 {
        return Err(Error::InvalidDomain("dimension must be positive".into()));
    }
    build_monomial(
        vec![1.0; n],
        vec![1; n],
        DomainSpec {
            kind: DomainKind::Ball,
            coeffs: vec![],
            exponents: vec![],
            dim: Some(n),
        },
    )
}

/// `ρ(z) = Σ a_j |z_j|² - 1`.
pub fn make_ellipsoid(a: &[f64]) -> Result<Domain> {
    check_coeffs(a)?;
    build_monomial(
        a.to_vec(),
        vec![1; a.len()],
        DomainSpec {
            kind: DomainKind::Ellipsoid,
            coeffs: a.to_vec(),
            exponents: vec![],
            dim: None,
        },
    )
}

/// `ρ(z) = Σ c_j |z_j|^{2 m_j} - 1` with integer `m_j ≥ 1`.
pub fn make_complex_ellipsoid(coeffs: &[f64], exponents: &[u32]) -> Result<Domain> {
    check_coeffs(coeffs)?;
    if coeffs.len() != exponents.len() {
        return Err(Error::InvalidDomain("coeffs and exponents differ in length".into()));
    }
    if exponents.contains(&0) {
        return Err(Error::InvalidDomain("exponents must be at least 1".into()));
    }
    build_monomial(
        coeffs.to_vec(),
        exponents.to_vec(),
        DomainSpec {
            kind: DomainKind::ComplexEllipsoid,
            coeffs: coeffs.to_vec(),
            exponents: exponents.to_vec(),
            dim: None,
        },
    )
}

fn check_coeffs(a: &[f64]) -> Result<()> {
    if a.is_empty() {
        return Err(Error::InvalidDomain("no coefficients".into()));
    }
    match a.iter().position(|&x| !(x > 0.0 && x.is_finite())) {
        Some(index) => Err(Error::NonPositiveCoefficient {
            index,
            value: a[index],
        }),
        None => Ok(()),
    }
}

fn build_monomial(coeffs: Vec<f64>, exponents: Vec<u32>, spec: DomainSpec) -> Result<Domain> {
    let n = coeffs.len();
    // |z_j| ≤ c_j^{-1/(2 m_j)} on the closure.
    let radius = coeffs
        .iter()
        .zip(&exponents)
        .map(|(c, &m)| c.powf(-1.0 / m as f64))
        .sum::<f64>()
        .sqrt();
    Domain::assemble(
        n,
        DefiningFunction::Monomial { coeffs, exponents },
        DomainFlags::ALL,
        radius * (1.0 + 1e-12),
        vec![ZERO; n],
        Some(spec),
    )
}

/// `ρ(z) ≤ -margin`.
pub fn contains(domain: &Domain, z: &[Complex64], margin: f64) -> bool {
    domain.rho(z) <= -margin
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConvexityReport {
    pub boundary_points: usize,
    pub chords: usize,
    pub min_second_difference: f64,
    pub worst_point: Vec<Complex64>,
    pub worst_direction: Vec<Complex64>,
    /// Set when some second difference falls below [`CURVATURE_FLOOR`] while
    /// the domain claims strict convexity.
    pub violation: bool,
}

fn bisect_boundary(domain: &Domain, direction: &[Complex64], ray: usize) -> Result<Vec<Complex64>> {
    let p = domain.reference_point();
    let at = |t: f64| -> Vec<Complex64> { p.iter().zip(direction).map(|(a, d)| a + d * t).collect() };
    let mut lo = 0.0;
    let mut hi = 2.0 * domain.bounding_radius();
    if !(domain.rho(&at(hi)) > 0.0) {
        return Err(Error::DegenerateRay { direction: ray });
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let value = domain.rho(&at(mid));
        if value.abs() <= BOUNDARY_TOL {
            return Ok(at(mid));
        }
        if value < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::DegenerateRay { direction: ray })
}

fn normalize(v: &mut [Complex64]) -> f64 {
    let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if n > 0.0 {
        v.iter_mut().for_each(|z| *z /= n);
    }
    n
}

/// Samples boundary points and real tangent chords and reports the smallest
/// second difference `(ρ(b+hw) + ρ(b-hw) - 2ρ(b))/h²`.
///
/// Rays along every coordinate axis (`±e_j`, `±i e_j`) are always probed
/// before `trials` random rays; tangent directions are the projected real
/// coordinate directions plus four random ones per point.
pub fn convexity_probe(domain: &Domain, trials: usize, seed: u64) -> Result<ConvexityReport> {
    let n = domain.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut directions: Vec<Vec<Complex64>> = Vec::new();
    for h in 0..n {
        for unit in [
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(-1.0, 0.0),
            Complex64::new(0.0, -1.0),
        ] {
            let mut d = vec![ZERO; n];
            d[h] = unit;
            directions.push(d);
        }
    }
    for _ in 0..trials {
        let mut d: Vec<Complex64> = (0..n)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        if normalize(&mut d) > 1e-6 {
            directions.push(d);
        }
    }

    let mut report = ConvexityReport {
        boundary_points: 0,
        chords: 0,
        min_second_difference: f64::INFINITY,
        worst_point: vec![],
        worst_direction: vec![],
        violation: false,
    };
    for (ray, d) in directions.iter().enumerate() {
        let b = bisect_boundary(domain, d, ray)?;
        report.boundary_points += 1;
        let grad = domain.drho(&b);
        let gnorm_sq: f64 = grad.iter().map(|g| g.norm_sqr()).sum();
        if gnorm_sq == 0.0 {
            continue;
        }
        let mut tangents: Vec<Vec<Complex64>> = Vec::new();
        for h in 0..n {
            for unit in [Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)] {
                let mut w = vec![ZERO; n];
                w[h] = unit;
                tangents.push(w);
            }
        }
        for _ in 0..4 {
            tangents.push(
                (0..n)
                    .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                    .collect(),
            );
        }
        // Real-tangent projection: remove the component along the real
        // gradient, whose pairing with w is Re Σ w_j ∂_jρ.
        let gconj: Vec<Complex64> = grad.iter().map(|g| g.conj()).collect();
        for mut w in tangents {
            let pairing: f64 = w.iter().zip(&grad).map(|(a, g)| (a * g).re).sum();
            for (a, g) in w.iter_mut().zip(&gconj) {
                *a -= g * (pairing / gnorm_sq);
            }
            if normalize(&mut w) < 1e-8 {
                continue;
            }
            let step: Vec<Complex64> = w.iter().map(|a| a * CHORD_STEP).collect();
            let back: Vec<Complex64> = step.iter().map(|a| -a).collect();
            let d2 = (domain.rho_increment(&b, &step) + domain.rho_increment(&b, &back))
                / (CHORD_STEP * CHORD_STEP);
            report.chords += 1;
            if d2 < report.min_second_difference {
                report.min_second_difference = d2;
                report.worst_point = b.clone();
                report.worst_direction = w.clone();
            }
        }
    }
    report.violation =
        domain.flags().claims_strictly_convex && report.min_second_difference < CURVATURE_FLOOR;
    Ok(report)
}

/// `θ ↦ ρ(f(e^{iθ}))` on an `N`-point grid.
pub fn boundary_distance_profile(
    domain: &Domain,
    f: &AnalyticDisc,
    n_samples: usize,
) -> Result<CircleFunction> {
    profile_on_radius(domain, f, 1.0, n_samples)
}

/// `θ ↦ ρ(f(r e^{iθ}))`.
pub fn profile_on_radius(
    domain: &Domain,
    f: &AnalyticDisc,
    r: f64,
    n_samples: usize,
) -> Result<CircleFunction> {
    if f.dim() != domain.dim() {
        return Err(Error::DimensionMismatch(format!(
            "disc in C^{} against a domain in C^{}",
            f.dim(),
            domain.dim()
        )));
    }
    let trace = f.trace_on_radius(r, n_samples)?;
    CircleFunction::real((0..n_samples).map(|m| domain.rho(&trace.sample(m))).collect())
}
