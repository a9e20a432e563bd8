//! Rational analytic discs `Δ -> C^n`.
//!
//! Each component is a quotient of polynomials with a denominator that has no
//! zeros on the closed unit disc. Blaschke products and the Schwarz equality
//! discs are rational, so jets and boundary moduli come out exactly.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::circle::{self, CircleFunction};
use crate::error::{Error, Result};

const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };
const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// Slack allowed on `|ζ| ≤ 1` so that rounded boundary nodes still evaluate.
const CLOSED_DISC_SLACK: f64 = 1e-12;
const MIN_DENOMINATOR_MODULUS: f64 = 1e-9;
const SELF_MAP_GRID: usize = 512;

pub(crate) fn poly_mul(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![ZERO; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

#[inline]
pub(crate) fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(ZERO, |acc, c| acc * z + c)
}

/// Taylor coefficients of `p/q` at the origin up to `order`.
fn series_quotient(p: &[Complex64], q: &[Complex64], order: usize) -> Vec<Complex64> {
    let mut t = Vec::with_capacity(order + 1);
    for j in 0..=order {
        let mut acc = p.get(j).copied().unwrap_or(ZERO);
        for i in 1..=j.min(q.len().saturating_sub(1)) {
            acc -= q[i] * t[j - i];
        }
        t.push(acc / q[0]);
    }
    t
}

/// Componentwise rational map on the closed unit disc.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalyticDisc {
    numerators: Vec<Vec<Complex64>>,
    denominators: Vec<Vec<Complex64>>,
}

impl AnalyticDisc {
    pub fn polynomial(numerators: Vec<Vec<Complex64>>) -> Result<Self> {
        let denominators = vec![vec![ONE]; numerators.len()];
        Self::rational(numerators, denominators)
    }

    pub fn rational(
        numerators: Vec<Vec<Complex64>>,
        denominators: Vec<Vec<Complex64>>,
    ) -> Result<Self> {
        if numerators.is_empty() {
            return Err(Error::InvalidDisc("no components".into()));
        }
        if numerators.len() != denominators.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} numerators but {} denominators",
                numerators.len(),
                denominators.len()
            )));
        }
        if numerators.iter().chain(&denominators).any(|c| c.is_empty()) {
            return Err(Error::InvalidDisc("empty coefficient list".into()));
        }
        if numerators
            .iter()
            .chain(&denominators)
            .flatten()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::InvalidDisc("non-finite coefficient".into()));
        }
        for (component, q) in denominators.iter().enumerate() {
            check_denominator(q).map_err(|_| Error::DenominatorVanishes { component })?;
        }
        Ok(Self {
            numerators,
            denominators,
        })
    }

    /// Constant disc `ζ ↦ p`.
    pub fn constant(p: &[Complex64]) -> Self {
        Self {
            numerators: p.iter().map(|z| vec![*z]).collect(),
            denominators: vec![vec![ONE]; p.len()],
        }
    }

    /// Scalar identity disc `ζ ↦ ζ`.
    pub fn identity() -> Self {
        Self::monomial(1)
    }

    /// Scalar disc `ζ ↦ ζ^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![ZERO; k + 1];
        coeffs[k] = ONE;
        Self {
            numerators: vec![coeffs],
            denominators: vec![vec![ONE]],
        }
    }

    pub fn dim(&self) -> usize {
        self.numerators.len()
    }

    pub fn numerator(&self, h: usize) -> &[Complex64] {
        &self.numerators[h]
    }

    pub fn denominator(&self, h: usize) -> &[Complex64] {
        &self.denominators[h]
    }

    pub fn is_polynomial(&self) -> bool {
        self.denominators.iter().all(|q| q.len() == 1)
    }

    /// Largest numerator or denominator degree.
    pub fn degree(&self) -> usize {
        self.numerators
            .iter()
            .chain(&self.denominators)
            .map(|c| c.len() - 1)
            .max()
            .unwrap_or(0)
    }

    pub fn eval(&self, zeta: Complex64) -> Result<Vec<Complex64>> {
        let r = zeta.norm();
        if !(r <= 1.0 + CLOSED_DISC_SLACK) {
            return Err(Error::OutsideClosedDisc(r));
        }
        Ok(self.eval_unchecked(zeta))
    }

    pub(crate) fn eval_unchecked(&self, zeta: Complex64) -> Vec<Complex64> {
        self.numerators
            .iter()
            .zip(&self.denominators)
            .map(|(p, q)| horner(p, zeta) / horner(q, zeta))
            .collect()
    }

    pub fn boundary_trace(&self, n_samples: usize) -> Result<CircleFunction> {
        self.trace_on_radius(1.0, n_samples)
    }

    /// Samples of `θ ↦ f(r e^{iθ})`.
    pub fn trace_on_radius(&self, r: f64, n_samples: usize) -> Result<CircleFunction> {
        CircleFunction::from_vector_fn(self.dim(), n_samples, |t| {
            self.eval_unchecked(Complex64::from_polar(r, t))
        })
    }

    /// Taylor coefficients `a_0..=a_order` of component `h` at the origin.
    pub fn taylor(&self, h: usize, order: usize) -> Vec<Complex64> {
        series_quotient(&self.numerators[h], &self.denominators[h], order)
    }

    /// Taylor coefficients of every component, `[j][h]`.
    pub fn taylor_vectors(&self, order: usize) -> Vec<Vec<Complex64>> {
        let per_component: Vec<_> = (0..self.dim()).map(|h| self.taylor(h, order)).collect();
        (0..=order)
            .map(|j| per_component.iter().map(|t| t[j]).collect())
            .collect()
    }

    /// `f(0)`.
    pub fn center(&self) -> Vec<Complex64> {
        self.numerators
            .iter()
            .zip(&self.denominators)
            .map(|(p, q)| p[0] / q[0])
            .collect()
    }

    /// Maximum of `‖f(e^{iθ_m})‖` over an `N`-point grid.
    pub fn boundary_sup(&self, n_samples: usize) -> f64 {
        (0..n_samples)
            .map(|m| {
                let z = Complex64::from_polar(1.0, TAU * m as f64 / n_samples as f64);
                self.eval_unchecked(z)
                    .iter()
                    .map(|w| w.norm_sqr())
                    .sum::<f64>()
                    .sqrt()
            })
            .fold(0.0, f64::max)
    }

    /// Cartesian product of two discs, `ζ ↦ (f(ζ), g(ζ))`.
    pub fn product(&self, other: &Self) -> Self {
        let mut numerators = self.numerators.clone();
        numerators.extend(other.numerators.iter().cloned());
        let mut denominators = self.denominators.clone();
        denominators.extend(other.denominators.iter().cloned());
        Self {
            numerators,
            denominators,
        }
    }

    /// Pointwise product of two scalar discs.
    pub fn mul_scalar(&self, other: &Self) -> Result<Self> {
        if self.dim() != 1 || other.dim() != 1 {
            return Err(Error::DimensionMismatch("pointwise product needs scalar discs".into()));
        }
        Ok(Self {
            numerators: vec![poly_mul(&self.numerators[0], &other.numerators[0])],
            denominators: vec![poly_mul(&self.denominators[0], &other.denominators[0])],
        })
    }

    /// `f(e^{iα} ζ)`.
    pub fn rotate(&self, alpha: f64) -> Self {
        let scale = |c: &Vec<Complex64>| -> Vec<Complex64> {
            c.iter()
                .enumerate()
                .map(|(j, z)| z * Complex64::from_polar(1.0, alpha * j as f64))
                .collect()
        };
        Self {
            numerators: self.numerators.iter().map(scale).collect(),
            denominators: self.denominators.iter().map(scale).collect(),
        }
    }
}

fn check_denominator(q: &[Complex64]) -> Result<()> {
    if q.len() == 1 {
        return if q[0].norm() >= MIN_DENOMINATOR_MODULUS {
            Ok(())
        } else {
            Err(Error::ZeroFunction)
        };
    }
    let mut n = (16 * q.len()).next_power_of_two().max(64);
    loop {
        let trace = CircleFunction::from_scalar_fn(n, |t| horner(q, Complex64::from_polar(1.0, t)))?;
        match circle::winding_number(&trace, MIN_DENOMINATOR_MODULUS) {
            Ok(0) => return Ok(()),
            Ok(w) => return Err(Error::NonzeroWinding(w)),
            Err(Error::AliasRisk { .. }) if n < 1 << 16 => n *= 2,
            Err(e) => return Err(e),
        }
    }
}

/// Finite Blaschke product `∏ (ζ - a_j)/(1 - conj(a_j) ζ)`.
pub fn blaschke_product(zeros: &[Complex64]) -> Result<AnalyticDisc> {
    if let Some(a) = zeros.iter().find(|a| !(a.norm() < 1.0)) {
        return Err(Error::ModulusNotLessThanOne(a.norm()));
    }
    let mut num = vec![ONE];
    let mut den = vec![ONE];
    for a in zeros {
        num = poly_mul(&num, &[-a, ONE]);
        den = poly_mul(&den, &[ONE, -a.conj()]);
    }
    AnalyticDisc::rational(vec![num], vec![den])
}

/// Equality disc of the second-order Schwarz lemma,
/// `ζ ↦ ζ (e^{iθ}ζ + a)/(1 + conj(a) e^{iθ} ζ)`.
pub fn schwarz_equality_disc(a: Complex64, theta: f64) -> Result<AnalyticDisc> {
    if !(a.norm() < 1.0) {
        return Err(Error::ModulusNotLessThanOne(a.norm()));
    }
    let rot = Complex64::from_polar(1.0, theta);
    AnalyticDisc::rational(vec![vec![ZERO, a, rot]], vec![vec![ONE, a.conj() * rot]])
}

/// `g_λ(ζ) = f(λζ)` for `0 < λ ≤ 1`.
pub fn reparametrize(f: &AnalyticDisc, lambda: f64) -> Result<AnalyticDisc> {
    if !(lambda > 0.0 && lambda <= 1.0) {
        return Err(Error::BadLambda(lambda));
    }
    let scale = |c: &Vec<Complex64>| -> Vec<Complex64> {
        let mut pow = 1.0;
        c.iter()
            .map(|z| {
                let out = z * pow;
                pow *= lambda;
                out
            })
            .collect()
    };
    Ok(AnalyticDisc {
        numerators: f.numerators.iter().map(scale).collect(),
        denominators: f.denominators.iter().map(scale).collect(),
    })
}

/// Slack `2(1 - |f'(0)|²) - |f''(0)|` of the second-order Schwarz inequality.
pub fn schwarz_bound_check(f: &AnalyticDisc) -> Result<f64> {
    if f.dim() != 1 {
        return Err(Error::DimensionMismatch("Schwarz bound needs a scalar disc".into()));
    }
    let t = f.taylor(0, 2);
    if t[0].norm() > 1e-12 {
        return Err(Error::NotCentered(t[0].norm()));
    }
    let sup = f.boundary_sup(SELF_MAP_GRID);
    if sup > 1.0 + 1e-10 {
        return Err(Error::NotSelfMap(sup));
    }
    let first = t[1];
    let second = 2.0 * t[2];
    Ok(2.0 * (1.0 - first.norm_sqr()) - second.norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn eval_examples() {
        let sq = AnalyticDisc::monomial(2);
        assert_abs_diff_eq!((sq.eval(c(0.0, 1.0)).unwrap()[0] - c(-1.0, 0.0)).norm(), 0.0, epsilon = 1e-15);
        let b = blaschke_product(&[c(0.5, 0.0)]).unwrap();
        assert_abs_diff_eq!(b.eval(c(0.5, 0.0)).unwrap()[0].norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!((b.eval(c(1.0, 0.0)).unwrap()[0] - 1.0).norm(), 0.0, epsilon = 1e-15);
        assert!(matches!(b.eval(c(1.5, 0.0)), Err(Error::OutsideClosedDisc(_))));
    }

    #[test]
    fn boundary_trace_examples() {
        let id = AnalyticDisc::identity();
        let tr = id.boundary_trace(16).unwrap();
        for m in 0..16 {
            let expected = Complex64::from_polar(1.0, circle::node(m, 16));
            assert_abs_diff_eq!((tr.component(0)[m] - expected).norm(), 0.0, epsilon = 1e-15);
        }
        let p = [c(0.1, 0.2), c(-0.3, 0.0)];
        let tr = AnalyticDisc::constant(&p).boundary_trace(8).unwrap();
        assert!((0..8).all(|m| tr.sample(m) == p.to_vec()));
        let b = blaschke_product(&[c(0.3, 0.0)]).unwrap();
        let tr = b.boundary_trace(64).unwrap();
        assert!(tr.component(0).iter().all(|z| (z.norm() - 1.0).abs() < 1e-12));
    }

    #[test]
    fn blaschke_examples() {
        let b = blaschke_product(&[ZERO; 3]).unwrap();
        let t = b.taylor(0, 4);
        assert_abs_diff_eq!((t[3] - 1.0).norm(), 0.0, epsilon = 1e-15);
        assert!(t.iter().enumerate().all(|(j, z)| j == 3 || z.norm() < 1e-15));

        let b = blaschke_product(&[c(0.5, 0.0)]).unwrap();
        assert_abs_diff_eq!((b.center()[0] - c(-0.5, 0.0)).norm(), 0.0, epsilon = 1e-15);

        let b = blaschke_product(&[c(0.3, 0.0), c(-0.3, 0.0)]).unwrap();
        assert_abs_diff_eq!((b.center()[0] - c(-0.09, 0.0)).norm(), 0.0, epsilon = 1e-15);

        assert!(matches!(
            blaschke_product(&[c(1.0, 0.0)]),
            Err(Error::ModulusNotLessThanOne(_))
        ));
    }

    #[test]
    fn schwarz_equality_examples() {
        let f = schwarz_equality_disc(ZERO, 0.0).unwrap();
        let t = f.taylor(0, 3);
        assert_abs_diff_eq!((t[2] - 1.0).norm(), 0.0, epsilon = 1e-15);
        assert!(t[1].norm() < 1e-15 && t[3].norm() < 1e-15);

        let f = schwarz_equality_disc(c(0.5, 0.0), 0.0).unwrap();
        let t = f.taylor(0, 2);
        assert_abs_diff_eq!((t[1] - 0.5).norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(2.0 * t[2].norm(), 1.5, epsilon = 1e-15);

        // ζ(-ζ + 1/2)/(1 - ζ/2): second derivative at 0 is -3/2.
        let f = schwarz_equality_disc(c(0.5, 0.0), std::f64::consts::PI).unwrap();
        let t = f.taylor(0, 2);
        assert_abs_diff_eq!((2.0 * t[2] - c(-1.5, 0.0)).norm(), 0.0, epsilon = 1e-14);

        assert!(schwarz_equality_disc(c(0.0, 1.0), 0.0).is_err());
    }

    #[test]
    fn reparametrize_examples() {
        let b = blaschke_product(&[c(0.2, -0.4)]).unwrap();
        assert_eq!(reparametrize(&b, 1.0).unwrap(), b);
        let sq = reparametrize(&AnalyticDisc::monomial(2), 0.5).unwrap();
        assert_abs_diff_eq!((sq.numerator(0)[2] - 0.25).norm(), 0.0, epsilon = 1e-15);
        for bad in [0.0, -0.1, 1.5, f64::NAN] {
            assert!(matches!(reparametrize(&b, bad), Err(Error::BadLambda(_))));
        }
        let g = reparametrize(&b, 0.7).unwrap();
        let z = c(0.3, 0.6);
        let lhs = g.eval(z).unwrap()[0];
        let rhs = b.eval(0.7 * z).unwrap()[0];
        assert_abs_diff_eq!((lhs - rhs).norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn schwarz_bound_examples() {
        assert_abs_diff_eq!(schwarz_bound_check(&AnalyticDisc::identity()).unwrap(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(schwarz_bound_check(&AnalyticDisc::monomial(2)).unwrap(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(schwarz_bound_check(&AnalyticDisc::monomial(3)).unwrap(), 2.0, epsilon = 1e-15);
        let shifted = blaschke_product(&[c(0.5, 0.0)]).unwrap();
        assert!(matches!(schwarz_bound_check(&shifted), Err(Error::NotCentered(_))));
        let big = AnalyticDisc::polynomial(vec![vec![ZERO, c(2.0, 0.0)]]).unwrap();
        assert!(matches!(schwarz_bound_check(&big), Err(Error::NotSelfMap(_))));
    }

    #[test]
    fn denominator_with_interior_zero_rejected() {
        // 1 - 2ζ vanishes at ζ = 1/2.
        let r = AnalyticDisc::rational(vec![vec![ONE]], vec![vec![ONE, c(-2.0, 0.0)]]);
        assert!(matches!(r, Err(Error::DenominatorVanishes { component: 0 })));
        let ok = AnalyticDisc::rational(vec![vec![ONE]], vec![vec![ONE, c(-0.5, 0.0)]]);
        assert!(ok.is_ok());
    }

    #[test]
    fn taylor_of_quotient() {
        // 1/(1 - ζ/2) = Σ 2^{-j} ζ^j
        let f = AnalyticDisc::rational(vec![vec![ONE]], vec![vec![ONE, c(-0.5, 0.0)]]).unwrap();
        for (j, t) in f.taylor(0, 6).iter().enumerate() {
            assert_abs_diff_eq!((t - 0.5f64.powi(j as i32)).norm(), 0.0, epsilon = 1e-15);
        }
    }
}
