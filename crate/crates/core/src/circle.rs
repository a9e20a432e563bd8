//! Sampled functions on the unit circle and their discrete spectra.
//!
//! A [`CircleFunction`] holds `N` samples of a map `bΔ -> C^n` at the
//! equispaced nodes `θ_m = 2πm/N`. Its [`FourierSpectrum`] stores the
//! coefficients `c_j` for `j ∈ [-N/2, N/2)` normalized so that
//! `u(θ_m) = Σ_j c_j e^{ijθ_m}`.
//!
//! Everything that integrates over the circle goes through these two types:
//! residuals of holomorphic extension, real completions (the discrete harmonic
//! conjugate), and winding numbers of nonvanishing scalar traces.

use std::cell::RefCell;
use std::f64::consts::{FRAC_PI_2, TAU};
use std::fmt::Write as _;

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::discs::AnalyticDisc;
use crate::error::{Error, Result};

pub const DEFAULT_GRID: usize = 512;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

fn fft_in_place(buffer: &mut [Complex64], inverse: bool) {
    PLANNER.with(|planner| {
        let mut planner = planner.borrow_mut();
        let fft = if inverse {
            planner.plan_fft_inverse(buffer.len())
        } else {
            planner.plan_fft_forward(buffer.len())
        };
        fft.process(buffer);
    });
}

/// Checks the grid-size invariant shared by circle functions and spectra.
pub fn check_grid(n_samples: usize) -> Result<()> {
    if n_samples < 8 || !n_samples.is_power_of_two() {
        return Err(Error::InvalidCircleFunction(format!(
            "sample count {n_samples} must be a power of two >= 8"
        )));
    }
    Ok(())
}

/// Node `θ_m = 2πm/N`.
#[inline]
pub fn node(m: usize, n_samples: usize) -> f64 {
    TAU * m as f64 / n_samples as f64
}

/// Map from a signed frequency to its slot in FFT order.
#[inline]
fn slot(j: i64, n_samples: usize) -> usize {
    j.rem_euclid(n_samples as i64) as usize
}

/// Signed frequency stored at FFT slot `s`.
#[inline]
pub fn frequency(s: usize, n_samples: usize) -> i64 {
    if s < n_samples / 2 {
        s as i64
    } else {
        s as i64 - n_samples as i64
    }
}

/// Samples of a map `bΔ -> C^n`, stored component-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CircleFunction {
    components: Vec<Vec<Complex64>>,
}

impl CircleFunction {
    pub fn new(components: Vec<Vec<Complex64>>) -> Result<Self> {
        let Some(first) = components.first() else {
            return Err(Error::InvalidCircleFunction("no components".into()));
        };
        let len = first.len();
        check_grid(len)?;
        if components.iter().any(|c| c.len() != len) {
            return Err(Error::InvalidCircleFunction(
                "components have different sample counts".into(),
            ));
        }
        if components
            .iter()
            .flatten()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::InvalidCircleFunction("non-finite sample".into()));
        }
        Ok(Self { components })
    }

    pub fn scalar(samples: Vec<Complex64>) -> Result<Self> {
        Self::new(vec![samples])
    }

    pub fn real(samples: Vec<f64>) -> Result<Self> {
        Self::scalar(samples.into_iter().map(Complex64::from).collect())
    }

    /// Samples `θ ↦ f(θ)` for a scalar function.
    pub fn from_scalar_fn(n_samples: usize, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        check_grid(n_samples)?;
        Self::scalar((0..n_samples).map(|m| f(node(m, n_samples))).collect())
    }

    /// Samples `θ ↦ f(θ) ∈ C^n`.
    pub fn from_vector_fn(
        dim: usize,
        n_samples: usize,
        f: impl Fn(f64) -> Vec<Complex64>,
    ) -> Result<Self> {
        check_grid(n_samples)?;
        let mut components = vec![Vec::with_capacity(n_samples); dim];
        for m in 0..n_samples {
            let v = f(node(m, n_samples));
            if v.len() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "sampler returned {} components, expected {dim}",
                    v.len()
                )));
            }
            for (c, z) in components.iter_mut().zip(v) {
                c.push(z);
            }
        }
        Self::new(components)
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn len(&self) -> usize {
        self.components[0].len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn component(&self, h: usize) -> &[Complex64] {
        &self.components[h]
    }

    pub fn components(&self) -> &[Vec<Complex64>] {
        &self.components
    }

    /// Sample vector at node `m`.
    pub fn sample(&self, m: usize) -> Vec<Complex64> {
        self.components.iter().map(|c| c[m]).collect()
    }

    pub fn is_scalar(&self) -> bool {
        self.dim() == 1
    }

    /// Real parts of a scalar function.
    pub fn real_values(&self) -> Vec<f64> {
        self.components[0].iter().map(|z| z.re).collect()
    }

    /// Mean of `‖u(θ)‖²` over the grid.
    pub fn mean_square(&self) -> f64 {
        let total: f64 = self.components.iter().flatten().map(|z| z.norm_sqr()).sum();
        total / self.len() as f64
    }

    /// Pointwise product with a scalar function on the same grid.
    pub fn scale_by(&self, weight: &[Complex64]) -> Result<Self> {
        if weight.len() != self.len() {
            return Err(Error::DimensionMismatch("weight length differs from grid".into()));
        }
        Self::new(
            self.components
                .iter()
                .map(|c| c.iter().zip(weight).map(|(a, b)| a * b).collect())
                .collect(),
        )
    }

    pub fn conj(&self) -> Self {
        Self {
            components: self
                .components
                .iter()
                .map(|c| c.iter().map(|z| z.conj()).collect())
                .collect(),
        }
    }

    /// Maximum of `‖u(θ_m) - v(θ_m)‖` over the grid.
    pub fn max_distance(&self, other: &Self) -> f64 {
        (0..self.len())
            .map(|m| {
                self.components
                    .iter()
                    .zip(&other.components)
                    .map(|(a, b)| (a[m] - b[m]).norm_sqr())
                    .sum::<f64>()
                    .sqrt()
            })
            .fold(0.0, f64::max)
    }
}

/// Discrete Fourier coefficients `c_j`, `j ∈ [-N/2, N/2)`, per component.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FourierSpectrum {
    /// Coefficients in FFT order: slot `s` holds frequency [`frequency`]`(s, N)`.
    components: Vec<Vec<Complex64>>,
}

impl FourierSpectrum {
    pub fn from_fft_order(components: Vec<Vec<Complex64>>) -> Result<Self> {
        let Some(first) = components.first() else {
            return Err(Error::InvalidCircleFunction("no components".into()));
        };
        check_grid(first.len())?;
        if components.iter().any(|c| c.len() != first.len()) {
            return Err(Error::InvalidCircleFunction(
                "spectrum components differ in length".into(),
            ));
        }
        Ok(Self { components })
    }

    pub fn len(&self) -> usize {
        self.components[0].len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    /// Coefficient `c_j` of component `h`; `j` is reduced modulo `N`.
    pub fn coeff(&self, h: usize, j: i64) -> Complex64 {
        self.components[h][slot(j, self.len())]
    }

    pub fn coeff_vec(&self, j: i64) -> Vec<Complex64> {
        (0..self.dim()).map(|h| self.coeff(h, j)).collect()
    }

    pub fn fft_order(&self) -> &[Vec<Complex64>] {
        &self.components
    }

    /// `Σ_j ‖c_j‖²`.
    pub fn total_mass(&self) -> f64 {
        self.components.iter().flatten().map(|z| z.norm_sqr()).sum()
    }

    /// `Σ_{j<0} ‖c_j‖²`, the Nyquist slot `j = -N/2` included.
    pub fn negative_mass(&self) -> f64 {
        let half = self.len() / 2;
        self.components
            .iter()
            .map(|c| c[half..].iter().map(|z| z.norm_sqr()).sum::<f64>())
            .sum()
    }

    /// Signed indices in increasing order, `-N/2 ..= N/2 - 1`.
    pub fn indices(&self) -> impl Iterator<Item = i64> {
        let half = (self.len() / 2) as i64;
        -half..half
    }

    /// CSV rows `j, re_1, im_1, ..., re_n, im_n` in increasing `j`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("j");
        for h in 1..=self.dim() {
            let _ = write!(out, ",re_{h},im_{h}");
        }
        out.push('\n');
        for j in self.indices() {
            let _ = write!(out, "{j}");
            for h in 0..self.dim() {
                let c = self.coeff(h, j);
                let _ = write!(out, ",{:.17e},{:.17e}", c.re, c.im);
            }
            out.push('\n');
        }
        out
    }
}

pub fn fourier_transform(u: &CircleFunction) -> FourierSpectrum {
    let scale = 1.0 / u.len() as f64;
    let components = u
        .components
        .iter()
        .map(|c| {
            let mut buf = c.clone();
            fft_in_place(&mut buf, false);
            buf.iter_mut().for_each(|z| *z *= scale);
            buf
        })
        .collect();
    FourierSpectrum { components }
}

pub fn inverse_transform(spectrum: &FourierSpectrum) -> CircleFunction {
    let components = spectrum
        .components
        .iter()
        .map(|c| {
            let mut buf = c.clone();
            fft_in_place(&mut buf, true);
            buf
        })
        .collect();
    CircleFunction { components }
}

/// Winding number of a nonvanishing scalar trace around the origin.
///
/// Sums principal-branch argument increments between consecutive samples
/// (closing the loop from the last node back to the first).
pub fn winding_number(u: &CircleFunction, min_modulus: f64) -> Result<i64> {
    if !u.is_scalar() {
        return Err(Error::DimensionMismatch("winding number needs a scalar function".into()));
    }
    let samples = u.component(0);
    let min = samples.iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min);
    if !(min >= min_modulus) || min == 0.0 {
        return Err(Error::NearZero {
            min,
            required: min_modulus,
        });
    }
    let n = samples.len();
    let mut total = 0.0;
    for m in 0..n {
        let step = (samples[(m + 1) % n] / samples[m]).arg();
        if step.abs() > FRAC_PI_2 {
            return Err(Error::AliasRisk { index: m, step });
        }
        total += step;
    }
    Ok((total / TAU).round() as i64)
}

/// Continuous logarithm of a nonvanishing scalar trace with winding zero.
///
/// The imaginary part is the unwrapped argument, anchored at the principal
/// value of the first sample.
pub fn continuous_log(u: &CircleFunction, min_modulus: f64) -> Result<CircleFunction> {
    let winding = winding_number(u, min_modulus)?;
    if winding != 0 {
        return Err(Error::NonzeroWinding(winding));
    }
    let samples = u.component(0);
    let mut arg = samples[0].arg();
    let mut out = Vec::with_capacity(samples.len());
    for (m, z) in samples.iter().enumerate() {
        if m > 0 {
            arg += (z / samples[m - 1]).arg();
        }
        out.push(Complex64::new(z.norm().ln(), arg));
    }
    CircleFunction::scalar(out)
}

/// Real `h` with mean zero such that `g + h` has no negative Fourier modes.
///
/// This is the discrete harmonic-conjugate construction: `h_j = -g_j` for
/// `j < 0` and `h_{-j} = conj(h_j)`. The Nyquist slot can only absorb a real
/// coefficient, so only `Re g_{-N/2}` is cancelled there.
pub fn real_completion(g: &CircleFunction) -> Result<CircleFunction> {
    if !g.is_scalar() {
        return Err(Error::DimensionMismatch("real completion needs a scalar function".into()));
    }
    let spectrum = fourier_transform(g);
    let n = g.len();
    let half = n / 2;
    let gs = &spectrum.components[0];
    let mut hs = vec![ZERO; n];
    for j in 1..half {
        let neg = -gs[n - j];
        hs[n - j] = neg;
        hs[j] = neg.conj();
    }
    hs[half] = Complex64::new(-gs[half].re, 0.0);
    let h = inverse_transform(&FourierSpectrum {
        components: vec![hs],
    });
    CircleFunction::real(h.components[0].iter().map(|z| z.re).collect())
}

/// Relative spectral mass carried by the negative frequencies.
pub fn negative_tail_residual(u: &CircleFunction) -> Result<f64> {
    spectrum_residual(&fourier_transform(u))
}

pub fn spectrum_residual(spectrum: &FourierSpectrum) -> Result<f64> {
    let total = spectrum.total_mass();
    if total == 0.0 {
        return Err(Error::ZeroFunction);
    }
    Ok((spectrum.negative_mass() / total).sqrt().min(1.0))
}

/// Polynomial disc whose boundary trace is `u`, provided `u` is holomorphic
/// up to `tol`.
pub fn holomorphic_extension(u: &CircleFunction, tol: f64) -> Result<AnalyticDisc> {
    let spectrum = fourier_transform(u);
    let residual = spectrum_residual(&spectrum)?;
    if residual > tol {
        return Err(Error::NotHolomorphic { residual, tol });
    }
    let half = u.len() / 2;
    let scale = spectrum
        .components
        .iter()
        .flat_map(|c| c[..half].iter())
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    let cutoff = scale * 1e-15;
    let numerators = spectrum
        .components
        .iter()
        .map(|c| {
            let mut coeffs = c[..half].to_vec();
            while coeffs.len() > 1 && coeffs.last().is_some_and(|z| z.norm() <= cutoff) {
                coeffs.pop();
            }
            coeffs
        })
        .collect();
    AnalyticDisc::polynomial(numerators)
}

/// Convenience: `e^{ikθ_m}` on an `N`-point grid.
pub fn monomial_trace(k: i64, n_samples: usize) -> Vec<Complex64> {
    (0..n_samples)
        .map(|m| Complex64::from_polar(1.0, k as f64 * node(m, n_samples)))
        .collect()
}

/// Trapezoid rule for `(1/2π) ∫ u dθ`.
pub fn mean(u: &[Complex64]) -> Complex64 {
    u.iter().sum::<Complex64>() / u.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn constant_has_only_mean_mode() {
        let u = CircleFunction::from_scalar_fn(16, |_| c(1.0, 0.0)).unwrap();
        let s = fourier_transform(&u);
        for j in s.indices() {
            let expected = if j == 0 { 1.0 } else { 0.0 };
            assert_abs_diff_eq!(s.coeff(0, j).re, expected, epsilon = 1e-15);
            assert_abs_diff_eq!(s.coeff(0, j).im, 0.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn pure_mode() {
        let u = CircleFunction::from_scalar_fn(16, |t| Complex64::from_polar(1.0, t)).unwrap();
        let s = fourier_transform(&u);
        for j in s.indices() {
            let expected = if j == 1 { 1.0 } else { 0.0 };
            assert_abs_diff_eq!(s.coeff(0, j).norm(), expected, epsilon = 1e-14);
        }
    }

    /// Direct O(N²) DFT sum, independent of the FFT.
    fn direct_dft(samples: &[Complex64], j: i64) -> Complex64 {
        let n = samples.len();
        samples
            .iter()
            .enumerate()
            .map(|(m, z)| z * Complex64::from_polar(1.0, -(j as f64) * node(m, n)))
            .sum::<Complex64>()
            / n as f64
    }

    #[test]
    fn two_modes_match_direct_sum() {
        let u = CircleFunction::from_scalar_fn(16, |t| {
            Complex64::from_polar(1.0, t) + 0.5 * Complex64::from_polar(1.0, -2.0 * t)
        })
        .unwrap();
        let s = fourier_transform(&u);
        for j in s.indices() {
            let oracle = direct_dft(u.component(0), j);
            assert_abs_diff_eq!((s.coeff(0, j) - oracle).norm(), 0.0, epsilon = 1e-14);
        }
        assert_abs_diff_eq!(s.coeff(0, 1).re, 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(s.coeff(0, -2).re, 0.5, epsilon = 1e-14);
    }

    #[test]
    fn grid_invariant_enforced() {
        assert!(CircleFunction::scalar(vec![c(1.0, 0.0); 12]).is_err());
        assert!(CircleFunction::scalar(vec![c(1.0, 0.0); 4]).is_err());
        assert!(CircleFunction::scalar(vec![c(f64::NAN, 0.0); 8]).is_err());
    }

    #[test]
    fn winding_examples() {
        let one = CircleFunction::from_scalar_fn(64, |_| c(1.0, 0.0)).unwrap();
        assert_eq!(winding_number(&one, 1e-9).unwrap(), 0);
        let cube = CircleFunction::from_scalar_fn(64, |t| Complex64::from_polar(1.0, 3.0 * t)).unwrap();
        assert_eq!(winding_number(&cube, 1e-9).unwrap(), 3);
        let neg = CircleFunction::from_scalar_fn(64, |t| Complex64::from_polar(2.0, -5.0 * t)).unwrap();
        assert_eq!(winding_number(&neg, 1e-9).unwrap(), -5);
    }

    #[test]
    fn winding_errors() {
        let zero_crossing = CircleFunction::from_scalar_fn(64, |t| c(t.cos(), 0.0)).unwrap();
        assert!(matches!(
            winding_number(&zero_crossing, 1e-3),
            Err(Error::NearZero { .. })
        ));
        let coarse = CircleFunction::from_scalar_fn(8, |t| Complex64::from_polar(1.0, 3.0 * t)).unwrap();
        assert!(matches!(
            winding_number(&coarse, 1e-9),
            Err(Error::AliasRisk { .. })
        ));
    }

    #[test]
    fn real_completion_of_conjugate_mode() {
        let g = CircleFunction::from_scalar_fn(32, |t| Complex64::from_polar(1.0, -t)).unwrap();
        let h = real_completion(&g).unwrap();
        for (m, v) in h.real_values().iter().enumerate() {
            assert_abs_diff_eq!(*v, -2.0 * node(m, 32).cos(), epsilon = 1e-14);
        }
    }

    #[test]
    fn real_completion_of_sine() {
        // g = i sin θ = (e^{iθ} - e^{-iθ})/2 ; cancelling g_{-1} = -1/2 needs h_{±1} = 1/2,
        // so h = cos θ and g + h = e^{iθ}.
        let g = CircleFunction::from_scalar_fn(32, |t| c(0.0, t.sin())).unwrap();
        let h = real_completion(&g).unwrap();
        for (m, v) in h.real_values().iter().enumerate() {
            assert_abs_diff_eq!(*v, node(m, 32).cos(), epsilon = 1e-14);
        }
    }

    #[test]
    fn real_completion_of_holomorphic_is_zero() {
        let g = CircleFunction::from_scalar_fn(32, |t| {
            c(2.0, 1.0) + Complex64::from_polar(0.3, 2.0 * t)
        })
        .unwrap();
        let h = real_completion(&g).unwrap();
        assert!(h.real_values().iter().all(|v| v.abs() < 1e-15));
    }

    #[test]
    fn residual_examples() {
        let hol = CircleFunction::from_scalar_fn(16, |t| Complex64::from_polar(1.0, 2.0 * t)).unwrap();
        assert_abs_diff_eq!(negative_tail_residual(&hol).unwrap(), 0.0, epsilon = 1e-15);
        let anti = CircleFunction::from_scalar_fn(16, |t| Complex64::from_polar(1.0, -t)).unwrap();
        assert_abs_diff_eq!(negative_tail_residual(&anti).unwrap(), 1.0, epsilon = 1e-14);
        let both = CircleFunction::from_scalar_fn(16, |t| c(2.0 * t.cos(), 0.0)).unwrap();
        assert_abs_diff_eq!(
            negative_tail_residual(&both).unwrap(),
            std::f64::consts::FRAC_1_SQRT_2,
            epsilon = 1e-14
        );
        let zero = CircleFunction::scalar(vec![c(0.0, 0.0); 8]).unwrap();
        assert!(matches!(negative_tail_residual(&zero), Err(Error::ZeroFunction)));
    }

    #[test]
    fn extension_examples() {
        let u = CircleFunction::from_scalar_fn(16, |t| c(1.0, 0.0) + Complex64::from_polar(1.0, t)).unwrap();
        let f = holomorphic_extension(&u, 1e-12).unwrap();
        let coeffs = f.numerator(0);
        assert_eq!(coeffs.len(), 2);
        assert_abs_diff_eq!((coeffs[0] - 1.0).norm(), 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!((coeffs[1] - 1.0).norm(), 0.0, epsilon = 1e-14);

        let cube = CircleFunction::from_scalar_fn(32, |t| Complex64::from_polar(1.0, 3.0 * t)).unwrap();
        let f = holomorphic_extension(&cube, 1e-12).unwrap();
        assert_eq!(f.numerator(0).len(), 4);
        assert_abs_diff_eq!((f.numerator(0)[3] - 1.0).norm(), 0.0, epsilon = 1e-14);

        let anti = CircleFunction::from_scalar_fn(16, |t| Complex64::from_polar(1.0, -t)).unwrap();
        assert!(matches!(
            holomorphic_extension(&anti, 1e-6),
            Err(Error::NotHolomorphic { .. })
        ));
    }

    #[test]
    fn csv_rows_cover_all_indices() {
        let u = CircleFunction::from_scalar_fn(8, |t| Complex64::from_polar(1.0, t)).unwrap();
        let csv = fourier_transform(&u).to_csv();
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines[0], "j,re_1,im_1");
        assert_eq!(lines.len(), 9);
        assert!(lines[1].starts_with("-4,"));
        assert!(lines[8].starts_with("3,"));
    }

    #[test]
    fn nyquist_is_real_in_completion() {
        let g = CircleFunction::from_scalar_fn(16, |t| c((8.0 * t).cos(), 0.0)).unwrap();
        let h = real_completion(&g).unwrap();
        let sum: Vec<_> = g
            .component(0)
            .iter()
            .zip(h.real_values())
            .map(|(a, b)| a + b)
            .collect();
        let r = CircleFunction::scalar(sum).unwrap();
        assert!(fourier_transform(&r).negative_mass() < 1e-28);
    }
}
