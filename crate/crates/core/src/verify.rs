//! Randomized property suites behind `kjet verify`.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::circle::{
    fourier_transform, inverse_transform, monomial_trace, negative_tail_residual, real_completion,
    winding_number, CircleFunction, FourierSpectrum,
};
use crate::discs::{blaschke_product, poly_mul, reparametrize, schwarz_bound_check, AnalyticDisc};
use crate::domains::{make_unit_ball, make_unit_disc};
use crate::error::Result;
use crate::jets::{jet_of_disc, jet_pushforward, jet_scale, AnalyticMapSeries, JetVector, Term};
use crate::kobayashi::{metric_property_suite, PropertyCheck, SolverConfig};
use crate::stationarity::{
    jet_condition, pairing_sum, poletsky_functionals_of_disc, scalar_stationarity_exact,
    stationarity_search, StationarityConfig, FAMILY_LAMBDAS, POLETSKY_TOL,
};

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

pub const SUITES: [&str; 7] = ["circle", "jets", "schwarz", "blaschke", "pairing", "poletsky", "metric"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub checks: Vec<PropertyCheck>,
    pub pass: bool,
}

/// Worst-case accumulator; `violation ≤ allowed` counts as a pass.
struct Check {
    name: &'static str,
    allowed: f64,
    samples: usize,
    worst: f64,
    pass: bool,
}

impl Check {
    fn new(name: &'static str, allowed: f64) -> Self {
        Self {
            name,
            allowed,
            samples: 0,
            worst: f64::NEG_INFINITY,
            pass: true,
        }
    }

    fn record(&mut self, violation: f64) {
        self.samples += 1;
        self.worst = self.worst.max(violation);
        if !(violation <= self.allowed) {
            self.pass = false;
        }
    }

    /// Boolean outcome recorded as violation 0 or 1 against allowed 0.
    fn flag(&mut self, ok: bool) {
        self.record(if ok { 0.0 } else { 1.0 });
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

pub fn random_complex(rng: &mut ChaCha8Rng, radius: f64) -> Complex64 {
    Complex64::new(rng.gen_range(-radius..radius), rng.gen_range(-radius..radius))
}

/// Point with modulus uniform in `[0, max_modulus)`.
pub fn random_in_disc(rng: &mut ChaCha8Rng, max_modulus: f64) -> Complex64 {
    Complex64::from_polar(rng.gen_range(0.0..max_modulus), rng.gen_range(0.0..TAU))
}

pub fn random_blaschke_zeros(rng: &mut ChaCha8Rng, count: usize, max_modulus: f64) -> Vec<Complex64> {
    (0..count).map(|_| random_in_disc(rng, max_modulus)).collect()
}

/// `ζ·B(ζ)` with `B` a random Blaschke product of degree `0..=3`, rotated.
pub fn random_centered_self_map(rng: &mut ChaCha8Rng) -> Result<AnalyticDisc> {
    let degree = rng.gen_range(0..=3);
    let mut zeros = random_blaschke_zeros(rng, degree, 0.95);
    zeros.push(ZERO);
    Ok(blaschke_product(&zeros)?.rotate(rng.gen_range(0.0..TAU)))
}

/// Rational disc with prescribed Taylor head and a random tail
/// `ζ^{k+1} T(ζ)/Q(ζ)`, `Q` with zeros of modulus at least 1.5.
pub fn disc_with_head(rng: &mut ChaCha8Rng, head: &[Vec<Complex64>]) -> Result<AnalyticDisc> {
    let k = head.len() - 1;
    let n = head[0].len();
    let mut nums = Vec::with_capacity(n);
    let mut dens = Vec::with_capacity(n);
    for h in 0..n {
        let mut den = vec![ONE];
        for _ in 0..rng.gen_range(0..=2) {
            let root = Complex64::from_polar(rng.gen_range(1.5..3.0), rng.gen_range(0.0..TAU));
            den = poly_mul(&den, &[ONE, -ONE / root]);
        }
        let tail: Vec<Complex64> = (0..rng.gen_range(1..=3)).map(|_| random_complex(rng, 0.3)).collect();
        let head_h: Vec<Complex64> = head.iter().map(|a| a[h]).collect();
        let mut num = poly_mul(&head_h, &den);
        let mut shifted = vec![ZERO; k + 1];
        shifted.extend(tail);
        if num.len() < shifted.len() {
            num.resize(shifted.len(), ZERO);
        }
        for (i, z) in shifted.iter().enumerate() {
            num[i] += z;
        }
        nums.push(num);
        dens.push(den);
    }
    AnalyticDisc::rational(nums, dens)
}

pub fn circle_suite(seed: u64) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = 512;
    let mut round_trip = Check::new("fourier_round_trip", 1e-12);
    let mut completion = Check::new("real_completion_cancels_negative_modes", 1e-12);
    let mut winding = Check::new("winding_of_monomials", 0.0);
    let mut additivity = Check::new("winding_additive", 0.0);
    let mut reflection = Check::new("conjugate_reflects_residual", 1e-12);
    for _ in 0..20 {
        let band = 40;
        let mut coeffs = vec![ZERO; n];
        for j in 0..band {
            coeffs[j] = random_complex(&mut rng, 1.0);
            coeffs[n - 1 - j] = random_complex(&mut rng, 1.0);
        }
        let spec = FourierSpectrum::from_fft_order(vec![coeffs])?;
        let u = inverse_transform(&spec);
        let back = inverse_transform(&fourier_transform(&u));
        let scale = u.component(0).iter().map(|z| z.norm()).fold(0.0, f64::max);
        round_trip.record(u.max_distance(&back) / scale);

        let h = real_completion(&u)?;
        let sum = CircleFunction::scalar(
            u.component(0).iter().zip(h.component(0)).map(|(a, b)| a + b).collect(),
        )?;
        let s = fourier_transform(&sum);
        let worst_neg = (1..n as i64 / 2).map(|j| s.coeff(0, -j).norm()).fold(0.0, f64::max);
        completion.record(worst_neg / u.mean_square().sqrt());

        let direct = negative_tail_residual(&u.conj())?;
        let flipped = CircleFunction::scalar(
            (0..n).map(|m| u.component(0)[(n - m) % n]).collect(),
        )?;
        // u(-θ) carries c_{-j} at index j, as does conj(u) up to conjugation.
        reflection.record((direct - negative_tail_residual(&flipped)?).abs());
    }
    for k in -8..=8i64 {
        let u = CircleFunction::scalar(monomial_trace(k, n))?;
        winding.record((winding_number(&u, 1e-8)? - k).abs() as f64);
    }
    for _ in 0..20 {
        let a = blaschke_product(&random_blaschke_zeros(&mut rng, 2, 0.8))?.boundary_trace(n)?;
        let b = blaschke_product(&random_blaschke_zeros(&mut rng, 3, 0.8))?.boundary_trace(n)?;
        let prod = a.scale_by(b.component(0))?;
        let w = winding_number(&prod, 1e-8)? - winding_number(&a, 1e-8)? - winding_number(&b, 1e-8)?;
        additivity.record(w.abs() as f64);
    }
    Ok(report(
        "circle",
        seed,
        vec![round_trip, completion, winding, additivity, reflection],
    ))
}

fn random_series(rng: &mut ChaCha8Rng, n: usize, degree: usize) -> Result<AnalyticMapSeries> {
    let mut comps = Vec::with_capacity(n);
    for _ in 0..n {
        let mut terms = Vec::new();
        for _ in 0..4 {
            let mut exps = vec![0u32; n];
            let total = rng.gen_range(1..=degree);
            for _ in 0..total {
                exps[rng.gen_range(0..n)] += 1;
            }
            terms.push(Term {
                exponents: exps,
                coeff: random_complex(rng, 1.0),
            });
        }
        comps.push(terms);
    }
    AnalyticMapSeries::new(vec![ZERO; n], comps)
}

pub fn jets_suite(seed: u64) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut scale = Check::new("scale_composition", 1e-12);
    let mut compose = Check::new("pushforward_composition", 1e-10);
    let mut reparam = Check::new("reparametrization_scales_jet", 1e-12);
    for _ in 0..20 {
        let n = rng.gen_range(1..=3);
        let k = rng.gen_range(1..=4);
        let comps = (0..k).map(|_| (0..n).map(|_| random_complex(&mut rng, 1.0)).collect()).collect();
        let xi = JetVector::at_origin(comps)?;
        let (c1, c2) = (random_complex(&mut rng, 1.5), random_complex(&mut rng, 1.5));
        let lhs = jet_scale(c1, &jet_scale(c2, &xi));
        scale.record(lhs.component_distance(&jet_scale(c1 * c2, &xi)) / (1.0 + lhs.component_distance(&jet_scale(ZERO, &xi))));

        let phi = random_series(&mut rng, n, 4)?;
        let psi = random_series(&mut rng, n, 4)?;
        let both = AnalyticMapSeries::compose(&phi, &psi, k)?;
        let stepwise = jet_pushforward(&phi, &jet_pushforward(&psi, &xi)?)?;
        let direct = jet_pushforward(&both, &xi)?;
        let size = 1.0 + stepwise.component_distance(&jet_scale(ZERO, &stepwise));
        compose.record(stepwise.component_distance(&direct) / size);

        let head: Vec<Vec<Complex64>> = (0..=k).map(|_| (0..n).map(|_| random_complex(&mut rng, 1.0)).collect()).collect();
        let f = disc_with_head(&mut rng, &head)?;
        let lambda = rng.gen_range(0.1..1.0);
        let a = jet_of_disc(&reparametrize(&f, lambda)?, k)?;
        let b = jet_scale(lambda.into(), &jet_of_disc(&f, k)?);
        reparam.record(a.component_distance(&b));
    }
    Ok(report("jets", seed, vec![scale, compose, reparam]))
}

pub fn schwarz_suite(seed: u64) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut slack = Check::new("second_order_schwarz_slack", 1e-10);
    for _ in 0..200 {
        let f = random_centered_self_map(&mut rng)?;
        slack.record(-schwarz_bound_check(&f)?);
    }
    Ok(report("schwarz", seed, vec![slack]))
}

pub fn blaschke_suite(seed: u64) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cfg = StationarityConfig::default();
    let disc = make_unit_disc();
    let mut exact = Check::new("exact_residual", 1e-8);
    let mut search = Check::new("search_residual", 1e-8);
    let mut agree = Check::new("weights_agree", 1e-6);
    let mut negative = Check::new("square_refuted_at_order_one", 0.0);
    for i in 0..20 {
        let k = 1 + i % 4;
        let f = blaschke_product(&random_blaschke_zeros(&mut rng, k, 0.7))?;
        let a = scalar_stationarity_exact(&f, k, cfg.grid)?;
        exact.record(a.residual);
        match stationarity_search(&disc, &f, k, &cfg) {
            Ok(b) => {
                search.record(b.residual);
                agree.record(a.c.iter().zip(&b.c).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max));
            }
            Err(_) => {
                search.record(f64::INFINITY);
                agree.record(f64::INFINITY);
            }
        }
    }
    negative.flag(matches!(
        scalar_stationarity_exact(&AnalyticDisc::monomial(2), 1, cfg.grid),
        Err(crate::Error::NonzeroWinding(-1))
    ));
    Ok(report("blaschke", seed, vec![exact, search, agree, negative]))
}

pub fn pairing_suite(seed: u64) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sign = Check::new("family_pairing_positive", 0.0);
    let mut limit = Check::new("pairing_at_one_nonzero", 0.0);
    for i in 0..20 {
        let k = 1 + i % 4;
        let f = blaschke_product(&random_blaschke_zeros(&mut rng, k, 0.7))?;
        let cert = scalar_stationarity_exact(&f, k, 512)?;
        for lambda in FAMILY_LAMBDAS {
            sign.flag((1.0 - lambda) * pairing_sum(&f, &cert.lift, lambda, k)? > 0.0);
        }
        limit.flag(pairing_sum(&f, &cert.lift, 1.0, k)?.abs() > 1e-12);
    }
    Ok(report("pairing", seed, vec![sign, limit]))
}

/// Random disc and jet pair; about half satisfy the jet condition exactly.
pub fn random_jet_instance(rng: &mut ChaCha8Rng) -> Result<(AnalyticDisc, JetVector)> {
    let n = rng.gen_range(1..=3);
    let k = rng.gen_range(1..=4);
    let p: Vec<Complex64> = (0..n).map(|_| random_complex(rng, 0.5)).collect();
    let j0 = rng.gen_range(1..=k);
    let comps: Vec<Vec<Complex64>> = (1..=k)
        .map(|j| {
            if j < j0 || (j > j0 && rng.gen_bool(0.25)) {
                vec![ZERO; n]
            } else {
                (0..n).map(|_| random_complex(rng, 1.0)).collect()
            }
        })
        .collect();
    let xi = JetVector::new(p.clone(), comps)?;
    let mu = rng.gen_range(0.2..1.5);
    let mut head = vec![p];
    head.extend(jet_scale(mu.into(), &xi).taylor_coefficients());
    if rng.gen_bool(0.5) {
        match rng.gen_range(0..3) {
            // nudge one coefficient
            0 => {
                let j = rng.gen_range(0..=k);
                let h = rng.gen_range(0..n);
                head[j][h] += Complex64::from_polar(rng.gen_range(1e-3..1e-1), rng.gen_range(0.0..TAU));
            }
            // complex scaling
            1 => {
                let c = Complex64::from_polar(mu, rng.gen_range(0.2..TAU - 0.2));
                head.truncate(1);
                head.extend(jet_scale(c, &xi).taylor_coefficients());
            }
            // a different real scale at the top order
            _ => {
                let top = head.len() - 1;
                let factor = rng.gen_range(1.1..2.0);
                head[top].iter_mut().for_each(|z| *z *= factor);
                if head[top].iter().all(|z| *z == ZERO) {
                    head[top][0] = Complex64::new(0.05, 0.0);
                }
            }
        }
    }
    Ok((disc_with_head(rng, &head)?, xi))
}

pub fn poletsky_suite(seed: u64) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut agree = Check::new("functionals_match_jet_condition", 0.0);
    for _ in 0..100 {
        let (f, xi) = random_jet_instance(&mut rng)?;
        let table = poletsky_functionals_of_disc(&f, &xi, 512)?;
        agree.flag(table.verdict == jet_condition(&f, &xi, POLETSKY_TOL)?);
    }
    Ok(report("poletsky", seed, vec![agree]))
}

pub fn metric_suite(seed: u64, samples: usize, cfg: &SolverConfig) -> Result<SuiteReport> {
    let disc = make_unit_disc();
    let ball = make_unit_ball(2)?;
    let inclusion = AnalyticMapSeries::linear(&[vec![ONE], vec![ZERO]], vec![ZERO])?;
    let r = metric_property_suite(&disc, &ball, &inclusion, samples, seed, cfg)?;
    Ok(SuiteReport {
        suite: "metric".into(),
        seed,
        pass: r.pass,
        checks: r.checks,
    })
}

fn report(suite: &str, seed: u64, checks: Vec<Check>) -> SuiteReport {
    let checks: Vec<PropertyCheck> = checks.into_iter().map(Check::finish).collect();
    SuiteReport {
        suite: suite.into(),
        seed,
        pass: checks.iter().all(|c| c.pass),
        checks,
    }
}

pub fn run_suite(name: &str, seed: u64, cfg: &SolverConfig) -> Option<Result<SuiteReport>> {
    Some(match name {
        "circle" => circle_suite(seed),
        "jets" => jets_suite(seed),
        "schwarz" => schwarz_suite(seed),
        "blaschke" => blaschke_suite(seed),
        "pairing" => pairing_suite(seed),
        "poletsky" => poletsky_suite(seed),
        "metric" => metric_suite(seed, 20, cfg),
        _ => return None,
    })
}
