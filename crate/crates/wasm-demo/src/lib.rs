//! Browser bindings for the `www/` demo page. Every entry point returns a JSON
//! string; failures come back as `{"error": "..."}`.

use kjet_core::circle::node;
use kjet_core::discs::{blaschke_product, schwarz_bound_check, schwarz_equality_disc};
use kjet_core::domains::make_unit_disc;
use kjet_core::jets::JetVector;
use kjet_core::kobayashi::{k2_disc_closed_form, kobayashi_k_metric, SolverConfig};
use kjet_core::stationarity::scalar_stationarity_exact;
use kjet_core::{AnalyticDisc, Complex64, Result};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

const CURVE_SAMPLES: usize = 256;

fn respond(r: Result<Value>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e.to_string() }).to_string(),
    }
}

fn curve(f: &AnalyticDisc, radius: f64) -> Result<Vec<[f64; 2]>> {
    let trace = f.trace_on_radius(radius, CURVE_SAMPLES)?;
    Ok(trace.component(0).iter().map(|z| [z.re, z.im]).collect())
}

/// Stationarity weight and lift of the Blaschke product with the given zeros
/// (flat `[re0, im0, re1, im1, ...]`) at order `k`.
#[wasm_bindgen]
pub fn blaschke_weight(zeros: &[f64], k: usize) -> String {
    respond((|| {
        let zeros: Vec<Complex64> = zeros.chunks_exact(2).map(|p| Complex64::new(p[0], p[1])).collect();
        let f = blaschke_product(&zeros)?;
        let cert = scalar_stationarity_exact(&f, k, CURVE_SAMPLES);
        let (certified, detail) = match cert {
            Ok(c) => (true, json!({ "residual": c.residual, "weight": c.c, "lift": c.lift })),
            Err(e) => (false, json!({ "reason": e.to_string() })),
        };
        let theta: Vec<f64> = (0..CURVE_SAMPLES).map(|m| node(m, CURVE_SAMPLES)).collect();
        Ok(json!({
            "certified": certified,
            "theta": theta,
            "detail": detail,
            "image": curve(&f, 0.98)?,
        }))
    })())
}

/// Solver value of the 2-metric on the unit disc at 0 next to the closed form.
#[wasm_bindgen]
pub fn k2_metric(d1_re: f64, d1_im: f64, d2_re: f64, d2_im: f64, degree: usize) -> String {
    respond((|| {
        let xi = JetVector::scalar(&[Complex64::new(d1_re, d1_im), Complex64::new(d2_re, d2_im)])?;
        let cfg = SolverConfig {
            degree,
            ..SolverConfig::default()
        };
        let result = kobayashi_k_metric(&make_unit_disc(), &xi, &cfg)?;
        let exact = k2_disc_closed_form(&xi)?;
        Ok(json!({
            "value": result.value,
            "closed_form": exact,
            "relative_gap": result.value / exact - 1.0,
            "bracket": result.report.bracket,
            "image": curve(&result.extremal, 1.0)?,
        }))
    })())
}

/// Image of `ζ ↦ ζ(e^{iθ}ζ + a)/(1 + conj(a) e^{iθ}ζ)` on circles of several radii.
#[wasm_bindgen]
pub fn schwarz_disc(a_re: f64, a_im: f64, theta: f64) -> String {
    respond((|| {
        let f = schwarz_equality_disc(Complex64::new(a_re, a_im), theta)?;
        let radii = [0.25, 0.5, 0.75, 0.95, 1.0];
        let curves = radii.iter().map(|&r| curve(&f, r)).collect::<Result<Vec<_>>>()?;
        let taylor = f.taylor(0, 2);
        Ok(json!({
            "radii": radii,
            "curves": curves,
            "first_derivative": [taylor[1].re, taylor[1].im],
            "second_derivative": [2.0 * taylor[2].re, 2.0 * taylor[2].im],
            "schwarz_slack": schwarz_bound_check(&f)?,
        }))
    })())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: String) -> Value {
        serde_json::from_str(&s).unwrap()
    }

    #[test]
    fn weight_for_matching_order() {
        let v = parse(blaschke_weight(&[0.3, 0.0, -0.2, 0.1], 2));
        assert_eq!(v["certified"], true);
        assert!(v["detail"]["residual"].as_f64().unwrap() < 1e-8);
        assert_eq!(v["detail"]["weight"].as_array().unwrap().len(), CURVE_SAMPLES);
        let v = parse(blaschke_weight(&[0.3, 0.0, -0.2, 0.1], 1));
        assert_eq!(v["certified"], false);
    }

    #[test]
    fn metric_close_to_closed_form() {
        let v = parse(k2_metric(1.0, 0.0, 2.0, 0.0, 12));
        assert!(v["relative_gap"].as_f64().unwrap().abs() < 0.02);
        assert!(parse(k2_metric(0.0, 0.0, 0.0, 0.0, 12))["error"].is_string());
    }

    #[test]
    fn equality_disc_is_tight() {
        let v = parse(schwarz_disc(0.4, 0.2, 1.0));
        assert!(v["schwarz_slack"].as_f64().unwrap().abs() < 1e-12);
        assert_eq!(v["curves"].as_array().unwrap().len(), 5);
        assert!(parse(schwarz_disc(1.2, 0.0, 0.0))["error"].is_string());
    }
}
