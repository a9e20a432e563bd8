//! `kjet` command-line front end.
//!
//! Every command writes one JSON document (to `--out` or stdout) recording the
//! resolved configuration next to the result, and optionally a CSV side file.
//! Exit status: 0 on success, 2 when a computation ran but did not certify,
//! 1 on input errors.

use std::fs;
use std::io::Write;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use crate::circle::{fourier_transform, node};
use crate::discs::{blaschke_product, schwarz_bound_check, AnalyticDisc};
use crate::domains::{profile_on_radius, Domain, DomainKind, DomainSpec};
use crate::error::{Error, Result};
use crate::jets::{jet_of_disc, JetVector};
use crate::kobayashi::{k1_disc_closed_form, k2_disc_closed_form, kobayashi_k_metric, yu_metric, SolverConfig};
use crate::stationarity::{
    certificate_spectrum, euler_lagrange_check, local_extremality_probe, pairing_sum,
    scalar_stationarity_exact, stationarity_search, StationarityCertificate, StationarityConfig,
    FAMILY_LAMBDAS,
};
use crate::verify::{run_suite, SUITES};

#[derive(Debug, Parser)]
#[command(name = "kjet", version, about = "Higher-order Kobayashi metrics and stationary discs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Numerical k-metric of a jet (closed form reported on the unit disc).
    Metric(RunArgs),
    /// Metric of the jet (0, ..., 0, v) with v given by --jet and order --k.
    Yu(RunArgs),
    /// Metric plus necessary-condition checks on the extremal witness.
    Extremal(RunArgs),
    /// Stationarity certificate for a disc.
    Stationary(RunArgs),
    /// Blaschke product summary: coefficients, jet, Schwarz slack.
    Blaschke(RunArgs),
    /// Pairing sums for the reparametrized family and the extremality probe.
    Pairing(RunArgs),
    /// Randomized property suites.
    Verify(RunArgs),
    /// Fourier spectrum of a disc's boundary trace.
    Spectrum(RunArgs),
}

#[derive(Debug, Clone, Default, Args)]
pub struct RunArgs {
    /// `disc`, `ball[:n]`, `ellipsoid:a1,a2,..`, `complex_ellipsoid:m1,m2,..` or a JSON domain.
    #[arg(long)]
    pub domain: Option<String>,
    /// JSON jet: list of components, or {"base": .., "components": [..]}.
    #[arg(long)]
    pub jet: Option<String>,
    /// JSON disc: {"numerators": [[..], ..], "denominators": [[..], ..]}.
    #[arg(long)]
    pub disc: Option<String>,
    /// Comma-separated zeros of a Blaschke product, e.g. "0.3,-0.2+0.1i".
    #[arg(long, allow_hyphen_values = true)]
    pub blaschke: Option<String>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub degree: Option<usize>,
    #[arg(long)]
    pub grid: Option<usize>,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Property suite for `verify`: one of the suite names or `all`.
    #[arg(long)]
    pub suite: Option<String>,
    #[arg(long)]
    pub out: Option<String>,
    #[arg(long)]
    pub csv: Option<String>,
}

/// JSON document plus optional CSV and the certification outcome.
struct Output {
    json: Value,
    csv: Option<String>,
    certified: bool,
}

fn input<T>(path: &str, message: impl Into<String>) -> Result<T> {
    Err(Error::input(path, message))
}

fn parse_json(text: &str, path: &str) -> Result<Value> {
    serde_json::from_str(text).or_else(|e| input(path, format!("malformed JSON: {e}")))
}

fn parse_complex(v: &Value, path: &str) -> Result<Complex64> {
    match v {
        Value::Number(x) => Ok(Complex64::new(x.as_f64().unwrap_or(f64::NAN), 0.0)),
        Value::String(s) => parse_complex_literal(s, path),
        Value::Array(parts) if parts.len() == 2 => {
            let re = parts[0].as_f64();
            let im = parts[1].as_f64();
            match (re, im) {
                (Some(re), Some(im)) => Ok(Complex64::new(re, im)),
                _ => input(path, "expected [re, im] with numeric entries"),
            }
        }
        _ => input(path, "expected a complex number: a number, [re, im] or a string like \"1-2i\""),
    }
    .and_then(|z| {
        if z.re.is_finite() && z.im.is_finite() {
            Ok(z)
        } else {
            input(path, "non-finite value")
        }
    })
}

fn parse_complex_literal(s: &str, path: &str) -> Result<Complex64> {
    Complex64::from_str(s.trim()).or_else(|_| input(path, format!("cannot parse `{s}` as a complex number")))
}

/// A point of `C^n`: a single complex when `n = 1`, else an array of `n`.
fn parse_vector(v: &Value, n: usize, path: &str) -> Result<Vec<Complex64>> {
    if n == 1 {
        if let Value::Array(items) = v {
            if items.len() == 1 {
                return Ok(vec![parse_complex(&items[0], &format!("{path}[0]"))?]);
            }
        }
        return Ok(vec![parse_complex(v, path)?]);
    }
    let Value::Array(items) = v else {
        return input(path, format!("expected an array of {n} complex numbers"));
    };
    if items.len() != n {
        return input(path, format!("expected {n} entries, found {}", items.len()));
    }
    items
        .iter()
        .enumerate()
        .map(|(i, x)| parse_complex(x, &format!("{path}[{i}]")))
        .collect()
}

fn parse_number_list(s: &str, path: &str) -> Result<Vec<f64>> {
    s.split(',')
        .enumerate()
        .map(|(i, t)| {
            t.trim()
                .parse::<f64>()
                .or_else(|_| input(&format!("{path}[{i}]"), format!("cannot parse `{t}`")))
        })
        .collect()
}

pub fn parse_domain(text: &str) -> Result<(DomainSpec, Domain)> {
    const PATH: &str = "--domain";
    let text = text.trim();
    let spec = if text.starts_with('{') {
        serde_json::from_value::<DomainSpec>(parse_json(text, PATH)?)
            .or_else(|e| input(PATH, format!("invalid domain: {e}")))?
    } else {
        let (kind, rest) = text.split_once(':').unwrap_or((text, ""));
        let blank = DomainSpec {
            kind: DomainKind::Disc,
            coeffs: vec![],
            exponents: vec![],
            dim: None,
        };
        match kind {
            "disc" if rest.is_empty() => blank,
            "ball" => DomainSpec {
                kind: DomainKind::Ball,
                dim: Some(if rest.is_empty() {
                    2
                } else {
                    rest.trim().parse().or_else(|_| input(PATH, format!("bad ball dimension `{rest}`")))?
                }),
                ..blank
            },
            "ellipsoid" => DomainSpec {
                kind: DomainKind::Ellipsoid,
                coeffs: parse_number_list(rest, PATH)?,
                ..blank
            },
            "complex_ellipsoid" => {
                let exps = parse_number_list(rest, PATH)?;
                if exps.iter().any(|m| m.fract() != 0.0 || *m < 1.0) {
                    return input(PATH, "exponents must be positive integers");
                }
                DomainSpec {
                    kind: DomainKind::ComplexEllipsoid,
                    exponents: exps.iter().map(|m| *m as u32).collect(),
                    ..blank
                }
            }
            _ => return input(PATH, format!("unknown domain `{text}`")),
        }
    };
    let domain = spec.build().map_err(|e| Error::input(PATH, e.to_string()))?;
    Ok((spec, domain))
}

fn parse_jet(text: &str, domain: &Domain) -> Result<JetVector> {
    const PATH: &str = "--jet";
    let v = parse_json(text, PATH)?;
    let n = domain.dim();
    let (base, comps, comps_path) = match &v {
        Value::Object(map) => {
            let base = match map.get("base") {
                Some(b) => parse_vector(b, n, "--jet.base")?,
                None => domain.reference_point().to_vec(),
            };
            let Some(Value::Array(c)) = map.get("components") else {
                return input("--jet.components", "missing array of components");
            };
            (base, c.clone(), "--jet.components".to_string())
        }
        Value::Array(c) => (domain.reference_point().to_vec(), c.clone(), PATH.to_string()),
        _ => return input(PATH, "expected an array of components or an object"),
    };
    if comps.is_empty() {
        return input(&comps_path, "a jet needs at least one component");
    }
    let components = comps
        .iter()
        .enumerate()
        .map(|(j, c)| parse_vector(c, n, &format!("{comps_path}[{j}]")))
        .collect::<Result<Vec<_>>>()?;
    JetVector::new(base, components).map_err(|e| Error::input(PATH, e.to_string()))
}

fn parse_disc(text: &str) -> Result<AnalyticDisc> {
    const PATH: &str = "--disc";
    let v = parse_json(text, PATH)?;
    let Value::Object(map) = &v else {
        return input(PATH, "expected an object with `numerators`");
    };
    let poly_list = |key: &str| -> Result<Option<Vec<Vec<Complex64>>>> {
        let Some(value) = map.get(key) else { return Ok(None) };
        let path = format!("{PATH}.{key}");
        let Value::Array(rows) = value else {
            return input(&path, "expected a list of coefficient lists");
        };
        rows.iter()
            .enumerate()
            .map(|(h, row)| {
                let Value::Array(cs) = row else {
                    return input(&format!("{path}[{h}]"), "expected a coefficient list");
                };
                if cs.is_empty() {
                    return input(&format!("{path}[{h}]"), "empty coefficient list");
                }
                cs.iter()
                    .enumerate()
                    .map(|(i, c)| parse_complex(c, &format!("{path}[{h}][{i}]")))
                    .collect()
            })
            .collect::<Result<Vec<_>>>()
            .map(Some)
    };
    let Some(nums) = poly_list("numerators")? else {
        return input(&format!("{PATH}.numerators"), "missing");
    };
    if nums.is_empty() {
        return input(&format!("{PATH}.numerators"), "no components");
    }
    let disc = match poly_list("denominators")? {
        Some(dens) => {
            if dens.len() != nums.len() {
                return input(&format!("{PATH}.denominators"), "one denominator per component");
            }
            AnalyticDisc::rational(nums, dens)
        }
        None => AnalyticDisc::polynomial(nums),
    };
    disc.map_err(|e| Error::input(PATH, e.to_string()))
}

fn parse_zeros(text: &str) -> Result<Vec<Complex64>> {
    const PATH: &str = "--blaschke";
    let text = text.trim();
    if text.starts_with('[') {
        let Value::Array(items) = parse_json(text, PATH)? else { unreachable!() };
        return items
            .iter()
            .enumerate()
            .map(|(i, z)| parse_complex(z, &format!("{PATH}[{i}]")))
            .collect();
    }
    if text.is_empty() {
        return Ok(vec![]);
    }
    text.split(',')
        .enumerate()
        .map(|(i, t)| parse_complex_literal(t, &format!("{PATH}[{i}]")))
        .collect()
}

fn require<'a>(value: &'a Option<String>, flag: &str) -> Result<&'a str> {
    value.as_deref().ok_or_else(|| Error::input(flag, "required"))
}

fn domain_or_disc(args: &RunArgs) -> Result<(DomainSpec, Domain)> {
    parse_domain(args.domain.as_deref().unwrap_or("disc"))
}

fn disc_input(args: &RunArgs) -> Result<(AnalyticDisc, Value)> {
    match (&args.disc, &args.blaschke) {
        (Some(_), Some(_)) => input("--disc", "give either --disc or --blaschke, not both"),
        (Some(d), None) => {
            let disc = parse_disc(d)?;
            let desc = serde_json::to_value(&disc)?;
            Ok((disc, json!({ "disc": desc })))
        }
        (None, Some(z)) => {
            let zeros = parse_zeros(z)?;
            let disc = blaschke_product(&zeros).map_err(|e| Error::input("--blaschke", e.to_string()))?;
            Ok((disc, json!({ "blaschke_zeros": zeros })))
        }
        (None, None) => input("--disc", "one of --disc or --blaschke is required"),
    }
}

fn order(args: &RunArgs) -> Result<usize> {
    match args.k {
        Some(0) => input("--k", "order must be at least 1"),
        Some(k) => Ok(k),
        None => input("--k", "required"),
    }
}

fn solver_config(args: &RunArgs) -> Result<SolverConfig> {
    let mut cfg = SolverConfig::default();
    if let Some(d) = args.degree {
        cfg.degree = d;
    }
    if let Some(g) = args.grid {
        crate::circle::check_grid(g).map_err(|e| Error::input("--grid", e.to_string()))?;
        cfg.grid = g;
    }
    if let Some(t) = args.tol {
        if !(t > 0.0 && t < 1.0) {
            return input("--tol", "bisection tolerance must lie in (0, 1)");
        }
        cfg.bisect_tol = t;
    }
    if let Some(s) = args.seed {
        cfg.seed = s;
    }
    Ok(cfg)
}

fn stationarity_config(args: &RunArgs) -> Result<StationarityConfig> {
    let mut cfg = StationarityConfig::default();
    if let Some(g) = args.grid {
        crate::circle::check_grid(g).map_err(|e| Error::input("--grid", e.to_string()))?;
        if g <= 2 * cfg.modes {
            return input("--grid", format!("grid must exceed {}", 2 * cfg.modes));
        }
        cfg.grid = g;
    }
    if let Some(t) = args.tol {
        if !(t > 0.0) {
            return input("--tol", "tolerance must be positive");
        }
        cfg.stat_tol = t;
    }
    if let Some(d) = args.degree {
        cfg.solver.degree = d;
    }
    if let Some(s) = args.seed {
        cfg.solver.seed = s;
    }
    Ok(cfg)
}

fn to_value<T: Serialize>(x: &T) -> Result<Value> {
    Ok(serde_json::to_value(x)?)
}

/// `θ, ρ(f(e^{iθ}))` rows.
fn profile_csv(domain: &Domain, f: &AnalyticDisc, n: usize) -> Result<String> {
    let profile = profile_on_radius(domain, f, 1.0, n)?.real_values();
    let mut out = String::from("theta,rho\n");
    for (m, r) in profile.iter().enumerate() {
        out.push_str(&format!("{:.17e},{:.17e}\n", node(m, n), r));
    }
    Ok(out)
}

fn closed_form(spec: &DomainSpec, xi: &JetVector) -> Option<f64> {
    if spec.kind != DomainKind::Disc {
        return None;
    }
    match xi.order() {
        1 => k1_disc_closed_form(xi.base()[0], xi.component(1)[0]).ok(),
        2 => k2_disc_closed_form(xi).ok(),
        _ => None,
    }
}

fn cmd_metric(args: &RunArgs) -> Result<Output> {
    let (spec, domain) = parse_domain(require(&args.domain, "--domain")?)?;
    let xi = parse_jet(require(&args.jet, "--jet")?, &domain)?;
    if let Some(k) = args.k {
        if k != xi.order() {
            return input("--k", format!("jet has order {}, --k says {k}", xi.order()));
        }
    }
    let cfg = solver_config(args)?;
    let result = kobayashi_k_metric(&domain, &xi, &cfg)?;
    let exact = closed_form(&spec, &xi);
    let csv = match &args.csv {
        Some(_) => Some(profile_csv(&domain, &result.extremal, 4 * cfg.grid)?),
        None => None,
    };
    Ok(Output {
        json: json!({
            "command": "metric",
            "config": { "domain": spec, "jet": xi, "solver": cfg },
            "status": "ok",
            "result": to_value(&result)?,
            "closed_form": exact,
            "relative_gap": exact.map(|e| result.value / e - 1.0),
        }),
        csv,
        certified: true,
    })
}

fn cmd_yu(args: &RunArgs) -> Result<Output> {
    let (spec, domain) = parse_domain(require(&args.domain, "--domain")?)?;
    let k = order(args)?;
    let v = parse_vector(&parse_json(require(&args.jet, "--jet")?, "--jet")?, domain.dim(), "--jet")?;
    let cfg = solver_config(args)?;
    let p = domain.reference_point().to_vec();
    let result = yu_metric(&domain, &p, &v, k, &cfg)?;
    let exact = closed_form(&spec, &result.jet);
    let csv = match &args.csv {
        Some(_) => Some(profile_csv(&domain, &result.extremal, 4 * cfg.grid)?),
        None => None,
    };
    Ok(Output {
        json: json!({
            "command": "yu",
            "config": { "domain": spec, "k": k, "vector": v, "solver": cfg },
            "status": "ok",
            "result": to_value(&result)?,
            "closed_form": exact,
        }),
        csv,
        certified: true,
    })
}

fn cmd_extremal(args: &RunArgs) -> Result<Output> {
    let (spec, domain) = parse_domain(require(&args.domain, "--domain")?)?;
    let xi = parse_jet(require(&args.jet, "--jet")?, &domain)?;
    let cfg = solver_config(args)?;
    let scfg = StationarityConfig {
        solver: cfg.clone(),
        ..StationarityConfig::default()
    };
    let result = kobayashi_k_metric(&domain, &xi, &cfg)?;
    let report = euler_lagrange_check(&domain, &result, xi.order(), &scfg)?;
    let csv = match &args.csv {
        Some(_) => Some(profile_csv(&domain, &result.extremal, scfg.grid)?),
        None => None,
    };
    Ok(Output {
        json: json!({
            "command": "extremal",
            "config": { "domain": spec, "jet": xi, "solver": cfg, "stationarity": scfg },
            "status": if report.pass { "ok" } else { "not_certified" },
            "result": to_value(&result)?,
            "euler_lagrange": to_value(&report)?,
        }),
        csv,
        certified: report.pass,
    })
}

/// Certification outcome: certificate, or the reason it was not issued.
fn outcome(r: Result<StationarityCertificate>) -> Result<(Value, Option<StationarityCertificate>)> {
    match r {
        Ok(cert) => Ok((json!({ "certified": true, "certificate": cert }), Some(cert))),
        Err(
            e @ (Error::NonzeroWinding(_)
            | Error::ResidualAboveTolerance { .. }
            | Error::NotOnBoundary(_)
            | Error::VanishingGradient(_)),
        ) => {
            let mut v = json!({ "certified": false, "error": e.to_string() });
            match e {
                Error::NonzeroWinding(w) => v["winding"] = json!(w),
                Error::ResidualAboveTolerance { best, tol } => {
                    v["best_residual"] = json!(best);
                    v["tolerance"] = json!(tol);
                }
                _ => {}
            }
            Ok((v, None))
        }
        Err(e) => Err(e),
    }
}

fn is_inner_scalar(spec: &DomainSpec, f: &AnalyticDisc) -> bool {
    spec.kind == DomainKind::Disc && f.dim() == 1
}

fn cmd_stationary(args: &RunArgs) -> Result<Output> {
    let (spec, domain) = domain_or_disc(args)?;
    let (f, source) = disc_input(args)?;
    let k = order(args)?;
    let cfg = stationarity_config(args)?;
    let (exact, exact_cert) = if is_inner_scalar(&spec, &f) {
        let (v, c) = outcome(scalar_stationarity_exact(&f, k, cfg.grid))?;
        (Some(v), c)
    } else {
        (None, None)
    };
    let (search, search_cert) = outcome(stationarity_search(&domain, &f, k, &cfg))?;
    let certified = search_cert.is_some() && (exact.is_none() || exact_cert.is_some());
    let gap = match (&exact_cert, &search_cert) {
        (Some(a), Some(b)) => Some(a.c.iter().zip(&b.c).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)),
        _ => None,
    };
    let csv = match (&args.csv, search_cert.as_ref().or(exact_cert.as_ref())) {
        (Some(_), Some(cert)) => Some(certificate_spectrum(&domain, &f, cert)?.to_csv()),
        _ => None,
    };
    Ok(Output {
        json: json!({
            "command": "stationary",
            "config": { "domain": spec, "input": source, "k": k, "stationarity": cfg },
            "status": if certified { "ok" } else { "not_certified" },
            "exact": exact,
            "search": search,
            "weight_gap": gap,
        }),
        csv,
        certified,
    })
}

fn cmd_blaschke(args: &RunArgs) -> Result<Output> {
    let zeros = parse_zeros(require(&args.blaschke, "--blaschke")?)?;
    let f = blaschke_product(&zeros).map_err(|e| Error::input("--blaschke", e.to_string()))?;
    let k = args.k.unwrap_or(zeros.len().max(1));
    if k == 0 {
        return input("--k", "order must be at least 1");
    }
    let grid = args.grid.unwrap_or(crate::circle::DEFAULT_GRID);
    crate::circle::check_grid(grid).map_err(|e| Error::input("--grid", e.to_string()))?;
    let jet = jet_of_disc(&f, k)?;
    let slack = match schwarz_bound_check(&f) {
        Ok(s) => Some(s),
        Err(Error::NotCentered(_)) => None,
        Err(e) => return Err(e),
    };
    let winding = match scalar_stationarity_exact(&f, k, grid) {
        Ok(_) => Some(0),
        Err(Error::NonzeroWinding(w)) => Some(w),
        Err(_) => None,
    };
    let csv = match &args.csv {
        Some(_) => {
            let trace = f.boundary_trace(grid)?;
            let mut out = String::from("theta,re,im\n");
            for (m, z) in trace.component(0).iter().enumerate() {
                out.push_str(&format!("{:.17e},{:.17e},{:.17e}\n", node(m, grid), z.re, z.im));
            }
            Some(out)
        }
        None => None,
    };
    Ok(Output {
        json: json!({
            "command": "blaschke",
            "config": { "zeros": zeros, "k": k, "grid": grid },
            "status": "ok",
            "disc": f,
            "jet": jet,
            "schwarz_slack": slack,
            "winding": winding,
        }),
        csv,
        certified: true,
    })
}

fn cmd_pairing(args: &RunArgs) -> Result<Output> {
    let (spec, domain) = domain_or_disc(args)?;
    let (f, source) = disc_input(args)?;
    let k = order(args)?;
    let cfg = stationarity_config(args)?;
    let cert = if is_inner_scalar(&spec, &f) {
        scalar_stationarity_exact(&f, k, cfg.grid)
    } else {
        stationarity_search(&domain, &f, k, &cfg)
    };
    let (cert_value, cert) = outcome(cert)?;
    let Some(cert) = cert else {
        return Ok(Output {
            json: json!({
                "command": "pairing",
                "config": { "domain": spec, "input": source, "k": k, "stationarity": cfg },
                "status": "not_certified",
                "certificate": cert_value,
            }),
            csv: None,
            certified: false,
        });
    };
    let mut family = Vec::new();
    let mut positive = true;
    for lambda in FAMILY_LAMBDAS {
        let s = pairing_sum(&f, &cert.lift, lambda, k)?;
        positive &= (1.0 - lambda) * s > 0.0;
        family.push(json!({ "lambda": lambda, "pairing": s, "weighted_pairing": (1.0 - lambda) * s }));
    }
    let at_one = pairing_sum(&f, &cert.lift, 1.0, k)?;
    let probe = match local_extremality_probe(&domain, &f, k, &cfg) {
        Ok(r) => json!({ "pass": true, "report": r }),
        Err(Error::ProbeFailed(r)) => json!({ "pass": false, "report": r }),
        Err(e) => json!({ "pass": false, "error": e.to_string() }),
    };
    let certified = positive && at_one != 0.0 && probe["pass"] == json!(true);
    Ok(Output {
        json: json!({
            "command": "pairing",
            "config": { "domain": spec, "input": source, "k": k, "stationarity": cfg },
            "status": if certified { "ok" } else { "not_certified" },
            "certificate_residual": cert.residual,
            "family": family,
            "pairing_at_one": at_one,
            "probe": probe,
        }),
        csv: None,
        certified,
    })
}

fn cmd_verify(args: &RunArgs) -> Result<Output> {
    let suite = args.suite.as_deref().unwrap_or("all");
    let seed = args.seed.unwrap_or(0);
    let cfg = solver_config(args)?;
    let names: Vec<&str> = if suite == "all" {
        SUITES.to_vec()
    } else if SUITES.contains(&suite) {
        vec![suite]
    } else {
        return input("--suite", format!("unknown suite `{suite}`; expected all or one of {}", SUITES.join(", ")));
    };
    let mut reports = Vec::new();
    for name in names {
        reports.push(run_suite(name, seed, &cfg).expect("known suite")?);
    }
    let pass = reports.iter().all(|r| r.pass);
    Ok(Output {
        json: json!({
            "command": "verify",
            "config": { "suite": suite, "seed": seed, "solver": cfg },
            "status": if pass { "ok" } else { "not_certified" },
            "suites": reports,
        }),
        csv: None,
        certified: pass,
    })
}

fn cmd_spectrum(args: &RunArgs) -> Result<Output> {
    let (f, source) = disc_input(args)?;
    let grid = args.grid.unwrap_or(crate::circle::DEFAULT_GRID);
    crate::circle::check_grid(grid).map_err(|e| Error::input("--grid", e.to_string()))?;
    let spectrum = fourier_transform(&f.boundary_trace(grid)?);
    let rows: Vec<Value> = spectrum
        .indices()
        .map(|j| {
            let norm = spectrum.coeff_vec(j).iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            json!([j, norm])
        })
        .collect();
    Ok(Output {
        json: json!({
            "command": "spectrum",
            "config": { "input": source, "grid": grid },
            "status": "ok",
            "norms": rows,
        }),
        csv: args.csv.as_ref().map(|_| spectrum.to_csv()),
        certified: true,
    })
}

fn execute(cli: &Cli) -> Result<(Output, &RunArgs)> {
    Ok(match &cli.command {
        Command::Metric(a) => (cmd_metric(a)?, a),
        Command::Yu(a) => (cmd_yu(a)?, a),
        Command::Extremal(a) => (cmd_extremal(a)?, a),
        Command::Stationary(a) => (cmd_stationary(a)?, a),
        Command::Blaschke(a) => (cmd_blaschke(a)?, a),
        Command::Pairing(a) => (cmd_pairing(a)?, a),
        Command::Verify(a) => (cmd_verify(a)?, a),
        Command::Spectrum(a) => (cmd_spectrum(a)?, a),
    })
}

/// Runs one command and returns the process exit status.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{text}");
                    0
                }
                _ => {
                    let _ = write!(stderr, "{text}");
                    1
                }
            };
        }
    };
    let (output, args) = match execute(&cli) {
        Ok(x) => x,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return 1;
        }
    };
    let mut text = match serde_json::to_string_pretty(&output.json) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return 1;
        }
    };
    text.push('\n');
    let written = match &args.out {
        Some(path) => fs::write(path, &text),
        None => stdout.write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: cannot write output: {e}");
        return 1;
    }
    if let (Some(path), Some(csv)) = (&args.csv, &output.csv) {
        if let Err(e) = fs::write(path, csv) {
            let _ = writeln!(stderr, "error: cannot write {path}: {e}");
            return 1;
        }
    }
    if output.certified {
        0
    } else {
        2
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("kjet").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn complex_literals() {
        assert_eq!(parse_complex(&json!(2), "x").unwrap(), Complex64::new(2.0, 0.0));
        assert_eq!(parse_complex(&json!([1, -2]), "x").unwrap(), Complex64::new(1.0, -2.0));
        assert_eq!(parse_complex(&json!("0.5-0.25i"), "x").unwrap(), Complex64::new(0.5, -0.25));
        assert!(matches!(parse_complex(&json!({}), "a.b"), Err(Error::Input { path, .. }) if path == "a.b"));
    }

    #[test]
    fn domain_shorthands() {
        assert_eq!(parse_domain("disc").unwrap().1.dim(), 1);
        assert_eq!(parse_domain("ball:3").unwrap().1.dim(), 3);
        assert_eq!(parse_domain("ellipsoid:1,2").unwrap().1.dim(), 2);
        assert_eq!(parse_domain("complex_ellipsoid:1,2").unwrap().1.dim(), 2);
        assert!(parse_domain("ellipsoid:1,-2").is_err());
    }

    #[test]
    fn input_errors_carry_paths() {
        let (code, _, err) = run_capture(&["metric", "--domain", "ball", "--jet", "[[[1,0],\"x\"]]"]);
        assert_eq!(code, 1);
        assert!(err.contains("--jet[0][1]"), "{err}");
        let (code, _, err) = run_capture(&["metric", "--domain", "disc"]);
        assert_eq!(code, 1);
        assert!(err.contains("--jet"));
        let (code, _, _) = run_capture(&["frobnicate"]);
        assert_eq!(code, 1);
        let (code, out, _) = run_capture(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("metric"));
    }
}
