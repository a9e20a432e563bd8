//! `k`-jets of holomorphic discs in local coordinates.
//!
//! A jet at `p` is stored as the raw derivative tuple
//! `(f'(0), f''(0), ..., f^{(k)}(0))`; Taylor coefficients only appear at the
//! boundary with discs and power series, where the `j!` factors are applied.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::discs::AnalyticDisc;
use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

pub(crate) fn factorial(j: usize) -> f64 {
    (1..=j).map(|i| i as f64).product()
}

pub(crate) fn vec_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Base point plus derivative components `ξ_1, ..., ξ_k ∈ C^n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JetVector {
    base: Vec<Complex64>,
    components: Vec<Vec<Complex64>>,
}

impl JetVector {
    pub fn new(base: Vec<Complex64>, components: Vec<Vec<Complex64>>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidOrder("a jet needs at least one component".into()));
        }
        if base.is_empty() {
            return Err(Error::DimensionMismatch("empty base point".into()));
        }
        if let Some(j) = components.iter().position(|c| c.len() != base.len()) {
            return Err(Error::DimensionMismatch(format!(
                "component {} has dimension {}, base point has {}",
                j + 1,
                components[j].len(),
                base.len()
            )));
        }
        Ok(Self { base, components })
    }

    /// Jet at the origin of `C^n`.
    pub fn at_origin(components: Vec<Vec<Complex64>>) -> Result<Self> {
        let n = components.first().map_or(0, Vec::len);
        Self::new(vec![ZERO; n], components)
    }

    /// Scalar jet at the origin of `C`.
    pub fn scalar(components: &[Complex64]) -> Result<Self> {
        Self::at_origin(components.iter().map(|z| vec![*z]).collect())
    }

    pub fn order(&self) -> usize {
        self.components.len()
    }

    pub fn dim(&self) -> usize {
        self.base.len()
    }

    pub fn base(&self) -> &[Complex64] {
        &self.base
    }

    pub fn components(&self) -> &[Vec<Complex64>] {
        &self.components
    }

    /// `ξ_j`, one-based.
    pub fn component(&self, j: usize) -> &[Complex64] {
        &self.components[j - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().flatten().all(|z| *z == ZERO)
    }

    pub fn with_base(&self, base: Vec<Complex64>) -> Result<Self> {
        Self::new(base, self.components.clone())
    }

    /// Euclidean distance between the component tuples (base points ignored).
    pub fn component_distance(&self, other: &Self) -> f64 {
        self.components
            .iter()
            .zip(&other.components)
            .flat_map(|(a, b)| a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()))
            .sum::<f64>()
            .sqrt()
    }

    /// Taylor coefficients `ξ_j / j!` of the polynomial representative.
    pub fn taylor_coefficients(&self) -> Vec<Vec<Complex64>> {
        self.components
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let f = factorial(i + 1);
                c.iter().map(|z| z / f).collect()
            })
            .collect()
    }
}

/// `c·ξ = (c ξ_1, c² ξ_2, ..., c^k ξ_k)`.
pub fn jet_scale(c: Complex64, xi: &JetVector) -> JetVector {
    let mut pow = Complex64::new(1.0, 0.0);
    let components = xi
        .components
        .iter()
        .map(|v| {
            pow *= c;
            v.iter().map(|z| z * pow).collect()
        })
        .collect();
    JetVector {
        base: xi.base.clone(),
        components,
    }
}

/// `(f'(0), ..., f^{(k)}(0))` based at `f(0)`.
pub fn jet_of_disc(f: &AnalyticDisc, k: usize) -> Result<JetVector> {
    if k == 0 {
        return Err(Error::InvalidOrder("order must be at least 1".into()));
    }
    let taylor = f.taylor_vectors(k);
    let components = (1..=k)
        .map(|j| {
            let fact = factorial(j);
            taylor[j].iter().map(|z| z * fact).collect()
        })
        .collect();
    JetVector::new(taylor[0].clone(), components)
}

/// Drops the highest-order component.
pub fn jet_project(xi: &JetVector) -> Result<JetVector> {
    if xi.order() < 2 {
        return Err(Error::InvalidOrder("cannot project a 1-jet".into()));
    }
    JetVector::new(
        xi.base.clone(),
        xi.components[..xi.order() - 1].to_vec(),
    )
}

/// Smallest `j` with `ξ_j ≠ 0` (one-based, exact comparison).
pub fn first_nonzero_index(xi: &JetVector) -> Result<usize> {
    xi.components
        .iter()
        .position(|c| c.iter().any(|z| *z != ZERO))
        .map(|i| i + 1)
        .ok_or(Error::AllZero)
}

/// Polynomial term `coeff · Π (z_i - p_i)^{exponents_i}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub exponents: Vec<u32>,
    pub coeff: Complex64,
}

/// Holomorphic map `C^m -> C^n` given by its truncated power series at `center`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalyticMapSeries {
    center: Vec<Complex64>,
    components: Vec<Vec<Term>>,
}

type MultiPoly = BTreeMap<Vec<u32>, Complex64>;

fn total_degree(e: &[u32]) -> usize {
    e.iter().map(|&x| x as usize).sum()
}

fn multi_mul(a: &MultiPoly, b: &MultiPoly, order: usize) -> MultiPoly {
    let mut out = MultiPoly::new();
    for (ea, ca) in a {
        let da = total_degree(ea);
        for (eb, cb) in b {
            if da + total_degree(eb) > order {
                continue;
            }
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *out.entry(e).or_insert(ZERO) += ca * cb;
        }
    }
    out
}

impl AnalyticMapSeries {
    pub fn new(center: Vec<Complex64>, components: Vec<Vec<Term>>) -> Result<Self> {
        if center.is_empty() || components.is_empty() {
            return Err(Error::DimensionMismatch("empty map series".into()));
        }
        for terms in &components {
            if let Some(t) = terms.iter().find(|t| t.exponents.len() != center.len()) {
                return Err(Error::DimensionMismatch(format!(
                    "term with {} exponents in a series on C^{}",
                    t.exponents.len(),
                    center.len()
                )));
            }
        }
        Ok(Self { center, components })
    }

    pub fn identity(center: Vec<Complex64>) -> Self {
        let n = center.len();
        let components = (0..n)
            .map(|h| {
                let mut e = vec![0; n];
                e[h] = 1;
                vec![
                    Term {
                        exponents: vec![0; n],
                        coeff: center[h],
                    },
                    Term {
                        exponents: e,
                        coeff: Complex64::new(1.0, 0.0),
                    },
                ]
            })
            .collect();
        Self { center, components }
    }

    /// `z ↦ A z` expanded at `center`.
    pub fn linear(matrix: &[Vec<Complex64>], center: Vec<Complex64>) -> Result<Self> {
        let m = center.len();
        let mut components = Vec::with_capacity(matrix.len());
        for row in matrix {
            if row.len() != m {
                return Err(Error::DimensionMismatch("matrix row length".into()));
            }
            let value: Complex64 = row.iter().zip(&center).map(|(a, z)| a * z).sum();
            let mut terms = vec![Term {
                exponents: vec![0; m],
                coeff: value,
            }];
            for (i, a) in row.iter().enumerate() {
                let mut e = vec![0; m];
                e[i] = 1;
                terms.push(Term {
                    exponents: e,
                    coeff: *a,
                });
            }
            components.push(terms);
        }
        Self::new(center, components)
    }

    pub fn source_dim(&self) -> usize {
        self.center.len()
    }

    pub fn target_dim(&self) -> usize {
        self.components.len()
    }

    pub fn center(&self) -> &[Complex64] {
        &self.center
    }

    pub fn degree(&self) -> usize {
        self.components
            .iter()
            .flatten()
            .map(|t| total_degree(&t.exponents))
            .max()
            .unwrap_or(0)
    }

    pub fn eval(&self, z: &[Complex64]) -> Vec<Complex64> {
        let w: Vec<Complex64> = z.iter().zip(&self.center).map(|(a, b)| a - b).collect();
        self.components
            .iter()
            .map(|terms| {
                terms
                    .iter()
                    .map(|t| {
                        t.exponents
                            .iter()
                            .zip(&w)
                            .fold(t.coeff, |acc, (&e, wi)| acc * wi.powu(e))
                    })
                    .sum()
            })
            .collect()
    }

    /// Value at the center.
    pub fn value_at_center(&self) -> Vec<Complex64> {
        self.components
            .iter()
            .map(|terms| {
                terms
                    .iter()
                    .filter(|t| t.exponents.iter().all(|&e| e == 0))
                    .map(|t| t.coeff)
                    .sum()
            })
            .collect()
    }

    fn as_multi(&self) -> Vec<MultiPoly> {
        self.components
            .iter()
            .map(|terms| {
                let mut p = MultiPoly::new();
                for t in terms {
                    *p.entry(t.exponents.clone()).or_insert(ZERO) += t.coeff;
                }
                p
            })
            .collect()
    }

    /// Truncated series of `outer ∘ inner` at `inner.center`, up to total degree `order`.
    pub fn compose(outer: &Self, inner: &Self, order: usize) -> Result<Self> {
        if outer.source_dim() != inner.target_dim() {
            return Err(Error::DimensionMismatch("composition dimensions".into()));
        }
        let inner_value = inner.value_at_center();
        let gap = vec_norm(
            &inner_value
                .iter()
                .zip(&outer.center)
                .map(|(a, b)| a - b)
                .collect::<Vec<_>>(),
        );
        if gap > 1e-12 {
            return Err(Error::DimensionMismatch(
                "outer series is not centered at the image of the inner center".into(),
            ));
        }
        let m = inner.source_dim();
        let zero_exp = vec![0u32; m];
        let shifts: Vec<MultiPoly> = inner
            .as_multi()
            .into_iter()
            .map(|mut p| {
                p.remove(&zero_exp);
                p
            })
            .collect();
        let mut one = MultiPoly::new();
        one.insert(zero_exp.clone(), Complex64::new(1.0, 0.0));

        let mut components = Vec::with_capacity(outer.target_dim());
        for terms in &outer.components {
            let mut acc = MultiPoly::new();
            for t in terms {
                let mut prod = one.clone();
                for (i, &e) in t.exponents.iter().enumerate() {
                    for _ in 0..e {
                        prod = multi_mul(&prod, &shifts[i], order);
                    }
                }
                for (e, c) in prod {
                    *acc.entry(e).or_insert(ZERO) += t.coeff * c;
                }
            }
            components.push(
                acc.into_iter()
                    .map(|(exponents, coeff)| Term { exponents, coeff })
                    .collect(),
            );
        }
        Self::new(inner.center.clone(), components)
    }
}

fn series_mul(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let k = a.len() - 1;
    let mut out = vec![ZERO; k + 1];
    for (i, x) in a.iter().enumerate() {
        if *x == ZERO {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(k + 1 - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// `Φ_*(ξ)`: the `k`-jet at `Φ(p)` of `Φ ∘ g` for any `g` with `J^k_p(g) = ξ`.
///
/// Uses the polynomial representative `g(ζ) = p + Σ ξ_j ζ^j / j!` and
/// truncated power-series composition.
pub fn jet_pushforward(map: &AnalyticMapSeries, xi: &JetVector) -> Result<JetVector> {
    if map.source_dim() != xi.dim() {
        return Err(Error::DimensionMismatch(format!(
            "map acts on C^{}, jet lives in C^{}",
            map.source_dim(),
            xi.dim()
        )));
    }
    let k = xi.order();
    let taylor = xi.taylor_coefficients();
    let delta: Vec<Vec<Complex64>> = (0..xi.dim())
        .map(|i| {
            let mut s = vec![ZERO; k + 1];
            s[0] = xi.base[i] - map.center[i];
            for j in 1..=k {
                s[j] = taylor[j - 1][i];
            }
            s
        })
        .collect();

    let mut powers: BTreeMap<(usize, u32), Vec<Complex64>> = BTreeMap::new();
    let mut unit = vec![ZERO; k + 1];
    unit[0] = Complex64::new(1.0, 0.0);

    let mut series = Vec::with_capacity(map.target_dim());
    for terms in &map.components {
        let mut acc = vec![ZERO; k + 1];
        for t in terms {
            let mut prod = unit.clone();
            for (i, &e) in t.exponents.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = powers
                    .entry((i, e))
                    .or_insert_with(|| {
                        (0..e).fold(unit.clone(), |p, _| series_mul(&p, &delta[i]))
                    })
                    .clone();
                prod = series_mul(&prod, &pw);
            }
            for (a, p) in acc.iter_mut().zip(prod) {
                *a += t.coeff * p;
            }
        }
        series.push(acc);
    }
    let base = series.iter().map(|s| s[0]).collect();
    let components = (1..=k)
        .map(|j| {
            let f = factorial(j);
            series.iter().map(|s| s[j] * f).collect()
        })
        .collect();
    JetVector::new(base, components)
}
