//! Higher-order Kobayashi metrics on bounded domains of `C^n`.
//!
//! The crate computes the Kobayashi `k`-metric by solving the extremal-disc
//! problem over polynomial discs, and certifies `k`-stationarity of analytic
//! discs through Fourier analysis of boundary traces on the unit circle.
//!
//! Module map:
//!
//! - [`circle`] - sampled functions on the unit circle, spectra, winding numbers,
//!   real completions and holomorphic extension.
//! - [`jets`] - `k`-jets, the scaling action and pushforward by polynomial maps.
//! - [`domains`] - defining functions, gradients and convexity probes.
//! - [`discs`] - rational analytic discs, Blaschke products, Schwarz equality discs.
//! - [`kobayashi`] - closed forms and the numerical extremal solver.
//! - [`stationarity`] - stationarity certificates, the pairing sum, extremality
//!   probes and the Poletsky constraint functionals.
//! - [`cli`] - the `kjet` command-line front end.

pub mod circle;
pub mod cli;
pub mod discs;
pub mod domains;
pub mod error;
pub mod jets;
pub mod kobayashi;
pub mod lsq;
pub mod stationarity;
pub mod verify;

pub use num_complex::Complex64;

pub use circle::{CircleFunction, FourierSpectrum};
pub use discs::AnalyticDisc;
pub use domains::Domain;
pub use error::{Error, Result};
pub use jets::{AnalyticMapSeries, JetVector};
pub use kobayashi::{MetricResult, SolverConfig};
pub use stationarity::{StationarityCertificate, StationarityConfig};
