use thiserror::Error;

use crate::stationarity::ProbeReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    // circle functions
    #[error("invalid circle function: {0}")]
    InvalidCircleFunction(String),
    #[error("modulus {min:.3e} falls below the required minimum {required:.3e}; winding undefined")]
    NearZero { min: f64, required: f64 },
    #[error("argument increment {step:.3} exceeds pi/2 at sample {index}; refine the grid")]
    AliasRisk { index: usize, step: f64 },
    #[error("function vanishes identically")]
    ZeroFunction,
    #[error("negative-frequency residual {residual:.3e} exceeds tolerance {tol:.3e}")]
    NotHolomorphic { residual: f64, tol: f64 },

    // jets
    #[error("every jet component vanishes")]
    AllZero,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid jet order: {0}")]
    InvalidOrder(String),

    // domains
    #[error("coefficient {index} is {value}, must be positive")]
    NonPositiveCoefficient { index: usize, value: f64 },
    #[error("ray in direction {direction} does not bracket a boundary point")]
    DegenerateRay { direction: usize },
    #[error("invalid domain: {0}")]
    InvalidDomain(String),

    // discs
    #[error("point with modulus {0} lies outside the closed unit disc")]
    OutsideClosedDisc(f64),
    #[error("parameter modulus {0} is not less than one")]
    ModulusNotLessThanOne(f64),
    #[error("reparametrization factor {0} outside (0, 1]")]
    BadLambda(f64),
    #[error("disc is not a self-map of the unit disc: boundary modulus reaches {0}")]
    NotSelfMap(f64),
    #[error("disc is not centered: |f(0)| = {0:.3e}")]
    NotCentered(f64),
    #[error("denominator of component {component} vanishes on the closed disc")]
    DenominatorVanishes { component: usize },
    #[error("invalid disc: {0}")]
    InvalidDisc(String),

    // kobayashi
    #[error("base point lies outside the domain")]
    OutsideDomain,
    #[error("closed form is only available at the origin")]
    BasePointNotZero,
    #[error("the constant disc is infeasible: rho(p) = {0:.3e}")]
    InfeasibleAtZero(f64),
    #[error("bisection bracket [{lo:.6e}, {hi:.6e}] above tolerance after {iterations} steps")]
    NotConverged { lo: f64, hi: f64, iterations: usize },
    #[error("the boundary-only constraint needs a plurisubharmonic defining function")]
    NotPlurisubharmonic,

    // stationarity
    #[error("winding number {0} is nonzero; the disc is not stationary for this order")]
    NonzeroWinding(i64),
    #[error("disc is not attached to the boundary: max |rho(f)| = {0:.3e}")]
    NotOnBoundary(f64),
    #[error("gradient of the defining function vanishes along the disc at sample {0}")]
    VanishingGradient(usize),
    #[error("best residual {best:.3e} above tolerance {tol:.3e}")]
    ResidualAboveTolerance { best: f64, tol: f64 },
    #[error("disc is not certified stationary: {0}")]
    NotCertifiedStationary(String),
    #[error("local extremality probe found a competitor with mu = {}", .0.best_mu)]
    ProbeFailed(Box<ProbeReport>),
    #[error("jet vanishes")]
    ZeroJet,

    // io
    #[error("input error at `{path}`: {message}")]
    Input { path: String, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn input(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Input {
            path: path.into(),
            message: message.into(),
        }
    }
}
