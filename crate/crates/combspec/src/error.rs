//! Crate-wide error type.

use num_complex::Complex64;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Coefficient map violates the reality pairing c(-n) = conj c(n), or
    /// some other structural defect of a potential.
    #[error("invalid potential: {0}")]
    InvalidPotential(String),

    /// Bad input data (file contents, config values, incompatible objects).
    #[error("validation error: {0}")]
    Validation(String),

    /// The adaptive integrator could not reach the requested tolerance.
    #[error("integration failure at x = {x}: {reason} (|z| = {z_abs:.3e})")]
    Integration { x: f64, z_abs: f64, reason: String },

    /// A root or extremum bracket could not be established or refined.
    #[error("bracket failure for {what}: {detail}")]
    Bracket { what: String, detail: String },

    /// The requested gap could not be separated at the working resolution.
    #[error("gap {label} needs refinement: {detail}")]
    GapResolution { label: String, detail: String },

    /// w(z) requested within `tol` of a spectral band, where the inverse
    /// cosine branch cannot be pinned down.
    #[error("branch ambiguity for w at z = {z}")]
    BranchAmbiguity { z: Complex64 },

    /// Weyl/Green evaluation at a point inside a band (|multiplier| = 1).
    #[error("z = {z} lies in the spectrum; Weyl solutions do not decay")]
    NotInResolvent { z: Complex64 },

    /// Two independent routes to the same quantity disagree.
    #[error("cross-validation failure for {what}: {a} vs {b} (tol {tol:.2e})")]
    CrossValidation { what: String, a: f64, b: f64, tol: f64 },

    /// Evaluation requested outside the domain of a product formula.
    #[error("domain error: {0}")]
    Domain(String),

    /// A scan exceeded its configured work budget.
    #[error("budget exceeded: {0}")]
    Budget(String),

    /// Stored floating-point data cannot support the requested precision.
    #[error("precision exhausted: {0}")]
    Precision(String),

    /// Dubrovin round trip on a label set that is not periodic.
    #[error("unsupported round trip: {0}")]
    UnsupportedRoundtrip(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code per the CLI contract: 2 for validation-type
    /// failures, 3 for numerical ones.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidPotential(_) | Error::Validation(_) | Error::Io(_) | Error::Json(_) => 2,
            _ => 3,
        }
    }
}
