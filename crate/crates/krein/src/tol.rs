//! Tolerance policy shared by every numerical decision in the crate.
//!
//! All structural residual checks scale as `rel * (1 + scale)` where `scale`
//! is the spectral norm of whatever matrix is being tested, so the same
//! relative policy covers inputs of any magnitude.

use serde::{Deserialize, Serialize};

/// Environment variable holding a JSON object of tolerance overrides.
///
/// Applied on top of the built-in defaults, below any overrides carried in a
/// manifest (lowest precedence among override sources).
pub const TOL_ENV_VAR: &str = "KREIN_TOL_OVERRIDE";

/// Resolved tolerance set used by an analysis run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    /// Relative tolerance for structural residuals (Hermitian symmetry,
    /// involutivity, block-diagonality, orthonormality).
    pub struct_rel: f64,
    /// Relative tolerance for definiteness decisions on Gram spectra.
    pub sign_rel: f64,
    /// Relative tolerance for eigenvalue clustering, scaled by `1 + ||A||`.
    pub cluster_rel: f64,
    /// Absolute idempotency target for contour-quadrature projections.
    pub proj_abs: f64,
    /// Base tolerance for the half-line symmetry quadrature stop rule,
    /// scaled internally by `1 + tau^2`.
    pub tau_abs: f64,
    /// Multiplier on `n * eps * sigma_1` in rank decisions.
    pub rank_factor: f64,
    /// Width of the indeterminate band around region and half-line
    /// boundaries, in units of the cluster tolerance.
    pub margin_factor: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            struct_rel: 1e-10,
            sign_rel: 1e-8,
            cluster_rel: 1e-7,
            proj_abs: 1e-10,
            tau_abs: 1e-9,
            rank_factor: 1e3,
            margin_factor: 10.0,
        }
    }
}

impl Tolerances {
    /// Structural residual tolerance for a matrix of the given norm.
    pub fn tol_struct(&self, scale: f64) -> f64 {
        self.struct_rel * (1.0 + scale)
    }

    /// Definiteness tolerance for a Gram spectrum of the given scale.
    pub fn tol_sign(&self, scale: f64) -> f64 {
        self.sign_rel * (1.0 + scale)
    }

    /// Eigenvalue clustering tolerance for an operator of the given norm.
    pub fn cluster_tol(&self, scale: f64) -> f64 {
        self.cluster_rel * (1.0 + scale)
    }

    /// Half-width of the indeterminate band around a boundary.
    pub fn margin(&self, scale: f64) -> f64 {
        self.margin_factor * self.cluster_tol(scale)
    }

    /// Singular-value cutoff below which directions count toward the kernel.
    pub fn rank_threshold(&self, n: usize, sigma_max: f64) -> f64 {
        n as f64 * f64::EPSILON * sigma_max * self.rank_factor
    }

    /// Apply a partial override set on top of `self`.
    pub fn with_overrides(mut self, ov: &TolOverrides) -> Self {
        if let Some(v) = ov.struct_rel {
            self.struct_rel = v;
        }
        if let Some(v) = ov.sign_rel {
            self.sign_rel = v;
        }
        if let Some(v) = ov.cluster_rel {
            self.cluster_rel = v;
        }
        if let Some(v) = ov.proj_abs {
            self.proj_abs = v;
        }
        if let Some(v) = ov.tau_abs {
            self.tau_abs = v;
        }
        if let Some(v) = ov.rank_factor {
            self.rank_factor = v;
        }
        if let Some(v) = ov.margin_factor {
            self.margin_factor = v;
        }
        self
    }

    /// Apply overrides from [`TOL_ENV_VAR`], if set and parseable.
    ///
    /// A malformed value is reported as an error rather than ignored, so a
    /// typo in the environment cannot silently loosen a run.
    pub fn with_env(self) -> Result<Self, String> {
        match std::env::var(TOL_ENV_VAR) {
            Ok(raw) => {
                let ov: TolOverrides = serde_json::from_str(&raw)
                    .map_err(|e| format!("invalid {TOL_ENV_VAR}: {e}"))?;
                Ok(self.with_overrides(&ov))
            }
            Err(_) => Ok(self),
        }
    }
}

/// Partial tolerance override set, as found in manifests and the
/// environment variable.
#[derive(Debug, Clone, Default, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct TolOverrides {
    pub struct_rel: Option<f64>,
    pub sign_rel: Option<f64>,
    pub cluster_rel: Option<f64>,
    pub proj_abs: Option<f64>,
    pub tau_abs: Option<f64>,
    pub rank_factor: Option<f64>,
    pub margin_factor: Option<f64>,
}

impl TolOverrides {
    pub fn is_empty(&self) -> bool {
        *self == TolOverrides::default()
    }
}
