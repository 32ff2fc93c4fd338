//! Adam-assisted fully informed particle swarm (Adam-FIPSO) over QAOA angles.
//!
//! Three update rules share one driver, selected by [`Mode`]:
//!
//! * [`Mode::AdamFd`]: the fully informed social step moves each particle to a
//!   candidate, then an Adam descent step on a central-difference gradient of
//!   the loss corrects the candidate. This is the default.
//! * [`Mode::AdamSwarm`]: the Adam moments track the swarm-influence pull
//!   (mean of `c * r_j * (pbest_j - x_i)`) and the velocity is
//!   `w * v + eta * m_hat / (sqrt(v_hat) + eps)`.
//! * [`Mode::FipsoPlain`]: the social step alone.
//!
//! Every mode clamps the candidate to the bounds and resets the velocity to
//! the effective displacement.

mod adam;
mod gradient;
mod objective;
mod swarm;

pub use adam::{adam_update, AdamHyper, AdamMoments, AdamStep};
pub use gradient::{finite_diff_grad, swarm_influence_grad, swarm_influence_with};
pub use objective::{approx_ratio, loss, objective, QaoaObjective};
pub use swarm::{adam_fipso_optimize, minimize, minimize_with_observer, random_params, Particle};

use std::f64::consts::PI;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    #[default]
    AdamFd,
    AdamSwarm,
    FipsoPlain,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::AdamFd => "adam_fd",
            Mode::AdamSwarm => "adam_swarm",
            Mode::FipsoPlain => "fipso_plain",
        }
    }
}

/// Swarm hyperparameters. Deserialises from JSON with every field optional.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SwarmConfig {
    pub swarm_size: usize,
    pub max_iters: usize,
    pub w_max: f64,
    pub w_min: f64,
    /// Social coefficient.
    pub c: f64,
    /// Adam learning rate.
    pub eta: f64,
    pub adam_beta1: f64,
    pub adam_beta2: f64,
    pub epsilon: f64,
    /// Weight of the approximation-ratio penalty in the loss.
    pub lambda: f64,
    pub fd_step: f64,
    /// Per-dimension `[lo, hi]`. `None` means `[-pi, pi]` everywhere; a single
    /// pair is broadcast to every dimension.
    pub bounds: Option<Vec<[f64; 2]>>,
    pub mode: Mode,
    pub seed: u64,
}

impl Default for SwarmConfig {
    fn default() -> Self {
        Self {
            swarm_size: 20,
            max_iters: 100,
            w_max: 0.9,
            w_min: 0.4,
            c: 4.0,
            eta: 0.02,
            adam_beta1: 0.9,
            adam_beta2: 0.999,
            epsilon: 1e-8,
            lambda: 1.0,
            fd_step: 1e-3,
            bounds: None,
            mode: Mode::AdamFd,
            seed: 0,
        }
    }
}

impl SwarmConfig {
    pub fn from_json_str(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_json_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json_str(&text)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidArgument(msg));
        if self.swarm_size < 2 {
            return bad(format!("swarm_size must be >= 2, got {}", self.swarm_size));
        }
        if self.max_iters < 1 {
            return bad("max_iters must be >= 1".into());
        }
        if !(0.0 <= self.w_min && self.w_min <= self.w_max) {
            return bad(format!(
                "need 0 <= w_min <= w_max, got w_min = {}, w_max = {}",
                self.w_min, self.w_max
            ));
        }
        for (name, b) in [("adam_beta1", self.adam_beta1), ("adam_beta2", self.adam_beta2)] {
            if !(0.0 < b && b < 1.0) {
                return bad(format!("{name} must lie in (0, 1), got {b}"));
            }
        }
        if !(self.epsilon > 0.0) {
            return bad(format!("epsilon must be positive, got {}", self.epsilon));
        }
        if !(self.fd_step > 0.0) {
            return bad(format!("fd_step must be positive, got {}", self.fd_step));
        }
        if !self.c.is_finite() || !self.eta.is_finite() || !(self.lambda >= 0.0) {
            return bad("c and eta must be finite and lambda non-negative".into());
        }
        if let Some(bounds) = &self.bounds {
            if bounds.is_empty() {
                return bad("bounds must not be empty".into());
            }
            if let Some([lo, hi]) = bounds.iter().find(|[lo, hi]| !(lo < hi) || !lo.is_finite() || !hi.is_finite()) {
                return bad(format!("bounds need finite lo < hi, got [{lo}, {hi}]"));
            }
        }
        Ok(())
    }

    pub(crate) fn adam(&self) -> AdamHyper {
        AdamHyper {
            beta1: self.adam_beta1,
            beta2: self.adam_beta2,
            eta: self.eta,
            epsilon: self.epsilon,
        }
    }

    /// Bounds expanded to `dim` dimensions.
    pub fn resolve_bounds(&self, dim: usize) -> Result<Vec<(f64, f64)>> {
        match &self.bounds {
            None => Ok(vec![(-PI, PI); dim]),
            Some(b) if b.len() == 1 => Ok(vec![(b[0][0], b[0][1]); dim]),
            Some(b) if b.len() == dim => Ok(b.iter().map(|&[lo, hi]| (lo, hi)).collect()),
            Some(b) => Err(Error::DimensionMismatch {
                expected: dim,
                found: b.len(),
            }),
        }
    }
}

/// Outcome of one swarm run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizeResult {
    pub best_position: Vec<f64>,
    pub best_loss: f64,
    /// Expected cut at `best_position`; `None` for non-QAOA objectives.
    pub best_expectation: Option<f64>,
    /// Global-best loss after each iteration.
    pub trace: Vec<f64>,
    /// Total objective evaluations, finite-difference probes included.
    pub evaluations: usize,
}
