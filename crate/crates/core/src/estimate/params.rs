use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::repr::{Encoding, DEFAULT_EXHAUSTIVE_THRESHOLD};

fn default_epsilon() -> f64 {
    1e-4
}
fn default_alpha() -> f64 {
    1.149
}
fn default_beta() -> f64 {
    9.2
}
fn default_b_r() -> u64 {
    7
}
fn default_s_sign() -> u64 {
    1
}
fn default_threshold() -> u64 {
    DEFAULT_EXHAUSTIVE_THRESHOLD
}

/// Cost-model parameters. Every field has a default, so `{}` is a valid config.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CostParams {
    /// Total diamond-norm error budget.
    #[serde(default = "default_epsilon")]
    pub epsilon: f64,
    #[serde(default = "default_alpha")]
    pub alpha_dir: f64,
    #[serde(default = "default_beta")]
    pub beta_dir: f64,
    /// Phase-gradient register width.
    #[serde(default = "default_b_r")]
    pub b_r: u64,
    /// Provisioned clean-ancilla bank for multi-controlled gates.
    #[serde(default)]
    pub a_mcx_prov: u64,
    #[serde(default = "default_s_sign")]
    pub s_sign: u64,
    #[serde(default)]
    pub encoding: Encoding,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k1: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k2: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k1_sel: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k2_sel: Option<u64>,
    /// PREP precision; falls back to `epsilon`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon_prep: Option<f64>,
    /// Partition count above which compressed `n_mu` uses the balanced shape.
    #[serde(default = "default_threshold")]
    pub exhaustive_threshold: u64,
}

impl Default for CostParams {
    fn default() -> Self {
        CostParams {
            epsilon: default_epsilon(),
            alpha_dir: default_alpha(),
            beta_dir: default_beta(),
            b_r: default_b_r(),
            a_mcx_prov: 0,
            s_sign: default_s_sign(),
            encoding: Encoding::default(),
            k1: None,
            k2: None,
            k1_sel: None,
            k2_sel: None,
            epsilon_prep: None,
            exhaustive_threshold: default_threshold(),
        }
    }
}

impl CostParams {
    pub fn from_json(s: &str) -> Result<Self> {
        let p: CostParams = serde_json::from_str(s).map_err(|e| Error::Validation(format!("config: {e}")))?;
        p.validate()?;
        Ok(p)
    }

    pub fn with_epsilon(mut self, epsilon: f64) -> Self {
        self.epsilon = epsilon;
        self
    }

    pub fn with_encoding(mut self, encoding: Encoding) -> Self {
        self.encoding = encoding;
        self
    }

    pub fn epsilon_prep(&self) -> f64 {
        self.epsilon_prep.unwrap_or(self.epsilon)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0 && self.epsilon < 0.5) {
            return Err(Error::Validation(format!("epsilon must lie in (0, 1/2), got {}", self.epsilon)));
        }
        if let Some(e) = self.epsilon_prep {
            if !(e > 0.0 && e < 1.0) {
                return Err(Error::Validation(format!("epsilon_prep must lie in (0, 1), got {e}")));
            }
        }
        if self.b_r < 1 {
            return Err(Error::Validation("b_r must be at least 1".into()));
        }
        if !(self.alpha_dir.is_finite() && self.beta_dir.is_finite() && self.alpha_dir > 0.0) {
            return Err(Error::Validation("synthesis constants must be finite with alpha_dir > 0".into()));
        }
        for (name, k) in [("k1", self.k1), ("k2", self.k2), ("k1_sel", self.k1_sel), ("k2_sel", self.k2_sel)] {
            if k == Some(0) {
                return Err(Error::Validation(format!("{name} must be at least 1")));
            }
        }
        Ok(())
    }
}
