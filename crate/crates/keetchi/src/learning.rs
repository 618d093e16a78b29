//! Feedback-driven goodness model.
//!
//! Each named item carries a Q-value learned from feedback rewards plus
//! popularity counters. The composite goodness score
//!
//! ```text
//! g = w_u * (q + 1) / 2  +  w_p * popularity  +  w_f * freshness
//! ```
//!
//! ranks cache entries for retention and propagation. The Q update is the
//! stateless exponential-average form `q' = q + alpha * (reward - q)`: the
//! reward is attached to a name, not to a state transition, so a per-name
//! bandit estimate is the whole model.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::model::Seconds;

/// Learned state for one name. `q` stays in [-1, +1] by convexity of the
/// update; counters only grow.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QEntry {
    pub q: f64,
    pub n_pos: u64,
    pub n_neg: u64,
    pub last_update: Seconds,
}

impl QEntry {
    /// Entry for a name that has never received feedback.
    pub fn fresh(q0: f64) -> Self {
        QEntry {
            q: q0,
            n_pos: 0,
            n_neg: 0,
            last_update: 0.0,
        }
    }
}

fn default_alpha() -> f64 {
    0.5
}
fn default_q0() -> f64 {
    0.0
}
fn default_tau() -> Seconds {
    900.0
}
fn default_w_usefulness() -> f64 {
    0.5
}
fn default_w_popularity() -> f64 {
    0.2
}
fn default_w_freshness() -> f64 {
    0.3
}
fn default_g_min() -> f64 {
    0.05
}

/// Tunables of the goodness model. All fields are config-overridable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LearningParams {
    /// Learning rate in (0, 1].
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    /// Initial Q for names without feedback, in [-1, +1].
    #[serde(default = "default_q0")]
    pub q0: f64,
    /// Freshness half-life in seconds.
    #[serde(default = "default_tau")]
    pub tau: Seconds,
    /// Weight of the usefulness (Q) component.
    #[serde(default = "default_w_usefulness")]
    pub w_usefulness: f64,
    /// Weight of the popularity component.
    #[serde(default = "default_w_popularity")]
    pub w_popularity: f64,
    /// Weight of the freshness component.
    #[serde(default = "default_w_freshness")]
    pub w_freshness: f64,
    /// Goodness threshold below which an item is not offered to neighbors.
    #[serde(default = "default_g_min")]
    pub g_min: f64,
}

impl Default for LearningParams {
    fn default() -> Self {
        LearningParams {
            alpha: default_alpha(),
            q0: default_q0(),
            tau: default_tau(),
            w_usefulness: default_w_usefulness(),
            w_popularity: default_w_popularity(),
            w_freshness: default_w_freshness(),
            g_min: default_g_min(),
        }
    }
}

impl LearningParams {
    pub fn validate(&self) -> Result<(), Error> {
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return Err(Error::invalid_param("alpha", format!("{} not in (0, 1]", self.alpha)));
        }
        if !(-1.0..=1.0).contains(&self.q0) {
            return Err(Error::invalid_param("q0", format!("{} not in [-1, 1]", self.q0)));
        }
        if !(self.tau > 0.0) {
            return Err(Error::invalid_param("tau", format!("{} not positive", self.tau)));
        }
        for (name, w) in [
            ("w_usefulness", self.w_usefulness),
            ("w_popularity", self.w_popularity),
            ("w_freshness", self.w_freshness),
        ] {
            if !(0.0..=1.0).contains(&w) {
                return Err(Error::InvalidParam {
                    name: match name {
                        "w_usefulness" => "w_usefulness",
                        "w_popularity" => "w_popularity",
                        _ => "w_freshness",
                    },
                    reason: format!("{w} not in [0, 1]"),
                });
            }
        }
        let sum = self.w_usefulness + self.w_popularity + self.w_freshness;
        if (sum - 1.0).abs() > 1e-9 {
            return Err(Error::invalid_param(
                "w_usefulness",
                format!("weights sum to {sum}, expected 1"),
            ));
        }
        if !(0.0..1.0).contains(&self.g_min) {
            return Err(Error::invalid_param("g_min", format!("{} not in [0, 1)", self.g_min)));
        }
        Ok(())
    }
}

/// One Q update step: `q + alpha * (reward - q)`.
///
/// Convex combination of `q` and `reward`, so the result never leaves
/// `[min(q, reward), max(q, reward)]`.
pub fn q_update(q: f64, reward: f64, alpha: f64) -> Result<f64, Error> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::invalid_param("alpha", format!("{alpha} not in (0, 1]")));
    }
    Ok(q + alpha * (reward - q))
}

/// Exponential decay with half-life `tau`: `2^(-(now - created_at) / tau)`.
/// Value is 1 at age zero and halves every `tau` seconds.
pub fn freshness(created_at: Seconds, now: Seconds, tau: Seconds) -> Result<f64, Error> {
    if !(tau > 0.0) {
        return Err(Error::invalid_param("tau", format!("{tau} not positive")));
    }
    if now < created_at {
        return Err(Error::ClockSkew {
            now,
            reference: created_at,
        });
    }
    Ok(2.0_f64.powf(-(now - created_at) / tau))
}

/// Smoothed positive-feedback ratio `n_pos / (n_pos + n_neg + 1)`.
/// Zero without feedback, approaching 1 as positives accumulate.
pub fn popularity(n_pos: u64, n_neg: u64) -> f64 {
    n_pos as f64 / (n_pos + n_neg + 1) as f64
}

/// Map q in [-1, +1] onto [0, 1].
pub fn usefulness(q: f64) -> f64 {
    (q + 1.0) / 2.0
}

/// Composite retention/propagation score in [0, 1].
pub fn goodness(
    entry: &QEntry,
    created_at: Seconds,
    now: Seconds,
    params: &LearningParams,
) -> Result<f64, Error> {
    Ok(params.w_usefulness * usefulness(entry.q)
        + params.w_popularity * popularity(entry.n_pos, entry.n_neg)
        + params.w_freshness * freshness(created_at, now, params.tau)?)
}
