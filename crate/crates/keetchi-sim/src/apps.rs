//! Application traffic models: generators publish named items on a timer,
//! consumers evaluate deliveries against their preferences and answer with
//! feedback. A node with both configs is a hybrid.

use keetchi::model::{next_msg_id, DataMessage, DataName, NodeId, Seconds, Valence};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp};
use serde::Deserialize;

use crate::error::SimError;

fn default_payload_size() -> u64 {
    1024
}
fn default_validity() -> Seconds {
    3600.0
}
fn default_p_feedback() -> f64 {
    1.0
}

/// Periodic (or exponentially jittered) publisher of items under a prefix.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorConfig {
    pub name_prefix: DataName,
    /// Seconds between publications; the mean interval when `jitter` is on.
    pub period: Seconds,
    #[serde(default)]
    pub jitter: bool,
    #[serde(default = "default_payload_size")]
    pub payload_size: u64,
    #[serde(default = "default_validity")]
    pub validity: Seconds,
    #[serde(default)]
    pub start: Seconds,
    /// Publication window end; defaults to the scenario duration.
    #[serde(default)]
    pub stop: Option<Seconds>,
}

impl GeneratorConfig {
    pub fn stop_time(&self) -> Seconds {
        self.stop.unwrap_or(f64::INFINITY)
    }

    pub fn validate(&self, at: &str) -> Result<(), SimError> {
        if !(self.period > 0.0) {
            return Err(SimError::config(format!("{at}.period"), "must be positive"));
        }
        if !(self.validity > 0.0) {
            return Err(SimError::config(format!("{at}.validity"), "must be positive"));
        }
        if self.start < 0.0 {
            return Err(SimError::config(format!("{at}.start"), "must not be negative"));
        }
        if self.start >= self.stop_time() {
            return Err(SimError::config(
                format!("{at}.start"),
                "must be before stop",
            ));
        }
        Ok(())
    }
}

/// Runtime state of one generator: the gapless item sequence counter.
#[derive(Debug)]
pub struct GeneratorState {
    cfg: GeneratorConfig,
    next_seq: u64,
}

impl GeneratorState {
    pub fn new(cfg: GeneratorConfig) -> Self {
        GeneratorState { cfg, next_seq: 0 }
    }

    pub fn start_time(&self) -> Seconds {
        self.cfg.start
    }

    /// Fire the publication timer. Returns the message to publish (the
    /// engine stamps id, origin and creation time) and the next timer time,
    /// both absent once `now` reaches the stop boundary.
    pub fn on_timer(
        &mut self,
        now: Seconds,
        rng: &mut ChaCha8Rng,
    ) -> (Option<DataMessage>, Option<Seconds>) {
        if now >= self.cfg.stop_time() {
            return (None, None);
        }
        let name = self
            .cfg
            .name_prefix
            .child(&format!("item-{}", self.next_seq))
            .expect("item segment is well-formed");
        self.next_seq += 1;
        let msg = DataMessage {
            msg_id: next_msg_id(NodeId(u64::MAX), u64::MAX),
            name,
            origin: NodeId(u64::MAX),
            created_at: now,
            payload_size: self.cfg.payload_size,
            hop_count: 0,
            validity: self.cfg.validity,
        };
        let next = if self.cfg.jitter {
            let exp = Exp::new(1.0 / self.cfg.period).expect("period validated");
            now + exp.sample(rng)
        } else {
            now + self.cfg.period
        };
        let next = (next < self.cfg.stop_time()).then_some(next);
        (Some(msg), next)
    }
}

/// One preference: a name prefix and how deliveries under it are judged.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Preference {
    pub prefix: DataName,
    pub valence: Valence,
}

/// Feedback behavior of a consuming application.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConsumerConfig {
    #[serde(default)]
    pub preferences: Vec<Preference>,
    /// Probability of feedback on a preference-matching delivery.
    #[serde(default = "default_p_feedback")]
    pub p_feedback: f64,
    /// Probability of negative feedback on a non-matching delivery.
    #[serde(default)]
    pub p_feedback_nonmatch: f64,
    /// When set, all preferences are announced as unsolicited feedback at
    /// this time, soliciting matching data before any delivery happened.
    #[serde(default)]
    pub announce_at: Option<Seconds>,
}

impl ConsumerConfig {
    pub fn validate(&self, at: &str) -> Result<(), SimError> {
        if !(0.0..=1.0).contains(&self.p_feedback) {
            return Err(SimError::config(
                format!("{at}.p_feedback"),
                "must be in [0, 1]",
            ));
        }
        if !(0.0..=1.0).contains(&self.p_feedback_nonmatch) {
            return Err(SimError::config(
                format!("{at}.p_feedback_nonmatch"),
                "must be in [0, 1]",
            ));
        }
        if let Some(t) = self.announce_at {
            if t < 0.0 {
                return Err(SimError::config(
                    format!("{at}.announce_at"),
                    "must not be negative",
                ));
            }
        }
        Ok(())
    }
}

/// Runtime view of a consumer.
#[derive(Debug)]
pub struct ConsumerState {
    cfg: ConsumerConfig,
}

impl ConsumerState {
    pub fn new(cfg: ConsumerConfig) -> Self {
        ConsumerState { cfg }
    }

    pub fn announce_at(&self) -> Option<Seconds> {
        self.cfg.announce_at
    }

    /// The most specific preference covering `name`.
    pub fn matched_preference(&self, name: &DataName) -> Option<&Preference> {
        self.cfg
            .preferences
            .iter()
            .filter(|p| p.prefix.is_prefix_of(name))
            .max_by_key(|p| p.prefix.segments().len())
    }

    /// Whether a delivery of `name` counts as an interested delivery.
    pub fn is_interested(&self, name: &DataName) -> bool {
        self.matched_preference(name)
            .is_some_and(|p| p.valence == Valence::Positive)
    }

    /// Decide the feedback for a delivery: the matched preference's valence
    /// on its prefix, or negative feedback on the concrete name for
    /// unwanted data. Exactly one probability draw per delivery.
    pub fn on_delivery(
        &self,
        msg: &DataMessage,
        rng: &mut ChaCha8Rng,
    ) -> Option<(DataName, Valence)> {
        let roll: f64 = rng.random();
        match self.matched_preference(&msg.name) {
            Some(pref) => (roll < self.cfg.p_feedback)
                .then(|| (pref.prefix.clone(), pref.valence)),
            None => (roll < self.cfg.p_feedback_nonmatch)
                .then(|| (msg.name.clone(), Valence::Negative)),
        }
    }

    /// The preference list, as announced by an `announce_at` timer.
    pub fn announcements(&self) -> Vec<(DataName, Valence)> {
        self.cfg
            .preferences
            .iter()
            .map(|p| (p.prefix.clone(), p.valence))
            .collect()
    }
}
