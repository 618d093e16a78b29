//! Core message and identity types shared by every other module.
//!
//! Data is identified by hierarchical names ("/uni/recycler/chair-1"); a
//! feedback target may be a full name or any prefix of one, so a single
//! feedback can cover items that do not exist yet.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// Scenario clock time. The engine never reads a system clock; every call
/// receives the current time as a parameter.
pub type Seconds = f64;

/// Link-layer identity of a node, unique and stable for a scenario's lifetime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(pub u64);

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Globally unique message identifier: originating node plus a per-node
/// monotone counter. Uniqueness across nodes holds by construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MsgId {
    pub node: NodeId,
    pub seq: u64,
}

impl fmt::Display for MsgId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.node, self.seq)
    }
}

/// Build the message id for `counter`-th message of `node`.
pub fn next_msg_id(node: NodeId, counter: u64) -> MsgId {
    MsgId { node, seq: counter }
}

/// Hierarchical content name with canonical text form `/seg1/seg2/...`.
///
/// Segments are non-empty and contain no `/`. Ordering follows the canonical
/// text form so sorted output matches what appears in config and stats files.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DataName {
    segments: Vec<String>,
}

impl DataName {
    pub fn new(segments: Vec<String>) -> Result<Self, Error> {
        if segments.is_empty() {
            return Err(Error::MalformedName("no segments".into()));
        }
        for seg in &segments {
            if seg.is_empty() {
                return Err(Error::MalformedName("empty segment".into()));
            }
            if seg.contains('/') {
                return Err(Error::MalformedName(format!("segment `{seg}` contains '/'")));
            }
        }
        Ok(DataName { segments })
    }

    /// Parse the canonical text form: leading `/`, non-empty segments.
    pub fn parse(text: &str) -> Result<Self, Error> {
        let Some(rest) = text.strip_prefix('/') else {
            return Err(Error::MalformedName(format!("`{text}` missing leading '/'")));
        };
        if rest.is_empty() {
            return Err(Error::MalformedName("`/` has no segments".into()));
        }
        let segments: Vec<String> = rest.split('/').map(str::to_owned).collect();
        if segments.iter().any(String::is_empty) {
            return Err(Error::MalformedName(format!("`{text}` has an empty segment")));
        }
        DataName::new(segments)
    }

    pub fn segments(&self) -> &[String] {
        &self.segments
    }

    /// Append one segment, e.g. for per-item names under a prefix.
    pub fn child(&self, segment: &str) -> Result<Self, Error> {
        let mut segments = self.segments.clone();
        segments.push(segment.to_owned());
        DataName::new(segments)
    }

    /// True iff `self`'s segment sequence is a prefix of `other`'s
    /// (equality counts as a prefix).
    pub fn is_prefix_of(&self, other: &DataName) -> bool {
        self.segments.len() <= other.segments.len()
            && self.segments.iter().zip(&other.segments).all(|(a, b)| a == b)
    }

    fn chars(&self) -> impl Iterator<Item = char> + '_ {
        self.segments
            .iter()
            .flat_map(|s| std::iter::once('/').chain(s.chars()))
    }
}

impl Ord for DataName {
    fn cmp(&self, other: &Self) -> Ordering {
        self.chars().cmp(other.chars())
    }
}

impl PartialOrd for DataName {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for DataName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for seg in &self.segments {
            write!(f, "/{seg}")?;
        }
        Ok(())
    }
}

impl FromStr for DataName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        DataName::parse(s)
    }
}

impl Serialize for DataName {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for DataName {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        DataName::parse(&text).map_err(serde::de::Error::custom)
    }
}

/// Whether a feedback reinforces or inhibits dissemination of its target.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Valence {
    Positive,
    Negative,
}

impl Valence {
    /// Reward signal fed to the learning model: +1 or -1.
    pub fn reward(self) -> f64 {
        match self {
            Valence::Positive => 1.0,
            Valence::Negative => -1.0,
        }
    }
}

impl fmt::Display for Valence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valence::Positive => write!(f, "positive"),
            Valence::Negative => write!(f, "negative"),
        }
    }
}

/// Which layer handed a message to the engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LayerSource {
    App,
    Link,
}

/// Named content unit propagated opportunistically, without a prior request.
/// Payload bytes are not carried; only their size is.
#[derive(Debug, Clone, PartialEq)]
pub struct DataMessage {
    pub msg_id: MsgId,
    pub name: DataName,
    pub origin: NodeId,
    pub created_at: Seconds,
    pub payload_size: u64,
    pub hop_count: u32,
    /// Lifetime in seconds counted from `created_at`.
    pub validity: Seconds,
}

impl DataMessage {
    pub fn expires_at(&self) -> Seconds {
        self.created_at + self.validity
    }

    pub fn is_expired(&self, now: Seconds) -> bool {
        now >= self.expires_at()
    }

    pub fn validate(&self) -> Result<(), Error> {
        if !(self.validity > 0.0) {
            return Err(Error::MalformedMessage(format!(
                "data `{}` has non-positive validity {}",
                self.name, self.validity
            )));
        }
        Ok(())
    }
}

/// Evaluation of named data (exact name or prefix); the reward signal that
/// reinforces or inhibits dissemination. May precede the data it targets.
#[derive(Debug, Clone, PartialEq)]
pub struct FeedbackMessage {
    pub msg_id: MsgId,
    pub target: DataName,
    pub valence: Valence,
    pub origin: NodeId,
    pub created_at: Seconds,
    pub hop_count: u32,
    pub hop_limit: u32,
}

impl FeedbackMessage {
    pub fn reward(&self) -> f64 {
        self.valence.reward()
    }

    pub fn validate(&self) -> Result<(), Error> {
        if self.hop_limit == 0 {
            return Err(Error::MalformedMessage(format!(
                "feedback on `{}` has hop_limit 0",
                self.target
            )));
        }
        if self.hop_count > self.hop_limit {
            return Err(Error::MalformedMessage(format!(
                "feedback on `{}` has hop_count {} above hop_limit {}",
                self.target, self.hop_count, self.hop_limit
            )));
        }
        Ok(())
    }
}

/// Either message kind, as carried by emissions and link transmissions.
#[derive(Debug, Clone, PartialEq)]
pub enum Message {
    Data(DataMessage),
    Feedback(FeedbackMessage),
}

impl Message {
    pub fn msg_id(&self) -> MsgId {
        match self {
            Message::Data(m) => m.msg_id,
            Message::Feedback(m) => m.msg_id,
        }
    }

    pub fn payload_size(&self) -> u64 {
        match self {
            Message::Data(m) => m.payload_size,
            Message::Feedback(_) => 0,
        }
    }
}
