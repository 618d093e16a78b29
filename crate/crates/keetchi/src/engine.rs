//! The per-node engine: one instance per node, alive for the node's
//! lifetime. Every call takes the current time and returns a [`KAction`]
//! listing what the caller must do; the engine itself performs no I/O and
//! never reads a clock.
//!
//! Incoming data and feedback may come from the local applications (`App`)
//! or from the link layer (`Link`). Forwarding of data is contact-driven
//! only: items leave the cache when a neighbor list arrives, never as an
//! immediate reaction to a data arrival.

use std::collections::HashSet;
use std::mem;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::learning::{LearningParams, QEntry};
use crate::model::{
    next_msg_id, DataMessage, DataName, FeedbackMessage, LayerSource, Message, MsgId, NodeId,
    Seconds,
};
use crate::store::{ContactKind, InterestRecord, NeighborRecord, NodeStore, StoreParams};

fn default_k_targeted() -> usize {
    8
}
fn default_k_explore() -> usize {
    4
}
fn default_feedback_hop_limit() -> u32 {
    2
}

/// Engine-level fan-out bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EngineParams {
    /// Max interest-targeted sends per neighbor per contact event.
    #[serde(default = "default_k_targeted")]
    pub k_targeted: usize,
    /// Max exploratory sends per neighbor per contact event.
    #[serde(default = "default_k_explore")]
    pub k_explore: usize,
    /// Hop limit stamped on locally originated feedback.
    #[serde(default = "default_feedback_hop_limit")]
    pub feedback_hop_limit: u32,
}

impl Default for EngineParams {
    fn default() -> Self {
        EngineParams {
            k_targeted: default_k_targeted(),
            k_explore: default_k_explore(),
            feedback_hop_limit: default_feedback_hop_limit(),
        }
    }
}

impl EngineParams {
    pub fn validate(&self) -> Result<(), Error> {
        if self.feedback_hop_limit == 0 {
            return Err(Error::invalid_param("feedback_hop_limit", "must be at least 1"));
        }
        Ok(())
    }
}

/// Full parameter set of one node.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Params {
    pub learning: LearningParams,
    pub store: StoreParams,
    pub engine: EngineParams,
}

impl Params {
    pub fn validate(&self) -> Result<(), Error> {
        self.learning.validate()?;
        self.store.validate()?;
        self.engine.validate()
    }
}

/// Destination of a link-layer emission.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LinkDest {
    Broadcast,
    Unicast(NodeId),
}

/// Which layer an emission goes to. App emissions carry no link destination.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmissionTarget {
    App,
    Link(LinkDest),
}

/// One message the caller must hand to a layer.
#[derive(Debug, Clone, PartialEq)]
pub struct Emission {
    pub to: EmissionTarget,
    pub msg: Message,
}

/// Statistic event kinds wired back to the harness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StatKind {
    DataSent,
    DataRecvNew,
    DataRecvDup,
    FeedbackSent,
    FeedbackRecv,
    CacheEviction,
    AppDelivery,
    ContactNew,
}

impl StatKind {
    pub fn as_str(self) -> &'static str {
        match self {
            StatKind::DataSent => "DATA_SENT",
            StatKind::DataRecvNew => "DATA_RECV_NEW",
            StatKind::DataRecvDup => "DATA_RECV_DUP",
            StatKind::FeedbackSent => "FEEDBACK_SENT",
            StatKind::FeedbackRecv => "FEEDBACK_RECV",
            StatKind::CacheEviction => "CACHE_EVICTION",
            StatKind::AppDelivery => "APP_DELIVERY",
            StatKind::ContactNew => "CONTACT_NEW",
        }
    }
}

impl std::fmt::Display for StatKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One statistic event. `at` echoes the call's current time.
#[derive(Debug, Clone, PartialEq)]
pub struct StatEvent {
    pub kind: StatKind,
    pub name: Option<DataName>,
    pub peer: Option<NodeId>,
    pub at: Seconds,
}

/// Instruction list returned from every processing call: emissions the
/// caller executes in order, plus the statistic events the call produced.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct KAction {
    pub emissions: Vec<Emission>,
    pub stat_events: Vec<StatEvent>,
}

impl KAction {
    pub fn is_empty(&self) -> bool {
        self.emissions.is_empty() && self.stat_events.is_empty()
    }
}

/// Read-only view of an engine's stores, goodness evaluated at the query
/// time. All sections sorted for stable output.
#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub cache: Vec<(DataName, f64)>,
    pub neighbors: Vec<NeighborRecord>,
    pub q_table: Vec<(DataName, QEntry)>,
}

/// Per-node protocol engine. Strictly single-threaded access; distinct
/// engines are independent.
#[derive(Debug)]
pub struct Engine {
    self_id: NodeId,
    params: Params,
    store: NodeStore,
    seen_feedback: HashSet<MsgId>,
    delivered: HashSet<DataName>,
    msg_counter: u64,
    last_now: Option<Seconds>,
    stats: Vec<StatEvent>,
}

impl Engine {
    pub fn new(self_id: NodeId, params: Params) -> Result<Self, Error> {
        params.validate()?;
        Ok(Engine {
            self_id,
            params,
            store: NodeStore::new(params.store)?,
            seen_feedback: HashSet::new(),
            delivered: HashSet::new(),
            msg_counter: 0,
            last_now: None,
            stats: Vec::new(),
        })
    }

    pub fn self_id(&self) -> NodeId {
        self.self_id
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn store(&self) -> &NodeStore {
        &self.store
    }

    /// Time must never run backwards; simulators guarantee monotone clocks
    /// and silently tolerating a violation would hide harness bugs.
    fn check_clock(&mut self, now: Seconds) -> Result<(), Error> {
        if let Some(last) = self.last_now {
            if now < last {
                return Err(Error::ClockSkew {
                    now,
                    reference: last,
                });
            }
        }
        self.last_now = Some(now);
        Ok(())
    }

    fn fresh_msg_id(&mut self) -> MsgId {
        let id = next_msg_id(self.self_id, self.msg_counter);
        self.msg_counter += 1;
        id
    }

    fn stat(
        &mut self,
        action: &mut KAction,
        kind: StatKind,
        name: Option<DataName>,
        peer: Option<NodeId>,
        at: Seconds,
    ) {
        let ev = StatEvent {
            kind,
            name,
            peer,
            at,
        };
        self.stats.push(ev.clone());
        action.stat_events.push(ev);
    }

    /// Handle a data message from the applications or the link layer.
    ///
    /// App-originated data is stamped (origin, creation time, fresh id),
    /// cached and broadcast once. Link-arrived data with an unknown name is
    /// delivered to the applications first and then offered to the cache;
    /// a known name is a duplicate and produces no emission. Expired data
    /// is dropped silently.
    pub fn process_data_msg(
        &mut self,
        from: LayerSource,
        msg: DataMessage,
        now: Seconds,
    ) -> Result<KAction, Error> {
        self.check_clock(now)?;
        let mut action = KAction::default();
        match from {
            LayerSource::App => {
                let mut m = msg;
                m.origin = self.self_id;
                m.created_at = now;
                m.hop_count = 0;
                m.msg_id = self.fresh_msg_id();
                m.validate()?;
                let evicted = self.store.cache_put(m.clone(), now, &self.params.learning)?;
                for name in evicted {
                    self.stat(&mut action, StatKind::CacheEviction, Some(name), None, now);
                }
                let name = m.name.clone();
                action.emissions.push(Emission {
                    to: EmissionTarget::Link(LinkDest::Broadcast),
                    msg: Message::Data(m),
                });
                self.stat(&mut action, StatKind::DataSent, Some(name), None, now);
            }
            LayerSource::Link => {
                msg.validate()?;
                if msg.is_expired(now) {
                    return Ok(action);
                }
                if self.store.contains(&msg.name) {
                    self.stat(
                        &mut action,
                        StatKind::DataRecvDup,
                        Some(msg.name.clone()),
                        Some(msg.origin),
                        now,
                    );
                    return Ok(action);
                }
                let mut m = msg;
                m.hop_count += 1;
                self.stat(
                    &mut action,
                    StatKind::DataRecvNew,
                    Some(m.name.clone()),
                    Some(m.origin),
                    now,
                );
                // the app layer sees a first-time arrival even if caching
                // later rejects the item
                if self.delivered.insert(m.name.clone()) {
                    action.emissions.push(Emission {
                        to: EmissionTarget::App,
                        msg: Message::Data(m.clone()),
                    });
                    self.stat(
                        &mut action,
                        StatKind::AppDelivery,
                        Some(m.name.clone()),
                        Some(m.origin),
                        now,
                    );
                }
                let evicted = self.store.cache_put(m, now, &self.params.learning)?;
                for name in evicted {
                    self.stat(&mut action, StatKind::CacheEviction, Some(name), None, now);
                }
            }
        }
        Ok(action)
    }

    /// Handle a feedback message from the applications or the link layer.
    ///
    /// Every non-duplicate feedback rewards the q_table entries of all
    /// cached names under its target plus the prefix-level entry for the
    /// target itself. App feedback is stamped and broadcast immediately;
    /// link feedback registers the origin's interest and is re-broadcast
    /// while the hop budget lasts. Duplicates (by message id) change
    /// nothing beyond a receive stat.
    pub fn process_feedback_msg(
        &mut self,
        from: LayerSource,
        msg: FeedbackMessage,
        now: Seconds,
    ) -> Result<KAction, Error> {
        self.check_clock(now)?;
        let mut action = KAction::default();
        match from {
            LayerSource::App => {
                let mut m = msg;
                m.origin = self.self_id;
                m.created_at = now;
                m.hop_count = 0;
                m.hop_limit = self.params.engine.feedback_hop_limit;
                m.msg_id = self.fresh_msg_id();
                m.validate()?;
                self.seen_feedback.insert(m.msg_id);
                self.store
                    .apply_feedback(&m.target, m.valence, now, &self.params.learning)?;
                self.stat(
                    &mut action,
                    StatKind::FeedbackRecv,
                    Some(m.target.clone()),
                    None,
                    now,
                );
                let target = m.target.clone();
                action.emissions.push(Emission {
                    to: EmissionTarget::Link(LinkDest::Broadcast),
                    msg: Message::Feedback(m),
                });
                self.stat(&mut action, StatKind::FeedbackSent, Some(target), None, now);
            }
            LayerSource::Link => {
                msg.validate()?;
                self.stat(
                    &mut action,
                    StatKind::FeedbackRecv,
                    Some(msg.target.clone()),
                    Some(msg.origin),
                    now,
                );
                if !self.seen_feedback.insert(msg.msg_id) {
                    return Ok(action);
                }
                self.store
                    .apply_feedback(&msg.target, msg.valence, now, &self.params.learning)?;
                self.store.register_interest(InterestRecord {
                    neighbor: msg.origin,
                    target: msg.target.clone(),
                    valence: msg.valence,
                    registered_at: now,
                    expires_at: now + self.params.store.interest_ttl,
                });
                if msg.hop_count + 1 < msg.hop_limit {
                    let mut fwd = msg;
                    fwd.hop_count += 1;
                    let target = fwd.target.clone();
                    action.emissions.push(Emission {
                        to: EmissionTarget::Link(LinkDest::Broadcast),
                        msg: Message::Feedback(fwd),
                    });
                    self.stat(&mut action, StatKind::FeedbackSent, Some(target), None, now);
                }
            }
        }
        Ok(action)
    }

    /// React to the current neighbor list (beacon-driven).
    ///
    /// Runs expiry first, then per neighbor in the given order: contact
    /// bookkeeping, a targeted phase (items the neighbor expressed positive
    /// interest in), and an exploratory phase (best remaining candidates).
    /// Items under a negative interest of a neighbor are never sent to that
    /// neighbor in either phase.
    pub fn process_neighbor_list(
        &mut self,
        neighbors: &[NodeId],
        now: Seconds,
    ) -> Result<KAction, Error> {
        self.check_clock(now)?;
        let mut action = KAction::default();
        self.store.expire_state(now);
        for &neighbor in neighbors {
            if neighbor == self.self_id {
                debug_assert!(false, "own id in neighbor list");
                continue;
            }
            let contact = self.store.touch_neighbor(neighbor, now);
            if contact != ContactKind::Ongoing {
                self.stat(&mut action, StatKind::ContactNew, None, Some(neighbor), now);
            }

            // targeted phase: positive-interest items regardless of g_min
            let learning = self.params.learning;
            let t_resend = self.params.store.t_resend;
            let mut targeted: Vec<(f64, &crate::store::CacheEntry)> = self
                .store
                .cache_entries()
                .filter(|e| !e.msg.is_expired(now))
                .filter(|e| {
                    e.last_sent
                        .get(&neighbor)
                        .is_none_or(|&sent| now - sent >= t_resend)
                })
                .filter(|e| {
                    self.store.interest_of(neighbor, &e.msg.name, now)
                        == Some(crate::model::Valence::Positive)
                })
                .map(|e| (self.store.goodness_of(&e.msg, now, &learning), e))
                .collect();
            targeted.sort_by(|(ga, a), (gb, b)| NodeStore::propagation_order(*ga, a, *gb, b));
            targeted.truncate(self.params.engine.k_targeted);
            let targeted: Vec<DataMessage> =
                targeted.into_iter().map(|(_, e)| e.msg.clone()).collect();

            let mut sent_now: HashSet<DataName> = HashSet::new();
            for m in targeted {
                sent_now.insert(m.name.clone());
                self.emit_data(&mut action, neighbor, m, now);
            }

            // exploratory phase: top candidates not already sent and not
            // under a negative interest of this neighbor
            let explore: Vec<DataMessage> = self
                .store
                .top_k_candidates(usize::MAX, neighbor, now, &learning)
                .into_iter()
                .filter(|e| !sent_now.contains(&e.msg.name))
                .filter(|e| {
                    self.store.interest_of(neighbor, &e.msg.name, now)
                        != Some(crate::model::Valence::Negative)
                })
                .take(self.params.engine.k_explore)
                .map(|e| e.msg.clone())
                .collect();
            for m in explore {
                self.emit_data(&mut action, neighbor, m, now);
            }
        }
        Ok(action)
    }

    fn emit_data(&mut self, action: &mut KAction, neighbor: NodeId, msg: DataMessage, now: Seconds) {
        self.store.mark_sent(&msg.name, neighbor, now);
        let name = msg.name.clone();
        action.emissions.push(Emission {
            to: EmissionTarget::Link(LinkDest::Unicast(neighbor)),
            msg: Message::Data(msg),
        });
        self.stat(action, StatKind::DataSent, Some(name), Some(neighbor), now);
    }

    /// Side-effect-free view of the stores, goodness evaluated at `now`.
    pub fn status_snapshot(&self, now: Seconds) -> Snapshot {
        let mut cache: Vec<(DataName, f64)> = self
            .store
            .cache_entries()
            .map(|e| {
                (
                    e.msg.name.clone(),
                    self.store.goodness_of(&e.msg, now, &self.params.learning),
                )
            })
            .collect();
        cache.sort_by(|(a, _), (b, _)| a.cmp(b));
        let mut neighbors: Vec<NeighborRecord> = self.store.neighbor_records().cloned().collect();
        neighbors.sort_by_key(|r| r.node);
        let mut q_table: Vec<(DataName, QEntry)> = self
            .store
            .q_entries()
            .map(|(name, entry)| (name.clone(), *entry))
            .collect();
        q_table.sort_by(|(a, _), (b, _)| a.cmp(b));
        Snapshot {
            cache,
            neighbors,
            q_table,
        }
    }

    /// Return and clear the statistic buffer. Events also ride inside each
    /// returned `KAction`; the buffer holds the same entries in call order.
    pub fn drain_stats(&mut self) -> Vec<StatEvent> {
        mem::take(&mut self.stats)
    }
}
