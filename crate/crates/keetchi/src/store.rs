//! Per-node data stores: bounded data cache with goodness-ordered eviction,
//! Q-table, neighbor map, per-neighbor interest registry and the
//! per-(item, neighbor) sent-log.
//!
//! Stores are hash maps inside; every query that feeds behavior sorts its
//! result by a total order so iteration never leaks map order.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::learning::{self, LearningParams, QEntry};
use crate::model::{DataMessage, DataName, NodeId, Seconds, Valence};

fn default_capacity() -> usize {
    100
}
fn default_t_resend() -> Seconds {
    3600.0
}
fn default_interest_ttl() -> Seconds {
    1800.0
}
fn default_contact_timeout() -> Seconds {
    30.0
}

/// Store tunables. `contact_timeout` defaults to three beacon intervals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StoreParams {
    /// Maximum number of cache entries.
    #[serde(default = "default_capacity")]
    pub capacity: usize,
    /// Per-item-per-neighbor resend suppression window, seconds.
    #[serde(default = "default_t_resend")]
    pub t_resend: Seconds,
    /// Lifetime of a registered interest, seconds.
    #[serde(default = "default_interest_ttl")]
    pub interest_ttl: Seconds,
    /// A neighbor unseen for longer than this counts as disconnected.
    #[serde(default = "default_contact_timeout")]
    pub contact_timeout: Seconds,
}

impl Default for StoreParams {
    fn default() -> Self {
        StoreParams {
            capacity: default_capacity(),
            t_resend: default_t_resend(),
            interest_ttl: default_interest_ttl(),
            contact_timeout: default_contact_timeout(),
        }
    }
}

impl StoreParams {
    pub fn validate(&self) -> Result<(), Error> {
        if self.capacity == 0 {
            return Err(Error::invalid_param("capacity", "must be positive"));
        }
        if !(self.t_resend > 0.0) {
            return Err(Error::invalid_param("t_resend", "must be positive"));
        }
        if !(self.interest_ttl > 0.0) {
            return Err(Error::invalid_param("interest_ttl", "must be positive"));
        }
        if !(self.contact_timeout > 0.0) {
            return Err(Error::invalid_param("contact_timeout", "must be positive"));
        }
        Ok(())
    }
}

/// One cached item plus its sent-log slice.
#[derive(Debug, Clone)]
pub struct CacheEntry {
    pub msg: DataMessage,
    pub inserted_at: Seconds,
    /// When this item was last sent to each neighbor.
    pub last_sent: HashMap<NodeId, Seconds>,
}

/// Classification returned by `touch_neighbor`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContactKind {
    NewContact,
    Ongoing,
    Reconnect,
}

/// A node met at some point. Records persist after disconnection: the map
/// holds every node met up to now.
#[derive(Debug, Clone, PartialEq)]
pub struct NeighborRecord {
    pub node: NodeId,
    pub first_seen: Seconds,
    pub last_seen: Seconds,
    pub currently_connected: bool,
}

/// A neighbor's expressed preference for a name or prefix.
#[derive(Debug, Clone, PartialEq)]
pub struct InterestRecord {
    pub neighbor: NodeId,
    pub target: DataName,
    pub valence: Valence,
    pub registered_at: Seconds,
    pub expires_at: Seconds,
}

/// Counts returned by `expire_state`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ExpiryReport {
    pub expired_messages: usize,
    pub expired_interests: usize,
}

/// All stores of one node. Owned by exactly one engine.
#[derive(Debug)]
pub struct NodeStore {
    params: StoreParams,
    cache: HashMap<DataName, CacheEntry>,
    q_table: HashMap<DataName, QEntry>,
    neighbors: HashMap<NodeId, NeighborRecord>,
    interests: HashMap<(NodeId, DataName), InterestRecord>,
}

impl NodeStore {
    pub fn new(params: StoreParams) -> Result<Self, Error> {
        params.validate()?;
        Ok(NodeStore {
            params,
            cache: HashMap::new(),
            q_table: HashMap::new(),
            neighbors: HashMap::new(),
            interests: HashMap::new(),
        })
    }

    pub fn params(&self) -> &StoreParams {
        &self.params
    }

    pub fn cache_len(&self) -> usize {
        self.cache.len()
    }

    pub fn cache_lookup(&self, name: &DataName) -> Option<&CacheEntry> {
        self.cache.get(name)
    }

    pub fn contains(&self, name: &DataName) -> bool {
        self.cache.contains_key(name)
    }

    pub fn cache_entries(&self) -> impl Iterator<Item = &CacheEntry> {
        self.cache.values()
    }

    pub fn neighbor_records(&self) -> impl Iterator<Item = &NeighborRecord> {
        self.neighbors.values()
    }

    pub fn q_entries(&self) -> impl Iterator<Item = (&DataName, &QEntry)> {
        self.q_table.iter()
    }

    /// Q state applicable to `name`: its exact entry if present, otherwise
    /// the deepest prefix-level entry covering it, otherwise a fresh entry.
    /// Prefix inheritance is what lets feedback received before an item
    /// existed influence that item once it arrives.
    pub fn effective_q(&self, name: &DataName, q0: f64) -> QEntry {
        if let Some(entry) = self.q_table.get(name) {
            return *entry;
        }
        self.q_table
            .iter()
            .filter(|(key, _)| key.is_prefix_of(name))
            .max_by_key(|(key, _)| key.segments().len())
            .map(|(_, entry)| *entry)
            .unwrap_or_else(|| QEntry::fresh(q0))
    }

    /// Goodness of a cached message at `now`. Ages clamp to zero so a
    /// not-yet-current `created_at` never poisons a read-only ranking.
    pub fn goodness_of(&self, msg: &DataMessage, now: Seconds, learning: &LearningParams) -> f64 {
        let entry = self.effective_q(&msg.name, learning.q0);
        let at = now.max(msg.created_at);
        learning::goodness(&entry, msg.created_at, at, learning)
            .expect("params validated at construction")
    }

    /// Apply one feedback to every cached name under `target` plus the
    /// prefix-level entry for `target` itself. Returns how many q_table
    /// entries were written.
    pub fn apply_feedback(
        &mut self,
        target: &DataName,
        valence: Valence,
        now: Seconds,
        learning: &LearningParams,
    ) -> Result<usize, Error> {
        let mut names: Vec<DataName> = self
            .cache
            .keys()
            .filter(|name| target.is_prefix_of(name))
            .cloned()
            .collect();
        if !names.contains(target) {
            names.push(target.clone());
        }
        let reward = valence.reward();
        for name in &names {
            let mut entry = self.effective_q(name, learning.q0);
            entry.q = learning::q_update(entry.q, reward, learning.alpha)?;
            match valence {
                Valence::Positive => entry.n_pos += 1,
                Valence::Negative => entry.n_neg += 1,
            }
            entry.last_update = now;
            self.q_table.insert(name.clone(), entry);
        }
        Ok(names.len())
    }

    /// Insert `msg`, evicting lowest-goodness entries when over capacity.
    /// Returns the evicted names; if the new item itself loses, its own name
    /// is in the report and it is not stored. Re-putting a cached name
    /// replaces the message in place.
    pub fn cache_put(
        &mut self,
        msg: DataMessage,
        now: Seconds,
        learning: &LearningParams,
    ) -> Result<Vec<DataName>, Error> {
        msg.validate()?;
        if msg.is_expired(now) {
            return Err(Error::Expired {
                name: msg.name.to_string(),
                expires_at: msg.expires_at(),
                now,
            });
        }
        if let Some(entry) = self.cache.get_mut(&msg.name) {
            entry.msg = msg;
            return Ok(Vec::new());
        }
        self.cache.insert(
            msg.name.clone(),
            CacheEntry {
                msg,
                inserted_at: now,
                last_sent: HashMap::new(),
            },
        );
        let mut evicted = Vec::new();
        while self.cache.len() > self.params.capacity {
            let victim = self
                .cache
                .values()
                .min_by(|a, b| {
                    let ga = self.goodness_of(&a.msg, now, learning);
                    let gb = self.goodness_of(&b.msg, now, learning);
                    ga.partial_cmp(&gb)
                        .expect("goodness is finite")
                        .then(a.inserted_at.partial_cmp(&b.inserted_at).expect("finite"))
                        .then_with(|| a.msg.name.cmp(&b.msg.name))
                })
                .map(|entry| entry.msg.name.clone())
                .expect("cache over capacity is non-empty");
            self.cache.remove(&victim);
            evicted.push(victim);
        }
        Ok(evicted)
    }

    /// Entries worth offering to `neighbor`: goodness at least `g_min`, not
    /// expired, not sent to that neighbor within `t_resend`. Sorted by
    /// goodness descending (ties: newer `created_at` first, then name),
    /// truncated to `k`.
    pub fn top_k_candidates(
        &self,
        k: usize,
        neighbor: NodeId,
        now: Seconds,
        learning: &LearningParams,
    ) -> Vec<&CacheEntry> {
        let mut ranked: Vec<(f64, &CacheEntry)> = self
            .cache
            .values()
            .filter(|entry| !entry.msg.is_expired(now))
            .filter(|entry| {
                entry
                    .last_sent
                    .get(&neighbor)
                    .is_none_or(|&sent| now - sent >= self.params.t_resend)
            })
            .map(|entry| (self.goodness_of(&entry.msg, now, learning), entry))
            .filter(|(g, _)| *g >= learning.g_min)
            .collect();
        ranked.sort_by(|(ga, a), (gb, b)| Self::propagation_order(*ga, a, *gb, b));
        ranked.truncate(k);
        ranked.into_iter().map(|(_, entry)| entry).collect()
    }

    /// Total order used for offers: goodness descending, newer first, then
    /// name ascending.
    pub fn propagation_order(ga: f64, a: &CacheEntry, gb: f64, b: &CacheEntry) -> std::cmp::Ordering {
        gb.partial_cmp(&ga)
            .expect("goodness is finite")
            .then(
                b.msg
                    .created_at
                    .partial_cmp(&a.msg.created_at)
                    .expect("finite"),
            )
            .then_with(|| a.msg.name.cmp(&b.msg.name))
    }

    /// Store a preference; an existing record for the same
    /// (neighbor, target) is replaced.
    pub fn register_interest(&mut self, rec: InterestRecord) {
        self.interests.insert((rec.neighbor, rec.target.clone()), rec);
    }

    /// Unexpired interests whose target covers `name`, one entry per
    /// neighbor with the most recent registration winning. Sorted by node id.
    pub fn interested_neighbors(&self, name: &DataName, now: Seconds) -> Vec<(NodeId, Valence)> {
        let mut best: HashMap<NodeId, &InterestRecord> = HashMap::new();
        for rec in self.interests.values() {
            if now >= rec.expires_at || !rec.target.is_prefix_of(name) {
                continue;
            }
            let replace = match best.get(&rec.neighbor) {
                None => true,
                Some(cur) => {
                    (rec.registered_at, rec.target.segments().len(), &rec.target)
                        > (cur.registered_at, cur.target.segments().len(), &cur.target)
                }
            };
            if replace {
                best.insert(rec.neighbor, rec);
            }
        }
        let mut out: Vec<(NodeId, Valence)> =
            best.into_iter().map(|(node, rec)| (node, rec.valence)).collect();
        out.sort_by_key(|(node, _)| *node);
        out
    }

    /// The valence `neighbor` holds toward `name`, if any.
    pub fn interest_of(&self, neighbor: NodeId, name: &DataName, now: Seconds) -> Option<Valence> {
        self.interests
            .values()
            .filter(|rec| rec.neighbor == neighbor)
            .filter(|rec| now < rec.expires_at && rec.target.is_prefix_of(name))
            .max_by(|a, b| {
                (a.registered_at, a.target.segments().len(), &a.target)
                    .partial_cmp(&(b.registered_at, b.target.segments().len(), &b.target))
                    .expect("finite")
            })
            .map(|rec| rec.valence)
    }

    /// Record a sighting of `node`, classifying the contact.
    pub fn touch_neighbor(&mut self, node: NodeId, now: Seconds) -> ContactKind {
        match self.neighbors.get_mut(&node) {
            None => {
                self.neighbors.insert(
                    node,
                    NeighborRecord {
                        node,
                        first_seen: now,
                        last_seen: now,
                        currently_connected: true,
                    },
                );
                ContactKind::NewContact
            }
            Some(rec) => {
                let kind = if now - rec.last_seen > self.params.contact_timeout {
                    ContactKind::Reconnect
                } else {
                    ContactKind::Ongoing
                };
                rec.last_seen = now;
                rec.currently_connected = true;
                kind
            }
        }
    }

    /// Mark an item as sent to `neighbor` at `now`.
    pub fn mark_sent(&mut self, name: &DataName, neighbor: NodeId, now: Seconds) {
        if let Some(entry) = self.cache.get_mut(name) {
            entry.last_sent.insert(neighbor, now);
        }
    }

    /// Drop expired cache entries and interests; mark long-unseen neighbors
    /// disconnected (their records are kept).
    pub fn expire_state(&mut self, now: Seconds) -> ExpiryReport {
        let before_cache = self.cache.len();
        self.cache.retain(|_, entry| !entry.msg.is_expired(now));
        let before_interests = self.interests.len();
        self.interests.retain(|_, rec| now < rec.expires_at);
        for rec in self.neighbors.values_mut() {
            if now - rec.last_seen > self.params.contact_timeout {
                rec.currently_connected = false;
            }
        }
        ExpiryReport {
            expired_messages: before_cache - self.cache.len(),
            expired_interests: before_interests - self.interests.len(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::next_msg_id;

    fn name(text: &str) -> DataName {
        DataName::parse(text).unwrap()
    }

    fn msg(text: &str, origin: u64, created_at: Seconds) -> DataMessage {
        DataMessage {
            msg_id: next_msg_id(NodeId(origin), 0),
            name: name(text),
            origin: NodeId(origin),
            created_at,
            payload_size: 100,
            hop_count: 0,
            validity: 3600.0,
        }
    }

    fn store(capacity: usize) -> NodeStore {
        NodeStore::new(StoreParams {
            capacity,
            ..Default::default()
        })
        .unwrap()
    }

    fn learning() -> LearningParams {
        LearningParams::default()
    }

    /// Pin an item's q so its goodness at age 0 with default weights becomes
    /// predictable: g = 0.5 * (q+1)/2 + 0.2 * pop + 0.3.
    fn set_q(store: &mut NodeStore, text: &str, q: f64) {
        store.q_table.insert(
            name(text),
            QEntry {
                q,
                n_pos: 0,
                n_neg: 0,
                last_update: 0.0,
            },
        );
    }

    #[test]
    fn put_then_lookup() {
        let mut s = store(10);
        s.cache_put(msg("/a/b", 1, 0.0), 0.0, &learning()).unwrap();
        assert!(s.cache_lookup(&name("/a/b")).is_some());
        assert!(s.cache_lookup(&name("/a/c")).is_none());
    }

    #[test]
    fn expired_put_rejected() {
        let mut s = store(10);
        let m = msg("/a", 1, 0.0);
        assert!(matches!(
            s.cache_put(m, 4000.0, &learning()),
            Err(Error::Expired { .. })
        ));
    }

    #[test]
    fn lowest_goodness_new_item_rejected() {
        // capacity 2, incumbents at q mapped to goodness 0.9ish and 0.7ish,
        // new item lower than both -> self-evicted
        let mut s = store(2);
        set_q(&mut s, "/hi", 1.0);
        set_q(&mut s, "/mid", 0.2);
        set_q(&mut s, "/lo", -0.9);
        s.cache_put(msg("/hi", 1, 0.0), 0.0, &learning()).unwrap();
        s.cache_put(msg("/mid", 1, 0.0), 0.0, &learning()).unwrap();
        let evicted = s.cache_put(msg("/lo", 1, 0.0), 0.0, &learning()).unwrap();
        assert_eq!(evicted, vec![name("/lo")]);
        assert!(!s.contains(&name("/lo")));
        assert_eq!(s.cache_len(), 2);
    }

    #[test]
    fn middle_goodness_evicts_weakest() {
        let mut s = store(2);
        set_q(&mut s, "/hi", 1.0);
        set_q(&mut s, "/weak", -0.9);
        set_q(&mut s, "/mid", 0.2);
        s.cache_put(msg("/hi", 1, 0.0), 0.0, &learning()).unwrap();
        s.cache_put(msg("/weak", 1, 0.0), 0.0, &learning()).unwrap();
        let evicted = s.cache_put(msg("/mid", 1, 0.0), 0.0, &learning()).unwrap();
        assert_eq!(evicted, vec![name("/weak")]);
        assert!(s.contains(&name("/mid")));
        assert!(s.contains(&name("/hi")));
    }

    #[test]
    fn equal_goodness_evicts_older_insert() {
        let mut s = store(1);
        s.cache_put(msg("/one", 1, 10.0), 10.0, &learning()).unwrap();
        // same default q, same age at evaluation time (both created at their
        // insert times, but freshness differs...), so pin created_at equal
        let mut newer = msg("/two", 1, 10.0);
        newer.msg_id = next_msg_id(NodeId(1), 1);
        let evicted = s.cache_put(newer, 20.0, &learning()).unwrap();
        assert_eq!(evicted, vec![name("/one")]);
        assert!(s.contains(&name("/two")));
    }

    #[test]
    fn top_k_threshold_and_order() {
        let mut s = store(10);
        set_q(&mut s, "/good", 1.0);
        set_q(&mut s, "/ok", 0.0);
        set_q(&mut s, "/bad", -1.0);
        for text in ["/good", "/ok", "/bad"] {
            let mut m = msg(text, 1, 0.0);
            m.validity = 1e9;
            s.cache_put(m, 0.0, &learning()).unwrap();
        }
        // at age 3000 s freshness is ~0.1, so /bad sits near 0.03 < g_min
        // while /good (~0.53) and /ok (~0.28) stay above it
        let picks = s.top_k_candidates(5, NodeId(7), 3000.0, &learning());
        let names: Vec<String> = picks.iter().map(|e| e.msg.name.to_string()).collect();
        assert_eq!(names, vec!["/good", "/ok"]);
    }

    #[test]
    fn top_k_empty_cache() {
        let s = store(10);
        assert!(s.top_k_candidates(5, NodeId(1), 0.0, &learning()).is_empty());
    }

    #[test]
    fn resend_suppression_is_per_neighbor() {
        let mut s = store(10);
        s.cache_put(msg("/a", 1, 0.0), 0.0, &learning()).unwrap();
        s.mark_sent(&name("/a"), NodeId(7), 100.0);
        let for_7 = s.top_k_candidates(5, NodeId(7), 110.0, &learning());
        assert!(for_7.is_empty());
        let for_8 = s.top_k_candidates(5, NodeId(8), 110.0, &learning());
        assert_eq!(for_8.len(), 1);
    }

    #[test]
    fn interest_registration_and_prefix_query() {
        let mut s = store(10);
        s.register_interest(InterestRecord {
            neighbor: NodeId(5),
            target: name("/uni/recycler"),
            valence: Valence::Positive,
            registered_at: 0.0,
            expires_at: 100.0,
        });
        let hits = s.interested_neighbors(&name("/uni/recycler/chair-1"), 10.0);
        assert_eq!(hits, vec![(NodeId(5), Valence::Positive)]);
        // prefix direction: interest on /a/b does not cover /a
        s.register_interest(InterestRecord {
            neighbor: NodeId(6),
            target: name("/a/b"),
            valence: Valence::Positive,
            registered_at: 0.0,
            expires_at: 100.0,
        });
        assert!(s.interested_neighbors(&name("/a"), 10.0).is_empty());
    }

    #[test]
    fn interest_replacement_latest_wins() {
        let mut s = store(10);
        s.register_interest(InterestRecord {
            neighbor: NodeId(5),
            target: name("/x"),
            valence: Valence::Positive,
            registered_at: 0.0,
            expires_at: 100.0,
        });
        s.register_interest(InterestRecord {
            neighbor: NodeId(5),
            target: name("/x"),
            valence: Valence::Negative,
            registered_at: 1.0,
            expires_at: 100.0,
        });
        assert_eq!(
            s.interested_neighbors(&name("/x/item"), 10.0),
            vec![(NodeId(5), Valence::Negative)]
        );
    }

    #[test]
    fn expired_interest_ignored() {
        let mut s = store(10);
        s.register_interest(InterestRecord {
            neighbor: NodeId(5),
            target: name("/x"),
            valence: Valence::Positive,
            registered_at: 0.0,
            expires_at: 50.0,
        });
        assert!(s.interested_neighbors(&name("/x"), 50.0).is_empty());
        assert!(s.interest_of(NodeId(5), &name("/x"), 50.0).is_none());
    }

    #[test]
    fn two_interested_neighbors_listed() {
        let mut s = store(10);
        for node in [5, 6] {
            s.register_interest(InterestRecord {
                neighbor: NodeId(node),
                target: name("/x"),
                valence: Valence::Positive,
                registered_at: 0.0,
                expires_at: 100.0,
            });
        }
        assert_eq!(s.interested_neighbors(&name("/x"), 10.0).len(), 2);
    }

    #[test]
    fn touch_neighbor_classification() {
        let mut s = NodeStore::new(StoreParams {
            contact_timeout: 15.0,
            ..Default::default()
        })
        .unwrap();
        assert_eq!(s.touch_neighbor(NodeId(3), 0.0), ContactKind::NewContact);
        assert_eq!(s.touch_neighbor(NodeId(3), 1.0), ContactKind::Ongoing);
        assert_eq!(s.touch_neighbor(NodeId(3), 101.0), ContactKind::Reconnect);
    }

    #[test]
    fn expire_state_boundaries() {
        let mut s = store(10);
        let mut m = msg("/a", 1, 0.0);
        m.validity = 60.0;
        s.cache_put(m, 0.0, &learning()).unwrap();
        assert_eq!(s.expire_state(59.0).expired_messages, 0);
        assert!(s.contains(&name("/a")));
        assert_eq!(s.expire_state(61.0).expired_messages, 1);
        assert!(!s.contains(&name("/a")));
    }

    #[test]
    fn disconnected_neighbor_record_retained() {
        let mut s = NodeStore::new(StoreParams {
            contact_timeout: 15.0,
            ..Default::default()
        })
        .unwrap();
        s.touch_neighbor(NodeId(9), 0.0);
        s.expire_state(100.0);
        let rec = s.neighbor_records().find(|r| r.node == NodeId(9)).unwrap();
        assert!(!rec.currently_connected);
        assert_eq!(rec.first_seen, 0.0);
    }

    #[test]
    fn effective_q_prefers_exact_then_deepest_prefix() {
        let mut s = store(10);
        set_q(&mut s, "/a", 0.2);
        set_q(&mut s, "/a/b", 0.7);
        assert_eq!(s.effective_q(&name("/a/b/c"), 0.0).q, 0.7);
        assert_eq!(s.effective_q(&name("/a/x"), 0.0).q, 0.2);
        assert_eq!(s.effective_q(&name("/z"), 0.0).q, 0.0);
        set_q(&mut s, "/a/b/c", -0.5);
        assert_eq!(s.effective_q(&name("/a/b/c"), 0.0).q, -0.5);
    }

    #[test]
    fn apply_feedback_updates_cached_names_and_prefix_entry() {
        let mut s = store(10);
        s.cache_put(msg("/news/item-0", 1, 0.0), 0.0, &learning()).unwrap();
        s.cache_put(msg("/news/item-1", 1, 0.0), 0.0, &learning()).unwrap();
        s.cache_put(msg("/other", 1, 0.0), 0.0, &learning()).unwrap();
        let n = s
            .apply_feedback(&name("/news"), Valence::Positive, 5.0, &learning())
            .unwrap();
        assert_eq!(n, 3); // two items + the prefix entry
        assert_eq!(s.effective_q(&name("/news/item-0"), 0.0).q, 0.5);
        assert_eq!(s.effective_q(&name("/news"), 0.0).q, 0.5);
        assert_eq!(s.effective_q(&name("/other"), 0.0).q, 0.0);
        // a future item inherits the prefix entry
        assert_eq!(s.effective_q(&name("/news/item-9"), 0.0).q, 0.5);
    }

    #[test]
    fn apply_feedback_counts_by_valence() {
        let mut s = store(10);
        s.apply_feedback(&name("/t"), Valence::Positive, 0.0, &learning())
            .unwrap();
        s.apply_feedback(&name("/t"), Valence::Negative, 1.0, &learning())
            .unwrap();
        let e = s.effective_q(&name("/t"), 0.0);
        assert_eq!((e.n_pos, e.n_neg), (1, 1));
    }
}
