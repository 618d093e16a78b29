//! Cache discipline checked against a from-scratch oracle.
//!
//! The oracle keeps its own entry list, its own q mirror keyed by canonical
//! name text, and recomputes eviction victims and candidate rankings by
//! full sort-and-truncate after every operation. Random operation sequences
//! must produce identical surviving sets, identical victims and identical
//! candidate lists step for step.

use std::collections::{HashMap, HashSet};

use keetchi::learning::LearningParams;
use keetchi::model::{next_msg_id, DataMessage, DataName, NodeId, Valence};
use keetchi::store::{NodeStore, StoreParams};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

struct OracleEntry {
    name: DataName,
    created_at: f64,
    validity: f64,
    inserted_at: f64,
}

impl OracleEntry {
    fn is_expired(&self, now: f64) -> bool {
        now >= self.created_at + self.validity
    }
}

struct Oracle {
    learning: LearningParams,
    capacity: usize,
    t_resend: f64,
    entries: HashMap<String, OracleEntry>,
    q: HashMap<String, (DataName, f64, u64, u64)>,
    last_sent: HashMap<(String, u64), f64>,
}

impl Oracle {
    fn new(learning: LearningParams, store: StoreParams) -> Self {
        Oracle {
            learning,
            capacity: store.capacity,
            t_resend: store.t_resend,
            entries: HashMap::new(),
            q: HashMap::new(),
            last_sent: HashMap::new(),
        }
    }

    fn effective_q(&self, name: &DataName) -> (f64, u64, u64) {
        if let Some((_, q, np, nn)) = self.q.get(&name.to_string()) {
            return (*q, *np, *nn);
        }
        self.q
            .values()
            .filter(|(key, ..)| key.is_prefix_of(name))
            .max_by_key(|(key, ..)| key.segments().len())
            .map(|(_, q, np, nn)| (*q, *np, *nn))
            .unwrap_or((self.learning.q0, 0, 0))
    }

    fn goodness(&self, entry: &OracleEntry, now: f64) -> f64 {
        let (q, np, nn) = self.effective_q(&entry.name);
        let p = &self.learning;
        let age = now.max(entry.created_at) - entry.created_at;
        p.w_usefulness * ((q + 1.0) / 2.0)
            + p.w_popularity * (np as f64 / (np + nn + 1) as f64)
            + p.w_freshness * 2.0_f64.powf(-age / p.tau)
    }

    fn feedback(&mut self, target: &DataName, valence: Valence) {
        let mut names: Vec<DataName> = self
            .entries
            .values()
            .filter(|e| target.is_prefix_of(&e.name))
            .map(|e| e.name.clone())
            .collect();
        if !names.contains(target) {
            names.push(target.clone());
        }
        for name in names {
            let (q, mut np, mut nn) = self.effective_q(&name);
            let next = q + self.learning.alpha * (valence.reward() - q);
            match valence {
                Valence::Positive => np += 1,
                Valence::Negative => nn += 1,
            }
            self.q.insert(name.to_string(), (name, next, np, nn));
        }
    }

    /// Returns evicted names, or None when the message is already expired.
    fn put(&mut self, msg: &DataMessage, now: f64) -> Option<Vec<String>> {
        if now >= msg.created_at + msg.validity {
            return None;
        }
        let key = msg.name.to_string();
        if let Some(entry) = self.entries.get_mut(&key) {
            entry.created_at = msg.created_at;
            entry.validity = msg.validity;
            return Some(Vec::new());
        }
        self.entries.insert(
            key,
            OracleEntry {
                name: msg.name.clone(),
                created_at: msg.created_at,
                validity: msg.validity,
                inserted_at: now,
            },
        );
        let mut evicted = Vec::new();
        while self.entries.len() > self.capacity {
            let victim = self
                .entries
                .iter()
                .min_by(|(ka, a), (kb, b)| {
                    self.goodness(a, now)
                        .partial_cmp(&self.goodness(b, now))
                        .unwrap()
                        .then(a.inserted_at.partial_cmp(&b.inserted_at).unwrap())
                        .then_with(|| ka.cmp(kb))
                })
                .map(|(k, _)| k.clone())
                .unwrap();
            self.entries.remove(&victim);
            // the sent-log lives inside the cache entry, so it dies with it
            self.last_sent.retain(|(name, _), _| name != &victim);
            evicted.push(victim);
        }
        Some(evicted)
    }

    fn expire(&mut self, now: f64) {
        let expired: Vec<String> = self
            .entries
            .iter()
            .filter(|(_, e)| e.is_expired(now))
            .map(|(k, _)| k.clone())
            .collect();
        for key in expired {
            self.entries.remove(&key);
            self.last_sent.retain(|(name, _), _| name != &key);
        }
    }

    fn top_k(&self, k: usize, neighbor: u64, now: f64) -> Vec<String> {
        let mut ranked: Vec<(f64, &OracleEntry)> = self
            .entries
            .values()
            .filter(|e| !e.is_expired(now))
            .filter(|e| {
                self.last_sent
                    .get(&(e.name.to_string(), neighbor))
                    .is_none_or(|&sent| now - sent >= self.t_resend)
            })
            .map(|e| (self.goodness(e, now), e))
            .filter(|(g, _)| *g >= self.learning.g_min)
            .collect();
        ranked.sort_by(|(ga, a), (gb, b)| {
            gb.partial_cmp(ga)
                .unwrap()
                .then(b.created_at.partial_cmp(&a.created_at).unwrap())
                .then_with(|| a.name.to_string().cmp(&b.name.to_string()))
        });
        ranked
            .into_iter()
            .take(k)
            .map(|(_, e)| e.name.to_string())
            .collect()
    }

    fn surviving(&self) -> Vec<String> {
        let mut names: Vec<String> = self.entries.keys().cloned().collect();
        names.sort();
        names
    }
}

fn store_surviving(store: &NodeStore) -> Vec<String> {
    let mut names: Vec<String> = store.cache_entries().map(|e| e.msg.name.to_string()).collect();
    names.sort();
    names
}

fn pool_name(rng: &mut ChaCha8Rng) -> DataName {
    let prefix = rng.random_range(0..6u32);
    let item = rng.random_range(0..8u32);
    DataName::parse(&format!("/p{prefix}/item-{item}")).unwrap()
}

fn pool_target(rng: &mut ChaCha8Rng) -> DataName {
    if rng.random_bool(0.5) {
        DataName::parse(&format!("/p{}", rng.random_range(0..6u32))).unwrap()
    } else {
        pool_name(rng)
    }
}

/// Drive `ops` random operations against both implementations, comparing
/// after every step.
pub fn run_oracle_sequence(seed: u64, ops: usize, capacity: usize) {
    let learning = LearningParams::default();
    let store_params = StoreParams {
        capacity,
        t_resend: 40.0,
        ..Default::default()
    };
    let mut store = NodeStore::new(store_params).unwrap();
    let mut oracle = Oracle::new(learning, store_params);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut now = 0.0f64;
    let mut counter = 0u64;

    for step in 0..ops {
        let roll: f64 = rng.random();
        if roll < 0.45 {
            // put
            let name = pool_name(&mut rng);
            let validity = rng.random_range(30.0..300.0);
            let age = if rng.random_bool(0.05) {
                validity + rng.random_range(0.0..10.0)
            } else {
                rng.random_range(0.0..20.0)
            };
            counter += 1;
            let msg = DataMessage {
                msg_id: next_msg_id(NodeId(0), counter),
                name,
                origin: NodeId(0),
                created_at: (now - age).max(0.0),
                payload_size: 64,
                hop_count: 0,
                validity,
            };
            let expected = oracle.put(&msg, now);
            let actual = store.cache_put(msg, now, &learning);
            match (expected, actual) {
                (None, Err(_)) => {}
                (Some(exp), Ok(act)) => {
                    let act: Vec<String> = act.iter().map(|n| n.to_string()).collect();
                    assert_eq!(exp, act, "eviction victims diverged at step {step}");
                }
                (exp, act) => panic!("put outcome diverged at step {step}: {exp:?} vs {act:?}"),
            }
        } else if roll < 0.70 {
            let target = pool_target(&mut rng);
            let valence = if rng.random_bool(0.6) {
                Valence::Positive
            } else {
                Valence::Negative
            };
            oracle.feedback(&target, valence);
            store.apply_feedback(&target, valence, now, &learning).unwrap();
        } else if roll < 0.80 {
            let k = rng.random_range(0..8usize);
            let neighbor = rng.random_range(1..4u64);
            let expected = oracle.top_k(k, neighbor, now);
            let actual: Vec<String> = store
                .top_k_candidates(k, NodeId(neighbor), now, &learning)
                .iter()
                .map(|e| e.msg.name.to_string())
                .collect();
            assert_eq!(expected, actual, "top-k diverged at step {step}");
            for name in &expected {
                oracle.last_sent.insert((name.clone(), neighbor), now);
                store.mark_sent(&DataName::parse(name).unwrap(), NodeId(neighbor), now);
            }
        } else if roll < 0.90 {
            if rng.random_bool(0.8) {
                now += rng.random_range(0.0..15.0);
            }
        } else {
            oracle.expire(now);
            store.expire_state(now);
        }

        assert!(store.cache_len() <= capacity, "capacity exceeded at step {step}");
        assert_eq!(
            oracle.surviving(),
            store_surviving(&store),
            "surviving sets diverged at step {step}"
        );
    }
}

#[test]
fn cache_discipline_matches_oracle() {
    for seed in [1, 2, 3] {
        run_oracle_sequence(seed, 4000, 16);
    }
}

#[test]
fn cache_discipline_tiny_capacity() {
    run_oracle_sequence(99, 2000, 1);
}

#[test]
fn neighbor_map_membership_is_append_only() {
    let mut store = NodeStore::new(StoreParams::default()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut seen: HashSet<u64> = HashSet::new();
    let mut now = 0.0;
    for _ in 0..2000 {
        now += rng.random_range(0.0..20.0);
        if rng.random_bool(0.7) {
            let node = rng.random_range(0..12u64);
            store.touch_neighbor(NodeId(node), now);
            seen.insert(node);
        } else {
            store.expire_state(now);
        }
        let present: HashSet<u64> = store.neighbor_records().map(|r| r.node.0).collect();
        assert_eq!(present, seen);
    }
}
