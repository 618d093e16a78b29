//! Deterministic discrete-event simulator: scenario clock, event queue,
//! mobility, disk-radius connectivity, periodic beacons feeding neighbor
//! lists to engines, and link transmission with delay and loss.
//!
//! One seed drives one pseudorandom stream per concern (per-node mobility,
//! link loss, per-node app traffic), all derived from the scenario seed, so
//! identical seeds give identical runs.

pub mod mobility;
pub mod trace;

use std::cmp::{Ordering, Reverse};
use std::collections::{BinaryHeap, HashMap};

use keetchi::engine::{EmissionTarget, Engine, KAction, LinkDest};
use keetchi::model::{
    next_msg_id, DataMessage, FeedbackMessage, LayerSource, Message, NodeId, Seconds, Valence,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::apps::{ConsumerState, GeneratorState};
use crate::config::LinkConfig;
use crate::error::SimError;
use crate::stats::StatsLedger;
use mobility::MobilityRuntime;

/// What an application timer means for the node it fires on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AppTimerKind {
    Generator,
    Announce,
}

/// Simulator event kinds.
#[derive(Debug, Clone, PartialEq)]
pub enum EventKind {
    Beacon(NodeId),
    AppTimer { node: NodeId, which: AppTimerKind },
    MsgArrival { dest: NodeId, from: NodeId, msg: Message },
    TraceContact { a: NodeId, b: NodeId, up: bool },
    SimEnd,
}

/// A scheduled event. The queue pops in (at, seq) order; seq is assigned in
/// scheduling order, which makes same-time ordering deterministic.
#[derive(Debug)]
struct Scheduled {
    at: Seconds,
    seq: u64,
    kind: EventKind,
}

impl PartialEq for Scheduled {
    fn eq(&self, other: &Self) -> bool {
        self.at == other.at && self.seq == other.seq
    }
}
impl Eq for Scheduled {}

impl Ord for Scheduled {
    fn cmp(&self, other: &Self) -> Ordering {
        self.at
            .partial_cmp(&other.at)
            .expect("event times are finite")
            .then(self.seq.cmp(&other.seq))
    }
}
impl PartialOrd for Scheduled {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// One simulated node: its engine plus optional traffic apps and the
/// node-local app randomness stream.
#[derive(Debug)]
pub struct SimNode {
    pub id: NodeId,
    pub engine: Engine,
    pub generator: Option<GeneratorState>,
    pub consumer: Option<ConsumerState>,
    app_rng: ChaCha8Rng,
}

impl SimNode {
    pub fn new(
        id: NodeId,
        engine: Engine,
        generator: Option<GeneratorState>,
        consumer: Option<ConsumerState>,
        app_rng: ChaCha8Rng,
    ) -> Self {
        SimNode {
            id,
            engine,
            generator,
            consumer,
            app_rng,
        }
    }
}

/// Derive the RNG for one concern from the scenario seed. Tags keep the
/// streams independent; the node id separates per-node streams.
pub fn derive_rng(seed: u64, tag: u8, node: u64) -> ChaCha8Rng {
    let mut bytes = [0u8; 32];
    bytes[..8].copy_from_slice(&seed.to_le_bytes());
    bytes[8] = tag;
    bytes[9..17].copy_from_slice(&node.to_le_bytes());
    ChaCha8Rng::from_seed(bytes)
}

pub const RNG_TAG_MOBILITY: u8 = 1;
pub const RNG_TAG_LOSS: u8 = 2;
pub const RNG_TAG_APP: u8 = 3;

/// The discrete-event world. The event loop is a single logical thread;
/// engines are invoked exclusively from it.
#[derive(Debug)]
pub struct Sim {
    now: Seconds,
    next_seq: u64,
    queue: BinaryHeap<Reverse<Scheduled>>,
    nodes: Vec<SimNode>,
    index: HashMap<NodeId, usize>,
    mobility: MobilityRuntime,
    link: LinkConfig,
    loss_rng: ChaCha8Rng,
    ledger: StatsLedger,
}

impl Sim {
    pub fn new(nodes: Vec<SimNode>, mobility: MobilityRuntime, link: LinkConfig, seed: u64) -> Self {
        let index = nodes
            .iter()
            .enumerate()
            .map(|(i, n)| (n.id, i))
            .collect();
        Sim {
            now: 0.0,
            next_seq: 0,
            queue: BinaryHeap::new(),
            nodes,
            index,
            mobility,
            link,
            loss_rng: derive_rng(seed, RNG_TAG_LOSS, 0),
            ledger: StatsLedger::default(),
        }
    }

    pub fn now(&self) -> Seconds {
        self.now
    }

    pub fn nodes(&self) -> &[SimNode] {
        &self.nodes
    }

    pub fn ledger(&self) -> &StatsLedger {
        &self.ledger
    }

    fn node_index(&self, id: NodeId) -> usize {
        *self.index.get(&id).expect("unknown node id")
    }

    /// Under trace mobility, put every contact change on the timeline.
    pub fn schedule_trace_events(&mut self) -> Result<(), SimError> {
        let events: Vec<trace::ContactEvent> = match &self.mobility {
            MobilityRuntime::Trace(tr) => tr.events().to_vec(),
            _ => return Ok(()),
        };
        for ev in events {
            self.schedule(
                ev.at,
                EventKind::TraceContact {
                    a: ev.a,
                    b: ev.b,
                    up: ev.up,
                },
            )?;
        }
        Ok(())
    }

    /// Enqueue an event; scheduling into the past is a causality violation.
    pub fn schedule(&mut self, at: Seconds, kind: EventKind) -> Result<(), SimError> {
        if at < self.now {
            return Err(SimError::CausalityViolation { at, now: self.now });
        }
        let seq = self.next_seq;
        self.next_seq += 1;
        self.queue.push(Reverse(Scheduled { at, seq, kind }));
        Ok(())
    }

    /// Position of a node at `now`; trace-driven mobility has none.
    pub fn position(&mut self, node: NodeId, now: Seconds) -> Result<(f64, f64), SimError> {
        let idx = self.node_index(node);
        match &mut self.mobility {
            MobilityRuntime::Static(positions) => Ok(positions[idx]),
            MobilityRuntime::Waypoint(walkers) => Ok(walkers[idx].position(now)),
            MobilityRuntime::Trace(_) => Err(SimError::NotPositional),
        }
    }

    /// Nodes currently reachable from `node`, sorted by id. Disk model:
    /// distance at most `radius` connects (closed disk). Under a trace the
    /// open contact intervals decide.
    pub fn current_neighbors(&mut self, node: NodeId, now: Seconds) -> Vec<NodeId> {
        let idx = self.node_index(node);
        match &mut self.mobility {
            MobilityRuntime::Static(positions) => {
                disk_neighbors(&self.nodes, positions, idx, self.link.radius)
            }
            MobilityRuntime::Waypoint(walkers) => {
                let positions: Vec<(f64, f64)> =
                    walkers.iter_mut().map(|w| w.position(now)).collect();
                disk_neighbors(&self.nodes, &positions, idx, self.link.radius)
            }
            MobilityRuntime::Trace(trace) => trace.neighbors_at(node, now),
        }
    }

    /// Process events in (time, seq) order until `until`. The clock only
    /// moves via event timestamps.
    pub fn run(&mut self, until: Seconds) -> Result<(), SimError> {
        self.schedule(until, EventKind::SimEnd)?;
        while let Some(Reverse(ev)) = self.queue.pop() {
            if ev.at > until {
                break;
            }
            self.now = ev.at;
            match ev.kind {
                EventKind::SimEnd => break,
                EventKind::Beacon(node) => self.on_beacon(node)?,
                EventKind::AppTimer { node, which } => self.on_app_timer(node, which)?,
                EventKind::MsgArrival { dest, from, msg } => self.on_arrival(dest, from, msg)?,
                // connectivity is derived from the trace interval index at
                // query time; the event only marks the change in the timeline
                EventKind::TraceContact { .. } => {}
            }
        }
        if self.now < until {
            self.now = until;
        }
        Ok(())
    }

    /// Take final snapshots, compute derived metrics and hand out the ledger.
    pub fn finish(mut self) -> StatsLedger {
        for node in &self.nodes {
            let snap = node.engine.status_snapshot(self.now);
            self.ledger
                .final_cache
                .insert(node.id, snap.cache.into_iter().map(|(name, _)| name).collect());
            self.ledger.final_q.insert(
                node.id,
                snap.q_table
                    .into_iter()
                    .map(|(name, entry)| (name, entry.q))
                    .collect(),
            );
        }
        // (item, interested-consumer) pairs the scenario offered
        let names: Vec<(keetchi::model::DataName, NodeId)> = self
            .ledger
            .publish_index()
            .iter()
            .map(|(name, (origin, _))| ((*name).clone(), *origin))
            .collect();
        let mut pairs = 0;
        for (name, origin) in &names {
            for node in &self.nodes {
                if node.id == *origin {
                    continue;
                }
                if let Some(consumer) = &node.consumer {
                    if consumer.is_interested(name) {
                        pairs += 1;
                    }
                }
            }
        }
        let node_count = self.nodes.len();
        self.ledger.finalize_metrics(pairs, node_count);
        self.ledger
    }

    fn on_beacon(&mut self, node: NodeId) -> Result<(), SimError> {
        let neighbors = self.current_neighbors(node, self.now);
        let idx = self.node_index(node);
        let action = self.nodes[idx]
            .engine
            .process_neighbor_list(&neighbors, self.now)?;
        self.execute(node, action)?;
        self.schedule(self.now + self.link.beacon_interval, EventKind::Beacon(node))
    }

    fn on_app_timer(&mut self, node: NodeId, which: AppTimerKind) -> Result<(), SimError> {
        let idx = self.node_index(node);
        match which {
            AppTimerKind::Generator => {
                let entry = &mut self.nodes[idx];
                let Some(generator) = entry.generator.as_mut() else {
                    return Ok(());
                };
                let (publication, next) = generator.on_timer(self.now, &mut entry.app_rng);
                if let Some(msg) = publication {
                    self.ledger.record_publish(msg.name.clone(), node, self.now);
                    let action = self.nodes[idx]
                        .engine
                        .process_data_msg(LayerSource::App, msg, self.now)?;
                    self.execute(node, action)?;
                }
                if let Some(at) = next {
                    self.schedule(
                        at,
                        EventKind::AppTimer {
                            node,
                            which: AppTimerKind::Generator,
                        },
                    )?;
                }
            }
            AppTimerKind::Announce => {
                let announcements = self.nodes[idx]
                    .consumer
                    .as_ref()
                    .map(|c| c.announcements())
                    .unwrap_or_default();
                for (target, valence) in announcements {
                    let action = {
                        let fb = feedback_template(target, valence, self.now);
                        self.nodes[idx]
                            .engine
                            .process_feedback_msg(LayerSource::App, fb, self.now)?
                    };
                    self.execute(node, action)?;
                }
            }
        }
        Ok(())
    }

    fn on_arrival(&mut self, dest: NodeId, _from: NodeId, msg: Message) -> Result<(), SimError> {
        let idx = self.node_index(dest);
        let action = match msg {
            Message::Data(data) => {
                self.ledger.data_arrivals += 1;
                self.nodes[idx]
                    .engine
                    .process_data_msg(LayerSource::Link, data, self.now)?
            }
            Message::Feedback(fb) => {
                self.ledger.feedback_arrivals += 1;
                self.nodes[idx]
                    .engine
                    .process_feedback_msg(LayerSource::Link, fb, self.now)?
            }
        };
        self.execute(dest, action)
    }

    /// Carry out a KAction: record its stats, hand app emissions to the
    /// local application, turn link emissions into arrival events.
    fn execute(&mut self, node: NodeId, action: KAction) -> Result<(), SimError> {
        for ev in &action.stat_events {
            self.ledger.record_stat(node, ev);
        }
        for emission in action.emissions {
            match emission.to {
                EmissionTarget::App => {
                    if let Message::Data(data) = emission.msg {
                        self.deliver_to_app(node, data)?;
                    }
                }
                EmissionTarget::Link(dest) => {
                    self.transmit(node, dest, emission.msg)?;
                }
            }
        }
        Ok(())
    }

    fn deliver_to_app(&mut self, node: NodeId, data: DataMessage) -> Result<(), SimError> {
        let idx = self.node_index(node);
        let entry = &mut self.nodes[idx];
        let interested = entry
            .consumer
            .as_ref()
            .is_some_and(|c| c.is_interested(&data.name));
        self.ledger
            .record_delivery(data.name.clone(), node, self.now, interested);
        let verdict = entry
            .consumer
            .as_ref()
            .and_then(|c| c.on_delivery(&data, &mut entry.app_rng));
        if let Some((target, valence)) = verdict {
            let fb = feedback_template(target, valence, self.now);
            let action = self.nodes[idx]
                .engine
                .process_feedback_msg(LayerSource::App, fb, self.now)?;
            self.execute(node, action)?;
        }
        Ok(())
    }

    /// Put a message on the air. Broadcast fans out to every current
    /// neighbor; unicast reaches its peer only while connected, otherwise
    /// the transmission is dropped and counted. Each transmission is lost
    /// independently with the configured probability.
    fn transmit(&mut self, from: NodeId, dest: LinkDest, msg: Message) -> Result<(), SimError> {
        let delay = self.link.per_hop_delay
            + self
                .link
                .bandwidth
                .map_or(0.0, |bw| msg.payload_size() as f64 / bw);
        match dest {
            LinkDest::Broadcast => {
                let peers = self.current_neighbors(from, self.now);
                for peer in peers {
                    self.maybe_send(from, peer, msg.clone(), delay)?;
                }
            }
            LinkDest::Unicast(peer) => {
                if self.current_neighbors(from, self.now).contains(&peer) {
                    self.maybe_send(from, peer, msg, delay)?;
                } else {
                    self.ledger.drops_disconnected += 1;
                }
            }
        }
        Ok(())
    }

    fn maybe_send(
        &mut self,
        from: NodeId,
        dest: NodeId,
        msg: Message,
        delay: Seconds,
    ) -> Result<(), SimError> {
        if self.loss_rng.random::<f64>() < self.link.loss_prob {
            self.ledger.drops_loss += 1;
            return Ok(());
        }
        self.schedule(self.now + delay, EventKind::MsgArrival { dest, from, msg })
    }
}

fn disk_neighbors(
    nodes: &[SimNode],
    positions: &[(f64, f64)],
    idx: usize,
    radius: f64,
) -> Vec<NodeId> {
    let (x, y) = positions[idx];
    let r2 = radius * radius;
    let mut out: Vec<NodeId> = nodes
        .iter()
        .enumerate()
        .filter(|(j, _)| *j != idx)
        .filter(|(j, _)| {
            let (px, py) = positions[*j];
            (px - x).powi(2) + (py - y).powi(2) <= r2
        })
        .map(|(_, n)| n.id)
        .collect();
    out.sort();
    out
}

/// App-side feedback skeleton; the engine stamps id, origin, time and hop
/// limit on the APP path.
fn feedback_template(target: keetchi::model::DataName, valence: Valence, now: Seconds) -> FeedbackMessage {
    FeedbackMessage {
        msg_id: next_msg_id(NodeId(u64::MAX), u64::MAX),
        target,
        valence,
        origin: NodeId(u64::MAX),
        created_at: now,
        hop_count: 0,
        hop_limit: 1,
    }
}
