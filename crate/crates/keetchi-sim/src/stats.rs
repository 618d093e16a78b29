//! Statistics ledger: raw stat events, publish/delivery records, derived
//! metrics and the three CSV outputs (`summary.csv`, `events.csv`,
//! `deliveries.csv`). Output is deterministic: stable column order, rows
//! sorted by (time, node, kind).

use std::collections::{BTreeMap, HashMap, HashSet};
use std::path::Path;

use keetchi::engine::{StatEvent, StatKind};
use keetchi::model::{DataName, NodeId, Seconds};

use crate::error::SimError;

/// One stat event attributed to a node.
#[derive(Debug, Clone, PartialEq)]
pub struct EventRow {
    pub at: Seconds,
    pub node: NodeId,
    pub kind: StatKind,
    pub name: Option<DataName>,
    pub peer: Option<NodeId>,
}

/// An application publish (the moment a generator handed data down).
#[derive(Debug, Clone, PartialEq)]
pub struct PublishRow {
    pub name: DataName,
    pub origin: NodeId,
    pub at: Seconds,
}

/// A first-time delivery of an item to a node's application layer.
#[derive(Debug, Clone, PartialEq)]
pub struct DeliveryRow {
    pub name: DataName,
    pub consumer: NodeId,
    pub deliver_t: Seconds,
    pub interested: bool,
}

/// Derived end-of-run metrics.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Metrics {
    /// Fraction of (item, interested-consumer) pairs that were delivered.
    pub interested_delivery_ratio: f64,
    /// Mean publish-to-delivery delay over all app deliveries, seconds.
    pub mean_delivery_delay: f64,
    pub data_sent_total: u64,
    pub feedback_sent_total: u64,
    /// Duplicate data receptions over all data receptions.
    pub duplicate_ratio: f64,
    /// Mean cache entries per node at the end of the run.
    pub mean_cache_occupancy: f64,
    pub eviction_count: u64,
}

/// Everything a run produces.
#[derive(Debug, Default)]
pub struct StatsLedger {
    pub events: Vec<EventRow>,
    pub publishes: Vec<PublishRow>,
    pub deliveries: Vec<DeliveryRow>,
    pub counters: BTreeMap<NodeId, BTreeMap<StatKind, u64>>,
    /// Unicast transmissions dropped because the peer was out of reach.
    pub drops_disconnected: u64,
    /// Transmissions lost to the link loss probability.
    pub drops_loss: u64,
    /// Data / feedback link arrivals actually processed.
    pub data_arrivals: u64,
    pub feedback_arrivals: u64,
    /// Cache contents per node at the end of the run.
    pub final_cache: BTreeMap<NodeId, Vec<DataName>>,
    /// Learned q per name per node at the end of the run.
    pub final_q: BTreeMap<NodeId, Vec<(DataName, f64)>>,
    pub metrics: Metrics,
}

impl StatsLedger {
    pub fn record_stat(&mut self, node: NodeId, ev: &StatEvent) {
        *self
            .counters
            .entry(node)
            .or_default()
            .entry(ev.kind)
            .or_insert(0) += 1;
        self.events.push(EventRow {
            at: ev.at,
            node,
            kind: ev.kind,
            name: ev.name.clone(),
            peer: ev.peer,
        });
    }

    pub fn record_publish(&mut self, name: DataName, origin: NodeId, at: Seconds) {
        self.publishes.push(PublishRow { name, origin, at });
    }

    pub fn record_delivery(
        &mut self,
        name: DataName,
        consumer: NodeId,
        deliver_t: Seconds,
        interested: bool,
    ) {
        self.deliveries.push(DeliveryRow {
            name,
            consumer,
            deliver_t,
            interested,
        });
    }

    pub fn count(&self, node: NodeId, kind: StatKind) -> u64 {
        self.counters
            .get(&node)
            .and_then(|by_kind| by_kind.get(&kind))
            .copied()
            .unwrap_or(0)
    }

    pub fn total(&self, kind: StatKind) -> u64 {
        self.counters
            .values()
            .filter_map(|by_kind| by_kind.get(&kind))
            .sum()
    }

    /// First publish per name: origin and publish time.
    pub fn publish_index(&self) -> HashMap<&DataName, (NodeId, Seconds)> {
        let mut index = HashMap::new();
        for row in &self.publishes {
            index.entry(&row.name).or_insert((row.origin, row.at));
        }
        index
    }

    /// Compute the derived metrics. `interested_pairs` is the number of
    /// (item, interested-consumer) pairs the scenario offered; the caller
    /// knows the consumers' preferences.
    pub fn finalize_metrics(&mut self, interested_pairs: usize, node_count: usize) {
        let publish_index = self.publish_index();
        let delivered_interested: HashSet<(&DataName, NodeId)> = self
            .deliveries
            .iter()
            .filter(|d| d.interested)
            .map(|d| (&d.name, d.consumer))
            .collect();
        let delays: Vec<f64> = self
            .deliveries
            .iter()
            .filter_map(|d| {
                publish_index
                    .get(&d.name)
                    .map(|(_, publish_t)| d.deliver_t - publish_t)
            })
            .collect();
        let new = self.total(StatKind::DataRecvNew);
        let dup = self.total(StatKind::DataRecvDup);
        let cache_total: usize = self.final_cache.values().map(Vec::len).sum();
        self.metrics = Metrics {
            interested_delivery_ratio: if interested_pairs == 0 {
                0.0
            } else {
                delivered_interested.len() as f64 / interested_pairs as f64
            },
            mean_delivery_delay: if delays.is_empty() {
                0.0
            } else {
                delays.iter().sum::<f64>() / delays.len() as f64
            },
            data_sent_total: self.total(StatKind::DataSent),
            feedback_sent_total: self.total(StatKind::FeedbackSent),
            duplicate_ratio: if new + dup == 0 {
                0.0
            } else {
                dup as f64 / (new + dup) as f64
            },
            mean_cache_occupancy: if node_count == 0 {
                0.0
            } else {
                cache_total as f64 / node_count as f64
            },
            eviction_count: self.total(StatKind::CacheEviction),
        };
    }
}

fn write_file(dir: &Path, file: &str, bytes: Vec<u8>) -> Result<(), SimError> {
    let path = dir.join(file);
    std::fs::write(&path, bytes).map_err(|source| SimError::Io { path, source })
}

fn opt_string<T: ToString>(value: &Option<T>) -> String {
    value.as_ref().map(T::to_string).unwrap_or_default()
}

/// Write `summary.csv`, `events.csv` and `deliveries.csv` into `out_dir`.
/// Identical ledgers produce byte-identical files.
pub fn write_stats(ledger: &StatsLedger, out_dir: &Path) -> Result<(), SimError> {
    std::fs::create_dir_all(out_dir).map_err(|source| SimError::Io {
        path: out_dir.to_owned(),
        source,
    })?;

    let m = &ledger.metrics;
    let mut summary = csv::Writer::from_writer(Vec::new());
    summary
        .write_record(["metric", "value"])
        .expect("writing to memory");
    for (metric, value) in [
        ("interested_delivery_ratio", m.interested_delivery_ratio.to_string()),
        ("mean_delivery_delay_s", m.mean_delivery_delay.to_string()),
        ("data_sent_total", m.data_sent_total.to_string()),
        ("feedback_sent_total", m.feedback_sent_total.to_string()),
        ("duplicate_ratio", m.duplicate_ratio.to_string()),
        ("mean_cache_occupancy", m.mean_cache_occupancy.to_string()),
        ("eviction_count", m.eviction_count.to_string()),
    ] {
        summary
            .write_record([metric, &value])
            .expect("writing to memory");
    }
    write_file(out_dir, "summary.csv", summary.into_inner().expect("writing to memory"))?;

    let mut rows: Vec<&EventRow> = ledger.events.iter().collect();
    rows.sort_by(|a, b| {
        a.at.partial_cmp(&b.at)
            .expect("event times are finite")
            .then(a.node.cmp(&b.node))
            .then(a.kind.cmp(&b.kind))
    });
    let mut events = csv::Writer::from_writer(Vec::new());
    events
        .write_record(["time_s", "node", "kind", "name", "peer"])
        .expect("writing to memory");
    for row in rows {
        events
            .write_record([
                row.at.to_string(),
                row.node.to_string(),
                row.kind.as_str().to_string(),
                opt_string(&row.name),
                opt_string(&row.peer),
            ])
            .expect("writing to memory");
    }
    write_file(out_dir, "events.csv", events.into_inner().expect("writing to memory"))?;

    let publish_index = ledger.publish_index();
    let mut deliveries: Vec<&DeliveryRow> = ledger.deliveries.iter().collect();
    deliveries.sort_by(|a, b| {
        a.deliver_t
            .partial_cmp(&b.deliver_t)
            .expect("delivery times are finite")
            .then(a.consumer.cmp(&b.consumer))
            .then(a.name.cmp(&b.name))
    });
    let mut out = csv::Writer::from_writer(Vec::new());
    out.write_record(["name", "origin", "consumer", "publish_t", "deliver_t", "interested"])
        .expect("writing to memory");
    for row in deliveries {
        let publish = publish_index.get(&row.name);
        out.write_record([
            row.name.to_string(),
            opt_string(&publish.map(|(origin, _)| *origin)),
            row.consumer.to_string(),
            opt_string(&publish.map(|(_, at)| *at)),
            row.deliver_t.to_string(),
            row.interested.to_string(),
        ])
        .expect("writing to memory");
    }
    write_file(out_dir, "deliveries.csv", out.into_inner().expect("writing to memory"))?;
    Ok(())
}
