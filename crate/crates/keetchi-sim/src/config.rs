//! Scenario configuration: JSON, UTF-8, unknown keys rejected. Every
//! parameter group is optional and falls back to its defaults.

use std::collections::HashSet;
use std::path::Path;

use keetchi::engine::EngineParams;
use keetchi::learning::LearningParams;
use keetchi::model::{NodeId, Seconds};
use keetchi::store::StoreParams;
use serde::Deserialize;

use crate::apps::{ConsumerConfig, GeneratorConfig};
use crate::error::SimError;

fn default_radius() -> f64 {
    50.0
}
fn default_per_hop_delay() -> Seconds {
    0.1
}
fn default_beacon_interval() -> Seconds {
    10.0
}

/// Abstract link bearer: disk connectivity radius, fixed per-hop delay,
/// independent loss per transmission, optional bytes-per-second bandwidth
/// (off by default, making transmission time independent of payload size).
#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkConfig {
    #[serde(default = "default_radius")]
    pub radius: f64,
    #[serde(default = "default_per_hop_delay")]
    pub per_hop_delay: Seconds,
    #[serde(default)]
    pub loss_prob: f64,
    #[serde(default)]
    pub bandwidth: Option<f64>,
    #[serde(default = "default_beacon_interval")]
    pub beacon_interval: Seconds,
}

impl Default for LinkConfig {
    fn default() -> Self {
        LinkConfig {
            radius: default_radius(),
            per_hop_delay: default_per_hop_delay(),
            loss_prob: 0.0,
            bandwidth: None,
            beacon_interval: default_beacon_interval(),
        }
    }
}

impl LinkConfig {
    fn validate(&self) -> Result<(), SimError> {
        if !(self.radius > 0.0) {
            return Err(SimError::config("link.radius", "must be positive"));
        }
        if !(self.per_hop_delay >= 0.0) {
            return Err(SimError::config("link.per_hop_delay", "must not be negative"));
        }
        if !(0.0..1.0).contains(&self.loss_prob) {
            return Err(SimError::config("link.loss_prob", "must be in [0, 1)"));
        }
        if let Some(bw) = self.bandwidth {
            if !(bw > 0.0) {
                return Err(SimError::config("link.bandwidth", "must be positive"));
            }
        }
        if !(self.beacon_interval > 0.0) {
            return Err(SimError::config("link.beacon_interval", "must be positive"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct StaticMobility {
    /// One `[x, y]` per node, in node order. Empty means all nodes at the
    /// origin (fully connected).
    #[serde(default)]
    pub positions: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WaypointMobility {
    pub width: f64,
    pub height: f64,
    pub speed_min: f64,
    pub speed_max: f64,
    #[serde(default)]
    pub pause: Seconds,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TraceMobility {
    pub path: String,
}

/// Mobility model selector, e.g. `{"random_waypoint": {...}}`.
#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MobilityConfig {
    Static(StaticMobility),
    RandomWaypoint(WaypointMobility),
    Trace(TraceMobility),
}

impl Default for MobilityConfig {
    fn default() -> Self {
        MobilityConfig::Static(StaticMobility::default())
    }
}

impl MobilityConfig {
    fn validate(&self, node_count: usize) -> Result<(), SimError> {
        match self {
            MobilityConfig::Static(st) => {
                if !st.positions.is_empty() && st.positions.len() != node_count {
                    return Err(SimError::config(
                        "mobility.static.positions",
                        format!("{} positions for {} nodes", st.positions.len(), node_count),
                    ));
                }
            }
            MobilityConfig::RandomWaypoint(wp) => {
                if !(wp.width > 0.0) || !(wp.height > 0.0) {
                    return Err(SimError::config(
                        "mobility.random_waypoint",
                        "area must be positive",
                    ));
                }
                if !(wp.speed_min > 0.0) || wp.speed_max < wp.speed_min {
                    return Err(SimError::config(
                        "mobility.random_waypoint",
                        "need 0 < speed_min <= speed_max",
                    ));
                }
                if wp.pause < 0.0 {
                    return Err(SimError::config(
                        "mobility.random_waypoint.pause",
                        "must not be negative",
                    ));
                }
            }
            MobilityConfig::Trace(_) => {}
        }
        Ok(())
    }
}

/// A node in the explicit list form, optionally with its apps inline.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeDecl {
    pub id: u64,
    #[serde(default)]
    pub generator: Option<GeneratorConfig>,
    #[serde(default)]
    pub consumer: Option<ConsumerConfig>,
}

/// Node population: a plain count (ids 0..n) or an explicit list.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum NodeSpec {
    Count(u64),
    List(Vec<NodeDecl>),
}

/// Attach apps to one node or a set of nodes from the `apps` group.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AppBinding {
    #[serde(default)]
    pub node: Option<u64>,
    #[serde(default)]
    pub nodes: Option<Vec<u64>>,
    #[serde(default)]
    pub generator: Option<GeneratorConfig>,
    #[serde(default)]
    pub consumer: Option<ConsumerConfig>,
}

/// One fully resolved node: id plus its app configs.
#[derive(Debug, Clone)]
pub struct ResolvedNode {
    pub id: NodeId,
    pub generator: Option<GeneratorConfig>,
    pub consumer: Option<ConsumerConfig>,
}

/// A complete scenario. `validate` enforces all ranges and referential
/// integrity; `load_config` parses and validates in one step.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub seed: u64,
    pub duration: Seconds,
    pub nodes: NodeSpec,
    #[serde(default)]
    pub learning: LearningParams,
    #[serde(default)]
    pub store: StoreParams,
    #[serde(default)]
    pub engine: EngineParams,
    #[serde(default)]
    pub link: LinkConfig,
    #[serde(default)]
    pub mobility: MobilityConfig,
    #[serde(default)]
    pub apps: Vec<AppBinding>,
}

impl ScenarioConfig {
    /// Expand the node spec and fold in `apps` bindings. Rejects duplicate
    /// ids, references to unknown nodes and double app assignment.
    pub fn resolve_nodes(&self) -> Result<Vec<ResolvedNode>, SimError> {
        let mut nodes: Vec<ResolvedNode> = match &self.nodes {
            NodeSpec::Count(n) => (0..*n)
                .map(|id| ResolvedNode {
                    id: NodeId(id),
                    generator: None,
                    consumer: None,
                })
                .collect(),
            NodeSpec::List(decls) => decls
                .iter()
                .map(|d| ResolvedNode {
                    id: NodeId(d.id),
                    generator: d.generator.clone(),
                    consumer: d.consumer.clone(),
                })
                .collect(),
        };
        let mut seen = HashSet::new();
        for node in &nodes {
            if !seen.insert(node.id) {
                return Err(SimError::config(
                    "nodes",
                    format!("duplicate node id {}", node.id),
                ));
            }
        }
        for (i, binding) in self.apps.iter().enumerate() {
            let at = format!("apps[{i}]");
            let ids: Vec<u64> = match (&binding.node, &binding.nodes) {
                (Some(id), None) => vec![*id],
                (None, Some(ids)) if !ids.is_empty() => ids.clone(),
                _ => {
                    return Err(SimError::config(
                        at,
                        "exactly one of `node` or a non-empty `nodes` is required",
                    ))
                }
            };
            if binding.generator.is_none() && binding.consumer.is_none() {
                return Err(SimError::config(at, "binding assigns no apps"));
            }
            for id in ids {
                let Some(node) = nodes.iter_mut().find(|n| n.id == NodeId(id)) else {
                    return Err(SimError::config(at, format!("unknown node id {id}")));
                };
                if let Some(generator) = &binding.generator {
                    if node.generator.is_some() {
                        return Err(SimError::config(
                            at,
                            format!("node {id} already has a generator"),
                        ));
                    }
                    node.generator = Some(generator.clone());
                }
                if let Some(consumer) = &binding.consumer {
                    if node.consumer.is_some() {
                        return Err(SimError::config(
                            at,
                            format!("node {id} already has a consumer"),
                        ));
                    }
                    node.consumer = Some(consumer.clone());
                }
            }
        }
        Ok(nodes)
    }

    pub fn validate(&self) -> Result<(), SimError> {
        if !(self.duration >= 0.0) {
            return Err(SimError::config("duration", "must not be negative"));
        }
        map_param_err("learning", self.learning.validate())?;
        map_param_err("store", self.store.validate())?;
        map_param_err("engine", self.engine.validate())?;
        self.link.validate()?;
        let nodes = self.resolve_nodes()?;
        self.mobility.validate(nodes.len())?;
        for node in &nodes {
            let id = node.id;
            if let Some(generator) = &node.generator {
                generator.validate(&format!("node {id} generator"))?;
            }
            if let Some(consumer) = &node.consumer {
                consumer.validate(&format!("node {id} consumer"))?;
            }
        }
        Ok(())
    }
}

fn map_param_err(group: &str, res: Result<(), keetchi::Error>) -> Result<(), SimError> {
    res.map_err(|err| match err {
        keetchi::Error::InvalidParam { name, reason } => {
            SimError::config(format!("{group}.{name}"), reason)
        }
        other => SimError::config(group, other.to_string()),
    })
}

/// Parse a scenario file, returning a fully validated config with defaults
/// filled in.
pub fn load_config(path: &Path) -> Result<ScenarioConfig, SimError> {
    let text = std::fs::read_to_string(path).map_err(|source| SimError::Io {
        path: path.to_owned(),
        source,
    })?;
    let cfg: ScenarioConfig =
        serde_json::from_str(&text).map_err(|err| SimError::MalformedConfig {
            path: path.display().to_string(),
            reason: err.to_string(),
        })?;
    cfg.validate()?;
    Ok(cfg)
}
