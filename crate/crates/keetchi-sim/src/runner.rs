//! Build a simulator from a scenario config and run it to completion.

use std::path::Path;

use keetchi::engine::{Engine, Params};

use crate::apps::{ConsumerState, GeneratorState};
use crate::config::{MobilityConfig, ScenarioConfig};
use crate::error::SimError;
use crate::netsim::mobility::{MobilityRuntime, WaypointWalker};
use crate::netsim::trace::load_contact_trace;
use crate::netsim::{
    derive_rng, AppTimerKind, EventKind, Sim, SimNode, RNG_TAG_APP, RNG_TAG_MOBILITY,
};
use crate::stats::StatsLedger;

/// Construct the world: engines, apps, mobility, and the initial event set
/// (per-node beacons at time zero, app timers, trace contact events).
pub fn build_sim(cfg: &ScenarioConfig) -> Result<Sim, SimError> {
    cfg.validate()?;
    let resolved = cfg.resolve_nodes()?;
    let params = Params {
        learning: cfg.learning,
        store: cfg.store,
        engine: cfg.engine,
    };

    let mut nodes = Vec::with_capacity(resolved.len());
    for spec in &resolved {
        let engine = Engine::new(spec.id, params)?;
        let generator = spec.generator.clone().map(GeneratorState::new);
        let consumer = spec.consumer.clone().map(ConsumerState::new);
        nodes.push(SimNode::new(
            spec.id,
            engine,
            generator,
            consumer,
            derive_rng(cfg.seed, RNG_TAG_APP, spec.id.0),
        ));
    }

    let mobility = match &cfg.mobility {
        MobilityConfig::Static(st) => {
            let positions = if st.positions.is_empty() {
                vec![(0.0, 0.0); nodes.len()]
            } else {
                st.positions.iter().map(|p| (p[0], p[1])).collect()
            };
            MobilityRuntime::Static(positions)
        }
        MobilityConfig::RandomWaypoint(wp) => {
            let walkers = resolved
                .iter()
                .map(|spec| {
                    WaypointWalker::new(
                        wp.width,
                        wp.height,
                        wp.speed_min,
                        wp.speed_max,
                        wp.pause,
                        derive_rng(cfg.seed, RNG_TAG_MOBILITY, spec.id.0),
                    )
                })
                .collect();
            MobilityRuntime::Waypoint(walkers)
        }
        MobilityConfig::Trace(tr) => {
            let trace = load_contact_trace(Path::new(&tr.path))?;
            for id in trace.node_ids() {
                if !resolved.iter().any(|n| n.id == id) {
                    return Err(SimError::config(
                        "mobility.trace",
                        format!("trace mentions unknown node {id}"),
                    ));
                }
            }
            MobilityRuntime::Trace(trace)
        }
    };

    let mut sim = Sim::new(nodes, mobility, cfg.link, cfg.seed);
    schedule_initial_events(&mut sim, &resolved)?;
    Ok(sim)
}

fn schedule_initial_events(
    sim: &mut Sim,
    resolved: &[crate::config::ResolvedNode],
) -> Result<(), SimError> {
    for spec in resolved {
        sim.schedule(0.0, EventKind::Beacon(spec.id))?;
        if let Some(generator) = &spec.generator {
            sim.schedule(
                generator.start.max(0.0),
                EventKind::AppTimer {
                    node: spec.id,
                    which: AppTimerKind::Generator,
                },
            )?;
        }
        if let Some(consumer) = &spec.consumer {
            if let Some(at) = consumer.announce_at {
                sim.schedule(
                    at,
                    EventKind::AppTimer {
                        node: spec.id,
                        which: AppTimerKind::Announce,
                    },
                )?;
            }
        }
    }
    sim.schedule_trace_events()?;
    Ok(())
}

/// Build, run for the configured duration, and return the finished ledger.
pub fn run_scenario(cfg: &ScenarioConfig) -> Result<StatsLedger, SimError> {
    let mut sim = build_sim(cfg)?;
    sim.run(cfg.duration)?;
    Ok(sim.finish())
}
