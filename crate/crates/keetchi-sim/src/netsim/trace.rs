//! Contact-trace files: text lines `time_s,node_a,node_b,event` with event
//! `up` or `down`, ascending times, `#` comments. A contact is active over
//! the half-open interval [up, down).

use std::collections::HashMap;
use std::path::Path;

use keetchi::model::{NodeId, Seconds};

use crate::error::SimError;

/// One connectivity change from a trace file.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContactEvent {
    pub at: Seconds,
    pub a: NodeId,
    pub b: NodeId,
    pub up: bool,
    pub line: usize,
}

/// Validated trace with a per-node interval index for neighbor queries.
#[derive(Debug, Clone, Default)]
pub struct ContactTrace {
    events: Vec<ContactEvent>,
    intervals: HashMap<NodeId, Vec<(NodeId, Seconds, Seconds)>>,
}

impl ContactTrace {
    /// Validate pairing (no down before up, no double up, everything closed)
    /// and build the interval index.
    pub fn from_events(events: Vec<ContactEvent>) -> Result<Self, SimError> {
        let mut open: HashMap<(NodeId, NodeId), (Seconds, usize)> = HashMap::new();
        let mut intervals: HashMap<NodeId, Vec<(NodeId, Seconds, Seconds)>> = HashMap::new();
        let mut last_at = f64::NEG_INFINITY;
        for ev in &events {
            if ev.at < last_at {
                return Err(SimError::MalformedTrace {
                    line: ev.line,
                    reason: format!("timestamp {} decreases", ev.at),
                });
            }
            last_at = ev.at;
            if ev.a == ev.b {
                return Err(SimError::MalformedTrace {
                    line: ev.line,
                    reason: "contact with itself".into(),
                });
            }
            let pair = if ev.a <= ev.b {
                (ev.a, ev.b)
            } else {
                (ev.b, ev.a)
            };
            if ev.up {
                if open.insert(pair, (ev.at, ev.line)).is_some() {
                    return Err(SimError::MalformedTrace {
                        line: ev.line,
                        reason: format!("contact {}-{} already up", pair.0, pair.1),
                    });
                }
            } else {
                let Some((start, _)) = open.remove(&pair) else {
                    return Err(SimError::MalformedTrace {
                        line: ev.line,
                        reason: format!("down for {}-{} without prior up", pair.0, pair.1),
                    });
                };
                intervals.entry(pair.0).or_default().push((pair.1, start, ev.at));
                intervals.entry(pair.1).or_default().push((pair.0, start, ev.at));
            }
        }
        if let Some((pair, (_, line))) = open.iter().min_by_key(|(_, (_, line))| *line) {
            return Err(SimError::MalformedTrace {
                line: *line,
                reason: format!("contact {}-{} never closed", pair.0, pair.1),
            });
        }
        Ok(ContactTrace { events, intervals })
    }

    pub fn events(&self) -> &[ContactEvent] {
        &self.events
    }

    /// Peers with an open contact covering `now`, sorted by node id.
    pub fn neighbors_at(&self, node: NodeId, now: Seconds) -> Vec<NodeId> {
        let mut peers: Vec<NodeId> = self
            .intervals
            .get(&node)
            .into_iter()
            .flatten()
            .filter(|(_, start, end)| *start <= now && now < *end)
            .map(|(peer, _, _)| *peer)
            .collect();
        peers.sort();
        peers.dedup();
        peers
    }

    /// Every node id mentioned anywhere in the trace.
    pub fn node_ids(&self) -> Vec<NodeId> {
        let mut ids: Vec<NodeId> = self
            .events
            .iter()
            .flat_map(|ev| [ev.a, ev.b])
            .collect();
        ids.sort();
        ids.dedup();
        ids
    }
}

/// Parse trace text. Line numbers are 1-based; blank lines and lines
/// starting with `#` are skipped.
pub fn parse_contact_trace(text: &str) -> Result<Vec<ContactEvent>, SimError> {
    let mut events = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split(',').map(str::trim).collect();
        if fields.len() != 4 {
            return Err(SimError::MalformedTrace {
                line,
                reason: format!("expected 4 fields, got {}", fields.len()),
            });
        }
        let at: Seconds = fields[0].parse().map_err(|_| SimError::MalformedTrace {
            line,
            reason: format!("bad time `{}`", fields[0]),
        })?;
        let a: u64 = fields[1].parse().map_err(|_| SimError::MalformedTrace {
            line,
            reason: format!("bad node id `{}`", fields[1]),
        })?;
        let b: u64 = fields[2].parse().map_err(|_| SimError::MalformedTrace {
            line,
            reason: format!("bad node id `{}`", fields[2]),
        })?;
        let up = match fields[3] {
            "up" => true,
            "down" => false,
            other => {
                return Err(SimError::MalformedTrace {
                    line,
                    reason: format!("event must be up or down, got `{other}`"),
                })
            }
        };
        events.push(ContactEvent {
            at,
            a: NodeId(a),
            b: NodeId(b),
            up,
            line,
        });
    }
    Ok(events)
}

/// Load and validate a trace file.
pub fn load_contact_trace(path: &Path) -> Result<ContactTrace, SimError> {
    let text = std::fs::read_to_string(path).map_err(|source| SimError::Io {
        path: path.to_owned(),
        source,
    })?;
    ContactTrace::from_events(parse_contact_trace(&text)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trace(text: &str) -> Result<ContactTrace, SimError> {
        ContactTrace::from_events(parse_contact_trace(text)?)
    }

    #[test]
    fn single_contact_interval() {
        let t = trace("0.0,1,2,up\n30.0,1,2,down").unwrap();
        assert_eq!(t.neighbors_at(NodeId(1), 15.0), vec![NodeId(2)]);
        assert_eq!(t.neighbors_at(NodeId(2), 15.0), vec![NodeId(1)]);
        assert!(t.neighbors_at(NodeId(1), 30.0).is_empty());
        assert!(t.neighbors_at(NodeId(1), 45.0).is_empty());
        // closed at the start
        assert_eq!(t.neighbors_at(NodeId(1), 0.0), vec![NodeId(2)]);
    }

    #[test]
    fn down_without_up_rejected() {
        let err = trace("5.0,1,2,down").unwrap_err();
        assert!(matches!(err, SimError::MalformedTrace { line: 1, .. }));
    }

    #[test]
    fn decreasing_timestamps_rejected() {
        let err = trace("10.0,1,2,up\n5.0,1,2,down").unwrap_err();
        assert!(matches!(err, SimError::MalformedTrace { line: 2, .. }));
    }

    #[test]
    fn unclosed_contact_rejected() {
        let err = trace("0.0,1,2,up").unwrap_err();
        assert!(matches!(err, SimError::MalformedTrace { line: 1, .. }));
    }

    #[test]
    fn double_up_rejected() {
        let err = trace("0.0,1,2,up\n1.0,2,1,up\n2.0,1,2,down").unwrap_err();
        assert!(matches!(err, SimError::MalformedTrace { line: 2, .. }));
    }

    #[test]
    fn comments_and_blanks_skipped() {
        let t = trace("# a comment\n\n0.0,1,2,up\n30.0,1,2,down\n").unwrap();
        assert_eq!(t.events().len(), 2);
    }

    #[test]
    fn bad_fields_reported_with_line() {
        assert!(matches!(
            trace("0.0,1,2,sideways").unwrap_err(),
            SimError::MalformedTrace { line: 1, .. }
        ));
        assert!(matches!(
            trace("zero,1,2,up").unwrap_err(),
            SimError::MalformedTrace { line: 1, .. }
        ));
        assert!(matches!(
            trace("0.0,1,1,up").unwrap_err(),
            SimError::MalformedTrace { line: 1, .. }
        ));
    }
}
