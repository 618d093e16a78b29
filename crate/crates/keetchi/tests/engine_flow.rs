//! Multi-engine flows driven by a hand-rolled relay harness.

use keetchi::engine::{EmissionTarget, Engine, LinkDest, Params, StatKind};
use keetchi::model::{
    next_msg_id, DataMessage, DataName, FeedbackMessage, LayerSource, Message, NodeId, Valence,
};

fn name(text: &str) -> DataName {
    DataName::parse(text).unwrap()
}

fn feedback(text: &str, valence: Valence) -> FeedbackMessage {
    FeedbackMessage {
        msg_id: next_msg_id(NodeId(0), u64::MAX),
        target: name(text),
        valence,
        origin: NodeId(0),
        created_at: 0.0,
        hop_count: 0,
        hop_limit: 1,
    }
}

/// Deliver every link broadcast to all other engines until the network goes
/// quiet, then count feedback sends.
fn flood_feedback(n: usize) -> (usize, Vec<f64>) {
    let mut engines: Vec<Engine> = (0..n)
        .map(|i| Engine::new(NodeId(i as u64), Params::default()).unwrap())
        .collect();
    let mut now = 1.0;
    let first = engines[0]
        .process_feedback_msg(LayerSource::App, feedback("/topic", Valence::Positive), now)
        .unwrap();

    // queue of (destination index, feedback message)
    let mut pending: Vec<(usize, FeedbackMessage)> = Vec::new();
    let enqueue = |pending: &mut Vec<(usize, FeedbackMessage)>, from: usize, msg: &Message| {
        if let Message::Feedback(fb) = msg {
            for dest in 0..n {
                if dest != from {
                    pending.push((dest, fb.clone()));
                }
            }
        }
    };
    for em in &first.emissions {
        assert!(matches!(em.to, EmissionTarget::Link(LinkDest::Broadcast)));
        enqueue(&mut pending, 0, &em.msg);
    }

    let mut rounds = 0;
    while !pending.is_empty() {
        rounds += 1;
        assert!(rounds < 100, "feedback flood failed to settle");
        now += 1.0;
        let batch = std::mem::take(&mut pending);
        for (dest, fb) in batch {
            let action = engines[dest]
                .process_feedback_msg(LayerSource::Link, fb, now)
                .unwrap();
            for em in &action.emissions {
                enqueue(&mut pending, dest, &em.msg);
            }
        }
    }

    let sent: usize = engines
        .iter_mut()
        .map(|e| {
            e.drain_stats()
                .iter()
                .filter(|s| s.kind == StatKind::FeedbackSent)
                .count()
        })
        .sum();
    let q_values = engines
        .iter()
        .map(|e| e.store().effective_q(&name("/topic"), 0.0).q)
        .collect();
    (sent, q_values)
}

#[test]
fn feedback_flood_is_contained() {
    // one app feedback in a fully connected network stays within
    // n * hop_limit link emissions, and every node's q moves toward +1
    for n in 2..=6 {
        let hop_limit = Params::default().engine.feedback_hop_limit as usize;
        let (sent, q_values) = flood_feedback(n);
        assert!(
            sent <= n * hop_limit,
            "n={n}: {sent} sends exceeds {}",
            n * hop_limit
        );
        assert!(sent >= 1);
        for q in q_values {
            assert!(q > 0.0, "n={n}: q did not move toward +1");
        }
    }
}

#[test]
fn publish_feedback_targeted_resend_round_trip() {
    let mut a = Engine::new(NodeId(1), Params::default()).unwrap();
    let mut b = Engine::new(NodeId(2), Params::default()).unwrap();

    // A publishes; the broadcast reaches B
    let publish = a
        .process_data_msg(
            LayerSource::App,
            DataMessage {
                msg_id: next_msg_id(NodeId(1), u64::MAX),
                name: name("/news/item-0"),
                origin: NodeId(1),
                created_at: 0.0,
                payload_size: 64,
                hop_count: 0,
                validity: 3600.0,
            },
            1.0,
        )
        .unwrap();
    let Message::Data(item) = publish.emissions[0].msg.clone() else {
        panic!()
    };
    let arrival = b.process_data_msg(LayerSource::Link, item, 1.1).unwrap();
    assert!(arrival
        .stat_events
        .iter()
        .any(|s| s.kind == StatKind::AppDelivery));

    // B's app likes it; the feedback reaches A
    let fb_action = b
        .process_feedback_msg(LayerSource::App, feedback("/news", Valence::Positive), 1.2)
        .unwrap();
    let Message::Feedback(fb) = fb_action.emissions[0].msg.clone() else {
        panic!()
    };
    a.process_feedback_msg(LayerSource::Link, fb, 1.3).unwrap();

    // A now holds B's interest; a later item goes to B in the targeted phase
    let second = a
        .process_data_msg(
            LayerSource::App,
            DataMessage {
                msg_id: next_msg_id(NodeId(1), u64::MAX),
                name: name("/news/item-1"),
                origin: NodeId(1),
                created_at: 0.0,
                payload_size: 64,
                hop_count: 0,
                validity: 3600.0,
            },
            10.0,
        )
        .unwrap();
    assert_eq!(second.emissions.len(), 1); // broadcast only

    let contact = a.process_neighbor_list(&[NodeId(2)], 20.0).unwrap();
    let to_b: Vec<&Message> = contact
        .emissions
        .iter()
        .filter(|em| matches!(em.to, EmissionTarget::Link(LinkDest::Unicast(NodeId(2)))))
        .map(|em| &em.msg)
        .collect();
    assert!(
        to_b.iter()
            .any(|m| matches!(m, Message::Data(d) if d.name == name("/news/item-1"))),
        "targeted phase should carry the new item to B"
    );
}
