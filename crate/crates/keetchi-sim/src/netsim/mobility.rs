//! Node mobility: fixed positions, random waypoint, or contact-trace replay
//! (which has no positions at all).

use keetchi::model::Seconds;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::trace::ContactTrace;

/// Where nodes are, or how contacts arise, during a run.
#[derive(Debug)]
pub enum MobilityRuntime {
    /// Fixed position per node, by node index.
    Static(Vec<(f64, f64)>),
    /// One independent waypoint walker per node.
    Waypoint(Vec<WaypointWalker>),
    /// Connectivity replayed from a trace; positions undefined.
    Trace(ContactTrace),
}

#[derive(Debug, Clone, Copy)]
struct Leg {
    start: Seconds,
    end: Seconds,
    from: (f64, f64),
    to: (f64, f64),
}

/// Random-waypoint walk over a rectangle: pick a destination and speed,
/// travel in a straight line, pause, repeat. Legs are generated lazily from
/// the walker's own RNG stream, so positions are deterministic regardless
/// of query order.
#[derive(Debug)]
pub struct WaypointWalker {
    width: f64,
    height: f64,
    speed_min: f64,
    speed_max: f64,
    pause: Seconds,
    rng: ChaCha8Rng,
    legs: Vec<Leg>,
    pause_next: bool,
}

impl WaypointWalker {
    pub fn new(
        width: f64,
        height: f64,
        speed_min: f64,
        speed_max: f64,
        pause: Seconds,
        rng: ChaCha8Rng,
    ) -> Self {
        WaypointWalker {
            width,
            height,
            speed_min,
            speed_max,
            pause,
            rng,
            legs: Vec::new(),
            pause_next: false,
        }
    }

    fn random_point(&mut self) -> (f64, f64) {
        (
            self.rng.random_range(0.0..=self.width),
            self.rng.random_range(0.0..=self.height),
        )
    }

    fn push_next_leg(&mut self) {
        let last = self.legs.last().map(|leg| (leg.to, leg.end));
        let (pos, time) = match last {
            Some(cursor) => cursor,
            None => (self.random_point(), 0.0),
        };
        if self.pause_next && self.pause > 0.0 {
            self.legs.push(Leg {
                start: time,
                end: time + self.pause,
                from: pos,
                to: pos,
            });
            self.pause_next = false;
            return;
        }
        loop {
            let dest = self.random_point();
            let speed = self.rng.random_range(self.speed_min..=self.speed_max);
            let dist = ((dest.0 - pos.0).powi(2) + (dest.1 - pos.1).powi(2)).sqrt();
            if dist > 0.0 {
                self.legs.push(Leg {
                    start: time,
                    end: time + dist / speed,
                    from: pos,
                    to: dest,
                });
                break;
            }
        }
        self.pause_next = true;
    }

    /// Position at time `t`, interpolated linearly along the current leg.
    pub fn position(&mut self, t: Seconds) -> (f64, f64) {
        while self.legs.last().is_none_or(|leg| leg.end < t) {
            self.push_next_leg();
        }
        let idx = self.legs.partition_point(|leg| leg.end < t);
        let leg = &self.legs[idx];
        if leg.end <= leg.start {
            return leg.from;
        }
        let frac = ((t - leg.start) / (leg.end - leg.start)).clamp(0.0, 1.0);
        (
            leg.from.0 + (leg.to.0 - leg.from.0) * frac,
            leg.from.1 + (leg.to.1 - leg.from.1) * frac,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn linear_motion_along_a_leg() {
        let mut walker = WaypointWalker::new(
            100.0,
            100.0,
            1.0,
            1.0,
            0.0,
            ChaCha8Rng::seed_from_u64(3),
        );
        // force a known first leg
        walker.legs.push(Leg {
            start: 0.0,
            end: 10.0,
            from: (0.0, 0.0),
            to: (10.0, 0.0),
        });
        assert_eq!(walker.position(4.0), (4.0, 0.0));
        assert_eq!(walker.position(0.0), (0.0, 0.0));
        assert_eq!(walker.position(10.0), (10.0, 0.0));
    }

    #[test]
    fn positions_stay_inside_area() {
        let mut walker = WaypointWalker::new(
            200.0,
            80.0,
            0.5,
            3.0,
            5.0,
            ChaCha8Rng::seed_from_u64(42),
        );
        let mut query_rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10_000 {
            let t: f64 = query_rng.random_range(0.0..5_000.0);
            let (x, y) = walker.position(t);
            assert!((0.0..=200.0).contains(&x), "x={x} out of area at t={t}");
            assert!((0.0..=80.0).contains(&y), "y={y} out of area at t={t}");
        }
    }

    #[test]
    fn deterministic_regardless_of_query_order() {
        let make = || {
            WaypointWalker::new(50.0, 50.0, 1.0, 2.0, 2.0, ChaCha8Rng::seed_from_u64(9))
        };
        let mut forward = make();
        let mut scattered = make();
        let times = [5.0, 100.0, 42.0, 7.0, 250.0, 0.0];
        let mut sorted = times;
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let reference: Vec<(f64, (f64, f64))> =
            sorted.iter().map(|&t| (t, forward.position(t))).collect();
        for &(t, expected) in &reference {
            let _ = scattered.position(250.0); // extend legs early
            assert_eq!(scattered.position(t), expected);
        }
    }
}
