//! Opportunistic, information-centric communication engine.
//!
//! Named data items spread node to node whenever contacts arise; feedback
//! messages on names (or name prefixes) act as rewards that reinforce or
//! inhibit further dissemination. Each node runs one [`Engine`] holding its
//! cache, learned per-name quality estimates, neighbor map and interest
//! registry.
//!
//! The engine is sans-io and clock-injected: every call takes the current
//! time and returns a [`KAction`] telling the caller what to emit, so the
//! same code runs under a simulator or against real bearers.

pub mod engine;
pub mod error;
pub mod learning;
pub mod model;
pub mod store;

pub use engine::{
    Emission, EmissionTarget, Engine, EngineParams, KAction, LinkDest, Params, Snapshot, StatEvent,
    StatKind,
};
pub use error::Error;
pub use learning::{LearningParams, QEntry};
pub use model::{
    next_msg_id, DataMessage, DataName, FeedbackMessage, LayerSource, Message, MsgId, NodeId,
    Seconds, Valence,
};
pub use store::{
    CacheEntry, ContactKind, ExpiryReport, InterestRecord, NeighborRecord, NodeStore, StoreParams,
};
