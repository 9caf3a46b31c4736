//! Deterministic simulation of mobile agents on adversarial dynamic graphs.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`] holds round snapshots of an anonymous port-labelled graph,
//!   finite schedules, and the three connectivity classifiers
//!   (T-Interval, T-Path, Connectivity Time).
//! * [`adversary`] produces schedules: seeded generators that guarantee a
//!   connectivity property, and adaptive constructions that read the live
//!   agent configuration to force lower bounds or impossibility.
//! * [`engine`] runs synchronous Communicate-Compute-Move rounds and records
//!   a replayable trace.
//! * [`algorithms`] contains the agent step functions.
//! * [`harness`] parses scenarios, verifies traces, and runs the demos and
//!   seed sweeps used by the CLI.

pub mod adversary;
pub mod algorithms;
pub mod engine;
pub mod error;
pub mod graph;
pub mod harness;

pub use adversary::{Adversary, AdversaryKind, Oracle};
pub use algorithms::{Action, Algorithm, AlgorithmKind, Decision};
pub use engine::{
    AgentId, AgentState, Communication, Configuration, RunConfig, RunReport, TraceRecord,
    Visibility,
};
pub use error::{AdversaryError, EngineError, GraphError, ScenarioError, TraceError};
pub use graph::{
    check_property, components, minimal_t, window_graph, ConnectivityReport, Edge, NodeId,
    Property, Schedule, Snapshot, TraceSchedule, WindowMode,
};
