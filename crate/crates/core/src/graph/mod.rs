//! Round snapshots, schedules, and connectivity classification.

mod connectivity;
mod schedule;
mod snapshot;

pub use connectivity::{
    check_property, components, minimal_t, window_graph, ConnectivityReport, Diameter, Property,
    Witness, WindowMode,
};
pub use schedule::{PeriodicSchedule, Schedule, TraceSchedule};
pub use snapshot::{Edge, NodeId, Port, Snapshot};
