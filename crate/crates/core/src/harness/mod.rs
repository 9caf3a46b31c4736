//! Scenario files, trace verification, demos and seed sweeps.

pub mod bounds;
mod demo;
mod scenario;
mod sweep;
mod verify;

pub use demo::{demo, Bound, Cell, DemoId, DemoReport, DemoRow};
pub use scenario::{parse_scenario, GoldenId, Placement, Scenario, ScheduleSource};
pub use sweep::{parse_seed_range, sweep, SweepStats};
pub use verify::{verify_trace, RunMetrics, VerifyReport};
