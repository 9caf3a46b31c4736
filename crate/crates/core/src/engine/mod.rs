//! Synchronous Communicate-Compute-Move execution.

mod config;
mod knowledge;
mod run;
mod trace;
mod view;

use std::fmt;
use std::str::FromStr;

pub use config::{apply_decisions, Configuration};
pub use knowledge::{stitch_component, ComponentKnowledge, Vertex};
pub use run::{compute_preview, run, Outcome, RunConfig, RunReport};
pub use trace::{ActionCode, RoundRecord, TraceRecord};
pub use view::{build_view, deliver, Broadcast, Delivery, LocalView, PortView};

/// Agent identifier, starting at 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AgentId(pub u32);

impl AgentId {
    pub fn index(self) -> usize {
        self.0 as usize - 1
    }

    pub fn from_index(i: usize) -> Self {
        AgentId(i as u32 + 1)
    }
}

impl fmt::Display for AgentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a{}", self.0)
    }
}

/// Everything an agent carries from one round to the next.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AgentState {
    pub id: AgentId,
    pub t: u32,
    pub terminated: bool,
}

impl AgentState {
    pub const ENCODED_LEN: usize = 9;

    pub fn new(id: AgentId) -> Self {
        AgentState {
            id,
            t: 0,
            terminated: false,
        }
    }

    /// Fixed-width encoding used by the persistent-state audit.
    pub fn to_bytes(&self) -> [u8; Self::ENCODED_LEN] {
        let mut out = [0u8; Self::ENCODED_LEN];
        out[..4].copy_from_slice(&self.id.0.to_le_bytes());
        out[4..8].copy_from_slice(&self.t.to_le_bytes());
        out[8] = self.terminated as u8;
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Visibility {
    OneHop,
    ZeroHop,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Communication {
    Global,
    FaceToFace,
}

impl Visibility {
    pub fn name(self) -> &'static str {
        match self {
            Visibility::OneHop => "one_hop",
            Visibility::ZeroHop => "zero_hop",
        }
    }
}

impl Communication {
    pub fn name(self) -> &'static str {
        match self {
            Communication::Global => "global",
            Communication::FaceToFace => "f2f",
        }
    }
}

impl FromStr for Visibility {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "one_hop" => Ok(Visibility::OneHop),
            "zero_hop" => Ok(Visibility::ZeroHop),
            _ => Err(format!("unknown visibility `{s}`")),
        }
    }
}

impl FromStr for Communication {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "global" => Ok(Communication::Global),
            "f2f" => Ok(Communication::FaceToFace),
            _ => Err(format!("unknown communication `{s}`")),
        }
    }
}
