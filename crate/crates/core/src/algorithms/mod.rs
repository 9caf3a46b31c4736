//! Agent step functions.
//!
//! A step is a pure function of the agent's persistent state, its local
//! view, and the broadcasts it received this round.

mod plan;
mod steps;

use std::fmt;
use std::str::FromStr;

pub use plan::{disp_plan, SlidingPlan};

use crate::engine::{AgentState, Broadcast, LocalView};
use crate::error::EngineError;
use crate::graph::Port;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Action {
    Stay,
    Move(Port),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Decision {
    pub action: Action,
    pub terminate: bool,
}

impl Decision {
    pub const STAY: Decision = Decision {
        action: Action::Stay,
        terminate: false,
    };
    pub const HALT: Decision = Decision {
        action: Action::Stay,
        terminate: true,
    };

    pub fn go(action: Action) -> Self {
        Decision {
            action,
            terminate: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AlgorithmKind {
    /// One sliding round whenever a multinode is heard; terminates on the
    /// first quiet round.
    Disp,
    Alg1Explicit,
    Alg1Implicit,
    Alg2,
    Alg3,
    DispersedOneRound,
    /// Never moves. Baseline.
    Stay,
    /// Without a multinode in sight, the least agent of the component walks
    /// through port 0. Baseline for blind agents.
    Port0Greedy,
}

impl AlgorithmKind {
    pub const ALL: [AlgorithmKind; 8] = [
        AlgorithmKind::Disp,
        AlgorithmKind::Alg1Explicit,
        AlgorithmKind::Alg1Implicit,
        AlgorithmKind::Alg2,
        AlgorithmKind::Alg3,
        AlgorithmKind::DispersedOneRound,
        AlgorithmKind::Stay,
        AlgorithmKind::Port0Greedy,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AlgorithmKind::Disp => "disp",
            AlgorithmKind::Alg1Explicit => "alg1_explicit",
            AlgorithmKind::Alg1Implicit => "alg1_implicit",
            AlgorithmKind::Alg2 => "alg2",
            AlgorithmKind::Alg3 => "alg3",
            AlgorithmKind::DispersedOneRound => "dispersed_one_round",
            AlgorithmKind::Stay => "stay",
            AlgorithmKind::Port0Greedy => "port0_greedy",
        }
    }
}

impl fmt::Display for AlgorithmKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AlgorithmKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        AlgorithmKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown algorithm `{s}`"))
    }
}

/// A step function plus the constants it was granted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Algorithm {
    pub kind: AlgorithmKind,
    /// Known window length; only the explicit dispersion variant reads it.
    pub window: Option<u32>,
}

impl Algorithm {
    pub fn new(kind: AlgorithmKind) -> Self {
        Algorithm { kind, window: None }
    }

    pub fn alg1_explicit(t: u32) -> Self {
        Algorithm {
            kind: AlgorithmKind::Alg1Explicit,
            window: Some(t),
        }
    }

    pub fn name(&self) -> &'static str {
        self.kind.name()
    }

    pub fn step(
        &self,
        state: &AgentState,
        view: &LocalView,
        msgs: &[Broadcast],
    ) -> Result<(Decision, AgentState), EngineError> {
        use AlgorithmKind::*;
        match self.kind {
            Disp => steps::disp(state, view, msgs),
            Alg1Explicit => steps::alg1(state, view, msgs, Some(self.window.unwrap_or(1))),
            Alg1Implicit => steps::alg1(state, view, msgs, None),
            Alg2 => steps::alg2(state, view, msgs),
            Alg3 => steps::alg3(state, view, msgs),
            DispersedOneRound => Ok(steps::dispersed_one_round(state, view)),
            Stay => Ok((Decision::STAY, *state)),
            Port0Greedy => steps::port0_greedy(state, view, msgs),
        }
    }
}
