//! Schedule producers: static schedules, seeded generators, and adaptive
//! constructions that react to the live configuration.

mod dispersion;
mod exploration;
pub mod golden;
mod random;
mod sorted_path;

use std::fmt;
use std::str::FromStr;

pub use dispersion::{CtDispersion, KtLower};
pub use exploration::{CtExploration, ExplorationStar, TwoStars};
pub use random::{gen_random_with_property, RandomSchedule};
pub use sorted_path::{PathVariant, SortedPath};

use crate::algorithms::Decision;
use crate::engine::{AgentId, Configuration};
use crate::error::{AdversaryError, EngineError};
use crate::graph::{Property, Schedule, Snapshot};

/// Read-only access to the attacked algorithm's compute phase for the
/// current round.
pub trait Oracle {
    /// Decisions every active agent would take on `snapshot`.
    fn preview(&self, snapshot: &Snapshot) -> Result<Vec<(AgentId, Decision)>, EngineError>;

    /// Configuration that would result from `snapshot`.
    fn predict(&self, snapshot: &Snapshot) -> Result<Configuration, EngineError>;
}

pub trait Adversary: Send {
    fn n(&self) -> usize;

    fn name(&self) -> &str;

    /// Graph for `round`, chosen at the start of the round with full
    /// knowledge of the configuration.
    fn next_snapshot(
        &mut self,
        round: usize,
        config: &Configuration,
        oracle: Option<&dyn Oracle>,
    ) -> Result<Snapshot, AdversaryError>;
}

/// Oblivious adversary replaying a schedule.
pub struct ScheduleAdversary<S> {
    schedule: S,
    name: String,
}

impl<S: Schedule> ScheduleAdversary<S> {
    pub fn new(schedule: S, name: impl Into<String>) -> Self {
        ScheduleAdversary {
            schedule,
            name: name.into(),
        }
    }
}

impl<S: Schedule> Adversary for ScheduleAdversary<S> {
    fn n(&self) -> usize {
        self.schedule.n()
    }

    fn name(&self) -> &str {
        &self.name
    }

    fn next_snapshot(
        &mut self,
        round: usize,
        _config: &Configuration,
        _oracle: Option<&dyn Oracle>,
    ) -> Result<Snapshot, AdversaryError> {
        Ok(self.schedule.snapshot(round)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AdversaryKind {
    CtDispersion,
    KtLower,
    ExplorationStar,
    SortedPathComm,
    SortedPathVisibility,
    SortedPathDispersed,
    TwoStarsTime,
    TwoStarsTimeTpath,
    CtExploration,
}

impl AdversaryKind {
    pub const ALL: [AdversaryKind; 9] = [
        AdversaryKind::CtDispersion,
        AdversaryKind::KtLower,
        AdversaryKind::ExplorationStar,
        AdversaryKind::SortedPathComm,
        AdversaryKind::SortedPathVisibility,
        AdversaryKind::SortedPathDispersed,
        AdversaryKind::TwoStarsTime,
        AdversaryKind::TwoStarsTimeTpath,
        AdversaryKind::CtExploration,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AdversaryKind::CtDispersion => "ct_dispersion",
            AdversaryKind::KtLower => "kt_lower",
            AdversaryKind::ExplorationStar => "exploration_star",
            AdversaryKind::SortedPathComm => "sorted_path_comm",
            AdversaryKind::SortedPathVisibility => "sorted_path_visibility",
            AdversaryKind::SortedPathDispersed => "sorted_path_dispersed",
            AdversaryKind::TwoStarsTime => "two_stars_time",
            AdversaryKind::TwoStarsTimeTpath => "two_stars_time_tpath",
            AdversaryKind::CtExploration => "ct_exploration",
        }
    }

    /// The connectivity property (with its window) the emitted schedule
    /// satisfies.
    pub fn guarantee(self, t: usize) -> (Property, usize) {
        match self {
            AdversaryKind::CtDispersion | AdversaryKind::CtExploration => {
                (Property::ConnectivityTime, t)
            }
            AdversaryKind::KtLower | AdversaryKind::TwoStarsTimeTpath => (Property::TPath, t),
            _ => (Property::TInterval, 1),
        }
    }

    pub fn build(self, n: usize, k: usize, t: usize) -> Result<Box<dyn Adversary>, AdversaryError> {
        Ok(match self {
            AdversaryKind::CtDispersion => Box::new(CtDispersion::new(n, k, t)?),
            AdversaryKind::KtLower => Box::new(KtLower::new(n, k, t)?),
            AdversaryKind::ExplorationStar => Box::new(ExplorationStar::new(n, k)?),
            AdversaryKind::SortedPathComm => {
                Box::new(SortedPath::new(n, k, PathVariant::CommAttack)?)
            }
            AdversaryKind::SortedPathVisibility => {
                Box::new(SortedPath::new(n, k, PathVariant::VisibilityAttack)?)
            }
            AdversaryKind::SortedPathDispersed => {
                Box::new(SortedPath::new(n, k, PathVariant::DispersedAttack)?)
            }
            AdversaryKind::TwoStarsTime => Box::new(TwoStars::new(n, 1)?),
            AdversaryKind::TwoStarsTimeTpath => Box::new(TwoStars::new(n, t)?),
            AdversaryKind::CtExploration => Box::new(CtExploration::new(n, k, t)?),
        })
    }
}

impl fmt::Display for AdversaryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AdversaryKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        AdversaryKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown adversary `{s}`"))
    }
}

/// Star on `nodes` centred at the least index.
pub(crate) fn star(nodes: &[usize]) -> Vec<(usize, usize)> {
    match nodes.iter().min() {
        Some(&c) => nodes.iter().filter(|&&v| v != c).map(|&v| (c, v)).collect(),
        None => Vec::new(),
    }
}

fn oracle_err(e: EngineError) -> AdversaryError {
    AdversaryError::Oracle(Box::new(e))
}
