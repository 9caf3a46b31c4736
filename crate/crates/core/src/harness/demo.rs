use std::fmt::{self, Write as _};
use std::str::FromStr;

use rayon::prelude::*;

use super::bounds;
use super::verify_trace;
use crate::adversary::{Adversary, AdversaryKind};
use crate::algorithms::{Algorithm, AlgorithmKind};
use crate::engine::{run, Communication, Configuration, RunConfig, RunReport, Visibility};
use crate::error::ScenarioError;
use crate::graph::{check_property, NodeId, Property, TraceSchedule};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DemoId {
    CtDispersion,
    KtLower,
    ExpNMinus2,
    PathComm,
    PathVisibility,
    DispersedBlock,
    Time1Int,
    TimeTpath,
    CtExploration,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Cell {
    pub n: usize,
    pub k: usize,
    pub t: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    AtLeast(usize),
    AtMost(usize),
    /// The event must not happen within the budget.
    Never,
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::AtLeast(b) => write!(f, ">={b}"),
            Bound::AtMost(b) => write!(f, "<={b}"),
            Bound::Never => f.write_str("never"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DemoRow {
    pub algorithm: &'static str,
    pub cell: Cell,
    pub budget: usize,
    /// Rounds until the measured event, `None` if it never happened.
    pub achieved: Option<usize>,
    pub bound: Bound,
    /// The emitted schedule passed its connectivity checker.
    pub checker: bool,
    pub violations: usize,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DemoReport {
    pub id: DemoId,
    pub measures: &'static str,
    pub rows: Vec<DemoRow>,
}

impl DemoReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn table(&self) -> String {
        let mut out = format!("demo {} ({})\n", self.id, self.measures);
        writeln!(
            out,
            "{:<20} {:>3} {:>3} {:>3} {:>7} {:>9} {:>8} {:>7} {:>10} {:>5}",
            "algorithm", "n", "k", "T", "budget", "achieved", "bound", "checker", "violations", "pass"
        )
        .unwrap();
        for r in &self.rows {
            writeln!(
                out,
                "{:<20} {:>3} {:>3} {:>3} {:>7} {:>9} {:>8} {:>7} {:>10} {:>5}",
                r.algorithm,
                r.cell.n,
                r.cell.k,
                r.cell.t,
                r.budget,
                r.achieved.map_or("never".to_string(), |a| a.to_string()),
                r.bound.to_string(),
                r.checker,
                r.violations,
                if r.pass { "ok" } else { "FAIL" }
            )
            .unwrap();
        }
        out
    }
}

impl DemoId {
    pub const ALL: [DemoId; 9] = [
        DemoId::CtDispersion,
        DemoId::KtLower,
        DemoId::ExpNMinus2,
        DemoId::PathComm,
        DemoId::PathVisibility,
        DemoId::DispersedBlock,
        DemoId::Time1Int,
        DemoId::TimeTpath,
        DemoId::CtExploration,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DemoId::CtDispersion => "ct_dispersion",
            DemoId::KtLower => "kt_lower",
            DemoId::ExpNMinus2 => "exp_n_minus_2",
            DemoId::PathComm => "path_comm",
            DemoId::PathVisibility => "path_visibility",
            DemoId::DispersedBlock => "dispersed_block",
            DemoId::Time1Int => "time_1int",
            DemoId::TimeTpath => "time_tpath",
            DemoId::CtExploration => "ct_exploration",
        }
    }

    pub fn default_grid(self) -> Vec<Cell> {
        let c = |n, k, t| Cell { n, k, t };
        match self {
            DemoId::CtDispersion => (3..=10)
                .flat_map(|n| (3..=n).flat_map(move |k| (2..=4).map(move |t| c(n, k, t))))
                .collect(),
            DemoId::KtLower => (3..=10)
                .flat_map(|k| (2..=5).flat_map(move |t| [c(k, k, t), c(k + 3, k, t)]))
                .collect(),
            DemoId::ExpNMinus2 => (4..=12).map(|n| c(n, n - 2, 1)).collect(),
            DemoId::PathComm | DemoId::PathVisibility => (7..=10).map(|n| c(n, n - 1, 1)).collect(),
            DemoId::DispersedBlock => (3..=10).map(|n| c(n, n - 1, 1)).collect(),
            DemoId::Time1Int => (3..=20).map(|n| c(n, n - 1, 1)).collect(),
            DemoId::TimeTpath => (3..=15)
                .flat_map(|n| (2..=4).map(move |t| c(n, n - 1, t)))
                .collect(),
            DemoId::CtExploration => (6..=12)
                .flat_map(|n| (2..=4).flat_map(move |t| [c(n, n - 1, t), c(n, n, t)]))
                .collect(),
        }
    }

    fn measures(self) -> &'static str {
        match self {
            DemoId::CtDispersion => "round of dispersion",
            DemoId::KtLower => "rounds until dispersion",
            DemoId::Time1Int | DemoId::TimeTpath => "rounds until every node is visited",
            _ => "round the target node is first visited",
        }
    }
}

impl fmt::Display for DemoId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DemoId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        DemoId::ALL
            .into_iter()
            .find(|d| d.name() == s)
            .ok_or_else(|| format!("unknown demo `{s}`"))
    }
}

struct Setup {
    adversary: AdversaryKind,
    algorithms: Vec<Algorithm>,
    initial: Configuration,
    visibility: Visibility,
    communication: Communication,
    budget: usize,
}

fn setup(id: DemoId, c: Cell) -> Result<Setup, ScenarioError> {
    use AlgorithmKind::*;
    let colocated = Configuration::colocated(c.n, c.k, NodeId(0))?;
    let alg = Algorithm::new;
    let (adversary, algorithms, initial, visibility, communication, budget) = match id {
        DemoId::CtDispersion => (
            AdversaryKind::CtDispersion,
            vec![alg(Alg1Implicit)],
            colocated,
            Visibility::OneHop,
            Communication::Global,
            20 * c.k * c.t,
        ),
        DemoId::KtLower => (
            AdversaryKind::KtLower,
            vec![Algorithm::alg1_explicit(c.t as u32)],
            colocated,
            Visibility::OneHop,
            Communication::Global,
            2 * bounds::dispersion_upper(c.k, c.t),
        ),
        DemoId::ExpNMinus2 => (
            AdversaryKind::ExplorationStar,
            vec![alg(Alg2), alg(Alg3)],
            colocated,
            Visibility::OneHop,
            Communication::Global,
            50 * c.n,
        ),
        DemoId::PathComm => (
            AdversaryKind::SortedPathComm,
            vec![alg(Alg2), alg(Alg3)],
            colocated,
            Visibility::OneHop,
            Communication::FaceToFace,
            50 * c.n,
        ),
        DemoId::PathVisibility => (
            AdversaryKind::SortedPathVisibility,
            vec![alg(Alg2), alg(Alg3)],
            colocated,
            Visibility::ZeroHop,
            Communication::Global,
            50 * c.n,
        ),
        DemoId::DispersedBlock => (
            AdversaryKind::SortedPathDispersed,
            vec![alg(Port0Greedy), alg(DispersedOneRound)],
            Configuration::dispersed(c.n, c.k)?,
            Visibility::ZeroHop,
            Communication::Global,
            100,
        ),
        DemoId::Time1Int => (
            AdversaryKind::TwoStarsTime,
            vec![alg(Alg2)],
            colocated,
            Visibility::OneHop,
            Communication::Global,
            2 * bounds::exploration_1int_upper(c.n),
        ),
        DemoId::TimeTpath => (
            AdversaryKind::TwoStarsTimeTpath,
            vec![alg(Alg3)],
            colocated,
            Visibility::OneHop,
            Communication::Global,
            2 * bounds::exploration_tpath_upper(c.n, c.t),
        ),
        DemoId::CtExploration => (
            AdversaryKind::CtExploration,
            vec![alg(Alg2), alg(Alg3)],
            colocated,
            Visibility::OneHop,
            Communication::Global,
            50 * c.n * c.t,
        ),
    };
    Ok(Setup {
        adversary,
        algorithms,
        initial,
        visibility,
        communication,
        budget,
    })
}

fn visited(report: &RunReport, v: NodeId) -> Option<usize> {
    report
        .trace
        .rounds
        .iter()
        .find(|r| r.before.contains(&v) || r.after.contains(&v))
        .map(|r| r.round)
}

/// Schedule emitted during the run, continued against the final
/// configuration when the run stopped before three windows.
fn emitted(
    adversary: &mut dyn Adversary,
    report: &RunReport,
    window: usize,
    needs_oracle: bool,
) -> Result<TraceSchedule, ScenarioError> {
    let mut snaps = report.trace.schedule().rounds().to_vec();
    while !needs_oracle && snaps.len() < 3 * window {
        snaps.push(adversary.next_snapshot(snaps.len(), &report.final_config, None)?);
    }
    Ok(TraceSchedule::new(report.trace.n, snaps)?)
}

fn run_cell(id: DemoId, cell: Cell) -> Result<Vec<DemoRow>, ScenarioError> {
    let s = setup(id, cell)?;
    let (property, window) = s.adversary.guarantee(cell.t);
    let needs_oracle = matches!(
        s.adversary,
        AdversaryKind::SortedPathComm
            | AdversaryKind::SortedPathVisibility
            | AdversaryKind::SortedPathDispersed
    );
    let target = *s.initial.holes().last().expect("every demo starts with a hole");
    let mut rows = Vec::new();
    for alg in &s.algorithms {
        let mut adv = s.adversary.build(cell.n, cell.k, cell.t)?;
        let mut cfg = RunConfig::new(s.budget).with_models(s.visibility, s.communication);
        if property != Property::ConnectivityTime {
            cfg = cfg.with_window(window);
        }
        let report = run(adv.as_mut(), &s.initial, alg, &cfg)?;
        let schedule = emitted(adv.as_mut(), &report, window, needs_oracle)?;
        let checker = schedule.len() < window
            || check_property(&schedule, property, window)?.holds;
        let violations = verify_trace(&report.trace).violations.len() + report.audit_violations.len();
        let (achieved, bound) = match id {
            DemoId::CtDispersion => (report.outcome.dispersed_at, Bound::Never),
            DemoId::KtLower => (
                report.outcome.dispersed_at.map(|r| r + 1),
                Bound::AtLeast(bounds::dispersion_lower(cell.k, cell.t)),
            ),
            DemoId::Time1Int => (
                report.outcome.explored_at.map(|r| r + 1),
                Bound::AtLeast(bounds::exploration_1int_lower(cell.n)),
            ),
            DemoId::TimeTpath => (
                report.outcome.explored_at.map(|r| r + 1),
                Bound::AtLeast(bounds::exploration_tpath_lower(cell.n, cell.t)),
            ),
            _ => (visited(&report, target), Bound::Never),
        };
        let meets = match (bound, achieved) {
            (Bound::Never, a) => a.is_none(),
            (Bound::AtLeast(b), Some(a)) => a >= b,
            (Bound::AtMost(b), Some(a)) => a <= b,
            (_, None) => false,
        };
        rows.push(DemoRow {
            algorithm: alg.name(),
            cell,
            budget: s.budget,
            achieved,
            bound,
            checker,
            violations,
            pass: meets && checker && violations == 0,
        });
    }
    Ok(rows)
}

/// Runs a lower-bound or impossibility demo over `grid`.
pub fn demo(id: DemoId, grid: &[Cell]) -> Result<DemoReport, ScenarioError> {
    let rows: Vec<Vec<DemoRow>> = grid
        .par_iter()
        .map(|&c| run_cell(id, c))
        .collect::<Result<_, _>>()?;
    Ok(DemoReport {
        id,
        measures: id.measures(),
        rows: rows.into_iter().flatten().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_grid_gives_empty_table() {
        let rep = demo(DemoId::KtLower, &[]).unwrap();
        assert!(rep.rows.is_empty());
        assert!(rep.passed());
        assert_eq!(rep.table().lines().count(), 2);
    }

    #[test]
    fn names_round_trip() {
        for d in DemoId::ALL {
            assert_eq!(d.name().parse::<DemoId>(), Ok(d));
        }
        assert!("nope".parse::<DemoId>().is_err());
    }

    #[test]
    fn kt_lower_cell() {
        let rep = demo(DemoId::KtLower, &[Cell { n: 10, k: 5, t: 4 }]).unwrap();
        assert!(rep.passed(), "{}", rep.table());
        assert!(rep.rows[0].achieved.unwrap() >= 12);
    }
}
