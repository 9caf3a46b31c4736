//! Hand-written schedules with known classifications.

use crate::graph::{PeriodicSchedule, Schedule, Snapshot, TraceSchedule};

fn periodic(n: usize, rounds: &[&[(usize, usize)]]) -> PeriodicSchedule {
    let period = rounds
        .iter()
        .map(|p| Snapshot::canonical(n, p.iter().copied()).expect("golden rounds are valid"))
        .collect();
    PeriodicSchedule::new(n, period).expect("golden period is non-empty")
}

/// Period-3 schedule on 4 nodes that is T-Path connected for T = 3 while
/// every round is disconnected.
pub fn fig1() -> PeriodicSchedule {
    periodic(4, &[&[(0, 1), (0, 2)], &[(0, 1), (1, 3)], &[(0, 2), (2, 3)]])
}

/// Period-3 schedule on 4 nodes whose unions over 3 rounds are connected,
/// but nodes 0 and 3 never share a component.
pub fn fig2() -> PeriodicSchedule {
    periodic(4, &[&[(0, 1), (0, 2)], &[(0, 1), (0, 2)], &[(1, 3), (2, 3)]])
}

/// Period-6 schedule on 4 nodes: exploration completes but dispersion never
/// does when two agents start on node 0 and one on node 1.
pub fn fig12() -> PeriodicSchedule {
    periodic(
        4,
        &[
            &[(0, 1), (2, 3)],
            &[(1, 2), (2, 3)],
            &[(0, 2), (1, 3)],
            &[(2, 3), (1, 3)],
            &[(0, 3), (1, 2)],
            &[(1, 3), (1, 2)],
        ],
    )
}

pub fn fig1_trace(rounds: usize) -> TraceSchedule {
    fig1().prefix(rounds).expect("periodic schedules are total")
}

pub fn fig2_trace(rounds: usize) -> TraceSchedule {
    fig2().prefix(rounds).expect("periodic schedules are total")
}

pub fn fig12_trace(rounds: usize) -> TraceSchedule {
    fig12().prefix(rounds).expect("periodic schedules are total")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{minimal_t, NodeId, Property};

    #[test]
    fn fig12_rounds() {
        let s = fig12();
        let r1 = s.snapshot(7).unwrap();
        assert_eq!(r1.degree(NodeId(0)), 0);
        assert_eq!(r1.pairs().into_iter().collect::<Vec<_>>(), vec![(1, 2), (2, 3)]);
        assert_eq!(
            s.snapshot(12).unwrap().pairs().into_iter().collect::<Vec<_>>(),
            vec![(0, 1), (2, 3)]
        );
        assert_eq!(minimal_t(&fig12_trace(18), Property::TPath), Some(6));
    }

    #[test]
    fn fig1_first_round_components() {
        let s = fig1().snapshot(0).unwrap();
        let comps: Vec<Vec<usize>> = crate::graph::components(&s)
            .into_iter()
            .map(|c| c.into_iter().map(|v| v.0).collect())
            .collect();
        assert_eq!(comps, vec![vec![0, 1, 2], vec![3]]);
    }
}
