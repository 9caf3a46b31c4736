//! Classifiers for the three connectivity models over finite traces.
//!
//! Only windows that lie fully inside the trace are evaluated: a property
//! "holds" for a trace of `R` rounds when its condition is met for every
//! window start `r` in `0..=R-T`. Edge identity across rounds is the
//! unordered node pair; port labels play no role here.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use super::schedule::TraceSchedule;
use super::snapshot::{NodeId, Snapshot};
use crate::error::GraphError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Property {
    TInterval,
    TPath,
    ConnectivityTime,
}

impl Property {
    pub const ALL: [Property; 3] = [
        Property::TInterval,
        Property::TPath,
        Property::ConnectivityTime,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::TInterval => "t_interval",
            Property::TPath => "t_path",
            Property::ConnectivityTime => "connectivity_time",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "t_interval" => Ok(Property::TInterval),
            "t_path" => Ok(Property::TPath),
            "connectivity_time" => Ok(Property::ConnectivityTime),
            other => Err(format!("unknown property `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WindowMode {
    Intersection,
    Union,
}

/// Maximum round diameter, with a sentinel for rounds that are disconnected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Diameter {
    Finite(usize),
    Infinite,
}

impl fmt::Display for Diameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diameter::Finite(d) => write!(f, "{d}"),
            Diameter::Infinite => f.write_str("inf"),
        }
    }
}

/// Evidence that a property fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// The window graph starting at `start` is disconnected; `side` is the
    /// component containing node 0.
    Cut { start: usize, side: Vec<NodeId> },
    /// `u` and `v` never share a component in the window starting at `start`.
    Pair { start: usize, u: NodeId, v: NodeId },
}

impl Witness {
    /// Re-checks the witness against the trace from scratch.
    pub fn is_genuine(&self, trace: &TraceSchedule, property: Property, t: usize) -> bool {
        match (self, property) {
            (Witness::Cut { start, side }, Property::TInterval | Property::ConnectivityTime) => {
                let mode = if property == Property::TInterval {
                    WindowMode::Intersection
                } else {
                    WindowMode::Union
                };
                let Ok(pairs) = window_graph(trace, *start, t, mode) else {
                    return false;
                };
                let inside: BTreeSet<usize> = side.iter().map(|v| v.0).collect();
                if inside.is_empty() || inside.len() == trace.n() {
                    return false;
                }
                pairs
                    .iter()
                    .all(|&(a, b)| inside.contains(&a) == inside.contains(&b))
            }
            (Witness::Pair { start, u, v }, Property::TPath) => {
                if start + t > trace.len() || u == v {
                    return false;
                }
                trace.rounds()[*start..start + t].iter().all(|s| {
                    let labels = s.component_labels();
                    labels[u.0] != labels[v.0]
                })
            }
            _ => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectivityReport {
    pub property: Property,
    pub t: usize,
    pub holds: bool,
    pub witness: Option<Witness>,
    pub windows_checked: usize,
    pub dynamic_diameter: Diameter,
}

/// Connected components of one snapshot, sorted by least member.
pub fn components(s: &Snapshot) -> Vec<Vec<NodeId>> {
    s.components()
}

/// Node pairs present in all (intersection) or any (union) of rounds
/// `r..r+t`.
pub fn window_graph(
    trace: &TraceSchedule,
    r: usize,
    t: usize,
    mode: WindowMode,
) -> Result<BTreeSet<(usize, usize)>, GraphError> {
    if t == 0 {
        return Err(GraphError::ZeroWindow);
    }
    if r + t > trace.len() {
        return Err(GraphError::OutOfRange {
            start: r,
            end: r + t - 1,
            rounds: trace.len(),
        });
    }
    let rounds = &trace.rounds()[r..r + t];
    let mut acc = rounds[0].pairs();
    for s in &rounds[1..] {
        let next = s.pairs();
        acc = match mode {
            WindowMode::Intersection => acc.intersection(&next).copied().collect(),
            WindowMode::Union => acc.union(&next).copied().collect(),
        };
    }
    Ok(acc)
}

fn pair_components(n: usize, pairs: &BTreeSet<(usize, usize)>) -> Vec<usize> {
    // union-find with path halving
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &(a, b) in pairs {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    (0..n).map(|x| find(&mut parent, x)).collect()
}

fn dynamic_diameter(trace: &TraceSchedule) -> Diameter {
    let mut best = Diameter::Finite(0);
    for s in trace.rounds() {
        let d = s.diameter().map_or(Diameter::Infinite, Diameter::Finite);
        best = best.max(d);
    }
    best
}

/// Decides `property` with parameter `t` on a finite trace.
pub fn check_property(
    trace: &TraceSchedule,
    property: Property,
    t: usize,
) -> Result<ConnectivityReport, GraphError> {
    if t == 0 {
        return Err(GraphError::ZeroWindow);
    }
    if t > trace.len() {
        return Err(GraphError::InsufficientTrace {
            t,
            rounds: trace.len(),
        });
    }
    let n = trace.n();
    let starts = trace.len() - t + 1;
    let witness = match property {
        Property::TInterval | Property::ConnectivityTime => {
            let mode = if property == Property::TInterval {
                WindowMode::Intersection
            } else {
                WindowMode::Union
            };
            let mut found = None;
            for r in 0..starts {
                let pairs = window_graph(trace, r, t, mode)?;
                let labels = pair_components(n, &pairs);
                if labels.iter().any(|&l| l != labels[0]) {
                    let side = (0..n)
                        .filter(|&x| labels[x] == labels[0])
                        .map(NodeId)
                        .collect();
                    found = Some(Witness::Cut { start: r, side });
                    break;
                }
            }
            found
        }
        Property::TPath => tpath_witness(trace, t),
    };
    Ok(ConnectivityReport {
        property,
        t,
        holds: witness.is_none(),
        witness,
        windows_checked: starts,
        dynamic_diameter: dynamic_diameter(trace),
    })
}

// A pair that never shares a component anywhere in the trace is reported
// first; otherwise pairs are scanned in lexicographic order, each at its
// earliest failing window.
fn tpath_witness(trace: &TraceSchedule, t: usize) -> Option<Witness> {
    let n = trace.n();
    let labels: Vec<Vec<usize>> = trace.rounds().iter().map(|s| s.component_labels()).collect();
    let together = |r: usize, u: usize, v: usize| labels[r][u] == labels[r][v];
    let starts = trace.len() - t + 1;
    for u in 0..n {
        for v in u + 1..n {
            if (0..trace.len()).all(|r| !together(r, u, v)) {
                return Some(Witness::Pair {
                    start: 0,
                    u: NodeId(u),
                    v: NodeId(v),
                });
            }
        }
    }
    for u in 0..n {
        for v in u + 1..n {
            // gap = length of the current run of rounds where u, v are apart
            let mut gap = 0;
            for r in 0..trace.len() {
                gap = if together(r, u, v) { 0 } else { gap + 1 };
                if gap >= t && r + 1 >= t && r + 1 - t < starts {
                    return Some(Witness::Pair {
                        start: r + 1 - t,
                        u: NodeId(u),
                        v: NodeId(v),
                    });
                }
            }
        }
    }
    None
}

/// Smallest `t` in `1..=R` for which the property holds, or `None`.
pub fn minimal_t(trace: &TraceSchedule, property: Property) -> Option<usize> {
    (1..=trace.len()).find(|&t| {
        check_property(trace, property, t)
            .map(|r| r.holds)
            .unwrap_or(false)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adversary::golden;

    #[test]
    fn fig1_classification() {
        let tr = golden::fig1_trace(9);
        assert!(check_property(&tr, Property::TPath, 3).unwrap().holds);
        let r2 = check_property(&tr, Property::TPath, 2).unwrap();
        assert!(!r2.holds);
        assert_eq!(
            r2.witness,
            Some(Witness::Pair {
                start: 1,
                u: NodeId(1),
                v: NodeId(2)
            })
        );
        assert!(r2.witness.unwrap().is_genuine(&tr, Property::TPath, 2));
        assert_eq!(minimal_t(&tr, Property::TPath), Some(3));
        assert!(!check_property(&tr, Property::TInterval, 3).unwrap().holds);
        // every round is disconnected
        assert_eq!(
            check_property(&tr, Property::TPath, 3).unwrap().dynamic_diameter,
            Diameter::Infinite
        );
    }

    #[test]
    fn fig2_classification() {
        let tr = golden::fig2_trace(9);
        assert!(
            check_property(&tr, Property::ConnectivityTime, 3)
                .unwrap()
                .holds
        );
        assert_eq!(minimal_t(&tr, Property::ConnectivityTime), Some(3));
        for t in 1..=9 {
            let rep = check_property(&tr, Property::TPath, t).unwrap();
            assert!(!rep.holds);
            assert_eq!(
                rep.witness,
                Some(Witness::Pair {
                    start: 0,
                    u: NodeId(0),
                    v: NodeId(3)
                })
            );
        }
        assert_eq!(minimal_t(&tr, Property::TPath), None);
    }

    #[test]
    fn window_graph_examples() {
        let f2 = golden::fig2_trace(9);
        let u = window_graph(&f2, 0, 3, WindowMode::Union).unwrap();
        assert_eq!(pair_components(4, &u), vec![0, 0, 0, 0]);
        let f1 = golden::fig1_trace(9);
        assert!(window_graph(&f1, 0, 3, WindowMode::Intersection)
            .unwrap()
            .is_empty());
        for mode in [WindowMode::Union, WindowMode::Intersection] {
            assert_eq!(window_graph(&f1, 4, 1, mode).unwrap(), f1.rounds()[4].pairs());
        }
        assert!(matches!(
            window_graph(&f1, 7, 3, WindowMode::Union),
            Err(GraphError::OutOfRange { .. })
        ));
    }

    #[test]
    fn errors_on_short_trace() {
        let f1 = golden::fig1_trace(2);
        assert_eq!(
            check_property(&f1, Property::TPath, 3),
            Err(GraphError::InsufficientTrace { t: 3, rounds: 2 })
        );
        assert_eq!(
            check_property(&f1, Property::TPath, 0),
            Err(GraphError::ZeroWindow)
        );
    }

    #[test]
    fn static_connected_graph_is_one_for_all() {
        let s = Snapshot::canonical(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let tr = TraceSchedule::periodic(4, &[s], 5).unwrap();
        for p in Property::ALL {
            assert_eq!(minimal_t(&tr, p), Some(1));
        }
        let rep = check_property(&tr, Property::TInterval, 2).unwrap();
        assert_eq!(rep.dynamic_diameter, Diameter::Finite(3));
    }

    #[test]
    fn single_node_is_connected() {
        let tr = TraceSchedule::periodic(1, &[Snapshot::empty(1)], 3).unwrap();
        for p in Property::ALL {
            assert!(check_property(&tr, p, 1).unwrap().holds);
        }
    }

    #[test]
    fn cut_witness_is_genuine() {
        let tr = golden::fig1_trace(9);
        let rep = check_property(&tr, Property::TInterval, 2).unwrap();
        let w = rep.witness.unwrap();
        assert!(w.is_genuine(&tr, Property::TInterval, 2));
        assert!(!w.is_genuine(&tr, Property::TPath, 2));
    }
}
