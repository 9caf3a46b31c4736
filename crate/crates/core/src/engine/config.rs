use crate::algorithms::{Action, Decision};
use crate::engine::AgentId;
use crate::error::EngineError;
use crate::graph::{NodeId, Snapshot};

/// Placement of k agents on n nodes. Agent `i` (1-based) sits at
/// `positions[i - 1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Configuration {
    n: usize,
    positions: Vec<NodeId>,
}

impl Configuration {
    pub fn new(n: usize, positions: Vec<NodeId>) -> Result<Self, EngineError> {
        if positions.is_empty() || positions.len() > n || positions.iter().any(|p| p.0 >= n) {
            return Err(EngineError::BadPlacement {
                agents: positions.len(),
                n,
            });
        }
        Ok(Configuration { n, positions })
    }

    pub fn colocated(n: usize, k: usize, node: NodeId) -> Result<Self, EngineError> {
        Configuration::new(n, vec![node; k])
    }

    /// Agent `i` on node `i - 1`.
    pub fn dispersed(n: usize, k: usize) -> Result<Self, EngineError> {
        Configuration::new(n, (0..k).map(NodeId).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.positions.len()
    }

    pub fn positions(&self) -> &[NodeId] {
        &self.positions
    }

    pub fn position(&self, a: AgentId) -> NodeId {
        self.positions[a.index()]
    }

    pub fn agents(&self) -> impl Iterator<Item = AgentId> {
        (0..self.k()).map(AgentId::from_index)
    }

    /// Sorted agents on `v`.
    pub fn agents_at(&self, v: NodeId) -> Vec<AgentId> {
        self.agents().filter(|&a| self.position(a) == v).collect()
    }

    pub fn counts(&self) -> Vec<usize> {
        let mut c = vec![0; self.n];
        for p in &self.positions {
            c[p.0] += 1;
        }
        c
    }

    pub fn count(&self, v: NodeId) -> usize {
        self.positions.iter().filter(|&&p| p == v).count()
    }

    pub fn holes(&self) -> Vec<NodeId> {
        let c = self.counts();
        (0..self.n).filter(|&v| c[v] == 0).map(NodeId).collect()
    }

    pub fn multinodes(&self) -> Vec<NodeId> {
        let c = self.counts();
        (0..self.n).filter(|&v| c[v] >= 2).map(NodeId).collect()
    }

    pub fn is_dispersed(&self) -> bool {
        self.counts().iter().all(|&c| c <= 1)
    }
}

/// Applies all moves simultaneously. Agents missing from `decisions` stay.
pub fn apply_decisions(
    snapshot: &Snapshot,
    config: &Configuration,
    decisions: &[(AgentId, Decision)],
    round: usize,
) -> Result<Configuration, EngineError> {
    let mut next = config.positions.clone();
    for &(a, d) in decisions {
        if let Action::Move(port) = d.action {
            let here = config.position(a);
            match snapshot.neighbor(here, port) {
                Some((to, _)) => next[a.index()] = to,
                None => {
                    return Err(EngineError::InvalidPort {
                        round,
                        agent: a.0,
                        port,
                        degree: snapshot.degree(here),
                    })
                }
            }
        }
    }
    Ok(Configuration {
        n: config.n,
        positions: next,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_predicates() {
        let c = Configuration::new(4, vec![NodeId(0), NodeId(0), NodeId(2)]).unwrap();
        assert_eq!(c.holes(), vec![NodeId(1), NodeId(3)]);
        assert_eq!(c.multinodes(), vec![NodeId(0)]);
        assert_eq!(c.agents_at(NodeId(0)), vec![AgentId(1), AgentId(2)]);
        assert!(!c.is_dispersed());
        assert!(Configuration::dispersed(4, 4).unwrap().is_dispersed());
        assert!(Configuration::new(2, vec![NodeId(0); 3]).is_err());
        assert!(Configuration::new(2, vec![NodeId(2)]).is_err());
    }

    #[test]
    fn moves_are_simultaneous_and_checked() {
        let s = Snapshot::canonical(3, [(0, 1), (1, 2)]).unwrap();
        let c = Configuration::new(3, vec![NodeId(0), NodeId(1)]).unwrap();
        let mv = |p| Decision {
            action: Action::Move(p),
            terminate: false,
        };
        // a1 0->1 while a2 1->2 (port 1 at node 1)
        let d = [(AgentId(1), mv(0)), (AgentId(2), mv(1))];
        let mut rev = d;
        rev.reverse();
        let a = apply_decisions(&s, &c, &d, 0).unwrap();
        assert_eq!(a.positions(), &[NodeId(1), NodeId(2)]);
        assert_eq!(a, apply_decisions(&s, &c, &rev, 0).unwrap());
        let bad = apply_decisions(&s, &c, &[(AgentId(1), mv(1))], 3);
        assert!(matches!(
            bad,
            Err(EngineError::InvalidPort {
                round: 3,
                agent: 1,
                port: 1,
                degree: 1
            })
        ));
    }
}
