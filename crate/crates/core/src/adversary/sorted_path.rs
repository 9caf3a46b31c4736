//! Path adversaries that consult the attacked algorithm.

use super::{oracle_err, Adversary, Oracle};
use crate::algorithms::Action;
use crate::engine::Configuration;
use crate::error::AdversaryError;
use crate::graph::{Edge, NodeId, Snapshot};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PathVariant {
    /// Against agents lacking global communication.
    CommAttack,
    /// Against agents lacking 1-hop visibility.
    VisibilityAttack,
    /// Against blind agents that start dispersed.
    DispersedAttack,
}

/// Hamiltonian path `w1 ~ ... ~ wn` with nodes ordered by agent count
/// (descending), then least agent ID, holes last and the target at `wn`.
///
/// When the oracle predicts that the plain path leads to dispersion, the
/// swapped path `w1 ~ w4 ~ w3 ~ w2 ~ w5 ~ ...` is emitted instead.
#[derive(Debug, Clone)]
pub struct SortedPath {
    n: usize,
    variant: PathVariant,
    target: Option<usize>,
}

impl SortedPath {
    pub fn new(n: usize, k: usize, variant: PathVariant) -> Result<Self, AdversaryError> {
        let min_n = if variant == PathVariant::DispersedAttack { 3 } else { 7 };
        if n < min_n || k + 1 != n {
            return Err(AdversaryError::Parameters(format!(
                "need n >= {min_n} and k = n - 1; got n={n}, k={k}"
            )));
        }
        Ok(SortedPath {
            n,
            variant,
            target: None,
        })
    }

    pub fn target(&self) -> Option<NodeId> {
        self.target.map(NodeId)
    }

    fn order(&self, config: &Configuration) -> Vec<usize> {
        let counts = config.counts();
        let least: Vec<Option<u32>> = (0..self.n)
            .map(|v| config.agents_at(NodeId(v)).first().map(|a| a.0))
            .collect();
        let mut occupied: Vec<usize> = (0..self.n).filter(|&v| counts[v] > 0).collect();
        occupied.sort_by_key(|&v| (std::cmp::Reverse(counts[v]), least[v]));
        let target = self.target.filter(|&t| counts[t] == 0);
        let holes = (0..self.n).filter(|&v| counts[v] == 0 && Some(v) != target);
        occupied.extend(holes);
        occupied.extend(target);
        occupied
    }

    fn dispersed_order(&self, config: &Configuration) -> Vec<usize> {
        let mut out: Vec<usize> = config.holes().into_iter().map(|v| v.0).collect();
        out.extend(config.positions().iter().map(|v| v.0));
        out
    }
}

/// `w_i` reaches `w_{i-1}` via port 0 and `w_{i+1}` via port 1; both
/// endpoints use port 0.
pub fn standard_path(n: usize, w: &[usize]) -> Snapshot {
    let edges = (0..w.len() - 1).map(|i| Edge::new(w[i], w[i + 1], usize::from(i > 0), 0));
    Snapshot::new(n, edges).expect("path labelling is a valid port assignment")
}

/// The swapped path: `w1(0)-w4(1)`, `w4(0)-w3(1)`, `w3(0)-w2(1)`,
/// `w2(0)-w5(0)`, `w5(1)-w6(0)`, then the standard labelling.
pub fn swapped_path(n: usize, w: &[usize]) -> Snapshot {
    let mut edges = vec![
        Edge::new(w[0], w[3], 0, 1),
        Edge::new(w[3], w[2], 0, 1),
        Edge::new(w[2], w[1], 0, 1),
        Edge::new(w[1], w[4], 0, 0),
    ];
    if w.len() > 5 {
        edges.push(Edge::new(w[4], w[5], 1, 0));
    }
    edges.extend((5..w.len() - 1).map(|i| Edge::new(w[i], w[i + 1], 1, 0)));
    Snapshot::new(n, edges).expect("swapped labelling is a valid port assignment")
}

/// Standard path with the two ports of `w2` exchanged.
fn flipped_path(n: usize, w: &[usize]) -> Snapshot {
    let edges = (0..w.len() - 1).map(|i| match i {
        0 => Edge::new(w[0], w[1], 0, 1),
        1 => Edge::new(w[1], w[2], 0, 0),
        _ => Edge::new(w[i], w[i + 1], 1, 0),
    });
    Snapshot::new(n, edges).expect("flipped labelling is a valid port assignment")
}

impl Adversary for SortedPath {
    fn n(&self) -> usize {
        self.n
    }

    fn name(&self) -> &str {
        match self.variant {
            PathVariant::CommAttack => "sorted_path_comm",
            PathVariant::VisibilityAttack => "sorted_path_visibility",
            PathVariant::DispersedAttack => "sorted_path_dispersed",
        }
    }

    fn next_snapshot(
        &mut self,
        round: usize,
        config: &Configuration,
        oracle: Option<&dyn Oracle>,
    ) -> Result<Snapshot, AdversaryError> {
        let oracle = oracle.ok_or(AdversaryError::OracleRequired)?;
        if round == 0 {
            self.target = config.holes().last().map(|v| v.0);
        }
        if self.variant == PathVariant::DispersedAttack && config.is_dispersed() {
            let w = self.dispersed_order(config);
            let plain = standard_path(self.n, &w);
            let second = config.agents_at(NodeId(w[1]));
            let decisions = oracle.preview(&plain).map_err(oracle_err)?;
            let into_hole = decisions
                .iter()
                .any(|(a, d)| second.contains(a) && d.action == Action::Move(0));
            return Ok(if into_hole {
                flipped_path(self.n, &w)
            } else {
                plain
            });
        }
        let w = self.order(config);
        let plain = standard_path(self.n, &w);
        if self.n >= 6 && oracle.predict(&plain).map_err(oracle_err)?.is_dispersed() {
            return Ok(swapped_path(self.n, &w));
        }
        Ok(plain)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_port_labels() {
        let w = [3, 0, 1, 2];
        let s = standard_path(4, &w);
        assert_eq!(s.neighbor(NodeId(3), 0), Some((NodeId(0), 0)));
        assert_eq!(s.neighbor(NodeId(0), 0), Some((NodeId(3), 0)));
        assert_eq!(s.neighbor(NodeId(0), 1), Some((NodeId(1), 0)));
        assert_eq!(s.neighbor(NodeId(2), 0), Some((NodeId(1), 1)));
    }

    #[test]
    fn swapped_path_is_hamiltonian() {
        for n in 5..10 {
            let w: Vec<usize> = (0..n).rev().collect();
            let s = swapped_path(n, &w);
            assert!(s.is_connected());
            assert_eq!(s.edge_count(), n - 1);
            assert!((0..n).all(|v| s.degree(NodeId(v)) <= 2));
            // w1 - w4 - w3 - w2 - w5
            assert!(s.has_edge(w[0], w[3]) && s.has_edge(w[3], w[2]));
            assert!(s.has_edge(w[2], w[1]) && s.has_edge(w[1], w[4]));
            assert_eq!(s.neighbor(NodeId(w[1]), 0).map(|x| x.0), Some(NodeId(w[4])));
        }
    }

    #[test]
    fn flipped_path_ports() {
        let w = [0, 1, 2, 3];
        let s = flipped_path(4, &w);
        assert_eq!(s.neighbor(NodeId(1), 1).map(|x| x.0), Some(NodeId(0)));
        assert_eq!(s.neighbor(NodeId(1), 0).map(|x| x.0), Some(NodeId(2)));
    }

    #[test]
    fn ordering_puts_heavy_nodes_first_and_target_last() {
        let mut a = SortedPath::new(7, 6, PathVariant::CommAttack).unwrap();
        let c = Configuration::new(
            7,
            vec![NodeId(4), NodeId(2), NodeId(2), NodeId(0), NodeId(1), NodeId(1)],
        )
        .unwrap();
        a.target = Some(6);
        assert_eq!(a.order(&c), vec![2, 1, 4, 0, 3, 5, 6]);
    }

    #[test]
    fn requires_oracle_and_parameters() {
        assert!(SortedPath::new(6, 5, PathVariant::CommAttack).is_err());
        assert!(SortedPath::new(7, 5, PathVariant::CommAttack).is_err());
        let mut a = SortedPath::new(3, 2, PathVariant::DispersedAttack).unwrap();
        let c = Configuration::dispersed(3, 2).unwrap();
        assert!(matches!(
            a.next_snapshot(0, &c, None),
            Err(AdversaryError::OracleRequired)
        ));
    }
}
