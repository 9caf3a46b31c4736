//! Constructions against exploration.

use super::{star, Adversary, Oracle};
use crate::engine::Configuration;
use crate::error::AdversaryError;
use crate::graph::{NodeId, Snapshot};

/// Connected every round, yet the target node only ever touches a hole.
///
/// The target is the highest-index initial hole; `v` is the least other
/// hole. Round graph: star on the remaining nodes, plus `v - target` and
/// `v - centre`.
#[derive(Debug, Clone)]
pub struct ExplorationStar {
    n: usize,
    target: Option<usize>,
}

impl ExplorationStar {
    pub fn new(n: usize, k: usize) -> Result<Self, AdversaryError> {
        if n < 4 || k + 2 > n {
            return Err(AdversaryError::Parameters(format!(
                "need n >= 4 and k <= n - 2; got n={n}, k={k}"
            )));
        }
        Ok(ExplorationStar { n, target: None })
    }

    pub fn target(&self) -> Option<NodeId> {
        self.target.map(NodeId)
    }
}

impl Adversary for ExplorationStar {
    fn n(&self) -> usize {
        self.n
    }

    fn name(&self) -> &str {
        "exploration_star"
    }

    fn next_snapshot(
        &mut self,
        _round: usize,
        config: &Configuration,
        _oracle: Option<&dyn Oracle>,
    ) -> Result<Snapshot, AdversaryError> {
        let holes: Vec<usize> = config.holes().into_iter().map(|v| v.0).collect();
        let target = *self.target.get_or_insert_with(|| *holes.last().expect("k <= n - 2"));
        let v = holes
            .iter()
            .copied()
            .find(|&h| h != target)
            .ok_or_else(|| AdversaryError::Precondition("fewer than two holes".into()))?;
        let rest: Vec<usize> = (0..self.n).filter(|&x| x != v && x != target).collect();
        let mut pairs = star(&rest);
        pairs.push((v, target));
        pairs.push((v, rest[0]));
        Ok(Snapshot::canonical(self.n, pairs)?)
    }
}

/// Visited and unvisited nodes form two stars; their centres are bridged
/// in rounds `r` with `r mod T = T - 1` (every round for `T = 1`), so at
/// most one new node is reached per bridge.
#[derive(Debug, Clone)]
pub struct TwoStars {
    n: usize,
    t: usize,
    visited: Vec<bool>,
}

impl TwoStars {
    pub fn new(n: usize, t: usize) -> Result<Self, AdversaryError> {
        if n < 2 || t == 0 {
            return Err(AdversaryError::Parameters(format!(
                "need n >= 2 and T >= 1; got n={n}, T={t}"
            )));
        }
        Ok(TwoStars {
            n,
            t,
            visited: vec![false; n],
        })
    }
}

impl Adversary for TwoStars {
    fn n(&self) -> usize {
        self.n
    }

    fn name(&self) -> &str {
        if self.t == 1 {
            "two_stars_time"
        } else {
            "two_stars_time_tpath"
        }
    }

    fn next_snapshot(
        &mut self,
        round: usize,
        config: &Configuration,
        _oracle: Option<&dyn Oracle>,
    ) -> Result<Snapshot, AdversaryError> {
        if round == 0 && config.counts().iter().filter(|&&c| c > 0).count() != 1 {
            return Err(AdversaryError::Precondition(
                "agents must start on a single node".into(),
            ));
        }
        for p in config.positions() {
            self.visited[p.0] = true;
        }
        let (s1, s2): (Vec<usize>, Vec<usize>) = (0..self.n).partition(|&v| self.visited[v]);
        let mut pairs = star(&s1);
        pairs.extend(star(&s2));
        if round % self.t == self.t - 1 && !s2.is_empty() {
            pairs.push((s1[0], s2[0]));
        }
        Ok(Snapshot::canonical(self.n, pairs)?)
    }
}

#[derive(Debug, Clone)]
struct CtState {
    star: Vec<usize>,
    partner: usize,
    target: usize,
    pending: Option<usize>,
}

/// Connectivity-Time construction keeping the target out of reach.
///
/// The target hangs off a partner hole; all other nodes form a star. In the
/// last round of every block of `T`, a star node `w` holding at most one
/// agent is detached onto the path `w - partner - target`. If the agent on
/// `w` steps onto the partner, `w` and the partner trade roles.
#[derive(Debug, Clone)]
pub struct CtExploration {
    n: usize,
    t: usize,
    state: Option<CtState>,
}

impl CtExploration {
    pub fn new(n: usize, k: usize, t: usize) -> Result<Self, AdversaryError> {
        if n < 6 || k > n || t < 2 {
            return Err(AdversaryError::Parameters(format!(
                "need n >= 6, k <= n and T >= 2; got n={n}, k={k}, T={t}"
            )));
        }
        Ok(CtExploration { n, t, state: None })
    }

    pub fn target(&self) -> Option<NodeId> {
        self.state.as_ref().map(|s| NodeId(s.target))
    }
}

impl Adversary for CtExploration {
    fn n(&self) -> usize {
        self.n
    }

    fn name(&self) -> &str {
        "ct_exploration"
    }

    fn next_snapshot(
        &mut self,
        round: usize,
        config: &Configuration,
        _oracle: Option<&dyn Oracle>,
    ) -> Result<Snapshot, AdversaryError> {
        if self.state.is_none() {
            let holes = config.holes();
            if holes.len() < 2 {
                return Err(AdversaryError::Precondition(
                    "needs at least two holes initially".into(),
                ));
            }
            let target = holes[holes.len() - 1].0;
            let partner = holes[holes.len() - 2].0;
            let star = (0..self.n).filter(|&v| v != target && v != partner).collect();
            self.state = Some(CtState {
                star,
                partner,
                target,
                pending: None,
            });
        }
        let st = self.state.as_mut().expect("initialised");
        if let Some(w) = st.pending.take() {
            if config.count(NodeId(st.partner)) > 0 {
                st.star.retain(|&x| x != w);
                st.star.push(st.partner);
                st.star.sort_unstable();
                st.partner = w;
            }
        }
        let mut pairs;
        if round % self.t == self.t - 1 {
            let w = st
                .star
                .iter()
                .copied()
                .find(|&x| config.count(NodeId(x)) <= 1)
                .ok_or_else(|| AdversaryError::Precondition("every star node is a multinode".into()))?;
            let rest: Vec<usize> = st.star.iter().copied().filter(|&x| x != w).collect();
            pairs = star(&rest);
            pairs.push((w, st.partner));
            st.pending = Some(w);
        } else {
            pairs = star(&st.star);
        }
        pairs.push((st.partner, st.target));
        Ok(Snapshot::canonical(self.n, pairs)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exploration_star_shape() {
        let mut a = ExplorationStar::new(6, 4).unwrap();
        let c = Configuration::colocated(6, 4, NodeId(0)).unwrap();
        let s = a.next_snapshot(0, &c, None).unwrap();
        assert_eq!(a.target(), Some(NodeId(5)));
        assert!(s.is_connected());
        // target only adjacent to v = 1, which is a hole
        assert_eq!(s.ports(NodeId(5)).map(|(_, w)| w.0).collect::<Vec<_>>(), vec![1]);
        assert!(ExplorationStar::new(6, 5).is_err());
        assert!(ExplorationStar::new(3, 1).is_err());
    }

    #[test]
    fn two_stars_degenerates_to_one_star() {
        let mut a = TwoStars::new(4, 1).unwrap();
        let c = Configuration::colocated(4, 3, NodeId(0)).unwrap();
        assert!(a.next_snapshot(0, &c, None).unwrap().is_connected());
        let spread = Configuration::new(4, vec![NodeId(0), NodeId(1), NodeId(2)]).unwrap();
        a.next_snapshot(1, &spread, None).unwrap();
        let all = Configuration::new(4, vec![NodeId(3), NodeId(1), NodeId(2)]).unwrap();
        let s = a.next_snapshot(2, &all, None).unwrap();
        assert!(s.is_connected());
        assert_eq!(s.edge_count(), 3);
        let mut b = TwoStars::new(4, 1).unwrap();
        assert!(b.next_snapshot(0, &spread, None).is_err());
    }

    #[test]
    fn ct_exploration_absorbs_empty_w() {
        let mut a = CtExploration::new(6, 4, 2).unwrap();
        let c = Configuration::new(6, vec![NodeId(0), NodeId(0), NodeId(1), NodeId(1)]).unwrap();
        let s0 = a.next_snapshot(0, &c, None).unwrap();
        assert!(s0.has_edge(4, 5) && !s0.is_connected());
        // w = 2 (empty) goes on the path
        let s1 = a.next_snapshot(1, &c, None).unwrap();
        assert!(s1.has_edge(2, 4) && s1.has_edge(4, 5) && !s1.has_edge(0, 2));
        // nobody stepped onto the partner, so the star takes w back
        let s2 = a.next_snapshot(2, &c, None).unwrap();
        assert!(s2.has_edge(0, 2) && s2.has_edge(4, 5));
        assert_eq!(s2.degree(NodeId(4)), 1);
    }

    #[test]
    fn ct_exploration_swaps_partner() {
        let mut a = CtExploration::new(6, 4, 2).unwrap();
        let c = Configuration::new(6, vec![NodeId(0), NodeId(0), NodeId(1), NodeId(2)]).unwrap();
        a.next_snapshot(0, &c, None).unwrap();
        // w = 1 holds a3
        let s1 = a.next_snapshot(1, &c, None).unwrap();
        assert!(s1.has_edge(1, 4));
        let moved = Configuration::new(6, vec![NodeId(0), NodeId(0), NodeId(4), NodeId(2)]).unwrap();
        let s2 = a.next_snapshot(2, &moved, None).unwrap();
        assert!(s2.has_edge(1, 5) && s2.has_edge(0, 4));
        assert_eq!(s2.degree(NodeId(5)), 1);
    }
}
