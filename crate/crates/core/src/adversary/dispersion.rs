//! Constructions against dispersion.

use super::{star, Adversary, Oracle};
use crate::engine::Configuration;
use crate::error::AdversaryError;
use crate::graph::Snapshot;

/// Keeps a multinode alive forever on a Connectivity-Time graph.
///
/// Time is cut into phases of `T - 1` rounds, so every window of `T` rounds
/// meets two consecutive phases. Even phases put `p = n - k + 1` holes in
/// their own star, leaving `k` agents on `k - 1` reachable nodes. Odd phases
/// isolate a multinode and join everything else in one star.
#[derive(Debug, Clone)]
pub struct CtDispersion {
    n: usize,
    k: usize,
    t: usize,
    current: Option<(usize, Vec<(usize, usize)>)>,
}

impl CtDispersion {
    pub fn new(n: usize, k: usize, t: usize) -> Result<Self, AdversaryError> {
        if k < 3 || k > n || t < 2 {
            return Err(AdversaryError::Parameters(format!(
                "need 3 <= k <= n and T >= 2; got n={n}, k={k}, T={t}"
            )));
        }
        Ok(CtDispersion {
            n,
            k,
            t,
            current: None,
        })
    }

    pub fn phase_len(&self) -> usize {
        self.t - 1
    }

    fn structure(&self, phase: usize, config: &Configuration) -> Result<Vec<(usize, usize)>, AdversaryError> {
        let all: Vec<usize> = (0..self.n).collect();
        if phase.is_multiple_of(2) {
            let p = self.n - self.k + 1;
            let holes: Vec<usize> = config.holes().into_iter().map(|v| v.0).collect();
            if holes.len() < p {
                return Err(AdversaryError::Precondition(format!(
                    "phase {phase} needs {p} holes, found {}",
                    holes.len()
                )));
            }
            let s1 = &holes[..p];
            let s2: Vec<usize> = all.iter().copied().filter(|v| !s1.contains(v)).collect();
            let mut pairs = star(s1);
            pairs.extend(star(&s2));
            Ok(pairs)
        } else {
            let m = config
                .multinodes()
                .first()
                .map(|v| v.0)
                .ok_or_else(|| AdversaryError::Precondition(format!("phase {phase} has no multinode")))?;
            let rest: Vec<usize> = all.into_iter().filter(|&v| v != m).collect();
            Ok(star(&rest))
        }
    }
}

impl Adversary for CtDispersion {
    fn n(&self) -> usize {
        self.n
    }

    fn name(&self) -> &str {
        "ct_dispersion"
    }

    fn next_snapshot(
        &mut self,
        round: usize,
        config: &Configuration,
        _oracle: Option<&dyn Oracle>,
    ) -> Result<Snapshot, AdversaryError> {
        if round == 0 && config.k() != self.k {
            return Err(AdversaryError::Parameters(format!(
                "built for k={}, run with {} agents",
                self.k,
                config.k()
            )));
        }
        let phase = round / self.phase_len();
        let fresh = !matches!(&self.current, Some((p, _)) if *p == phase);
        if fresh {
            let pairs = self.structure(phase, config)?;
            self.current = Some((phase, pairs));
        }
        let pairs = &self.current.as_ref().expect("set above").1;
        Ok(Snapshot::canonical(self.n, pairs.iter().copied())?)
    }
}

/// Occupied nodes and holes form two stars joined by one bridge every
/// `T - 1` rounds, so at most one hole is filled per bridge.
#[derive(Debug, Clone)]
pub struct KtLower {
    n: usize,
    t: usize,
}

impl KtLower {
    pub fn new(n: usize, k: usize, t: usize) -> Result<Self, AdversaryError> {
        if k < 3 || k > n || t < 2 {
            return Err(AdversaryError::Parameters(format!(
                "need 3 <= k <= n and T >= 2; got n={n}, k={k}, T={t}"
            )));
        }
        Ok(KtLower { n, t })
    }

    pub fn is_bridge_round(&self, round: usize) -> bool {
        round >= 1 && round.is_multiple_of(self.t - 1)
    }
}

impl Adversary for KtLower {
    fn n(&self) -> usize {
        self.n
    }

    fn name(&self) -> &str {
        "kt_lower"
    }

    fn next_snapshot(
        &mut self,
        round: usize,
        config: &Configuration,
        _oracle: Option<&dyn Oracle>,
    ) -> Result<Snapshot, AdversaryError> {
        let counts = config.counts();
        let (s1, s2): (Vec<usize>, Vec<usize>) = (0..self.n).partition(|&v| counts[v] > 0);
        let mut pairs = star(&s1);
        pairs.extend(star(&s2));
        if self.is_bridge_round(round) && !s2.is_empty() {
            pairs.push((s1[0], s2[0]));
        }
        Ok(Snapshot::canonical(self.n, pairs)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::NodeId;

    #[test]
    fn parameters_are_checked() {
        assert!(CtDispersion::new(6, 2, 2).is_err());
        assert!(CtDispersion::new(3, 4, 2).is_err());
        assert!(CtDispersion::new(3, 3, 1).is_err());
        assert!(KtLower::new(5, 1, 3).is_err());
        assert!(KtLower::new(5, 3, 1).is_err());
    }

    #[test]
    fn three_nodes_three_agents_star_sizes() {
        let mut a = CtDispersion::new(3, 3, 2).unwrap();
        let c = Configuration::new(3, vec![NodeId(0), NodeId(0), NodeId(1)]).unwrap();
        let s = a.next_snapshot(0, &c, None).unwrap();
        // S1 = {2} alone, S2 = {0, 1}
        assert_eq!(s.pairs().into_iter().collect::<Vec<_>>(), vec![(0, 1)]);
        let s = a.next_snapshot(1, &c, None).unwrap();
        assert_eq!(s.pairs().into_iter().collect::<Vec<_>>(), vec![(1, 2)]);
    }

    #[test]
    fn dispersed_start_is_rejected() {
        let mut a = CtDispersion::new(4, 3, 2).unwrap();
        let c = Configuration::dispersed(4, 3).unwrap();
        assert!(matches!(
            a.next_snapshot(0, &c, None),
            Err(AdversaryError::Precondition(_))
        ));
    }

    #[test]
    fn kt_bridge_rounds() {
        let mut a = KtLower::new(6, 3, 4).unwrap();
        let c = Configuration::colocated(6, 3, NodeId(2)).unwrap();
        let bridged: Vec<usize> = (0..10)
            .filter(|&r| a.next_snapshot(r, &c, None).unwrap().is_connected())
            .collect();
        assert_eq!(bridged, vec![3, 6, 9]);
    }
}
