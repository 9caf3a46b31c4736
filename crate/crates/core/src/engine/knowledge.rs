use std::collections::BTreeMap;

use crate::engine::{AgentId, Broadcast, LocalView};
use crate::error::EngineError;
use crate::graph::Port;

/// An occupied node as reconstructed from broadcasts, keyed by its least
/// agent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub key: AgentId,
    pub agents: Vec<AgentId>,
    /// Agents on this node that broadcast, i.e. are still active.
    pub active: Vec<AgentId>,
    pub count: usize,
    pub hole_ports: Vec<Port>,
    /// `(port, neighbour key)` for occupied neighbours that also broadcast,
    /// sorted by neighbour key.
    pub links: Vec<(Port, AgentId)>,
}

impl Vertex {
    pub fn is_multinode(&self) -> bool {
        self.count > 1
    }
}

/// The occupied-node graph of one component.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ComponentKnowledge {
    vertices: BTreeMap<AgentId, Vertex>,
}

impl ComponentKnowledge {
    pub fn vertices(&self) -> impl Iterator<Item = &Vertex> {
        self.vertices.values()
    }

    pub fn vertex(&self, key: AgentId) -> Option<&Vertex> {
        self.vertices.get(&key)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn has_multinode(&self) -> bool {
        self.vertices.values().any(Vertex::is_multinode)
    }
}

fn key_of(agents: &[AgentId]) -> Option<AgentId> {
    agents.first().copied()
}

/// Merges one component's broadcasts into a graph over occupied nodes.
pub fn stitch_component(msgs: &[Broadcast]) -> Result<ComponentKnowledge, EngineError> {
    let mut views: BTreeMap<AgentId, &LocalView> = BTreeMap::new();
    let mut active: BTreeMap<AgentId, Vec<AgentId>> = BTreeMap::new();
    for b in msgs {
        let key = key_of(&b.view.colocated)
            .ok_or_else(|| EngineError::Integrity(format!("{} reports an empty node", b.sender)))?;
        if !b.view.colocated.contains(&b.sender) || b.count != b.view.colocated.len() {
            return Err(EngineError::Integrity(format!(
                "{} misreports its own node",
                b.sender
            )));
        }
        match views.get(&key) {
            Some(prev) if **prev != b.view => {
                return Err(EngineError::Integrity(format!(
                    "co-located agents of {key} disagree on their view"
                )))
            }
            _ => {}
        }
        views.insert(key, &b.view);
        active.entry(key).or_default().push(b.sender);
    }
    let mut vertices = BTreeMap::new();
    for (&key, view) in &views {
        let mut links = Vec::new();
        for pv in &view.ports {
            let Some(nb) = &pv.neighbor else { continue };
            let Some(nkey) = key_of(nb) else { continue };
            let Some(other) = views.get(&nkey) else {
                continue;
            };
            if other.colocated != *nb {
                return Err(EngineError::Integrity(format!(
                    "{key} sees {nkey}'s node with a different agent set"
                )));
            }
            let back = other
                .ports
                .iter()
                .any(|q| q.neighbor.as_deref() == Some(view.colocated.as_slice()));
            if !back {
                return Err(EngineError::Integrity(format!(
                    "{key} sees {nkey} but not the other way round"
                )));
            }
            links.push((pv.port, nkey));
        }
        links.sort_by_key(|&(_, k)| k);
        vertices.insert(
            key,
            Vertex {
                key,
                agents: view.colocated.clone(),
                active: active[&key].clone(),
                count: view.count(),
                hole_ports: view.hole_ports(),
                links,
            },
        );
    }
    Ok(ComponentKnowledge { vertices })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{deliver, AgentState, Communication, Configuration, Visibility};
    use crate::graph::{NodeId, Snapshot};

    fn knowledge(s: &Snapshot, c: &Configuration) -> ComponentKnowledge {
        let st: Vec<_> = c.agents().map(AgentState::new).collect();
        let d = deliver(s, c, &st, Visibility::OneHop, Communication::Global);
        stitch_component(d.inbox(AgentId(1))).unwrap()
    }

    #[test]
    fn path_with_multinode_and_hole() {
        let s = Snapshot::canonical(3, [(0, 1), (1, 2)]).unwrap();
        let c = Configuration::new(3, vec![NodeId(0), NodeId(0), NodeId(1)]).unwrap();
        let ck = knowledge(&s, &c);
        assert_eq!(ck.len(), 2);
        let a1 = ck.vertex(AgentId(1)).unwrap();
        let a3 = ck.vertex(AgentId(3)).unwrap();
        assert!(a1.is_multinode());
        assert_eq!(a1.links, vec![(0, AgentId(3))]);
        assert!(a1.hole_ports.is_empty());
        assert_eq!(a3.links, vec![(0, AgentId(1))]);
        assert_eq!(a3.hole_ports, vec![1]);
    }

    #[test]
    fn star_matches_ground_truth() {
        let s = Snapshot::canonical(5, [(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let c = Configuration::new(
            5,
            vec![NodeId(0), NodeId(0), NodeId(1), NodeId(2), NodeId(3)],
        )
        .unwrap();
        let ck = knowledge(&s, &c);
        assert_eq!(ck.len(), 4);
        let centre = ck.vertex(AgentId(1)).unwrap();
        assert_eq!(centre.hole_ports, vec![3]);
        // ground truth: each occupied leaf links to the centre only
        for (leaf, node) in [(3, 1), (4, 2), (5, 3)] {
            let v = ck.vertex(AgentId(leaf)).unwrap();
            assert_eq!(v.links, vec![(0, AgentId(1))]);
            assert_eq!(c.agents_at(NodeId(node))[0], AgentId(leaf));
        }
        assert_eq!(centre.links.len(), 3);
    }

    #[test]
    fn fully_occupied_has_no_hole_ports() {
        let s = Snapshot::canonical(3, [(0, 1), (1, 2)]).unwrap();
        let c = Configuration::dispersed(3, 3).unwrap();
        let ck = knowledge(&s, &c);
        assert!(ck.vertices().all(|v| v.hole_ports.is_empty()));
        assert!(!ck.has_multinode());
    }

    #[test]
    fn disagreeing_views_are_rejected() {
        let s = Snapshot::canonical(2, [(0, 1)]).unwrap();
        let c = Configuration::new(2, vec![NodeId(0), NodeId(0)]).unwrap();
        let st: Vec<_> = c.agents().map(AgentState::new).collect();
        let d = deliver(&s, &c, &st, Visibility::OneHop, Communication::Global);
        let mut msgs = d.inbox(AgentId(1)).to_vec();
        msgs[1].view.ports.clear();
        assert!(matches!(
            stitch_component(&msgs),
            Err(EngineError::Integrity(_))
        ));
    }
}
