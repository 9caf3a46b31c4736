use std::collections::{BTreeMap, VecDeque};

use crate::engine::{AgentId, ComponentKnowledge};
use crate::graph::Port;

/// One round of sliding: every listed agent leaves through its port, the
/// last one into a hole.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlidingPlan {
    /// Vertex keys from the coordinating multinode to the hole-adjacent node.
    pub path: Vec<AgentId>,
    pub moves: Vec<(AgentId, Port)>,
}

impl SlidingPlan {
    pub fn port_for(&self, a: AgentId) -> Option<Port> {
        self.moves.iter().find(|&&(m, _)| m == a).map(|&(_, p)| p)
    }

    pub fn terminal_port(&self) -> Port {
        self.moves.last().expect("plans are non-empty").1
    }
}

/// Shortest sliding path from the least multinode to the nearest
/// hole-adjacent occupied node, or `None` when there is nothing to slide.
pub fn disp_plan(ck: &ComponentKnowledge) -> Option<SlidingPlan> {
    let coord = ck.vertices().find(|v| v.is_multinode())?;
    let mut parent: BTreeMap<AgentId, (AgentId, Port)> = BTreeMap::new();
    let mut queue = VecDeque::from([coord.key]);
    let mut seen = std::collections::BTreeSet::from([coord.key]);
    let target = loop {
        let key = queue.pop_front()?;
        let v = ck.vertex(key).expect("queued vertices exist");
        if !v.hole_ports.is_empty() {
            break v;
        }
        for &(port, next) in &v.links {
            if seen.insert(next) {
                parent.insert(next, (key, port));
                queue.push_back(next);
            }
        }
    };
    let mut path = vec![target.key];
    let mut moves = vec![(target.active[0], target.hole_ports[0])];
    let mut cur = target.key;
    while let Some(&(prev, port)) = parent.get(&cur) {
        let pv = ck.vertex(prev).expect("parent exists");
        path.push(prev);
        moves.push((pv.active[0], port));
        cur = prev;
    }
    path.reverse();
    moves.reverse();
    Some(SlidingPlan { path, moves })
}
