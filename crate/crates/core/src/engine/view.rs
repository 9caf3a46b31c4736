use crate::engine::{AgentId, AgentState, Communication, Configuration, Visibility};
use crate::graph::{NodeId, Port, Snapshot};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PortView {
    pub port: Port,
    /// Sorted agents on the neighbour (empty for a hole); `None` when the
    /// agent has no 1-hop visibility.
    pub neighbor: Option<Vec<AgentId>>,
}

/// What an agent observes at its node during one round.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LocalView {
    pub degree: usize,
    pub colocated: Vec<AgentId>,
    pub ports: Vec<PortView>,
}

impl LocalView {
    pub fn count(&self) -> usize {
        self.colocated.len()
    }

    /// Ports leading to holes, ascending. Always empty without 1-hop
    /// visibility.
    pub fn hole_ports(&self) -> Vec<Port> {
        self.ports
            .iter()
            .filter(|p| p.neighbor.as_ref().is_some_and(|a| a.is_empty()))
            .map(|p| p.port)
            .collect()
    }

    pub fn least_hole_port(&self) -> Option<Port> {
        self.hole_ports().first().copied()
    }
}

pub fn build_view(
    snapshot: &Snapshot,
    config: &Configuration,
    node: NodeId,
    visibility: Visibility,
) -> LocalView {
    let ports = snapshot
        .ports(node)
        .map(|(port, w)| PortView {
            port,
            neighbor: match visibility {
                Visibility::OneHop => Some(config.agents_at(w)),
                Visibility::ZeroHop => None,
            },
        })
        .collect();
    LocalView {
        degree: snapshot.degree(node),
        colocated: config.agents_at(node),
        ports,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Broadcast {
    pub sender: AgentId,
    pub count: usize,
    pub view: LocalView,
}

/// Broadcasts grouped by delivery scope (a component, or a node in
/// face-to-face mode). Every agent reads the group it belongs to.
#[derive(Debug, Clone)]
pub struct Delivery {
    groups: Vec<Vec<Broadcast>>,
    group_of: Vec<usize>,
    views: Vec<LocalView>,
}

impl Delivery {
    /// Broadcasts received by `a`, sorted by sender.
    pub fn inbox(&self, a: AgentId) -> &[Broadcast] {
        &self.groups[self.group_of[a.index()]]
    }

    pub fn view(&self, a: AgentId) -> &LocalView {
        &self.views[a.index()]
    }

    pub fn group_of(&self, a: AgentId) -> usize {
        self.group_of[a.index()]
    }

    /// Total number of (sender, receiver) message deliveries.
    pub fn message_count(&self) -> usize {
        let mut members = vec![0usize; self.groups.len()];
        for &g in &self.group_of {
            members[g] += 1;
        }
        self.groups
            .iter()
            .zip(members)
            .map(|(g, m)| g.len() * m)
            .sum()
    }
}

/// Communicate phase: every non-terminated agent broadcasts its view.
pub fn deliver(
    snapshot: &Snapshot,
    config: &Configuration,
    states: &[AgentState],
    visibility: Visibility,
    mode: Communication,
) -> Delivery {
    let n = snapshot.n();
    let node_views: Vec<Option<LocalView>> = {
        let counts = config.counts();
        (0..n)
            .map(|v| (counts[v] > 0).then(|| build_view(snapshot, config, NodeId(v), visibility)))
            .collect()
    };
    let scope: Vec<usize> = match mode {
        Communication::Global => snapshot.component_labels(),
        Communication::FaceToFace => (0..n).collect(),
    };
    let groups_len = scope.iter().max().map_or(0, |m| m + 1);
    let mut groups = vec![Vec::new(); groups_len];
    let mut group_of = Vec::with_capacity(config.k());
    let mut views = Vec::with_capacity(config.k());
    for a in config.agents() {
        let v = config.position(a);
        let view = node_views[v.0].clone().expect("occupied node has a view");
        group_of.push(scope[v.0]);
        if !states[a.index()].terminated {
            groups[scope[v.0]].push(Broadcast {
                sender: a,
                count: view.count(),
                view: view.clone(),
            });
        }
        views.push(view);
    }
    // agents are visited in id order, so every group is already sorted
    Delivery {
        groups,
        group_of,
        views,
    }
}
