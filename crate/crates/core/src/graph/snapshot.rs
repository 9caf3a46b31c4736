use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::error::GraphError;

/// Simulator-side identity of a node. Agents never observe it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub usize);

impl NodeId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub type Port = usize;

/// Undirected edge, normalised so that `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub u: NodeId,
    pub v: NodeId,
    pub port_u: Port,
    pub port_v: Port,
}

impl Edge {
    pub fn new(a: usize, b: usize, port_a: Port, port_b: Port) -> Self {
        if a <= b {
            Edge {
                u: NodeId(a),
                v: NodeId(b),
                port_u: port_a,
                port_v: port_b,
            }
        } else {
            Edge {
                u: NodeId(b),
                v: NodeId(a),
                port_u: port_b,
                port_v: port_a,
            }
        }
    }

    pub fn pair(&self) -> (usize, usize) {
        (self.u.0, self.v.0)
    }
}

/// One round of the dynamic graph: an anonymous, port-labelled simple graph.
///
/// Construction validates that there are no self-loops or parallel edges and
/// that the ports at every node are exactly `0..deg`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Snapshot {
    n: usize,
    edges: Vec<Edge>,
    // ports[v][p] = (neighbour, port at neighbour)
    ports: Vec<Vec<(NodeId, Port)>>,
}

impl Snapshot {
    pub fn new(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self, GraphError> {
        let mut edges: Vec<Edge> = edges
            .into_iter()
            .map(|e| Edge::new(e.u.0, e.v.0, e.port_u, e.port_v))
            .collect();
        edges.sort();
        let mut seen = BTreeSet::new();
        let mut slots: Vec<Vec<Option<(NodeId, Port)>>> = vec![Vec::new(); n];
        for e in &edges {
            let (a, b) = e.pair();
            for x in [a, b] {
                if x >= n {
                    return Err(GraphError::NodeOutOfRange { node: x, n });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            if !seen.insert((a, b)) {
                return Err(GraphError::DuplicateEdge(a, b));
            }
            for (x, px, y, py) in [(a, e.port_u, b, e.port_v), (b, e.port_v, a, e.port_u)] {
                let row = &mut slots[x];
                if row.len() <= px {
                    row.resize(px + 1, None);
                }
                if row[px].is_some() {
                    return Err(GraphError::BadPorts {
                        node: x,
                        degree: usize::MAX,
                    });
                }
                row[px] = Some((NodeId(y), py));
            }
        }
        let mut ports = Vec::with_capacity(n);
        for (node, row) in slots.into_iter().enumerate() {
            let degree = row.iter().filter(|s| s.is_some()).count();
            if row.len() != degree {
                return Err(GraphError::BadPorts { node, degree });
            }
            ports.push(row.into_iter().flatten().collect());
        }
        Ok(Snapshot { n, edges, ports })
    }

    /// Builds a snapshot from node pairs, numbering each node's ports by
    /// ascending neighbour index.
    pub fn canonical(
        n: usize,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut set = BTreeSet::new();
        for (a, b) in pairs {
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            for x in [a, b] {
                if x >= n {
                    return Err(GraphError::NodeOutOfRange { node: x, n });
                }
            }
            if !set.insert((a.min(b), a.max(b))) {
                return Err(GraphError::DuplicateEdge(a.min(b), a.max(b)));
            }
        }
        let mut nbrs: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(a, b) in &set {
            nbrs[a].push(b);
            nbrs[b].push(a);
        }
        for row in &mut nbrs {
            row.sort_unstable();
        }
        let port_of = |x: usize, y: usize| nbrs[x].binary_search(&y).expect("neighbour present");
        let edges: Vec<Edge> = set
            .iter()
            .map(|&(a, b)| Edge::new(a, b, port_of(a, b), port_of(b, a)))
            .collect();
        Snapshot::new(n, edges)
    }

    pub fn empty(n: usize) -> Self {
        Snapshot {
            n,
            edges: Vec::new(),
            ports: vec![Vec::new(); n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Edges sorted by (min endpoint, max endpoint).
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn degree(&self, v: NodeId) -> usize {
        self.ports[v.0].len()
    }

    /// Neighbour reached through `port` at `v`, with the arrival port.
    pub fn neighbor(&self, v: NodeId, port: Port) -> Option<(NodeId, Port)> {
        self.ports[v.0].get(port).copied()
    }

    /// `(port, neighbour)` pairs at `v` in port order.
    pub fn ports(&self, v: NodeId) -> impl Iterator<Item = (Port, NodeId)> + '_ {
        self.ports[v.0].iter().enumerate().map(|(p, &(w, _))| (p, w))
    }

    pub fn pairs(&self) -> BTreeSet<(usize, usize)> {
        self.edges.iter().map(Edge::pair).collect()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.ports[a].iter().any(|&(w, _)| w.0 == b)
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Connected components, each sorted, ordered by least member.
    pub fn components(&self) -> Vec<Vec<NodeId>> {
        let mut label = vec![usize::MAX; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if label[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut comp = vec![NodeId(start)];
            label[start] = id;
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for &(w, _) in &self.ports[x] {
                    if label[w.0] == usize::MAX {
                        label[w.0] = id;
                        comp.push(w);
                        queue.push_back(w.0);
                    }
                }
            }
            comp.sort();
            out.push(comp);
        }
        out
    }

    /// Component index of every node, consistent with [`Snapshot::components`].
    pub fn component_labels(&self) -> Vec<usize> {
        let mut label = vec![0; self.n];
        for (i, comp) in self.components().iter().enumerate() {
            for v in comp {
                label[v.0] = i;
            }
        }
        label
    }

    /// Hop distances from `source`; `None` for unreachable nodes.
    pub fn distances(&self, source: NodeId) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[source.0] = Some(0);
        let mut queue = VecDeque::from([source.0]);
        while let Some(x) = queue.pop_front() {
            let d = dist[x].unwrap_or(0);
            for &(w, _) in &self.ports[x] {
                if dist[w.0].is_none() {
                    dist[w.0] = Some(d + 1);
                    queue.push_back(w.0);
                }
            }
        }
        dist
    }

    /// Diameter of the round graph; `None` when disconnected.
    pub fn diameter(&self) -> Option<usize> {
        let mut best = 0;
        for v in 0..self.n {
            for d in self.distances(NodeId(v)) {
                best = best.max(d?);
            }
        }
        Some(best)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_ports_follow_neighbour_order() {
        let s = Snapshot::canonical(4, [(2, 0), (0, 1), (0, 3)]).unwrap();
        let at0: Vec<_> = s.ports(NodeId(0)).map(|(p, w)| (p, w.0)).collect();
        assert_eq!(at0, vec![(0, 1), (1, 2), (2, 3)]);
        assert_eq!(s.neighbor(NodeId(2), 0), Some((NodeId(0), 1)));
        assert_eq!(s.degree(NodeId(3)), 1);
    }

    #[test]
    fn rejects_bad_ports_and_loops() {
        // port 1 used at node 0 with degree 1
        let bad = Snapshot::new(3, [Edge::new(0, 1, 1, 0)]);
        assert!(matches!(bad, Err(GraphError::BadPorts { node: 0, .. })));
        let clash = Snapshot::new(3, [Edge::new(0, 1, 0, 0), Edge::new(0, 2, 0, 0)]);
        assert!(clash.is_err());
        assert_eq!(
            Snapshot::canonical(3, [(1, 1)]),
            Err(GraphError::SelfLoop(1))
        );
        assert_eq!(
            Snapshot::canonical(3, [(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert!(matches!(
            Snapshot::canonical(2, [(0, 2)]),
            Err(GraphError::NodeOutOfRange { node: 2, n: 2 })
        ));
    }

    #[test]
    fn components_sorted_by_least_member() {
        let s = Snapshot::canonical(4, [(0, 1), (0, 2)]).unwrap();
        let comps: Vec<Vec<usize>> = s
            .components()
            .into_iter()
            .map(|c| c.into_iter().map(NodeId::index).collect())
            .collect();
        assert_eq!(comps, vec![vec![0, 1, 2], vec![3]]);
        let e = Snapshot::empty(3);
        assert_eq!(e.components().len(), 3);
    }

    #[test]
    fn diameter_of_path_and_disconnected() {
        let p = Snapshot::canonical(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(p.diameter(), Some(3));
        assert_eq!(Snapshot::empty(2).diameter(), None);
        assert_eq!(Snapshot::empty(1).diameter(), Some(0));
    }
}
