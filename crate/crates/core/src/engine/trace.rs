use std::fmt::Write as _;

use crate::engine::{Communication, Visibility};
use crate::error::TraceError;
use crate::graph::{Edge, NodeId, Port, Snapshot, TraceSchedule};

/// Per-agent action as logged. `Idle` marks an agent that had already
/// terminated before the round.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ActionCode {
    Idle,
    Stay,
    Move(Port),
    Terminate,
    MoveTerminate(Port),
}

impl ActionCode {
    pub fn port(self) -> Option<Port> {
        match self {
            ActionCode::Move(p) | ActionCode::MoveTerminate(p) => Some(p),
            _ => None,
        }
    }

    pub fn terminates(self) -> bool {
        matches!(self, ActionCode::Terminate | ActionCode::MoveTerminate(_))
    }

    fn encode(self) -> String {
        match self {
            ActionCode::Idle => "-".into(),
            ActionCode::Stay => "s".into(),
            ActionCode::Move(p) => format!("m{p}"),
            ActionCode::Terminate => "t".into(),
            ActionCode::MoveTerminate(p) => format!("m{p}t"),
        }
    }

    fn decode(s: &str) -> Option<Self> {
        match s {
            "-" => Some(ActionCode::Idle),
            "s" => Some(ActionCode::Stay),
            "t" => Some(ActionCode::Terminate),
            _ => {
                let rest = s.strip_prefix('m')?;
                match rest.strip_suffix('t') {
                    Some(p) => p.parse().ok().map(ActionCode::MoveTerminate),
                    None => rest.parse().ok().map(ActionCode::Move),
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundRecord {
    pub round: usize,
    pub edges: Vec<Edge>,
    pub before: Vec<NodeId>,
    pub actions: Vec<ActionCode>,
    pub after: Vec<NodeId>,
    pub components: Vec<Vec<NodeId>>,
    pub messages: usize,
}

/// Replayable log of a run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceRecord {
    pub n: usize,
    pub k: usize,
    pub algorithm: String,
    pub visibility: Visibility,
    pub communication: Communication,
    /// Window length the schedule was built for, when known.
    pub window: Option<usize>,
    pub rounds: Vec<RoundRecord>,
}

fn join_nodes(nodes: &[NodeId], sep: &str) -> String {
    nodes
        .iter()
        .map(|v| v.0.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

impl TraceRecord {
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "trace n={} k={} algorithm={} visibility={} communication={}",
            self.n,
            self.k,
            self.algorithm,
            self.visibility.name(),
            self.communication.name()
        );
        if let Some(w) = self.window {
            write!(out, " window={w}").unwrap();
        }
        out.push('\n');
        for rec in &self.rounds {
            writeln!(out, "r={}", rec.round).unwrap();
            out.push_str("edges:");
            for e in &rec.edges {
                write!(out, " {}-{}:{},{}", e.u, e.v, e.port_u, e.port_v).unwrap();
            }
            out.push('\n');
            writeln!(out, "pos: {}", join_nodes(&rec.before, " ")).unwrap();
            let acts: Vec<String> = rec.actions.iter().map(|a| a.encode()).collect();
            writeln!(out, "act: {}", acts.join(" ")).unwrap();
            writeln!(out, "after: {}", join_nodes(&rec.after, " ")).unwrap();
            let comps: Vec<String> = rec.components.iter().map(|c| join_nodes(c, ",")).collect();
            writeln!(out, "comp: {}", comps.join(" ")).unwrap();
            writeln!(out, "msgs: {}", rec.messages).unwrap();
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, TraceError> {
        let err = |line: usize, msg: &str| TraceError::Corrupt {
            line,
            msg: msg.to_string(),
        };
        let lines: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l))
            .filter(|(_, l)| !l.trim().is_empty())
            .collect();
        let (_, header) = lines.first().ok_or_else(|| err(1, "empty trace"))?;
        let mut toks = header.split_whitespace();
        if toks.next() != Some("trace") {
            return Err(err(1, "header must start with `trace`"));
        }
        let (mut n, mut k, mut alg, mut vis, mut comm, mut window) =
            (None, None, None, None, None, None);
        for tok in toks {
            let (key, val) = tok.split_once('=').ok_or_else(|| err(1, "bad header field"))?;
            match key {
                "n" => n = val.parse::<usize>().ok(),
                "k" => k = val.parse::<usize>().ok(),
                "algorithm" => alg = Some(val.to_string()),
                "visibility" => vis = val.parse::<Visibility>().ok(),
                "communication" => comm = val.parse::<Communication>().ok(),
                "window" => {
                    window = Some(val.parse::<usize>().map_err(|_| err(1, "bad window"))?)
                }
                _ => return Err(err(1, "unknown header field")),
            }
        }
        let (Some(n), Some(k), Some(algorithm), Some(visibility), Some(communication)) =
            (n, k, alg, vis, comm)
        else {
            return Err(err(1, "incomplete header"));
        };
        let body = &lines[1..];
        if !body.len().is_multiple_of(7) {
            return Err(err(
                body.last().map_or(1, |l| l.0),
                "truncated round block",
            ));
        }
        let mut rounds = Vec::new();
        for block in body.chunks(7) {
            let field = |i: usize, name: &str| -> Result<(usize, &str), TraceError> {
                let (ln, l) = block[i];
                l.strip_prefix(name)
                    .map(|rest| (ln, rest.trim()))
                    .ok_or_else(|| err(ln, &format!("expected `{name}`")))
            };
            let (ln, r) = field(0, "r=")?;
            let round: usize = r.parse().map_err(|_| err(ln, "bad round number"))?;
            if round != rounds.len() {
                return Err(err(ln, "rounds out of order"));
            }
            let (ln, e) = field(1, "edges:")?;
            let mut edges = Vec::new();
            for tok in e.split_whitespace() {
                edges.push(parse_edge(tok).ok_or_else(|| err(ln, "bad edge"))?);
            }
            let snap = Snapshot::new(n, edges).map_err(|e| err(ln, &e.to_string()))?;
            let nodes = |ln: usize, s: &str| -> Result<Vec<NodeId>, TraceError> {
                let v: Vec<NodeId> = s
                    .split_whitespace()
                    .map(|t| t.parse::<usize>().map(NodeId))
                    .collect::<Result<_, _>>()
                    .map_err(|_| err(ln, "bad node index"))?;
                if v.len() != k || v.iter().any(|x| x.0 >= n) {
                    return Err(err(ln, "expected one in-range node per agent"));
                }
                Ok(v)
            };
            let (ln, p) = field(2, "pos:")?;
            let before = nodes(ln, p)?;
            let (ln, a) = field(3, "act:")?;
            let actions: Vec<ActionCode> = a
                .split_whitespace()
                .map(ActionCode::decode)
                .collect::<Option<_>>()
                .ok_or_else(|| err(ln, "bad action code"))?;
            if actions.len() != k {
                return Err(err(ln, "expected one action per agent"));
            }
            let (ln, af) = field(4, "after:")?;
            let after = nodes(ln, af)?;
            let (ln, c) = field(5, "comp:")?;
            let components = c
                .split_whitespace()
                .map(|g| {
                    g.split(',')
                        .map(|t| t.parse::<usize>().map(NodeId))
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| err(ln, "bad component list"))?;
            let (ln, m) = field(6, "msgs:")?;
            let messages = m.parse().map_err(|_| err(ln, "bad message count"))?;
            rounds.push(RoundRecord {
                round,
                edges: snap.edges().to_vec(),
                before,
                actions,
                after,
                components,
                messages,
            });
        }
        Ok(TraceRecord {
            n,
            k,
            algorithm,
            visibility,
            communication,
            window,
            rounds,
        })
    }

    /// The emitted graph sequence.
    pub fn schedule(&self) -> TraceSchedule {
        let snaps = self
            .rounds
            .iter()
            .map(|r| Snapshot::new(self.n, r.edges.iter().copied()).expect("validated edges"))
            .collect();
        TraceSchedule::new(self.n, snaps).expect("uniform node count")
    }
}

fn parse_edge(tok: &str) -> Option<Edge> {
    let (nodes, ports) = tok.split_once(':')?;
    let (u, v) = nodes.split_once('-')?;
    let (pu, pv) = ports.split_once(',')?;
    Some(Edge::new(
        u.parse().ok()?,
        v.parse().ok()?,
        pu.parse().ok()?,
        pv.parse().ok()?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> TraceRecord {
        let s = Snapshot::canonical(3, [(0, 1), (1, 2)]).unwrap();
        TraceRecord {
            n: 3,
            k: 2,
            algorithm: "alg3".into(),
            visibility: Visibility::OneHop,
            communication: Communication::Global,
            window: Some(2),
            rounds: vec![
                RoundRecord {
                    round: 0,
                    edges: s.edges().to_vec(),
                    before: vec![NodeId(0), NodeId(0)],
                    actions: vec![ActionCode::Stay, ActionCode::MoveTerminate(0)],
                    after: vec![NodeId(0), NodeId(1)],
                    components: s.components(),
                    messages: 4,
                },
                RoundRecord {
                    round: 1,
                    edges: vec![],
                    before: vec![NodeId(0), NodeId(1)],
                    actions: vec![ActionCode::Terminate, ActionCode::Idle],
                    after: vec![NodeId(0), NodeId(1)],
                    components: Snapshot::empty(3).components(),
                    messages: 1,
                },
            ],
        }
    }

    #[test]
    fn text_round_trip() {
        let t = sample();
        let text = t.to_text();
        assert!(text.starts_with(
            "trace n=3 k=2 algorithm=alg3 visibility=one_hop communication=global window=2\nr=0\nedges: 0-1:0,0 1-2:1,0\npos: 0 0\nact: s m0t\n"
        ));
        assert!(text.contains("\nedges:\n"));
        assert_eq!(TraceRecord::parse(&text).unwrap(), t);
    }

    #[test]
    fn corrupt_traces_are_rejected() {
        let text = sample().to_text();
        assert!(TraceRecord::parse(&text.replace("act: s m0t", "act: s q")).is_err());
        assert!(TraceRecord::parse(&text.replace("pos: 0 0", "pos: 0")).is_err());
        let cut: String = text.lines().take(5).map(|l| format!("{l}\n")).collect();
        assert!(TraceRecord::parse(&cut).is_err());
        assert!(TraceRecord::parse("").is_err());
    }
}
