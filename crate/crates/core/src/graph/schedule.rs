use std::fmt::Write as _;

use super::snapshot::{Edge, Snapshot};
use crate::error::GraphError;

/// A dynamic graph: a deterministic map from round number to snapshot.
pub trait Schedule: Send + Sync {
    fn n(&self) -> usize;

    /// Number of rounds available, `None` for unbounded generators.
    fn horizon(&self) -> Option<usize>;

    /// Snapshot of round `r`. Repeated calls for the same `r` return equal values.
    fn snapshot(&self, r: usize) -> Result<Snapshot, GraphError>;

    /// Materialises rounds `0..rounds`.
    fn prefix(&self, rounds: usize) -> Result<TraceSchedule, GraphError> {
        let snaps = (0..rounds)
            .map(|r| self.snapshot(r))
            .collect::<Result<Vec<_>, _>>()?;
        TraceSchedule::new(self.n(), snaps)
    }
}

/// A finite, explicit schedule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceSchedule {
    n: usize,
    rounds: Vec<Snapshot>,
}

impl TraceSchedule {
    pub fn new(n: usize, rounds: Vec<Snapshot>) -> Result<Self, GraphError> {
        if let Some(bad) = rounds.iter().find(|s| s.n() != n) {
            return Err(GraphError::NodeCountMismatch {
                expected: n,
                found: bad.n(),
            });
        }
        Ok(TraceSchedule { n, rounds })
    }

    /// Repeats `period` until `rounds` snapshots exist.
    pub fn periodic(n: usize, period: &[Snapshot], rounds: usize) -> Result<Self, GraphError> {
        let snaps = (0..rounds)
            .map(|r| period[r % period.len()].clone())
            .collect();
        TraceSchedule::new(n, snaps)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.rounds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rounds.is_empty()
    }

    pub fn rounds(&self) -> &[Snapshot] {
        &self.rounds
    }

    pub fn round(&self, r: usize) -> Option<&Snapshot> {
        self.rounds.get(r)
    }

    /// Serialises to the line-oriented schedule trace format.
    pub fn to_text(&self) -> String {
        let mut out = format!("n={} rounds={}\n", self.n, self.rounds.len());
        for (r, s) in self.rounds.iter().enumerate() {
            write!(out, "r={r}:").unwrap();
            for e in s.edges() {
                write!(out, " {}-{}:{},{}", e.u, e.v, e.port_u, e.port_v).unwrap();
            }
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let err = |line: usize, msg: &str| GraphError::Parse {
            line,
            msg: msg.to_string(),
        };
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or_else(|| err(1, "missing header"))?;
        let mut n = None;
        let mut count = None;
        for tok in header.split_whitespace() {
            match tok.split_once('=') {
                Some(("n", v)) => n = v.parse::<usize>().ok(),
                Some(("rounds", v)) => count = v.parse::<usize>().ok(),
                _ => return Err(err(1, "header must be `n=<n> rounds=<R>`")),
            }
        }
        let (n, count) = match (n, count) {
            (Some(n), Some(c)) => (n, c),
            _ => return Err(err(1, "header must be `n=<n> rounds=<R>`")),
        };
        let mut rounds = Vec::with_capacity(count);
        for (idx, line) in lines {
            let lineno = idx + 1;
            let (head, body) = line
                .split_once(':')
                .ok_or_else(|| err(lineno, "expected `r=<r>:`"))?;
            let r: usize = head
                .trim()
                .strip_prefix("r=")
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| err(lineno, "expected `r=<r>:`"))?;
            if r != rounds.len() {
                return Err(err(lineno, "rounds out of order"));
            }
            let mut edges = Vec::new();
            for tok in body.split_whitespace() {
                edges.push(parse_edge(tok).ok_or_else(|| err(lineno, "bad edge token"))?);
            }
            let snap = Snapshot::new(n, edges).map_err(|e| err(lineno, &e.to_string()))?;
            rounds.push(snap);
        }
        if rounds.len() != count {
            return Err(err(0, "round count does not match header"));
        }
        TraceSchedule::new(n, rounds)
    }
}

/// An unbounded schedule repeating a fixed period.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicSchedule {
    n: usize,
    period: Vec<Snapshot>,
}

impl PeriodicSchedule {
    pub fn new(n: usize, period: Vec<Snapshot>) -> Result<Self, GraphError> {
        if period.is_empty() {
            return Err(GraphError::ZeroWindow);
        }
        TraceSchedule::new(n, period.clone())?;
        Ok(PeriodicSchedule { n, period })
    }

    pub fn period(&self) -> usize {
        self.period.len()
    }
}

impl Schedule for PeriodicSchedule {
    fn n(&self) -> usize {
        self.n
    }

    fn horizon(&self) -> Option<usize> {
        None
    }

    fn snapshot(&self, r: usize) -> Result<Snapshot, GraphError> {
        Ok(self.period[r % self.period.len()].clone())
    }
}

impl<S: Schedule + ?Sized> Schedule for Box<S> {
    fn n(&self) -> usize {
        (**self).n()
    }

    fn horizon(&self) -> Option<usize> {
        (**self).horizon()
    }

    fn snapshot(&self, r: usize) -> Result<Snapshot, GraphError> {
        (**self).snapshot(r)
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

impl Schedule for TraceSchedule {
    fn n(&self) -> usize {
        self.n
    }

    fn horizon(&self) -> Option<usize> {
        Some(self.rounds.len())
    }

    fn snapshot(&self, r: usize) -> Result<Snapshot, GraphError> {
        self.rounds.get(r).cloned().ok_or(GraphError::OutOfRange {
            start: r,
            end: r,
            rounds: self.rounds.len(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_format_is_exact() {
        let a = Snapshot::canonical(3, [(1, 2), (0, 1)]).unwrap();
        let t = TraceSchedule::new(3, vec![a, Snapshot::empty(3)]).unwrap();
        let text = t.to_text();
        assert_eq!(text, "n=3 rounds=2\nr=0: 0-1:0,0 1-2:1,0\nr=1:\n");
        assert_eq!(TraceSchedule::parse(&text).unwrap(), t);
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(TraceSchedule::parse("").is_err());
        assert!(TraceSchedule::parse("n=2 rounds=1\nr=0: 0-1:0\n").is_err());
        assert!(TraceSchedule::parse("n=2 rounds=2\nr=0: 0-1:0,0\n").is_err());
        assert!(TraceSchedule::parse("n=2 rounds=1\nr=0: 0-1:1,0\n").is_err());
    }

    #[test]
    fn out_of_range_round() {
        let t = TraceSchedule::new(2, vec![Snapshot::empty(2)]).unwrap();
        assert!(t.snapshot(1).is_err());
        assert_eq!(t.snapshot(0).unwrap(), t.snapshot(0).unwrap());
    }
}
