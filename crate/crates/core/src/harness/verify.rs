use crate::engine::{ActionCode, Communication, TraceRecord, Visibility};
use crate::graph::{NodeId, Snapshot};

/// Quantities recomputed from a trace without trusting the engine.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RunMetrics {
    pub rounds: usize,
    pub dispersed_at: Option<usize>,
    pub explored_at: Option<usize>,
    pub all_terminated_at: Option<usize>,
    pub first_termination: Option<usize>,
    pub final_multinodes: usize,
    /// Holes at the start of every round, then after the last one.
    pub holes: Vec<usize>,
    /// One flag per checked window: the window started with a multinode and
    /// made progress.
    pub window_progress: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VerifyReport {
    pub metrics: RunMetrics,
    pub violations: Vec<String>,
}

fn counts(n: usize, pos: &[NodeId]) -> Vec<usize> {
    let mut c = vec![0; n];
    for p in pos {
        c[p.0] += 1;
    }
    c
}

fn holes(n: usize, pos: &[NodeId]) -> usize {
    counts(n, pos).iter().filter(|&&c| c == 0).count()
}

fn multinodes(n: usize, pos: &[NodeId]) -> usize {
    counts(n, pos).iter().filter(|&&c| c >= 2).count()
}

/// Replays a trace and checks the model and algorithm invariants.
pub fn verify_trace(trace: &TraceRecord) -> VerifyReport {
    let n = trace.n;
    let k = trace.k;
    let mut v = Vec::new();
    let mut m = RunMetrics {
        rounds: trace.rounds.len(),
        ..Default::default()
    };
    let sliding = matches!(
        trace.algorithm.as_str(),
        "disp" | "alg1_explicit" | "alg1_implicit" | "alg3"
    ) && trace.communication == Communication::Global
        && trace.visibility == Visibility::OneHop;
    let no_early_stop = matches!(trace.algorithm.as_str(), "alg1_explicit");
    let mut terminated = vec![false; k];
    let mut visited = vec![false; n];
    let mut prev_after: Option<&[NodeId]> = None;
    let mut explored_prefix = Vec::new();

    if let Some(first) = trace.rounds.first() {
        for p in &first.before {
            visited[p.0] = true;
        }
    }
    for rec in &trace.rounds {
        let r = rec.round;
        if let Some(prev) = prev_after {
            if prev != rec.before.as_slice() {
                v.push(format!("round {r}: start positions differ from previous round's end"));
            }
        }
        if rec.before.len() != k || rec.after.len() != k {
            v.push(format!("round {r}: agent count not conserved"));
        }
        let snap = match Snapshot::new(n, rec.edges.iter().copied()) {
            Ok(s) => s,
            Err(e) => {
                v.push(format!("round {r}: invalid snapshot: {e}"));
                break;
            }
        };
        if snap.components() != rec.components {
            v.push(format!("round {r}: recorded components disagree with edges"));
        }
        let labels = snap.component_labels();
        let mut active_in = vec![0usize; n];
        let mut members_in = vec![0usize; n];
        for (i, (&act, (&b, &a))) in rec
            .actions
            .iter()
            .zip(rec.before.iter().zip(&rec.after))
            .enumerate()
        {
            let id = i + 1;
            if terminated[i] != (act == ActionCode::Idle) {
                v.push(format!("round {r}: agent {id} idle flag inconsistent with termination"));
            }
            let expected = match act.port() {
                Some(p) => match snap.neighbor(b, p) {
                    Some((w, _)) => Some(w),
                    None => {
                        v.push(format!("round {r}: agent {id} used port {p} at a node of degree {}", snap.degree(b)));
                        None
                    }
                },
                None => Some(b),
            };
            if let Some(w) = expected {
                if w != a {
                    v.push(format!("round {r}: agent {id} moved {b}->{a}, port-validity violated"));
                }
            }
            if act.terminates() {
                terminated[i] = true;
                m.first_termination.get_or_insert(r);
                if no_early_stop && !is_dispersed(n, &rec.before) {
                    v.push(format!("round {r}: agent {id} terminated before dispersion"));
                }
            }
            if act != ActionCode::Idle {
                active_in[labels[b.0]] += 1;
            }
            members_in[labels[b.0]] += 1;
        }
        let expected_msgs: usize = match trace.communication {
            Communication::Global => {
                (0..n).map(|c| active_in[c] * members_in[c]).sum()
            }
            Communication::FaceToFace => {
                let mut act = vec![0usize; n];
                let mut mem = vec![0usize; n];
                for (i, &b) in rec.before.iter().enumerate() {
                    mem[b.0] += 1;
                    if rec.actions[i] != ActionCode::Idle {
                        act[b.0] += 1;
                    }
                }
                (0..n).map(|x| act[x] * mem[x]).sum()
            }
        };
        if expected_msgs != rec.messages {
            v.push(format!("round {r}: message count {} but {} expected", rec.messages, expected_msgs));
        }
        if sliding && multinodes(n, &rec.after) > multinodes(n, &rec.before) {
            v.push(format!("round {r}: multinode count increased"));
        }
        m.holes.push(holes(n, &rec.before));
        for p in &rec.after {
            visited[p.0] = true;
        }
        let explored = visited.iter().all(|&x| x);
        explored_prefix.push(explored);
        if m.explored_at.is_none() && explored {
            m.explored_at = Some(r);
        }
        if m.dispersed_at.is_none() && is_dispersed(n, &rec.after) {
            m.dispersed_at = Some(r);
        }
        if terminated.iter().all(|&t| t) && m.all_terminated_at.is_none() {
            m.all_terminated_at = Some(r);
        }
        prev_after = Some(&rec.after);
    }
    if let Some(last) = trace.rounds.last() {
        m.holes.push(holes(n, &last.after));
        m.final_multinodes = multinodes(n, &last.after);
    }
    if let (Some(t), true) = (trace.window, sliding) {
        let exploring = trace.algorithm == "alg3";
        for start in 0..trace.rounds.len() {
            let end = start + t;
            if end > trace.rounds.len() {
                break;
            }
            if multinodes(n, &trace.rounds[start].before) == 0 {
                continue;
            }
            let ok = m.holes[end] < m.holes[start] || (exploring && explored_prefix[end - 1]);
            if !ok {
                v.push(format!("window starting at round {start}: no hole filled within {t} rounds"));
            }
            m.window_progress.push(ok);
        }
    }
    VerifyReport {
        metrics: m,
        violations: v,
    }
}

fn is_dispersed(n: usize, pos: &[NodeId]) -> bool {
    counts(n, pos).iter().all(|&c| c <= 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adversary::{golden, ScheduleAdversary};
    use crate::algorithms::{Algorithm, AlgorithmKind};
    use crate::engine::{run, Configuration, RunConfig};

    fn fig12_trace() -> TraceRecord {
        let mut adv = ScheduleAdversary::new(golden::fig12(), "fig12");
        let c = Configuration::new(4, vec![NodeId(0), NodeId(0), NodeId(1)]).unwrap();
        run(
            &mut adv,
            &c,
            &Algorithm::new(AlgorithmKind::Alg3),
            &RunConfig::new(24).with_window(6),
        )
        .unwrap()
        .trace
    }

    #[test]
    fn clean_trace_has_no_violations() {
        let t = fig12_trace();
        let rep = verify_trace(&t);
        assert_eq!(rep.violations, Vec::<String>::new());
        assert_eq!(rep.metrics.explored_at, Some(3));
        assert_eq!(rep.metrics.dispersed_at, None);
        assert_eq!(rep.metrics.final_multinodes, 1);
    }

    #[test]
    fn teleport_is_reported() {
        let mut t = fig12_trace();
        t.rounds[0].after[2] = NodeId(3);
        let rep = verify_trace(&t);
        assert!(rep.violations.iter().any(|s| s.contains("port-validity")));
    }

    #[test]
    fn bad_port_is_reported() {
        let mut t = fig12_trace();
        t.rounds[0].actions[0] = ActionCode::Move(5);
        let rep = verify_trace(&t);
        assert!(rep.violations.iter().any(|s| s.contains("port 5")));
    }
}
