use crate::adversary::{Adversary, Oracle};
use crate::algorithms::{disp_plan, Action, Algorithm, Decision};
use crate::engine::{
    apply_decisions, deliver, stitch_component, ActionCode, AgentId, AgentState, Communication,
    Configuration, Delivery, RoundRecord, TraceRecord, Visibility,
};
use crate::error::EngineError;
use crate::graph::Snapshot;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub visibility: Visibility,
    pub communication: Communication,
    pub max_rounds: usize,
    /// Check plan agreement and persistent-state shape every round.
    pub audit: bool,
    /// Window length recorded in the trace header for later verification.
    pub window: Option<usize>,
}

impl RunConfig {
    pub fn new(max_rounds: usize) -> Self {
        RunConfig {
            visibility: Visibility::OneHop,
            communication: Communication::Global,
            max_rounds,
            audit: true,
            window: None,
        }
    }

    pub fn with_models(mut self, visibility: Visibility, communication: Communication) -> Self {
        self.visibility = visibility;
        self.communication = communication;
        self
    }

    pub fn with_window(mut self, t: usize) -> Self {
        self.window = Some(t);
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Outcome {
    /// First round after which at most one agent sits on every node.
    pub dispersed_at: Option<usize>,
    /// First round by whose end every node has hosted an agent.
    pub explored_at: Option<usize>,
    /// Round in which the last agent terminated.
    pub all_terminated_at: Option<usize>,
    pub rounds_executed: usize,
    pub budget_exhausted: bool,
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub trace: TraceRecord,
    pub outcome: Outcome,
    pub states: Vec<AgentState>,
    pub final_config: Configuration,
    pub audit_violations: Vec<String>,
}

type Step = Option<(Decision, AgentState)>;

fn compute(
    snapshot: &Snapshot,
    config: &Configuration,
    states: &[AgentState],
    algorithm: &Algorithm,
    visibility: Visibility,
    communication: Communication,
) -> Result<(Delivery, Vec<Step>), EngineError> {
    let delivery = deliver(snapshot, config, states, visibility, communication);
    let mut steps = Vec::with_capacity(states.len());
    for st in states {
        if st.terminated {
            steps.push(None);
            continue;
        }
        let out = algorithm.step(st, delivery.view(st.id), delivery.inbox(st.id))?;
        steps.push(Some(out));
    }
    Ok((delivery, steps))
}

/// Side-effect-free evaluation of one compute phase. Only active agents
/// appear in the result.
pub fn compute_preview(
    snapshot: &Snapshot,
    config: &Configuration,
    states: &[AgentState],
    algorithm: &Algorithm,
    visibility: Visibility,
    communication: Communication,
) -> Result<Vec<(AgentId, Decision)>, EngineError> {
    let (_, steps) = compute(snapshot, config, states, algorithm, visibility, communication)?;
    Ok(states
        .iter()
        .zip(steps)
        .filter_map(|(st, s)| s.map(|(d, _)| (st.id, d)))
        .collect())
}

struct EngineOracle<'a> {
    round: usize,
    config: &'a Configuration,
    states: &'a [AgentState],
    algorithm: &'a Algorithm,
    visibility: Visibility,
    communication: Communication,
}

impl Oracle for EngineOracle<'_> {
    fn preview(&self, snapshot: &Snapshot) -> Result<Vec<(AgentId, Decision)>, EngineError> {
        compute_preview(
            snapshot,
            self.config,
            self.states,
            self.algorithm,
            self.visibility,
            self.communication,
        )
    }

    fn predict(&self, snapshot: &Snapshot) -> Result<Configuration, EngineError> {
        let d = self.preview(snapshot)?;
        apply_decisions(snapshot, self.config, &d, self.round)
    }
}

fn code(d: Decision) -> ActionCode {
    match (d.action, d.terminate) {
        (Action::Stay, false) => ActionCode::Stay,
        (Action::Stay, true) => ActionCode::Terminate,
        (Action::Move(p), false) => ActionCode::Move(p),
        (Action::Move(p), true) => ActionCode::MoveTerminate(p),
    }
}

fn audit_round(
    round: usize,
    delivery: &Delivery,
    before: &[AgentState],
    after: &[AgentState],
    budget: usize,
    out: &mut Vec<String>,
) {
    // every agent derives the plan from its own inbox; agents sharing a
    // group must agree
    let mut plans: Vec<(usize, AgentId, Option<_>)> = Vec::new();
    for st in before.iter().filter(|s| !s.terminated) {
        let plan = stitch_component(delivery.inbox(st.id))
            .ok()
            .and_then(|ck| disp_plan(&ck));
        plans.push((delivery.group_of(st.id), st.id, plan));
    }
    let mut first: std::collections::BTreeMap<usize, usize> = Default::default();
    for (i, (g, id, plan)) in plans.iter().enumerate() {
        let j = *first.entry(*g).or_insert(i);
        if plans[j].2 != *plan {
            out.push(format!(
                "round {round}: {} and {id} computed different sliding plans",
                plans[j].1
            ));
        }
    }
    for (b, a) in before.iter().zip(after) {
        if a.to_bytes().len() != AgentState::ENCODED_LEN || a.id != b.id {
            out.push(format!("round {round}: {} changed identity", b.id));
        }
        if b.terminated && !a.terminated {
            out.push(format!("round {round}: {} un-terminated", b.id));
        }
        if a.t as usize > budget {
            out.push(format!("round {round}: {} counter exceeds the round budget", b.id));
        }
    }
}

/// Runs `algorithm` from `initial` against `adversary` until every agent
/// has terminated or the round budget is spent.
pub fn run(
    adversary: &mut dyn Adversary,
    initial: &Configuration,
    algorithm: &Algorithm,
    cfg: &RunConfig,
) -> Result<RunReport, EngineError> {
    if cfg.max_rounds == 0 {
        return Err(EngineError::ZeroBudget);
    }
    let n = initial.n();
    if adversary.n() != n {
        return Err(EngineError::BadPlacement {
            agents: initial.k(),
            n: adversary.n(),
        });
    }
    let mut config = initial.clone();
    let mut states: Vec<AgentState> = config.agents().map(AgentState::new).collect();
    let mut visited = vec![false; n];
    for p in config.positions() {
        visited[p.0] = true;
    }
    let mut outcome = Outcome::default();
    let mut records = Vec::new();
    let mut violations = Vec::new();

    for round in 0..cfg.max_rounds {
        let snapshot = {
            let oracle = EngineOracle {
                round,
                config: &config,
                states: &states,
                algorithm,
                visibility: cfg.visibility,
                communication: cfg.communication,
            };
            adversary.next_snapshot(round, &config, Some(&oracle))?
        };
        if snapshot.n() != n {
            return Err(crate::error::GraphError::NodeCountMismatch {
                expected: n,
                found: snapshot.n(),
            }
            .into());
        }
        let (delivery, steps) = compute(
            &snapshot,
            &config,
            &states,
            algorithm,
            cfg.visibility,
            cfg.communication,
        )?;
        let decisions: Vec<(AgentId, Decision)> = states
            .iter()
            .zip(&steps)
            .filter_map(|(st, s)| s.map(|(d, _)| (st.id, d)))
            .collect();
        let next = apply_decisions(&snapshot, &config, &decisions, round)?;
        let mut next_states = states.clone();
        let mut actions = Vec::with_capacity(states.len());
        for (i, s) in steps.iter().enumerate() {
            match s {
                None => actions.push(ActionCode::Idle),
                Some((d, ns)) => {
                    actions.push(code(*d));
                    next_states[i] = AgentState {
                        terminated: ns.terminated || d.terminate,
                        ..*ns
                    };
                }
            }
        }
        if cfg.audit {
            audit_round(
                round,
                &delivery,
                &states,
                &next_states,
                cfg.max_rounds,
                &mut violations,
            );
        }
        records.push(RoundRecord {
            round,
            edges: snapshot.edges().to_vec(),
            before: config.positions().to_vec(),
            actions,
            after: next.positions().to_vec(),
            components: snapshot.components(),
            messages: delivery.message_count(),
        });
        for p in next.positions() {
            visited[p.0] = true;
        }
        if outcome.dispersed_at.is_none() && next.is_dispersed() {
            outcome.dispersed_at = Some(round);
        }
        if outcome.explored_at.is_none() && visited.iter().all(|&v| v) {
            outcome.explored_at = Some(round);
        }
        let all_done = next_states.iter().all(|s| s.terminated);
        config = next;
        states = next_states;
        outcome.rounds_executed = round + 1;
        if all_done {
            outcome.all_terminated_at = Some(round);
            break;
        }
    }
    outcome.budget_exhausted = outcome.all_terminated_at.is_none();
    Ok(RunReport {
        trace: TraceRecord {
            n,
            k: initial.k(),
            algorithm: algorithm.name().to_string(),
            visibility: cfg.visibility,
            communication: cfg.communication,
            window: cfg.window,
            rounds: records,
        },
        outcome,
        states,
        final_config: config,
        audit_violations: violations,
    })
}
