use super::{disp_plan, Action, Decision};
use crate::engine::{stitch_component, AgentState, Broadcast, LocalView};
use crate::error::EngineError;

fn multinode_heard(view: &LocalView, msgs: &[Broadcast]) -> bool {
    view.count() > 1 || msgs.iter().any(|b| b.count > 1)
}

fn sliding_action(state: &AgentState, msgs: &[Broadcast]) -> Result<Action, EngineError> {
    let ck = stitch_component(msgs)?;
    Ok(disp_plan(&ck)
        .and_then(|p| p.port_for(state.id))
        .map_or(Action::Stay, Action::Move))
}

pub(super) fn disp(
    state: &AgentState,
    view: &LocalView,
    msgs: &[Broadcast],
) -> Result<(Decision, AgentState), EngineError> {
    if multinode_heard(view, msgs) {
        Ok((Decision::go(sliding_action(state, msgs)?), *state))
    } else {
        Ok((Decision::HALT, *state))
    }
}

pub(super) fn alg1(
    state: &AgentState,
    view: &LocalView,
    msgs: &[Broadcast],
    window: Option<u32>,
) -> Result<(Decision, AgentState), EngineError> {
    let mut next = *state;
    if multinode_heard(view, msgs) {
        next.t = 0;
        return Ok((Decision::go(sliding_action(state, msgs)?), next));
    }
    next.t = state.t.saturating_add(1);
    match window {
        Some(t) if next.t >= t => Ok((Decision::HALT, next)),
        _ => Ok((Decision::STAY, next)),
    }
}

pub(super) fn alg2(
    state: &AgentState,
    view: &LocalView,
    msgs: &[Broadcast],
) -> Result<(Decision, AgentState), EngineError> {
    if multinode_heard(view, msgs) {
        return Ok((Decision::go(sliding_action(state, msgs)?), *state));
    }
    Ok((dispersed_one_round(state, view).0, *state))
}

pub(super) fn alg3(
    state: &AgentState,
    view: &LocalView,
    msgs: &[Broadcast],
) -> Result<(Decision, AgentState), EngineError> {
    if multinode_heard(view, msgs) {
        return Ok((Decision::go(sliding_action(state, msgs)?), *state));
    }
    let leader = msgs
        .iter()
        .filter(|b| b.view.least_hole_port().is_some())
        .map(|b| b.sender)
        .min();
    let action = match (leader, view.least_hole_port()) {
        (Some(l), Some(p)) if l == state.id => Action::Move(p),
        _ => Action::Stay,
    };
    Ok((Decision::go(action), *state))
}

pub(super) fn dispersed_one_round(state: &AgentState, view: &LocalView) -> (Decision, AgentState) {
    let action = view.least_hole_port().map_or(Action::Stay, Action::Move);
    (
        Decision {
            action,
            terminate: true,
        },
        *state,
    )
}

pub(super) fn port0_greedy(
    state: &AgentState,
    view: &LocalView,
    msgs: &[Broadcast],
) -> Result<(Decision, AgentState), EngineError> {
    if multinode_heard(view, msgs) {
        return Ok((Decision::go(sliding_action(state, msgs)?), *state));
    }
    let least = msgs.iter().map(|b| b.sender).min();
    let action = if least == Some(state.id) && view.degree > 0 {
        Action::Move(0)
    } else {
        Action::Stay
    };
    Ok((Decision::go(action), *state))
}
