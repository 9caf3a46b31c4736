//! Determinism, replay and oracle faithfulness.

use std::sync::{Arc, Mutex};

use dynadisp::adversary::{AdversaryKind, Oracle};
use dynadisp::harness::{parse_scenario, sweep};
use dynadisp::{
    Adversary, AdversaryError, Algorithm, AlgorithmKind, Configuration, NodeId, RunConfig,
    Snapshot,
};

/// Wraps an adversary and records what the oracle predicted for every
/// emitted snapshot.
struct Recording {
    inner: Box<dyn Adversary>,
    predictions: Arc<Mutex<Vec<Configuration>>>,
}

impl Adversary for Recording {
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn name(&self) -> &str {
        "recording"
    }

    fn next_snapshot(
        &mut self,
        round: usize,
        config: &Configuration,
        oracle: Option<&dyn Oracle>,
    ) -> Result<Snapshot, AdversaryError> {
        let s = self.inner.next_snapshot(round, config, oracle)?;
        let oracle = oracle.expect("the engine always supplies an oracle");
        let predicted = oracle
            .predict(&s)
            .map_err(|e| AdversaryError::Oracle(Box::new(e)))?;
        self.predictions.lock().unwrap().push(predicted);
        Ok(s)
    }
}

#[test]
fn oracle_predictions_match_the_executed_round() {
    let cases = [
        (AdversaryKind::SortedPathComm, 8, 7, 1, AlgorithmKind::Alg3),
        (AdversaryKind::KtLower, 9, 6, 3, AlgorithmKind::Alg1Explicit),
        (AdversaryKind::CtExploration, 8, 7, 2, AlgorithmKind::Alg2),
        (AdversaryKind::TwoStarsTime, 10, 9, 1, AlgorithmKind::Alg2),
    ];
    for (kind, n, k, t, alg) in cases {
        let predictions = Arc::new(Mutex::new(Vec::new()));
        let mut adv = Recording {
            inner: kind.build(n, k, t).unwrap(),
            predictions: predictions.clone(),
        };
        let algorithm = Algorithm {
            kind: alg,
            window: (alg == AlgorithmKind::Alg1Explicit).then_some(t as u32),
        };
        let start = Configuration::colocated(n, k, NodeId(0)).unwrap();
        let rep = dynadisp::engine::run(&mut adv, &start, &algorithm, &RunConfig::new(60)).unwrap();
        let predicted = predictions.lock().unwrap();
        assert_eq!(predicted.len(), rep.trace.rounds.len(), "{kind:?}");
        for (p, r) in predicted.iter().zip(&rep.trace.rounds) {
            assert_eq!(p.positions(), &r.after[..], "{kind:?} round {}", r.round);
        }
    }
}

#[test]
fn repeated_runs_are_byte_identical() {
    for text in [
        "n=14 k=10 T=4 seed=99 schedule=random property=t_path algorithm=alg1_explicit placement=random",
        "n=9 k=8 T=1 adversary=sorted_path_visibility algorithm=alg2 visibility=zero_hop max_rounds=90",
        "n=6 k=5 T=1 adversary=sorted_path_dispersed algorithm=port0_greedy visibility=zero_hop placement=dispersed max_rounds=50",
    ] {
        let sc = parse_scenario(text).unwrap();
        let a = sc.run().unwrap().trace.to_text();
        let b = sc.run().unwrap().trace.to_text();
        assert_eq!(a, b, "{text}");
    }
}

#[test]
fn single_seed_sweep_equals_direct_run() {
    let sc = parse_scenario(
        "n=10 k=10 T=2 seed=5 schedule=random property=t_path algorithm=alg1_explicit placement=colocated",
    )
    .unwrap();
    let direct = sc.run().unwrap();
    let s = sweep(&sc, 5..6);
    assert_eq!(s.runs, 1);
    assert_eq!(s.dispersed_at.max, direct.outcome.dispersed_at);
    assert_eq!(s.total_rounds.max, direct.outcome.all_terminated_at.map(|r| r + 1));
    assert_eq!(s.violations, 0);
}

#[test]
fn replayed_schedule_reproduces_the_trace() {
    // an adaptive run, replayed obliviously from its own recorded graphs,
    // must produce the same trace
    let sc = parse_scenario("n=8 k=6 T=3 adversary=kt_lower algorithm=alg1_explicit").unwrap();
    let rep = sc.run().unwrap();
    let sched = rep.trace.schedule();
    let mut replay = dynadisp::adversary::ScheduleAdversary::new(sched, "replay");
    let again = dynadisp::engine::run(
        &mut replay,
        &sc.initial_configuration().unwrap(),
        &sc.algorithm(),
        &RunConfig::new(sc.max_rounds).with_window(3),
    )
    .unwrap();
    assert_eq!(again.trace.rounds, rep.trace.rounds);
}
