use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::adversary::{gen_random_with_property, golden, Adversary, AdversaryKind, ScheduleAdversary};
use crate::algorithms::{Algorithm, AlgorithmKind};
use crate::engine::{run, Communication, Configuration, RunConfig, RunReport, Visibility};
use crate::error::ScenarioError;
use crate::graph::{NodeId, Property, Schedule, TraceSchedule};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GoldenId {
    Fig1,
    Fig2,
    Fig12,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ScheduleSource {
    File(PathBuf),
    Golden(GoldenId),
    Random,
    Adversary(AdversaryKind),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Placement {
    /// Everyone on node 0.
    Colocated,
    /// Seeded uniform placement.
    Random,
    /// Agent i on node i - 1.
    Dispersed,
    Explicit(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub n: usize,
    pub k: usize,
    pub t: usize,
    pub schedule: ScheduleSource,
    /// Property the random generator (or a schedule file) is taken to
    /// satisfy.
    pub property: Property,
    pub density: f64,
    pub seed: u64,
    pub algorithm: AlgorithmKind,
    pub visibility: Visibility,
    pub communication: Communication,
    pub placement: Placement,
    pub max_rounds: usize,
    pub dispersed_known: bool,
}

fn perr(line: usize, msg: impl Into<String>) -> ScenarioError {
    ScenarioError::Parse {
        line,
        msg: msg.into(),
    }
}

fn pairs(line: &str) -> Vec<(String, String)> {
    // `key = value with spaces` or `k1=v1 k2=v2 ...`
    if line.matches('=').count() == 1 {
        let (k, v) = line.split_once('=').expect("one `=`");
        return vec![(k.trim().to_string(), v.trim().to_string())];
    }
    line.split_whitespace()
        .map(|tok| match tok.split_once('=') {
            Some((k, v)) => (k.to_string(), v.to_string()),
            None => (tok.to_string(), String::new()),
        })
        .collect()
}

/// Parses `key=value` lines (`#` starts a comment).
pub fn parse_scenario(text: &str) -> Result<Scenario, ScenarioError> {
    let mut n = None;
    let mut k = None;
    let mut t = 1usize;
    let mut schedule = None;
    let mut adversary = None;
    let mut property = Property::TPath;
    let mut density = 0.2;
    let mut seed = 0u64;
    let mut algorithm = None;
    let mut visibility = Visibility::OneHop;
    let mut communication = Communication::Global;
    let mut placement = Placement::Colocated;
    let mut max_rounds = None;
    let mut dispersed_known = false;
    let mut placement_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        for (key, val) in pairs(line) {
            if val.is_empty() {
                return Err(perr(line_no, format!("expected key=value, got `{key}`")));
            }
            let num = |v: &str| -> Result<usize, ScenarioError> {
                v.parse().map_err(|_| perr(line_no, format!("`{key}` needs an integer")))
            };
            match key.as_str() {
                "n" => n = Some(num(&val)?),
                "k" => k = Some(num(&val)?),
                "T" => t = num(&val)?,
                "seed" => {
                    seed = val
                        .parse()
                        .map_err(|_| perr(line_no, "`seed` needs an unsigned integer"))?
                }
                "density" => {
                    density = val
                        .parse()
                        .map_err(|_| perr(line_no, "`density` needs a number"))?
                }
                "max_rounds" => max_rounds = Some(num(&val)?),
                "property" => property = val.parse().map_err(|e: String| perr(line_no, e))?,
                "algorithm" => algorithm = Some(val.parse().map_err(|e: String| perr(line_no, e))?),
                "visibility" => visibility = val.parse().map_err(|e: String| perr(line_no, e))?,
                "communication" => {
                    communication = val.parse().map_err(|e: String| perr(line_no, e))?
                }
                "adversary" => {
                    adversary = Some(
                        val.parse::<AdversaryKind>()
                            .map_err(|e| perr(line_no, e))?,
                    )
                }
                "schedule" => {
                    schedule = Some(match val.as_str() {
                        "golden_fig1" => ScheduleSource::Golden(GoldenId::Fig1),
                        "golden_fig2" => ScheduleSource::Golden(GoldenId::Fig2),
                        "golden_fig12" => ScheduleSource::Golden(GoldenId::Fig12),
                        "random" => ScheduleSource::Random,
                        other => match other.strip_prefix("file:") {
                            Some(p) if !p.is_empty() => ScheduleSource::File(PathBuf::from(p)),
                            _ => return Err(perr(line_no, format!("unknown schedule `{other}`"))),
                        },
                    })
                }
                "placement" => {
                    placement_line = line_no;
                    placement = match val.as_str() {
                        "colocated" => Placement::Colocated,
                        "random" => Placement::Random,
                        "dispersed" => Placement::Dispersed,
                        list => Placement::Explicit(
                            list.split(|c: char| c == ',' || c.is_whitespace())
                                .filter(|s| !s.is_empty())
                                .map(|s| s.parse::<usize>())
                                .collect::<Result<_, _>>()
                                .map_err(|_| perr(line_no, "placement must be a node list"))?,
                        ),
                    }
                }
                "dispersed_known" => {
                    dispersed_known = match val.as_str() {
                        "true" | "1" => true,
                        "false" | "0" => false,
                        _ => return Err(perr(line_no, "`dispersed_known` needs true/false")),
                    }
                }
                other => return Err(perr(line_no, format!("unknown key `{other}`"))),
            }
        }
    }

    let n = n.ok_or(ScenarioError::Missing("n"))?;
    let k = k.ok_or(ScenarioError::Missing("k"))?;
    let algorithm = algorithm.ok_or(ScenarioError::Missing("algorithm"))?;
    let schedule = match (schedule, adversary) {
        (Some(_), Some(_)) => {
            return Err(ScenarioError::Constraint(
                "give either `schedule` or `adversary`, not both".into(),
            ))
        }
        (Some(s), None) => s,
        (None, Some(a)) => ScheduleSource::Adversary(a),
        (None, None) => return Err(ScenarioError::Missing("schedule")),
    };
    if n == 0 || k == 0 || k > n {
        return Err(ScenarioError::Constraint(format!(
            "need 1 <= k <= n, got n={n}, k={k}"
        )));
    }
    if t == 0 {
        return Err(ScenarioError::Constraint("T must be at least 1".into()));
    }
    if let Placement::Explicit(list) = &placement {
        if list.len() != k || list.iter().any(|&v| v >= n) {
            return Err(perr(
                placement_line,
                format!("placement must list {k} nodes below {n}"),
            ));
        }
    }
    if algorithm == AlgorithmKind::DispersedOneRound && !dispersed_known {
        return Err(ScenarioError::Constraint(
            "dispersed_one_round requires dispersed_known=true".into(),
        ));
    }
    let scenario = Scenario {
        n,
        k,
        t,
        schedule,
        property,
        density,
        seed,
        algorithm,
        visibility,
        communication,
        placement,
        max_rounds: max_rounds.unwrap_or(20 * n * t),
        dispersed_known,
    };
    if scenario.max_rounds == 0 {
        return Err(ScenarioError::Constraint("max_rounds must be positive".into()));
    }
    if let ScheduleSource::Golden(_) = scenario.schedule {
        if n != 4 {
            return Err(ScenarioError::Constraint("golden schedules have n=4".into()));
        }
    }
    Ok(scenario)
}

impl Scenario {
    pub fn initial_configuration(&self) -> Result<Configuration, ScenarioError> {
        let positions = match &self.placement {
            Placement::Colocated => vec![NodeId(0); self.k],
            Placement::Dispersed => (0..self.k).map(NodeId).collect(),
            Placement::Explicit(list) => list.iter().copied().map(NodeId).collect(),
            Placement::Random => {
                let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
                rng.set_stream(u64::MAX);
                (0..self.k).map(|_| NodeId(rng.gen_range(0..self.n))).collect()
            }
        };
        let c = Configuration::new(self.n, positions)?;
        if self.dispersed_known && !c.is_dispersed() {
            return Err(ScenarioError::Precondition(
                "dispersed_known is set but the placement is not dispersed".into(),
            ));
        }
        Ok(c)
    }

    pub fn algorithm(&self) -> Algorithm {
        Algorithm {
            kind: self.algorithm,
            window: (self.algorithm == AlgorithmKind::Alg1Explicit).then_some(self.t as u32),
        }
    }

    /// Property and window length the schedule is known to satisfy.
    pub fn guarantee(&self) -> (Property, usize) {
        match &self.schedule {
            ScheduleSource::Adversary(a) => a.guarantee(self.t),
            ScheduleSource::Golden(GoldenId::Fig1) => (Property::TPath, 3),
            ScheduleSource::Golden(GoldenId::Fig2) => (Property::ConnectivityTime, 3),
            ScheduleSource::Golden(GoldenId::Fig12) => (Property::TPath, 6),
            ScheduleSource::Random | ScheduleSource::File(_) => (self.property, self.t),
        }
    }

    fn static_schedule(&self) -> Result<Option<Box<dyn Schedule>>, ScenarioError> {
        Ok(match &self.schedule {
            ScheduleSource::Adversary(_) => None,
            ScheduleSource::Golden(GoldenId::Fig1) => Some(Box::new(golden::fig1())),
            ScheduleSource::Golden(GoldenId::Fig2) => Some(Box::new(golden::fig2())),
            ScheduleSource::Golden(GoldenId::Fig12) => Some(Box::new(golden::fig12())),
            ScheduleSource::Random => Some(Box::new(gen_random_with_property(
                self.seed,
                self.n,
                self.property,
                self.t,
                self.density,
            )?)),
            ScheduleSource::File(path) => {
                let text = std::fs::read_to_string(path).map_err(|source| ScenarioError::Io {
                    path: path.display().to_string(),
                    source,
                })?;
                let tr = TraceSchedule::parse(&text)?;
                if tr.n() != self.n {
                    return Err(ScenarioError::Constraint(format!(
                        "schedule file has n={}, scenario has n={}",
                        tr.n(),
                        self.n
                    )));
                }
                Some(Box::new(tr))
            }
        })
    }

    pub fn run(&self) -> Result<RunReport, ScenarioError> {
        let initial = self.initial_configuration()?;
        let mut max_rounds = self.max_rounds;
        let mut adversary: Box<dyn Adversary> = match self.static_schedule()? {
            Some(s) => {
                if self.algorithm == AlgorithmKind::DispersedOneRound && !s.snapshot(0)?.is_connected() {
                    return Err(ScenarioError::Precondition(
                        "dispersed_one_round needs a connected first round".into(),
                    ));
                }
                if let Some(h) = s.horizon() {
                    max_rounds = max_rounds.min(h);
                }
                Box::new(ScheduleAdversary::new(s, "static"))
            }
            None => match &self.schedule {
                ScheduleSource::Adversary(a) => a.build(self.n, self.k, self.t)?,
                _ => unreachable!("static sources handled above"),
            },
        };
        let (property, window) = self.guarantee();
        let mut cfg = RunConfig::new(max_rounds).with_models(self.visibility, self.communication);
        if property != Property::ConnectivityTime {
            cfg = cfg.with_window(window);
        }
        Ok(run(adversary.as_mut(), &initial, &self.algorithm(), &cfg)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_line_scenario() {
        let s = parse_scenario(
            "n=4 k=3 T=6 schedule=golden_fig12 algorithm=alg3 placement=0,0,1 max_rounds=60",
        )
        .unwrap();
        assert_eq!(s.schedule, ScheduleSource::Golden(GoldenId::Fig12));
        assert_eq!(s.placement, Placement::Explicit(vec![0, 0, 1]));
        assert_eq!(s.max_rounds, 60);
    }

    #[test]
    fn spaced_lines_and_comments() {
        let s = parse_scenario(
            "# alg1 on a random T-Path graph\nn = 8\nk = 5\nT = 3\nschedule = random\nproperty = t_path\nalgorithm = alg1_explicit\nplacement = 1 1 2 2 3 # explicit\n",
        )
        .unwrap();
        assert_eq!(s.placement, Placement::Explicit(vec![1, 1, 2, 2, 3]));
        assert_eq!(s.algorithm().window, Some(3));
        assert_eq!(s.max_rounds, 480);
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert!(matches!(
            parse_scenario("n=4\nschedule=random algorithm=alg3"),
            Err(ScenarioError::Missing("k"))
        ));
        assert!(matches!(
            parse_scenario("n=4 k=5 schedule=random algorithm=alg3"),
            Err(ScenarioError::Constraint(_))
        ));
        match parse_scenario("n=4 k=3\nschedule=random algorithm=alg3\ncolour=blue") {
            Err(ScenarioError::Parse { line: 3, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_scenario("n=4 k=2 schedule=random algorithm=alg3 placement=0").is_err());
        assert!(parse_scenario("n=4 k=2 schedule=random adversary=kt_lower algorithm=alg3").is_err());
        assert!(parse_scenario("n=4 k=3 schedule=random algorithm=dispersed_one_round").is_err());
    }

    #[test]
    fn dispersed_start_needs_connected_first_round() {
        let dir = tempfile_dir();
        let path = dir.join("disc.sched");
        std::fs::write(&path, "n=3 rounds=2\nr=0: 0-1:0,0\nr=1: 0-1:0,0 1-2:1,0\n").unwrap();
        let s = parse_scenario(&format!(
            "n=3 k=2 schedule=file:{} algorithm=dispersed_one_round placement=dispersed dispersed_known=true",
            path.display()
        ))
        .unwrap();
        assert!(matches!(s.run(), Err(ScenarioError::Precondition(_))));
        std::fs::remove_file(path).ok();
    }

    fn tempfile_dir() -> PathBuf {
        let d = std::env::temp_dir().join(format!("dynadisp-scn-{}", std::process::id()));
        std::fs::create_dir_all(&d).unwrap();
        d
    }
}
