use std::ops::Range;

use rayon::prelude::*;

use super::{verify_trace, Scenario};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Series {
    pub reached: usize,
    pub missed: usize,
    pub max: Option<usize>,
    /// Lower median over the runs that reached the event.
    pub median: Option<usize>,
}

impl Series {
    fn from(values: &[Option<usize>]) -> Self {
        let mut hit: Vec<usize> = values.iter().flatten().copied().collect();
        hit.sort_unstable();
        Series {
            reached: hit.len(),
            missed: values.len() - hit.len(),
            max: hit.last().copied(),
            median: (!hit.is_empty()).then(|| hit[(hit.len() - 1) / 2]),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SweepStats {
    pub runs: usize,
    pub dispersed_at: Series,
    pub explored_at: Series,
    /// Rounds executed up to and including the last termination.
    pub total_rounds: Series,
    pub violations: usize,
    pub violating_seeds: Vec<u64>,
    pub errors: Vec<(u64, String)>,
}

struct One {
    seed: u64,
    dispersed: Option<usize>,
    explored: Option<usize>,
    total: Option<usize>,
    violations: usize,
    error: Option<String>,
}

/// Runs the template once per seed, in parallel, and aggregates.
pub fn sweep(template: &Scenario, seeds: Range<u64>) -> SweepStats {
    let mut results: Vec<One> = seeds
        .into_par_iter()
        .map(|seed| {
            let mut sc = template.clone();
            sc.seed = seed;
            match sc.run() {
                Ok(rep) => {
                    let ver = verify_trace(&rep.trace);
                    One {
                        seed,
                        dispersed: rep.outcome.dispersed_at,
                        explored: rep.outcome.explored_at,
                        total: rep.outcome.all_terminated_at.map(|r| r + 1),
                        violations: ver.violations.len() + rep.audit_violations.len(),
                        error: None,
                    }
                }
                Err(e) => One {
                    seed,
                    dispersed: None,
                    explored: None,
                    total: None,
                    violations: 0,
                    error: Some(e.to_string()),
                },
            }
        })
        .collect();
    results.sort_by_key(|o| o.seed);
    let ok: Vec<&One> = results.iter().filter(|o| o.error.is_none()).collect();
    let col = |f: fn(&One) -> Option<usize>| ok.iter().map(|o| f(o)).collect::<Vec<_>>();
    SweepStats {
        runs: results.len(),
        dispersed_at: Series::from(&col(|o| o.dispersed)),
        explored_at: Series::from(&col(|o| o.explored)),
        total_rounds: Series::from(&col(|o| o.total)),
        violations: ok.iter().map(|o| o.violations).sum(),
        violating_seeds: ok.iter().filter(|o| o.violations > 0).map(|o| o.seed).collect(),
        errors: results
            .iter()
            .filter_map(|o| o.error.clone().map(|e| (o.seed, e)))
            .collect(),
    }
}

/// `a..b` (exclusive) or `a..=b` (inclusive).
pub fn parse_seed_range(s: &str) -> Result<Range<u64>, String> {
    let bad = || format!("seed range must look like `a..b` or `a..=b`, got `{s}`");
    let (a, rest) = s.split_once("..").ok_or_else(bad)?;
    let a: u64 = a.trim().parse().map_err(|_| bad())?;
    let b = match rest.strip_prefix('=') {
        Some(b) => b.trim().parse::<u64>().map_err(|_| bad())? + 1,
        None => rest.trim().parse::<u64>().map_err(|_| bad())?,
    };
    if b < a {
        return Err(bad());
    }
    Ok(a..b)
}
