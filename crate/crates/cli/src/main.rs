//! `dynadisp` command-line driver.
//!
//! Exit codes: 0 when the run is clean (or the demo bounds hold, or the
//! classified property holds), 1 on an invariant violation or a failing
//! demo/classification, 2 on usage or input errors.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use dynadisp::harness::{
    demo, parse_scenario, parse_seed_range, sweep, verify_trace, DemoId, RunMetrics,
};
use dynadisp::{check_property, minimal_t, Property, TraceRecord, TraceSchedule};

#[derive(Parser)]
#[command(name = "dynadisp", version, about = "Mobile agents on adversarial dynamic graphs")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a scenario file and verify the resulting trace.
    Run {
        scenario: PathBuf,
        /// Write the run trace here.
        #[arg(long)]
        trace_out: Option<PathBuf>,
    },
    /// Re-check a run trace from scratch.
    Verify { trace: PathBuf },
    /// Run a lower-bound or impossibility demo over its default grid.
    Demo { id: DemoId },
    /// Run a scenario template once per seed.
    Sweep {
        template: PathBuf,
        #[arg(long, value_parser = parse_seed_range)]
        seeds: std::ops::Range<u64>,
    },
    /// Classify a schedule file or the schedule inside a run trace.
    Classify {
        file: PathBuf,
        #[arg(long)]
        property: Property,
        #[arg(long = "T")]
        t: usize,
    },
}

enum Failure {
    Violation,
    Usage(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn opt(v: Option<usize>) -> String {
    v.map_or_else(|| "never".to_string(), |x| x.to_string())
}

fn metrics_lines(m: &RunMetrics, violations: &[String]) -> String {
    let mut out = String::new();
    writeln!(out, "{:<20} {}", "rounds", m.rounds).unwrap();
    writeln!(out, "{:<20} {}", "dispersed_at", opt(m.dispersed_at)).unwrap();
    writeln!(out, "{:<20} {}", "explored_at", opt(m.explored_at)).unwrap();
    writeln!(out, "{:<20} {}", "all_terminated_at", opt(m.all_terminated_at)).unwrap();
    writeln!(out, "{:<20} {}", "final_multinodes", m.final_multinodes).unwrap();
    writeln!(out, "{:<20} {}", "violations", violations.len()).unwrap();
    for v in violations {
        writeln!(out, "  ! {v}").unwrap();
    }
    writeln!(out, "rounds={}", m.rounds).unwrap();
    writeln!(out, "dispersed_at={}", opt(m.dispersed_at)).unwrap();
    writeln!(out, "explored_at={}", opt(m.explored_at)).unwrap();
    writeln!(out, "all_terminated_at={}", opt(m.all_terminated_at)).unwrap();
    writeln!(out, "final_multinodes={}", m.final_multinodes).unwrap();
    let holes: Vec<String> = m.holes.iter().map(usize::to_string).collect();
    writeln!(out, "holes={}", holes.join(",")).unwrap();
    let prog: Vec<&str> = m
        .window_progress
        .iter()
        .map(|&b| if b { "1" } else { "0" })
        .collect();
    writeln!(out, "window_progress={}", prog.join(",")).unwrap();
    writeln!(out, "violations={}", violations.len()).unwrap();
    out
}

fn execute(cmd: Cmd) -> Result<(), Failure> {
    match cmd {
        Cmd::Run { scenario, trace_out } => {
            let sc = parse_scenario(&read(&scenario)?)?;
            let rep = sc.run()?;
            let text = rep.trace.to_text();
            if let Some(path) = trace_out {
                std::fs::write(&path, &text)
                    .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            }
            let ver = verify_trace(&rep.trace);
            let mut violations = ver.violations;
            violations.extend(rep.audit_violations);
            print!("{}", metrics_lines(&ver.metrics, &violations));
            if violations.is_empty() {
                Ok(())
            } else {
                Err(Failure::Violation)
            }
        }
        Cmd::Verify { trace } => {
            let tr = TraceRecord::parse(&read(&trace)?)?;
            let ver = verify_trace(&tr);
            print!("{}", metrics_lines(&ver.metrics, &ver.violations));
            if ver.violations.is_empty() {
                Ok(())
            } else {
                Err(Failure::Violation)
            }
        }
        Cmd::Demo { id } => {
            let rep = demo(id, &id.default_grid())?;
            print!("{}", rep.table());
            let failed = rep.rows.iter().filter(|r| !r.pass).count();
            println!("demo={id} cells={} failed={failed}", rep.rows.len());
            if failed == 0 {
                Ok(())
            } else {
                Err(Failure::Violation)
            }
        }
        Cmd::Sweep { template, seeds } => {
            let sc = parse_scenario(&read(&template)?)?;
            let st = sweep(&sc, seeds.clone());
            println!("{:<14} {:>8} {:>7} {:>6} {:>7}", "metric", "reached", "missed", "max", "median");
            for (name, s) in [
                ("dispersed_at", &st.dispersed_at),
                ("explored_at", &st.explored_at),
                ("total_rounds", &st.total_rounds),
            ] {
                println!(
                    "{:<14} {:>8} {:>7} {:>6} {:>7}",
                    name,
                    s.reached,
                    s.missed,
                    opt(s.max),
                    opt(s.median)
                );
            }
            for (seed, e) in &st.errors {
                println!("  ! seed {seed}: {e}");
            }
            println!("seeds={}..{}", seeds.start, seeds.end);
            println!("runs={}", st.runs);
            for (name, s) in [
                ("dispersed_at", &st.dispersed_at),
                ("explored_at", &st.explored_at),
                ("total_rounds", &st.total_rounds),
            ] {
                println!("{name}.max={}", opt(s.max));
                println!("{name}.median={}", opt(s.median));
                println!("{name}.missed={}", s.missed);
            }
            println!("violations={}", st.violations);
            println!("errors={}", st.errors.len());
            if !st.errors.is_empty() {
                Err(Failure::Usage(format!("{} runs failed to start", st.errors.len())))
            } else if st.violations > 0 {
                Err(Failure::Violation)
            } else {
                Ok(())
            }
        }
        Cmd::Classify { file, property, t } => {
            let text = read(&file)?;
            let schedule = if text.trim_start().starts_with("trace ") {
                TraceRecord::parse(&text)?.schedule()
            } else {
                TraceSchedule::parse(&text)?
            };
            let rep = check_property(&schedule, property, t)?;
            println!("property={property}");
            println!("T={t}");
            println!("rounds={}", schedule.len());
            println!("holds={}", rep.holds);
            println!("windows_checked={}", rep.windows_checked);
            println!("dynamic_diameter={}", rep.dynamic_diameter);
            println!("minimal_T={}", opt(minimal_t(&schedule, property)));
            if let Some(w) = &rep.witness {
                println!("witness={w:?}");
            }
            if rep.holds {
                Ok(())
            } else {
                Err(Failure::Violation)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
