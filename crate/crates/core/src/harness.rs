//! Benchmark runs: a TOML suite of instance groups, each instance grounded
//! and solved with its timing and ground size recorded, summarised as an
//! aligned table plus one CSV row per instance.
//!
//! ```toml
//! [[run]]
//! label = "vc50"
//! family = "vertex-cover-catom"
//! n = 50
//! m = 100
//! k = "min"
//! seeds = 100
//!
//! [[run]]
//! family = "schur"
//! n = 45
//! k = 4
//! ```

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use serde::Deserialize;
use thiserror::Error;

use crate::families::{self, Family, FamilyError, Graph, Instance};
use crate::ground::{self, GroundError};
use crate::par::{self, Exec};
use crate::propcore;
use crate::solver::{self, Mode};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("config: {0}")]
    Config(String),
    #[error("{label}: {source}")]
    Family { label: String, source: FamilyError },
    #[error("{label}: {source}")]
    Ground { label: String, source: GroundError },
    #[error("{label}: solver reported UNSAT but the oracle found a model")]
    Oracle { label: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum KSpec {
    Fixed(u64),
    Keyword(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunSpec {
    pub label: Option<String>,
    pub family: String,
    pub n: Option<u64>,
    pub m: Option<u64>,
    pub k: Option<KSpec>,
    pub p: Option<u64>,
    pub h: Option<u64>,
    /// First graph seed.
    #[serde(default)]
    pub seed: u64,
    /// Number of consecutive seeds, one graph each.
    #[serde(default = "one")]
    pub seeds: u64,
    /// `one`, `all` or `count`.
    #[serde(default = "default_mode")]
    pub mode: String,
}

fn one() -> u64 {
    1
}

fn default_mode() -> String {
    "one".into()
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Suite {
    #[serde(rename = "run", default)]
    pub runs: Vec<RunSpec>,
}

impl Suite {
    pub fn parse(text: &str) -> Result<Suite, HarnessError> {
        toml::from_str(text).map_err(|e| HarnessError::Config(e.to_string()))
    }
}

/// One instance to run. Vertex cover with `k = "min"` searches upward
/// for the least satisfiable `k`.
#[derive(Debug, Clone)]
enum Job {
    Fixed(Instance),
    MinCover { graph: Graph, catom: bool },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub run: String,
    pub instance: String,
    pub atoms: usize,
    pub clauses: usize,
    /// `SAT`, `UNSAT` or the model count.
    pub result: String,
    pub decisions: u64,
    pub time: Duration,
}

fn need(spec: &RunSpec, v: Option<u64>, name: &str) -> Result<u64, HarnessError> {
    v.ok_or_else(|| HarnessError::Config(format!("run '{}' needs `{name}`", spec.family)))
}

fn mode(spec: &RunSpec) -> Result<Mode, HarnessError> {
    match spec.mode.as_str() {
        "one" => Ok(Mode::One),
        "all" => Ok(Mode::All),
        "count" => Ok(Mode::Count),
        other => Err(HarnessError::Config(format!("unknown mode '{other}'"))),
    }
}

fn jobs(spec: &RunSpec) -> Result<Vec<Job>, HarnessError> {
    let family = Family::from_name(&spec.family)
        .ok_or_else(|| HarnessError::Config(format!("unknown family '{}'", spec.family)))?;
    let fam = |r: Result<Instance, FamilyError>| {
        r.map_err(|source| HarnessError::Family {
            label: spec.family.clone(),
            source,
        })
    };
    let k = match &spec.k {
        None => None,
        Some(KSpec::Fixed(k)) => Some(*k),
        Some(KSpec::Keyword(w)) if w == "min" => None,
        Some(KSpec::Keyword(w)) => return Err(HarnessError::Config(format!("bad k '{w}'"))),
    };
    Ok(match family {
        Family::VertexCover | Family::VertexCoverCatom => {
            let n = need(spec, spec.n, "n")? as usize;
            let m = need(spec, spec.m, "m")? as usize;
            let catom = family == Family::VertexCoverCatom;
            let mut out = Vec::new();
            for seed in spec.seed..spec.seed + spec.seeds {
                let graph = Graph::random(n, m, seed).map_err(|source| HarnessError::Family {
                    label: spec.family.clone(),
                    source,
                })?;
                out.push(match k {
                    Some(k) if catom => Job::Fixed(families::vertex_cover_catom(&graph, k as usize)),
                    Some(k) => Job::Fixed(families::vertex_cover(&graph, k as usize)),
                    None => Job::MinCover { graph, catom },
                });
            }
            out
        }
        Family::NQueens => vec![Job::Fixed(fam(families::nqueens(need(spec, spec.n, "n")? as usize))?)],
        Family::Pigeonhole => vec![Job::Fixed(fam(families::pigeonhole(
            need(spec, spec.p, "p")? as usize,
            need(spec, spec.h, "h")? as usize,
        ))?)],
        Family::Schur => vec![Job::Fixed(fam(families::schur(
            need(spec, spec.n, "n")? as usize,
            need(spec, k, "k")? as usize,
        ))?)],
    })
}

/// Grounds and solves one instance, checking any model found with the
/// family's direct checker and small UNSAT answers with the oracle.
pub fn run_instance(run: &str, inst: &Instance, mode: Mode) -> Result<Row, HarnessError> {
    let label = inst.label();
    let family = |source| HarnessError::Family {
        label: label.clone(),
        source,
    };
    let theory = inst.theory().map_err(family)?;
    let start = Instant::now();
    let gt = ground::ground_theory(&theory).map_err(|source| HarnessError::Ground {
        label: label.clone(),
        source,
    })?;
    let out = solver::solve(&gt, mode);
    let time = start.elapsed();
    for m in &out.models {
        families::extract_solution(inst, &gt, m).map_err(family)?;
    }
    if out.count == 0 && gt.atom_count() <= 16 && !propcore::enumerate_models(&gt, Some(1)).unwrap().is_empty() {
        return Err(HarnessError::Oracle { label });
    }
    let result = match (mode, out.count) {
        (Mode::One, 0) => "UNSAT".to_string(),
        (Mode::One, _) => "SAT".to_string(),
        (_, c) => c.to_string(),
    };
    Ok(Row {
        run: run.to_string(),
        instance: label,
        atoms: gt.atom_count(),
        clauses: gt.clauses.len(),
        result,
        decisions: out.stats.decisions,
        time,
    })
}

fn run_job(run: &str, job: &Job, mode: Mode) -> Result<Row, HarnessError> {
    match job {
        Job::Fixed(inst) => run_instance(run, inst, mode),
        Job::MinCover { graph, catom } => {
            for k in 0..=graph.n {
                let inst = if *catom {
                    families::vertex_cover_catom(graph, k)
                } else {
                    families::vertex_cover(graph, k)
                };
                let row = run_instance(run, &inst, Mode::One)?;
                if row.result == "SAT" {
                    return Ok(row);
                }
            }
            unreachable!("every graph has a cover of size n")
        }
    }
}

/// Runs every instance of the suite; instances run on `exec`, rows come
/// back in suite order.
pub fn run_suite(suite: &Suite, exec: Exec) -> Result<Vec<Row>, HarnessError> {
    let mut work = Vec::new();
    for (i, spec) in suite.runs.iter().enumerate() {
        let run = spec.label.clone().unwrap_or_else(|| format!("{}#{}", spec.family, i + 1));
        let mode = mode(spec)?;
        for job in jobs(spec)? {
            work.push((run.clone(), job, mode));
        }
    }
    par::map(exec, &work, |(run, job, mode)| run_job(run, job, *mode))
        .into_iter()
        .collect()
}

fn ms(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

/// The aligned summary (one line per run) followed by the CSV rows.
pub fn report(rows: &[Row]) -> String {
    let mut groups: Vec<(&str, Vec<&Row>)> = Vec::new();
    for r in rows {
        match groups.last_mut() {
            Some((run, rs)) if *run == r.run => rs.push(r),
            _ => groups.push((&r.run, vec![r])),
        }
    }
    let header = ["run", "instances", "sat", "unsat", "atoms", "clauses", "decisions", "mean_ms", "max_ms"];
    let mut table: Vec<Vec<String>> = vec![header.iter().map(|s| s.to_string()).collect()];
    for (run, rs) in &groups {
        let n = rs.len() as f64;
        let mean = |f: &dyn Fn(&Row) -> f64| rs.iter().map(|r| f(r)).sum::<f64>() / n;
        table.push(vec![
            run.to_string(),
            rs.len().to_string(),
            rs.iter().filter(|r| r.result != "UNSAT" && r.result != "0").count().to_string(),
            rs.iter().filter(|r| r.result == "UNSAT" || r.result == "0").count().to_string(),
            format!("{:.1}", mean(&|r| r.atoms as f64)),
            format!("{:.1}", mean(&|r| r.clauses as f64)),
            format!("{:.1}", mean(&|r| r.decisions as f64)),
            format!("{:.3}", mean(&|r| ms(r.time))),
            format!("{:.3}", rs.iter().map(|r| ms(r.time)).fold(0.0, f64::max)),
        ]);
    }
    let widths: Vec<usize> = (0..header.len())
        .map(|c| table.iter().map(|row| row[c].len()).max().unwrap())
        .collect();
    let mut out = String::new();
    for row in &table {
        let cells: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(c, s)| if c == 0 { format!("{s:<w$}", w = widths[c]) } else { format!("{s:>w$}", w = widths[c]) })
            .collect();
        writeln!(out, "{}", cells.join("  ").trim_end()).unwrap();
    }
    writeln!(out).unwrap();
    writeln!(out, "run,instance,atoms,clauses,result,decisions,ms").unwrap();
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{:.3}",
            r.run,
            r.instance,
            r.atoms,
            r.clauses,
            r.result,
            r.decisions,
            ms(r.time)
        )
        .unwrap();
    }
    out
}
