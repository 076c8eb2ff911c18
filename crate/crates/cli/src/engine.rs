//! Executes the tasks of a validated scenario.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use rayon::prelude::*;
use serde_json::{json, Value};
use tate_coniveau::coniveau::{verify_lemma1_with, verify_thm2_with};
use tate_coniveau::relations::GeneratorSet;
use tate_coniveau::weil::{classify_section, enumerate_sections_with, orbits};

use crate::cache::Cache;
use crate::config::{Scenario, TaskSpec};
use crate::report::{
    AnalyzeOutcome, CacheStatus, EnumerateOutcome, GapFlag, LevelCount, OrbitRow, Outcome,
    RunReport, SectionRow, Status, TaskResult, Timing,
};
use crate::{CliError, ConfigError, EXIT_FINDING, EXIT_OK};

pub const TOOL: &str = "coniveau";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    /// Worker threads; `None` uses rayon's default.
    pub jobs: Option<usize>,
    /// Result cache directory; `None` disables caching.
    pub cache_dir: Option<PathBuf>,
}

/// Runs every task. Tasks may execute concurrently; results keep config order.
pub fn run_scenario(scenario: &Scenario, opts: &RunOptions) -> Result<RunReport, CliError> {
    let cache = opts.cache_dir.as_ref().map(Cache::new);
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(jobs) = opts.jobs {
        pool = pool.num_threads(jobs);
    }
    let pool = pool.build().map_err(|e| ConfigError::new("--jobs", e.to_string()))?;
    let results: Vec<TaskResult> = pool.install(|| {
        scenario
            .config
            .tasks
            .par_iter()
            .enumerate()
            .map(|(i, task)| run_task(scenario, task, cache.as_ref()).map_err(|e| locate(e, i)))
            .collect::<Result<_, _>>()
    })?;
    let exit_code = exit_code(&results);
    Ok(RunReport {
        tool: TOOL.into(),
        tool_version: TOOL_VERSION.into(),
        config: scenario.config.clone(),
        results,
        exit_code,
    })
}

/// 0 if every task is `ok`, 1 if any found a counterexample or unexpected gap.
pub fn exit_code(results: &[TaskResult]) -> i32 {
    if results.iter().all(|r| r.status == Status::Ok) {
        EXIT_OK
    } else {
        EXIT_FINDING
    }
}

fn locate(e: CliError, i: usize) -> CliError {
    match e {
        CliError::Config(c) if c.path.is_empty() => CliError::Config(ConfigError::new(format!("tasks[{i}]"), c.message)),
        other => other,
    }
}

fn lib(e: tate_coniveau::Error) -> CliError {
    CliError::Config(ConfigError::new("", e.to_string()))
}

fn run_task(s: &Scenario, task: &TaskSpec, cache: Option<&Cache>) -> Result<TaskResult, CliError> {
    let started = Instant::now();
    let key = cache_key(s, task);
    if let (Some(cache), Some(key)) = (cache, &key) {
        if let Some((status, outcome)) = cache.load(key) {
            return Ok(TaskResult { task: task.clone(), status, outcome, timing: timing(started, CacheStatus::Hit) });
        }
    }
    let (status, outcome) = compute(s, task)?;
    let cache_status = match (cache, &key) {
        (Some(cache), Some(key)) => {
            cache.store(key, status, &outcome)?;
            CacheStatus::Miss
        }
        _ => CacheStatus::Off,
    };
    Ok(TaskResult { task: task.clone(), status, outcome, timing: timing(started, cache_status) })
}

fn timing(started: Instant, cache: CacheStatus) -> Timing {
    Timing { wall_ms: started.elapsed().as_millis() as u64, cache }
}

/// Key material for the exhaustive tasks; `None` for tasks never cached.
fn cache_key(s: &Scenario, task: &TaskSpec) -> Option<Value> {
    let base = |inputs: Value| json!({ "tool": TOOL, "version": TOOL_VERSION, "task": task, "limits": s.limits, "inputs": inputs });
    match task {
        TaskSpec::VerifyLemma1 { .. } => Some(base(Value::Null)),
        TaskSpec::VerifyThm2 { .. } => Some(base(json!(s.config.context))),
        TaskSpec::Relations { generators, .. } => {
            Some(base(json!({ "context": s.config.context, "classes": s.generators(generators.as_deref()) })))
        }
        TaskSpec::Enumerate {} | TaskSpec::Analyze { .. } => None,
    }
}

fn compute(s: &Scenario, task: &TaskSpec) -> Result<(Status, Outcome), CliError> {
    let ctx = &s.config.context;
    match task {
        TaskSpec::Enumerate {} => Ok((Status::Ok, Outcome::Enumerate(enumerate(s)?))),
        TaskSpec::Analyze { degree, expect_gaps } => {
            let spec = s.product.as_ref().expect("validated: analyze has a product");
            let report = spec.analyze(*degree).map_err(lib)?;
            let mut census: BTreeMap<(u32, u32), u64> = BTreeMap::new();
            for r in &report.monomials {
                *census.entry((r.tate, r.witnessed)).or_default() += 1;
            }
            let gap_flags = report
                .gaps
                .iter()
                .map(|g| GapFlag { name: g.name.clone(), expected_gap: *expect_gaps })
                .collect();
            let status = if report.gaps.is_empty() || *expect_gaps { Status::Ok } else { Status::UnexpectedGap };
            let census = census
                .into_iter()
                .map(|((tate, witnessed), count)| LevelCount { tate, witnessed, count })
                .collect();
            Ok((status, Outcome::Analyze(AnalyzeOutcome { census, gap_flags, report })))
        }
        TaskSpec::VerifyLemma1 { kmax } => verification(verify_lemma1_with(*kmax, &s.limits).map_err(lib)?),
        TaskSpec::VerifyThm2 { bound } => verification(verify_thm2_with(ctx, *bound, &s.limits).map_err(lib)?),
        TaskSpec::Relations { generators, max_degree } => {
            let gens = GeneratorSet::new(ctx, &s.generators(generators.as_deref())).map_err(lib)?;
            let search = gens.find_exotic(*max_degree, &s.limits).map_err(lib)?;
            Ok((Status::Ok, Outcome::Relations(search)))
        }
    }
}

fn verification(report: tate_coniveau::coniveau::VerificationReport) -> Result<(Status, Outcome), CliError> {
    let status = if report.passed() { Status::Ok } else { Status::Counterexample };
    Ok((status, Outcome::Verification(report)))
}

fn enumerate(s: &Scenario) -> Result<EnumerateOutcome, CliError> {
    let ctx = &s.config.context;
    let sections = enumerate_sections_with(ctx, &s.limits).map_err(lib)?;
    let galois = orbits(ctx, true, true).map_err(lib)?;
    let mut orbit_of = vec![0; sections.len()];
    for (o, orbit) in galois.orbits.iter().enumerate() {
        for &m in &orbit.members {
            orbit_of[m] = o;
        }
    }
    let rows = sections
        .iter()
        .enumerate()
        .map(|(index, m)| {
            let info = classify_section(ctx, m).map_err(lib)?;
            Ok(SectionRow {
                index,
                divisor: m.clone(),
                stabilizer: info.stabilizer,
                field_degree: info.field_degree,
                is_elliptic: info.is_elliptic,
                dimension: info.dimension,
                orbit: orbit_of[index],
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let classes_mod_c: usize = galois.orbits.iter().map(|o| o.size_mod_c).sum();
    let mut sizes: Vec<usize> = galois.orbits.iter().map(|o| o.size_mod_c).collect();
    sizes.sort_unstable();
    let sizes: Vec<String> = sizes.iter().map(|s| s.to_string()).collect();
    let summary = format!("{classes_mod_c} up to conjugation; classes {}", sizes.join("+"));
    let orbits = galois
        .orbits
        .into_iter()
        .map(|o| OrbitRow { members: o.members, size_mod_c: o.size_mod_c })
        .collect();
    Ok(EnumerateOutcome { context: *ctx, sections: rows, orbits, classes_mod_c, summary })
}
