//! The JSON report written by `--json`. Its shape is pinned by
//! `schemas/run_report.schema.json`.

use serde::{Deserialize, Serialize};
use tate_coniveau::coniveau::{ConiveauReport, VerificationReport};
use tate_coniveau::group_ring::{GroupElement, GroupRingElt};
use tate_coniveau::relations::RelationSearch;
use tate_coniveau::weil::FieldContext;

use crate::config::{ScenarioConfig, TaskSpec};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunReport {
    pub tool: String,
    pub tool_version: String,
    /// The scenario as parsed; feeding it back to `run` reproduces the report.
    pub config: ScenarioConfig,
    pub results: Vec<TaskResult>,
    pub exit_code: i32,
}

impl RunReport {
    /// The report with every timing block zeroed, for comparisons.
    pub fn without_timing(&self) -> RunReport {
        let mut r = self.clone();
        for t in &mut r.results {
            t.timing = Timing { wall_ms: 0, cache: CacheStatus::Off };
        }
        r
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TaskResult {
    pub task: TaskSpec,
    pub status: Status,
    pub outcome: Outcome,
    /// Run-dependent: excluded from the determinism guarantee.
    pub timing: Timing,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    Counterexample,
    UnexpectedGap,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CacheStatus {
    Hit,
    Miss,
    /// Not cached: caching disabled, or a task that is never cached.
    Off,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Timing {
    pub wall_ms: u64,
    pub cache: CacheStatus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
#[allow(clippy::large_enum_variant)]
pub enum Outcome {
    Enumerate(EnumerateOutcome),
    Analyze(AnalyzeOutcome),
    Verification(VerificationReport),
    Relations(RelationSearch),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionRow {
    pub index: usize,
    pub divisor: GroupRingElt,
    pub stabilizer: Vec<GroupElement>,
    pub field_degree: u32,
    pub is_elliptic: bool,
    pub dimension: u32,
    /// Index into `orbits`.
    pub orbit: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitRow {
    pub members: Vec<usize>,
    pub size_mod_c: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerateOutcome {
    pub context: FieldContext,
    pub sections: Vec<SectionRow>,
    /// Galois orbits (translation by all of `G`, which contains `c`).
    pub orbits: Vec<OrbitRow>,
    pub classes_mod_c: usize,
    /// e.g. `8 up to conjugation; classes 1+1+1+1+4`.
    pub summary: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelCount {
    pub tate: u32,
    pub witnessed: u32,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapFlag {
    pub name: String,
    pub expected_gap: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalyzeOutcome {
    /// Monomial counts per `(tate, witnessed)` pair, ascending.
    pub census: Vec<LevelCount>,
    pub gap_flags: Vec<GapFlag>,
    pub report: ConiveauReport,
}
