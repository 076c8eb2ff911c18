//! Human-readable rendering of a [`RunReport`].

use std::fmt::Write;

use crate::report::{CacheStatus, Outcome, RunReport, Status, TaskResult};

pub fn render(report: &RunReport) -> String {
    let mut out = String::new();
    let ctx = &report.config.context;
    let _ = writeln!(out, "{} {} ({ctx})", report.tool, report.tool_version);
    for (i, result) in report.results.iter().enumerate() {
        task(&mut out, i + 1, result);
    }
    let verdict = match report.exit_code {
        0 => "ok",
        1 => "FINDINGS",
        _ => "error",
    };
    let _ = writeln!(out, "{} task(s), {verdict}, exit {}", report.results.len(), report.exit_code);
    out
}

fn task(out: &mut String, n: usize, r: &TaskResult) {
    let status = match r.status {
        Status::Ok => "ok",
        Status::Counterexample => "COUNTEREXAMPLE",
        Status::UnexpectedGap => "UNEXPECTED GAP",
    };
    let cache = match r.timing.cache {
        CacheStatus::Hit => ", cached",
        CacheStatus::Miss | CacheStatus::Off => "",
    };
    let _ = writeln!(out, "[{n}] {} {status} ({} ms{cache})", r.task.name(), r.timing.wall_ms);
    match &r.outcome {
        Outcome::Enumerate(e) => {
            let _ = writeln!(out, "    {} sections", e.sections.len());
            for s in &e.sections {
                let _ = writeln!(
                    out,
                    "    {:>3}  {}  |stab| {}  degree {}  {}  dim {}  orbit {}",
                    s.index,
                    s.divisor,
                    s.stabilizer.len(),
                    s.field_degree,
                    if s.is_elliptic { "elliptic" } else { "not elliptic" },
                    s.dimension,
                    s.orbit
                );
            }
            let _ = writeln!(out, "    {}", e.summary);
        }
        Outcome::Analyze(a) => {
            let census: Vec<String> =
                a.census.iter().map(|c| format!("{}/{}: {}", c.tate, c.witnessed, c.count)).collect();
            let _ = writeln!(
                out,
                "    H^{}: {} monomials; tate/witnessed {}; {} gap(s)",
                a.report.degree,
                a.report.monomials.len(),
                census.join(", "),
                a.report.gaps.len()
            );
            for g in &a.gap_flags {
                let tag = if g.expected_gap { "expected gap" } else { "gap" };
                let _ = writeln!(out, "    {tag}: {}", g.name);
            }
        }
        Outcome::Verification(v) => {
            let _ = writeln!(
                out,
                "    {} configurations, {} with the hypothesis met, {} counterexample(s)",
                v.configurations_checked,
                v.premises_met,
                v.counterexamples.len()
            );
            for c in &v.structural_checks {
                let _ = writeln!(out, "    {}: {}", c.description, if c.holds { "holds" } else { "FAILS" });
            }
            for c in v.counterexamples.iter().take(5) {
                let _ = writeln!(out, "    counterexample ({}): {}", c.context, c.detail);
            }
        }
        Outcome::Relations(s) => {
            let _ = writeln!(
                out,
                "    {} nonnegative relation(s) up to degree {}; {} of degree 2",
                s.relations_found,
                s.max_degree,
                s.degree2.len()
            );
            for e in &s.exotic {
                let _ = writeln!(out, "    outside the degree-2 lattice: {}", e.relation.name);
            }
            for e in &s.lattice_not_monoid {
                let _ = writeln!(out, "    in the lattice, not the monoid: {}", e.relation.name);
            }
        }
    }
}
