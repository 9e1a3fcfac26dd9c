//! Text and JSON renderings of a verification report.

use std::fmt::Write as _;

use serde::Serialize;

use crate::featexpr::FeatExpr;
use crate::verify::{Verdict, VerifyReport};

fn verdict_word(holds: bool) -> &'static str {
    if holds {
        "sat"
    } else {
        "viol"
    }
}

/// The verdict subset as a conjunction of literals, when it is one.
fn cube_text(report: &VerifyReport, verdict: &Verdict) -> Option<String> {
    let features = report.space.features();
    verdict.configs.as_cube(&report.space).map(|cube| match cube {
        FeatExpr::True => "true".to_string(),
        c => c.render(features),
    })
}

pub fn render_text(report: &VerifyReport, formula: &str, stats: bool) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "formula: {formula}");
    let _ = writeln!(out, "configurations: {}", report.space.len());
    for v in &report.verdicts {
        let _ = write!(out, "{:<4}  {}", verdict_word(v.holds), v.configs.render());
        if let Some(cube) = cube_text(report, v) {
            let _ = write!(out, "  [{cube}]");
        }
        out.push('\n');
    }
    let _ = writeln!(
        out,
        "satisfied: {}  violated: {}",
        report.satisfying().len(),
        report.violating().len()
    );
    if stats {
        let s = &report.stats;
        let _ = writeln!(
            out,
            "calls: {}  splits: {}  levels: {}  nodes_built: {}  nodes_reused: {}  elapsed_ms: {:.3}",
            s.calls,
            s.splits(),
            s.levels(),
            s.nodes_built,
            s.nodes_reused,
            s.elapsed_ms
        );
        for (i, it) in s.iterations.iter().enumerate() {
            let _ = write!(
                out,
                "  call {i}: depth {} over {} configs{} -> {:?}, {} nodes ({} reused)",
                it.depth,
                it.configs.len(),
                match it.configs.as_cube(&report.space) {
                    Some(FeatExpr::True) | None => String::new(),
                    Some(c) => format!(" [{}]", c.render(report.space.features())),
                },
                it.result,
                it.nodes_built,
                it.nodes_reused
            );
            if let Some(g) = &it.split_guard {
                let _ = write!(out, ", split on {}", g.render(report.space.features()));
            }
            out.push('\n');
        }
    }
    out
}

#[derive(Serialize)]
struct JsonVerdict {
    configs: Vec<Vec<String>>,
    verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    formula: Option<String>,
}

#[derive(Serialize)]
struct JsonStats {
    calls: usize,
    nodes_built: usize,
    nodes_reused: usize,
    /// Omitted unless requested so the default output is deterministic.
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_ms: Option<f64>,
}

#[derive(Serialize)]
struct JsonReport {
    formula: String,
    verdicts: Vec<JsonVerdict>,
    stats: JsonStats,
}

pub fn render_structured(report: &VerifyReport, formula: &str, with_time: bool) -> String {
    let features = report.space.features();
    let doc = JsonReport {
        formula: formula.to_string(),
        verdicts: report
            .verdicts
            .iter()
            .map(|v| JsonVerdict {
                configs: v.configs.iter().map(|k| k.feature_names(features)).collect(),
                verdict: verdict_word(v.holds),
                formula: cube_text(report, v),
            })
            .collect(),
        stats: JsonStats {
            calls: report.stats.calls,
            nodes_built: report.stats.nodes_built,
            nodes_reused: report.stats.nodes_reused,
            elapsed_ms: with_time.then_some(report.stats.elapsed_ms),
        },
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("report serializes");
    text.push('\n');
    text
}
