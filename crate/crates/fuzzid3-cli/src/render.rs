//! Report rendering: plain fold tables, pretty JSON, and flat CSV.

use std::fmt::Write as _;

use fuzzid3::{accuracy, ExperimentResult, RunReport};

use crate::{AppResult, FormatArg};

/// Writes the report to standard output in the requested format; any
/// collected diagnostics go to standard error (JSON embeds them).
pub fn emit(report: &RunReport, format: FormatArg) -> AppResult<()> {
    match format {
        FormatArg::Json => println!("{}", serde_json::to_string_pretty(report)?),
        FormatArg::Table => {
            print!("{}", tables(report));
            eprint!("{}", diagnostics(report));
        }
        FormatArg::Csv => {
            print!("{}", csv(report)?);
            eprint!("{}", diagnostics(report));
        }
    }
    Ok(())
}

fn fold_table(result: &ExperimentResult) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "Method {}, classes {} / {}",
        result.method, result.pair[0], result.pair[1]
    );
    let _ = writeln!(
        out,
        "{:<5} {:>5} {:>8} {:>8} {:>8} {:>8}",
        "Exp.", "Count", "Group A", "Group B", "Group C", "Group D"
    );
    for r in &result.records {
        let _ = writeln!(
            out,
            "{:<5} {:>5} {:>8} {:>8} {:>8} {:>8}",
            r.fold_index + 1,
            r.total(),
            r.a,
            r.b,
            r.c,
            r.d
        );
    }
    let _ = writeln!(out, "Mean accuracy: {:.4}", result.mean_accuracy);
    out
}

fn tables(report: &RunReport) -> String {
    let mut blocks = Vec::new();
    match &report.deltas {
        None => {
            for result in &report.results {
                blocks.push(fold_table(result));
            }
        }
        Some(deltas) => {
            // Comparison results arrive as one id3/fuzzy chunk per pair.
            for (chunk, delta) in report.results.chunks(2).zip(deltas) {
                for result in chunk {
                    blocks.push(fold_table(result));
                }
                let per_fold: Vec<String> =
                    delta.per_fold.iter().map(|d| format!("{d:+.2}")).collect();
                blocks.push(format!(
                    "Per-fold delta (fuzzy - id3): {}\n",
                    per_fold.join(" ")
                ));
            }
            if report.folds_shared == Some(true) {
                blocks.push("Folds shared: true\n".to_string());
            }
        }
    }
    blocks.join("\n")
}

fn csv(report: &RunReport) -> AppResult<String> {
    let mut out = String::from("method,class_a,class_b,fold,a,b,c,d,accuracy,mean_accuracy\n");
    for result in &report.results {
        for r in &result.records {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{}",
                result.method,
                result.pair[0],
                result.pair[1],
                r.fold_index,
                r.a,
                r.b,
                r.c,
                r.d,
                accuracy(r)?,
                result.mean_accuracy
            );
        }
    }
    Ok(out)
}

fn diagnostics(report: &RunReport) -> String {
    let mut out = String::new();
    for result in &report.results {
        let Some(folds) = &result.diagnostics else {
            continue;
        };
        for fold in folds {
            let _ = writeln!(
                out,
                "[{} {}/{} fold {}]",
                result.method,
                result.pair[0],
                result.pair[1],
                fold.fold + 1
            );
            for p in &fold.partitions {
                let centers: Vec<String> = p.centers.iter().map(|c| format!("{c:.3}")).collect();
                let _ = writeln!(
                    out,
                    "  feature {} centers [{}]",
                    p.feature_index,
                    centers.join(", ")
                );
            }
            for node in &fold.nodes {
                let path: Vec<String> = node
                    .path
                    .iter()
                    .map(|s| format!("f{}={}", s.feature, s.term))
                    .collect();
                let path = if path.is_empty() {
                    "root".to_string()
                } else {
                    path.join(" ")
                };
                let scores: Vec<String> = node
                    .scores
                    .iter()
                    .map(|s| format!("f{}={:.4}", s.feature, s.score))
                    .collect();
                let _ = writeln!(
                    out,
                    "  {path}: size {}, chose feature {}, scores {}",
                    node.size,
                    node.chosen_feature,
                    scores.join(" ")
                );
            }
        }
    }
    out
}
