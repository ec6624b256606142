use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::metrics::{RunMetrics, TaskMetrics};
use crate::suite::Difficulty;

/// `(variant - base) / base`; undefined when the base is zero.
pub fn diff(base: f64, variant: f64) -> Option<f64> {
    (base != 0.0).then(|| (variant - base) / base)
}

/// Integer percent with an explicit sign for increases: `-79%`, `0%`, `+12%`.
pub fn format_diff(d: Option<f64>) -> String {
    match d {
        None => "n/a".to_string(),
        Some(d) => {
            let pct = (d * 100.0).round() as i64;
            if pct > 0 {
                format!("+{pct}%")
            } else {
                format!("{pct}%")
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    Exec,
    Reuse,
    Tokens,
    Cost,
    Turns,
    ToolCalls,
    SuccessOverall,
    SuccessHard,
}

impl Metric {
    pub const ORDER: [Metric; 8] = [
        Metric::Exec,
        Metric::Reuse,
        Metric::Tokens,
        Metric::Cost,
        Metric::Turns,
        Metric::ToolCalls,
        Metric::SuccessOverall,
        Metric::SuccessHard,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Metric::Exec => "Exec",
            Metric::Reuse => "Reuse",
            Metric::Tokens => "Tokens",
            Metric::Cost => "Cost",
            Metric::Turns => "Turns",
            Metric::ToolCalls => "Tool Calls",
            Metric::SuccessOverall => "Success",
            Metric::SuccessHard => "Success Hard",
        }
    }

    fn format(self, v: Option<f64>) -> String {
        let Some(v) = v else { return "n/a".to_string() };
        match self {
            Metric::Exec | Metric::SuccessOverall | Metric::SuccessHard => format!("{:.1}%", v * 100.0),
            Metric::Reuse => format!("{v:.2}"),
            Metric::Tokens => format!("{v:.0}"),
            Metric::Cost => format!("{v:.4}"),
            Metric::Turns | Metric::ToolCalls => format!("{v:.1}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricRow {
    pub metric: Metric,
    pub base: Option<f64>,
    pub variant: Option<f64>,
    pub diff: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonTable {
    pub label: String,
    pub rows: Vec<MetricRow>,
    /// Task ids both modes succeeded on; efficiency means use only these.
    pub intersection: BTreeSet<String>,
}

impl ComparisonTable {
    pub fn row(&self, metric: Metric) -> &MetricRow {
        self.rows.iter().find(|r| r.metric == metric).expect("every metric has a row")
    }
}

fn mean_over(run: &RunMetrics, ids: &BTreeSet<String>, f: impl Fn(&TaskMetrics) -> f64) -> Option<f64> {
    let values: Vec<f64> = run.tasks.iter().filter(|t| ids.contains(&t.task_id)).map(f).collect();
    (!values.is_empty()).then(|| values.iter().sum::<f64>() / values.len() as f64)
}

fn row(metric: Metric, base: Option<f64>, variant: Option<f64>) -> MetricRow {
    let d = match (base, variant) {
        (Some(b), Some(v)) => diff(b, v),
        _ => None,
    };
    MetricRow { metric, base, variant, diff: d }
}

/// Efficiency metrics are averaged over the both-succeeded intersection;
/// rates use every task of each run.
pub fn compare(base: &RunMetrics, variant: &RunMetrics) -> ComparisonTable {
    let ok = |run: &RunMetrics| -> BTreeSet<String> { run.tasks.iter().filter(|t| t.success).map(|t| t.task_id.clone()).collect() };
    let intersection: BTreeSet<String> = ok(base).intersection(&ok(variant)).cloned().collect();
    let eff = |f: fn(&TaskMetrics) -> f64| (mean_over(base, &intersection, f), mean_over(variant, &intersection, f));
    let (tb, tv) = eff(|t| t.tokens() as f64);
    let (cb, cv) = eff(|t| t.cost);
    let (ub, uv) = eff(|t| t.turns as f64);
    let (kb, kv) = eff(|t| t.tool_calls as f64);
    let rows = vec![
        row(Metric::Exec, base.exec_rate(), variant.exec_rate()),
        row(Metric::Reuse, base.reuse_rate(), variant.reuse_rate()),
        row(Metric::Tokens, tb, tv),
        row(Metric::Cost, cb, cv),
        row(Metric::Turns, ub, uv),
        row(Metric::ToolCalls, kb, kv),
        row(Metric::SuccessOverall, base.success_rate(), variant.success_rate()),
        row(Metric::SuccessHard, base.success_rate_for(Difficulty::Hard), variant.success_rate_for(Difficulty::Hard)),
    ];
    ComparisonTable { label: format!("{} vs {}", variant.mode, base.mode), rows, intersection }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Markdown,
    Csv,
}

impl FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "md" | "markdown" => Ok(ReportFormat::Markdown),
            "csv" => Ok(ReportFormat::Csv),
            other => Err(format!("unknown report format '{other}' (expected md or csv)")),
        }
    }
}

impl fmt::Display for ReportFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReportFormat::Markdown => "md",
            ReportFormat::Csv => "csv",
        })
    }
}

fn header() -> Vec<String> {
    let mut cols = vec!["Comparison".to_string()];
    for m in Metric::ORDER {
        match m {
            Metric::Exec | Metric::Reuse => cols.push(m.label().to_string()),
            Metric::Tokens | Metric::Cost | Metric::Turns | Metric::ToolCalls => {
                for part in ["Base", "Variant", "Diff"] {
                    cols.push(format!("{} {part}", m.label()));
                }
            }
            Metric::SuccessOverall | Metric::SuccessHard => {
                for part in ["Base", "Variant"] {
                    cols.push(format!("{} {part}", m.label()));
                }
            }
        }
    }
    cols
}

fn cells(table: &ComparisonTable) -> Vec<String> {
    let mut out = vec![table.label.clone()];
    for m in Metric::ORDER {
        let r = table.row(m);
        match m {
            Metric::Exec | Metric::Reuse => out.push(m.format(r.variant)),
            Metric::Tokens | Metric::Cost | Metric::Turns | Metric::ToolCalls => {
                out.push(m.format(r.base));
                out.push(m.format(r.variant));
                out.push(format_diff(r.diff));
            }
            Metric::SuccessOverall | Metric::SuccessHard => {
                out.push(m.format(r.base));
                out.push(m.format(r.variant));
            }
        }
    }
    out
}

/// One row per comparison in a fixed column order; no tables gives the
/// header alone.
pub fn emit_report(tables: &[ComparisonTable], format: ReportFormat) -> String {
    let head = header();
    let mut out = String::new();
    match format {
        ReportFormat::Markdown => {
            out.push_str(&format!("| {} |\n", head.join(" | ")));
            out.push_str(&format!("|{}\n", "---|".repeat(head.len())));
            for t in tables {
                out.push_str(&format!("| {} |\n", cells(t).join(" | ")));
            }
        }
        ReportFormat::Csv => {
            out.push_str(&head.join(","));
            out.push('\n');
            for t in tables {
                out.push_str(&cells(t).join(","));
                out.push('\n');
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diff_formatting() {
        assert_eq!(format_diff(diff(1.23, 0.26)), "-79%");
        assert_eq!(format_diff(diff(1.04, 0.53)), "-49%");
        assert_eq!(format_diff(diff(2.0, 2.0)), "0%");
        assert_eq!(format_diff(diff(1.0, 1.25)), "+25%");
        assert_eq!(format_diff(diff(0.0, 1.0)), "n/a");
    }

    #[test]
    fn empty_report_is_header_only() {
        let md = emit_report(&[], ReportFormat::Markdown);
        assert_eq!(md.lines().count(), 2);
        assert!(md.starts_with("| Comparison | Exec | Reuse | Tokens Base | Tokens Variant | Tokens Diff | Cost Base"));
        let csv = emit_report(&[], ReportFormat::Csv);
        assert_eq!(csv.lines().count(), 1);
        assert_eq!(csv.trim_end().split(',').count(), 1 + 2 + 12 + 4);
    }
}
