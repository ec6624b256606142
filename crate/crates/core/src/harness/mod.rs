//! Run orchestration: accounting, limits, metrics, comparison, reports,
//! the parallel runner and the wire server.

pub mod accounting;
pub mod metrics;
pub mod report;
pub mod runner;
pub mod wire;

pub use accounting::{count_tokens, enforce_limits, LimitReason, Limits, Progress, TokenModel, Verdict};
pub use metrics::{aggregate, task_metrics, RunMetrics, TaskMetrics};
pub use report::{compare, diff, emit_report, format_diff, ComparisonTable, Metric, MetricRow, ReportFormat};
pub use runner::{read_edge_cases, read_metrics, run_suite, EdgeCases, HarnessError, RunConfig, RunOutput, Transfer};
