//! Reproduction commands, the small-graph scanner and JSON reports.

pub mod analysis;
pub mod commands;
pub mod enumerate;
pub mod report;

pub use analysis::{analyze_instance, AnalysisOptions, InstanceAnalysis, OrderingChoice};
pub use commands::{
    cmd_analyze, cmd_permutation, cmd_scan, cmd_schrijver, ScanMode, ScanOptions, ScanOutput,
    ScanRecord, ScanStatus,
};
pub use enumerate::{connected_graphs, disconnected_graphs};
pub use report::{Exactness, Report, EXIT_CERTIFIED, EXIT_INTERVALS, EXIT_VIOLATION};
