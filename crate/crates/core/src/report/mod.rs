//! End-to-end pipeline, validation statistics, ranking and plot output.

mod config;
mod pipeline;
mod plots;
mod stats;

pub use config::{DatasetSource, Mode, PipelineConfig};
pub use pipeline::{
    read_results, run_pipeline, write_curve_csv, write_outputs, write_results_csv, ErrorEntry,
    PipelineOutput, RqasResult, RESULTS_CSV_HEADER,
};
pub use plots::emit_plots;
pub use stats::{
    cliff_fit, kendall_tau, linear_fit, pearson, rank_variants, validate, Discrepancy, LinearFit,
    RankedVariant, ValidationPoint, ValidationReport,
};
