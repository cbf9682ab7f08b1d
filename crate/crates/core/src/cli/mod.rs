//! Problem files, the end-to-end pipeline and its output files.

mod output;
mod run;
mod spec;

pub use output::{envelope_tsv, points_csv, report_json, write_outputs};
pub use run::{
    capped_bound, construct_for, estimate_problem, estimate_with_stream, liouville_problem,
    liouville_with_stream, run_classify, run_construct, run_estimate, run_liouville, run_report,
    verdict, ConstructedCurve, ConstructionReport, EstimateOutcome, EstimateReport, RunOutput,
    RunReport, SequenceSummary, Verdict, FULL_PREFIX_BUDGET, SECTION_PREFIX_BUDGET, SEQUENCE_TERMS,
    VERDICT_TOLERANCE,
};
pub use spec::{Problem, ProblemSpec, KEYS};
