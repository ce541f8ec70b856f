//! Randomized numeric verification of identity corpora, q → 1 sweeps and
//! report output.

mod limits;
mod report;
mod run;
mod sampling;

pub use limits::{SweepRow, SweepTable, identity_sweep, limit_sweep};
pub use report::{
    IdentityReport, Meta, Num, ReportFormat, ResidualRecord, Skip, SkipReason, VerificationReport, emit_report,
    render_text,
};
pub use run::{EXACT_DEFAULTS, MAX_ATTEMPTS, RunConfig, run_corpus, run_exact, run_identity, run_identity_at};
pub use sampling::SampleStrategy;
