//! Symbol parsing, seeded experiments over the operator and spectral
//! routines, and report emission.

mod experiment;
mod parser;
mod quadrature;
mod report;

pub use experiment::{
    fmt_complex, run_experiment, CrossCase, ExperimentKind, ExperimentSpec, Params, SpaceSpec,
};
pub use parser::{parse_complex, parse_polynomial, parse_symbol};
pub use quadrature::{t_gamma_quadrature, GaussLegendre, DEFAULT_NODES};
pub use report::{emit_report, CaseRecord, Report, ReportFormat, Status, Summary};
