//! Run every experiment kind with its built-in parameters and print the summaries.
//! A perturbed run shows what a failing report looks like.
//!
//! cargo run --release --example verify_harness

use volterra::harness::{emit_report, run_experiment, ExperimentKind, ExperimentSpec, ReportFormat};

fn main() -> volterra::Result<()> {
    for kind in ExperimentKind::ALL {
        let report = run_experiment(&ExperimentSpec::default_for(kind).with_seed(1))?;
        let s = report.summary;
        println!("{kind:<22} pass {:>5} fail {} skip {}  ({:.2?})", s.pass, s.fail, s.skip, report.wall_time);
    }
    let spec = ExperimentSpec::default_for(ExperimentKind::NilpotentSections).with_perturbation(1e-3);
    let report = run_experiment(&spec)?;
    let text = String::from_utf8(emit_report(&report, ReportFormat::Text)).expect("utf-8");
    for line in text.lines().take(4) {
        println!("{line}");
    }
    Ok(())
}
