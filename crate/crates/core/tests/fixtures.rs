//! A known-pass and a known-fail run for every experiment kind.

use volterra::harness::{run_experiment, ExperimentKind, ExperimentSpec, Params, Status};

fn quick(kind: ExperimentKind) -> ExperimentSpec {
    match kind {
        ExperimentKind::Caratheodory => ExperimentSpec::new(Params::Caratheodory {
            count: 100,
            max_degree: 6,
            radii: vec![0.5, 1.0, 2.0, 5.0],
        }),
        _ => ExperimentSpec::default_for(kind),
    }
    .with_seed(11)
}

fn perturbation(kind: ExperimentKind) -> f64 {
    match kind {
        ExperimentKind::ResolventIdentity => 1e-6,
        ExperimentKind::TGammaBound => 1e-3,
        // a stronger weight keeps every verdict; a weaker one breaks the boundary
        ExperimentKind::MembershipDivergence => -0.5,
        ExperimentKind::Caratheodory => 0.5,
        ExperimentKind::NilpotentSections => 1e-3,
        ExperimentKind::SpectrumCrossCheck => 0.1,
    }
}

#[test]
fn faithful_runs_pass() {
    for kind in ExperimentKind::ALL {
        let r = run_experiment(&quick(kind)).unwrap();
        assert!(r.all_passed(), "{kind:?}: {:?}", r.summary);
        assert!(!r.cases.is_empty());
    }
}

#[test]
fn perturbed_runs_fail() {
    for kind in ExperimentKind::ALL {
        let spec = quick(kind).with_perturbation(perturbation(kind));
        let r = run_experiment(&spec).unwrap();
        assert!(r.summary.fail > 0, "{kind:?} missed the perturbation: {:?}", r.summary);
    }
}

#[test]
fn t_gamma_outside_hypothesis_is_flagged() {
    let spec = ExperimentSpec::new(Params::TGammaBound {
        n_values: vec![1],
        alpha: 1.0,
        gammas: vec!["1.2".into(), "0.5".into()],
        sampled_gammas: 0,
        gamma_max: 0.8,
        polynomials: 2,
        exponentials: 0,
        h_max_degree: 6,
        tol: 0.05,
        oracle_tol: 1e-8,
        drift_check: false,
    });
    let r = run_experiment(&spec).unwrap();
    let (bad, good) = r.cases.split_at(2);
    for c in bad {
        assert_eq!(c.status, Status::Fail);
        assert_eq!(c.note.as_deref(), Some("hypothesis |gamma| < alpha violated"));
    }
    assert!(good.iter().all(|c| c.status == Status::Pass));
}

#[test]
fn bad_input_is_rejected_before_running() {
    let spec = ExperimentSpec::new(Params::ResolventIdentity {
        symbols: vec!["z + 1".into()],
        lambdas: vec!["1".into()],
        cases: 3,
        symbol_max_degree: 2,
        h_max_degree: 4,
        tol: 1e-10,
    });
    assert!(run_experiment(&spec).is_err());
}
