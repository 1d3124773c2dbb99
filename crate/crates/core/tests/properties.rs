use proptest::prelude::*;
use volterra::harness::{emit_report, parse_symbol, run_experiment, ExperimentKind, ExperimentSpec, Params, ReportFormat};
use volterra::operators::{apply_volterra, resolvent_apply, PolynomialSymbol};
use volterra::{Complex, TruncatedSeries};

const N: usize = 24;

fn complex() -> impl Strategy<Value = Complex> {
    (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(re, im)| Complex::new(re, im))
}

fn poly(max_degree: usize) -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec(complex(), 1..=max_degree + 1).prop_map(TruncatedSeries::polynomial)
}

fn symbol() -> impl Strategy<Value = PolynomialSymbol> {
    prop::collection::vec(complex(), 1..=3).prop_filter_map("nonconstant", |mut c| {
        c.insert(0, Complex::new(0.0, 0.0));
        PolynomialSymbol::new(c).ok()
    })
}

fn close(a: &TruncatedSeries, b: &TruncatedSeries, tol: f64) -> bool {
    let m = a.trunc_degree().max(b.trunc_degree());
    let scale = (0..=m).map(|k| a.coeff(k).norm().max(b.coeff(k).norm())).fold(1.0, f64::max);
    a.max_prefix_deviation(b, m) <= tol * scale
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn addition_commutes_and_associates(a in poly(8), b in poly(8), c in poly(8)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert!(close(&(&(&a + &b) + &c), &(&a + &(&b + &c)), 1e-15));
        prop_assert!(close(&(&a - &a), &TruncatedSeries::zero(), 0.0));
    }

    #[test]
    fn product_is_a_ring_product(a in poly(8), b in poly(8), c in poly(8)) {
        prop_assert!(close(&a.mul(&b, N), &b.mul(&a, N), 1e-15));
        prop_assert!(close(&a.mul(&b, N).mul(&c, N), &a.mul(&b.mul(&c, N), N), 1e-14));
        let left = a.mul(&(&b + &c), N);
        let right = &a.mul(&b, N) + &a.mul(&c, N);
        prop_assert!(close(&left, &right, 1e-14));
        let one = TruncatedSeries::constant(Complex::new(1.0, 0.0));
        prop_assert!(close(&a.mul(&one, N), &a, 0.0));
    }

    #[test]
    fn exp_turns_sums_into_products(a in poly(4), b in poly(4)) {
        let lhs = (&a + &b).exp(N);
        let rhs = a.exp(N).mul(&b.exp(N), N);
        prop_assert!(close(&lhs, &rhs, 1e-12));
    }

    #[test]
    fn volterra_is_linear(g in symbol(), f1 in poly(10), f2 in poly(10), s in complex()) {
        let lhs = apply_volterra(&g, &(&f1 + &f2.scale(s)));
        let rhs = &apply_volterra(&g, &f1) + &apply_volterra(&g, &f2).scale(s);
        prop_assert!(close(&lhs, &rhs, 1e-14));
    }

    #[test]
    fn resolvent_is_linear(g in symbol(), h1 in poly(10), h2 in poly(10), s in complex()) {
        let lambda = Complex::new(1.5, -0.5);
        let lhs = resolvent_apply(&g, lambda, &(&h1 + &h2.scale(s)), N).unwrap();
        let rhs = &resolvent_apply(&g, lambda, &h1, N).unwrap() + &resolvent_apply(&g, lambda, &h2, N).unwrap().scale(s);
        prop_assert!(close(&lhs, &rhs, 1e-13));
    }

    #[test]
    fn symbol_display_round_trips(g in symbol()) {
        prop_assert_eq!(parse_symbol(&g.to_string()).unwrap(), g);
    }
}

#[test]
fn parser_corpus_round_trips() {
    let corpus = [
        "z", "-z", "2z", "2*z", "z^2", "-z^2", "6z^2 - z", "z^3 + z^2 + z", "(1+2i)z^3 + z", "(1-2i)*z",
        "i*z", "-i*z", "iz", "2iz", "2i*z^2", "-2.5i z^2", "0.5z", ".5z", "5.z", "1e-3z",
        "1E2*z^4", "3z^10 - 2z^5", "z^100", "(0.25-3i)z^2 + 2iz", "0.1z^4 - (0.25-3i)z^2 + 2iz", "z + z", "z^2 + z - z^2 + z^3", "2*3*z", "(2)*(3i)*z", "(-1)z",
        "(-i)z^2", "( 1 + i ) z", "z ^ 3", "  z  ", "+z", "-(1+i)z", "4z^2 - 4z^2 + z", "1.5e1z^2 - 1.5e+1z", "(1e-2+1e-2i)z^5", "z^1",
        "7z^7 + 6z^6 + 5z^5", "-(0.5)z^3", "3*(1+i)z", "(3)*(1+i)*z", "1i*z", "0.000001z", "123456789z^2 + z", "(0-1i)z", "(-0.5-0.5i)z^2 + (0.5+0.5i)z", "i*i*z",
    ];
    assert_eq!(corpus.len(), 50);
    for text in corpus {
        let g = parse_symbol(text).unwrap_or_else(|e| panic!("{text}: {e}"));
        let again = parse_symbol(&g.to_string()).unwrap();
        assert_eq!(again, g, "{text} -> {g}");
    }
}

#[test]
fn reports_are_byte_identical_under_a_fixed_seed() {
    for kind in ExperimentKind::ALL {
        let spec = match kind {
            // keep the sweep short
            ExperimentKind::Caratheodory => ExperimentSpec::new(Params::Caratheodory {
                count: 50,
                max_degree: 6,
                radii: vec![0.5, 2.0],
            }),
            _ => ExperimentSpec::default_for(kind),
        }
        .with_seed(7);
        let a = run_experiment(&spec).unwrap();
        let b = run_experiment(&spec).unwrap();
        for format in [ReportFormat::Json, ReportFormat::Csv, ReportFormat::Text] {
            assert_eq!(emit_report(&a, format), emit_report(&b, format), "{kind:?} {format:?}");
        }
    }
}
