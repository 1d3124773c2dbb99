//! Order and type of e^{βz^n} from its Taylor coefficients, and the
//! membership verdicts they give for the Hörmander algebras.
//!
//! cargo run --example order_type

use volterra::weights::{default_window, membership_a0p, membership_ap, order_type, GrowthCondition};
use volterra::{Complex, TruncatedSeries};

fn main() -> volterra::Result<()> {
    for n in [1, 2, 3] {
        for beta in [0.5, 1.0, 2.0] {
            let f = TruncatedSeries::monomial(Complex::new(beta, 0.0), n).exp(200);
            let est = order_type(&f, default_window(&f))?;
            println!("e^({beta} z^{n}): order {:.4}, type {:.4} from {} coefficients", est.order, est.type_val, est.points);
        }
    }
    let f = TruncatedSeries::monomial(Complex::new(1.0, 0.0), 2).exp(200);
    for a in [1.0, 2.0, 3.0] {
        let gc = GrowthCondition::new(1.0, a)?;
        println!("e^(z^2) with a={a}: A_p {}, A0_p {}", membership_ap(&f, &gc)?.as_str(), membership_a0p(&f, &gc)?.as_str());
    }
    Ok(())
}
