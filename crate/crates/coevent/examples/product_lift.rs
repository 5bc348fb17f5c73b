//! Lift a coevent to a grade-1 additive map on pairs of outcomes, so
//! that evaluating the lift on a cartesian square recovers the coevent.
//!
//! ```bash
//! cargo run -p coevent --example product_lift
//! ```

use coevent::{classify, lift_to_product, square, Coevent, OutcomeSpace};

fn main() {
    let space = OutcomeSpace::new(3).unwrap();
    let phi = Coevent::from_monomials(space, &[1], &[(2, 3)]).unwrap();
    println!("coevent: {phi}");

    let lam = lift_to_product(&phi);
    println!("lift generators: {:?}", lam.generators());

    for idx in [vec![], vec![1], vec![2, 3], vec![1, 2, 3]] {
        let a = space.event_from_indices(&idx).unwrap();
        let through_square = lam.evaluate(&square(a));
        assert_eq!(through_square, phi.evaluate(a));
        println!(
            "  lambda({a} x {a}) = {} = phi({a})",
            u8::from(through_square)
        );
    }

    // as a truth table on the nine-outcome product space the lift is
    // genuinely grade-1 additive
    let table = lam.to_product_table().unwrap();
    let report = classify(&table);
    println!(
        "lift on the product space: grade-1 additive = {}, multiplicative = {}",
        report.grade1_additive, report.multiplicative
    );
}
