//! Classify truth tables and enumerate them by class.
//!
//! ```bash
//! cargo run -p coevent --example classify_tables
//! ```

use coevent::{
    classify, decompose_additive, decompose_multiplicative, enumerate_tables, OutcomeSpace,
    TruthTable,
};

fn main() {
    let space = OutcomeSpace::new(3).unwrap();

    // a containment map is the only kind of homomorphism
    let w1 = TruthTable::containment_map(space, 1).unwrap();
    println!("w1* as a table: {w1}");
    println!("classification: {:?}\n", classify(&w1));

    // the sum w1* + w2* is additive but not multiplicative
    let sum = w1.sym_add(&TruthTable::containment_map(space, 2).unwrap());
    println!("w1* + w2* as a table: {sum}");
    println!("classification: {:?}", classify(&sum));
    println!(
        "additive decomposition: {:?}\n",
        decompose_additive(&sum).unwrap()
    );

    // the product w1*w2* is multiplicative and grade-2 additive but not additive
    let ev = |idx: &[usize]| space.event_from_indices(idx).unwrap();
    let product = TruthTable::from_true_events(space, &[ev(&[1, 2]), ev(&[1, 2, 3])]).unwrap();
    println!("w1*w2* as a table: {product}");
    println!("classification: {:?}", classify(&product));
    println!(
        "multiplicative generator: {}\n",
        decompose_multiplicative(&product).unwrap()
    );

    // census: 2^(2^n - 1) tables, n homomorphisms, 2^(n(n+1)/2) coevents
    for n in 1..=4 {
        let sp = OutcomeSpace::new(n).unwrap();
        let all = enumerate_tables(sp, |_| true).unwrap().count();
        let homs = enumerate_tables(sp, |r| r.homomorphism).unwrap().count();
        let grade2 = enumerate_tables(sp, |r| r.grade2_additive).unwrap().count();
        println!("n={n}: {all} tables, {homs} homomorphisms, {grade2} grade-2 additive");
    }
}
