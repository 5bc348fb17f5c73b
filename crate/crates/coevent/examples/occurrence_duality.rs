//! Which events can occur? Occurrence queries against the preclusive
//! and precluding subspaces, and the duality between the two notions.
//!
//! ```bash
//! cargo run -p coevent --example occurrence_duality
//! ```

use coevent::{duality_report, occurrence_query, OutcomeSpace, PrecludedFamily, QueryMode};

fn main() {
    let space = OutcomeSpace::new(3).unwrap();
    let ev = |idx: &[usize]| space.event_from_indices(idx).unwrap();

    // with {1,2} precluded, B = {1} still has a preclusive witness even
    // though B sits inside the precluded union
    let family = PrecludedFamily::new(space, &[ev(&[1, 2])]);
    for mode in [QueryMode::Preclusive, QueryMode::Precluding] {
        let answer = occurrence_query(&family, ev(&[1]), mode);
        match answer.witness {
            Some(witness) => println!("{mode}: {{1}} can occur, witness {witness}"),
            None => println!("{mode}: {{1}} cannot occur"),
        }
    }
    println!();

    // with {1} precluded, B = {1,2} reaches outside the union yet no
    // precluding coevent is nonzero on it
    let family = PrecludedFamily::new(space, &[ev(&[1])]);
    let answer = occurrence_query(&family, ev(&[1, 2]), QueryMode::Precluding);
    println!(
        "precluding witness for {{1,2}} with {{1}} precluded: {}",
        answer.exists
    );
    println!();

    // the full duality report for one family
    let family = PrecludedFamily::new(space, &[ev(&[1, 2])]);
    println!("{}", duality_report(&family).unwrap());
}
