//! Search projection pairs for greatest lower bounds.
//!
//! Whether the projection poset is a lattice is open in general; this
//! scan produces evidence one dimension at a time. At D = 3 the
//! exhaustive answer is negative: a pair with two incomparable maximal
//! lower bounds exists.
//!
//! ```bash
//! cargo run --release -p coevent --example lattice_search
//! ```

use coevent::{lattice_search, LatticeSearchMode, OutcomeSpace};

fn main() {
    // all 58 projections at D = 3, every pair decided
    let space = OutcomeSpace::new(2).unwrap();
    let report = lattice_search(space, LatticeSearchMode::Exhaustive).unwrap();
    println!("{report}\n");

    // D = 6 (n = 3) has about a million projections; sample pairs with a
    // deterministic seed, each still decided by a full scan
    let space = OutcomeSpace::new(3).unwrap();
    let report = lattice_search(space, LatticeSearchMode::Random { budget: 2, seed: 7 }).unwrap();
    println!("{report}");
}
