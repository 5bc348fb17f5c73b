//! Preclusive and precluding bases for the four classic three-outcome
//! families.
//!
//! ```bash
//! cargo run -p coevent --example preclusion_families
//! ```

use coevent::{precluding_basis, preclusive_basis, OutcomeSpace, PrecludedFamily};

fn main() {
    let space = OutcomeSpace::new(3).unwrap();
    let ev = |idx: &[usize]| space.event_from_indices(idx).unwrap();

    let families = [
        ("one doubleton precluded", vec![ev(&[1, 2])]),
        ("two singletons precluded", vec![ev(&[1]), ev(&[2])]),
        ("one singleton precluded", vec![ev(&[1])]),
        ("two overlapping doubletons", vec![ev(&[1, 2]), ev(&[2, 3])]),
    ];

    for (label, members) in families {
        let family = PrecludedFamily::new(space, &members);
        println!(
            "== {label}: precluded = {family} (union {})",
            family.union()
        );
        let preclusive = preclusive_basis(&family);
        println!("preclusive subspace, dimension {}:", preclusive.dimension());
        for phi in preclusive.basis() {
            println!("  {phi}{}", if phi.is_unital() { "  (unital)" } else { "" });
        }
        let precluding = precluding_basis(&family);
        println!("precluding subspace, dimension {}:", precluding.dimension());
        for phi in precluding.basis() {
            println!("  {phi}{}", if phi.is_unital() { "  (unital)" } else { "" });
        }
        println!();
    }

    // precluding only sees the union: the first two families agree there
    let doubleton = PrecludedFamily::new(space, &[ev(&[1, 2])]);
    let singletons = PrecludedFamily::new(space, &[ev(&[1]), ev(&[2])]);
    println!(
        "precluding({{1,2}}) = precluding({{1}};{{2}}): {}",
        precluding_basis(&doubleton).spans_same(&precluding_basis(&singletons))
    );
}
