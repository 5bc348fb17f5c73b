//! Build the unique coevent with prescribed singleton and doubleton
//! values, following the worked five-outcome construction.
//!
//! ```bash
//! cargo run -p coevent --example interpolate_worked
//! ```

use coevent::{from_table, interpolate, pair_index, OutcomeSpace};

fn main() {
    let space = OutcomeSpace::new(5).unwrap();

    // phi(w1) = phi(w2) = 1 and phi({1,2}) = phi({2,3}) = phi({4,5}) = 1,
    // every other singleton and doubleton value 0
    let singles = 0b00011;
    let mut doubles = 0u128;
    for (i, j) in [(1, 2), (2, 3), (4, 5)] {
        doubles |= 1 << pair_index(space, i, j).unwrap();
    }
    let psi = interpolate(space, singles, doubles);
    println!("interpolated coevent:\n  {psi}");

    let ev = |idx: &[usize]| space.event_from_indices(idx).unwrap();
    for sample in [vec![2, 3], vec![4, 5], vec![1, 2, 3], vec![3, 4]] {
        let a = ev(&sample);
        println!("  psi({a}) = {}", u8::from(psi.evaluate(a)));
    }
    println!("  unital: {}", psi.is_unital());

    // the coefficients can be read back off the full table
    let recovered = from_table(&psi.to_table()).unwrap();
    assert_eq!(recovered, psi);
    println!("table round-trip recovers the same nine monomials");

    // a degree-3 table has no coefficient vector
    let sp3 = OutcomeSpace::new(3).unwrap();
    let cubic =
        coevent::TruthTable::from_true_events(sp3, &[sp3.event_from_indices(&[1, 2, 3]).unwrap()])
            .unwrap();
    println!(
        "degree-3 table {cubic}: {}",
        from_table(&cubic).unwrap_err()
    );
}
