//! Enumerate every projection at D = 3 and verify the orthomodular
//! poset laws over the whole family.
//!
//! ```bash
//! cargo run -p coevent --example orthomodular_poset
//! ```

use coevent::{enumerate_idempotent_matrices, verify_orthomodular, OutcomeSpace, Projection};

fn main() {
    let space = OutcomeSpace::new(2).unwrap();
    let matrices = enumerate_idempotent_matrices(3).unwrap();
    println!(
        "{} idempotent 3x3 matrices among the 512 candidates",
        matrices.len()
    );

    let mut by_rank = [0usize; 4];
    for m in &matrices {
        by_rank[m.rank()] += 1;
    }
    println!("by rank: {by_rank:?}");

    let projections: Vec<Projection> = matrices
        .into_iter()
        .map(|m| Projection::new(space, m).unwrap())
        .collect();

    let mut commuting = 0;
    let mut orthogonal = 0;
    let mut comparable = 0;
    for p in &projections {
        for q in &projections {
            let rel = p.relations(q);
            commuting += usize::from(rel.commute);
            orthogonal += usize::from(rel.orthogonal);
            comparable += usize::from(rel.leq);
        }
    }
    println!(
        "ordered pairs: {} commuting, {orthogonal} orthogonal, {comparable} with P ≤ Q",
        commuting
    );

    let report = verify_orthomodular(&projections);
    println!("{report}");
}
