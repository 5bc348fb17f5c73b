//! The master observable on two outcomes: generator matrices, products,
//! order relations, meets and joins, and the observable of a random
//! variable.
//!
//! ```bash
//! cargo run -p coevent --example master_observable
//! ```

use coevent::{Gf2Matrix, MasterObservable, OutcomeSpace, Projection, RandomVariable};

fn main() {
    let space = OutcomeSpace::new(2).unwrap();
    let obs = MasterObservable::new(space);
    let p1 = obs.generator(1);
    let p2 = obs.generator(2);

    println!("basis order: w1*, w2*, w1*w2*\n");
    println!("P(w1) =\n{p1}\n");
    println!("P(w2) =\n{p2}\n");
    let product = p1.matrix().mul(p2.matrix()).unwrap();
    println!("P(w1)P(w2) =\n{product}\n");
    let sum = p1.matrix().add(p2.matrix()).add(&product);
    assert_eq!(sum, Gf2Matrix::identity(3));
    println!("P(w1) + P(w2) + P(w1)P(w2) = I\n");

    let relations = p1.relations(&p2);
    println!("relations of P(w1), P(w2): {relations:?}");
    let (meet, join) = p1.meet_join(&p2).unwrap();
    println!(
        "meet rank {}, join is identity: {}\n",
        meet.rank(),
        join.is_identity()
    );

    let (part1, part2, shared) = p1.compatibility_decomposition(&p2).unwrap();
    println!(
        "compatibility decomposition into orthogonal parts of ranks {}, {}, {}\n",
        part1.rank(),
        part2.rank(),
        shared.rank()
    );

    // projections need not commute
    let q = Projection::new(space, "100\n000\n000".parse().unwrap()).unwrap();
    let qp = q.matrix().mul(p2.matrix()).unwrap();
    let pq = p2.matrix().mul(q.matrix()).unwrap();
    println!("QP(w2) = 0: {}", qp.is_zero());
    println!("P(w2)Q =\n{pq}");
    println!("so Q and P(w2) do not commute: {:?}\n", q.relations(&p2));

    // an observable is the master projection of a preimage
    let sp3 = OutcomeSpace::new(3).unwrap();
    let obs3 = MasterObservable::new(sp3);
    let f = RandomVariable::new(sp3, vec![1.0, 1.0, 2.0]).unwrap();
    let pf = obs3.observable(&f, &[1.0]);
    println!("P^f({{1}}) for f = (1,1,2) on three outcomes =\n{pf}");
}
