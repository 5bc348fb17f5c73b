//! Grade-2 coevents over GF(2) on finite outcome spaces.
//!
//! A truth function assigns 0 or 1 to every subset of a finite outcome
//! space. The grade-2 additive ones, the *coevents*, are exactly the
//! degree-≤2 polynomials in the containment maps `w1*, ..., wn*`, and
//! they form a GF(2) vector space of dimension n(n+1)/2. This crate
//! implements that algebra end to end:
//!
//! - [`truth`]: arbitrary truth tables, their classification (unital,
//!   additive, multiplicative, grade-2, homomorphism, the two-point
//!   interference condition) and the brute-force table enumeration.
//! - [`poly`]: coevents as coefficient vectors: evaluation,
//!   interpolation from singleton/doubleton data, conversion to and from
//!   tables, the partition identity, and the lift to a grade-1 additive
//!   map on the product space.
//! - [`projection`]: idempotent maps on the coevent space, their
//!   orthomodular poset, the master observable A ↦ P(A), observables of
//!   random variables, and the meet-existence search.
//! - [`preclusion`]: preclusive and precluding subspaces of a precluded
//!   family, occurrence queries and the duality between the two notions.
//! - [`gf2`]: the bit-packed vector/matrix kernel everything runs on.
//! - [`suites`]: exhaustive verification sweeps over small spaces, also
//!   reachable through the `coevent verify` subcommand.
//!
//! The `examples/` directory walks through each capability; the thin
//! `coevent` binary exposes the same operations to the shell.

pub mod cli;
pub mod event;
pub mod gf2;
pub mod poly;
pub mod preclusion;
pub mod projection;
pub mod suites;
pub mod text;
pub mod truth;

pub use event::{combine, square, Event, EventError, OutcomeSpace, ProductEvent, SetOp};
pub use gf2::{Gf2Error, Gf2Matrix, Gf2Vector};
pub use poly::{
    from_table, interpolate, lift_to_product, pair_index, partition_identity_holds,
    verify_partition_identity, Coevent, PairAdditiveMap, PolyError,
};
pub use preclusion::{
    duality_report, occurrence_query, precluding_basis, preclusive_basis, CoeventSubspace,
    DualityReport, OccurrenceAnswer, PrecludedFamily, PreclusionError, QueryMode,
};
pub use projection::{
    enumerate_idempotent_matrices, lattice_search, verify_orthomodular, LatticeSearchMode,
    LatticeSearchReport, MasterObservable, OrthomodularReport, PosetRelationReport, Projection,
    ProjectionError, RandomVariable,
};
pub use suites::{run_suite, Suite, SuiteError, SuiteReport};
pub use text::{
    parse_coevent, parse_event, parse_event_list, parse_problem, parse_table, render_problem,
    ParseError, ProblemSpec,
};
pub use truth::{
    check_two_point, classify, decompose_additive, decompose_multiplicative, enumerate_tables,
    interference, ClassificationReport, TruthError, TruthTable,
};
