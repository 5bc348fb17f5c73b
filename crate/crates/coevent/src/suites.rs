//! Exhaustive verification suites.
//!
//! Each suite sweeps one part of the theory over a small outcome space
//! and reports one pass/fail line per law, naming a witness on failure.
//! The sweeps deliberately recompute everything from definitions; the
//! point is to catch any drift between the algebraic shortcuts used by
//! the library and the raw quantified statements they implement.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::event::{Event, OutcomeSpace};
use crate::gf2::Gf2Matrix;
use crate::poly::{
    from_table, interpolate, lift_to_product, pair_index, partition_identity_holds, Coevent,
};
use crate::preclusion::{
    duality_report, precluding_basis, precluding_basis_via_null_space, precluding_basis_via_range,
    preclusive_basis, CoeventSubspace, PrecludedFamily,
};
use crate::projection::{
    enumerate_idempotent_matrices, lattice_search, verify_orthomodular, LatticeSearchMode,
    MasterObservable, Projection, RandomVariable,
};
use crate::truth::{
    classify, decompose_additive, decompose_multiplicative, enumerate_tables, TruthTable,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SuiteError {
    #[error("suite {suite} is exhaustive and capped at n ≤ {max}; got n = {n}")]
    Capacity {
        suite: &'static str,
        n: usize,
        max: usize,
    },
    #[error("unknown suite {name:?} (expected interference, coevent, projection, master, preclusion, lattice or all)")]
    UnknownSuite { name: String },
    #[error("invalid outcome count: {0}")]
    BadSpace(String),
}

/// The verification suites, one per subject area.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Interference,
    Coevent,
    Projection,
    Master,
    Preclusion,
    Lattice,
    All,
}

impl Suite {
    pub fn name(&self) -> &'static str {
        match self {
            Suite::Interference => "interference",
            Suite::Coevent => "coevent",
            Suite::Projection => "projection",
            Suite::Master => "master",
            Suite::Preclusion => "preclusion",
            Suite::Lattice => "lattice",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = SuiteError;

    fn from_str(s: &str) -> Result<Self, SuiteError> {
        match s {
            "interference" => Ok(Suite::Interference),
            "coevent" => Ok(Suite::Coevent),
            "projection" => Ok(Suite::Projection),
            "master" => Ok(Suite::Master),
            "preclusion" => Ok(Suite::Preclusion),
            "lattice" => Ok(Suite::Lattice),
            "all" => Ok(Suite::All),
            other => Err(SuiteError::UnknownSuite { name: other.into() }),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// One verified law.
#[derive(Debug, Clone, serde::Serialize)]
pub struct SuiteCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// All checks run by one suite invocation.
#[derive(Debug, Clone, serde::Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub n: usize,
    pub checks: Vec<SuiteCheck>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite {} (n = {})", self.suite, self.n)?;
        for check in &self.checks {
            writeln!(
                f,
                "{} {}: {}",
                if check.passed { "PASS" } else { "FAIL" },
                check.name,
                check.detail
            )?;
        }
        write!(
            f,
            "{}: {}/{} checks passed",
            if self.passed() { "ok" } else { "FAILED" },
            self.checks.iter().filter(|c| c.passed).count(),
            self.checks.len()
        )
    }
}

struct Checker {
    checks: Vec<SuiteCheck>,
}

impl Checker {
    fn new() -> Self {
        Checker { checks: Vec::new() }
    }

    fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(SuiteCheck {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }
}

const SUITE_OUTCOME_CAP: usize = 4;

fn capped_space(suite: &'static str, n: usize) -> Result<OutcomeSpace, SuiteError> {
    if n > SUITE_OUTCOME_CAP {
        return Err(SuiteError::Capacity {
            suite,
            n,
            max: SUITE_OUTCOME_CAP,
        });
    }
    OutcomeSpace::new(n).map_err(|e| SuiteError::BadSpace(e.to_string()))
}

/// Run a suite at the given exhaustive size. The projection and lattice
/// suites always work at D = 3, the one dimension where the full
/// projection poset is enumerable, and ignore larger n.
pub fn run_suite(suite: Suite, n: usize) -> Result<SuiteReport, SuiteError> {
    let mut checker = Checker::new();
    match suite {
        Suite::Interference => interference_suite(capped_space("interference", n)?, &mut checker),
        Suite::Coevent => coevent_suite(capped_space("coevent", n)?, &mut checker),
        Suite::Projection => projection_suite(&mut checker),
        Suite::Master => master_suite(capped_space("master", n)?, &mut checker),
        Suite::Preclusion => preclusion_suite(capped_space("preclusion", n)?, &mut checker),
        Suite::Lattice => lattice_suite(&mut checker),
        Suite::All => {
            let space = capped_space("all", n)?;
            interference_suite(space, &mut checker);
            coevent_suite(space, &mut checker);
            projection_suite(&mut checker);
            master_suite(space, &mut checker);
            preclusion_suite(space, &mut checker);
            lattice_suite(&mut checker);
        }
    }
    Ok(SuiteReport {
        suite: suite.name().into(),
        n,
        checks: checker.checks,
    })
}

/// All coevents of the space, by coefficient vector.
fn all_coevents(space: OutcomeSpace) -> Vec<Coevent> {
    let d = space.dimension();
    (0u128..(1 << d))
        .map(|bits| {
            let mut v = crate::gf2::Gf2Vector::zeros(d);
            for k in 0..d {
                if (bits >> k) & 1 == 1 {
                    v.set(k, true);
                }
            }
            Coevent::from_vector(space, &v)
        })
        .collect()
}

/// Table fingerprint for set comparisons; only sound below the suite cap.
fn table_key(t: &TruthTable) -> u64 {
    let mut key = 0u64;
    for mask in 0..=t.space().full_mask() {
        if t.value_mask(mask) {
            key |= 1 << mask;
        }
    }
    key
}

fn interference_suite(space: OutcomeSpace, checker: &mut Checker) {
    let n = space.outcome_count();
    let tables: Vec<TruthTable> = enumerate_tables(space, |_| true).expect("capped").collect();
    let reports: Vec<_> = tables.iter().map(classify).collect();

    let mut equivalence_witness = None;
    let mut implication_witness = None;
    let mut strict_example = None;
    for (t, r) in tables.iter().zip(&reports) {
        if r.grade2_additive != r.two_point_condition {
            equivalence_witness.get_or_insert_with(|| t.to_string());
        }
        if r.grade1_additive && !r.grade2_additive {
            implication_witness.get_or_insert_with(|| t.to_string());
        }
        if r.grade2_additive && !r.grade1_additive {
            strict_example.get_or_insert_with(|| t.to_string());
        }
    }
    checker.check(
        "grade-2 additivity iff the two-point interference condition",
        equivalence_witness.is_none(),
        equivalence_witness
            .map(|w| format!("counterexample {w}"))
            .unwrap_or_else(|| format!("{} tables scanned", tables.len())),
    );
    checker.check(
        "grade-1 additivity implies grade-2, strictly",
        implication_witness.is_none() && (n < 2 || strict_example.is_some()),
        implication_witness
            .map(|w| format!("implication broken at {w}"))
            .unwrap_or_else(|| match strict_example {
                Some(w) => format!("strictness witness {w}"),
                None => "no strictness witness exists at this n".into(),
            }),
    );

    let homs: Vec<&TruthTable> = tables
        .iter()
        .zip(&reports)
        .filter_map(|(t, r)| r.homomorphism.then_some(t))
        .collect();
    let containments_ok = (1..=n).all(|i| {
        let alpha = TruthTable::containment_map(space, i).expect("valid outcome");
        homs.iter().any(|t| **t == alpha)
    });
    checker.check(
        "homomorphisms are exactly the containment maps",
        homs.len() == n && containments_ok,
        format!("{} homomorphisms over {} outcomes", homs.len(), n),
    );

    let mut decomp_failures = Vec::new();
    let mut additive_count = 0;
    let mut multiplicative_count = 0;
    for (t, r) in tables.iter().zip(&reports) {
        if r.grade1_additive && !t.is_zero() {
            additive_count += 1;
            match decompose_additive(t) {
                Ok(outcomes) => {
                    let rebuilt = outcomes.iter().fold(TruthTable::zero(space), |acc, &i| {
                        acc.sym_add(&TruthTable::containment_map(space, i).expect("valid"))
                    });
                    if rebuilt != *t {
                        decomp_failures.push(format!("additive rebuild differs at {t}"));
                    }
                }
                Err(e) => decomp_failures.push(format!("additive decomposition refused {t}: {e}")),
            }
        } else if decompose_additive(t).is_ok() {
            decomp_failures.push(format!("additive decomposition accepted {t}"));
        }
        if r.multiplicative && !t.is_zero() {
            multiplicative_count += 1;
            match decompose_multiplicative(t) {
                Ok(generator) => {
                    let rebuilt_matches = space
                        .events()
                        .all(|a| t.value(a) == generator.is_subset_of(&a));
                    if !rebuilt_matches {
                        decomp_failures.push(format!("multiplicative rebuild differs at {t}"));
                    }
                }
                Err(e) => {
                    decomp_failures.push(format!("multiplicative decomposition refused {t}: {e}"))
                }
            }
        } else if decompose_multiplicative(t).is_ok() {
            decomp_failures.push(format!("multiplicative decomposition accepted {t}"));
        }
    }
    checker.check(
        "additive and multiplicative decompositions round-trip",
        decomp_failures.is_empty(),
        if decomp_failures.is_empty() {
            format!("{additive_count} additive and {multiplicative_count} multiplicative tables")
        } else {
            decomp_failures.join("; ")
        },
    );

    let mut interference_witness = None;
    for (t, r) in tables.iter().zip(&reports) {
        let mut all_zero = true;
        for mask in 0..=space.full_mask() {
            if mask.count_ones() < 2 {
                continue;
            }
            let outcomes: Vec<usize> = (1..=n).filter(|&i| (mask >> (i - 1)) & 1 == 1).collect();
            if crate::truth::interference(t, &outcomes).expect("valid tuple") {
                all_zero = false;
                break;
            }
        }
        if all_zero != r.grade1_additive {
            interference_witness.get_or_insert_with(|| t.to_string());
            break;
        }
    }
    checker.check(
        "additivity iff every interference vanishes",
        interference_witness.is_none(),
        interference_witness
            .map(|w| format!("counterexample {w}"))
            .unwrap_or_else(|| format!("{} tables scanned", tables.len())),
    );
}

/// Enumerate every assignment of outcomes into m disjoint (possibly
/// empty) parts and hand each partition to the callback; returns the
/// first partition rejected, if any.
fn scan_partitions<F>(space: OutcomeSpace, mut accept: F) -> Option<Vec<Event>>
where
    F: FnMut(&[Event]) -> bool,
{
    let n = space.outcome_count();
    for m in 2..=n.max(2) {
        if m > n {
            break;
        }
        let mut assignment = vec![0usize; n];
        loop {
            let mut masks = vec![0u32; m];
            for (outcome, &bucket) in assignment.iter().enumerate() {
                if bucket > 0 {
                    masks[bucket - 1] |= 1 << outcome;
                }
            }
            let parts: Vec<Event> = masks.iter().map(|&mk| space.event_from_mask(mk)).collect();
            if !accept(&parts) {
                return Some(parts);
            }
            // advance the mixed-radix counter over buckets {none, 1..m}
            let mut pos = 0;
            while pos < n {
                assignment[pos] += 1;
                if assignment[pos] <= m {
                    break;
                }
                assignment[pos] = 0;
                pos += 1;
            }
            if pos == n {
                break;
            }
        }
    }
    None
}

fn coevent_suite(space: OutcomeSpace, checker: &mut Checker) {
    let n = space.outcome_count();
    let d = space.dimension();
    let coevents = all_coevents(space);

    let mut round_trip_witness = None;
    let mut grade2_witness = None;
    let mut coevent_keys = std::collections::HashSet::new();
    for phi in &coevents {
        let table = phi.to_table();
        if !classify(&table).grade2_additive {
            grade2_witness.get_or_insert_with(|| phi.to_string());
        }
        match from_table(&table) {
            Ok(back) if back == *phi => {}
            _ => {
                round_trip_witness.get_or_insert_with(|| phi.to_string());
            }
        }
        coevent_keys.insert(table_key(&table));
    }
    checker.check(
        "every coevent table is grade-2 additive",
        grade2_witness.is_none(),
        grade2_witness
            .map(|w| format!("counterexample {w}"))
            .unwrap_or_else(|| format!("{} coevents", coevents.len())),
    );
    checker.check(
        "table round-trip recovers the coefficients",
        round_trip_witness.is_none(),
        round_trip_witness
            .map(|w| format!("counterexample {w}"))
            .unwrap_or_else(|| format!("{} coevents", coevents.len())),
    );

    let census: std::collections::HashSet<u64> = enumerate_tables(space, |r| r.grade2_additive)
        .expect("capped")
        .map(|t| table_key(&t))
        .collect();
    checker.check(
        "coevent tables equal the brute-force grade-2 census",
        coevent_keys == census && census.len() == 1usize << d,
        format!(
            "{} coevents = {} grade-2 tables = 2^{}",
            coevent_keys.len(),
            census.len(),
            d
        ),
    );

    let mut interpolation_ok = true;
    let mut seen = std::collections::HashSet::new();
    for bits in 0u128..(1 << d) {
        let singles = (bits & ((1 << n) - 1)) as u32;
        let doubles = bits >> n;
        let phi = interpolate(space, singles, doubles);
        for i in 1..=n {
            if phi.evaluate(space.singleton(i).expect("valid")) != ((singles >> (i - 1)) & 1 == 1) {
                interpolation_ok = false;
            }
        }
        for i in 1..=n {
            for j in (i + 1)..=n {
                let idx = pair_index(space, i, j).expect("valid pair");
                let doubleton = space.event_from_indices(&[i, j]).expect("valid");
                if phi.evaluate(doubleton) != ((doubles >> idx) & 1 == 1) {
                    interpolation_ok = false;
                }
            }
        }
        seen.insert(phi.to_vector().to_string());
    }
    checker.check(
        "interpolation is a bijection onto the coevents",
        interpolation_ok && seen.len() == 1usize << d,
        format!(
            "{} singleton/doubleton assignments, {} distinct coevents",
            1u128 << d,
            seen.len()
        ),
    );

    // the m-part additivity identity holds for every coevent and partition
    let mut partition_witness = None;
    for phi in &coevents {
        let table = phi.to_table();
        if let Some(parts) = scan_partitions(space, |parts| {
            partition_identity_holds(&table, parts).expect("disjoint by construction")
        }) {
            partition_witness = Some(format!(
                "{phi} with parts {}",
                parts
                    .iter()
                    .map(Event::to_string)
                    .collect::<Vec<_>>()
                    .join(", ")
            ));
            break;
        }
    }
    checker.check(
        "the partition identity holds for every coevent",
        partition_witness.is_none(),
        partition_witness.unwrap_or_else(|| format!("all partitions up to {n} parts")),
    );

    // and it characterizes them: non-coevent tables violate some partition
    if n <= 3 {
        let mut converse_witness = None;
        let tables: Vec<TruthTable> = enumerate_tables(space, |_| true).expect("capped").collect();
        for t in &tables {
            let is_coevent = coevent_keys.contains(&table_key(t));
            let satisfies_all = scan_partitions(space, |parts| {
                partition_identity_holds(t, parts).expect("disjoint by construction")
            })
            .is_none();
            if is_coevent != satisfies_all {
                converse_witness = Some(t.to_string());
                break;
            }
        }
        checker.check(
            "the partition identity characterizes coevents",
            converse_witness.is_none(),
            converse_witness.unwrap_or_else(|| "every non-coevent violates some partition".into()),
        );
    }

    // the singleton/doubleton expansion characterizes coevents
    let mut expansion_witness = None;
    let tables: Vec<TruthTable> = enumerate_tables(space, |_| true).expect("capped").collect();
    for t in &tables {
        let is_coevent = coevent_keys.contains(&table_key(t));
        let mut satisfied = true;
        for mask in 0..=space.full_mask() {
            if mask.count_ones() < 2 {
                continue;
            }
            let members: Vec<usize> = (1..=n).filter(|&i| (mask >> (i - 1)) & 1 == 1).collect();
            let mut rhs = false;
            for (k, &i) in members.iter().enumerate() {
                for &j in &members[k + 1..] {
                    rhs ^= t.value_mask((1 << (i - 1)) | (1 << (j - 1)));
                }
            }
            if members.len() % 2 == 1 {
                for &i in &members {
                    rhs ^= t.value_mask(1 << (i - 1));
                }
            }
            if t.value_mask(mask) != rhs {
                satisfied = false;
                break;
            }
        }
        if is_coevent != satisfied {
            expansion_witness = Some(t.to_string());
            break;
        }
    }
    checker.check(
        "the singleton/doubleton expansion characterizes coevents",
        expansion_witness.is_none(),
        expansion_witness.unwrap_or_else(|| format!("{} tables scanned", tables.len())),
    );

    // fixed worked fixture on five outcomes
    let five = OutcomeSpace::new(5).expect("valid");
    let mut doubles = 0u128;
    for (i, j) in [(1, 2), (2, 3), (4, 5)] {
        doubles |= 1 << pair_index(five, i, j).expect("valid pair");
    }
    let psi = interpolate(five, 0b00011, doubles);
    let expected = Coevent::from_monomials(
        five,
        &[1, 2],
        &[(1, 2), (4, 5), (1, 3), (1, 4), (1, 5), (2, 4), (2, 5)],
    )
    .expect("valid monomials");
    checker.check(
        "five-outcome interpolation fixture",
        psi == expected,
        format!("psi = {psi}"),
    );

    // product-space lift
    let mut lift_witness = None;
    for phi in &coevents {
        let lam = lift_to_product(phi);
        for a in space.events() {
            if lam.evaluate(&crate::event::square(a)) != phi.evaluate(a) {
                lift_witness.get_or_insert_with(|| format!("{phi} on {a}"));
            }
        }
    }
    checker.check(
        "the lift evaluates through the cartesian square",
        lift_witness.is_none(),
        lift_witness
            .unwrap_or_else(|| format!("{} coevents over {} events", coevents.len(), 1 << n)),
    );

    if n <= 3 {
        let mut additive_witness = None;
        for phi in &coevents {
            let table = lift_to_product(phi).to_product_table().expect("capped");
            if !classify(&table).grade1_additive {
                additive_witness = Some(phi.to_string());
                break;
            }
        }
        checker.check(
            "the lift is grade-1 additive on the product space",
            additive_witness.is_none(),
            additive_witness.unwrap_or_else(|| format!("{} lifted maps", coevents.len())),
        );
    }

    if n <= 3 {
        let mut add_witness = None;
        for a in &coevents {
            for b in &coevents {
                if (*a + *b).to_table() != a.to_table().sym_add(&b.to_table()) {
                    add_witness.get_or_insert_with(|| format!("{a} plus {b}"));
                }
            }
        }
        checker.check(
            "coevent addition is pointwise table addition",
            add_witness.is_none(),
            add_witness.unwrap_or_else(|| format!("{} pairs", coevents.len() * coevents.len())),
        );
    }
}

fn projection_suite(checker: &mut Checker) {
    // the projection poset is fully enumerable at D = 3 (n = 2)
    let space = OutcomeSpace::new(2).expect("valid");
    let mats = enumerate_idempotent_matrices(3).expect("capped");
    checker.check(
        "idempotent census at D=3",
        mats.len() == 58,
        format!("{} idempotents among 512 matrices", mats.len()),
    );

    let identity = Gf2Matrix::identity(3);
    let closed_under_complement = mats.iter().all(|m| m.add(&identity).is_idempotent());
    let mut rank_counts = [0usize; 4];
    for m in &mats {
        rank_counts[m.rank()] += 1;
    }
    checker.check(
        "idempotents closed under complement with symmetric rank counts",
        closed_under_complement
            && rank_counts[0] == rank_counts[3]
            && rank_counts[1] == rank_counts[2],
        format!("rank counts {rank_counts:?}"),
    );

    let projections: Vec<Projection> = mats
        .iter()
        .map(|m| Projection::new(space, m.clone()).expect("idempotent"))
        .collect();
    let report = verify_orthomodular(&projections);
    checker.check(
        "orthocomplemented poset and orthomodularity laws",
        report.passed(),
        if report.passed() {
            format!(
                "{} projections, {} ordered pairs",
                report.projection_count, report.pairs_checked
            )
        } else {
            report.to_string()
        },
    );

    // compatibility iff commutation, both directions made constructive:
    // commuting pairs decompose, and every decomposable pair commutes
    let count = mats.len();
    let product = |i: usize, j: usize| mats[i].mul(&mats[j]).expect("square");
    let mut orthogonal = vec![vec![false; count]; count];
    let mut commute = vec![vec![false; count]; count];
    for i in 0..count {
        for j in 0..count {
            let pq = product(i, j);
            let qp = product(j, i);
            commute[i][j] = pq == qp;
            orthogonal[i][j] = pq.is_zero() && qp.is_zero();
        }
    }

    let mut decomposition_failures = Vec::new();
    let mut commuting_pairs = 0usize;
    let mut noncommuting_pairs = 0usize;
    for i in 0..count {
        for j in 0..count {
            if commute[i][j] {
                commuting_pairs += 1;
                match projections[i].compatibility_decomposition(&projections[j]) {
                    Ok((p1, q1, r)) => {
                        let mutually_orthogonal = p1.relations(&q1).orthogonal
                            && p1.relations(&r).orthogonal
                            && q1.relations(&r).orthogonal;
                        let rebuilt = p1
                            .meet_join(&r)
                            .map(|(_, join)| join == projections[i])
                            .unwrap_or(false)
                            && q1
                                .meet_join(&r)
                                .map(|(_, join)| join == projections[j])
                                .unwrap_or(false);
                        if !mutually_orthogonal || !rebuilt {
                            decomposition_failures
                                .push(format!("decomposition of pair ({i},{j}) malformed"));
                        }
                    }
                    Err(e) => decomposition_failures.push(format!("pair ({i},{j}): {e}")),
                }
            } else {
                noncommuting_pairs += 1;
                if projections[i]
                    .compatibility_decomposition(&projections[j])
                    .is_ok()
                    || projections[i].meet_join(&projections[j]).is_ok()
                {
                    decomposition_failures
                        .push(format!("non-commuting pair ({i},{j}) was not rejected"));
                }
            }
        }
    }
    checker.check(
        "commuting pairs decompose into orthogonal parts",
        decomposition_failures.is_empty(),
        if decomposition_failures.is_empty() {
            format!("{commuting_pairs} commuting and {noncommuting_pairs} non-commuting pairs")
        } else {
            decomposition_failures.join("; ")
        },
    );

    // every join-of-orthogonal-parts pair commutes, so compatibility
    // never reaches outside the commuting pairs
    let mut compatible_noncommuting = None;
    let mut orthogonal_triples = 0usize;
    for p1 in 0..count {
        for q1 in 0..count {
            if !orthogonal[p1][q1] {
                continue;
            }
            for r in 0..count {
                if !orthogonal[p1][r] || !orthogonal[q1][r] {
                    continue;
                }
                orthogonal_triples += 1;
                let p = mats[p1].add(&mats[r]);
                let q = mats[q1].add(&mats[r]);
                if p.mul(&q).expect("square") != q.mul(&p).expect("square") {
                    compatible_noncommuting
                        .get_or_insert_with(|| format!("triple ({p1},{q1},{r})"));
                }
            }
        }
    }
    checker.check(
        "every compatible pair commutes",
        compatible_noncommuting.is_none(),
        compatible_noncommuting
            .unwrap_or_else(|| format!("{orthogonal_triples} mutually orthogonal triples scanned")),
    );
}

fn master_suite(space: OutcomeSpace, checker: &mut Checker) {
    let n = space.outcome_count();

    // fixed two-outcome fixtures
    {
        let sp2 = OutcomeSpace::new(2).expect("valid");
        let obs = MasterObservable::new(sp2);
        let p1: Gf2Matrix = "100\n000\n011".parse().expect("well-formed");
        let p2: Gf2Matrix = "000\n010\n101".parse().expect("well-formed");
        let p1p2: Gf2Matrix = "000\n000\n111".parse().expect("well-formed");
        let fixtures_ok = obs.generator(1).matrix() == &p1
            && obs.generator(2).matrix() == &p2
            && p1.mul(&p2).expect("square") == p1p2
            && p1.add(&p2).add(&p1p2) == Gf2Matrix::identity(3);
        let q: Gf2Matrix = "100\n000\n000".parse().expect("well-formed");
        let qp2_zero = q.mul(&p2).expect("square").is_zero();
        let p2q = p2.mul(&q).expect("square");
        let p2q_single = p2q == "000\n000\n100".parse().expect("well-formed");
        checker.check(
            "two-outcome generator fixtures",
            fixtures_ok && qp2_zero && p2q_single,
            "P(w1), P(w2), P(w1)P(w2), the unit sum and the non-commuting pair",
        );
    }

    let obs = MasterObservable::new(space);
    let projections: Vec<Projection> = space.events().map(|a| obs.projection(a)).collect();
    let projection_of = |a: Event| &projections[a.mask() as usize];

    let mut union_witness = None;
    let mut commute_witness = None;
    let mut monotone_witness = None;
    for a in space.events() {
        for b in space.events() {
            let pa = projection_of(a);
            let pb = projection_of(b);
            let sum = pa
                .matrix()
                .add(pb.matrix())
                .add(&pa.matrix().mul(pb.matrix()).expect("square"));
            if projection_of(a.union(&b)).matrix() != &sum {
                union_witness.get_or_insert_with(|| format!("A={a}, B={b}"));
            }
            match pa.meet_join(pb) {
                Ok((_, join)) => {
                    if &join != projection_of(a.union(&b)) {
                        union_witness.get_or_insert_with(|| format!("join at A={a}, B={b}"));
                    }
                }
                Err(_) => {
                    commute_witness.get_or_insert_with(|| format!("A={a}, B={b}"));
                }
            }
            if pa.matrix().mul(pb.matrix()).expect("square")
                != pb.matrix().mul(pa.matrix()).expect("square")
            {
                commute_witness.get_or_insert_with(|| format!("A={a}, B={b}"));
            }
            if pa.leq(pb) != a.is_subset_of(&b) {
                monotone_witness.get_or_insert_with(|| format!("A={a}, B={b}"));
            }
        }
    }
    checker.check(
        "P(A ∪ B) = P(A) + P(B) + P(A)P(B) = P(A) ∨ P(B)",
        union_witness.is_none(),
        union_witness.unwrap_or_else(|| format!("{} event pairs", 1 << (2 * n))),
    );
    checker.check(
        "master projections commute pairwise",
        commute_witness.is_none(),
        commute_witness.unwrap_or_else(|| format!("{} event pairs", 1 << (2 * n))),
    );
    checker.check(
        "strong monotonicity: P(A) ≤ P(B) iff A ⊆ B",
        monotone_witness.is_none(),
        monotone_witness.unwrap_or_else(|| format!("{} event pairs", 1 << (2 * n))),
    );

    checker.check(
        "P(∅) = 0 and P(Ω) = I",
        projection_of(space.empty_event()).is_zero()
            && projection_of(space.full_event()).is_identity(),
        format!("D = {}", space.dimension()),
    );

    let mut grade2_witness = None;
    let full = space.full_mask();
    for a in 0..=full {
        let comp_a = full & !a;
        let mut b = comp_a;
        loop {
            let comp_ab = full & !(a | b);
            let mut c = comp_ab;
            loop {
                let p = |mask: u32| projections[mask as usize].matrix();
                let lhs = p(a | b | c);
                let rhs = p(a | b)
                    .add(p(a | c))
                    .add(p(b | c))
                    .add(p(a))
                    .add(p(b))
                    .add(p(c));
                if *lhs != rhs {
                    grade2_witness.get_or_insert_with(|| {
                        format!(
                            "A={}, B={}, C={}",
                            space.event_from_mask(a),
                            space.event_from_mask(b),
                            space.event_from_mask(c)
                        )
                    });
                }
                if c == 0 {
                    break;
                }
                c = (c - 1) & comp_ab;
            }
            if b == 0 {
                break;
            }
            b = (b - 1) & comp_a;
        }
    }
    checker.check(
        "the master observable is grade-2 additive",
        grade2_witness.is_none(),
        grade2_witness.unwrap_or_else(|| "all mutually disjoint triples".into()),
    );

    if n >= 2 {
        let a = space.singleton(1).expect("valid");
        let b = space.singleton(2).expect("valid");
        let product = projection_of(a)
            .matrix()
            .mul(projection_of(b).matrix())
            .expect("square");
        let not_multiplicative = projection_of(a.intersect(&b)).matrix() != &product;
        let sum = projection_of(a).matrix().add(projection_of(b).matrix());
        let not_additive = projection_of(a.sym_diff(&b)).matrix() != &sum;
        checker.check(
            "the master observable is neither additive nor multiplicative",
            not_multiplicative && not_additive,
            "witnesses at the first two singletons",
        );
    }

    // observables are master projections of preimages
    let values: Vec<f64> = (1..=n).map(|i| if i <= 2 { 1.0 } else { 2.0 }).collect();
    let f = RandomVariable::new(space, values).expect("valid");
    let constant = RandomVariable::new(space, vec![5.0; n]).expect("valid");
    let preimage_event = space
        .event_from_indices(&(1..=n.min(2)).collect::<Vec<_>>())
        .expect("valid");
    let observable_ok = obs.observable(&constant, &[5.0]).is_identity()
        && obs.observable(&constant, &[7.0]).is_zero()
        && obs.observable(&f, &[1.0]) == *projection_of(preimage_event);
    checker.check(
        "observables are master projections of preimages",
        observable_ok,
        "constant, missing and two-level random variables",
    );
}

fn preclusion_suite(space: OutcomeSpace, checker: &mut Checker) {
    let n = space.outcome_count();
    let d = space.dimension();
    let obs = MasterObservable::new(space);

    // annihilation forces vanishing, event by event
    let mut vanish_witness = None;
    for a in space.events() {
        let p = obs.projection(a);
        for v in p.matrix().null_space_basis() {
            let phi = Coevent::from_vector(space, &v);
            if phi.evaluate(a) {
                vanish_witness.get_or_insert_with(|| format!("{phi} on {a}"));
            }
        }
    }
    checker.check(
        "P(A)φ = 0 forces φ(A) = 0",
        vanish_witness.is_none(),
        vanish_witness.unwrap_or_else(|| format!("{} events", 1 << n)),
    );

    // fixed three-outcome fixtures
    {
        let sp3 = OutcomeSpace::new(3).expect("valid");
        let ev = |idx: &[usize]| sp3.event_from_indices(idx).expect("valid");
        let coev = |l: &[usize], q: &[(usize, usize)]| {
            Coevent::from_monomials(sp3, l, q).expect("valid monomials")
        };
        let two_slit = PrecludedFamily::new(sp3, &[ev(&[1, 2])]);
        let preclusive = preclusive_basis(&two_slit);
        let listed = [
            coev(&[3], &[]),
            coev(&[], &[(1, 3)]),
            coev(&[], &[(2, 3)]),
            coev(&[1, 2], &[]),
            coev(&[1], &[(1, 2)]),
        ];
        let precluding = precluding_basis(&two_slit);
        let example2_ok = preclusive.dimension() == 5
            && listed.iter().all(|phi| preclusive.contains(phi))
            && precluding.dimension() == 1
            && precluding.contains(&coev(&[3], &[(1, 3), (2, 3)]))
            && precluding.basis()[0].is_unital();

        let singletons = PrecludedFamily::new(sp3, &[ev(&[1]), ev(&[2])]);
        let example3_ok =
            preclusive_basis(&singletons).spans_same(&CoeventSubspace::from_spanning(
                sp3,
                &[
                    coev(&[3], &[]),
                    coev(&[], &[(1, 3)]),
                    coev(&[], &[(2, 3)]),
                    coev(&[], &[(1, 2)]),
                ],
            )) && precluding_basis(&singletons).spans_same(&precluding);

        let single = PrecludedFamily::new(sp3, &[ev(&[1])]);
        let example4_sub = precluding_basis(&single);
        let example4_ok = example4_sub.dimension() == 3
            && example4_sub.spans_same(&CoeventSubspace::from_spanning(
                sp3,
                &[
                    coev(&[], &[(2, 3)]),
                    coev(&[2], &[(1, 2)]),
                    coev(&[3], &[(1, 3)]),
                ],
            ))
            && !crate::preclusion::occurrence_query(
                &single,
                ev(&[1, 2]),
                crate::preclusion::QueryMode::Precluding,
            )
            .exists;

        let three_slit = PrecludedFamily::new(sp3, &[ev(&[1, 2]), ev(&[2, 3])]);
        let example5_ok = precluding_basis(&three_slit).is_trivial()
            && preclusive_basis(&three_slit).spans_same(&CoeventSubspace::from_spanning(
                sp3,
                &[
                    coev(&[1, 2, 3], &[]),
                    coev(&[1], &[(1, 2)]),
                    coev(&[3], &[(2, 3)]),
                    coev(&[], &[(1, 3)]),
                ],
            ));
        checker.check(
            "worked three-outcome families",
            example2_ok && example3_ok && example4_ok && example5_ok,
            format!(
                "two-slit {}, singletons {}, single {}, three-slit {}",
                example2_ok, example3_ok, example4_ok, example5_ok
            ),
        );
    }

    // all families with at most three nonempty members
    let nonempty: Vec<Event> = space.events().filter(|e| !e.is_empty()).collect();
    let mut families: Vec<Vec<Event>> = vec![vec![]];
    for i in 0..nonempty.len() {
        families.push(vec![nonempty[i]]);
        for j in (i + 1)..nonempty.len() {
            families.push(vec![nonempty[i], nonempty[j]]);
            for k in (j + 1)..nonempty.len() {
                families.push(vec![nonempty[i], nonempty[j], nonempty[k]]);
            }
        }
    }

    let mut duality_failures = Vec::new();
    let mut containment_witness = None;
    let mut dim_witness = None;
    let mut route_witness = None;
    let mut union_witness = None;
    for events in &families {
        let family = PrecludedFamily::new(space, events);
        let report = duality_report(&family).expect("capped");
        if !report.passed() {
            duality_failures.push(format!("family {family}: {}", report.failures.join("; ")));
        }
        let preclusive = preclusive_basis(&family);
        let precluding = precluding_basis(&family);
        if !preclusive.contains_subspace(&precluding) {
            containment_witness.get_or_insert_with(|| family.to_string());
        }
        if preclusive.dimension() + family.members().len() < d {
            dim_witness.get_or_insert_with(|| family.to_string());
        }
        if !precluding_basis_via_null_space(&family)
            .spans_same(&precluding_basis_via_range(&family))
        {
            route_witness.get_or_insert_with(|| family.to_string());
        }
        let union_only = PrecludedFamily::new(space, &[family.union()]);
        if !precluding_basis(&union_only).spans_same(&precluding) {
            union_witness.get_or_insert_with(|| family.to_string());
        }
    }
    let family_count = families.len();
    checker.check(
        "duality laws over all small families",
        duality_failures.is_empty(),
        if duality_failures.is_empty() {
            format!("{family_count} families of ≤ 3 nonempty members")
        } else {
            duality_failures.join(" | ")
        },
    );
    checker.check(
        "precluding subspace contained in the preclusive one",
        containment_witness.is_none(),
        containment_witness.unwrap_or_else(|| format!("{family_count} families")),
    );
    checker.check(
        "preclusive dimension at least D − m",
        dim_witness.is_none(),
        dim_witness.unwrap_or_else(|| format!("{family_count} families")),
    );
    checker.check(
        "null-space and range characterizations agree",
        route_witness.is_none(),
        route_witness.unwrap_or_else(|| format!("{family_count} families")),
    );
    checker.check(
        "precluding subspace depends only on the union",
        union_witness.is_none(),
        union_witness.unwrap_or_else(|| format!("{family_count} families")),
    );
}

fn lattice_suite(checker: &mut Checker) {
    let space = OutcomeSpace::new(2).expect("valid");
    let first = lattice_search(space, LatticeSearchMode::Exhaustive).expect("capped");
    let second = lattice_search(space, LatticeSearchMode::Exhaustive).expect("capped");
    checker.check(
        "exhaustive meet scan at D=3 is deterministic",
        first.verdict == second.verdict
            && first.pairs_with_meet == second.pairs_with_meet
            && first.pairs_examined == second.pairs_examined,
        format!(
            "{} pairs examined, {} with meets",
            first.pairs_examined, first.pairs_with_meet
        ),
    );
    checker.check(
        "reported meets verified maximal among lower bounds",
        first.meets_verified_maximal,
        format!("verdict: {}", first.verdict),
    );
    checker.check(
        "meets of commuting pairs equal the product",
        first.commuting_meets_equal_product,
        format!("{} projections", first.projection_count),
    );

    let random = lattice_search(
        space,
        LatticeSearchMode::Random {
            budget: 64,
            seed: 42,
        },
    )
    .expect("capped");
    checker.check(
        "random sampling is consistent with the exhaustive verdict",
        random.meets_verified_maximal
            && random.commuting_meets_equal_product
            && (random.all_examined_pairs_have_meets() == first.all_examined_pairs_have_meets()
                || random.pairs_examined == 0),
        format!("{} sampled pairs", random.pairs_examined),
    );
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for suite in [
            Suite::Interference,
            Suite::Coevent,
            Suite::Projection,
            Suite::Master,
            Suite::Preclusion,
            Suite::Lattice,
            Suite::All,
        ] {
            assert_eq!(suite.name().parse::<Suite>().unwrap(), suite);
        }
        assert!(matches!(
            "bogus".parse::<Suite>(),
            Err(SuiteError::UnknownSuite { .. })
        ));
    }

    #[test]
    fn capacity_is_enforced() {
        assert!(matches!(
            run_suite(Suite::Interference, 5),
            Err(SuiteError::Capacity { n: 5, max: 4, .. })
        ));
    }

    #[test]
    fn interference_suite_passes_at_n3() {
        let report = run_suite(Suite::Interference, 3).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn coevent_suite_passes_at_n3() {
        let report = run_suite(Suite::Coevent, 3).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn coevent_suite_passes_at_n4() {
        let report = run_suite(Suite::Coevent, 4).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn interference_suite_passes_at_n4() {
        let report = run_suite(Suite::Interference, 4).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn projection_suite_passes() {
        let report = run_suite(Suite::Projection, 2).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn master_suite_passes_at_n2() {
        let report = run_suite(Suite::Master, 2).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn preclusion_suite_passes_at_n3() {
        let report = run_suite(Suite::Preclusion, 3).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn lattice_suite_passes() {
        let report = run_suite(Suite::Lattice, 2).unwrap();
        assert!(report.passed(), "{report}");
    }
}
