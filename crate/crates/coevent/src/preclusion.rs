//! Preclusive and precluding coevents for a family of precluded events.
//!
//! A coevent is preclusive when it vanishes on every precluded event, and
//! precluding when the master projection of the union of the family
//! annihilates it. Precluding is the stronger notion: the precluding
//! subspace always sits inside the preclusive one, and it only depends on
//! the union of the family. Both subspaces are returned through reduced
//! echelon bases over the fixed coefficient order, so bases are canonical
//! even though the notion of basis itself is not unique.

use std::fmt;

use thiserror::Error;

use crate::event::{Event, OutcomeSpace};
use crate::gf2::{Gf2Matrix, Gf2Vector};
use crate::poly::Coevent;
use crate::projection::MasterObservable;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PreclusionError {
    #[error("duality report over {n} outcomes exceeds the cap of {max}")]
    Capacity { n: usize, max: usize },
}

/// The events barred from occurring. The empty event is precluded by
/// convention and never stored; members are deduplicated and kept in
/// ascending mask order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrecludedFamily {
    space: OutcomeSpace,
    members: Vec<Event>,
}

impl PrecludedFamily {
    pub fn new(space: OutcomeSpace, events: &[Event]) -> Self {
        let mut masks: Vec<u32> = events
            .iter()
            .map(|e| {
                assert_eq!(e.space(), space, "event from a different outcome space");
                e.mask()
            })
            .filter(|&m| m != 0)
            .collect();
        masks.sort_unstable();
        masks.dedup();
        PrecludedFamily {
            space,
            members: masks
                .into_iter()
                .map(|m| space.event_from_mask(m))
                .collect(),
        }
    }

    pub fn space(&self) -> OutcomeSpace {
        self.space
    }

    /// The nonempty precluded events, ascending by mask.
    pub fn members(&self) -> &[Event] {
        &self.members
    }

    pub fn is_precluded(&self, e: Event) -> bool {
        e.is_empty() || self.members.contains(&e)
    }

    /// A₁ ∪ ⋯ ∪ A_m (empty when the family has no nonempty member).
    pub fn union(&self) -> Event {
        self.members
            .iter()
            .fold(self.space.empty_event(), |acc, e| acc.union(e))
    }

    /// Close the family under unions of disjoint members. Not assumed by
    /// the analysis itself; offered for experimentation.
    pub fn close_under_disjoint_unions(&self) -> PrecludedFamily {
        let mut masks: Vec<u32> = self.members.iter().map(Event::mask).collect();
        let mut changed = true;
        while changed {
            changed = false;
            let current = masks.clone();
            for (i, &a) in current.iter().enumerate() {
                for &b in &current[i + 1..] {
                    if a & b == 0 && !masks.contains(&(a | b)) {
                        masks.push(a | b);
                        changed = true;
                    }
                }
            }
        }
        masks.sort_unstable();
        PrecludedFamily {
            space: self.space,
            members: masks
                .into_iter()
                .map(|m| self.space.event_from_mask(m))
                .collect(),
        }
    }
}

impl fmt::Display for PrecludedFamily {
    /// Semicolon-separated events, e.g. `{1,2};{2,3}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.members.is_empty() {
            return write!(f, "{{}}");
        }
        let mut first = true;
        for e in &self.members {
            if !first {
                write!(f, ";")?;
            }
            write!(f, "{e}")?;
            first = false;
        }
        Ok(())
    }
}

/// A subspace of the coevent space, held as a canonical reduced-echelon
/// basis over the fixed coefficient order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeventSubspace {
    space: OutcomeSpace,
    basis: Vec<Coevent>,
}

impl CoeventSubspace {
    /// Canonicalize a spanning set into a reduced-echelon basis.
    pub fn from_spanning(space: OutcomeSpace, vectors: &[Coevent]) -> Self {
        let rows: Vec<Gf2Vector> = vectors.iter().map(Coevent::to_vector).collect();
        let basis = if rows.is_empty() {
            Vec::new()
        } else {
            let (rref, rank) = Gf2Matrix::from_rows(&rows).row_reduce();
            (0..rank)
                .map(|r| Coevent::from_vector(space, &rref.row_vector(r)))
                .collect()
        };
        CoeventSubspace { space, basis }
    }

    pub fn space(&self) -> OutcomeSpace {
        self.space
    }

    pub fn basis(&self) -> &[Coevent] {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.basis.is_empty()
    }

    /// Membership by rank: adjoining the coevent must not enlarge the span.
    pub fn contains(&self, phi: &Coevent) -> bool {
        assert_eq!(
            phi.space(),
            self.space,
            "coevent from a different outcome space"
        );
        let mut rows: Vec<Gf2Vector> = self.basis.iter().map(Coevent::to_vector).collect();
        rows.push(phi.to_vector());
        Gf2Matrix::from_rows(&rows).rank() == self.dimension()
    }

    pub fn contains_subspace(&self, other: &CoeventSubspace) -> bool {
        other.basis.iter().all(|phi| self.contains(phi))
    }

    pub fn spans_same(&self, other: &CoeventSubspace) -> bool {
        self.dimension() == other.dimension() && self.contains_subspace(other)
    }

    /// All 2^dim members, zero first; intended for small subspaces.
    pub fn elements(&self) -> impl Iterator<Item = Coevent> + '_ {
        (0u64..(1 << self.dimension())).map(move |combo| {
            let mut acc = Coevent::zero(self.space);
            for (k, b) in self.basis.iter().enumerate() {
                if (combo >> k) & 1 == 1 {
                    acc = acc + *b;
                }
            }
            acc
        })
    }
}

/// Basis of { φ : φ(A_i) = 0 for every precluded A_i }: the null space of
/// the evaluation matrix whose row for A_i marks the coefficients
/// appearing in φ(A_i).
pub fn preclusive_basis(family: &PrecludedFamily) -> CoeventSubspace {
    let space = family.space();
    let d = space.dimension();
    let rows: Vec<Gf2Vector> = family
        .members()
        .iter()
        .map(|a| evaluation_row(space, *a))
        .collect();
    let matrix = if rows.is_empty() {
        Gf2Matrix::zeros(0, d)
    } else {
        Gf2Matrix::from_rows(&rows)
    };
    let basis: Vec<Coevent> = matrix
        .null_space_basis()
        .iter()
        .map(|v| Coevent::from_vector(space, v))
        .collect();
    CoeventSubspace::from_spanning(space, &basis)
}

/// The coefficient-space row with φ(A) = row · coefficients: ones at the
/// linear positions of A's members and the quadratic positions of A's
/// internal pairs.
fn evaluation_row(space: OutcomeSpace, a: Event) -> Gf2Vector {
    let n = space.outcome_count();
    let mut row = Gf2Vector::zeros(space.dimension());
    let members: Vec<usize> = a.indices().collect();
    for &i in &members {
        row.set(i - 1, true);
    }
    for (k, &i) in members.iter().enumerate() {
        for &j in &members[k + 1..] {
            row.set(
                n + crate::poly::pair_index(space, i, j).expect("distinct"),
                true,
            );
        }
    }
    row
}

/// Basis of the precluding subspace: the null space of P(A₁ ∪ ⋯ ∪ A_m).
///
/// The same subspace is the range of P(A₁)'⋯P(A_m)'; both
/// characterizations are computed and cross-checked on every call.
pub fn precluding_basis(family: &PrecludedFamily) -> CoeventSubspace {
    let by_null = precluding_basis_via_null_space(family);
    let by_range = precluding_basis_via_range(family);
    assert!(
        by_null.spans_same(&by_range),
        "null-space and range characterizations of precluding disagree"
    );
    by_null
}

/// Null-space characterization: { φ : P(∪ A_i) φ = 0 }.
pub fn precluding_basis_via_null_space(family: &PrecludedFamily) -> CoeventSubspace {
    let space = family.space();
    let projection = MasterObservable::new(space).projection(family.union());
    let basis: Vec<Coevent> = projection
        .matrix()
        .null_space_basis()
        .iter()
        .map(|v| Coevent::from_vector(space, v))
        .collect();
    CoeventSubspace::from_spanning(space, &basis)
}

/// Range characterization: the column space of P(A₁)'⋯P(A_m)', with the
/// empty product read as the identity.
pub fn precluding_basis_via_range(family: &PrecludedFamily) -> CoeventSubspace {
    let space = family.space();
    let d = space.dimension();
    let obs = MasterObservable::new(space);
    let mut product = Gf2Matrix::identity(d);
    for a in family.members() {
        let complement = obs.projection(*a).complement();
        product = product.mul(complement.matrix()).expect("square");
    }
    let basis: Vec<Coevent> = product
        .column_space_basis()
        .iter()
        .map(|v| Coevent::from_vector(space, v))
        .collect();
    CoeventSubspace::from_spanning(space, &basis)
}

/// Which subspace an occurrence query scans.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum QueryMode {
    Preclusive,
    Precluding,
}

impl fmt::Display for QueryMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QueryMode::Preclusive => write!(f, "preclusive"),
            QueryMode::Precluding => write!(f, "precluding"),
        }
    }
}

/// Answer to "can B occur": is there a coevent in the chosen subspace
/// with φ(B) = 1?
#[derive(Debug, Clone, PartialEq)]
pub struct OccurrenceAnswer {
    pub exists: bool,
    pub witness: Option<Coevent>,
}

/// Evaluation at B is linear, so some member of the subspace hits 1 on B
/// exactly when some basis vector does; the witness is the first such
/// basis vector in canonical order.
pub fn occurrence_query(family: &PrecludedFamily, b: Event, mode: QueryMode) -> OccurrenceAnswer {
    assert_eq!(
        b.space(),
        family.space(),
        "event from a different outcome space"
    );
    let subspace = match mode {
        QueryMode::Preclusive => preclusive_basis(family),
        QueryMode::Precluding => precluding_basis(family),
    };
    let witness = subspace.basis().iter().find(|phi| phi.evaluate(b)).copied();
    OccurrenceAnswer {
        exists: witness.is_some(),
        witness,
    }
}

/// The duality between preclusive and precluding coevents over a family,
/// checked exhaustively over every event B.
#[derive(Debug, Clone, serde::Serialize)]
pub struct DualityReport {
    pub n: usize,
    pub family: String,
    pub union: String,
    pub preclusive_dimension: usize,
    pub precluding_dimension: usize,
    /// Every precluding coevent is preclusive.
    pub precluding_subspace_contained: bool,
    /// Every B meeting the complement of the union has a preclusive
    /// witness; `containment_witnesses` records (B, ω) with ω ∈ BA' whose
    /// containment map ω* is that witness.
    pub preclusive_witness_for_every_outside_event: bool,
    pub containment_witnesses: Vec<(String, usize)>,
    /// Every B with a precluding witness meets the complement of the union.
    pub precluding_witness_implies_outside: bool,
    /// If φ(B) = 0 for every preclusive φ then B lies inside the union.
    pub vanishing_preclusive_implies_inside: bool,
    /// If B lies inside the union then every precluding φ vanishes on B.
    pub inside_implies_vanishing_precluding: bool,
    /// Events B ⊆ union that still carry a preclusive witness: the
    /// implication "witness implies outside" fails for preclusive coevents.
    pub preclusive_witnesses_inside_union: Vec<String>,
    /// Events B outside the union with no precluding witness: the witness
    /// guarantee fails for precluding coevents.
    pub precluding_gaps_outside_union: Vec<String>,
    pub failures: Vec<String>,
}

impl DualityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for DualityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "duality report for n={} precluded={}",
            self.n, self.family
        )?;
        writeln!(
            f,
            "preclusive dim {} ⊇ precluding dim {}: {}",
            self.preclusive_dimension,
            self.precluding_dimension,
            if self.precluding_subspace_contained {
                "ok"
            } else {
                "VIOLATED"
            }
        )?;
        writeln!(
            f,
            "preclusive witness for every B with BA' nonempty: {}",
            if self.preclusive_witness_for_every_outside_event {
                "ok"
            } else {
                "VIOLATED"
            }
        )?;
        writeln!(
            f,
            "precluding witness implies BA' nonempty: {}",
            if self.precluding_witness_implies_outside {
                "ok"
            } else {
                "VIOLATED"
            }
        )?;
        if !self.preclusive_witnesses_inside_union.is_empty() {
            writeln!(
                f,
                "preclusive witnesses despite B inside the union: {}",
                self.preclusive_witnesses_inside_union.join(", ")
            )?;
        }
        if !self.precluding_gaps_outside_union.is_empty() {
            writeln!(
                f,
                "no precluding witness although BA' is nonempty: {}",
                self.precluding_gaps_outside_union.join(", ")
            )?;
        }
        for failure in &self.failures {
            writeln!(f, "FAILURE: {failure}")?;
        }
        write!(f, "result: {}", if self.passed() { "pass" } else { "fail" })
    }
}

const DUALITY_OUTCOME_CAP: usize = 4;

/// Check the preclusive/precluding duality for one family over every
/// event B of the space.
pub fn duality_report(family: &PrecludedFamily) -> Result<DualityReport, PreclusionError> {
    let space = family.space();
    let n = space.outcome_count();
    if n > DUALITY_OUTCOME_CAP {
        return Err(PreclusionError::Capacity {
            n,
            max: DUALITY_OUTCOME_CAP,
        });
    }
    let preclusive = preclusive_basis(family);
    let precluding = precluding_basis(family);
    let union = family.union();
    let outside = union.complement();

    let mut failures = Vec::new();
    let precluding_subspace_contained = preclusive.contains_subspace(&precluding);
    if !precluding_subspace_contained {
        failures.push("a precluding basis coevent is not preclusive".to_string());
    }

    let mut preclusive_witness_for_every_outside_event = true;
    let mut precluding_witness_implies_outside = true;
    let mut vanishing_preclusive_implies_inside = true;
    let mut inside_implies_vanishing_precluding = true;
    let mut containment_witnesses = Vec::new();
    let mut preclusive_witnesses_inside_union = Vec::new();
    let mut precluding_gaps_outside_union = Vec::new();

    for b in space.events() {
        let meets_outside = !b.intersect(&outside).is_empty();
        // evaluation at b is linear, so scanning the bases decides existence
        let preclusive_hit = preclusive.basis().iter().any(|phi| phi.evaluate(b));
        let precluding_hit = precluding.basis().iter().any(|phi| phi.evaluate(b));

        if meets_outside {
            if preclusive_hit {
                let omega = b
                    .intersect(&outside)
                    .indices()
                    .next()
                    .expect("intersection is nonempty");
                let containment = Coevent::containment(space, omega).expect("valid outcome");
                if preclusive.contains(&containment) && containment.evaluate(b) {
                    containment_witnesses.push((b.to_string(), omega));
                } else {
                    failures.push(format!(
                        "containment map w{omega}* is not a preclusive witness for B={b}"
                    ));
                }
            } else {
                preclusive_witness_for_every_outside_event = false;
                // contrapositive form: all preclusive coevents vanish on B
                // yet B is not inside the union
                vanishing_preclusive_implies_inside = false;
                failures.push(format!(
                    "no preclusive witness for B={b} although BA' is nonempty"
                ));
            }
            if !precluding_hit {
                precluding_gaps_outside_union.push(b.to_string());
            }
        } else {
            // B inside the union
            if precluding_hit {
                precluding_witness_implies_outside = false;
                failures.push(format!(
                    "precluding witness for B={b} although BA' is empty"
                ));
            }
            if preclusive_hit {
                preclusive_witnesses_inside_union.push(b.to_string());
            }
            // exhaustive form of the contrapositive: scan the whole
            // precluding subspace, not just its basis
            let all_precluding_vanish = precluding.elements().all(|phi| !phi.evaluate(b));
            if !all_precluding_vanish {
                inside_implies_vanishing_precluding = false;
                failures.push(format!("a precluding coevent is nonzero on B={b} inside A"));
            }
        }
    }

    Ok(DualityReport {
        n,
        family: family.to_string(),
        union: union.to_string(),
        preclusive_dimension: preclusive.dimension(),
        precluding_dimension: precluding.dimension(),
        precluding_subspace_contained,
        preclusive_witness_for_every_outside_event,
        containment_witnesses,
        precluding_witness_implies_outside,
        vanishing_preclusive_implies_inside,
        inside_implies_vanishing_precluding,
        preclusive_witnesses_inside_union,
        precluding_gaps_outside_union,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(n: usize) -> OutcomeSpace {
        OutcomeSpace::new(n).unwrap()
    }

    fn ev(n: usize, idx: &[usize]) -> Event {
        space(n).event_from_indices(idx).unwrap()
    }

    fn family(n: usize, members: &[&[usize]]) -> PrecludedFamily {
        let events: Vec<Event> = members.iter().map(|m| ev(n, m)).collect();
        PrecludedFamily::new(space(n), &events)
    }

    fn coev(n: usize, linear: &[usize], quadratic: &[(usize, usize)]) -> Coevent {
        Coevent::from_monomials(space(n), linear, quadratic).unwrap()
    }

    #[test]
    fn family_normalization() {
        let f = PrecludedFamily::new(
            space(3),
            &[ev(3, &[1, 2]), ev(3, &[]), ev(3, &[1, 2]), ev(3, &[1])],
        );
        assert_eq!(f.members(), &[ev(3, &[1]), ev(3, &[1, 2])]);
        assert!(f.is_precluded(ev(3, &[])));
        assert!(f.is_precluded(ev(3, &[1])));
        assert!(!f.is_precluded(ev(3, &[2])));
        assert_eq!(f.union(), ev(3, &[1, 2]));
        assert_eq!(f.to_string(), "{1};{1,2}");
    }

    #[test]
    fn disjoint_union_closure() {
        let f = family(3, &[&[1], &[2]]);
        let closed = f.close_under_disjoint_unions();
        assert_eq!(
            closed.members(),
            &[ev(3, &[1]), ev(3, &[2]), ev(3, &[1, 2])]
        );
    }

    #[test]
    fn preclusive_for_the_two_slit_family() {
        // n=3, precluded {1,2}: five-dimensional preclusive subspace
        let sub = preclusive_basis(&family(3, &[&[1, 2]]));
        assert_eq!(sub.dimension(), 5);
        for phi in [
            coev(3, &[3], &[]),
            coev(3, &[], &[(1, 3)]),
            coev(3, &[], &[(2, 3)]),
            coev(3, &[1, 2], &[]),
            coev(3, &[1], &[(1, 2)]),
        ] {
            assert!(sub.contains(&phi), "missing {phi}");
        }
    }

    #[test]
    fn preclusive_for_two_singletons() {
        let sub = preclusive_basis(&family(3, &[&[1], &[2]]));
        assert_eq!(sub.dimension(), 4);
        let expected = CoeventSubspace::from_spanning(
            space(3),
            &[
                coev(3, &[3], &[]),
                coev(3, &[], &[(1, 3)]),
                coev(3, &[], &[(2, 3)]),
                coev(3, &[], &[(1, 2)]),
            ],
        );
        assert!(sub.spans_same(&expected));
    }

    #[test]
    fn trivial_family_gives_the_whole_space() {
        let sub = preclusive_basis(&family(3, &[]));
        assert_eq!(sub.dimension(), 6);
        let precluding = precluding_basis(&family(3, &[]));
        assert_eq!(precluding.dimension(), 6);
    }

    #[test]
    fn precluding_for_the_two_slit_family() {
        let sub = precluding_basis(&family(3, &[&[1, 2]]));
        assert_eq!(sub.dimension(), 1);
        let phi = sub.basis()[0];
        assert_eq!(phi.to_string(), "w3* + w1*w3* + w2*w3*");
        assert!(phi.is_unital());
    }

    #[test]
    fn precluding_depends_only_on_the_union() {
        let from_doubleton = precluding_basis(&family(3, &[&[1, 2]]));
        let from_singletons = precluding_basis(&family(3, &[&[1], &[2]]));
        assert!(from_doubleton.spans_same(&from_singletons));
    }

    #[test]
    fn precluding_for_one_singleton() {
        let sub = precluding_basis(&family(3, &[&[1]]));
        assert_eq!(sub.dimension(), 3);
        let expected = CoeventSubspace::from_spanning(
            space(3),
            &[
                coev(3, &[], &[(2, 3)]),
                coev(3, &[2], &[(1, 2)]),
                coev(3, &[3], &[(1, 3)]),
            ],
        );
        assert!(sub.spans_same(&expected));
    }

    #[test]
    fn precluding_collapses_when_the_union_is_everything() {
        let sub = precluding_basis(&family(3, &[&[1, 2], &[2, 3]]));
        assert_eq!(sub.dimension(), 0);
        assert!(sub.is_trivial());
        // while the preclusive subspace stays four-dimensional
        let preclusive = preclusive_basis(&family(3, &[&[1, 2], &[2, 3]]));
        assert_eq!(preclusive.dimension(), 4);
        let expected = CoeventSubspace::from_spanning(
            space(3),
            &[
                coev(3, &[1, 2, 3], &[]),
                coev(3, &[1], &[(1, 2)]),
                coev(3, &[3], &[(2, 3)]),
                coev(3, &[], &[(1, 3)]),
            ],
        );
        assert!(preclusive.spans_same(&expected));
    }

    #[test]
    fn null_space_and_range_characterizations_agree() {
        for members in [
            vec![],
            vec![vec![1usize]],
            vec![vec![1], vec![2]],
            vec![vec![1, 2]],
            vec![vec![1, 2], vec![2, 3]],
            vec![vec![1], vec![2, 3], vec![1, 3]],
        ] {
            let slices: Vec<&[usize]> = members.iter().map(Vec::as_slice).collect();
            let fam = family(3, &slices);
            assert!(
                precluding_basis_via_null_space(&fam).spans_same(&precluding_basis_via_range(&fam)),
                "mismatch for {fam}"
            );
        }
    }

    #[test]
    fn occurrence_queries() {
        let two_slit = family(3, &[&[1, 2]]);
        let answer = occurrence_query(&two_slit, ev(3, &[1]), QueryMode::Preclusive);
        assert!(answer.exists);
        let witness = answer.witness.unwrap();
        assert!(witness.evaluate(ev(3, &[1])));
        assert!(!witness.evaluate(ev(3, &[1, 2])));
        // the classic witness w1* + w2* lies in the subspace
        assert!(preclusive_basis(&two_slit).contains(&coev(3, &[1, 2], &[])));

        let singleton = family(3, &[&[1]]);
        let answer = occurrence_query(&singleton, ev(3, &[1, 2]), QueryMode::Precluding);
        assert!(!answer.exists);

        let answer = occurrence_query(&two_slit, ev(3, &[]), QueryMode::Preclusive);
        assert!(!answer.exists);
    }

    #[test]
    fn duality_for_the_worked_families() {
        let report = duality_report(&family(3, &[&[1, 2]])).unwrap();
        assert!(report.passed(), "{report}");
        assert_eq!(report.preclusive_dimension, 5);
        assert_eq!(report.precluding_dimension, 1);
        // B = {1} has a preclusive witness although it sits inside the union
        assert!(report
            .preclusive_witnesses_inside_union
            .contains(&"{1}".to_string()));

        let report = duality_report(&family(3, &[&[2, 3], &[1, 2]])).unwrap();
        assert!(report.passed(), "{report}");
        assert_eq!(report.precluding_dimension, 0);

        let report = duality_report(&family(3, &[&[1]])).unwrap();
        assert!(report.passed(), "{report}");
        // B = {1,2} meets the outside yet no precluding coevent hits it
        assert!(report
            .precluding_gaps_outside_union
            .contains(&"{1,2}".to_string()));
    }

    #[test]
    fn duality_is_capped() {
        let fam = family(5, &[&[1]]);
        assert_eq!(
            duality_report(&fam).map(|_| ()),
            Err(PreclusionError::Capacity { n: 5, max: 4 })
        );
    }

    #[test]
    fn subspace_membership_and_elements() {
        let sub =
            CoeventSubspace::from_spanning(space(2), &[coev(2, &[1], &[]), coev(2, &[1, 2], &[])]);
        assert_eq!(sub.dimension(), 2);
        assert!(sub.contains(&coev(2, &[2], &[])));
        assert!(!sub.contains(&coev(2, &[], &[(1, 2)])));
        assert_eq!(sub.elements().count(), 4);
    }
}
