//! Finite outcome spaces and their events.
//!
//! An event is a subset of the outcome space, stored as a bit mask with
//! outcome i (1-based, as in all I/O) at bit i-1. The space is capped at
//! 16 outcomes so an event always fits one machine word and a product
//! event over pairs of outcomes fits 256 bits; the exhaustive analyses
//! elsewhere in the crate only run far below that cap anyway.

use std::fmt;

use thiserror::Error;

/// Hard cap on the number of outcomes.
pub const MAX_OUTCOMES: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EventError {
    #[error("outcome count {n} outside the supported range 1..={MAX_OUTCOMES}")]
    InvalidOutcomeCount { n: usize },
    #[error("outcome index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("events belong to different outcome spaces")]
    SpaceMismatch,
    #[error("disjoint union requires disjoint events; both contain {overlap}")]
    NotDisjoint { overlap: Event },
}

/// The sample space of n outcomes, labelled 1..=n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OutcomeSpace {
    n: usize,
}

impl OutcomeSpace {
    pub fn new(n: usize) -> Result<Self, EventError> {
        if n == 0 || n > MAX_OUTCOMES {
            return Err(EventError::InvalidOutcomeCount { n });
        }
        Ok(OutcomeSpace { n })
    }

    pub fn outcome_count(&self) -> usize {
        self.n
    }

    /// Dimension n(n+1)/2 of the coevent space over this outcome space.
    pub fn dimension(&self) -> usize {
        self.n * (self.n + 1) / 2
    }

    pub fn empty_event(&self) -> Event {
        Event {
            space: *self,
            mask: 0,
        }
    }

    /// The full event Ω.
    pub fn full_event(&self) -> Event {
        Event {
            space: *self,
            mask: self.full_mask(),
        }
    }

    pub(crate) fn full_mask(&self) -> u32 {
        (1u32 << self.n) - 1
    }

    pub fn singleton(&self, index: usize) -> Result<Event, EventError> {
        self.check_index(index)?;
        Ok(Event {
            space: *self,
            mask: 1 << (index - 1),
        })
    }

    pub fn event_from_indices(&self, indices: &[usize]) -> Result<Event, EventError> {
        let mut mask = 0u32;
        for &i in indices {
            self.check_index(i)?;
            mask |= 1 << (i - 1);
        }
        Ok(Event { space: *self, mask })
    }

    /// Event from an n-bit subset indicator (outcome i at bit i-1).
    pub fn event_from_mask(&self, mask: u32) -> Event {
        assert_eq!(mask & !self.full_mask(), 0, "mask has bits above n");
        Event { space: *self, mask }
    }

    /// All 2^n events, in ascending mask order.
    pub fn events(&self) -> impl Iterator<Item = Event> + '_ {
        (0..=self.full_mask()).map(move |mask| Event { space: *self, mask })
    }

    /// Outcome labels 1..=n.
    pub fn outcomes(&self) -> impl Iterator<Item = usize> {
        1..=self.n
    }

    pub(crate) fn check_index(&self, index: usize) -> Result<(), EventError> {
        if index == 0 || index > self.n {
            return Err(EventError::IndexOutOfRange { index, n: self.n });
        }
        Ok(())
    }
}

/// A subset of the outcome space.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Event {
    space: OutcomeSpace,
    mask: u32,
}

impl Event {
    pub fn space(&self) -> OutcomeSpace {
        self.space
    }

    pub fn mask(&self) -> u32 {
        self.mask
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn cardinality(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn contains(&self, index: usize) -> bool {
        index >= 1 && index <= self.space.n && (self.mask >> (index - 1)) & 1 == 1
    }

    /// Member outcomes, ascending, 1-based.
    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        (1..=self.space.n).filter(move |&i| self.contains(i))
    }

    fn same_space(&self, other: &Event) {
        assert_eq!(
            self.space, other.space,
            "events from different outcome spaces"
        );
    }

    pub fn intersect(&self, other: &Event) -> Event {
        self.same_space(other);
        Event {
            space: self.space,
            mask: self.mask & other.mask,
        }
    }

    pub fn union(&self, other: &Event) -> Event {
        self.same_space(other);
        Event {
            space: self.space,
            mask: self.mask | other.mask,
        }
    }

    /// Symmetric difference A + B.
    pub fn sym_diff(&self, other: &Event) -> Event {
        self.same_space(other);
        Event {
            space: self.space,
            mask: self.mask ^ other.mask,
        }
    }

    /// Complement A' within the outcome space.
    pub fn complement(&self) -> Event {
        Event {
            space: self.space,
            mask: self.space.full_mask() & !self.mask,
        }
    }

    /// Union of two provably disjoint events.
    pub fn disjoint_union(&self, other: &Event) -> Result<Event, EventError> {
        self.same_space(other);
        if self.mask & other.mask != 0 {
            return Err(EventError::NotDisjoint {
                overlap: self.intersect(other),
            });
        }
        Ok(self.union(other))
    }

    pub fn is_disjoint_from(&self, other: &Event) -> bool {
        self.same_space(other);
        self.mask & other.mask == 0
    }

    pub fn is_subset_of(&self, other: &Event) -> bool {
        self.same_space(other);
        self.mask & !other.mask == 0
    }
}

impl fmt::Display for Event {
    /// `{i,j,...}` with ascending 1-based indices; `{}` for the empty event.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        let mut first = true;
        for i in self.indices() {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
            first = false;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Event(n={}, {self})", self.space.n)
    }
}

/// Boolean-algebra operations accepted by [`combine`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetOp {
    Intersection,
    Union,
    /// Complement of the first argument; the second is ignored.
    ComplementFirst,
    SymmetricDifference,
    /// Union certified disjoint; rejects overlapping arguments.
    DisjointUnion,
}

pub fn combine(a: Event, b: Event, op: SetOp) -> Result<Event, EventError> {
    if a.space != b.space {
        return Err(EventError::SpaceMismatch);
    }
    match op {
        SetOp::Intersection => Ok(a.intersect(&b)),
        SetOp::Union => Ok(a.union(&b)),
        SetOp::ComplementFirst => Ok(a.complement()),
        SetOp::SymmetricDifference => Ok(a.sym_diff(&b)),
        SetOp::DisjointUnion => a.disjoint_union(&b),
    }
}

/// A subset of Ω×Ω, with pair (i,j) at bit (i-1)*n + (j-1) (row-major).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ProductEvent {
    space: OutcomeSpace,
    words: [u64; 4],
}

impl ProductEvent {
    pub fn empty(space: OutcomeSpace) -> Self {
        ProductEvent {
            space,
            words: [0; 4],
        }
    }

    pub fn space(&self) -> OutcomeSpace {
        self.space
    }

    fn bit_index(&self, i: usize, j: usize) -> usize {
        (i - 1) * self.space.n + (j - 1)
    }

    pub fn contains_pair(&self, i: usize, j: usize) -> bool {
        if i == 0 || j == 0 || i > self.space.n || j > self.space.n {
            return false;
        }
        let b = self.bit_index(i, j);
        (self.words[b / 64] >> (b % 64)) & 1 == 1
    }

    pub(crate) fn insert_pair(&mut self, i: usize, j: usize) {
        let b = self.bit_index(i, j);
        self.words[b / 64] |= 1 << (b % 64);
    }

    pub fn cardinality(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Member pairs in row-major order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.space.n;
        (1..=n)
            .flat_map(move |i| (1..=n).map(move |j| (i, j)))
            .filter(move |&(i, j)| self.contains_pair(i, j))
    }

    /// The product event as an event on the n²-outcome product space;
    /// only available while n² stays within the outcome cap.
    pub fn as_product_space_event(&self) -> Result<Event, EventError> {
        let product = OutcomeSpace::new(self.space.n * self.space.n)?;
        Ok(product.event_from_mask(self.words[0] as u32))
    }
}

impl fmt::Display for ProductEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        let mut first = true;
        for (i, j) in self.pairs() {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "({i},{j})")?;
            first = false;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for ProductEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ProductEvent(n={}, {self})", self.space.n)
    }
}

/// Cartesian square A×A: contains (i,j) exactly when both i and j lie in A.
pub fn square(a: Event) -> ProductEvent {
    let mut out = ProductEvent::empty(a.space());
    for i in a.indices() {
        for j in a.indices() {
            out.insert_pair(i, j);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn space(n: usize) -> OutcomeSpace {
        OutcomeSpace::new(n).unwrap()
    }

    fn ev(n: usize, idx: &[usize]) -> Event {
        space(n).event_from_indices(idx).unwrap()
    }

    #[test]
    fn outcome_count_is_capped() {
        assert!(OutcomeSpace::new(0).is_err());
        assert!(OutcomeSpace::new(17).is_err());
        assert_eq!(space(16).dimension(), 136);
    }

    #[test]
    fn symmetric_difference_and_complement() {
        let a = ev(3, &[1, 2]);
        let b = ev(3, &[2, 3]);
        assert_eq!(a.sym_diff(&b), ev(3, &[1, 3]));
        assert_eq!(a.complement(), ev(3, &[3]));
    }

    #[test]
    fn disjoint_union_rejects_overlap() {
        let a = ev(3, &[1]);
        let b = ev(3, &[1, 2]);
        match combine(a, b, SetOp::DisjointUnion) {
            Err(EventError::NotDisjoint { overlap }) => assert_eq!(overlap, ev(3, &[1])),
            other => panic!("expected disjointness violation, got {other:?}"),
        }
        assert_eq!(
            combine(ev(3, &[1]), ev(3, &[2]), SetOp::DisjointUnion).unwrap(),
            ev(3, &[1, 2])
        );
    }

    #[test]
    fn combine_rejects_space_mismatch() {
        let a = ev(3, &[1]);
        let b = ev(4, &[1]);
        assert_eq!(combine(a, b, SetOp::Union), Err(EventError::SpaceMismatch));
    }

    #[test]
    fn square_examples() {
        assert_eq!(square(ev(3, &[])).cardinality(), 0);
        let s1 = square(ev(3, &[1]));
        assert_eq!(s1.pairs().collect::<Vec<_>>(), vec![(1, 1)]);
        let s12 = square(ev(3, &[1, 2]));
        assert_eq!(
            s12.pairs().collect::<Vec<_>>(),
            vec![(1, 1), (1, 2), (2, 1), (2, 2)]
        );
    }

    #[test]
    fn event_display() {
        assert_eq!(ev(4, &[]).to_string(), "{}");
        assert_eq!(ev(4, &[3, 1]).to_string(), "{1,3}");
    }

    #[test]
    fn all_events_algebra_is_exhaustive_at_small_n() {
        // A + A = ∅, A + ∅ = A and associativity, over every event triple at n ≤ 4.
        for n in 1..=4 {
            let sp = space(n);
            let empty = sp.empty_event();
            for a in sp.events() {
                assert_eq!(a.sym_diff(&a), empty);
                assert_eq!(a.sym_diff(&empty), a);
                for b in sp.events() {
                    for c in sp.events() {
                        assert_eq!(a.sym_diff(&b).sym_diff(&c), a.sym_diff(&b.sym_diff(&c)));
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn square_cardinality_is_squared(mask in 0u32..(1 << 5)) {
            let sp = space(5);
            let a = sp.event_from_mask(mask);
            prop_assert_eq!(square(a).cardinality(), a.cardinality() * a.cardinality());
        }

        #[test]
        fn square_membership_matches_definition(mask in 0u32..(1 << 4), i in 1usize..=4, j in 1usize..=4) {
            let a = space(4).event_from_mask(mask);
            prop_assert_eq!(square(a).contains_pair(i, j), a.contains(i) && a.contains(j));
        }
    }
}
