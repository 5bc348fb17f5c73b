//! Arbitrary 1-0 functions on events and their classification.
//!
//! A truth table assigns a bit to every event of the space, with the
//! empty event pinned to 0. Classification checks the classical
//! homomorphism conditions (unitality, additivity over symmetric
//! differences, multiplicativity over intersections) together with
//! grade-2 additivity and the two-point interference condition, each by
//! direct scan over the event tuples its definition quantifies over.
//! The scans are exponential in n by design; they are meant for the
//! small spaces where exhaustive verification is the whole point.

use std::fmt;

use thiserror::Error;

use crate::event::{Event, OutcomeSpace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TruthError {
    #[error("function is not grade-1 additive")]
    NotAdditive,
    #[error("function is not multiplicative")]
    NotMultiplicative,
    #[error("the zero function has no decomposition")]
    ZeroFunction,
    #[error("outcome {index} appears more than once")]
    DuplicateOutcome { index: usize },
    #[error("interference tuple length {m} outside 2..={n}")]
    ArityOutOfRange { m: usize, n: usize },
    #[error("outcome index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("the empty event is always false and cannot be listed as true")]
    EmptyEventTrue,
    #[error("enumeration over {n} outcomes exceeds the cap of {max}")]
    Capacity { n: usize, max: usize },
}

/// A 1-0 function on all events of a space, with value 0 on the empty event.
///
/// Bit `mask(A)` of the packed table holds the value on A.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruthTable {
    space: OutcomeSpace,
    words: Vec<u64>,
}

impl TruthTable {
    pub fn zero(space: OutcomeSpace) -> Self {
        let bits = 1usize << space.outcome_count();
        TruthTable {
            space,
            words: vec![0; bits.div_ceil(64)],
        }
    }

    /// Table that is 1 exactly on the listed events.
    pub fn from_true_events(space: OutcomeSpace, events: &[Event]) -> Result<Self, TruthError> {
        let mut t = Self::zero(space);
        for e in events {
            assert_eq!(e.space(), space, "event from a different outcome space");
            if e.is_empty() {
                return Err(TruthError::EmptyEventTrue);
            }
            t.set_mask(e.mask(), true);
        }
        Ok(t)
    }

    /// The containment map α*: value 1 exactly on events containing the outcome.
    pub fn containment_map(space: OutcomeSpace, outcome: usize) -> Result<Self, TruthError> {
        space
            .check_index(outcome)
            .map_err(|_| TruthError::IndexOutOfRange {
                index: outcome,
                n: space.outcome_count(),
            })?;
        let mut t = Self::zero(space);
        for mask in 0..=space.full_mask() {
            if (mask >> (outcome - 1)) & 1 == 1 {
                t.set_mask(mask, true);
            }
        }
        Ok(t)
    }

    pub fn space(&self) -> OutcomeSpace {
        self.space
    }

    pub fn value(&self, event: Event) -> bool {
        assert_eq!(
            event.space(),
            self.space,
            "event from a different outcome space"
        );
        self.value_mask(event.mask())
    }

    pub(crate) fn value_mask(&self, mask: u32) -> bool {
        let i = mask as usize;
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub(crate) fn set_mask(&mut self, mask: u32, value: bool) {
        debug_assert!(mask != 0 || !value, "the empty event must stay false");
        let i = mask as usize;
        if value {
            self.words[i / 64] |= 1 << (i % 64);
        } else {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Events with value 1, ascending by mask.
    pub fn true_events(&self) -> Vec<Event> {
        self.space
            .events()
            .filter(|e| self.value_mask(e.mask()))
            .collect()
    }

    /// Pointwise XOR of two tables on the same space.
    pub fn sym_add(&self, other: &TruthTable) -> TruthTable {
        assert_eq!(
            self.space, other.space,
            "tables on different outcome spaces"
        );
        let mut out = self.clone();
        for (a, b) in out.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
        out
    }
}

impl fmt::Display for TruthTable {
    /// `[{1},{1,2}]`: the events with value 1, ascending by mask.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        let mut first = true;
        for e in self.true_events() {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
            first = false;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruthTable(n={}, {self})", self.space.outcome_count())
    }
}

/// Outcome of classifying a truth table against the standard conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct ClassificationReport {
    /// φ(Ω) = 1.
    pub unital: bool,
    /// φ(A ∪̇ B) = φ(A) + φ(B) on disjoint pairs (equivalently on all
    /// symmetric differences).
    pub grade1_additive: bool,
    /// φ(AB) = φ(A)φ(B) on all pairs.
    pub multiplicative: bool,
    /// The six-term identity on all mutually disjoint triples.
    pub grade2_additive: bool,
    /// unital ∧ grade-1 additive ∧ multiplicative.
    pub homomorphism: bool,
    /// Every m-point interference equals the sum of its two-point parts.
    pub two_point_condition: bool,
}

/// Classify a table by direct check over every event tuple each condition
/// quantifies over.
pub fn classify(t: &TruthTable) -> ClassificationReport {
    let full = t.space.full_mask();
    let unital = t.value_mask(full);

    // Disjoint pairs suffice for grade-1 additivity: additivity over
    // symmetric differences follows by splitting A = AB' ∪̇ AB.
    let mut grade1_additive = true;
    'grade1: for a in 0..=full {
        let comp = full & !a;
        let mut b = comp;
        loop {
            if t.value_mask(a | b) != (t.value_mask(a) ^ t.value_mask(b)) {
                grade1_additive = false;
                break 'grade1;
            }
            if b == 0 {
                break;
            }
            b = (b - 1) & comp;
        }
    }

    let mut multiplicative = true;
    'mult: for a in 0..=full {
        for b in 0..=full {
            if t.value_mask(a & b) != (t.value_mask(a) && t.value_mask(b)) {
                multiplicative = false;
                break 'mult;
            }
        }
    }

    let mut grade2_additive = true;
    'grade2: for a in 0..=full {
        let comp_a = full & !a;
        let mut b = comp_a;
        loop {
            let comp_ab = full & !(a | b);
            let mut c = comp_ab;
            loop {
                let lhs = t.value_mask(a | b | c);
                let rhs = t.value_mask(a | b)
                    ^ t.value_mask(a | c)
                    ^ t.value_mask(b | c)
                    ^ t.value_mask(a)
                    ^ t.value_mask(b)
                    ^ t.value_mask(c);
                if lhs != rhs {
                    grade2_additive = false;
                    break 'grade2;
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

    ClassificationReport {
        unital,
        grade1_additive,
        multiplicative,
        grade2_additive,
        homomorphism: unital && grade1_additive && multiplicative,
        two_point_condition: check_two_point(t),
    }
}

/// m-point interference I^m(α₁,…,α_m) = φ({α₁,…,α_m}) + φ(α₁) + ⋯ + φ(α_m).
pub fn interference(t: &TruthTable, outcomes: &[usize]) -> Result<bool, TruthError> {
    let n = t.space.outcome_count();
    let m = outcomes.len();
    if m < 2 || m > n {
        return Err(TruthError::ArityOutOfRange { m, n });
    }
    let mut mask = 0u32;
    for &i in outcomes {
        if i == 0 || i > n {
            return Err(TruthError::IndexOutOfRange { index: i, n });
        }
        let bit = 1u32 << (i - 1);
        if mask & bit != 0 {
            return Err(TruthError::DuplicateOutcome { index: i });
        }
        mask |= bit;
    }
    let mut acc = t.value_mask(mask);
    for &i in outcomes {
        acc ^= t.value_mask(1 << (i - 1));
    }
    Ok(acc)
}

/// True when every m-point interference (2 ≤ m ≤ n) equals the sum of the
/// two-point interferences of its pairs. Interference is symmetric in its
/// arguments, so scanning subsets covers all tuples.
pub fn check_two_point(t: &TruthTable) -> bool {
    let n = t.space.outcome_count();
    let full = t.space.full_mask();
    let singleton: Vec<bool> = (0..n).map(|i| t.value_mask(1 << i)).collect();
    for mask in 0..=full {
        if mask.count_ones() < 2 {
            continue;
        }
        let outcomes: Vec<usize> = (0..n).filter(|&i| (mask >> i) & 1 == 1).collect();
        let mut m_point = t.value_mask(mask);
        for &i in &outcomes {
            m_point ^= singleton[i];
        }
        let mut pair_sum = false;
        for (k, &i) in outcomes.iter().enumerate() {
            for &j in &outcomes[k + 1..] {
                pair_sum ^= t.value_mask((1 << i) | (1 << j)) ^ singleton[i] ^ singleton[j];
            }
        }
        if m_point != pair_sum {
            return false;
        }
    }
    true
}

/// Recover the outcomes α with φ = α₁* + ⋯ + α_m* for a nonzero grade-1
/// additive table. The outcomes are exactly the singletons where the table
/// is 1.
pub fn decompose_additive(t: &TruthTable) -> Result<Vec<usize>, TruthError> {
    if !classify(t).grade1_additive {
        return Err(TruthError::NotAdditive);
    }
    if t.is_zero() {
        return Err(TruthError::ZeroFunction);
    }
    Ok((1..=t.space.outcome_count())
        .filter(|&i| t.value_mask(1 << (i - 1)))
        .collect())
}

/// Recover the event B with φ(A) = 1 iff B ⊆ A for a multiplicative table
/// other than the zero function; B is the intersection of all true events.
pub fn decompose_multiplicative(t: &TruthTable) -> Result<Event, TruthError> {
    if !classify(t).multiplicative {
        return Err(TruthError::NotMultiplicative);
    }
    if t.is_zero() {
        return Err(TruthError::ZeroFunction);
    }
    let mut b = t.space.full_mask();
    for mask in 0..=t.space.full_mask() {
        if t.value_mask(mask) {
            b &= mask;
        }
    }
    Ok(t.space.event_from_mask(b))
}

/// Every truth table on the space (always with value 0 on the empty event)
/// whose classification passes the filter, in ascending table order.
pub fn enumerate_tables<F>(
    space: OutcomeSpace,
    filter: F,
) -> Result<impl Iterator<Item = TruthTable>, TruthError>
where
    F: Fn(&ClassificationReport) -> bool,
{
    const MAX_ENUMERATION_OUTCOMES: usize = 4;
    let n = space.outcome_count();
    if n > MAX_ENUMERATION_OUTCOMES {
        return Err(TruthError::Capacity {
            n,
            max: MAX_ENUMERATION_OUTCOMES,
        });
    }
    let free_bits = (1usize << n) - 1;
    let iter = (0..(1u64 << free_bits)).filter_map(move |packed| {
        let mut t = TruthTable::zero(space);
        // bit k of `packed` is the value on the event with mask k+1
        for k in 0..free_bits {
            if (packed >> k) & 1 == 1 {
                t.set_mask((k + 1) as u32, true);
            }
        }
        filter(&classify(&t)).then_some(t)
    });
    Ok(iter)
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

    /// ω₁*ω₂* on n=3: value 1 exactly on events containing both 1 and 2.
    fn pair_table() -> TruthTable {
        TruthTable::from_true_events(space(3), &[ev(3, &[1, 2]), ev(3, &[1, 2, 3])]).unwrap()
    }

    #[test]
    fn containment_map_is_a_homomorphism() {
        let t = TruthTable::containment_map(space(3), 1).unwrap();
        let report = classify(&t);
        assert!(report.unital);
        assert!(report.grade1_additive);
        assert!(report.multiplicative);
        assert!(report.grade2_additive);
        assert!(report.homomorphism);
        assert!(report.two_point_condition);
    }

    #[test]
    fn sum_of_two_containment_maps() {
        // ω₁* + ω₂* on n=3: additive but neither multiplicative nor unital.
        let t = TruthTable::containment_map(space(3), 1)
            .unwrap()
            .sym_add(&TruthTable::containment_map(space(3), 2).unwrap());
        let report = classify(&t);
        assert!(report.grade1_additive);
        assert!(!report.multiplicative);
        assert!(!report.unital);
    }

    #[test]
    fn product_of_two_containment_maps() {
        let report = classify(&pair_table());
        assert!(report.multiplicative);
        assert!(!report.grade1_additive);
        assert!(report.grade2_additive);
    }

    #[test]
    fn decompose_additive_examples() {
        let t = TruthTable::containment_map(space(3), 1)
            .unwrap()
            .sym_add(&TruthTable::containment_map(space(3), 3).unwrap());
        assert_eq!(decompose_additive(&t).unwrap(), vec![1, 3]);
        assert_eq!(
            decompose_additive(&pair_table()),
            Err(TruthError::NotAdditive)
        );
        assert_eq!(
            decompose_additive(&TruthTable::zero(space(3))),
            Err(TruthError::ZeroFunction)
        );
    }

    #[test]
    fn decompose_multiplicative_examples() {
        assert_eq!(
            decompose_multiplicative(&pair_table()).unwrap(),
            ev(3, &[1, 2])
        );
        let t3 = TruthTable::containment_map(space(3), 3).unwrap();
        assert_eq!(decompose_multiplicative(&t3).unwrap(), ev(3, &[3]));
        let sum = TruthTable::containment_map(space(3), 1)
            .unwrap()
            .sym_add(&TruthTable::containment_map(space(3), 2).unwrap());
        assert_eq!(
            decompose_multiplicative(&sum),
            Err(TruthError::NotMultiplicative)
        );
        assert_eq!(
            decompose_multiplicative(&TruthTable::zero(space(3))),
            Err(TruthError::ZeroFunction)
        );
    }

    #[test]
    fn interference_examples() {
        let t1 = TruthTable::containment_map(space(3), 1).unwrap();
        assert!(!interference(&t1, &[1, 2]).unwrap());
        let t12 = pair_table();
        assert!(interference(&t12, &[1, 2]).unwrap());
        assert!(interference(&t12, &[1, 2, 3]).unwrap());
    }

    #[test]
    fn interference_argument_errors() {
        let t = TruthTable::zero(space(3));
        assert_eq!(
            interference(&t, &[1, 1]),
            Err(TruthError::DuplicateOutcome { index: 1 })
        );
        assert_eq!(
            interference(&t, &[1]),
            Err(TruthError::ArityOutOfRange { m: 1, n: 3 })
        );
        assert_eq!(
            interference(&t, &[1, 2, 3, 3]),
            Err(TruthError::ArityOutOfRange { m: 4, n: 3 })
        );
        assert_eq!(
            interference(&t, &[1, 4]),
            Err(TruthError::IndexOutOfRange { index: 4, n: 3 })
        );
    }

    #[test]
    fn two_point_condition_examples() {
        assert!(check_two_point(
            &TruthTable::containment_map(space(3), 2).unwrap()
        ));
        assert!(check_two_point(&pair_table()));
        // Degree-3 table: 1 only on Ω. I³ = 1 but every two-point part is 0.
        let cubic = TruthTable::from_true_events(space(3), &[ev(3, &[1, 2, 3])]).unwrap();
        assert!(!check_two_point(&cubic));
        assert!(!classify(&cubic).grade2_additive);
    }

    #[test]
    fn enumeration_counts() {
        let all = enumerate_tables(space(2), |_| true).unwrap().count();
        assert_eq!(all, 8);
        let homs = enumerate_tables(space(2), |r| r.homomorphism)
            .unwrap()
            .count();
        assert_eq!(homs, 2);
        let grade2 = enumerate_tables(space(3), |r| r.grade2_additive)
            .unwrap()
            .count();
        assert_eq!(grade2, 64);
    }

    #[test]
    fn enumeration_is_capped() {
        assert!(matches!(
            enumerate_tables(space(5), |_| true).map(|i| i.count()),
            Err(TruthError::Capacity { n: 5, max: 4 })
        ));
    }

    #[test]
    fn enumeration_order_is_ascending() {
        let tables: Vec<TruthTable> = enumerate_tables(space(2), |_| true).unwrap().collect();
        // table order = packed nonempty-event bits read as an integer
        let packed: Vec<u32> = tables
            .iter()
            .map(|t| (1..=3).map(|m| u32::from(t.value_mask(m)) << (m - 1)).sum())
            .collect();
        assert_eq!(packed, (0..8).collect::<Vec<_>>());
    }

    #[test]
    fn zero_table_classification() {
        let report = classify(&TruthTable::zero(space(3)));
        assert!(report.grade1_additive && report.multiplicative && report.grade2_additive);
        assert!(!report.unital && !report.homomorphism);
    }

    #[test]
    fn empty_event_cannot_be_true() {
        assert_eq!(
            TruthTable::from_true_events(space(2), &[space(2).empty_event()]),
            Err(TruthError::EmptyEventTrue)
        );
    }
}
