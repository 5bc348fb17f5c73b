//! Coevents: the grade-2 additive truth functions, handled as degree-≤2
//! polynomials in the containment maps w1*, ..., wn*.
//!
//! A coevent is determined by its linear coefficients a_i and quadratic
//! coefficients b_ij (i < j). The coefficient vector has dimension
//! n(n+1)/2, ordered a_1..a_n then b_12, b_13, ..., b_{n-1,n}; that fixed
//! order is also the basis order used by projection matrices.

use std::fmt;
use std::ops::Add;

use thiserror::Error;

use crate::event::{Event, OutcomeSpace, ProductEvent};
use crate::gf2::Gf2Vector;
use crate::truth::TruthTable;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("table is not a coevent: the degree-2 reconstruction disagrees on {witness}")]
    NotACoevent { witness: Event },
    #[error("parts are not mutually disjoint: parts {first} and {second} overlap")]
    PartsNotDisjoint { first: usize, second: usize },
    #[error("partition size {m} outside 2..={n}")]
    PartitionArity { m: usize, n: usize },
    #[error("pair ({i},{j}) is not a valid unordered pair of distinct outcomes in 1..={n}")]
    InvalidPair { i: usize, j: usize, n: usize },
    #[error("product space over {n} outcomes has {squared} points, above the cap of {max}")]
    ProductCapacity {
        n: usize,
        squared: usize,
        max: usize,
    },
}

/// Index of the unordered pair {i,j} (1-based, i ≠ j) in the fixed
/// lexicographic order (1,2),(1,3),...,(1,n),(2,3),...
pub fn pair_index(space: OutcomeSpace, i: usize, j: usize) -> Result<usize, PolyError> {
    let n = space.outcome_count();
    if i == 0 || j == 0 || i > n || j > n || i == j {
        return Err(PolyError::InvalidPair { i, j, n });
    }
    let (lo, hi) = if i < j { (i, j) } else { (j, i) };
    let (lo, hi) = (lo - 1, hi - 1); // 0-based
    Ok(lo * (2 * n - lo - 1) / 2 + (hi - lo - 1))
}

/// A degree-≤2 polynomial in the containment maps, i.e. a grade-2
/// additive truth function.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Coevent {
    space: OutcomeSpace,
    /// bit i-1 = a_i
    linear: u32,
    /// bit pair_index(i,j) = b_ij
    quadratic: u128,
}

impl Coevent {
    pub fn zero(space: OutcomeSpace) -> Self {
        Coevent {
            space,
            linear: 0,
            quadratic: 0,
        }
    }

    /// The containment map ω_i* as a coevent.
    pub fn containment(space: OutcomeSpace, i: usize) -> Result<Self, PolyError> {
        let n = space.outcome_count();
        if i == 0 || i > n {
            return Err(PolyError::InvalidPair { i, j: i, n });
        }
        Ok(Coevent {
            space,
            linear: 1 << (i - 1),
            quadratic: 0,
        })
    }

    /// The quadratic monomial ω_i*ω_j*.
    pub fn pair(space: OutcomeSpace, i: usize, j: usize) -> Result<Self, PolyError> {
        let idx = pair_index(space, i, j)?;
        Ok(Coevent {
            space,
            linear: 0,
            quadratic: 1 << idx,
        })
    }

    /// Sum of the listed monomials (mod 2, so a repeated monomial cancels).
    pub fn from_monomials(
        space: OutcomeSpace,
        linear: &[usize],
        quadratic: &[(usize, usize)],
    ) -> Result<Self, PolyError> {
        let mut out = Self::zero(space);
        for &i in linear {
            out = out + Self::containment(space, i)?;
        }
        for &(i, j) in quadratic {
            out = out + Self::pair(space, i, j)?;
        }
        Ok(out)
    }

    pub fn space(&self) -> OutcomeSpace {
        self.space
    }

    pub fn is_zero(&self) -> bool {
        self.linear == 0 && self.quadratic == 0
    }

    pub fn linear_coeff(&self, i: usize) -> bool {
        i >= 1 && i <= self.space.outcome_count() && (self.linear >> (i - 1)) & 1 == 1
    }

    pub fn quadratic_coeff(&self, i: usize, j: usize) -> bool {
        match pair_index(self.space, i, j) {
            Ok(idx) => (self.quadratic >> idx) & 1 == 1,
            Err(_) => false,
        }
    }

    /// φ(A) = Σ_{i∈A} a_i + Σ_{i<j, i,j∈A} b_ij (mod 2).
    pub fn evaluate(&self, a: Event) -> bool {
        assert_eq!(
            a.space(),
            self.space,
            "event from a different outcome space"
        );
        let mut acc = (self.linear & a.mask()).count_ones() & 1 == 1;
        let members: Vec<usize> = a.indices().collect();
        for (k, &i) in members.iter().enumerate() {
            for &j in &members[k + 1..] {
                acc ^= self.quadratic_coeff(i, j);
            }
        }
        acc
    }

    /// True when the coevent evaluates to 1 on Ω.
    pub fn is_unital(&self) -> bool {
        self.evaluate(self.space.full_event())
    }

    /// The table of values on every event.
    pub fn to_table(&self) -> TruthTable {
        let mut t = TruthTable::zero(self.space);
        for e in self.space.events() {
            if self.evaluate(e) {
                t.set_mask(e.mask(), true);
            }
        }
        t
    }

    /// The coefficient vector in the fixed order a_1..a_n, b_12, ..., b_{n-1,n}.
    pub fn to_vector(&self) -> Gf2Vector {
        let n = self.space.outcome_count();
        let mut v = Gf2Vector::zeros(self.space.dimension());
        for i in 0..n {
            if (self.linear >> i) & 1 == 1 {
                v.set(i, true);
            }
        }
        for idx in 0..(n * (n - 1) / 2) {
            if (self.quadratic >> idx) & 1 == 1 {
                v.set(n + idx, true);
            }
        }
        v
    }

    pub fn from_vector(space: OutcomeSpace, v: &Gf2Vector) -> Self {
        let n = space.outcome_count();
        assert_eq!(
            v.len(),
            space.dimension(),
            "coefficient vector has wrong dimension"
        );
        let mut linear = 0u32;
        let mut quadratic = 0u128;
        for i in 0..n {
            if v.get(i) {
                linear |= 1 << i;
            }
        }
        for idx in 0..(n * (n - 1) / 2) {
            if v.get(n + idx) {
                quadratic |= 1 << idx;
            }
        }
        Coevent {
            space,
            linear,
            quadratic,
        }
    }

    /// Monomials present, as (linear outcomes, quadratic pairs), each ascending.
    pub fn monomials(&self) -> (Vec<usize>, Vec<(usize, usize)>) {
        let n = self.space.outcome_count();
        let linear = (1..=n).filter(|&i| self.linear_coeff(i)).collect();
        let mut pairs = Vec::new();
        for i in 1..=n {
            for j in (i + 1)..=n {
                if self.quadratic_coeff(i, j) {
                    pairs.push((i, j));
                }
            }
        }
        (linear, pairs)
    }
}

impl Add for Coevent {
    type Output = Coevent;

    /// Coefficientwise XOR; the table of the sum is the pointwise XOR of
    /// the tables.
    fn add(self, rhs: Coevent) -> Coevent {
        assert_eq!(
            self.space, rhs.space,
            "coevents from different outcome spaces"
        );
        Coevent {
            space: self.space,
            linear: self.linear ^ rhs.linear,
            quadratic: self.quadratic ^ rhs.quadratic,
        }
    }
}

impl fmt::Display for Coevent {
    /// Monomials joined by ` + `, e.g. `w3* + w1*w3* + w2*w3*`; `0` when zero.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let (linear, pairs) = self.monomials();
        let mut first = true;
        for i in linear {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "w{i}*")?;
            first = false;
        }
        for (i, j) in pairs {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "w{i}*w{j}*")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Coevent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Coevent(n={}, {self})", self.space.outcome_count())
    }
}

/// The unique coevent with the given values on singletons and doubletons:
/// a_i = s_i and b_ij = d_ij + s_i + s_j.
///
/// Bit i-1 of `singleton_bits` is the value on {ω_i}; bit
/// [`pair_index`]`(i,j)` of `doubleton_bits` is the value on {ω_i,ω_j}.
pub fn interpolate(space: OutcomeSpace, singleton_bits: u32, doubleton_bits: u128) -> Coevent {
    let n = space.outcome_count();
    let linear = singleton_bits & space.full_mask();
    let mut quadratic = 0u128;
    for i in 1..=n {
        for j in (i + 1)..=n {
            let idx = pair_index(space, i, j).expect("valid pair");
            let d = (doubleton_bits >> idx) & 1 == 1;
            let s_i = (singleton_bits >> (i - 1)) & 1 == 1;
            let s_j = (singleton_bits >> (j - 1)) & 1 == 1;
            if d ^ s_i ^ s_j {
                quadratic |= 1 << idx;
            }
        }
    }
    Coevent {
        space,
        linear,
        quadratic,
    }
}

/// Read a coevent off a table, verifying the reconstruction against every
/// event. Tables that are not grade-2 additive fail with the first event
/// (ascending by mask) where the degree-2 polynomial disagrees.
pub fn from_table(t: &TruthTable) -> Result<Coevent, PolyError> {
    let space = t.space();
    let n = space.outcome_count();
    let mut singleton_bits = 0u32;
    for i in 1..=n {
        if t.value_mask(1 << (i - 1)) {
            singleton_bits |= 1 << (i - 1);
        }
    }
    let mut doubleton_bits = 0u128;
    for i in 1..=n {
        for j in (i + 1)..=n {
            if t.value_mask((1 << (i - 1)) | (1 << (j - 1))) {
                doubleton_bits |= 1 << pair_index(space, i, j).expect("valid pair");
            }
        }
    }
    let phi = interpolate(space, singleton_bits, doubleton_bits);
    for e in space.events() {
        if phi.evaluate(e) != t.value_mask(e.mask()) {
            return Err(PolyError::NotACoevent { witness: e });
        }
    }
    Ok(phi)
}

fn check_partition(space: OutcomeSpace, parts: &[Event]) -> Result<(), PolyError> {
    let m = parts.len();
    let n = space.outcome_count();
    if m < 2 || m > n {
        return Err(PolyError::PartitionArity { m, n });
    }
    for (i, a) in parts.iter().enumerate() {
        assert_eq!(a.space(), space, "part from a different outcome space");
        for (j, b) in parts.iter().enumerate().skip(i + 1) {
            if !a.is_disjoint_from(b) {
                return Err(PolyError::PartsNotDisjoint {
                    first: i,
                    second: j,
                });
            }
        }
    }
    Ok(())
}

/// Check the m-part additivity identity
/// φ(A₁ ∪̇ ⋯ ∪̇ A_m) = Σ_{i<j} φ(A_i ∪̇ A_j) + (m mod 2)·Σ_i φ(A_i)
/// on a raw table; it holds for every partition exactly when the table is
/// a coevent.
pub fn partition_identity_holds(t: &TruthTable, parts: &[Event]) -> Result<bool, PolyError> {
    check_partition(t.space(), parts)?;
    let union = parts
        .iter()
        .fold(t.space().empty_event(), |acc, p| acc.union(p));
    let mut rhs = false;
    for (i, a) in parts.iter().enumerate() {
        for b in &parts[i + 1..] {
            rhs ^= t.value(a.union(b));
        }
    }
    if parts.len() % 2 == 1 {
        for a in parts {
            rhs ^= t.value(*a);
        }
    }
    Ok(t.value(union) == rhs)
}

/// [`partition_identity_holds`] for a coevent; always true for genuine
/// coevents, exposed so the identity itself can be exercised.
pub fn verify_partition_identity(phi: &Coevent, parts: &[Event]) -> Result<bool, PolyError> {
    partition_identity_holds(&phi.to_table(), parts)
}

/// A grade-1 additive map on subsets of Ω×Ω, given by its generating
/// pairs: λ(E) is the parity of how many generators lie in E.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairAdditiveMap {
    space: OutcomeSpace,
    generators: Vec<(usize, usize)>,
}

impl PairAdditiveMap {
    pub fn space(&self) -> OutcomeSpace {
        self.space
    }

    pub fn generators(&self) -> &[(usize, usize)] {
        &self.generators
    }

    pub fn evaluate(&self, e: &ProductEvent) -> bool {
        assert_eq!(
            e.space(),
            self.space,
            "product event from a different space"
        );
        let mut acc = false;
        for &(i, j) in &self.generators {
            acc ^= e.contains_pair(i, j);
        }
        acc
    }

    /// λ as a truth table on the n²-outcome product space, for use with
    /// the truth-function classifiers. Capped at n ≤ 4 so the product
    /// space stays within the outcome limit.
    pub fn to_product_table(&self) -> Result<TruthTable, PolyError> {
        let n = self.space.outcome_count();
        let squared = n * n;
        let product_space = OutcomeSpace::new(squared).map_err(|_| PolyError::ProductCapacity {
            n,
            squared,
            max: crate::event::MAX_OUTCOMES,
        })?;
        let mut generator_mask = 0u32;
        for &(i, j) in &self.generators {
            generator_mask |= 1 << ((i - 1) * n + (j - 1));
        }
        let mut t = TruthTable::zero(product_space);
        for mask in 1..=product_space.full_mask() {
            if (generator_mask & mask).count_ones() % 2 == 1 {
                t.set_mask(mask, true);
            }
        }
        Ok(t)
    }
}

/// The canonical product-space lift: generators (α,α) for each linear
/// coefficient and (β,γ) with β<γ for each quadratic coefficient, so that
/// λ(A×A) = φ(A) for every event A.
pub fn lift_to_product(phi: &Coevent) -> PairAdditiveMap {
    let n = phi.space.outcome_count();
    let mut generators = Vec::new();
    for i in 1..=n {
        if phi.linear_coeff(i) {
            generators.push((i, i));
        }
    }
    for i in 1..=n {
        for j in (i + 1)..=n {
            if phi.quadratic_coeff(i, j) {
                generators.push((i, j));
            }
        }
    }
    PairAdditiveMap {
        space: phi.space,
        generators,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::event::square;
    use crate::truth;
    use proptest::prelude::*;

    fn space(n: usize) -> OutcomeSpace {
        OutcomeSpace::new(n).unwrap()
    }

    fn ev(n: usize, idx: &[usize]) -> Event {
        space(n).event_from_indices(idx).unwrap()
    }

    /// The worked interpolation example: n=5, singletons 1,2 true and
    /// doubletons {1,2},{2,3},{4,5} true.
    fn worked_psi() -> Coevent {
        let sp = space(5);
        let singles = 0b00011;
        let mut doubles = 0u128;
        for (i, j) in [(1, 2), (2, 3), (4, 5)] {
            doubles |= 1 << pair_index(sp, i, j).unwrap();
        }
        interpolate(sp, singles, doubles)
    }

    #[test]
    fn worked_example_has_the_nine_expected_monomials() {
        let psi = worked_psi();
        let expected = Coevent::from_monomials(
            space(5),
            &[1, 2],
            &[(1, 2), (4, 5), (1, 3), (1, 4), (1, 5), (2, 4), (2, 5)],
        )
        .unwrap();
        assert_eq!(psi, expected);
        let (linear, pairs) = psi.monomials();
        assert_eq!(linear.len() + pairs.len(), 9);
    }

    #[test]
    fn worked_example_evaluations() {
        let psi = worked_psi();
        assert!(psi.evaluate(ev(5, &[2, 3])));
        assert!(psi.evaluate(ev(5, &[4, 5])));
        assert!(!psi.evaluate(ev(5, &[])));
    }

    #[test]
    fn interpolate_trivial_cases() {
        assert!(interpolate(space(4), 0, 0).is_zero());
        let sp = space(2);
        let phi = interpolate(sp, 0, 1 << pair_index(sp, 1, 2).unwrap());
        assert_eq!(phi, Coevent::pair(sp, 1, 2).unwrap());
    }

    #[test]
    fn interpolation_matches_prescribed_values() {
        // every singleton/doubleton assignment at n=3 is hit exactly
        let sp = space(3);
        let mut seen = std::collections::HashSet::new();
        for s in 0u32..8 {
            for d in 0u128..8 {
                let phi = interpolate(sp, s, d);
                for i in 1..=3 {
                    assert_eq!(
                        phi.evaluate(sp.singleton(i).unwrap()),
                        (s >> (i - 1)) & 1 == 1
                    );
                }
                for i in 1..=3usize {
                    for j in (i + 1)..=3 {
                        let idx = pair_index(sp, i, j).unwrap();
                        assert_eq!(
                            phi.evaluate(sp.event_from_indices(&[i, j]).unwrap()),
                            (d >> idx) & 1 == 1
                        );
                    }
                }
                seen.insert(phi.to_vector().to_string());
            }
        }
        assert_eq!(seen.len(), 64);
    }

    #[test]
    fn from_table_round_trip_is_exhaustive_at_n3() {
        let sp = space(3);
        for bits in 0u128..64 {
            let phi = Coevent {
                space: sp,
                linear: (bits & 0b111) as u32,
                quadratic: bits >> 3,
            };
            assert_eq!(from_table(&phi.to_table()).unwrap(), phi);
        }
    }

    #[test]
    fn from_table_rejects_degree_three() {
        let cubic = TruthTable::from_true_events(space(3), &[ev(3, &[1, 2, 3])]).unwrap();
        assert_eq!(
            from_table(&cubic),
            Err(PolyError::NotACoevent {
                witness: ev(3, &[1, 2, 3])
            })
        );
    }

    #[test]
    fn table_of_example_coevents() {
        let sp = space(2);
        assert_eq!(Coevent::zero(sp).to_table(), TruthTable::zero(sp));
        assert_eq!(
            Coevent::pair(sp, 1, 2).unwrap().to_table().to_string(),
            "[{1,2}]"
        );

        // w3* + w1*w3* + w2*w3*: the quadratic terms cancel the linear one
        // on {1,3} and {2,3}, so the table is 1 exactly on {3} and Ω
        // (on Ω the value is a3 + b13 + b23 = 1 + 1 + 1 = 1)
        let phi = Coevent::from_monomials(space(3), &[3], &[(1, 3), (2, 3)]).unwrap();
        let trues: Vec<String> = phi
            .to_table()
            .true_events()
            .iter()
            .map(Event::to_string)
            .collect();
        assert_eq!(trues, vec!["{3}", "{1,2,3}"]);
        assert!(phi.is_unital());
    }

    #[test]
    fn addition_examples() {
        let sp = space(2);
        let a = Coevent::from_monomials(sp, &[1, 2], &[]).unwrap();
        let b = Coevent::from_monomials(sp, &[1], &[(1, 2)]).unwrap();
        assert_eq!(a + b, Coevent::from_monomials(sp, &[2], &[(1, 2)]).unwrap());
        assert!((a + a).is_zero());
        assert_eq!(a + Coevent::zero(sp), a);
    }

    #[test]
    fn partition_identity_on_coevents_and_raw_tables() {
        let sp = space(3);
        let parts = [ev(3, &[1]), ev(3, &[2]), ev(3, &[3])];
        for bits in 0u128..64 {
            let phi = Coevent {
                space: sp,
                linear: (bits & 0b111) as u32,
                quadratic: bits >> 3,
            };
            assert_eq!(verify_partition_identity(&phi, &parts), Ok(true));
        }
        let cubic = TruthTable::from_true_events(sp, &[ev(3, &[1, 2, 3])]).unwrap();
        assert_eq!(partition_identity_holds(&cubic, &parts), Ok(false));
    }

    #[test]
    fn partition_identity_argument_errors() {
        let phi = Coevent::zero(space(3));
        assert_eq!(
            verify_partition_identity(&phi, &[ev(3, &[1, 2]), ev(3, &[2])]),
            Err(PolyError::PartsNotDisjoint {
                first: 0,
                second: 1
            })
        );
        assert_eq!(
            verify_partition_identity(&phi, &[ev(3, &[1])]),
            Err(PolyError::PartitionArity { m: 1, n: 3 })
        );
    }

    #[test]
    fn lift_examples() {
        let sp = space(3);
        let lam = lift_to_product(&Coevent::containment(sp, 1).unwrap());
        assert_eq!(lam.generators(), &[(1, 1)]);
        assert!(lam.evaluate(&square(ev(3, &[1]))));

        let lam23 = lift_to_product(&Coevent::pair(sp, 2, 3).unwrap());
        assert_eq!(lam23.generators(), &[(2, 3)]);
        assert!(lam23.evaluate(&square(ev(3, &[2, 3]))));
        assert!(!lam23.evaluate(&square(ev(3, &[2]))));

        let zero = lift_to_product(&Coevent::zero(sp));
        assert!(zero.generators().is_empty());
    }

    #[test]
    fn lift_agrees_with_evaluation_everywhere() {
        for n in 1..=4 {
            let sp = space(n);
            let d = sp.dimension();
            for bits in 0u128..(1 << d) {
                let phi = Coevent {
                    space: sp,
                    linear: (bits & ((1 << n) - 1)) as u32,
                    quadratic: bits >> n,
                };
                let lam = lift_to_product(&phi);
                for a in sp.events() {
                    assert_eq!(lam.evaluate(&square(a)), phi.evaluate(a));
                }
            }
        }
    }

    #[test]
    fn lift_is_grade1_additive_on_the_product_space() {
        // full classification is affordable through n = 2 here; n = 3 is
        // covered by the verification suites
        let sp = space(2);
        for bits in 0u128..8 {
            let phi = Coevent {
                space: sp,
                linear: (bits & 0b11) as u32,
                quadratic: bits >> 2,
            };
            let table = lift_to_product(&phi).to_product_table().unwrap();
            assert!(truth::classify(&table).grade1_additive);
        }
    }

    #[test]
    fn display_forms() {
        let phi = Coevent::from_monomials(space(3), &[3], &[(1, 3), (2, 3)]).unwrap();
        assert_eq!(phi.to_string(), "w3* + w1*w3* + w2*w3*");
        assert_eq!(Coevent::zero(space(3)).to_string(), "0");
    }

    proptest! {
        #[test]
        fn vector_round_trip(linear in 0u32..16, quadratic in 0u128..64) {
            let sp = space(4);
            let phi = Coevent { space: sp, linear, quadratic };
            prop_assert_eq!(Coevent::from_vector(sp, &phi.to_vector()), phi);
        }

        #[test]
        fn addition_is_pointwise_on_tables(
            l1 in 0u32..8, q1 in 0u128..8, l2 in 0u32..8, q2 in 0u128..8,
        ) {
            let sp = space(3);
            let a = Coevent { space: sp, linear: l1, quadratic: q1 };
            let b = Coevent { space: sp, linear: l2, quadratic: q2 };
            prop_assert_eq!((a + b).to_table(), a.to_table().sym_add(&b.to_table()));
        }

        #[test]
        fn evaluation_on_empty_is_zero(l in 0u32..16, q in 0u128..64) {
            let sp = space(4);
            let phi = Coevent { space: sp, linear: l, quadratic: q };
            prop_assert!(!phi.evaluate(sp.empty_event()));
        }
    }
}
