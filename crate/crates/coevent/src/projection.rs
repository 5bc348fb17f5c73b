//! Projections on the coevent space and the master observable.
//!
//! A projection is an idempotent linear map on the coevent coefficient
//! space, stored as a D×D matrix over GF(2) with D = n(n+1)/2 in the
//! fixed basis order w1*, ..., wn*, w1*w2*, w1*w3*, ... The order
//! P ≤ Q means PQ = QP = P, the orthocomplement is P' = I + P, and two
//! projections are compatible exactly when they commute.
//!
//! The generator P(w_i) acts by w_j* -> w_i*w_j*, fixes w_i* and every
//! quadratic monomial containing i, and kills the rest; P(A) is the sum
//! of the generators over A plus their pairwise products.

use std::fmt;

use thiserror::Error;

use crate::event::{Event, OutcomeSpace};
use crate::gf2::Gf2Matrix;
use crate::poly::{pair_index, Coevent};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProjectionError {
    #[error("matrix is not idempotent: M*M differs from M at basis column {witness_column}")]
    NotIdempotent { witness_column: usize },
    #[error("expected a {expected}x{expected} matrix for this outcome space, got {rows}x{cols}")]
    WrongShape {
        expected: usize,
        rows: usize,
        cols: usize,
    },
    #[error("projections act on different outcome spaces")]
    SpaceMismatch,
    #[error("projections do not commute; meet and join are only constructed for commuting pairs")]
    NonCommuting,
    #[error("dimension {dimension} exceeds the enumeration cap of {max}")]
    Capacity { dimension: usize, max: usize },
    #[error("invalid random variable: {reason}")]
    InvalidRandomVariable { reason: String },
}

/// An idempotent linear map on the coevent space.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Projection {
    space: OutcomeSpace,
    matrix: Gf2Matrix,
}

impl Projection {
    /// Wrap a D×D matrix after checking idempotence. The error reports the
    /// first basis column where M*M and M disagree.
    pub fn new(space: OutcomeSpace, matrix: Gf2Matrix) -> Result<Self, ProjectionError> {
        let d = space.dimension();
        if matrix.rows() != d || matrix.cols() != d {
            return Err(ProjectionError::WrongShape {
                expected: d,
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        let squared = matrix.mul(&matrix).expect("square matrix");
        if squared != matrix {
            let diff = squared.add(&matrix);
            let witness_column = (0..d)
                .find(|&c| (0..d).any(|r| diff.get(r, c)))
                .expect("difference is nonzero");
            return Err(ProjectionError::NotIdempotent { witness_column });
        }
        Ok(Projection { space, matrix })
    }

    pub fn zero(space: OutcomeSpace) -> Self {
        let d = space.dimension();
        Projection {
            space,
            matrix: Gf2Matrix::zeros(d, d),
        }
    }

    pub fn identity(space: OutcomeSpace) -> Self {
        Projection {
            space,
            matrix: Gf2Matrix::identity(space.dimension()),
        }
    }

    pub fn space(&self) -> OutcomeSpace {
        self.space
    }

    pub fn matrix(&self) -> &Gf2Matrix {
        &self.matrix
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == Gf2Matrix::identity(self.space.dimension())
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    /// Apply to a coevent through its coefficient vector.
    pub fn apply(&self, phi: &Coevent) -> Coevent {
        assert_eq!(
            phi.space(),
            self.space,
            "coevent from a different outcome space"
        );
        let image = self
            .matrix
            .mul_vec(&phi.to_vector())
            .expect("dimension agrees");
        Coevent::from_vector(self.space, &image)
    }

    /// The orthocomplement P' = I + P.
    pub fn complement(&self) -> Projection {
        let d = self.space.dimension();
        Projection {
            space: self.space,
            matrix: self.matrix.add(&Gf2Matrix::identity(d)),
        }
    }

    fn assert_same_space(&self, other: &Projection) {
        assert_eq!(
            self.space, other.space,
            "projections on different outcome spaces"
        );
    }

    fn product(&self, other: &Projection) -> Gf2Matrix {
        self.matrix.mul(&other.matrix).expect("same dimension")
    }

    /// Order and compatibility relations between two projections.
    pub fn relations(&self, other: &Projection) -> PosetRelationReport {
        self.assert_same_space(other);
        let pq = self.product(other);
        let qp = other.product(self);
        let commute = pq == qp;
        PosetRelationReport {
            commute,
            leq: pq == self.matrix && qp == self.matrix,
            geq: pq == other.matrix && qp == other.matrix,
            orthogonal: pq.is_zero() && qp.is_zero(),
            compatible: commute,
        }
    }

    pub fn leq(&self, other: &Projection) -> bool {
        self.relations(other).leq
    }

    /// Meet PQ and join P+Q+PQ of a commuting pair. For non-commuting
    /// pairs existence of a meet is a search problem, not a formula; see
    /// [`lattice_search`].
    pub fn meet_join(
        &self,
        other: &Projection,
    ) -> Result<(Projection, Projection), ProjectionError> {
        self.assert_same_space(other);
        let pq = self.product(other);
        if pq != other.product(self) {
            return Err(ProjectionError::NonCommuting);
        }
        let join = self.matrix.add(&other.matrix).add(&pq);
        let meet = Projection::new(self.space, pq).expect("product of commuting projections");
        let join = Projection::new(self.space, join).expect("join of commuting projections");
        Ok((meet, join))
    }

    /// Split a commuting pair into mutually orthogonal parts
    /// (P₁, Q₁, R) = (P+PQ, Q+PQ, PQ) with P = P₁ ∨ R and Q = Q₁ ∨ R.
    pub fn compatibility_decomposition(
        &self,
        other: &Projection,
    ) -> Result<(Projection, Projection, Projection), ProjectionError> {
        self.assert_same_space(other);
        let pq = self.product(other);
        if pq != other.product(self) {
            return Err(ProjectionError::NonCommuting);
        }
        let p1 = Projection::new(self.space, self.matrix.add(&pq)).expect("idempotent");
        let q1 = Projection::new(self.space, other.matrix.add(&pq)).expect("idempotent");
        let r = Projection::new(self.space, pq).expect("idempotent");
        Ok((p1, q1, r))
    }
}

impl fmt::Display for Projection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.matrix)
    }
}

impl fmt::Debug for Projection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Projection(n={}, {:?})",
            self.space.outcome_count(),
            self.matrix
        )
    }
}

impl serde::Serialize for Projection {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(&self.matrix)
    }
}

/// The pairwise relations between two projections.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct PosetRelationReport {
    pub commute: bool,
    /// PQ = QP = P.
    pub leq: bool,
    /// PQ = QP = Q.
    pub geq: bool,
    /// PQ = QP = 0.
    pub orthogonal: bool,
    /// Equal to `commute`: a pair splits into mutually orthogonal parts
    /// exactly when it commutes.
    pub compatible: bool,
}

/// A real-valued function on the outcomes.
#[derive(Debug, Clone, PartialEq)]
pub struct RandomVariable {
    space: OutcomeSpace,
    values: Vec<f64>,
}

impl RandomVariable {
    pub fn new(space: OutcomeSpace, values: Vec<f64>) -> Result<Self, ProjectionError> {
        if values.len() != space.outcome_count() {
            return Err(ProjectionError::InvalidRandomVariable {
                reason: format!(
                    "expected {} values, got {}",
                    space.outcome_count(),
                    values.len()
                ),
            });
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(ProjectionError::InvalidRandomVariable {
                reason: format!("value {v} is not finite"),
            });
        }
        Ok(RandomVariable { space, values })
    }

    pub fn space(&self) -> OutcomeSpace {
        self.space
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// The event f⁻¹(targets) = { ω : f(ω) ∈ targets }.
    pub fn preimage(&self, targets: &[f64]) -> Event {
        let indices: Vec<usize> = (1..=self.space.outcome_count())
            .filter(|&i| targets.contains(&self.values[i - 1]))
            .collect();
        self.space
            .event_from_indices(&indices)
            .expect("indices in range")
    }
}

/// The map A -> P(A) from events to projections, generated by the P(ω_i).
#[derive(Debug, Clone)]
pub struct MasterObservable {
    space: OutcomeSpace,
    generators: Vec<Gf2Matrix>,
}

impl MasterObservable {
    pub fn new(space: OutcomeSpace) -> Self {
        let n = space.outcome_count();
        let generators: Vec<Gf2Matrix> = (1..=n).map(|i| generator_matrix(space, i)).collect();
        for (i, g) in generators.iter().enumerate() {
            debug_assert!(g.is_idempotent(), "P(w{}) must be idempotent", i + 1);
            for h in &generators[i + 1..] {
                debug_assert_eq!(
                    g.mul(h).expect("square"),
                    h.mul(g).expect("square"),
                    "generators must commute"
                );
            }
        }
        MasterObservable { space, generators }
    }

    pub fn space(&self) -> OutcomeSpace {
        self.space
    }

    /// The generator P(ω_i).
    pub fn generator(&self, i: usize) -> Projection {
        assert!(
            i >= 1 && i <= self.generators.len(),
            "outcome index out of range"
        );
        Projection {
            space: self.space,
            matrix: self.generators[i - 1].clone(),
        }
    }

    /// P(A) = Σ { P(ω_i) + P(ω_i)P(ω_j) : ω_i, ω_j ∈ A, i < j }, with
    /// P(∅) = 0.
    pub fn projection(&self, a: Event) -> Projection {
        assert_eq!(
            a.space(),
            self.space,
            "event from a different outcome space"
        );
        let d = self.space.dimension();
        let mut sum = Gf2Matrix::zeros(d, d);
        let members: Vec<usize> = a.indices().collect();
        for &i in &members {
            sum = sum.add(&self.generators[i - 1]);
        }
        for (k, &i) in members.iter().enumerate() {
            for &j in &members[k + 1..] {
                let product = self.generators[i - 1]
                    .mul(&self.generators[j - 1])
                    .expect("square");
                sum = sum.add(&product);
            }
        }
        Projection::new(self.space, sum).expect("master projection is idempotent")
    }

    /// The observable P^f: targets ↦ P(f⁻¹(targets)).
    pub fn observable(&self, f: &RandomVariable, targets: &[f64]) -> Projection {
        assert_eq!(
            f.space(),
            self.space,
            "random variable on a different space"
        );
        self.projection(f.preimage(targets))
    }
}

/// Matrix of P(ω_i) in the fixed basis order: fixes w_i* and every
/// quadratic monomial containing i, sends w_j* (j ≠ i) to w_i*w_j*, and
/// kills quadratic monomials avoiding i.
fn generator_matrix(space: OutcomeSpace, i: usize) -> Gf2Matrix {
    let n = space.outcome_count();
    let d = space.dimension();
    let mut m = Gf2Matrix::zeros(d, d);
    for col in 0..d {
        if col < n {
            let j = col + 1;
            if j == i {
                m.set(col, col, true);
            } else {
                let row = n + pair_index(space, i, j).expect("distinct outcomes");
                m.set(row, col, true);
            }
        } else {
            let (k, l) = pair_from_index(n, col - n);
            if k == i || l == i {
                m.set(col, col, true);
            }
        }
    }
    m
}

/// Inverse of [`pair_index`]: the 1-based pair (i, j) with i < j sitting
/// at the given lexicographic position.
fn pair_from_index(n: usize, index: usize) -> (usize, usize) {
    let mut idx = index;
    for i in 1..=n {
        let row_len = n - i;
        if idx < row_len {
            return (i, i + 1 + idx);
        }
        idx -= row_len;
    }
    panic!("pair index {index} out of range for n={n}");
}

/// A violation found by [`verify_orthomodular`], with the law that failed
/// and the offending matrices rendered as text.
#[derive(Debug, Clone, serde::Serialize)]
pub struct OrthomodularViolation {
    pub law: String,
    pub witness: String,
}

/// Result of checking a family of projections against the
/// orthocomplemented-poset and orthomodularity laws.
#[derive(Debug, Clone, serde::Serialize)]
pub struct OrthomodularReport {
    pub projection_count: usize,
    pub pairs_checked: usize,
    pub violations: Vec<OrthomodularViolation>,
}

impl OrthomodularReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for OrthomodularReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            write!(
                f,
                "orthomodular poset laws hold over {} projections ({} ordered pairs)",
                self.projection_count, self.pairs_checked
            )
        } else {
            writeln!(
                f,
                "orthomodular poset check FAILED over {} projections:",
                self.projection_count
            )?;
            for v in &self.violations {
                writeln!(f, "  {}:", v.law)?;
                for line in v.witness.lines() {
                    writeln!(f, "    {line}")?;
                }
            }
            Ok(())
        }
    }
}

fn pair_witness(label_p: &str, p: &Gf2Matrix, label_q: &str, q: &Gf2Matrix) -> String {
    format!("{label_p} =\n{p}\n{label_q} =\n{q}")
}

/// Check the partial-order axioms, the orthocomplementation laws, the
/// orthogonality criterion PQ = QP = 0, existence of orthogonal joins,
/// and the orthomodular law Q = P ∨ (Q ∧ P') over every pair in the
/// list. Least-upper-bound claims are checked relative to the supplied
/// list, so feeding in every projection of a given dimension checks the
/// genuine poset.
pub fn verify_orthomodular(projections: &[Projection]) -> OrthomodularReport {
    let count = projections.len();
    let mut violations = Vec::new();
    let mut pairs_checked = 0;
    if count == 0 {
        return OrthomodularReport {
            projection_count: 0,
            pairs_checked: 0,
            violations,
        };
    }
    let space = projections[0].space();
    for p in projections {
        assert_eq!(p.space(), space, "projections on different outcome spaces");
    }

    // involution and meet-with-complement
    for p in projections {
        if p.complement().complement() != *p {
            violations.push(OrthomodularViolation {
                law: "P'' = P".into(),
                witness: format!("P =\n{p}"),
            });
        }
        if !p.product(&p.complement()).is_zero() {
            violations.push(OrthomodularViolation {
                law: "P ∧ P' = 0".into(),
                witness: format!("P =\n{p}"),
            });
        }
    }

    // order relation as bitsets: above[i] holds j whenever P_i ≤ P_j
    let blocks = count.div_ceil(64);
    let mut above = vec![vec![0u64; blocks]; count];
    for i in 0..count {
        for j in 0..count {
            if projections[i].leq(&projections[j]) {
                above[i][j / 64] |= 1 << (j % 64);
            }
        }
    }
    let is_above = |above: &[Vec<u64>], i: usize, j: usize| (above[i][j / 64] >> (j % 64)) & 1 == 1;

    for (i, p) in projections.iter().enumerate() {
        if !is_above(&above, i, i) {
            violations.push(OrthomodularViolation {
                law: "reflexivity P ≤ P".into(),
                witness: format!("P =\n{p}"),
            });
        }
    }
    for i in 0..count {
        for j in 0..count {
            pairs_checked += 1;
            let p = &projections[i];
            let q = &projections[j];
            if is_above(&above, i, j) {
                // antisymmetry
                if is_above(&above, j, i) && p != q {
                    violations.push(OrthomodularViolation {
                        law: "antisymmetry".into(),
                        witness: pair_witness("P", p.matrix(), "Q", q.matrix()),
                    });
                }
                // transitivity via subset of the above-sets
                if above[j].iter().zip(&above[i]).any(|(qj, qi)| qj & !qi != 0) {
                    violations.push(OrthomodularViolation {
                        law: "transitivity".into(),
                        witness: pair_witness("P", p.matrix(), "Q", q.matrix()),
                    });
                }
                // order reversal of the complement
                if !q.complement().leq(&p.complement()) {
                    violations.push(OrthomodularViolation {
                        law: "P ≤ Q implies Q' ≤ P'".into(),
                        witness: pair_witness("P", p.matrix(), "Q", q.matrix()),
                    });
                }
                // orthomodular law: Q = P ∨ (Q ∧ P')
                let ortho_ok = (|| {
                    let (meet, _) = q.meet_join(&p.complement()).ok()?;
                    let (_, join) = p.meet_join(&meet).ok()?;
                    Some(join == *q)
                })();
                if ortho_ok != Some(true) {
                    violations.push(OrthomodularViolation {
                        law: "orthomodularity Q = P ∨ (Q ∧ P')".into(),
                        witness: pair_witness("P", p.matrix(), "Q", q.matrix()),
                    });
                }
            }

            // orthogonality criterion: P ≤ Q' exactly when PQ = QP = 0
            let by_definition = p.leq(&q.complement());
            let by_products = p.product(q).is_zero() && q.product(p).is_zero();
            if by_definition != by_products {
                violations.push(OrthomodularViolation {
                    law: "P ⊥ Q iff PQ = QP = 0".into(),
                    witness: pair_witness("P", p.matrix(), "Q", q.matrix()),
                });
            }

            if by_products && i <= j {
                // orthogonal joins exist and equal P + Q
                let sum = p.matrix().add(q.matrix());
                match Projection::new(space, sum) {
                    Ok(join) => {
                        let mut ok = p.leq(&join) && q.leq(&join);
                        for (r, other) in projections.iter().enumerate() {
                            if is_above(&above, i, r) && is_above(&above, j, r) && !join.leq(other)
                            {
                                ok = false;
                            }
                        }
                        if !ok {
                            violations.push(OrthomodularViolation {
                                law: "orthogonal join P ∨ Q = P + Q".into(),
                                witness: pair_witness("P", p.matrix(), "Q", q.matrix()),
                            });
                        }
                    }
                    Err(_) => violations.push(OrthomodularViolation {
                        law: "orthogonal join P + Q is idempotent".into(),
                        witness: pair_witness("P", p.matrix(), "Q", q.matrix()),
                    }),
                }
            }
        }
    }

    OrthomodularReport {
        projection_count: count,
        pairs_checked,
        violations,
    }
}

// ---------------------------------------------------------------------------
// Idempotent enumeration and the meet-existence search.
//
// Small matrices (dim ≤ 8) are packed into a single u64, row r in byte r,
// so the scans over hundreds of thousands of candidates stay cheap.
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct SmallMat {
    dim: usize,
    bits: u64,
}

impl SmallMat {
    fn zero(dim: usize) -> Self {
        SmallMat { dim, bits: 0 }
    }

    fn row(&self, r: usize) -> u64 {
        (self.bits >> (8 * r)) & 0xff
    }

    /// Interpret bit r*dim+c of `dense` as entry (r, c).
    fn from_dense_bits(dim: usize, dense: u64) -> Self {
        let mut bits = 0u64;
        for r in 0..dim {
            let row = (dense >> (r * dim)) & ((1 << dim) - 1);
            bits |= row << (8 * r);
        }
        SmallMat { dim, bits }
    }

    fn from_columns(dim: usize, columns: &[u64]) -> Self {
        let mut bits = 0u64;
        for (c, col) in columns.iter().enumerate() {
            for r in 0..dim {
                if (col >> r) & 1 == 1 {
                    bits |= 1 << (8 * r + c);
                }
            }
        }
        SmallMat { dim, bits }
    }

    fn mul(&self, rhs: &SmallMat) -> SmallMat {
        let mut bits = 0u64;
        for r in 0..self.dim {
            let mut row = self.row(r);
            let mut acc = 0u64;
            while row != 0 {
                let c = row.trailing_zeros() as usize;
                row &= row - 1;
                acc ^= rhs.row(c);
            }
            bits |= acc << (8 * r);
        }
        SmallMat {
            dim: self.dim,
            bits,
        }
    }

    fn is_idempotent(&self) -> bool {
        self.mul(self) == *self
    }

    fn rank(&self) -> usize {
        let mut rows: Vec<u64> = (0..self.dim).map(|r| self.row(r)).collect();
        let mut rank = 0;
        for col in 0..self.dim {
            let Some(pivot) = (rank..rows.len()).find(|&r| (rows[r] >> col) & 1 == 1) else {
                continue;
            };
            rows.swap(rank, pivot);
            for r in 0..rows.len() {
                if r != rank && (rows[r] >> col) & 1 == 1 {
                    rows[r] ^= rows[rank];
                }
            }
            rank += 1;
        }
        rank
    }

    fn inverse(&self) -> Option<SmallMat> {
        let dim = self.dim;
        // augmented rows: low byte the matrix, high byte the inverse
        let mut rows: Vec<u64> = (0..dim).map(|r| self.row(r) | (1u64 << (8 + r))).collect();
        for col in 0..dim {
            let pivot = (col..dim).find(|&r| (rows[r] >> col) & 1 == 1)?;
            rows.swap(col, pivot);
            for r in 0..dim {
                if r != col && (rows[r] >> col) & 1 == 1 {
                    rows[r] ^= rows[col];
                }
            }
        }
        let mut bits = 0u64;
        for (r, row) in rows.iter().enumerate() {
            bits |= (row >> 8) << (8 * r);
        }
        Some(SmallMat { dim, bits })
    }

    fn leq(&self, other: &SmallMat) -> bool {
        self.mul(other) == *self && other.mul(self) == *self
    }

    fn to_gf2(self) -> Gf2Matrix {
        let mut m = Gf2Matrix::zeros(self.dim, self.dim);
        for r in 0..self.dim {
            for c in 0..self.dim {
                if (self.row(r) >> c) & 1 == 1 {
                    m.set(r, c, true);
                }
            }
        }
        m
    }
}

/// Brute-force enumeration of every idempotent dim×dim matrix by scanning
/// all 2^(dim²) candidates. Feasible only for dim ≤ 4.
fn brute_force_idempotents(dim: usize) -> Vec<SmallMat> {
    let total = 1u64 << (dim * dim);
    (0..total)
        .map(|dense| SmallMat::from_dense_bits(dim, dense))
        .filter(SmallMat::is_idempotent)
        .collect()
}

/// Enumeration of every idempotent by its image/kernel pair: the image
/// runs over reduced-echelon bases, the kernel over the complements of
/// the image, parametrized by a linear map from the coordinate complement
/// into the image. Each idempotent is produced exactly once.
fn subspace_idempotents(dim: usize) -> Vec<SmallMat> {
    let mut out = Vec::new();
    for pivot_mask in 0u32..(1 << dim) {
        let pivots: Vec<usize> = (0..dim).filter(|&c| (pivot_mask >> c) & 1 == 1).collect();
        let rank = pivots.len();
        let nonpivots: Vec<usize> = (0..dim).filter(|&c| (pivot_mask >> c) & 1 == 0).collect();
        // free entries of the echelon basis: non-pivot columns to the right
        // of each row's pivot
        let mut slots = Vec::new();
        for (row, &p) in pivots.iter().enumerate() {
            for &c in &nonpivots {
                if c > p {
                    slots.push((row, c));
                }
            }
        }
        for assignment in 0u64..(1 << slots.len()) {
            let mut image_basis: Vec<u64> = pivots.iter().map(|&p| 1u64 << p).collect();
            for (k, &(row, c)) in slots.iter().enumerate() {
                if (assignment >> k) & 1 == 1 {
                    image_basis[row] |= 1 << c;
                }
            }
            // kernel basis vectors e_c + (combination of image basis)
            let map_bits = rank * nonpivots.len();
            for mapping in 0u64..(1 << map_bits) {
                let mut columns: Vec<u64> = image_basis.clone();
                for (k, &c) in nonpivots.iter().enumerate() {
                    let mut w = 1u64 << c;
                    let coeffs = (mapping >> (k * rank)) & ((1 << rank) - 1);
                    for (t, &v) in image_basis.iter().enumerate() {
                        if (coeffs >> t) & 1 == 1 {
                            w ^= v;
                        }
                    }
                    columns.push(w);
                }
                let s = SmallMat::from_columns(dim, &columns);
                let s_inv = s.inverse().expect("image and kernel are complementary");
                let mut j = SmallMat::zero(dim);
                for t in 0..rank {
                    j.bits |= 1 << (8 * t + t);
                }
                out.push(s.mul(&j).mul(&s_inv));
            }
        }
    }
    out
}

const BRUTE_FORCE_DIM_CAP: usize = 4;
const ENUMERATION_DIM_CAP: usize = 6;

fn small_idempotents(dim: usize) -> Result<Vec<SmallMat>, ProjectionError> {
    if dim <= BRUTE_FORCE_DIM_CAP {
        Ok(brute_force_idempotents(dim))
    } else if dim <= ENUMERATION_DIM_CAP {
        Ok(subspace_idempotents(dim))
    } else {
        Err(ProjectionError::Capacity {
            dimension: dim,
            max: ENUMERATION_DIM_CAP,
        })
    }
}

/// Every idempotent dim×dim matrix over GF(2): brute force over all
/// 2^(dim²) matrices up to dim 4, image/kernel enumeration up to dim 6.
pub fn enumerate_idempotent_matrices(dim: usize) -> Result<Vec<Gf2Matrix>, ProjectionError> {
    Ok(small_idempotents(dim)?
        .into_iter()
        .map(SmallMat::to_gf2)
        .collect())
}

/// How [`lattice_search`] picks the pairs it examines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticeSearchMode {
    /// Every unordered pair of projections; capped at D ≤ 4 since it
    /// enumerates all 2^(D²) matrices.
    Exhaustive,
    /// `budget` pairs drawn from a seeded deterministic generator.
    Random { budget: usize, seed: u64 },
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct MeetCounterexample {
    pub p: String,
    pub q: String,
    /// The distinct maximal lower bounds that prevent a greatest one.
    pub maximal_lower_bounds: Vec<String>,
}

/// Outcome of a meet-existence scan. The verdict is evidence about the
/// examined pairs only, never a theorem about the whole poset.
#[derive(Debug, Clone, serde::Serialize)]
pub struct LatticeSearchReport {
    pub dimension: usize,
    pub projection_count: usize,
    pub mode: String,
    pub pairs_examined: usize,
    pub pairs_with_meet: usize,
    /// Every reported meet was re-verified to dominate the full lower-bound
    /// set of its pair.
    pub meets_verified_maximal: bool,
    /// For every examined commuting pair the meet equalled the product PQ.
    pub commuting_meets_equal_product: bool,
    pub counterexample: Option<MeetCounterexample>,
    pub verdict: String,
}

impl LatticeSearchReport {
    pub fn all_examined_pairs_have_meets(&self) -> bool {
        self.counterexample.is_none()
    }
}

impl fmt::Display for LatticeSearchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "lattice search at D={} over {} projections ({} mode)",
            self.dimension, self.projection_count, self.mode
        )?;
        writeln!(
            f,
            "pairs examined: {}, pairs with a meet: {}",
            self.pairs_examined, self.pairs_with_meet
        )?;
        if let Some(ce) = &self.counterexample {
            writeln!(f, "counterexample pair:\nP =\n{}\nQ =\n{}", ce.p, ce.q)?;
            writeln!(
                f,
                "maximal lower bounds ({}):",
                ce.maximal_lower_bounds.len()
            )?;
            for m in &ce.maximal_lower_bounds {
                writeln!(f, "{m}\n")?;
            }
        }
        write!(f, "verdict: {}", self.verdict)
    }
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

enum MeetOutcome {
    Found(usize),
    NotFound(Vec<usize>),
}

/// Decide whether the pair (p, q) has a greatest lower bound by scanning
/// every projection. A greatest element must carry maximal rank among the
/// lower bounds and be unique there, so the max-rank candidates settle it.
fn meet_of(mats: &[SmallMat], ranks: &[usize], p: usize, q: usize) -> MeetOutcome {
    let mut lower: Vec<usize> = Vec::new();
    for (r, m) in mats.iter().enumerate() {
        if m.leq(&mats[p]) && m.leq(&mats[q]) {
            lower.push(r);
        }
    }
    let top_rank = lower
        .iter()
        .map(|&r| ranks[r])
        .max()
        .expect("zero is a lower bound");
    let candidates: Vec<usize> = lower
        .iter()
        .copied()
        .filter(|&r| ranks[r] == top_rank)
        .collect();
    if candidates.len() != 1 {
        return MeetOutcome::NotFound(maximal_elements(mats, &lower));
    }
    let m = candidates[0];
    if lower.iter().all(|&r| mats[r].leq(&mats[m])) {
        MeetOutcome::Found(m)
    } else {
        MeetOutcome::NotFound(maximal_elements(mats, &lower))
    }
}

fn maximal_elements(mats: &[SmallMat], lower: &[usize]) -> Vec<usize> {
    lower
        .iter()
        .copied()
        .filter(|&r| {
            lower
                .iter()
                .all(|&s| s == r || !mats[r].leq(&mats[s]) || mats[r] == mats[s])
        })
        .collect()
}

/// Scan pairs of projections for greatest lower bounds. Exhaustive mode
/// decides every pair at D ≤ 4; random mode samples pairs with a
/// deterministic seed and still decides each sampled pair by a scan over
/// all projections of the dimension.
pub fn lattice_search(
    space: OutcomeSpace,
    mode: LatticeSearchMode,
) -> Result<LatticeSearchReport, ProjectionError> {
    let dim = space.dimension();
    if let LatticeSearchMode::Exhaustive = mode {
        if dim > BRUTE_FORCE_DIM_CAP {
            return Err(ProjectionError::Capacity {
                dimension: dim,
                max: BRUTE_FORCE_DIM_CAP,
            });
        }
    }
    let mats = small_idempotents(dim)?;
    let ranks: Vec<usize> = mats.iter().map(SmallMat::rank).collect();
    let count = mats.len();

    let pairs: Vec<(usize, usize)> = match mode {
        LatticeSearchMode::Exhaustive => (0..count)
            .flat_map(|i| (i..count).map(move |j| (i, j)))
            .collect(),
        LatticeSearchMode::Random { budget, seed } => {
            let mut state = seed;
            (0..budget)
                .map(|_| {
                    let i = (splitmix64(&mut state) % count as u64) as usize;
                    let j = (splitmix64(&mut state) % count as u64) as usize;
                    (i, j)
                })
                .collect()
        }
    };

    let mut pairs_with_meet = 0;
    let mut meets_verified_maximal = true;
    let mut commuting_meets_equal_product = true;
    let mut counterexample = None;
    for &(i, j) in &pairs {
        match meet_of(&mats, &ranks, i, j) {
            MeetOutcome::Found(m) => {
                pairs_with_meet += 1;
                if mats[i].mul(&mats[j]) == mats[j].mul(&mats[i])
                    && mats[m] != mats[i].mul(&mats[j])
                {
                    commuting_meets_equal_product = false;
                }
                // maximality was verified against the full lower-bound set
                // inside meet_of; a broken meet would have been NotFound
                if !(mats[m].leq(&mats[i]) && mats[m].leq(&mats[j])) {
                    meets_verified_maximal = false;
                }
            }
            MeetOutcome::NotFound(maximals) => {
                if counterexample.is_none() {
                    counterexample = Some(MeetCounterexample {
                        p: mats[i].to_gf2().to_string(),
                        q: mats[j].to_gf2().to_string(),
                        maximal_lower_bounds: maximals
                            .iter()
                            .map(|&r| mats[r].to_gf2().to_string())
                            .collect(),
                    });
                }
            }
        }
    }

    let pairs_examined = pairs.len();
    let verdict = if pairs_examined == 0 {
        "no pairs examined".to_string()
    } else if counterexample.is_none() {
        format!("all examined pairs have meets (verified at D={dim})")
    } else {
        format!("found a pair with no greatest lower bound (verified at D={dim})")
    };
    Ok(LatticeSearchReport {
        dimension: dim,
        projection_count: count,
        mode: match mode {
            LatticeSearchMode::Exhaustive => "exhaustive".to_string(),
            LatticeSearchMode::Random { budget, seed } => {
                format!("random(budget={budget}, seed={seed})")
            }
        },
        pairs_examined,
        pairs_with_meet,
        meets_verified_maximal,
        commuting_meets_equal_product,
        counterexample,
        verdict,
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

    fn mat(s: &str) -> Gf2Matrix {
        s.parse().unwrap()
    }

    const P1_N2: &str = "100\n000\n011";
    const P2_N2: &str = "000\n010\n101";
    const P1P2_N2: &str = "000\n000\n111";

    #[test]
    fn generator_matrices_match_the_fixed_fixtures() {
        let obs = MasterObservable::new(space(2));
        assert_eq!(obs.generator(1).matrix(), &mat(P1_N2));
        assert_eq!(obs.generator(2).matrix(), &mat(P2_N2));
        let product = obs
            .generator(1)
            .matrix()
            .mul(obs.generator(2).matrix())
            .unwrap();
        assert_eq!(product, mat(P1P2_N2));
    }

    #[test]
    fn generator_sum_is_identity_at_n2() {
        let obs = MasterObservable::new(space(2));
        let sum = obs
            .generator(1)
            .matrix()
            .add(obs.generator(2).matrix())
            .add(&mat(P1P2_N2));
        assert_eq!(sum, Gf2Matrix::identity(3));
    }

    #[test]
    fn noncommuting_pair_example() {
        let sp = space(2);
        let q = Projection::new(sp, mat("100\n000\n000")).unwrap();
        let p2 = MasterObservable::new(sp).generator(2);
        let qp = q.matrix().mul(p2.matrix()).unwrap();
        assert!(qp.is_zero());
        let pq = p2.matrix().mul(q.matrix()).unwrap();
        assert_eq!(pq, mat("000\n000\n100"));
        let rel = q.relations(&p2);
        assert!(!rel.commute);
        assert!(!rel.compatible);
        assert!(!rel.orthogonal);
        assert!(p2.meet_join(&q).is_err());
    }

    #[test]
    fn make_projection_validates_idempotence() {
        let sp = space(2);
        assert!(Projection::new(sp, Gf2Matrix::identity(3)).is_ok());
        assert!(Projection::new(sp, mat(P1_N2)).is_ok());
        // E12 is nilpotent, not idempotent
        let e12 = mat("010\n000\n000");
        assert_eq!(
            Projection::new(sp, e12),
            Err(ProjectionError::NotIdempotent { witness_column: 1 })
        );
        assert!(matches!(
            Projection::new(sp, Gf2Matrix::zeros(2, 3)),
            Err(ProjectionError::WrongShape { expected: 3, .. })
        ));
    }

    #[test]
    fn relations_of_the_two_generators() {
        let obs = MasterObservable::new(space(2));
        let rel = obs.generator(1).relations(&obs.generator(2));
        assert!(rel.commute && rel.compatible);
        assert!(!rel.orthogonal);
        assert!(!rel.leq && !rel.geq);
        let self_rel = obs.generator(1).relations(&obs.generator(1));
        assert!(self_rel.leq && self_rel.geq && self_rel.compatible);
    }

    #[test]
    fn complement_examples() {
        let sp = space(2);
        assert_eq!(Projection::zero(sp).complement(), Projection::identity(sp));
        assert_eq!(Projection::identity(sp).complement(), Projection::zero(sp));
        let p1 = MasterObservable::new(sp).generator(1);
        assert_eq!(p1.complement().matrix(), &mat("000\n010\n010"));
        assert_eq!(p1.complement().complement(), p1);
    }

    #[test]
    fn meet_join_of_commuting_pairs() {
        let sp = space(2);
        let obs = MasterObservable::new(sp);
        let (meet, join) = obs.generator(1).meet_join(&obs.generator(2)).unwrap();
        assert_eq!(meet.matrix(), &mat(P1P2_N2));
        assert!(join.is_identity());

        let p = obs.generator(1);
        let (meet, join) = p.meet_join(&Projection::zero(sp)).unwrap();
        assert!(meet.is_zero());
        assert_eq!(join, p);
    }

    #[test]
    fn compatibility_decomposition_examples() {
        let sp = space(2);
        let obs = MasterObservable::new(sp);
        let p = obs.generator(1);
        let q = obs.generator(2);
        let (p1, q1, r) = p.compatibility_decomposition(&q).unwrap();
        assert_eq!(r.matrix(), &mat(P1P2_N2));
        assert_eq!(p1.matrix(), &p.matrix().add(r.matrix()));
        assert_eq!(q1.matrix(), &q.matrix().add(r.matrix()));
        for (a, b) in [(&p1, &q1), (&p1, &r), (&q1, &r)] {
            assert!(a.relations(b).orthogonal);
        }
        let (back_p, _) = p1.meet_join(&r).map(|(_, j)| (j, ())).unwrap();
        assert_eq!(back_p, p);

        let (p1, q1, r) = p.compatibility_decomposition(&p).unwrap();
        assert!(p1.is_zero() && q1.is_zero());
        assert_eq!(r, p);

        let (p1, q1, r) = p
            .compatibility_decomposition(&Projection::zero(sp))
            .unwrap();
        assert_eq!(p1, p);
        assert!(q1.is_zero() && r.is_zero());
    }

    #[test]
    fn master_projection_examples() {
        let sp = space(2);
        let obs = MasterObservable::new(sp);
        assert_eq!(obs.projection(ev(2, &[1])), obs.generator(1));
        assert!(obs.projection(sp.empty_event()).is_zero());
        assert!(obs.projection(sp.full_event()).is_identity());
        for n in 1..=4 {
            let sp = space(n);
            assert!(MasterObservable::new(sp)
                .projection(sp.full_event())
                .is_identity());
        }
    }

    #[test]
    fn master_projection_expands_as_the_generator_sum() {
        let sp = space(3);
        let obs = MasterObservable::new(sp);
        let mut expected = Gf2Matrix::zeros(6, 6);
        for i in 1..=3 {
            expected = expected.add(obs.generator(i).matrix());
        }
        for i in 1..=3usize {
            for j in (i + 1)..=3 {
                expected = expected.add(
                    &obs.generator(i)
                        .matrix()
                        .mul(obs.generator(j).matrix())
                        .unwrap(),
                );
            }
        }
        assert_eq!(obs.projection(sp.full_event()).matrix(), &expected);
    }

    #[test]
    fn master_projection_rank_drop_at_n3() {
        let obs = MasterObservable::new(space(3));
        let p = obs.projection(ev(3, &[1, 2]));
        assert_eq!(p.matrix().rank(), 5);
        let null = p.matrix().null_space_basis();
        assert_eq!(null.len(), 1);
        let phi = Coevent::from_vector(space(3), &null[0]);
        assert_eq!(phi.to_string(), "w3* + w1*w3* + w2*w3*");
    }

    #[test]
    fn observable_examples() {
        let sp = space(3);
        let obs = MasterObservable::new(sp);
        let f = RandomVariable::new(sp, vec![5.0, 5.0, 5.0]).unwrap();
        assert!(obs.observable(&f, &[5.0]).is_identity());
        assert!(obs.observable(&f, &[7.0]).is_zero());
        let g = RandomVariable::new(sp, vec![1.0, 1.0, 2.0]).unwrap();
        assert_eq!(obs.observable(&g, &[1.0]), obs.projection(ev(3, &[1, 2])));
    }

    #[test]
    fn random_variable_validation() {
        assert!(RandomVariable::new(space(2), vec![1.0]).is_err());
        assert!(RandomVariable::new(space(2), vec![1.0, f64::NAN]).is_err());
    }

    #[test]
    fn idempotent_enumeration_counts() {
        assert_eq!(enumerate_idempotent_matrices(1).unwrap().len(), 2);
        assert_eq!(enumerate_idempotent_matrices(3).unwrap().len(), 58);
        assert!(matches!(
            enumerate_idempotent_matrices(7),
            Err(ProjectionError::Capacity {
                dimension: 7,
                max: 6
            })
        ));
    }

    #[test]
    fn subspace_enumeration_agrees_with_brute_force() {
        for dim in 1..=4 {
            let brute: std::collections::HashSet<u64> = brute_force_idempotents(dim)
                .into_iter()
                .map(|m| m.bits)
                .collect();
            let by_subspace: std::collections::HashSet<u64> = subspace_idempotents(dim)
                .into_iter()
                .map(|m| m.bits)
                .collect();
            assert_eq!(brute, by_subspace, "mismatch at dim {dim}");
            assert_eq!(
                brute.len(),
                subspace_idempotents(dim).len(),
                "duplicates at dim {dim}"
            );
        }
    }

    #[test]
    fn orthomodular_check_on_small_families() {
        let sp = space(2);
        let report = verify_orthomodular(&[Projection::zero(sp), Projection::identity(sp)]);
        assert!(report.passed(), "{report}");

        let obs = MasterObservable::new(sp);
        let (meet, _) = obs.generator(1).meet_join(&obs.generator(2)).unwrap();
        let family = vec![
            obs.generator(1),
            obs.generator(2),
            meet,
            Projection::zero(sp),
            Projection::identity(sp),
        ];
        let report = verify_orthomodular(&family);
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn lattice_search_exhaustive_at_d3_is_deterministic() {
        let first = lattice_search(space(2), LatticeSearchMode::Exhaustive).unwrap();
        let second = lattice_search(space(2), LatticeSearchMode::Exhaustive).unwrap();
        assert_eq!(first.verdict, second.verdict);
        assert_eq!(first.pairs_with_meet, second.pairs_with_meet);
        assert_eq!(first.projection_count, 58);
        assert!(first.meets_verified_maximal);
        assert!(first.commuting_meets_equal_product);
    }

    #[test]
    fn lattice_search_random_mode() {
        let empty =
            lattice_search(space(2), LatticeSearchMode::Random { budget: 0, seed: 1 }).unwrap();
        assert_eq!(empty.pairs_examined, 0);
        assert_eq!(empty.verdict, "no pairs examined");

        let a = lattice_search(
            space(2),
            LatticeSearchMode::Random {
                budget: 20,
                seed: 7,
            },
        )
        .unwrap();
        let b = lattice_search(
            space(2),
            LatticeSearchMode::Random {
                budget: 20,
                seed: 7,
            },
        )
        .unwrap();
        assert_eq!(a.pairs_with_meet, b.pairs_with_meet);
        assert_eq!(a.verdict, b.verdict);
    }

    #[test]
    fn lattice_search_capacity() {
        assert!(matches!(
            lattice_search(space(3), LatticeSearchMode::Exhaustive),
            Err(ProjectionError::Capacity {
                dimension: 6,
                max: 4
            })
        ));
        assert!(matches!(
            lattice_search(space(4), LatticeSearchMode::Random { budget: 1, seed: 0 }),
            Err(ProjectionError::Capacity {
                dimension: 10,
                max: 6
            })
        ));
    }

    #[test]
    fn pair_from_index_inverts_pair_index() {
        for n in 2..=6 {
            let sp = space(n);
            for i in 1..=n {
                for j in (i + 1)..=n {
                    let idx = pair_index(sp, i, j).unwrap();
                    assert_eq!(pair_from_index(n, idx), (i, j));
                }
            }
        }
    }
}
