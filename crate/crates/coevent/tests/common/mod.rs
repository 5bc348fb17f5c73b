//! Naive reference implementations used as independent oracles.
//!
//! Everything here recomputes results straight from definitions with
//! unpacked `Vec<Vec<bool>>` matrices and closure-style truth functions,
//! sharing no code with the library kernels it checks.

#![allow(dead_code)]

/// Dense boolean matrix.
pub type BoolMat = Vec<Vec<bool>>;

pub fn zeros(rows: usize, cols: usize) -> BoolMat {
    vec![vec![false; cols]; rows]
}

pub fn identity(n: usize) -> BoolMat {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = true;
    }
    m
}

pub fn mat_mul(a: &BoolMat, b: &BoolMat) -> BoolMat {
    let rows = a.len();
    let inner = b.len();
    let cols = b[0].len();
    let mut out = zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            let mut acc = false;
            for k in 0..inner {
                acc ^= a[i][k] && b[k][j];
            }
            out[i][j] = acc;
        }
    }
    out
}

pub fn mat_add(a: &BoolMat, b: &BoolMat) -> BoolMat {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x ^ y).collect())
        .collect()
}

pub fn is_idempotent(m: &BoolMat) -> bool {
    mat_mul(m, m) == *m
}

/// Rank by plain Gaussian elimination.
pub fn rank(m: &BoolMat) -> usize {
    if m.is_empty() {
        return 0;
    }
    let mut rows = m.clone();
    let cols = rows[0].len();
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col]) else {
            continue;
        };
        rows.swap(rank, pivot);
        for r in 0..rows.len() {
            if r != rank && rows[r][col] {
                let pivot_row = rows[rank].clone();
                for (entry, p) in rows[r].iter_mut().zip(&pivot_row) {
                    *entry ^= p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Null-space dimension = cols − rank.
pub fn nullity(m: &BoolMat) -> usize {
    if m.is_empty() {
        0
    } else {
        m[0].len() - rank(m)
    }
}

// ---------------------------------------------------------------------
// Truth functions as value tables indexed by event mask.
// ---------------------------------------------------------------------

/// A truth function on an n-outcome space: `values[mask]` is φ(A) for the
/// event with that bit mask.
#[derive(Clone, Debug, PartialEq)]
pub struct NaiveTable {
    pub n: usize,
    pub values: Vec<bool>,
}

impl NaiveTable {
    pub fn from_fn(n: usize, f: impl Fn(u32) -> bool) -> Self {
        let values = (0..(1u32 << n)).map(|mask| mask != 0 && f(mask)).collect();
        NaiveTable { n, values }
    }

    pub fn get(&self, mask: u32) -> bool {
        self.values[mask as usize]
    }

    pub fn full(&self) -> u32 {
        (1 << self.n) - 1
    }
}

/// Unitality: φ(Ω) = 1.
pub fn naive_unital(t: &NaiveTable) -> bool {
    t.get(t.full())
}

/// Additivity over *all* pairs via the symmetric difference: the raw
/// definition, deliberately not the disjoint-pair reduction.
pub fn naive_additive(t: &NaiveTable) -> bool {
    let full = t.full();
    for a in 0..=full {
        for b in 0..=full {
            if t.get(a ^ b) != (t.get(a) ^ t.get(b)) {
                return false;
            }
        }
    }
    true
}

pub fn naive_multiplicative(t: &NaiveTable) -> bool {
    let full = t.full();
    for a in 0..=full {
        for b in 0..=full {
            if t.get(a & b) != (t.get(a) && t.get(b)) {
                return false;
            }
        }
    }
    true
}

/// Grade-2 additivity over every mutually disjoint triple, including
/// empty parts.
pub fn naive_grade2(t: &NaiveTable) -> bool {
    let full = t.full();
    for a in 0..=full {
        for b in 0..=full {
            if a & b != 0 {
                continue;
            }
            for c in 0..=full {
                if c & (a | b) != 0 {
                    continue;
                }
                let lhs = t.get(a | b | c);
                let rhs =
                    t.get(a | b) ^ t.get(a | c) ^ t.get(b | c) ^ t.get(a) ^ t.get(b) ^ t.get(c);
                if lhs != rhs {
                    return false;
                }
            }
        }
    }
    true
}

/// m-point interference of a tuple of distinct outcomes (1-based).
pub fn naive_interference(t: &NaiveTable, outcomes: &[usize]) -> bool {
    let mut mask = 0u32;
    let mut acc = false;
    for &i in outcomes {
        mask |= 1 << (i - 1);
        acc ^= t.get(1 << (i - 1));
    }
    acc ^ t.get(mask)
}

/// The two-point interference condition over every subset of size ≥ 2.
pub fn naive_two_point(t: &NaiveTable) -> bool {
    let full = t.full();
    for mask in 0..=full {
        if mask.count_ones() < 2 {
            continue;
        }
        let members: Vec<usize> = (1..=t.n).filter(|&i| (mask >> (i - 1)) & 1 == 1).collect();
        let m_point = naive_interference(t, &members);
        let mut pair_sum = false;
        for (k, &i) in members.iter().enumerate() {
            for &j in &members[k + 1..] {
                pair_sum ^= naive_interference(t, &[i, j]);
            }
        }
        if m_point != pair_sum {
            return false;
        }
    }
    true
}

// ---------------------------------------------------------------------
// Polynomials in containment maps, kept as explicit monomial lists.
// ---------------------------------------------------------------------

/// Evaluate a sum of monomials at an event: each monomial is a set of
/// outcome indices and contributes the product of its containment values.
pub fn naive_poly_eval(monomials: &[Vec<usize>], mask: u32) -> bool {
    let mut acc = false;
    for monomial in monomials {
        acc ^= monomial.iter().all(|&i| (mask >> (i - 1)) & 1 == 1);
    }
    acc
}

// ---------------------------------------------------------------------
// The master projection from its basis action, written down directly:
//   w_k*       -> w_k*                       if k ∈ A
//   w_k*       -> Σ_{i∈A} w_i* w_k*          if k ∉ A
//   w_k* w_l*  -> w_k* w_l*                  if A ∩ {k,l} ≠ ∅, else 0
// This route never forms the generator sum the library uses.
// ---------------------------------------------------------------------

/// Index of basis element w_i* (1-based outcome) in the fixed order.
pub fn linear_pos(i: usize) -> usize {
    i - 1
}

/// Index of basis element w_i*w_j* (1-based, i < j) in the fixed order.
pub fn quad_pos(n: usize, i: usize, j: usize) -> usize {
    let (lo, hi) = if i < j { (i, j) } else { (j, i) };
    let (lo0, hi0) = (lo - 1, hi - 1);
    n + lo0 * (2 * n - lo0 - 1) / 2 + (hi0 - lo0 - 1)
}

pub fn naive_master_matrix(n: usize, a_mask: u32) -> BoolMat {
    let d = n * (n + 1) / 2;
    let in_a = |k: usize| (a_mask >> (k - 1)) & 1 == 1;
    let mut m = zeros(d, d);
    for k in 1..=n {
        let col = linear_pos(k);
        if in_a(k) {
            m[col][col] = true;
        } else {
            for i in 1..=n {
                if in_a(i) {
                    m[quad_pos(n, i, k)][col] = true;
                }
            }
        }
    }
    for k in 1..=n {
        for l in (k + 1)..=n {
            let col = quad_pos(n, k, l);
            if in_a(k) || in_a(l) {
                m[col][col] = true;
            }
        }
    }
    m
}
