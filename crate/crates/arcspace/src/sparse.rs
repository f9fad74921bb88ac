//! Exact rational sparse linear algebra.
//!
//! Everything downstream (Hilbert oracles, Koszul boundaries, DGA
//! differentials) reduces to rank / kernel / quotient-basis computations
//! over the rationals, performed here by plain Gaussian elimination on
//! sparse rows.  All values are immutable after construction.

use std::collections::BTreeMap;

use num::{BigRational, Zero};

/// The universal scalar: an arbitrary-precision exact fraction.
///
/// `num::BigRational` maintains the invariants we need: the fraction is
/// always reduced, the denominator positive and zero is `0/1`.
pub type Rational = BigRational;

/// Shorthand for an integer rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Shorthand for `n/d`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// A sparse vector: column index to nonzero entry.
pub type SparseVec = BTreeMap<usize, Rational>;

/// Builds a sparse vector from (index, value) pairs, dropping zeros.
pub fn sparse_vec<I: IntoIterator<Item = (usize, Rational)>>(entries: I) -> SparseVec {
    let mut v = SparseVec::new();
    for (i, x) in entries {
        if !x.is_zero() {
            let e = v.entry(i).or_insert_with(Rational::zero);
            *e += x;
            if e.is_zero() {
                v.remove(&i);
            }
        }
    }
    v
}

/// `v += c * w`
pub fn axpy(v: &mut SparseVec, c: &Rational, w: &SparseVec) {
    if c.is_zero() {
        return;
    }
    for (i, x) in w {
        let e = v.entry(*i).or_insert_with(Rational::zero);
        *e += c * x;
        if e.is_zero() {
            v.remove(i);
        }
    }
}

/// A sparse matrix over the rationals.
///
/// Entries are deduplicated on construction; zeros are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    /// Row-major storage: one sparse vector per row.
    row_data: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<(usize, usize, Rational)>) -> Self {
        let mut row_data = vec![SparseVec::new(); rows];
        for (r, c, x) in entries {
            assert!(r < rows && c < cols, "entry ({r},{c}) out of bounds");
            if !x.is_zero() {
                let e = row_data[r].entry(c).or_insert_with(Rational::zero);
                *e += x;
                if e.is_zero() {
                    row_data[r].remove(&c);
                }
            }
        }
        SparseMatrix { rows, cols, row_data }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, row_data: vec![SparseVec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let entries = (0..n).map(|i| (i, i, rat_int(1))).collect();
        SparseMatrix::new(n, n, entries)
    }

    pub fn from_rows(cols: usize, rows: Vec<SparseVec>) -> Self {
        for r in &rows {
            if let Some((last, _)) = r.iter().next_back() {
                assert!(*last < cols);
            }
        }
        SparseMatrix { rows: rows.len(), cols, row_data: rows }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &SparseVec {
        &self.row_data[r]
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut row_data = vec![SparseVec::new(); self.cols];
        for (r, row) in self.row_data.iter().enumerate() {
            for (c, x) in row {
                row_data[*c].insert(r, x.clone());
            }
        }
        SparseMatrix { rows: self.cols, cols: self.rows, row_data }
    }

    /// Matrix-vector product `self * v` (v dense-indexed by column).
    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (r, row) in self.row_data.iter().enumerate() {
            let mut s = Rational::zero();
            for (c, x) in row {
                if let Some(y) = v.get(c) {
                    s += x * y;
                }
            }
            if !s.is_zero() {
                out.insert(r, s);
            }
        }
        out
    }

    /// The dimension of the row space over the rationals.
    pub fn rank(&self) -> usize {
        let mut ech = Echelon::new();
        for row in &self.row_data {
            ech.insert(row.clone());
        }
        ech.rank()
    }

    /// A basis of `{ v : self * v = 0 }`.
    ///
    /// The returned vectors are linearly independent and their count is
    /// `cols - rank`.
    pub fn kernel_basis(&self) -> Vec<SparseVec> {
        // Full reduced row echelon form, then back-substitution per free column.
        let mut ech = Echelon::new();
        for row in &self.row_data {
            ech.insert(row.clone());
        }
        let rref = ech.into_rref();
        let pivot_cols: Vec<usize> = rref.keys().copied().collect();
        let is_pivot = |c: usize| rref.contains_key(&c);
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot(free) {
                continue;
            }
            let mut v = SparseVec::new();
            v.insert(free, rat_int(1));
            for p in &pivot_cols {
                if let Some(x) = rref[p].get(&free) {
                    v.insert(*p, -x.clone());
                }
            }
            basis.push(v);
        }
        basis
    }
}

/// Incremental row echelon form: pivot column -> normalized row.
///
/// Rows are scaled so the pivot entry is 1.  Insertion reduces against
/// existing pivots only (not full RREF); `into_rref` finishes the job.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    pivots: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon::default()
    }

    pub fn from_rows<I: IntoIterator<Item = SparseVec>>(rows: I) -> Self {
        let mut e = Echelon::new();
        for r in rows {
            e.insert(r);
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `v` against the stored pivot rows in place.
    pub fn reduce(&self, v: &mut SparseVec) {
        loop {
            let hit = v
                .iter()
                .find(|(c, _)| self.pivots.contains_key(c))
                .map(|(c, x)| (*c, x.clone()));
            match hit {
                None => return,
                Some((c, x)) => {
                    let coeff = -x;
                    axpy(v, &coeff, &self.pivots[&c]);
                }
            }
        }
    }

    /// Reduces `v` and, if nonzero, adds it as a new pivot row.
    /// Returns the pivot column when the rank grew.
    pub fn insert(&mut self, mut v: SparseVec) -> Option<usize> {
        self.reduce(&mut v);
        let (&c, x) = v.iter().next()?;
        let inv = x.clone().recip();
        let row = sparse_vec(v.iter().map(|(i, y)| (*i, y * &inv)));
        self.pivots.insert(c, row);
        Some(c)
    }

    /// Finishes reduction so each pivot row has zeros in all other pivot
    /// columns, and returns the map pivot column -> row.
    pub fn into_rref(mut self) -> BTreeMap<usize, SparseVec> {
        let cols: Vec<usize> = self.pivots.keys().copied().collect();
        // Reduce upward: later pivots eliminate entries in earlier rows.
        for i in (0..cols.len()).rev() {
            let lower = self.pivots.split_off(&(cols[i] + 1));
            for row in self.pivots.values_mut() {
                for (c, sub) in &lower {
                    if let Some(x) = row.get(c).cloned() {
                        let coeff = -x;
                        axpy(row, &coeff, sub);
                    }
                }
            }
            self.pivots.extend(lower);
        }
        self.pivots
    }
}

/// A basis of `span(vectors)` modulo `span(span)`.
///
/// Each returned vector is a reduced representative of a quotient basis
/// element; the count is `dim(span(vectors) + span(span)) - dim span(span)`.
pub fn row_reduce_against(vectors: &[SparseVec], span: &[SparseVec]) -> Vec<SparseVec> {
    let denom = Echelon::from_rows(span.iter().cloned());
    let mut quotient = Echelon::new();
    let mut basis = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        denom.reduce(&mut w);
        quotient.reduce(&mut w);
        if !w.is_empty() {
            basis.push(w.clone());
            quotient.insert(w);
        }
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: usize, cols: usize, data: &[(usize, usize, i64)]) -> SparseMatrix {
        SparseMatrix::new(
            rows,
            cols,
            data.iter().map(|(r, c, x)| (*r, *c, rat_int(*x))).collect(),
        )
    }

    fn e(i: usize) -> SparseVec {
        sparse_vec([(i, rat_int(1))])
    }

    #[test]
    fn rank_zero_matrix() {
        assert_eq!(SparseMatrix::zero(3, 3).rank(), 0);
    }

    #[test]
    fn rank_identity() {
        assert_eq!(SparseMatrix::identity(4).rank(), 4);
    }

    #[test]
    fn rank_dependent_rows() {
        // [[1,2],[2,4]] has rank 1 by hand Gaussian elimination.
        let a = m(2, 2, &[(0, 0, 1), (0, 1, 2), (1, 0, 2), (1, 1, 4)]);
        assert_eq!(a.rank(), 1);
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        assert!(SparseMatrix::identity(3).kernel_basis().is_empty());
    }

    #[test]
    fn kernel_of_zero_map() {
        let basis = SparseMatrix::zero(2, 3).kernel_basis();
        assert_eq!(basis.len(), 3);
        assert_eq!(Echelon::from_rows(basis).rank(), 3);
    }

    #[test]
    fn kernel_of_single_row() {
        let a = m(1, 3, &[(0, 0, 1), (0, 1, 1)]);
        let basis = a.kernel_basis();
        assert_eq!(basis.len(), 2);
        for v in &basis {
            assert!(a.apply(v).is_empty());
        }
        assert_eq!(Echelon::from_rows(basis).rank(), 2);
    }

    #[test]
    fn quotient_by_same_vector() {
        assert!(row_reduce_against(&[e(0)], &[e(0)]).is_empty());
    }

    #[test]
    fn quotient_dimension_count() {
        // span{e1,e2} mod span{e1+e2} has dimension 1.
        let s = sparse_vec([(0, rat_int(1)), (1, rat_int(1))]);
        assert_eq!(row_reduce_against(&[e(0), e(1)], &[s]).len(), 1);
    }

    #[test]
    fn quotient_of_empty_input() {
        assert!(row_reduce_against(&[], &[e(2)]).is_empty());
    }

    fn arb_matrix() -> impl Strategy<Value = SparseMatrix> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
            proptest::collection::vec((0..r, 0..c, -4i64..5), 0..12)
                .prop_map(move |es| m(r, c, &es))
        })
    }

    proptest! {
        #[test]
        fn rank_equals_transpose_rank(a in arb_matrix()) {
            prop_assert_eq!(a.rank(), a.transpose().rank());
        }

        #[test]
        fn rank_plus_nullity(a in arb_matrix()) {
            let basis = a.kernel_basis();
            prop_assert_eq!(basis.len() + a.rank(), a.cols());
            for v in &basis {
                prop_assert!(a.apply(v).is_empty());
            }
        }

        #[test]
        fn rank_invariant_under_scaling_and_permutation(a in arb_matrix(), seed in 0u64..1000) {
            let mut rows: Vec<SparseVec> = (0..a.rows()).map(|r| a.row(r).clone()).collect();
            // Deterministic pseudo-shuffle + scale by nonzero rationals.
            let n = rows.len();
            for i in 0..n {
                let j = ((seed as usize) * 31 + i * 17) % n;
                rows.swap(i, j);
            }
            let scaled: Vec<SparseVec> = rows
                .into_iter()
                .enumerate()
                .map(|(i, r)| {
                    let c = rat(1 + (i as i64 % 3), 1 + ((seed as i64 + i as i64) % 4));
                    sparse_vec(r.into_iter().map(|(k, x)| (k, x * &c)))
                })
                .collect();
            prop_assert_eq!(SparseMatrix::from_rows(a.cols(), scaled).rank(), a.rank());
        }
    }
}
