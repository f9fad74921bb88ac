//! Cohomology of configuration spaces of an elliptic curve via the
//! differential graded algebra `H•(Xⁿ) ⊗ Λ[G_{ij}]` with `dG_{ij} = Δ_{ij}`,
//! modulo the Arnold three-term relations and the pair relations
//! `(π_i(x) − π_j(x))·G_{ij}`.
//!
//! Everything lives in one exterior algebra over Q on the odd degree-1
//! generators `a_1, b_1, …, a_n, b_n` and `G_{ij}` (i < j); the degree-2
//! point class is `p_i = a_i∧b_i`.  Monomials are bitmasks; signs come from
//! inversion counts.
//!
//! The quotient algebra has an explicit monomial basis: products of
//! `G_{ij}` whose larger endpoints are pairwise distinct, times curve
//! classes on the factors that are not larger endpoints.  Arbitrary
//! elements reduce to this basis by a terminating rewriting procedure
//! (Arnold relations lower duplicated endpoints, pair relations move
//! labels off endpoints); the claimed basis is cross-validated against a
//! direct linear-algebra quotient for small n in the test suite.

use std::collections::BTreeMap;

use num::Zero;
use serde::{Deserialize, Serialize};

use crate::sparse::{rat_int, Rational, SparseMatrix, SparseVec};
use crate::{Error, Result};

pub const DEFAULT_LIMIT: usize = 4;

type Mask = u32;

/// An element of the ambient exterior algebra for `n` factors.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DgaElement {
    pub terms: BTreeMap<Mask, Rational>,
}

fn bit_a(i: usize) -> u32 {
    (2 * (i - 1)) as u32
}

fn bit_b(i: usize) -> u32 {
    (2 * (i - 1) + 1) as u32
}

/// Position of G_{ij} (1 ≤ i < j ≤ n) among the G generators, ordered
/// lexicographically.
fn g_index(n: usize, i: usize, j: usize) -> u32 {
    debug_assert!(1 <= i && i < j && j <= n);
    let mut idx = 0;
    for a in 1..i {
        idx += n - a;
    }
    (idx + (j - i - 1)) as u32
}

fn bit_g(n: usize, i: usize, j: usize) -> u32 {
    2 * n as u32 + g_index(n, i, j)
}

fn g_pair(n: usize, idx: u32) -> (usize, usize) {
    let mut idx = idx as usize;
    for i in 1..n {
        let row = n - i;
        if idx < row {
            return (i, i + 1 + idx);
        }
        idx -= row;
    }
    unreachable!("G index out of range");
}

/// Sign of sorting the concatenation m1·m2 (monomials are wedges in
/// ascending bit order): parity of pairs (x ∈ m1, y ∈ m2) with x > y.
fn merge_sign(m1: Mask, m2: Mask) -> i64 {
    let mut sign = 1i64;
    let mut rest = m2;
    while rest != 0 {
        let b = rest.trailing_zeros();
        if (m1 >> (b + 1)).count_ones() % 2 == 1 {
            sign = -sign;
        }
        rest &= rest - 1;
    }
    sign
}

impl DgaElement {
    pub fn zero() -> Self {
        DgaElement::default()
    }

    pub fn monomial(mask: Mask) -> Self {
        DgaElement { terms: [(mask, rat_int(1))].into_iter().collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, mask: Mask) -> Rational {
        self.terms.get(&mask).cloned().unwrap_or_else(|| rat_int(0))
    }

    pub fn add_term(&mut self, mask: Mask, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(mask).or_insert_with(|| rat_int(0));
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&mask);
        }
    }

    pub fn add(&self, other: &DgaElement) -> DgaElement {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &DgaElement) -> DgaElement {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, -c);
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> DgaElement {
        if c.is_zero() {
            return DgaElement::zero();
        }
        DgaElement { terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect() }
    }

    pub fn mul(&self, other: &DgaElement) -> DgaElement {
        let mut out = DgaElement::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                if m1 & m2 != 0 {
                    continue;
                }
                out.add_term(m1 | m2, c1 * c2 * rat_int(merge_sign(*m1, *m2)));
            }
        }
        out
    }

    /// Total degree if homogeneous (all generators have degree 1).
    pub fn degree(&self) -> Option<u32> {
        let mut deg = None;
        for m in self.terms.keys() {
            let d = m.count_ones();
            match deg {
                None => deg = Some(d),
                Some(e) if e == d => {}
                _ => return None,
            }
        }
        deg
    }
}

/// Convenience constructors for the curve classes.
pub fn class_a(i: usize) -> DgaElement {
    DgaElement::monomial(1 << bit_a(i))
}

pub fn class_b(i: usize) -> DgaElement {
    DgaElement::monomial(1 << bit_b(i))
}

pub fn class_p(i: usize) -> DgaElement {
    DgaElement::monomial((1 << bit_a(i)) | (1 << bit_b(i)))
}

pub fn class_g(n: usize, i: usize, j: usize) -> DgaElement {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    DgaElement::monomial(1 << bit_g(n, i, j))
}

/// The diagonal class `Δ_{ij} = p_i + p_j − a_i b_j + b_i a_j`.
pub fn diagonal_class(i: usize, j: usize, n: usize) -> Result<DgaElement> {
    if i == j {
        return Err(Error::Invalid("diagonal class needs i != j".into()));
    }
    if i < 1 || j < 1 || i > n || j > n {
        return Err(Error::Invalid("factor index out of range".into()));
    }
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    Ok(class_p(i)
        .add(&class_p(j))
        .sub(&class_a(i).mul(&class_b(j)))
        .add(&class_b(i).mul(&class_a(j))))
}

/// Arnold three-term relation for `i < j < k`:
/// `G_{ij}G_{ik} + G_{jk}G_{ij} + G_{ik}G_{jk}`.
fn arnold_relation(i: usize, j: usize, k: usize, n: usize) -> DgaElement {
    let gij = class_g(n, i, j);
    let gik = class_g(n, i, k);
    let gjk = class_g(n, j, k);
    gij.mul(&gik).add(&gjk.mul(&gij)).add(&gik.mul(&gjk))
}

fn pair_relation(x: fn(usize) -> DgaElement, i: usize, j: usize, n: usize) -> DgaElement {
    x(i).sub(&x(j)).mul(&class_g(n, i, j))
}

/// Ideal generators: Arnold relations for every triple and
/// `(π_i(x) − π_j(x))·G_{ij}` for x ∈ {a, b, p} and every pair.
pub fn build_ideal(n: usize) -> Vec<DgaElement> {
    let mut gens = Vec::new();
    for i in 1..=n {
        for j in (i + 1)..=n {
            for k in (j + 1)..=n {
                gens.push(arnold_relation(i, j, k, n));
            }
        }
    }
    for i in 1..=n {
        for j in (i + 1)..=n {
            gens.push(pair_relation(class_a, i, j, n));
            gens.push(pair_relation(class_b, i, j, n));
            gens.push(pair_relation(class_p, i, j, n));
        }
    }
    gens
}

/// The differential: `d(a) = d(b) = 0`, `d(G_{ij}) = Δ_{ij}`, extended as
/// an odd derivation.  Since Δ is even it commutes past everything.
pub fn differential(e: &DgaElement, n: usize) -> DgaElement {
    let mut out = DgaElement::zero();
    for (mask, c) in &e.terms {
        let mut gs = mask >> (2 * n);
        while gs != 0 {
            let gi = gs.trailing_zeros();
            gs &= gs - 1;
            let bit = 2 * n as u32 + gi;
            let below = (mask & ((1 << bit) - 1)).count_ones();
            let sgn = if below % 2 == 1 { -1 } else { 1 };
            let (i, j) = g_pair(n, gi);
            let delta = diagonal_class(i, j, n).expect("valid pair");
            let rest = DgaElement::monomial(mask & !(1 << bit));
            let term = delta.mul(&rest).scale(&(c * rat_int(sgn)));
            out = out.add(&term);
        }
    }
    out
}

enum Violation {
    /// G_{ik} and G_{jk} share the larger endpoint k (i < j < k).
    SharedEndpoint { i: usize, j: usize, k: usize },
    /// label bit x_j sits on the larger endpoint j of G_{ij}.
    LabelOnEndpoint { label: fn(usize) -> DgaElement, label_bit: u32, i: usize, j: usize },
}

fn find_violation(mask: Mask, n: usize) -> Option<Violation> {
    // collect the G pairs present
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut gs = mask >> (2 * n);
    while gs != 0 {
        let gi = gs.trailing_zeros();
        gs &= gs - 1;
        pairs.push(g_pair(n, gi));
    }
    // duplicated larger endpoint, smallest first
    for x in 0..pairs.len() {
        for y in (x + 1)..pairs.len() {
            if pairs[x].1 == pairs[y].1 {
                let (i, j) = (pairs[x].0.min(pairs[y].0), pairs[x].0.max(pairs[y].0));
                return Some(Violation::SharedEndpoint { i, j, k: pairs[x].1 });
            }
        }
    }
    // label on a larger endpoint
    for (i, j) in pairs {
        if mask & (1 << bit_a(j)) != 0 {
            return Some(Violation::LabelOnEndpoint { label: class_a, label_bit: bit_a(j), i, j });
        }
        if mask & (1 << bit_b(j)) != 0 {
            return Some(Violation::LabelOnEndpoint { label: class_b, label_bit: bit_b(j), i, j });
        }
    }
    None
}

/// Reduces an element to the distinct-endpoint, label-free-endpoint basis.
/// Each step subtracts a multiple of an ideal generator; termination by the
/// strictly decreasing (endpoint multiset, label position multiset) measure.
pub fn normal_form(e: &DgaElement, n: usize) -> DgaElement {
    let mut e = e.clone();
    loop {
        let mut hit = None;
        for (mask, c) in &e.terms {
            if let Some(v) = find_violation(*mask, n) {
                hit = Some((*mask, c.clone(), v));
                break;
            }
        }
        let Some((mask, c, violation)) = hit else {
            return e;
        };
        let multiple = match violation {
            Violation::SharedEndpoint { i, j, k } => {
                let mu = mask & !(1 << bit_g(n, i, k)) & !(1 << bit_g(n, j, k));
                DgaElement::monomial(mu).mul(&arnold_relation(i, j, k, n))
            }
            Violation::LabelOnEndpoint { label, label_bit, i, j } => {
                let mu = mask & !(1 << label_bit) & !(1 << bit_g(n, i, j));
                DgaElement::monomial(mu).mul(&pair_relation(label, i, j, n))
            }
        };
        let s = multiple.coeff(mask);
        debug_assert!(!s.is_zero(), "rewriting multiple misses its target monomial");
        e = e.sub(&multiple.scale(&(c / s)));
        debug_assert!(e.coeff(mask).is_zero());
    }
}

/// Basis monomials of the quotient in total degree `degree`: G-parts with
/// pairwise distinct larger endpoints, labels only off those endpoints.
pub fn quotient_basis(n: usize, degree: u32) -> Vec<Mask> {
    let mut out = Vec::new();
    let n_g = n * (n - 1) / 2;
    // enumerate G subsets with distinct larger endpoints
    let mut g_subsets: Vec<Mask> = Vec::new();
    let total_g = 1u64 << n_g;
    for gsub in 0..total_g {
        let gsub = gsub as Mask;
        let mut endpoints = 0u32;
        let mut ok = true;
        let mut gs = gsub;
        while gs != 0 {
            let gi = gs.trailing_zeros();
            gs &= gs - 1;
            let (_, j) = g_pair(n, gi);
            if endpoints & (1 << j) != 0 {
                ok = false;
                break;
            }
            endpoints |= 1 << j;
        }
        if ok {
            g_subsets.push(gsub);
        }
    }
    for gsub in g_subsets {
        let g_deg = gsub.count_ones();
        if g_deg > degree {
            continue;
        }
        // allowed label bits: a_i, b_i for factors i not a larger endpoint
        let mut endpoints = 0u32;
        let mut gs = gsub;
        while gs != 0 {
            let gi = gs.trailing_zeros();
            gs &= gs - 1;
            endpoints |= 1 << g_pair(n, gi).1;
        }
        let mut allowed: Mask = 0;
        for i in 1..=n {
            if endpoints & (1 << i) == 0 {
                allowed |= (1 << bit_a(i)) | (1 << bit_b(i));
            }
        }
        // label subsets of the right remaining degree
        let need = degree - g_deg;
        subsets_of_size(allowed, need, &mut |labels| {
            out.push(labels | (gsub << (2 * n)));
        });
    }
    out.sort();
    out
}

fn subsets_of_size(mask: Mask, size: u32, sink: &mut impl FnMut(Mask)) {
    fn rec(bits: &[u32], size: u32, idx: usize, acc: Mask, sink: &mut impl FnMut(Mask)) {
        if size == 0 {
            sink(acc);
            return;
        }
        if idx + size as usize > bits.len() {
            return;
        }
        rec(bits, size - 1, idx + 1, acc | (1 << bits[idx]), sink);
        rec(bits, size, idx + 1, acc, sink);
    }
    let mut bits = Vec::new();
    let mut m = mask;
    while m != 0 {
        bits.push(m.trailing_zeros());
        m &= m - 1;
    }
    rec(&bits, size, 0, 0, sink);
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyReport {
    pub n: usize,
    pub betti: Vec<i64>,
    pub quotient_dims: Vec<usize>,
    pub d_square_zero: bool,
    pub d_stable: bool,
}

/// Betti numbers of the configuration-space model `U^(n)` (degrees
/// 0..=2n), with the verification flags the computation rests on.
pub fn cohomology_report(n: usize, limit: usize) -> Result<CohomologyReport> {
    if n < 1 {
        return Err(Error::Invalid("need n >= 1".into()));
    }
    if n > limit {
        return Err(Error::Invalid(format!("n = {n} beyond configured limit {limit}")));
    }
    // d-stability of the ideal: d of each generator reduces to zero
    for g in build_ideal(n) {
        if !normal_form(&differential(&g, n), n).is_zero() {
            return Err(Error::Invalid("ideal is not d-stable".into()));
        }
    }
    let top = 2 * n as u32;
    let bases: Vec<Vec<Mask>> = (0..=top).map(|k| quotient_basis(n, k)).collect();
    let indices: Vec<BTreeMap<Mask, usize>> = bases
        .iter()
        .map(|b| b.iter().enumerate().map(|(i, m)| (*m, i)).collect())
        .collect();
    let mut ranks = vec![0usize; top as usize + 1];
    let mut d_square_zero = true;
    for k in 0..top as usize {
        let mut rows = Vec::with_capacity(bases[k].len());
        for m in &bases[k] {
            let image = normal_form(&differential(&DgaElement::monomial(*m), n), n);
            // d ∘ d = 0 on the quotient, element by element
            if !normal_form(&differential(&image, n), n).is_zero() {
                d_square_zero = false;
            }
            let mut row = SparseVec::new();
            for (mask, c) in &image.terms {
                row.insert(indices[k + 1][mask], c.clone());
            }
            rows.push(row);
        }
        ranks[k] = SparseMatrix::from_rows(bases[k + 1].len(), rows).rank();
    }
    if !d_square_zero {
        return Err(Error::Invalid("d squared is nonzero on the quotient".into()));
    }
    let mut betti = Vec::with_capacity(top as usize + 1);
    for k in 0..=top as usize {
        let incoming = if k == 0 { 0 } else { ranks[k - 1] };
        let outgoing = if k == top as usize { 0 } else { ranks[k] };
        betti.push(bases[k].len() as i64 - incoming as i64 - outgoing as i64);
    }
    Ok(CohomologyReport {
        n,
        betti,
        quotient_dims: bases.iter().map(Vec::len).collect(),
        d_square_zero,
        d_stable: true,
    })
}

pub fn cohomology_dims(n: usize, limit: usize) -> Result<Vec<i64>> {
    Ok(cohomology_report(n, limit)?.betti)
}

/// Betti numbers of the punctured configuration space `Ů^(n)`, via the
/// exact Poincaré-polynomial division `P_{U^(n+1)}/(1+t)²`.
pub fn punctured_betti(n: usize, limit: usize) -> Result<Vec<i64>> {
    if n == 0 {
        return Ok(vec![1]);
    }
    let upper = cohomology_dims(n + 1, limit)?;
    // divide twice by (1 + t), checking exactness
    let mut poly = upper;
    for _ in 0..2 {
        let mut quotient = vec![0i64; poly.len() - 1];
        let mut carry = 0i64;
        for (k, q) in quotient.iter_mut().enumerate() {
            *q = poly[k] - carry;
            carry = *q;
        }
        if carry != *poly.last().unwrap() {
            return Err(Error::Invalid(
                "Poincaré polynomial not divisible by (1+t)²".into(),
            ));
        }
        poly = quotient;
    }
    // trim trailing zeros down to degree n
    while poly.len() > n + 1 && poly.last() == Some(&0) {
        poly.pop();
    }
    Ok(poly)
}

/// Quotient dimension in one degree by brute-force ideal-slice rank —
/// the independent oracle the rewriting basis is validated against.
pub fn direct_quotient_dim(n: usize, degree: u32) -> usize {
    let total_bits = 2 * n + n * (n - 1) / 2;
    let mut ambient: Vec<Mask> = Vec::new();
    for m in 0..(1u64 << total_bits) {
        if (m as Mask).count_ones() == degree {
            ambient.push(m as Mask);
        }
    }
    let index: BTreeMap<Mask, usize> = ambient.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let mut rows = Vec::new();
    for g in build_ideal(n) {
        let dg = g.degree().expect("homogeneous generator");
        if dg > degree {
            continue;
        }
        for mu in 0..(1u64 << total_bits) {
            let mu = mu as Mask;
            if mu.count_ones() != degree - dg {
                continue;
            }
            let prod = DgaElement::monomial(mu).mul(&g);
            if prod.is_zero() {
                continue;
            }
            let mut row = SparseVec::new();
            for (mask, c) in &prod.terms {
                row.insert(index[mask], c.clone());
            }
            rows.push(row);
        }
    }
    ambient.len() - SparseMatrix::from_rows(ambient.len(), rows).rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_class_shape() {
        let d = diagonal_class(1, 2, 2).unwrap();
        assert_eq!(d.terms.len(), 4);
        assert_eq!(d.degree(), Some(2));
        assert!(diagonal_class(1, 1, 2).is_err());
        // symmetric in i, j
        assert_eq!(d, diagonal_class(2, 1, 2).unwrap());
    }

    #[test]
    fn diagonal_annihilation() {
        // (π_i(x) − π_j(x))·Δ_{ij} = 0 exactly in the exterior algebra
        let n = 3;
        for (i, j) in [(1, 2), (1, 3), (2, 3)] {
            let delta = diagonal_class(i, j, n).unwrap();
            for x in [class_a, class_b, class_p] {
                let diff = x(i).sub(&x(j));
                assert!(diff.mul(&delta).is_zero(), "x at ({i},{j})");
            }
        }
    }

    #[test]
    fn ideal_counts() {
        assert_eq!(build_ideal(2).len(), 3);
        assert_eq!(build_ideal(3).len(), 1 + 9);
        assert!(build_ideal(1).is_empty());
    }

    #[test]
    fn differential_squares_to_zero_ambient() {
        let n = 3;
        let total_bits = 2 * n + 3;
        for m in 0..(1u64 << total_bits) {
            let e = DgaElement::monomial(m as Mask);
            let dd = differential(&differential(&e, n), n);
            assert!(dd.is_zero(), "mask {m:b}");
        }
    }

    #[test]
    fn graded_commutativity_signs() {
        let a1 = class_a(1);
        let b1 = class_b(1);
        // odd classes anticommute, squares vanish
        assert_eq!(a1.mul(&b1), b1.mul(&a1).scale(&rat_int(-1)));
        assert!(a1.mul(&a1).is_zero());
        // p_i is even: commutes with everything
        let p1 = class_p(1);
        let a2 = class_a(2);
        assert_eq!(p1.mul(&a2), a2.mul(&p1));
    }

    #[test]
    fn normal_form_is_idempotent_and_kills_ideal() {
        let n = 3;
        for g in build_ideal(n) {
            assert!(normal_form(&g, n).is_zero());
            // multiples of generators also die
            for m in [class_a(1), class_g(n, 1, 2), class_b(3)] {
                assert!(normal_form(&m.mul(&g), n).is_zero());
            }
        }
        let e = class_g(n, 1, 3).mul(&class_g(n, 2, 3)).add(&class_a(2));
        let nf = normal_form(&e, n);
        assert_eq!(normal_form(&nf, n), nf);
    }

    #[test]
    fn rewriting_dims_match_direct_quotient() {
        for n in 2..=3usize {
            for degree in 0..=(2 * n) as u32 {
                assert_eq!(
                    quotient_basis(n, degree).len(),
                    direct_quotient_dim(n, degree),
                    "n = {n}, degree = {degree}"
                );
            }
        }
    }

    #[test]
    fn betti_small_n() {
        assert_eq!(cohomology_dims(1, 4).unwrap(), vec![1, 2, 1]);
        assert_eq!(cohomology_dims(2, 4).unwrap(), vec![1, 4, 5, 2, 0]);
        let r = cohomology_report(2, 4).unwrap();
        assert!(r.d_square_zero && r.d_stable);
        assert!(cohomology_dims(5, 4).is_err());
    }

    #[test]
    fn euler_characteristic_vanishes() {
        for n in 1..=3usize {
            let b = cohomology_dims(n, 4).unwrap();
            let chi: i64 = b.iter().enumerate().map(|(k, v)| if k % 2 == 0 { *v } else { -v }).sum();
            assert_eq!(chi, 0, "n = {n}");
        }
    }

    #[test]
    fn punctured_small_n() {
        assert_eq!(punctured_betti(0, 4).unwrap(), vec![1]);
        assert_eq!(punctured_betti(1, 4).unwrap(), vec![1, 2]);
        let p2 = punctured_betti(2, 4).unwrap();
        assert_eq!(p2.last(), Some(&5));
        let p3 = punctured_betti(3, 4).unwrap();
        assert_eq!(p3.last(), Some(&18));
    }
}
