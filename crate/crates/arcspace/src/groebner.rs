//! Multivariate division, S-polynomials, weight-truncated Buchberger
//! completion and Groebner-basis verification.
//!
//! All ideals here are generated by weight-homogeneous polynomials in rings
//! whose variables have weight ≥ 1.  Homogeneity makes weightwise truncation
//! sound: deciding membership of a weight-w element only ever touches
//! weight-w reduction traffic, so a basis whose S-pairs reduce to zero up to
//! lcm-weight W answers membership exactly for all weights ≤ W.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::ring::{DiffPoly, Monomial, RingConfig};
use crate::{Error, Result};

/// Result of dividing `f` by an ordered list of polynomials.
#[derive(Debug, Clone)]
pub struct Division {
    /// One quotient per divisor, aligned with the divisor list.
    pub quotients: Vec<DiffPoly>,
    pub remainder: DiffPoly,
}

/// Division with remainder: `f = sum_i quotients[i] * g[i] + remainder`,
/// no monomial of the remainder divisible by any leading monomial of `g`,
/// and every `LT(quotient_i * g_i)` ≤ `LT(f)`.
pub fn reduce(f: &DiffPoly, g: &[&DiffPoly]) -> Division {
    let mut quotients = vec![DiffPoly::zero(); g.len()];
    let mut remainder = DiffPoly::zero();
    let mut p = f.clone();
    'outer: while let Some((m, c)) = p.leading() {
        let (m, c) = (m.clone(), c.clone());
        for (i, gi) in g.iter().enumerate() {
            let Some((lm, lc)) = gi.leading() else { continue };
            if let Some(q) = m.try_div(lm) {
                let coef = c / lc;
                quotients[i].add_term(q.clone(), coef.clone());
                p = p.sub(&gi.mul_term(&q, &coef));
                continue 'outer;
            }
        }
        remainder.add_term(m.clone(), c.clone());
        p.add_term(m, -c);
    }
    debug_assert!(
        {
            let mut check = f.sub(&remainder);
            for (q, gi) in quotients.iter().zip(g) {
                check = check.sub(&q.mul(gi));
            }
            check.is_zero()
        },
        "division invariant violated"
    );
    quotients.iter().zip(g).for_each(|(q, gi)| {
        debug_assert!(match (q.leading_monomial(), gi.leading_monomial(), f.leading_monomial()) {
            (Some(qm), Some(gm), Some(fm)) => qm.mul(gm).grevlex_cmp(fm) != Ordering::Greater,
            _ => true,
        });
    });
    Division { quotients, remainder }
}

/// Remainder only.
pub fn normal_form(f: &DiffPoly, g: &[&DiffPoly]) -> DiffPoly {
    reduce(f, g).remainder
}

/// `S(f, g) = (H / LT(f))·f/lc(f) − (H / LT(g))·g/lc(g)` with `H` the lcm of
/// the leading monomials; the leading terms cancel.
pub fn s_polynomial(f: &DiffPoly, g: &DiffPoly) -> DiffPoly {
    let (fm, fc) = f.leading().expect("nonzero f");
    let (gm, gc) = g.leading().expect("nonzero g");
    let h = fm.lcm(gm);
    let a = h.try_div(fm).unwrap();
    let b = h.try_div(gm).unwrap();
    f.mul_term(&a, &fc.clone().recip())
        .sub(&g.mul_term(&b, &gc.clone().recip()))
}

/// A weightwise-complete Groebner basis.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    /// Reduced basis: monic, pairwise minimal, self-reduced, sorted by
    /// leading monomial.
    pub elements: Vec<DiffPoly>,
    /// Validity bound: S-pairs with lcm weight ≤ max_weight reduce to zero.
    pub max_weight: u64,
    /// Minimal generating monomials of LT(I) up to the bound.
    pub lt_gens: Vec<Monomial>,
    pub verified: bool,
}

fn validate_inputs(gens: &[DiffPoly], max_weight: u64) -> Result<Vec<DiffPoly>> {
    let mut out: Vec<DiffPoly> = Vec::new();
    for g in gens {
        let Some(w) = g.homogeneous_weight()? else { continue };
        if w > max_weight {
            return Err(Error::BeyondValidityBound { requested: w, bound: max_weight });
        }
        for (m, _) in g.terms() {
            if m.exponents().iter().any(|(v, _)| v.weight() == 0) {
                return Err(Error::WeightZeroVariable);
            }
            if m.is_one() {
                return Err(Error::Invalid("ideal contains a unit".into()));
            }
        }
        let g = g.normalize_content();
        if !out.contains(&g) {
            out.push(g);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Pair {
    lcm: Monomial,
    i: usize,
    j: usize,
}

/// Normal selection: smallest lcm weight first, ties by grevlex of the lcm,
/// then by index.  `reverse_ties` flips the tie-breaking (used to exercise
/// the uniqueness of the reduced basis under different selection orders).
fn pair_order(a: &Pair, b: &Pair, reverse_ties: bool) -> Ordering {
    let primary = a.lcm.weight().cmp(&b.lcm.weight());
    if primary != Ordering::Equal {
        return primary;
    }
    let tie = a
        .lcm
        .grevlex_cmp(&b.lcm)
        .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)));
    if reverse_ties {
        tie.reverse()
    } else {
        tie
    }
}

fn push_pairs(basis: &[DiffPoly], new_index: usize, queue: &mut Vec<Pair>) {
    let lt_new = basis[new_index].leading_monomial().unwrap();
    for i in 0..new_index {
        let lt_i = basis[i].leading_monomial().unwrap();
        queue.push(Pair { lcm: lt_i.lcm(lt_new), i, j: new_index });
    }
}

/// Buchberger completion truncated at `max_weight`, returning the reduced
/// basis (unique for the weight range regardless of pair selection).
pub fn buchberger_truncated(gens: &[DiffPoly], max_weight: u64) -> Result<GroebnerBasis> {
    buchberger_truncated_opts(gens, max_weight, false)
}

/// As [`buchberger_truncated`], with the pair-selection tie order flipped.
pub fn buchberger_truncated_opts(
    gens: &[DiffPoly],
    max_weight: u64,
    reverse_ties: bool,
) -> Result<GroebnerBasis> {
    let mut basis = validate_inputs(gens, max_weight)?;
    let mut queue: Vec<Pair> = Vec::new();
    for i in 0..basis.len() {
        push_pairs(&basis, i, &mut queue);
    }
    while !queue.is_empty() {
        let best = queue
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| pair_order(a, b, reverse_ties))
            .map(|(idx, _)| idx)
            .unwrap();
        let pair = queue.swap_remove(best);
        if pair.lcm.weight() > max_weight {
            continue;
        }
        let (f, g) = (&basis[pair.i], &basis[pair.j]);
        if f.leading_monomial().unwrap().coprime(g.leading_monomial().unwrap()) {
            continue;
        }
        let s = s_polynomial(f, g);
        let refs: Vec<&DiffPoly> = basis.iter().collect();
        let r = normal_form(&s, &refs);
        if !r.is_zero() {
            basis.push(r.normalize_content());
            push_pairs(&basis, basis.len() - 1, &mut queue);
        }
    }
    Ok(finalize(basis, max_weight, true))
}

/// Minimalizes (drops elements whose LT is divisible by another LT),
/// self-reduces tails, makes everything monic and sorts by leading monomial.
fn finalize(mut basis: Vec<DiffPoly>, max_weight: u64, verified: bool) -> GroebnerBasis {
    basis.sort_by(|a, b| {
        a.leading_monomial()
            .unwrap()
            .grevlex_cmp(b.leading_monomial().unwrap())
    });
    // minimal: keep an element only if no *other kept or later* LT divides it
    let mut keep: Vec<DiffPoly> = Vec::new();
    'next: for (i, g) in basis.iter().enumerate() {
        let lt = g.leading_monomial().unwrap();
        for (j, h) in basis.iter().enumerate() {
            if i == j {
                continue;
            }
            let lt_h = h.leading_monomial().unwrap();
            if lt_h.divides(lt) && (lt_h != lt || j < i) {
                continue 'next;
            }
        }
        keep.push(g.clone());
    }
    // self-reduce: every tail monomial reduced against the other elements
    let reduced: Vec<DiffPoly> = (0..keep.len())
        .map(|i| {
            let others: Vec<&DiffPoly> = keep
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, g)| g)
                .collect();
            normal_form(&keep[i], &others).monic()
        })
        .collect();
    let lt_gens = reduced
        .iter()
        .map(|g| g.leading_monomial().unwrap().clone())
        .collect();
    GroebnerBasis { elements: reduced, max_weight, lt_gens, verified }
}

/// How one S-pair fared during verification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum PairStatus {
    ReducedToZero,
    /// Coprime leading monomials: reduction to zero is automatic.
    CoprimeSkipped,
    /// lcm weight beyond the bound; not checked.
    BeyondBound,
    /// Nonzero remainder (canonical text form).
    Failed { remainder: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairReport {
    pub i: usize,
    pub j: usize,
    pub lcm_weight: u64,
    pub status: PairStatus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub pass: bool,
    pub max_weight: u64,
    pub pairs: Vec<PairReport>,
    pub checked: usize,
    pub coprime_skipped: usize,
    pub beyond_bound: usize,
}

/// Checks whether `gens` is already a Groebner basis through `max_weight`:
/// every S-pair with lcm weight ≤ the bound must reduce to zero against the
/// generator list itself.
pub fn verify_groebner(
    gens: &[DiffPoly],
    max_weight: u64,
    config: &RingConfig,
) -> Result<VerifyReport> {
    let basis = validate_inputs(gens, max_weight)?;
    let refs: Vec<&DiffPoly> = basis.iter().collect();
    let mut pairs = Vec::new();
    for j in 1..basis.len() {
        for i in 0..j {
            let lt_i = basis[i].leading_monomial().unwrap();
            let lt_j = basis[j].leading_monomial().unwrap();
            let lcm = lt_i.lcm(lt_j);
            pairs.push(Pair { lcm, i, j });
        }
    }
    pairs.sort_by(|a, b| pair_order(a, b, false));
    let mut reports = Vec::with_capacity(pairs.len());
    let (mut checked, mut coprime, mut beyond) = (0usize, 0usize, 0usize);
    let mut pass = true;
    for pair in pairs {
        let lt_i = basis[pair.i].leading_monomial().unwrap();
        let lt_j = basis[pair.j].leading_monomial().unwrap();
        let status = if pair.lcm.weight() > max_weight {
            beyond += 1;
            PairStatus::BeyondBound
        } else if lt_i.coprime(lt_j) {
            coprime += 1;
            PairStatus::CoprimeSkipped
        } else {
            checked += 1;
            let r = normal_form(&s_polynomial(&basis[pair.i], &basis[pair.j]), &refs);
            if r.is_zero() {
                PairStatus::ReducedToZero
            } else {
                pass = false;
                PairStatus::Failed { remainder: r.text(config) }
            }
        };
        reports.push(PairReport { i: pair.i, j: pair.j, lcm_weight: pair.lcm.weight(), status });
    }
    Ok(VerifyReport {
        pass,
        max_weight,
        pairs: reports,
        checked,
        coprime_skipped: coprime,
        beyond_bound: beyond,
    })
}

impl GroebnerBasis {
    /// Whether `m` lies in the leading-term ideal.  Errors if `m`'s weight
    /// exceeds the validity bound.
    pub fn monomial_in_lt(&self, m: &Monomial) -> Result<bool> {
        if m.weight() > self.max_weight {
            return Err(Error::BeyondValidityBound {
                requested: m.weight(),
                bound: self.max_weight,
            });
        }
        Ok(self.lt_gens.iter().any(|g| g.divides(m)))
    }

    /// Normal form of `f` against the basis.  Valid for weights ≤ bound.
    pub fn normal_form(&self, f: &DiffPoly) -> Result<DiffPoly> {
        if let Some(w) = f.homogeneous_weight()? {
            if w > self.max_weight {
                return Err(Error::BeyondValidityBound { requested: w, bound: self.max_weight });
            }
        }
        let refs: Vec<&DiffPoly> = self.elements.iter().collect();
        Ok(normal_form(f, &refs))
    }
}

/// Versioned JSON document for a serialized basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GbDocument {
    pub schema_version: u32,
    pub ring: String,
    pub ring_hash: String,
    pub max_weight: u64,
    pub verified: bool,
    pub elements: Vec<String>,
}

pub const GB_SCHEMA_VERSION: u32 = 1;

fn sha256_hex(data: &str) -> String {
    let mut h = Sha256::new();
    h.update(data.as_bytes());
    format!("{:x}", h.finalize())
}

/// Content hash identifying (ring, generators, bound); used as a cache key.
pub fn cache_key(config: &RingConfig, gens: &[DiffPoly], max_weight: u64) -> String {
    let mut data = config.to_text();
    for g in gens {
        data.push_str(&g.text(config));
        data.push('\n');
    }
    data.push_str(&format!("max_weight {max_weight}\n"));
    sha256_hex(&data)
}

impl GroebnerBasis {
    pub fn to_document(&self, config: &RingConfig) -> GbDocument {
        GbDocument {
            schema_version: GB_SCHEMA_VERSION,
            ring: config.to_text(),
            ring_hash: sha256_hex(&config.to_text()),
            max_weight: self.max_weight,
            verified: self.verified,
            elements: self.elements.iter().map(|g| g.text(config)).collect(),
        }
    }

    pub fn from_document(doc: &GbDocument) -> Result<(RingConfig, GroebnerBasis)> {
        if doc.schema_version != GB_SCHEMA_VERSION {
            return Err(Error::Invalid(format!(
                "unsupported schema version {}",
                doc.schema_version
            )));
        }
        let config = RingConfig::from_text(&doc.ring)?;
        if sha256_hex(&doc.ring) != doc.ring_hash {
            return Err(Error::Invalid("ring hash mismatch".into()));
        }
        let mut elements = Vec::new();
        for text in &doc.elements {
            let p = DiffPoly::parse(text, &config)?;
            if p.is_zero() {
                return Err(Error::Invalid("zero element in basis document".into()));
            }
            elements.push(p);
        }
        let lt_gens = elements
            .iter()
            .map(|g| g.leading_monomial().unwrap().clone())
            .collect();
        Ok((
            config,
            GroebnerBasis {
                elements,
                max_weight: doc.max_weight,
                lt_gens,
                verified: doc.verified,
            },
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{jet_xpower_gens, sl2_level_gens, series_coeff, Monomial, SymPoly, Var};
    use crate::sparse::{rat, rat_int};
    use proptest::prelude::*;

    fn vir() -> RingConfig {
        RingConfig::virasoro()
    }

    fn mono(c: &RingConfig, exps: &[(usize, u32, u32)]) -> Monomial {
        Monomial::from_exponents(exps.iter().map(|&(f, d, e)| (c.var(f, d), e)))
    }

    #[test]
    fn reduce_examples() {
        let c = vir();
        let x0sq = DiffPoly::monomial(mono(&c, &[(0, 0, 2)]));
        let d = reduce(&x0sq, &[&x0sq]);
        assert!(d.remainder.is_zero());
        assert_eq!(d.quotients[0], DiffPoly::one());

        let x0sqx1 = DiffPoly::monomial(mono(&c, &[(0, 0, 2), (0, 1, 1)]));
        let x0x1 = DiffPoly::monomial(mono(&c, &[(0, 0, 1), (0, 1, 1)]));
        let d = reduce(&x0sqx1, &[&x0x1]);
        assert!(d.remainder.is_zero());
        assert_eq!(d.quotients[0], DiffPoly::monomial(mono(&c, &[(0, 0, 1)])));

        let mut f = DiffPoly::zero();
        f.add_term(mono(&c, &[(0, 1, 2)]), rat_int(1));
        f.add_term(mono(&c, &[(0, 0, 1), (0, 2, 1)]), rat_int(1));
        let d = reduce(&f, &[&x0sq]);
        assert_eq!(d.remainder, f);
        assert!(reduce(&DiffPoly::zero(), &[&x0sq]).remainder.is_zero());
    }

    #[test]
    fn s_polynomial_self_is_zero() {
        let c = vir();
        let mut f = DiffPoly::zero();
        f.add_term(mono(&c, &[(0, 1, 2)]), rat_int(1));
        f.add_term(mono(&c, &[(0, 0, 1), (0, 2, 1)]), rat(2, 3));
        assert!(s_polynomial(&f, &f).is_zero());
    }

    #[test]
    fn s_polynomial_virasoro_leading_terms() {
        // LT(S([x^2]_{2m+1}, [x^2]_{2m})) = x_{m+1}^2 x_{m-1} for m >= 1
        let c = vir();
        let x2 = SymPoly::power(0, 2, 1);
        for m in 1u32..=3 {
            let f = series_coeff(&x2, (2 * m + 1) as usize, &c);
            let g = series_coeff(&x2, (2 * m) as usize, &c);
            let s = s_polynomial(&f, &g);
            let expected = mono(&c, &[(0, m + 1, 2), (0, m - 1, 1)]);
            assert_eq!(s.leading_monomial().unwrap(), &expected, "m={m}");
        }
    }

    #[test]
    fn coprime_pair_reduces_to_zero() {
        let c = vir();
        let mut f = DiffPoly::zero();
        f.add_term(mono(&c, &[(0, 0, 2)]), rat_int(1));
        f.add_term(mono(&c, &[(0, 2, 1)]), rat_int(1));
        let mut g = DiffPoly::zero();
        g.add_term(mono(&c, &[(0, 1, 2)]), rat_int(1));
        g.add_term(mono(&c, &[(0, 4, 1)]), rat_int(3));
        assert!(f
            .leading_monomial()
            .unwrap()
            .coprime(g.leading_monomial().unwrap()));
        let s = s_polynomial(&f, &g);
        assert!(normal_form(&s, &[&f, &g]).is_zero());
    }

    #[test]
    fn buchberger_single_variable() {
        let c = vir();
        let x0 = DiffPoly::monomial(mono(&c, &[(0, 0, 1)]));
        let gb = buchberger_truncated(&[x0.clone()], 8).unwrap();
        assert_eq!(gb.elements, vec![x0]);
        assert_eq!(gb.lt_gens.len(), 1);
    }

    #[test]
    fn buchberger_adds_nothing_for_x_squared() {
        let (_, gens) = jet_xpower_gens(2, 12);
        let gb = buchberger_truncated(&gens, 12).unwrap();
        assert_eq!(gb.elements.len(), gens.len());
        // leading terms of the reduced basis are those of the inputs
        for (g, e) in gens.iter().zip(&gb.elements) {
            assert_eq!(g.leading_monomial(), e.leading_monomial());
        }
    }

    #[test]
    fn buchberger_adds_nothing_for_sl2_level_one() {
        let (_, gens) = sl2_level_gens(1, 7);
        let gb = buchberger_truncated(&gens, 7).unwrap();
        assert_eq!(gb.elements.len(), gens.len());
    }

    #[test]
    fn verify_passes_for_x_squared() {
        let (c, gens) = jet_xpower_gens(2, 10);
        let report = verify_groebner(&gens, 10, &c).unwrap();
        assert!(report.pass);
        assert!(report.checked > 0);
        assert!(report.coprime_skipped > 0);
    }

    #[test]
    fn verify_passes_for_coprime_pair_set() {
        // {x_0^2, x_1^2 - x_0 x_2} (weights i+1): the only S-pair has coprime
        // leading terms, so the set is a Groebner basis of its ideal.
        let c = RingConfig::single("x", 1);
        let x0sq = DiffPoly::monomial(mono(&c, &[(0, 0, 2)]));
        let mut g = DiffPoly::zero();
        g.add_term(mono(&c, &[(0, 1, 2)]), rat_int(1));
        g.add_term(mono(&c, &[(0, 0, 1), (0, 2, 1)]), rat_int(-1));
        let report = verify_groebner(&[x0sq, g], 6, &c).unwrap();
        assert!(report.pass);
        assert_eq!(report.coprime_skipped, 1);
    }

    #[test]
    fn verify_fails_for_non_basis() {
        // {x_0 x_1, x_1^2 - x_0 x_2} (weights i+1) is not a Groebner basis:
        // S = x_1·(x_0x_1) − x_0·(x_1² − x_0x_2) = x_0²x_2, irreducible.
        let c = RingConfig::single("x", 1);
        let x0x1 = DiffPoly::monomial(mono(&c, &[(0, 0, 1), (0, 1, 1)]));
        let mut g = DiffPoly::zero();
        g.add_term(mono(&c, &[(0, 1, 2)]), rat_int(1));
        g.add_term(mono(&c, &[(0, 0, 1), (0, 2, 1)]), rat_int(-1));
        let report = verify_groebner(&[x0x1, g], 5, &c).unwrap();
        assert!(!report.pass);
        assert!(report
            .pairs
            .iter()
            .any(|p| matches!(p.status, PairStatus::Failed { .. })));
    }

    #[test]
    fn monomial_in_lt_examples() {
        let (c, gens) = jet_xpower_gens(2, 10);
        let gb = buchberger_truncated(&gens, 10).unwrap();
        assert!(gb.monomial_in_lt(&mono(&c, &[(0, 3, 2)])).unwrap());
        assert!(!gb.monomial_in_lt(&mono(&c, &[(0, 1, 1), (0, 3, 1)])).unwrap());
        assert!(!gb.monomial_in_lt(&Monomial::one()).unwrap());
        assert!(matches!(
            gb.monomial_in_lt(&mono(&c, &[(0, 9, 1)])),
            Err(Error::BeyondValidityBound { .. })
        ));
    }

    #[test]
    fn weight_zero_variable_rejected() {
        let c = RingConfig::single("x", 0);
        let x0sq = DiffPoly::monomial(mono(&c, &[(0, 0, 2)]));
        assert!(matches!(
            buchberger_truncated(&[x0sq], 4),
            Err(Error::WeightZeroVariable)
        ));
    }

    #[test]
    fn non_homogeneous_rejected() {
        let c = vir();
        let mut f = DiffPoly::monomial(mono(&c, &[(0, 0, 1)]));
        f.add_term(mono(&c, &[(0, 1, 1)]), rat_int(1));
        assert!(matches!(
            buchberger_truncated(&[f], 5),
            Err(Error::NonHomogeneous)
        ));
    }

    #[test]
    fn reduced_basis_unique_under_permuted_selection() {
        // a non-basis input forces genuine completion work
        let c = RingConfig::single("x", 1);
        let x0x1 = DiffPoly::monomial(mono(&c, &[(0, 0, 1), (0, 1, 1)]));
        let mut g = DiffPoly::zero();
        g.add_term(mono(&c, &[(0, 1, 2)]), rat_int(1));
        g.add_term(mono(&c, &[(0, 0, 1), (0, 2, 1)]), rat_int(-1));
        let gens = vec![x0x1, g];
        let a = buchberger_truncated_opts(&gens, 8, false).unwrap();
        let b = buchberger_truncated_opts(&gens, 8, true).unwrap();
        assert_eq!(a.elements, b.elements);
        assert!(a.elements.len() > gens.len());
    }

    #[test]
    fn document_round_trip() {
        let (c, gens) = jet_xpower_gens(2, 10);
        let gb = buchberger_truncated(&gens, 10).unwrap();
        let doc = gb.to_document(&c);
        let json = serde_json::to_string(&doc).unwrap();
        let back: GbDocument = serde_json::from_str(&json).unwrap();
        let (c2, gb2) = GroebnerBasis::from_document(&back).unwrap();
        assert_eq!(c2, c);
        assert_eq!(gb2.elements, gb.elements);
        assert_eq!(gb2.max_weight, gb.max_weight);
        assert_eq!(gb2.verified, gb.verified);
    }

    #[test]
    fn cache_key_sensitivity() {
        let (c, gens) = jet_xpower_gens(2, 10);
        let k1 = cache_key(&c, &gens, 10);
        let k2 = cache_key(&c, &gens, 11);
        let k3 = cache_key(&c, &gens[..gens.len() - 1], 10);
        assert_ne!(k1, k2);
        assert_ne!(k1, k3);
        assert_eq!(k1, cache_key(&c, &gens, 10));
    }

    fn arb_homogeneous_gens() -> impl Strategy<Value = Vec<DiffPoly>> {
        // small weight-homogeneous generators over x with weights i+1
        let c = RingConfig::single("x", 1);
        proptest::collection::vec(
            (2u64..5, proptest::collection::vec((0u32..4, 1u32..3, -2i64..3), 1..3)),
            1..4,
        )
        .prop_map(move |gens| {
            gens.into_iter()
                .filter_map(|(w, terms)| {
                    let mut p = DiffPoly::zero();
                    for (d, e, coeff) in terms {
                        // force weight w: pad with extra x_0 factors
                        let mut base = vec![(c.var(0, d), e)];
                        let have = (d as u64 + 1) * e as u64;
                        if have > w {
                            continue;
                        }
                        if have < w {
                            base.push((c.var(0, 0), (w - have) as u32));
                        }
                        p.add_term(Monomial::from_exponents(base), rat_int(coeff.max(1)));
                    }
                    if p.is_zero() {
                        None
                    } else {
                        Some(p)
                    }
                })
                .collect()
        })
        .prop_filter("need at least one generator", |v: &Vec<DiffPoly>| !v.is_empty())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn completion_spair_closure(gens in arb_homogeneous_gens()) {
            let w = 8u64;
            let gb = buchberger_truncated(&gens, w).unwrap();
            let refs: Vec<&DiffPoly> = gb.elements.iter().collect();
            for (i, f) in gb.elements.iter().enumerate() {
                for g in gb.elements.iter().skip(i + 1) {
                    let lcm = f
                        .leading_monomial()
                        .unwrap()
                        .lcm(g.leading_monomial().unwrap());
                    if lcm.weight() > w {
                        continue;
                    }
                    prop_assert!(normal_form(&s_polynomial(f, g), &refs).is_zero());
                }
            }
        }

        #[test]
        fn permuted_selection_same_reduced_basis(gens in arb_homogeneous_gens()) {
            let a = buchberger_truncated_opts(&gens, 7, false).unwrap();
            let b = buchberger_truncated_opts(&gens, 7, true).unwrap();
            prop_assert_eq!(a.elements, b.elements);
        }
    }

    #[test]
    fn sl2_leading_term_table() {
        // listed leading monomials of the level-1 generators:
        //   [e^2]:      e_m^2 / e_m e_{m+1}
        //   [eh]:       e_m h_m / e_{m+1} h_m
        //   [ef - h^2]: h_m^2 / e_{m+1} f_m
        //   [hf]:       h_m f_m / h_{m+1} f_m
        //   [f^2]:      f_m^2 / f_m f_{m+1}
        let c = RingConfig::sl2();
        let (e, h, f) = (0usize, 1usize, 2usize);
        let table: Vec<(u32, Box<dyn Fn(u32) -> Monomial>, Box<dyn Fn(u32) -> Monomial>)> = vec![
            (
                0,
                Box::new(|m| mono(&RingConfig::sl2(), &[(0, m, 2)])),
                Box::new(|m| mono(&RingConfig::sl2(), &[(0, m, 1), (0, m + 1, 1)])),
            ),
            (
                1,
                Box::new(move |m| mono(&RingConfig::sl2(), &[(e, m, 1), (h, m, 1)])),
                Box::new(move |m| mono(&RingConfig::sl2(), &[(e, m + 1, 1), (h, m, 1)])),
            ),
            (
                2,
                Box::new(move |m| mono(&RingConfig::sl2(), &[(h, m, 2)])),
                Box::new(move |m| mono(&RingConfig::sl2(), &[(e, m + 1, 1), (f, m, 1)])),
            ),
            (
                3,
                Box::new(move |m| mono(&RingConfig::sl2(), &[(h, m, 1), (f, m, 1)])),
                Box::new(move |m| mono(&RingConfig::sl2(), &[(h, m + 1, 1), (f, m, 1)])),
            ),
            (
                4,
                Box::new(move |m| mono(&RingConfig::sl2(), &[(f, m, 2)])),
                Box::new(move |m| mono(&RingConfig::sl2(), &[(f, m, 1), (f, m + 1, 1)])),
            ),
        ];
        for (i, even, odd) in &table {
            let p = crate::ring::sl2_ad_power(*i, 1).unwrap();
            for n in 0..=6u32 {
                let poly = series_coeff(&p, n as usize, &c);
                let lt = poly.leading_monomial().unwrap();
                let expected = if n % 2 == 0 { even(n / 2) } else { odd(n / 2) };
                assert_eq!(lt, &expected, "i={i} N={n}");
            }
        }
    }

    #[test]
    fn division_quotient_leading_bound() {
        let c = vir();
        let (_, gens) = jet_xpower_gens(2, 10);
        let refs: Vec<&DiffPoly> = gens.iter().collect();
        let f = DiffPoly::monomial(mono(&c, &[(0, 0, 2), (0, 1, 1), (0, 2, 1)]));
        let d = reduce(&f, &refs);
        let fm = f.leading_monomial().unwrap();
        for (q, g) in d.quotients.iter().zip(&gens) {
            if let (Some(qm), Some(gm)) = (q.leading_monomial(), g.leading_monomial()) {
                assert_ne!(qm.mul(gm).grevlex_cmp(fm), Ordering::Greater);
            }
        }
        let mut check = f.sub(&d.remainder);
        for (q, g) in d.quotients.iter().zip(&gens) {
            check = check.sub(&q.mul(g));
        }
        assert!(check.is_zero());
    }

    #[allow(unused)]
    fn unused_var_helper(v: Var) {}
}
