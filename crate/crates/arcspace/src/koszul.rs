//! Degreewise homology of the Koszul complex of a weight-graded algebra
//! presented as a truncated arc-space quotient.
//!
//! The algebra is `A = R/I` where `R` is a differential polynomial ring
//! graded by the jet weight `deg(x_j) = j`, and `I` is a differential ideal
//! whose weight-0 slice is visibly finite-dimensional (a pure power of every
//! weight-0 variable appears among the leading terms).  Internally all
//! Groebner computations run in the shifted grading `deg(x_j) = j + 1`
//! (every variable weight ≥ 1, as the completion requires); since the ideal
//! is homogeneous for both the jet weight and the polynomial degree, and the
//! shifted weight is their sum, leading terms and normal forms agree between
//! the two gradings.
//!
//! `H_{-1}` at weight `w` is `ker(ι: Ω^w → A^w) / im(ι: (Λ²Ω)^w → Ω^w)`,
//! with `ι(a·dv) = a·τ(v)` for the canonical derivation τ.  Vanishing of
//! `H_{-1}` at every weight characterizes `A` being the full arc algebra of
//! its weight-0 part.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::groebner::{buchberger_truncated, GroebnerBasis};
use crate::ring::{DiffPoly, Monomial, RingConfig, SymPoly, Var, series_coeff, var_cmp};
use crate::sparse::{axpy, rat_int, SparseMatrix, SparseVec};
use crate::{Error, Result};

/// A weight-graded differential algebra `R/I`, with a Groebner basis of `I`
/// valid through a shifted-weight bound chosen to cover every reduction the
/// homology computation needs.
#[derive(Debug, Clone)]
pub struct GradedAlgebraPresentation {
    pub config: RingConfig,
    pub basis: GroebnerBasis,
    /// Jet weights up to this bound may be queried.
    pub max_jet_weight: u64,
    /// Per family: least c with `x_0^c` among the leading terms.
    zero_caps: Vec<u32>,
}

/// A formal sum `Σ aᵢ·d(vᵢ)` with normal-form coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KaehlerElement {
    pub terms: Vec<(DiffPoly, Var)>,
}

impl KaehlerElement {
    pub fn d(v: Var) -> Self {
        KaehlerElement { terms: vec![(DiffPoly::one(), v)] }
    }

    pub fn term(a: DiffPoly, v: Var) -> Self {
        KaehlerElement { terms: vec![(a, v)] }
    }
}

fn tau(v: &Var) -> DiffPoly {
    DiffPoly::monomial(Monomial::var(*v)).derive()
}

impl GradedAlgebraPresentation {
    /// Builds the presentation: completes the Groebner basis through
    /// `shift_bound` (in the shifted grading), certifies that every weight-0
    /// variable is nilpotent in `A`, and checks the ideal is closed under
    /// the derivation as far as the bound allows.
    pub fn new(
        config: RingConfig,
        gens: &[DiffPoly],
        max_jet_weight: u64,
        shift_bound: u64,
    ) -> Result<Self> {
        if config.families.iter().any(|f| f.base_weight != 1) {
            return Err(Error::Invalid(
                "presentations use the shifted grading: every base weight must be 1".into(),
            ));
        }
        let basis = buchberger_truncated(gens, shift_bound)?;
        let mut zero_caps: Vec<Option<u32>> = vec![None; config.families.len()];
        for lt in &basis.lt_gens {
            if let [(v, e)] = lt.exponents() {
                if v.deriv == 0 {
                    let slot = &mut zero_caps[v.family as usize];
                    *slot = Some(slot.map_or(*e, |c| c.min(*e)));
                }
            }
        }
        let zero_caps: Vec<u32> = zero_caps
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| {
                Error::Invalid(
                    "weight-0 subring not certified finite-dimensional: some weight-0 \
                     variable has no pure power among the leading terms"
                        .into(),
                )
            })?;
        for g in &basis.elements {
            let dg = g.derive();
            if dg.is_zero() {
                continue;
            }
            let w = dg.homogeneous_weight()?.unwrap();
            if w > shift_bound {
                continue;
            }
            if !basis.normal_form(&dg)?.is_zero() {
                return Err(Error::Invalid(
                    "ideal is not closed under the derivation".into(),
                ));
            }
        }
        Ok(GradedAlgebraPresentation { config, basis, max_jet_weight, zero_caps })
    }

    /// Standard monomials of exact jet weight `w` (a basis of `A^w`), in
    /// deterministic order.
    pub fn jet_standard_monomials(&self, w: u64) -> Vec<Monomial> {
        // variables: weight-0 ones (bounded by their caps) plus all of jet
        // weight 1..=w, greatest first
        let mut vars = Vec::new();
        for deriv in 0..=w as u32 {
            for fam in 0..self.config.families.len() {
                vars.push(self.config.var(fam, deriv));
            }
        }
        let mut out = Vec::new();
        let mut acc: Vec<(Var, u32)> = Vec::new();
        self.walk_jet(&vars, w, 0, &mut acc, 0, &mut out);
        out.sort();
        out
    }

    fn walk_jet(
        &self,
        vars: &[Var],
        target: u64,
        idx: usize,
        acc: &mut Vec<(Var, u32)>,
        acc_weight: u64,
        out: &mut Vec<Monomial>,
    ) {
        if idx == vars.len() {
            if acc_weight == target {
                out.push(Monomial::from_exponents(acc.iter().copied()));
            }
            return;
        }
        let v = vars[idx];
        let jet = v.deriv as u64;
        let mut exp = 0u32;
        loop {
            let w = acc_weight + jet * exp as u64;
            if w > target {
                break;
            }
            if jet == 0 && exp >= self.zero_caps[v.family as usize] {
                break;
            }
            if exp > 0 {
                acc.push((v, exp));
            }
            let blocked = self.basis.lt_gens.iter().any(|g| {
                g.exponents().iter().all(|(gv, ge)| {
                    acc.iter()
                        .find(|(av, _)| av == gv)
                        .map(|(_, ae)| ae >= ge)
                        .unwrap_or(false)
                })
            });
            if !blocked {
                self.walk_jet(vars, target, idx + 1, acc, w, out);
            }
            if exp > 0 {
                acc.pop();
            }
            if blocked {
                break;
            }
            exp += 1;
        }
    }

    fn check_weight(&self, w: u64) -> Result<()> {
        if w > self.max_jet_weight {
            return Err(Error::BeyondValidityBound { requested: w, bound: self.max_jet_weight });
        }
        Ok(())
    }

    /// The contraction `ι(Σ aᵢ·dvᵢ) = Σ aᵢ·τ(vᵢ)` in normal form.
    pub fn iota(&self, e: &KaehlerElement) -> Result<DiffPoly> {
        let mut total = DiffPoly::zero();
        for (a, v) in &e.terms {
            total = total.add(&a.mul(&tau(v)));
        }
        self.basis.normal_form(&total)
    }

    /// Ambient basis of the weight-`w` Kaehler module before relations:
    /// pairs (standard monomial a, variable v) with jet(a) + jet(v) + 1 = w.
    fn omega_ambient(&self, w: u64) -> Vec<(Monomial, Var)> {
        let mut out = Vec::new();
        if w == 0 {
            return out;
        }
        for deriv in 0..w as u32 {
            for fam in 0..self.config.families.len() {
                let v = self.config.var(fam, deriv);
                for a in self.jet_standard_monomials(w - 1 - deriv as u64) {
                    out.push((a, v));
                }
            }
        }
        out
    }

    /// Relation rows `a·dg` spanning the kernel of the ambient Kaehler
    /// module onto `Ω^w_{A}`, in ambient coordinates.
    fn omega_relations(
        &self,
        w: u64,
        index: &BTreeMap<(Var, Monomial), usize>,
    ) -> Result<Vec<SparseVec>> {
        let mut rows = Vec::new();
        for g in &self.basis.elements {
            let jet_g = g
                .terms()
                .next()
                .map(|(m, _)| m.jet_weight())
                .unwrap_or(0);
            if jet_g + 1 > w {
                continue;
            }
            let g_vars: Vec<Var> = {
                let mut vs: Vec<Var> = Vec::new();
                for (m, _) in g.terms() {
                    for (v, _) in m.exponents() {
                        if !vs.contains(v) {
                            vs.push(*v);
                        }
                    }
                }
                vs
            };
            for a in self.jet_standard_monomials(w - jet_g - 1) {
                let a_poly = DiffPoly::monomial(a.clone());
                let mut row = SparseVec::new();
                for v in &g_vars {
                    let coeff = self.basis.normal_form(&a_poly.mul(&g.partial(v)))?;
                    for (b, c) in coeff.terms() {
                        let col = index[&(*v, b.clone())];
                        *row.entry(col).or_insert_with(|| rat_int(0)) += c.clone();
                    }
                }
                row.retain(|_, c| !num::Zero::is_zero(c));
                if !row.is_empty() {
                    rows.push(row);
                }
            }
        }
        Ok(rows)
    }

    /// Basis of `Ω^w` as Kaehler elements (ambient span modulo relations).
    pub fn omega_basis(&self, w: u64) -> Result<Vec<KaehlerElement>> {
        self.check_weight(w)?;
        let ambient = self.omega_ambient(w);
        let index: BTreeMap<(Var, Monomial), usize> = ambient
            .iter()
            .enumerate()
            .map(|(i, (a, v))| ((*v, a.clone()), i))
            .collect();
        let relations = self.omega_relations(w, &index)?;
        let units: Vec<SparseVec> = (0..ambient.len())
            .map(|i| crate::sparse::sparse_vec([(i, rat_int(1))]))
            .collect();
        let quotient = crate::sparse::row_reduce_against(&units, &relations);
        Ok(quotient
            .into_iter()
            .map(|vec| {
                let mut per_var: BTreeMap<Var, DiffPoly> = BTreeMap::new();
                for (col, c) in vec {
                    let (a, v) = &ambient[col];
                    per_var
                        .entry(*v)
                        .or_insert_with(DiffPoly::zero)
                        .add_term(a.clone(), c);
                }
                KaehlerElement { terms: per_var.into_iter().map(|(v, p)| (p, v)).collect() }
            })
            .collect())
    }

    /// All the weight-`w` linear algebra in one pass.
    fn assemble(&self, w: u64) -> Result<WeightEntry> {
        self.check_weight(w)?;
        let b_a = self.jet_standard_monomials(w);
        let index_a: BTreeMap<Monomial, usize> =
            b_a.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let ambient = self.omega_ambient(w);
        let index_o: BTreeMap<(Var, Monomial), usize> = ambient
            .iter()
            .enumerate()
            .map(|(i, (a, v))| ((*v, a.clone()), i))
            .collect();
        let relations = self.omega_relations(w, &index_o)?;

        // ι₁ rows: one per ambient Ω basis element
        let mut iota1: Vec<SparseVec> = Vec::with_capacity(ambient.len());
        for (a, v) in &ambient {
            let poly = self
                .basis
                .normal_form(&DiffPoly::monomial(a.clone()).mul(&tau(v)))?;
            let mut row = SparseVec::new();
            for (m, c) in poly.terms() {
                row.insert(index_a[m], c.clone());
            }
            iota1.push(row);
        }

        // Λ² ambient triples (a, v_i, v_j), v_i strictly above v_j
        let mut iota2: Vec<SparseVec> = Vec::new();
        if w >= 2 {
            let mut vars: Vec<Var> = Vec::new();
            for deriv in 0..(w - 1) as u32 {
                for fam in 0..self.config.families.len() {
                    vars.push(self.config.var(fam, deriv));
                }
            }
            for (ii, vi) in vars.iter().enumerate() {
                for vj in vars.iter().skip(ii + 1) {
                    debug_assert_eq!(var_cmp(vi, vj), std::cmp::Ordering::Greater);
                    let need = vi.deriv as u64 + vj.deriv as u64 + 2;
                    if need > w {
                        continue;
                    }
                    for a in self.jet_standard_monomials(w - need) {
                        let a_poly = DiffPoly::monomial(a.clone());
                        let mut row = SparseVec::new();
                        let ci = self.basis.normal_form(&a_poly.mul(&tau(vi)))?;
                        for (b, c) in ci.terms() {
                            let col = index_o[&(*vj, b.clone())];
                            *row.entry(col).or_insert_with(|| rat_int(0)) += c.clone();
                        }
                        let cj = self.basis.normal_form(&a_poly.mul(&tau(vj)))?;
                        for (b, c) in cj.terms() {
                            let col = index_o[&(*vi, b.clone())];
                            *row.entry(col).or_insert_with(|| rat_int(0)) -= c.clone();
                        }
                        row.retain(|_, c| !num::Zero::is_zero(c));
                        if !row.is_empty() {
                            iota2.push(row);
                        }
                    }
                }
            }
        }

        // ι∘ι = 0 as an exact matrix identity
        for row in &iota2 {
            let mut composite = SparseVec::new();
            for (col, c) in row {
                axpy(&mut composite, c, &iota1[*col]);
            }
            composite.retain(|_, c| !num::Zero::is_zero(c));
            if !composite.is_empty() {
                return Err(Error::Invalid(format!(
                    "iota squared nonzero at weight {w}"
                )));
            }
        }

        let rank_rel = SparseMatrix::from_rows(ambient.len(), relations.clone()).rank();
        let rank_i1 = SparseMatrix::from_rows(b_a.len(), iota1).rank();
        let mut stacked = iota2;
        let n_i2 = stacked.len();
        stacked.extend(relations);
        let rank_i2_rel = SparseMatrix::from_rows(ambient.len(), stacked).rank();
        let _ = n_i2;

        let dim_omega = ambient.len() - rank_rel;
        let dim_ker = dim_omega - rank_i1;
        let rank_image = rank_i2_rel - rank_rel;
        Ok(WeightEntry {
            weight: w,
            dim_omega,
            dim_ker,
            rank_image,
            h1: dim_ker - rank_image,
        })
    }

    /// Dimension of `H_{-1}` at jet weight `w`.
    pub fn h_minus1_dim(&self, w: u64) -> Result<usize> {
        if w == 0 {
            return Ok(0);
        }
        Ok(self.assemble(w)?.h1)
    }

    /// Per-weight report through `max_w`, with the overall verdict.
    pub fn h1_report(&self, max_w: u64) -> Result<KoszulReport> {
        let mut entries = Vec::new();
        let mut first_failing = None;
        for w in 1..=max_w {
            let e = self.assemble(w)?;
            if e.h1 != 0 && first_failing.is_none() {
                first_failing = Some(w);
            }
            entries.push(e);
        }
        Ok(KoszulReport {
            arc_like_through: if first_failing.is_none() { Some(max_w) } else { None },
            first_failing_weight: first_failing,
            entries,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightEntry {
    pub weight: u64,
    pub dim_omega: usize,
    pub dim_ker: usize,
    pub rank_image: usize,
    pub h1: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KoszulReport {
    pub arc_like_through: Option<u64>,
    pub first_failing_weight: Option<u64>,
    pub entries: Vec<WeightEntry>,
}

/// `J(k[x]/(x^s))` truncated far enough to certify jet weights ≤ `max_jet_weight`.
pub fn jet_xpower_presentation(s: u32, max_jet_weight: u64) -> Result<GradedAlgebraPresentation> {
    let config = RingConfig::single("x", 1);
    let bound = 2 * max_jet_weight + 2 * s as u64 + 2;
    let xs = SymPoly::power(0, s, 1);
    let mut gens = Vec::new();
    let mut m = 0usize;
    while m as u64 + s as u64 <= bound {
        gens.push(series_coeff(&xs, m, &config).normalize_content());
        m += 1;
    }
    GradedAlgebraPresentation::new(config, &gens, max_jet_weight, bound)
}

/// The fat point `k[x_0]/(x_0^s)` with every positive-index variable killed.
pub fn fat_point_presentation(s: u32, max_jet_weight: u64) -> Result<GradedAlgebraPresentation> {
    let config = RingConfig::single("x", 1);
    let bound = 2 * max_jet_weight + 2 * s as u64 + 2;
    let mut gens = vec![DiffPoly::monomial(Monomial::from_exponents([
        (config.var(0, 0), s),
    ]))];
    for j in 1..=(bound - 1) as u32 {
        gens.push(DiffPoly::monomial(Monomial::var(config.var(0, j))));
    }
    GradedAlgebraPresentation::new(config, &gens, max_jet_weight, bound)
}
