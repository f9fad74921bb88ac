//! Weighted differential polynomial rings.
//!
//! Variables are `x^f_j`: family symbol `f`, derivative index `j`, with
//! weight `base_weight(f) + j`.  The variable order puts smaller derivative
//! index first (greater), ties broken by family rank; monomials carry the
//! grevlex order induced by the weights.  The ring has the canonical
//! derivation sending `x^f_j` to `x^f_{j+1}`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::sparse::{rat, rat_int, Rational};
use crate::{Error, Result};

/// One variable family: a symbol and the weight of its derivative-0 member.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub symbol: String,
    pub base_weight: u32,
}

/// Immutable description of a ring: the ordered list of families.
/// The position in the list is the family rank used to break ties in the
/// variable order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingConfig {
    pub families: Vec<FamilySpec>,
}

impl RingConfig {
    pub fn new(families: Vec<(&str, u32)>) -> Self {
        RingConfig {
            families: families
                .into_iter()
                .map(|(s, w)| FamilySpec { symbol: s.to_string(), base_weight: w })
                .collect(),
        }
    }

    /// Single family `x` with the given base weight.
    pub fn single(symbol: &str, base_weight: u32) -> Self {
        RingConfig::new(vec![(symbol, base_weight)])
    }

    /// The sl2 ring: families e, h, f with base weight 1.
    pub fn sl2() -> Self {
        RingConfig::new(vec![("e", 1), ("h", 1), ("f", 1)])
    }

    /// The Virasoro arc ring: single family x with weights i+2.
    pub fn virasoro() -> Self {
        RingConfig::single("x", 2)
    }

    pub fn var(&self, family: usize, deriv: u32) -> Var {
        assert!(family < self.families.len(), "unknown family");
        Var { deriv, family: family as u32, base_weight: self.families[family].base_weight }
    }

    pub fn symbol(&self, family: u32) -> &str {
        &self.families[family as usize].symbol
    }

    pub fn family_index(&self, symbol: &str) -> Option<usize> {
        self.families.iter().position(|f| f.symbol == symbol)
    }

    pub fn has_weight_zero_variable(&self) -> bool {
        self.families.iter().any(|f| f.base_weight == 0)
    }

    /// Plain-text key-value serialization: `family <symbol> <base_weight>`
    /// per line, in rank order.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for f in &self.families {
            s.push_str(&format!("family {} {}\n", f.symbol, f.base_weight));
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut families = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 3 || parts[0] != "family" {
                return Err(Error::Invalid(format!("bad ring config line: {line}")));
            }
            let w: u32 = parts[2]
                .parse()
                .map_err(|_| Error::Invalid(format!("bad weight in: {line}")))?;
            families.push(FamilySpec { symbol: parts[1].to_string(), base_weight: w });
        }
        Ok(RingConfig { families })
    }
}

/// A single variable `x^f_j`.  Identity and order depend only on
/// (derivative index, family rank); the base weight rides along so that
/// weights are computable without a config lookup.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Var {
    pub deriv: u32,
    pub family: u32,
    pub base_weight: u32,
}

impl Var {
    pub fn weight(&self) -> u64 {
        (self.base_weight + self.deriv) as u64
    }

    fn key(&self) -> (u32, u32) {
        (self.deriv, self.family)
    }
}

impl PartialEq for Var {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}
impl Eq for Var {}

impl PartialOrd for Var {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sorts by (deriv, family) ascending, i.e. from the greatest variable to
/// the least.  Use [`var_cmp`] for the "which variable is greater" order.
impl Ord for Var {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl std::hash::Hash for Var {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.key().hash(state);
    }
}

/// Total order on variables: smaller derivative index is greater; ties are
/// broken by family rank, lower rank greater.  `Greater` means `a` is the
/// greater variable.
pub fn var_cmp(a: &Var, b: &Var) -> Ordering {
    b.key().cmp(&a.key())
}

/// A monomial: sparse exponent vector, stored sorted from the greatest
/// variable to the least, with cached weight and degree.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Monomial {
    vars: Vec<(Var, u32)>,
    weight: u64,
    degree: u32,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { vars: Vec::new(), weight: 0, degree: 0 }
    }

    pub fn from_exponents<I: IntoIterator<Item = (Var, u32)>>(exps: I) -> Self {
        let mut map: BTreeMap<Var, u32> = BTreeMap::new();
        for (v, e) in exps {
            if e > 0 {
                *map.entry(v).or_insert(0) += e;
            }
        }
        let vars: Vec<(Var, u32)> = map.into_iter().collect();
        let weight = vars.iter().map(|(v, e)| v.weight() * *e as u64).sum();
        let degree = vars.iter().map(|(_, e)| *e).sum();
        Monomial { vars, weight, degree }
    }

    pub fn var(v: Var) -> Self {
        Monomial::from_exponents([(v, 1)])
    }

    pub fn exponents(&self) -> &[(Var, u32)] {
        &self.vars
    }

    pub fn exponent_of(&self, v: &Var) -> u32 {
        self.vars
            .iter()
            .find(|(w, _)| w == v)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.vars.is_empty()
    }

    /// Total weighted degree.
    pub fn weight(&self) -> u64 {
        self.weight
    }

    /// Total degree (sum of exponents).
    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Weight with every variable counted by derivative index only
    /// (the arc grading `deg x_j = j`).
    pub fn jet_weight(&self) -> u64 {
        self.vars.iter().map(|(v, e)| v.deriv as u64 * *e as u64).sum()
    }

    /// Charge grading: exponent sum of `plus` family minus that of `minus`.
    pub fn charge(&self, plus: u32, minus: u32) -> i64 {
        self.vars
            .iter()
            .map(|(v, e)| {
                if v.family == plus {
                    *e as i64
                } else if v.family == minus {
                    -(*e as i64)
                } else {
                    0
                }
            })
            .sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::from_exponents(
            self.vars.iter().copied().chain(other.vars.iter().copied()),
        )
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.vars
            .iter()
            .all(|(v, e)| other.exponent_of(v) >= *e)
    }

    pub fn try_div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial::from_exponents(self.vars.iter().map(|(v, e)| {
            (*v, e - other.exponent_of(v))
        })))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut map: BTreeMap<Var, u32> = self.vars.iter().copied().collect();
        for (v, e) in &other.vars {
            let cur = map.entry(*v).or_insert(0);
            *cur = (*cur).max(*e);
        }
        Monomial::from_exponents(map)
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.vars.iter().all(|(v, _)| other.exponent_of(v) == 0)
    }

    /// The grevlex order: higher weight wins; equal weights are broken by
    /// taking the monomial that comes *later* in the lexicographic order
    /// (variables read from greatest to least).
    pub fn grevlex_cmp(&self, other: &Monomial) -> Ordering {
        match self.weight.cmp(&other.weight) {
            Ordering::Equal => {}
            o => return o,
        }
        // Merge-scan in (deriv, family) ascending order = variables
        // descending.  At the first variable where the exponents differ the
        // monomial with the *smaller* exponent is lex-later, hence greater.
        let mut i = 0;
        let mut j = 0;
        loop {
            match (self.vars.get(i), other.vars.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Less,
                (None, Some(_)) => return Ordering::Greater,
                (Some((va, ea)), Some((vb, eb))) => match va.cmp(vb) {
                    Ordering::Less => return Ordering::Less,
                    Ordering::Greater => return Ordering::Greater,
                    Ordering::Equal => {
                        match ea.cmp(eb) {
                            Ordering::Equal => {
                                i += 1;
                                j += 1;
                            }
                            o => return o.reverse(),
                        }
                    }
                },
            }
        }
    }

    /// Canonical text form, e.g. `x0^2*x3` or `e1*h0`.
    pub fn text(&self, config: &RingConfig) -> String {
        if self.vars.is_empty() {
            return "1".to_string();
        }
        self.vars
            .iter()
            .map(|(v, e)| {
                let sym = config.symbol(v.family);
                if *e == 1 {
                    format!("{}{}", sym, v.deriv)
                } else {
                    format!("{}{}^{}", sym, v.deriv, e)
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl PartialEq for Monomial {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars
    }
}
impl Eq for Monomial {}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `Ord` is grevlex, so collections of monomials iterate from least to
/// greatest and a `BTreeMap`'s last key is the leading monomial.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.grevlex_cmp(other)
    }
}

impl std::hash::Hash for Monomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.vars.hash(state);
    }
}

/// A sparse polynomial with rational coefficients.  Zero coefficients are
/// never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DiffPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl DiffPoly {
    pub fn zero() -> Self {
        DiffPoly::default()
    }

    pub fn one() -> Self {
        DiffPoly::term(Monomial::one(), rat_int(1))
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut p = DiffPoly::zero();
        p.add_term(m, c);
        p
    }

    pub fn monomial(m: Monomial) -> Self {
        DiffPoly::term(m, rat_int(1))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    /// Leading (grevlex-greatest) monomial and coefficient.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.leading().map(|(m, _)| m)
    }

    pub fn add(&self, other: &DiffPoly) -> DiffPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &DiffPoly) -> DiffPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> DiffPoly {
        DiffPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> DiffPoly {
        if c.is_zero() {
            return DiffPoly::zero();
        }
        DiffPoly {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> DiffPoly {
        if c.is_zero() {
            return DiffPoly::zero();
        }
        DiffPoly {
            terms: self
                .terms
                .iter()
                .map(|(n, x)| (n.mul(m), x * c))
                .collect(),
        }
    }

    pub fn mul(&self, other: &DiffPoly) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (m, c) in &other.terms {
            for (n, x) in &self.terms {
                out.add_term(n.mul(m), x * c);
            }
        }
        out
    }

    /// The common weight of all monomials, or an error if mixed.
    pub fn homogeneous_weight(&self) -> Result<Option<u64>> {
        let mut w = None;
        for m in self.terms.keys() {
            match w {
                None => w = Some(m.weight()),
                Some(x) if x == m.weight() => {}
                Some(_) => return Err(Error::NonHomogeneous),
            }
        }
        Ok(w)
    }

    /// Leibniz extension of the canonical derivation
    /// `x^f_j -> (j+1) x^f_{j+1}`.
    ///
    /// The scaling makes the derivation act as d/dt on the generating series
    /// `x(t) = sum x_n t^n`, so that iterating it on `[a]_0` recovers
    /// `m! [a]_m` and the ideals `([a]_m : m >= 0)` are closed under it.
    pub fn derive(&self) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (m, c) in &self.terms {
            for (idx, (v, e)) in m.exponents().iter().enumerate() {
                let bumped = Var { deriv: v.deriv + 1, family: v.family, base_weight: v.base_weight };
                let mut exps: Vec<(Var, u32)> = m.exponents().to_vec();
                exps[idx].1 -= 1;
                exps.push((bumped, 1));
                out.add_term(
                    Monomial::from_exponents(exps),
                    c * rat_int(*e as i64 * (v.deriv as i64 + 1)),
                );
            }
        }
        out
    }

    /// Partial derivative with respect to a single variable.
    pub fn partial(&self, v: &Var) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent_of(v);
            if e == 0 {
                continue;
            }
            let exps: Vec<(Var, u32)> = m
                .exponents()
                .iter()
                .map(|(w, k)| if w == v { (*w, k - 1) } else { (*w, *k) })
                .collect();
            out.add_term(Monomial::from_exponents(exps), c * rat_int(e as i64));
        }
        out
    }

    /// Scales so that coefficients are coprime integers and the leading
    /// coefficient is positive.
    pub fn normalize_content(&self) -> DiffPoly {
        let Some((_, lc)) = self.leading() else { return DiffPoly::zero() };
        let mut denom_lcm = BigInt::one();
        let mut numer_gcd = BigInt::zero();
        for c in self.terms.values() {
            denom_lcm = num::integer::lcm(denom_lcm, c.denom().clone());
            numer_gcd = num::integer::gcd(numer_gcd, c.numer().clone());
        }
        let mut scale = Rational::new(denom_lcm, numer_gcd);
        if (lc * &scale).is_negative() {
            scale = -scale;
        }
        self.scale(&scale)
    }

    /// Scales so the leading coefficient is 1.
    pub fn monic(&self) -> DiffPoly {
        match self.leading() {
            None => DiffPoly::zero(),
            Some((_, lc)) => self.scale(&lc.clone().recip()),
        }
    }

    /// Canonical text form, e.g. `2*x0^2*x3 - x1^3`.
    /// Terms are printed from the leading monomial down.
    pub fn text(&self, config: &RingConfig) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if a.is_one() && !m.is_one() {
                s.push_str(&m.text(config));
            } else if m.is_one() {
                s.push_str(&format!("{a}"));
            } else {
                s.push_str(&format!("{a}*{}", m.text(config)));
            }
        }
        s
    }

    /// Parses the output of [`DiffPoly::text`].
    pub fn parse(text: &str, config: &RingConfig) -> Result<DiffPoly> {
        let mut out = DiffPoly::zero();
        let text = text.trim();
        if text == "0" {
            return Ok(out);
        }
        // Split on " + " / " - " while honoring a leading sign.
        let mut rest = text;
        let mut sign = rat_int(1);
        if let Some(r) = rest.strip_prefix('-') {
            sign = rat_int(-1);
            rest = r.trim_start();
        }
        loop {
            let (term, next) = match (rest.find(" + "), rest.find(" - ")) {
                (Some(p), Some(q)) if p < q => (&rest[..p], Some((rat_int(1), &rest[p + 3..]))),
                (Some(_), Some(q)) => (&rest[..q], Some((rat_int(-1), &rest[q + 3..]))),
                (Some(p), None) => (&rest[..p], Some((rat_int(1), &rest[p + 3..]))),
                (None, Some(q)) => (&rest[..q], Some((rat_int(-1), &rest[q + 3..]))),
                (None, None) => (rest, None),
            };
            let (m, c) = parse_term(term.trim(), config)?;
            out.add_term(m, c * &sign);
            match next {
                None => break,
                Some((s, r)) => {
                    sign = s;
                    rest = r;
                }
            }
        }
        Ok(out)
    }
}

fn parse_term(term: &str, config: &RingConfig) -> Result<(Monomial, Rational)> {
    let mut coeff = rat_int(1);
    let mut exps: Vec<(Var, u32)> = Vec::new();
    for factor in term.split('*') {
        let factor = factor.trim();
        if factor.is_empty() {
            return Err(Error::Invalid(format!("empty factor in term `{term}`")));
        }
        if factor.chars().next().unwrap().is_ascii_digit() || factor.starts_with('/') {
            let c: Rational = factor
                .parse()
                .map_err(|_| Error::Invalid(format!("bad coefficient `{factor}`")))?;
            coeff *= c;
            continue;
        }
        if factor == "1" {
            continue;
        }
        let (base, exp) = match factor.split_once('^') {
            Some((b, e)) => {
                let e: u32 = e
                    .parse()
                    .map_err(|_| Error::Invalid(format!("bad exponent in `{factor}`")))?;
                (b, e)
            }
            None => (factor, 1),
        };
        // symbol followed by derivative index, longest symbol match first
        let mut matched = None;
        for (fi, fam) in config.families.iter().enumerate() {
            if let Some(d) = base.strip_prefix(fam.symbol.as_str()) {
                if let Ok(deriv) = d.parse::<u32>() {
                    let better = match matched {
                        Some((prev_len, _, _)) => fam.symbol.len() > prev_len,
                        None => true,
                    };
                    if better {
                        matched = Some((fam.symbol.len(), fi, deriv));
                    }
                }
            }
        }
        let Some((_, fi, deriv)) = matched else {
            return Err(Error::Invalid(format!("unknown variable `{base}`")));
        };
        exps.push((config.var(fi, deriv), exp));
    }
    Ok((Monomial::from_exponents(exps), coeff))
}

impl fmt::Display for DiffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Family symbols unavailable here; fall back to f<rank>_<deriv>.
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            for (v, e) in m.exponents() {
                write!(f, "*f{}_{}^{}", v.family, v.deriv, e)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// A polynomial in the family symbols themselves (no derivative indices):
/// exponent vector per family -> coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SymPoly {
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl SymPoly {
    pub fn zero() -> Self {
        SymPoly::default()
    }

    /// The monomial with the given exponent per family.
    pub fn monomial(exps: Vec<u32>) -> Self {
        let mut p = SymPoly::zero();
        p.add_term(exps, rat_int(1));
        p
    }

    /// A single family symbol raised to a power: family index, exponent,
    /// number of families.
    pub fn power(family: usize, exp: u32, n_families: usize) -> Self {
        let mut e = vec![0; n_families];
        e[family] = exp;
        SymPoly::monomial(e)
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(exps.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &SymPoly) -> SymPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> SymPoly {
        let mut out = SymPoly::zero();
        for (e, x) in &self.terms {
            out.add_term(e.clone(), x * c);
        }
        out
    }

    /// Applies a derivation given by its action on each family symbol
    /// (family -> polynomial), extended by the Leibniz rule.
    pub fn apply_derivation(&self, images: &[SymPoly]) -> SymPoly {
        let mut out = SymPoly::zero();
        for (exps, c) in &self.terms {
            for (fam, e) in exps.iter().enumerate() {
                if *e == 0 {
                    continue;
                }
                let mut rest = exps.clone();
                rest[fam] -= 1;
                for (img_exps, img_c) in images[fam].terms() {
                    let combined: Vec<u32> = rest
                        .iter()
                        .zip(img_exps)
                        .map(|(a, b)| a + b)
                        .collect();
                    out.add_term(combined, c * img_c * rat_int(*e as i64));
                }
            }
        }
        out
    }
}

/// Coefficient of `t^m` after substituting each family symbol `X` by the
/// generating series `X(t) = sum_n X_n t^n`.
pub fn series_coeff(expr: &SymPoly, m: usize, config: &RingConfig) -> DiffPoly {
    let mut total = vec![DiffPoly::zero(); m + 1];
    for (exps, c) in expr.terms() {
        // acc[n] = coefficient of t^n in the product of the variable series.
        let mut acc = vec![DiffPoly::zero(); m + 1];
        acc[0] = DiffPoly::one();
        for (fam, e) in exps.iter().enumerate() {
            for _ in 0..*e {
                let mut next = vec![DiffPoly::zero(); m + 1];
                for j in 0..=m {
                    let xj = DiffPoly::monomial(Monomial::var(config.var(fam, j as u32)));
                    for n in j..=m {
                        if !acc[n - j].is_zero() {
                            let prod = acc[n - j].mul(&xj);
                            next[n] = next[n].add(&prod);
                        }
                    }
                }
                acc = next;
            }
        }
        for n in 0..=m {
            total[n] = total[n].add(&acc[n].scale(c));
        }
    }
    total[m].clone()
}

/// `ad(f)^i e^{k+1}` in the symmetric algebra of sl2, with the conventions
/// `[e,f] = h`, `[h,e] = 2e`, `[h,f] = -2f`, so that the derivation ad(f)
/// acts by `e -> -h`, `h -> 2f`, `f -> 0`.
pub fn sl2_ad_power(i: u32, k: u32) -> Result<SymPoly> {
    if i > 2 * k + 2 {
        return Err(Error::Invalid(format!(
            "ad power {i} out of range for level {k}"
        )));
    }
    // families: 0 = e, 1 = h, 2 = f
    let images = [
        SymPoly::power(1, 1, 3).scale(&rat_int(-1)),
        SymPoly::power(2, 1, 3).scale(&rat_int(2)),
        SymPoly::zero(),
    ];
    let mut p = SymPoly::power(0, k + 1, 3);
    for _ in 0..i {
        p = p.apply_derivation(&images);
    }
    Ok(p)
}

/// All derivatives of the base polynomials with weight at most `max_weight`,
/// each normalized to integer content 1 with positive leading coefficient.
pub fn differential_ideal_gens(base: &[DiffPoly], max_weight: u64) -> Result<Vec<DiffPoly>> {
    let mut out = Vec::new();
    for g in base {
        let mut cur = g.clone();
        loop {
            let Some(w) = cur.homogeneous_weight()? else { break };
            if w > max_weight {
                break;
            }
            out.push(cur.normalize_content());
            cur = cur.derive();
            if cur.is_zero() {
                break;
            }
        }
    }
    Ok(out)
}

/// Generators `[x^s]_m` of the arc ideal of `k[x]/(x^s)` (weights i+2),
/// for all m with weight ≤ `max_weight`, content-normalized.
pub fn jet_xpower_gens(s: u32, max_weight: u64) -> (RingConfig, Vec<DiffPoly>) {
    let config = RingConfig::virasoro();
    let xs = SymPoly::power(0, s, 1);
    let mut gens = Vec::new();
    let mut m = 0usize;
    // weight of [x^s]_m is m + 2s
    while m as u64 + 2 * s as u64 <= max_weight {
        gens.push(series_coeff(&xs, m, &config).normalize_content());
        m += 1;
    }
    (config, gens)
}

/// Generators `[ad(f)^i e^{k+1}]_N` (i = 0..2k+2) of the arc ideal of the
/// level-k sl2 quotient (weights i+1), for all N with weight ≤ `max_weight`,
/// content-normalized.
pub fn sl2_level_gens(k: u32, max_weight: u64) -> (RingConfig, Vec<DiffPoly>) {
    let config = RingConfig::sl2();
    let mut gens = Vec::new();
    for i in 0..=(2 * k + 2) {
        let p = sl2_ad_power(i, k).expect("i in range");
        let mut n = 0usize;
        // weight of [.]_N is N + (k+1) for a degree-(k+1) expression
        while n as u64 + k as u64 + 1 <= max_weight {
            gens.push(series_coeff(&p, n, &config).normalize_content());
            n += 1;
        }
    }
    (config, gens)
}

/// `Σ_{i=0}^{N} (1/3 − i/N)·x_i·[x²]_{N−i}` — identically zero, the engine
/// behind S-pair reduction for the squared-variable ideal.
pub fn jet_square_weighted_sum(n: u32) -> (RingConfig, DiffPoly) {
    let config = RingConfig::virasoro();
    let x2 = SymPoly::power(0, 2, 1);
    let mut sum = DiffPoly::zero();
    for i in 0..=n {
        let c = rat(1, 3) - rat(i as i64, n as i64);
        let xi = DiffPoly::monomial(Monomial::var(config.var(0, i)));
        sum = sum.add(&xi.mul(&series_coeff(&x2, (n - i) as usize, &config)).scale(&c));
    }
    (config, sum)
}

/// Mixed products are plain; repeated-field squares carry the divided-power
/// factor 1/2 (the normalization under which the affine coefficient
/// families below are the general solutions).
fn sl2_quadratic(e: u32, h: u32, f: u32) -> SymPoly {
    let p = SymPoly::monomial(vec![e, h, f]);
    if e == 2 || h == 2 || f == 2 {
        p.scale(&rat(1, 2))
    } else {
        p
    }
}

fn sl2_ef_minus_h2() -> SymPoly {
    sl2_quadratic(1, 0, 1).add(&sl2_quadratic(0, 2, 0).scale(&rat_int(-1)))
}

fn sl2_weighted_sum(
    config: &RingConfig,
    n: u32,
    parts: &[(usize, SymPoly, Rational, i64)],
) -> DiffPoly {
    // each part: (multiplier family, quadratic, offset, slope sign) with
    // coefficient offset + slope·i/n at index i
    let mut sum = DiffPoly::zero();
    for (fam, quad, offset, slope) in parts {
        for i in 0..=n {
            let c = offset + rat(slope * i as i64, n as i64);
            let xi = DiffPoly::monomial(Monomial::var(config.var(*fam, i)));
            sum = sum.add(
                &xi.mul(&series_coeff(quad, (n - i) as usize, config)).scale(&c),
            );
        }
    }
    sum
}

/// `Σ α_i e_i[ef−h²]_{N−i} + Σ β_i h_i[eh]_{N−i} + Σ γ_i f_i[e²]_{N−i}`
/// with `α_i = α − i/N`, `β_i = β + i/N`, `γ_i = γ − i/N`; identically zero
/// exactly when `2α + γ = 1` and `α − 2β = 1`.
pub fn sl2_weighted_sum_a(
    n: u32,
    alpha: Rational,
    beta: Rational,
    gamma: Rational,
) -> (RingConfig, DiffPoly) {
    let config = RingConfig::sl2();
    let sum = sl2_weighted_sum(
        &config,
        n,
        &[
            (0, sl2_ef_minus_h2(), alpha, -1),
            (1, sl2_quadratic(1, 1, 0), beta, 1),
            (2, sl2_quadratic(2, 0, 0), gamma, -1),
        ],
    );
    (config, sum)
}

/// `Σ α_i f_i[eh]_{N−i} + Σ β_i e_i[hf]_{N−i} + Σ γ_i h_i[ef−h²]_{N−i}`
/// with `α_i = α − i/N` etc.; identically zero exactly when `3γ = 1` and
/// `α + β + γ = 1`.
pub fn sl2_weighted_sum_b(
    n: u32,
    alpha: Rational,
    beta: Rational,
    gamma: Rational,
) -> (RingConfig, DiffPoly) {
    let config = RingConfig::sl2();
    let sum = sl2_weighted_sum(
        &config,
        n,
        &[
            (2, sl2_quadratic(1, 1, 0), alpha, -1),
            (0, sl2_quadratic(0, 1, 1), beta, -1),
            (1, sl2_ef_minus_h2(), gamma, -1),
        ],
    );
    (config, sum)
}
