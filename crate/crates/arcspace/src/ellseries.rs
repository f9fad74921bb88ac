//! Truncated Laurent/power-series models of the Weierstrass functions with
//! a formal 2πi marker, and an identity-verification engine.
//!
//! The symbol π̃ stands for 2πi and is never evaluated numerically; every
//! identity checked here is homogeneous for the grading in which π̃ has
//! weight 1 and each series variable weight −1, so exact rational
//! arithmetic in the π̃-graded coefficient ring suffices.  Singular
//! substitutions like ζ(u−v) are expanded in the declared region |u| > |v|
//! (binomial series in v/u); identities involving them are equalities of
//! region-expanded formal series.

use std::collections::BTreeMap;

use num::Zero;
use serde::{Deserialize, Serialize};

use crate::sparse::{rat, rat_int, Rational};
use crate::{Error, Result};

/// A finite Q-linear combination of powers of π̃ = 2πi.  π² is represented
/// as −π̃²/4 and πi as π̃/2.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PiRat {
    terms: BTreeMap<u32, Rational>,
}

impl PiRat {
    pub fn zero() -> Self {
        PiRat::default()
    }

    pub fn from_rat(c: Rational) -> Self {
        PiRat::pi_pow(0, c)
    }

    /// `c · π̃^e`.
    pub fn pi_pow(e: u32, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        PiRat { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: u32) -> Rational {
        self.terms.get(&e).cloned().unwrap_or_else(|| rat_int(0))
    }

    pub fn add_assign(&mut self, other: &PiRat) {
        for (e, c) in &other.terms {
            let slot = self.terms.entry(*e).or_insert_with(|| rat_int(0));
            *slot += c;
            if slot.is_zero() {
                self.terms.remove(e);
            }
        }
    }

    pub fn sub_assign(&mut self, other: &PiRat) {
        self.add_assign(&other.neg());
    }

    pub fn neg(&self) -> PiRat {
        PiRat { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }

    pub fn mul(&self, other: &PiRat) -> PiRat {
        let mut out = PiRat::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_assign(&PiRat::pi_pow(e1 + e2, c1 * c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> PiRat {
        if c.is_zero() {
            return PiRat::zero();
        }
        PiRat { terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect() }
    }

    pub fn exponents(&self) -> impl Iterator<Item = (&u32, &Rational)> {
        self.terms.iter()
    }

    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (e, c) in &self.terms {
            let base = match e {
                0 => format!("{c}"),
                1 => format!("({c})·P"),
                _ => format!("({c})·P^{e}"),
            };
            parts.push(base);
        }
        parts.join(" + ")
    }
}

/// A q-power series with `PiRat` coefficients, truncated at `q_order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSeriesPi {
    pub coeffs: Vec<PiRat>,
}

impl QSeriesPi {
    pub fn zero(q_order: usize) -> Self {
        QSeriesPi { coeffs: vec![PiRat::zero(); q_order + 1] }
    }

    pub fn constant(c: PiRat, q_order: usize) -> Self {
        let mut s = QSeriesPi::zero(q_order);
        s.coeffs[0] = c;
        s
    }

    pub fn q_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(PiRat::is_zero)
    }

    pub fn add(&self, other: &QSeriesPi) -> QSeriesPi {
        let n = self.q_order().min(other.q_order());
        let mut out = QSeriesPi::zero(n);
        for i in 0..=n {
            out.coeffs[i] = self.coeffs[i].clone();
            out.coeffs[i].add_assign(&other.coeffs[i]);
        }
        out
    }

    pub fn sub(&self, other: &QSeriesPi) -> QSeriesPi {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> QSeriesPi {
        QSeriesPi { coeffs: self.coeffs.iter().map(PiRat::neg).collect() }
    }

    pub fn mul(&self, other: &QSeriesPi) -> QSeriesPi {
        let n = self.q_order().min(other.q_order());
        let mut out = QSeriesPi::zero(n);
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j > n {
                    break;
                }
                out.coeffs[i + j].add_assign(&a.mul(b));
            }
        }
        out
    }

    pub fn scale(&self, c: &PiRat) -> QSeriesPi {
        QSeriesPi { coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect() }
    }

    /// `q·d/dq`, coefficientwise.
    pub fn q_derivative(&self) -> QSeriesPi {
        QSeriesPi {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| c.scale(&rat_int(n as i64)))
                .collect(),
        }
    }

    /// q⁰ slice as a series of order 0.
    pub fn q0(&self) -> QSeriesPi {
        QSeriesPi { coeffs: vec![self.coeffs[0].clone()] }
    }
}

/// Bernoulli numbers for `t/(e^t − 1) = Σ B_n tⁿ/n!` (so B₁ = −1/2).
pub fn bernoulli(n_max: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        if n == 0 {
            b.push(rat_int(1));
            continue;
        }
        // Σ_{j=0}^{n} C(n+1, j) B_j = 0
        let mut sum = rat_int(0);
        for (j, bj) in b.iter().enumerate() {
            sum += bj * rat_int(int_binomial(n as i64 + 1, j as u32));
        }
        b.push(-sum / rat_int(n as i64 + 1));
    }
    b
}

fn int_binomial(n: i64, k: u32) -> i64 {
    let mut num = 1i64;
    let mut den = 1i64;
    for i in 0..k as i64 {
        num *= n - i;
        den *= i + 1;
    }
    num / den
}

/// Generalized binomial coefficient C(n, k) for possibly negative n.
fn gen_binomial(n: i64, k: u32) -> Rational {
    let mut out = rat_int(1);
    for i in 0..k as i64 {
        out *= rat(n - i, i as i64 + 1);
    }
    out
}

fn factorial(n: u32) -> Rational {
    let mut out = rat_int(1);
    for i in 2..=n as i64 {
        out *= rat_int(i);
    }
    out
}

/// Eisenstein series `G_k = π̃^k(−B_k/k! + (2/(k−1)!)·Σ_{n≥1} n^{k−1} qⁿ/(1−qⁿ))`,
/// zero for odd `k`.
pub fn eisenstein(k: u32, q_order: usize) -> Result<QSeriesPi> {
    if k == 0 {
        return Err(Error::Invalid("eisenstein requires k >= 1".into()));
    }
    let mut s = QSeriesPi::zero(q_order);
    if k % 2 == 1 {
        return Ok(s);
    }
    let b = bernoulli(k as usize);
    s.coeffs[0] = PiRat::pi_pow(k, -&b[k as usize] / factorial(k));
    // Σ n^{k−1} qⁿ/(1−qⁿ) = Σ_m (Σ_{n | m} n^{k−1}) q^m
    let scale = rat_int(2) / factorial(k - 1);
    for m in 1..=q_order {
        let mut sigma = rat_int(0);
        for n in 1..=m {
            if m % n == 0 {
                sigma += rat_int((n as i64).pow(k - 1));
            }
        }
        s.coeffs[m] = PiRat::pi_pow(k, &scale * sigma);
    }
    Ok(s)
}

/// Univariate Laurent series in `z`; coefficients of degree ≤ `z_order`
/// are exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZSeries {
    pub coeffs: BTreeMap<i64, QSeriesPi>,
    pub z_order: i64,
    pub q_order: usize,
}

impl ZSeries {
    pub fn zero(z_order: i64, q_order: usize) -> Self {
        ZSeries { coeffs: BTreeMap::new(), z_order, q_order }
    }

    pub fn set(&mut self, e: i64, c: QSeriesPi) {
        if c.is_zero() {
            self.coeffs.remove(&e);
        } else {
            self.coeffs.insert(e, c);
        }
    }

    pub fn coeff(&self, e: i64) -> QSeriesPi {
        self.coeffs
            .get(&e)
            .cloned()
            .unwrap_or_else(|| QSeriesPi::zero(self.q_order))
    }

    fn min_deg(&self) -> i64 {
        self.coeffs.keys().next().copied().unwrap_or(0)
    }

    pub fn add(&self, other: &ZSeries) -> ZSeries {
        let mut out = ZSeries::zero(self.z_order.min(other.z_order), self.q_order.min(other.q_order));
        let mut keys: Vec<i64> = self.coeffs.keys().chain(other.coeffs.keys()).copied().collect();
        keys.sort();
        keys.dedup();
        for e in keys {
            if e > out.z_order {
                continue;
            }
            out.set(e, self.coeff(e).add(&other.coeff(e)));
        }
        out
    }

    pub fn sub(&self, other: &ZSeries) -> ZSeries {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> ZSeries {
        ZSeries {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, c.neg())).collect(),
            z_order: self.z_order,
            q_order: self.q_order,
        }
    }

    pub fn mul(&self, other: &ZSeries) -> ZSeries {
        let z_order = (self.z_order + other.min_deg()).min(other.z_order + self.min_deg());
        let mut out = ZSeries::zero(z_order, self.q_order.min(other.q_order));
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &other.coeffs {
                let e = e1 + e2;
                if e > z_order {
                    continue;
                }
                let mut acc = out.coeff(e);
                acc = acc.add(&c1.mul(c2));
                out.set(e, acc);
            }
        }
        out
    }

    pub fn scale(&self, c: &PiRat) -> ZSeries {
        ZSeries {
            coeffs: self.coeffs.iter().map(|(e, s)| (*e, s.scale(c))).collect(),
            z_order: self.z_order,
            q_order: self.q_order,
        }
    }

    pub fn scale_rat(&self, c: Rational) -> ZSeries {
        self.scale(&PiRat::from_rat(c))
    }

    /// `d/dz`; one order of exactness is spent.
    pub fn dz(&self) -> ZSeries {
        let mut out = ZSeries::zero(self.z_order - 1, self.q_order);
        for (e, c) in &self.coeffs {
            if e - 1 > out.z_order {
                continue;
            }
            out.set(e - 1, c.scale(&PiRat::from_rat(rat_int(*e))));
        }
        out
    }

    /// `q·d/dq`, coefficientwise.
    pub fn q_derivative(&self) -> ZSeries {
        ZSeries {
            coeffs: self
                .coeffs
                .iter()
                .filter_map(|(e, c)| {
                    let d = c.q_derivative();
                    if d.is_zero() { None } else { Some((*e, d)) }
                })
                .collect(),
            z_order: self.z_order,
            q_order: self.q_order,
        }
    }

    /// q⁰ slice.
    pub fn q0(&self) -> ZSeries {
        ZSeries {
            coeffs: self
                .coeffs
                .iter()
                .filter_map(|(e, c)| {
                    let s = c.q0();
                    if s.is_zero() { None } else { Some((*e, s)) }
                })
                .collect(),
            z_order: self.z_order,
            q_order: 0,
        }
    }

    /// Every monomial `π̃^p z^e q^m` satisfies `p − e = weight`?
    pub fn pi_homogeneous(&self, weight: i64) -> bool {
        self.coeffs.iter().all(|(e, qs)| {
            qs.coeffs.iter().all(|c| c.exponents().all(|(p, _)| *p as i64 - e == weight))
        })
    }

    fn first_nonzero(&self, through: i64) -> Option<Residual> {
        for (e, qs) in &self.coeffs {
            if *e > through {
                break;
            }
            for (m, c) in qs.coeffs.iter().enumerate() {
                if let Some((p, v)) = c.exponents().next() {
                    return Some(Residual {
                        z_exponents: vec![*e],
                        q_exponent: m,
                        pi_exponent: *p,
                        value: format!("{v}"),
                    });
                }
            }
        }
        None
    }
}

/// Bivariate Laurent series in `u, v`, expanded in the region |u| > |v|.
/// Coefficients with total degree `eu + ev ≤ total_order` are exact;
/// `ev ≤ v_order` is the storage truncation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UVSeries {
    pub coeffs: BTreeMap<(i64, i64), QSeriesPi>,
    pub total_order: i64,
    pub v_order: i64,
    pub q_order: usize,
}

impl UVSeries {
    pub fn zero(total_order: i64, v_order: i64, q_order: usize) -> Self {
        UVSeries { coeffs: BTreeMap::new(), total_order, v_order, q_order }
    }

    fn set(&mut self, e: (i64, i64), c: QSeriesPi) {
        if c.is_zero() {
            self.coeffs.remove(&e);
        } else {
            self.coeffs.insert(e, c);
        }
    }

    fn coeff(&self, e: (i64, i64)) -> QSeriesPi {
        self.coeffs
            .get(&e)
            .cloned()
            .unwrap_or_else(|| QSeriesPi::zero(self.q_order))
    }

    fn min_total(&self) -> i64 {
        self.coeffs.keys().map(|(a, b)| a + b).min().unwrap_or(0)
    }

    fn min_ev(&self) -> i64 {
        self.coeffs.keys().map(|(_, b)| *b).min().unwrap_or(0)
    }

    pub fn add(&self, other: &UVSeries) -> UVSeries {
        let mut out = UVSeries::zero(
            self.total_order.min(other.total_order),
            self.v_order.min(other.v_order),
            self.q_order.min(other.q_order),
        );
        let mut keys: Vec<(i64, i64)> =
            self.coeffs.keys().chain(other.coeffs.keys()).copied().collect();
        keys.sort();
        keys.dedup();
        for e in keys {
            if e.1 > out.v_order {
                continue;
            }
            out.set(e, self.coeff(e).add(&other.coeff(e)));
        }
        out
    }

    pub fn sub(&self, other: &UVSeries) -> UVSeries {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> UVSeries {
        UVSeries {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, c.neg())).collect(),
            total_order: self.total_order,
            v_order: self.v_order,
            q_order: self.q_order,
        }
    }

    pub fn mul(&self, other: &UVSeries) -> UVSeries {
        let total_order =
            (self.total_order + other.min_total()).min(other.total_order + self.min_total());
        let v_order = (self.v_order + other.min_ev()).min(other.v_order + self.min_ev());
        let mut out = UVSeries::zero(total_order, v_order, self.q_order.min(other.q_order));
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &other.coeffs {
                let e = (e1.0 + e2.0, e1.1 + e2.1);
                if e.1 > v_order || e.0 + e.1 > total_order {
                    continue;
                }
                let acc = out.coeff(e).add(&c1.mul(c2));
                out.set(e, acc);
            }
        }
        out
    }

    pub fn scale_rat(&self, c: Rational) -> UVSeries {
        let p = PiRat::from_rat(c);
        UVSeries {
            coeffs: self.coeffs.iter().map(|(e, s)| (*e, s.scale(&p))).collect(),
            total_order: self.total_order,
            v_order: self.v_order,
            q_order: self.q_order,
        }
    }

    /// Substitute v = 0: the ev = 0 slice as a univariate series.
    pub fn set_v_zero(&self) -> ZSeries {
        let mut out = ZSeries::zero(self.total_order, self.q_order);
        for ((eu, ev), c) in &self.coeffs {
            if *ev == 0 && *eu <= out.z_order {
                out.set(*eu, c.clone());
            }
        }
        out
    }

    pub fn pi_homogeneous(&self, weight: i64) -> bool {
        self.coeffs.iter().all(|((eu, ev), qs)| {
            qs.coeffs
                .iter()
                .all(|c| c.exponents().all(|(p, _)| *p as i64 - eu - ev == weight))
        })
    }

    fn first_nonzero(&self, through: i64) -> Option<Residual> {
        let mut keys: Vec<(i64, i64)> = self
            .coeffs
            .keys()
            .filter(|(a, b)| a + b <= through)
            .copied()
            .collect();
        keys.sort_by_key(|(a, b)| (a + b, *b));
        for e in keys {
            let qs = &self.coeffs[&e];
            for (m, c) in qs.coeffs.iter().enumerate() {
                if let Some((p, v)) = c.exponents().next() {
                    return Some(Residual {
                        z_exponents: vec![e.0, e.1],
                        q_exponent: m,
                        pi_exponent: *p,
                        value: format!("{v}"),
                    });
                }
            }
        }
        None
    }
}

/// Substitute `z = a·u + b·v` into a univariate series and re-expand in the
/// region |u| > |v|.  Negative powers require a ≠ 0 unless the form is a
/// pure multiple of v (then the result is Laurent in v directly).
pub fn expand_shifted(f: &ZSeries, a: i64, b: i64, v_order: i64) -> Result<UVSeries> {
    if a == 0 && b == 0 {
        return Err(Error::Invalid("substituting z = 0 into a Laurent series".into()));
    }
    let mut out = UVSeries::zero(f.z_order, v_order, f.q_order);
    for (n, c) in &f.coeffs {
        let n = *n;
        if n >= 0 {
            // finite binomial expansion of (au + bv)^n
            for j in 0..=n {
                let coeff = gen_binomial(n, j as u32)
                    * pow_rat(a, n - j)
                    * pow_rat(b, j);
                if coeff.is_zero() || j > v_order {
                    continue;
                }
                let acc = out.coeff((n - j, j)).add(&c.scale(&PiRat::from_rat(coeff)));
                out.set((n - j, j), acc);
            }
        } else if b == 0 {
            let coeff = pow_rat_neg(a, n)?;
            let acc = out.coeff((n, 0)).add(&c.scale(&PiRat::from_rat(coeff)));
            out.set((n, 0), acc);
        } else if a == 0 {
            if n > v_order {
                continue;
            }
            let coeff = pow_rat_neg(b, n)?;
            let acc = out.coeff((0, n)).add(&c.scale(&PiRat::from_rat(coeff)));
            out.set((0, n), acc);
        } else {
            // (au + bv)^n = a^n uⁿ Σ_j C(n,j) (b/a)^j (v/u)^j in |u| > |v|
            let an = pow_rat_neg(a, n)?;
            let ratio = rat(b, a);
            let mut rj = rat_int(1);
            for j in 0..=v_order {
                let coeff = &an * gen_binomial(n, j as u32) * &rj;
                rj *= &ratio;
                if coeff.is_zero() {
                    continue;
                }
                let e = (n - j, j);
                let acc = out.coeff(e).add(&c.scale(&PiRat::from_rat(coeff)));
                out.set(e, acc);
            }
        }
    }
    Ok(out)
}

fn pow_rat(base: i64, exp: i64) -> Rational {
    debug_assert!(exp >= 0);
    let mut out = rat_int(1);
    for _ in 0..exp {
        out *= rat_int(base);
    }
    out
}

fn pow_rat_neg(base: i64, exp: i64) -> Result<Rational> {
    if base == 0 {
        return Err(Error::Invalid("negative power of a vanishing linear form".into()));
    }
    if exp >= 0 {
        return Ok(pow_rat(base, exp));
    }
    let mut out = rat_int(1);
    for _ in 0..(-exp) {
        out /= rat_int(base);
    }
    Ok(out)
}

/// `℘ = z⁻² + Σ_{k≥0} (2k+1)·G_{2k+2}·z^{2k}` (includes the +G₂ shift, so
/// ℘(z, q=0) = g(z)).
pub fn weierstrass_p(z_order: i64, q_order: usize) -> Result<ZSeries> {
    if z_order < 1 {
        return Err(Error::Invalid("z_order must be >= 1".into()));
    }
    let mut s = ZSeries::zero(z_order, q_order);
    s.set(-2, QSeriesPi::constant(PiRat::from_rat(rat_int(1)), q_order));
    let mut k = 0u32;
    while 2 * k as i64 <= z_order {
        let g = eisenstein(2 * k + 2, q_order)?;
        s.set(
            2 * k as i64,
            g.scale(&PiRat::from_rat(rat_int(2 * k as i64 + 1))),
        );
        k += 1;
    }
    Ok(s)
}

/// `ζ = z⁻¹ − Σ_{k≥0} G_{2k+2}·z^{2k+1}`, the odd primitive with ∂_z ζ = −℘.
pub fn weierstrass_zeta(z_order: i64, q_order: usize) -> Result<ZSeries> {
    if z_order < 1 {
        return Err(Error::Invalid("z_order must be >= 1".into()));
    }
    let mut s = ZSeries::zero(z_order, q_order);
    s.set(-1, QSeriesPi::constant(PiRat::from_rat(rat_int(1)), q_order));
    let mut k = 0u32;
    while 2 * k as i64 + 1 <= z_order {
        let g = eisenstein(2 * k + 2, q_order)?;
        s.set(2 * k as i64 + 1, g.neg());
        k += 1;
    }
    Ok(s)
}

/// `f(z) = z⁻¹ + πi + Σ_{n≥2} B_n π̃ⁿ z^{n−1}/n!` — the Bernoulli expansion
/// of π̃·e^{π̃z}/(e^{π̃z}−1), equal to ζ(z, q=0) + πi.
pub fn f_series(z_order: i64) -> ZSeries {
    let mut s = ZSeries::zero(z_order, 0);
    s.set(-1, QSeriesPi::constant(PiRat::from_rat(rat_int(1)), 0));
    s.set(0, QSeriesPi::constant(PiRat::pi_pow(1, rat(1, 2)), 0));
    let b = bernoulli((z_order + 1).max(1) as usize);
    for n in 2..=(z_order + 1) as usize {
        let c = &b[n] / factorial(n as u32);
        if c.is_zero() {
            continue;
        }
        s.set(n as i64 - 1, QSeriesPi::constant(PiRat::pi_pow(n as u32, c), 0));
    }
    s
}

/// `g(z) = −f′(z)` — equals ℘(z, q=0).
pub fn g_series(z_order: i64) -> ZSeries {
    f_series(z_order + 1).dz().neg()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Residual {
    pub z_exponents: Vec<i64>,
    pub q_exponent: usize,
    pub pi_exponent: u32,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub name: String,
    pub pass: bool,
    pub z_order: i64,
    pub q_order: usize,
    pub pi_weight: i64,
    pub first_residual: Option<Residual>,
}

pub const IDENTITY_NAMES: &[&str] =
    &["heat", "heat_p", "addition", "zfrak_cyclic", "q0_zeta", "q0_p"];

/// Verifies one of the named identities through the given truncation
/// orders.  The combination is first checked to be π̃-homogeneous of the
/// expected weight; then every coefficient within the exactly-known range
/// must vanish.
pub fn verify_identity(name: &str, z_order: i64, q_order: usize) -> Result<IdentityReport> {
    if z_order < 4 || q_order < 4 {
        return Err(Error::Invalid("identity verification needs orders >= 4".into()));
    }
    match name {
        "heat" => {
            // −π̃²·q dζ/dq − ζ℘ − ½℘′ = 0
            let pad = z_order + 4;
            let zeta = weierstrass_zeta(pad, q_order)?;
            let p = weierstrass_p(pad, q_order)?;
            let lhs = zeta
                .q_derivative()
                .scale(&PiRat::pi_pow(2, rat_int(-1)))
                .sub(&zeta.mul(&p))
                .sub(&p.dz().scale_rat(rat(1, 2)));
            finish_z(name, lhs, z_order, q_order, 3)
        }
        "heat_p" => {
            // π̃²·q d℘/dq − ζ℘′ + ℘² − ½℘″ = 0
            let pad = z_order + 5;
            let zeta = weierstrass_zeta(pad, q_order)?;
            let p = weierstrass_p(pad, q_order)?;
            let dp = p.dz();
            let lhs = p
                .q_derivative()
                .scale(&PiRat::pi_pow(2, rat_int(1)))
                .sub(&zeta.mul(&dp))
                .add(&p.mul(&p))
                .sub(&dp.dz().scale_rat(rat(1, 2)));
            finish_z(name, lhs, z_order, q_order, 4)
        }
        "addition" => {
            // (℘′(u)−℘′(v)) − (℘(u)−℘(v))·(2ζ(u+v)−2ζ(u)−2ζ(v)) = 0
            let pad = z_order + 6;
            let vord = z_order + 6;
            let p = weierstrass_p(pad, q_order)?;
            let dp = p.dz();
            let zeta = weierstrass_zeta(pad, q_order)?;
            let pu = expand_shifted(&p, 1, 0, vord)?;
            let pv = expand_shifted(&p, 0, 1, vord)?;
            let dpu = expand_shifted(&dp, 1, 0, vord)?;
            let dpv = expand_shifted(&dp, 0, 1, vord)?;
            let zuv = expand_shifted(&zeta, 1, 1, vord)?;
            let zu = expand_shifted(&zeta, 1, 0, vord)?;
            let zv = expand_shifted(&zeta, 0, 1, vord)?;
            let bracket = zuv.sub(&zu).sub(&zv).scale_rat(rat_int(2));
            let lhs = dpu.sub(&dpv).sub(&pu.sub(&pv).mul(&bracket));
            finish_uv(name, lhs, z_order, q_order, 3)
        }
        "zfrak_cyclic" => {
            // 𝔷(x,y,z) = ℘(x−y)[ζ(x−y)+ζ(y−z)+ζ(z−x)] + ½℘′(x−y);
            // check 𝔷(x,y,0) = 𝔷(y,0,x) with x = u, y = v in |u| > |v|
            let pad = z_order + 6;
            let vord = z_order + 6;
            let p = weierstrass_p(pad, q_order)?;
            let dp = p.dz();
            let zeta = weierstrass_zeta(pad, q_order)?;
            let zfrak = |x: (i64, i64), y: (i64, i64), z: (i64, i64)| -> Result<UVSeries> {
                let xy = (x.0 - y.0, x.1 - y.1);
                let yz = (y.0 - z.0, y.1 - z.1);
                let zx = (z.0 - x.0, z.1 - x.1);
                let bracket = expand_shifted(&zeta, xy.0, xy.1, vord)?
                    .add(&expand_shifted(&zeta, yz.0, yz.1, vord)?)
                    .add(&expand_shifted(&zeta, zx.0, zx.1, vord)?);
                Ok(expand_shifted(&p, xy.0, xy.1, vord)?
                    .mul(&bracket)
                    .add(&expand_shifted(&dp, xy.0, xy.1, vord)?.scale_rat(rat(1, 2))))
            };
            let u = (1, 0);
            let v = (0, 1);
            let o = (0, 0);
            let lhs = zfrak(u, v, o)?.sub(&zfrak(v, o, u)?);
            finish_uv(name, lhs, z_order, q_order, 3)
        }
        "q0_zeta" => {
            // ζ(z, q=0) = f(z) − πi
            let zeta = weierstrass_zeta(z_order, q_order)?;
            let mut rhs = f_series(z_order);
            let c = rhs.coeff(0).sub(&QSeriesPi::constant(PiRat::pi_pow(1, rat(1, 2)), 0));
            rhs.set(0, c);
            finish_z(name, zeta.q0().sub(&rhs), z_order, q_order, 1)
        }
        "q0_p" => {
            // ℘(z, q=0) = g(z)
            let p = weierstrass_p(z_order, q_order)?;
            finish_z(name, p.q0().sub(&g_series(z_order)), z_order, q_order, 2)
        }
        _ => Err(Error::UnknownIdentity(name.into())),
    }
}

fn finish_z(
    name: &str,
    lhs: ZSeries,
    z_order: i64,
    q_order: usize,
    weight: i64,
) -> Result<IdentityReport> {
    if lhs.z_order < z_order {
        return Err(Error::Invalid(format!(
            "internal padding insufficient for {name}: valid through {} < {z_order}",
            lhs.z_order
        )));
    }
    if !lhs.pi_homogeneous(weight) {
        return Err(Error::Invalid(format!("{name} combination is not π̃-homogeneous")));
    }
    let residual = lhs.first_nonzero(z_order);
    Ok(IdentityReport {
        name: name.into(),
        pass: residual.is_none(),
        z_order,
        q_order,
        pi_weight: weight,
        first_residual: residual,
    })
}

fn finish_uv(
    name: &str,
    lhs: UVSeries,
    z_order: i64,
    q_order: usize,
    weight: i64,
) -> Result<IdentityReport> {
    if lhs.total_order < z_order {
        return Err(Error::Invalid(format!(
            "internal padding insufficient for {name}: valid through {} < {z_order}",
            lhs.total_order
        )));
    }
    if !lhs.pi_homogeneous(weight) {
        return Err(Error::Invalid(format!("{name} combination is not π̃-homogeneous")));
    }
    let residual = lhs.first_nonzero(z_order);
    Ok(IdentityReport {
        name: name.into(),
        pass: residual.is_none(),
        z_order,
        q_order,
        pi_weight: weight,
        first_residual: residual,
    })
}
