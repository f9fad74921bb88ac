//! Weight-graded Hilbert series of `R/I`, by two independent routes:
//! counting standard monomials against the leading-term ideal, and a direct
//! linear-algebra span oracle.  Agreement of the two is the executable form
//! of the statement that the Hilbert series of `I` and `LT(I)` coincide.

pub use crate::series::{compare_series, QSeriesInt, SeriesComparison};

use crate::ring::{DiffPoly, Monomial, RingConfig, Var};
use crate::sparse::SparseMatrix;
use crate::{Error, Result};

/// All variables of weight ≤ `max_weight`, greatest (in the variable order)
/// first.
fn variables_up_to(config: &RingConfig, max_weight: u64) -> Vec<Var> {
    let mut vars = Vec::new();
    let mut deriv = 0u32;
    loop {
        let mut any = false;
        for fam in 0..config.families.len() {
            let v = config.var(fam, deriv);
            if v.weight() >= 1 && v.weight() <= max_weight {
                vars.push(v);
                any = true;
            }
        }
        if !any && deriv as u64 > max_weight {
            break;
        }
        deriv += 1;
    }
    vars
}

fn ensure_positive_weights(config: &RingConfig) -> Result<()> {
    if config.has_weight_zero_variable() {
        return Err(Error::WeightZeroVariable);
    }
    Ok(())
}

/// Depth-first enumeration of the monomials of weight ≤ `max_weight`
/// divisible by none of `lt_gens`, calling `sink` on each (including 1).
fn walk_standard<F: FnMut(&[(Var, u32)], u64)>(
    vars: &[Var],
    lt_gens: &[Monomial],
    max_weight: u64,
    idx: usize,
    acc: &mut Vec<(Var, u32)>,
    acc_weight: u64,
    sink: &mut F,
) {
    if idx == vars.len() {
        sink(acc, acc_weight);
        return;
    }
    let v = vars[idx];
    let mut exp = 0u32;
    loop {
        let w = acc_weight + v.weight() * exp as u64;
        if w > max_weight {
            break;
        }
        if exp > 0 {
            acc.push((v, exp));
        }
        // prune as soon as a leading-term generator fully supported on the
        // chosen variables divides the partial monomial
        let blocked = lt_gens.iter().any(|g| {
            g.exponents().iter().all(|(gv, ge)| {
                acc.iter()
                    .find(|(av, _)| av == gv)
                    .map(|(_, ae)| ae >= ge)
                    .unwrap_or(false)
            })
        });
        if !blocked {
            walk_standard(vars, lt_gens, max_weight, idx + 1, acc, w, sink);
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

/// Standard monomials (not divisible by any of `lt_gens`) of exact weight
/// `weight`, in deterministic order.
pub fn standard_monomials(
    lt_gens: &[Monomial],
    config: &RingConfig,
    weight: u64,
) -> Result<Vec<Monomial>> {
    ensure_positive_weights(config)?;
    let vars = variables_up_to(config, weight);
    let mut out = Vec::new();
    let mut acc = Vec::new();
    walk_standard(&vars, lt_gens, weight, 0, &mut acc, 0, &mut |m, w| {
        if w == weight {
            out.push(Monomial::from_exponents(m.iter().copied()));
        }
    });
    out.sort();
    Ok(out)
}

/// All monomials of exact weight `weight` (free ring), in deterministic
/// order.
pub fn monomials_of_weight(config: &RingConfig, weight: u64) -> Result<Vec<Monomial>> {
    standard_monomials(&[], config, weight)
}

/// Hilbert series of `R/LT(I)`: coefficient `n` counts the weight-`n`
/// monomials divisible by no leading-term generator.
pub fn hilbert_from_lt(
    lt_gens: &[Monomial],
    config: &RingConfig,
    max_n: usize,
) -> Result<QSeriesInt> {
    ensure_positive_weights(config)?;
    let vars = variables_up_to(config, max_n as u64);
    let mut series = QSeriesInt::zero(max_n);
    let mut acc = Vec::new();
    walk_standard(&vars, lt_gens, max_n as u64, 0, &mut acc, 0, &mut |_, w| {
        series.coeffs[w as usize] += 1;
    });
    Ok(series)
}

/// Hilbert series of `R/I` by exact rank: coefficient `n` is the number of
/// weight-`n` monomials minus the rank of the span of all `m·g` of weight
/// `n`.  Exhaustive in the multiplier monomials; intended for small bounds.
pub fn hilbert_linear_oracle(
    gens: &[DiffPoly],
    config: &RingConfig,
    max_n: usize,
) -> Result<QSeriesInt> {
    ensure_positive_weights(config)?;
    let mut series = QSeriesInt::zero(max_n);
    for g in gens {
        g.homogeneous_weight()?;
    }
    for n in 0..=max_n as u64 {
        let ambient = monomials_of_weight(config, n)?;
        let index: std::collections::BTreeMap<&Monomial, usize> =
            ambient.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut rows = Vec::new();
        for g in gens {
            let Some(wg) = g.homogeneous_weight()? else { continue };
            if wg > n {
                continue;
            }
            for mult in monomials_of_weight(config, n - wg)? {
                let prod = g.mul_term(&mult, &crate::sparse::rat_int(1));
                let mut row = crate::sparse::SparseVec::new();
                for (m, c) in prod.terms() {
                    row.insert(index[m], c.clone());
                }
                rows.push(row);
            }
        }
        let rank = SparseMatrix::from_rows(ambient.len(), rows).rank();
        series.coeffs[n as usize] = ambient.len() as i64 - rank as i64;
    }
    Ok(series)
}
