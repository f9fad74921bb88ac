//! Truncated integer power series in `q`, shared by the Hilbert-series and
//! character computations.

use serde::{Deserialize, Serialize};

/// Coefficients of a series `sum_n c_n q^n`, stored through `q^max_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QSeriesInt {
    pub coeffs: Vec<i64>,
}

impl QSeriesInt {
    pub fn zero(max_n: usize) -> Self {
        QSeriesInt { coeffs: vec![0; max_n + 1] }
    }

    pub fn one(max_n: usize) -> Self {
        let mut s = QSeriesInt::zero(max_n);
        s.coeffs[0] = 1;
        s
    }

    pub fn from_coeffs(coeffs: Vec<i64>) -> Self {
        QSeriesInt { coeffs }
    }

    pub fn max_n(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> i64 {
        self.coeffs.get(n).copied().unwrap_or(0)
    }

    pub fn mul(&self, other: &QSeriesInt) -> QSeriesInt {
        let max_n = self.max_n().min(other.max_n());
        let mut out = QSeriesInt::zero(max_n);
        for i in 0..=max_n {
            if self.coeffs[i] == 0 {
                continue;
            }
            for j in 0..=(max_n - i) {
                out.coeffs[i + j] += self.coeffs[i] * other.coeffs[j];
            }
        }
        out
    }

    /// Multiplies by `1/(1 - q^m)`, i.e. by `1 + q^m + q^{2m} + ...`.
    pub fn mul_geometric(&self, m: usize) -> QSeriesInt {
        assert!(m >= 1);
        let mut out = self.clone();
        for n in m..out.coeffs.len() {
            out.coeffs[n] += out.coeffs[n - m];
        }
        out
    }
}

/// Outcome of a coefficientwise comparison.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum SeriesComparison {
    Equal { through: usize },
    FirstDiff { n: usize, left: i64, right: i64 },
}

/// Compares coefficientwise through the smaller truncation.
pub fn compare_series(a: &QSeriesInt, b: &QSeriesInt) -> SeriesComparison {
    let through = a.max_n().min(b.max_n());
    for n in 0..=through {
        if a.coeffs[n] != b.coeffs[n] {
            return SeriesComparison::FirstDiff { n, left: a.coeffs[n], right: b.coeffs[n] };
        }
    }
    SeriesComparison::Equal { through }
}
