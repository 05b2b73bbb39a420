//! Hermite polynomials and the regular confluent hypergeometric function
//! `M(a, c, y)`.

use crate::error::{KgoError, Result};

/// `|a − round(a)|` below this (with `round(a) ≤ 0`) counts as a terminating series.
pub const INTEGER_TOLERANCE: f64 = 1e-9;

/// Physicists' Hermite polynomial `H_n(ξ)` by the three-term recurrence.
///
/// The recurrence is odd/even symmetric in `ξ`, so `hermite(n, -ξ)` is
/// bit-for-bit `(-1)^n hermite(n, ξ)`.
pub fn hermite(n: usize, xi: f64) -> Result<f64> {
    if n == 0 {
        return Ok(1.0);
    }
    let mut prev = 1.0;
    let mut curr = 2.0 * xi;
    for k in 1..n {
        let next = 2.0 * xi * curr - 2.0 * k as f64 * prev;
        prev = curr;
        curr = next;
    }
    if curr.is_finite() {
        Ok(curr)
    } else {
        Err(KgoError::Overflow {
            what: "Hermite polynomial",
        })
    }
}

/// Whether the series for `M(a, c, y)` is a polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolynomialStatus {
    /// `a = −degree`; the series has exactly `degree + 1` nonzero terms.
    Terminating { degree: usize },
    /// Infinite series, summed to tolerance.
    Convergent,
}

/// Validated parameters of `M(a, c, ·)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KummerParams {
    a: f64,
    c: f64,
    status: PolynomialStatus,
}

impl KummerParams {
    pub fn new(a: f64, c: f64) -> Result<Self> {
        if c <= 0.0 && c == c.round() {
            return Err(KgoError::PoleAtC { c });
        }
        let nearest = a.round();
        let status = if (a - nearest).abs() <= INTEGER_TOLERANCE && nearest <= 0.0 {
            PolynomialStatus::Terminating {
                degree: (-nearest) as usize,
            }
        } else {
            PolynomialStatus::Convergent
        };
        // Snap to the exact integer so the (a)_k factor hits zero exactly.
        let a = match status {
            PolynomialStatus::Terminating { .. } => nearest,
            PolynomialStatus::Convergent => a,
        };
        Ok(Self { a, c, status })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn status(&self) -> PolynomialStatus {
        self.status
    }

    pub fn terminates(&self) -> bool {
        matches!(self.status, PolynomialStatus::Terminating { .. })
    }

    /// Sum of the first `terms` series terms `(a)_k/(c)_k · y^k/k!`.
    pub fn partial_sum(&self, y: f64, terms: usize) -> f64 {
        let mut sum = 0.0;
        let mut term = 1.0;
        for k in 0..terms {
            sum += term;
            term *= self.ratio(k, y);
        }
        sum
    }

    /// Ratio of term `k + 1` to term `k`.
    fn ratio(&self, k: usize, y: f64) -> f64 {
        let k = k as f64;
        (self.a + k) / (self.c + k) * y / (k + 1.0)
    }
}

/// Stopping rule for the non-terminating series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesConfig {
    /// Stop once `|term| ≤ tolerance·|sum|` for two consecutive terms.
    pub tolerance: f64,
    pub max_terms: usize,
}

impl Default for SeriesConfig {
    fn default() -> Self {
        Self {
            tolerance: 1e-16,
            max_terms: 500,
        }
    }
}

/// Result of evaluating `M(a, c, y)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KummerTerm {
    pub value: f64,
    pub terms_used: usize,
    pub status: PolynomialStatus,
}

/// `M(a, c, y)` with the default series configuration.
pub fn kummer_m(a: f64, c: f64, y: f64) -> Result<f64> {
    kummer_m_with(a, c, y, &SeriesConfig::default()).map(|t| t.value)
}

pub fn kummer_m_with(a: f64, c: f64, y: f64, config: &SeriesConfig) -> Result<KummerTerm> {
    let params = KummerParams::new(a, c)?;
    evaluate(&params, y, config)
}

pub fn evaluate(params: &KummerParams, y: f64, config: &SeriesConfig) -> Result<KummerTerm> {
    let status = params.status();
    let (value, terms_used) = match status {
        PolynomialStatus::Terminating { degree } => (params.partial_sum(y, degree + 1), degree + 1),
        PolynomialStatus::Convergent => {
            let mut sum = 1.0;
            let mut term = 1.0;
            let mut small_in_a_row = 0;
            let mut k = 0;
            loop {
                if k + 1 >= config.max_terms {
                    return Err(KgoError::NonConvergence {
                        terms: config.max_terms,
                    });
                }
                term *= params.ratio(k, y);
                sum += term;
                k += 1;
                if term.abs() <= config.tolerance * sum.abs() {
                    small_in_a_row += 1;
                    if small_in_a_row == 2 {
                        break;
                    }
                } else {
                    small_in_a_row = 0;
                }
            }
            (sum, k + 1)
        }
    };
    if !value.is_finite() {
        return Err(KgoError::Overflow {
            what: "confluent hypergeometric series",
        });
    }
    Ok(KummerTerm {
        value,
        terms_used,
        status,
    })
}

/// Product `(lo + 1)(lo + 2)…hi` in floating point.
fn falling_product(lo: usize, hi: usize) -> Result<f64> {
    let p = (lo + 1..=hi).fold(1.0, |acc, j| acc * j as f64);
    if p.is_finite() {
        Ok(p)
    } else {
        Err(KgoError::Overflow {
            what: "factorial ratio",
        })
    }
}

fn alternating(n: usize) -> f64 {
    if n.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// `(−1)^n (2n)!/n! · M(−n, 1/2, ξ²)`, which equals `H_{2n}(ξ)`.
pub fn hermite_from_kummer_even(n: usize, xi: f64) -> Result<f64> {
    let prefactor = alternating(n) * falling_product(n, 2 * n)?;
    Ok(prefactor * kummer_m(-(n as f64), 0.5, xi * xi)?)
}

/// `(−1)^n 2(2n+1)!/n! · ξ · M(−n, 3/2, ξ²)`, which equals `H_{2n+1}(ξ)`.
pub fn hermite_from_kummer_odd(n: usize, xi: f64) -> Result<f64> {
    let prefactor = alternating(n) * 2.0 * falling_product(n, 2 * n + 1)?;
    Ok(prefactor * xi * kummer_m(-(n as f64), 1.5, xi * xi)?)
}
