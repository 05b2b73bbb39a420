//! Normalized stationary states, the general Kummer-form solution, and
//! Simpson quadrature on uniform grids.

use crate::error::{KgoError, Result};
use crate::specfun::{hermite, kummer_m};

/// Largest `n` for which `N_n` is evaluated (factorial range of `f64`).
pub const MAX_NORMALIZABLE_LEVEL: usize = 170;

/// Above this `n`, `ψ_n` is built from the normalized recurrence instead of
/// `N_n · H_n`.
const DIRECT_EVALUATION_LIMIT: usize = 30;

/// Uniform grid with an odd number of nodes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    x_min: f64,
    x_max: f64,
    points: usize,
}

impl GridSpec {
    pub fn new(x_min: f64, x_max: f64, points: usize) -> Result<Self> {
        if !(x_min.is_finite() && x_max.is_finite()) || !(x_min < 0.0 && 0.0 < x_max) {
            return Err(KgoError::InvalidGrid(format!(
                "need x_min < 0 < x_max, got [{x_min}, {x_max}]"
            )));
        }
        if points < 3 || points.is_multiple_of(2) {
            return Err(KgoError::InvalidGrid(format!(
                "point count must be odd and at least 3, got {points}"
            )));
        }
        Ok(Self {
            x_min,
            x_max,
            points,
        })
    }

    /// Grid on `[-x_max, x_max]`.
    pub fn symmetric(x_max: f64, points: usize) -> Result<Self> {
        Self::new(-x_max, x_max, points)
    }

    /// Twice the classical turning point of level `n`, plus `5/√λ` of tail.
    pub fn default_extent(n: usize, lambda: f64) -> f64 {
        2.0 * ((2 * n + 1) as f64 / lambda).sqrt() + 5.0 / lambda.sqrt()
    }

    pub fn for_level(n: usize, lambda: f64, points: usize) -> Result<Self> {
        Self::symmetric(Self::default_extent(n, lambda), points)
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn is_symmetric(&self) -> bool {
        self.x_min == -self.x_max
    }

    pub fn spacing(&self) -> f64 {
        (self.x_max - self.x_min) / (self.points - 1) as f64
    }

    /// Node `i`. On a symmetric grid the nodes mirror exactly and the middle
    /// node is exactly zero.
    pub fn node(&self, i: usize) -> f64 {
        let last = (self.points - 1) as f64;
        let i = i as f64;
        ((last - i) * self.x_min + i * self.x_max) / last
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.points).map(move |i| self.node(i))
    }
}

/// `N_n = sqrt( sqrt(λ/π) / (2^n n!) )`, built as `N_k = N_{k−1}/sqrt(2k)`.
pub fn normalization_constant(n: usize, lambda: f64) -> Result<f64> {
    if n > MAX_NORMALIZABLE_LEVEL {
        return Err(KgoError::Overflow {
            what: "normalization constant",
        });
    }
    let base = (lambda / std::f64::consts::PI).sqrt().sqrt();
    Ok((1..=n).fold(base, |acc, k| acc / (2.0 * k as f64).sqrt()))
}

/// Stationary state `ψ_n(x) = N_n e^{−λx²/2} H_n(√λ x)`.
pub fn psi(n: usize, x: f64, lambda: f64) -> Result<f64> {
    let xi = lambda.sqrt() * x;
    if n <= DIRECT_EVALUATION_LIMIT {
        let norm = normalization_constant(n, lambda)?;
        return Ok(norm * (-0.5 * xi * xi).exp() * hermite(n, xi)?);
    }
    Ok(psi_recurrence(n, xi, lambda))
}

/// `ψ̃_{k+1} = sqrt(2/(k+1)) ξ ψ̃_k − sqrt(k/(k+1)) ψ̃_{k−1}`, which never
/// forms `H_n` or `2^n n!` separately.
fn psi_recurrence(n: usize, xi: f64, lambda: f64) -> f64 {
    let mut prev = (lambda / std::f64::consts::PI).sqrt().sqrt() * (-0.5 * xi * xi).exp();
    if n == 0 {
        return prev;
    }
    let mut curr = std::f64::consts::SQRT_2 * xi * prev;
    for k in 1..n {
        let k = k as f64;
        let next = (2.0 / (k + 1.0)).sqrt() * xi * curr - (k / (k + 1.0)).sqrt() * prev;
        prev = curr;
        curr = next;
    }
    curr
}

/// General solution `A e^{−λx²/2} M(a, 1/2, λx²) + B e^{−λx²/2} √λ x M(a + 1/2, 3/2, λx²)`.
pub fn psi_general(x: f64, a: f64, coeff_even: f64, coeff_odd: f64, lambda: f64) -> Result<f64> {
    let y = lambda * x * x;
    let gauss = (-0.5 * y).exp();
    let mut value = 0.0;
    if coeff_even != 0.0 {
        value += coeff_even * gauss * kummer_m(a, 0.5, y)?;
    }
    if coeff_odd != 0.0 {
        value += coeff_odd * gauss * lambda.sqrt() * x * kummer_m(a + 0.5, 1.5, y)?;
    }
    Ok(value)
}

/// `ψ_n` sampled at every node of a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledWavefunction {
    pub n: usize,
    pub grid: GridSpec,
    pub values: Vec<f64>,
    pub lambda: f64,
}

impl SampledWavefunction {
    /// Interior sign changes, skipping exact zeros.
    pub fn node_count(&self) -> usize {
        let mut count = 0;
        let mut last_sign = 0.0;
        for &v in &self.values {
            if v == 0.0 {
                continue;
            }
            let sign = v.signum();
            if last_sign != 0.0 && sign != last_sign {
                count += 1;
            }
            last_sign = sign;
        }
        count
    }

    pub fn norm_squared(&self) -> f64 {
        simpson(&self.grid, self.values.iter().map(|v| v * v))
    }
}

pub fn sample(n: usize, grid: &GridSpec, lambda: f64) -> Result<SampledWavefunction> {
    let values = grid
        .nodes()
        .map(|x| psi(n, x, lambda))
        .collect::<Result<Vec<_>>>()?;
    Ok(SampledWavefunction {
        n,
        grid: *grid,
        values,
        lambda,
    })
}

/// Composite Simpson rule over an odd uniform grid.
pub fn simpson(grid: &GridSpec, integrand: impl Iterator<Item = f64>) -> f64 {
    let last = grid.points() - 1;
    let sum: f64 = integrand
        .enumerate()
        .map(|(i, f)| {
            let weight = if i == 0 || i == last {
                1.0
            } else if i % 2 == 1 {
                4.0
            } else {
                2.0
            };
            weight * f
        })
        .sum();
    sum * grid.spacing() / 3.0
}

/// `⟨f|g⟩` by Simpson quadrature.
pub fn inner_product(f: &SampledWavefunction, g: &SampledWavefunction) -> Result<f64> {
    if f.grid != g.grid || f.values.len() != g.values.len() {
        return Err(KgoError::GridMismatch);
    }
    Ok(simpson(
        &f.grid,
        f.values.iter().zip(&g.values).map(|(a, b)| a * b),
    ))
}
