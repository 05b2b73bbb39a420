//! Finite-difference check of the closed-form spectrum, and the
//! vector-coupling effective potential.
//!
//! Weber's equation `ψ″ + (k² − λ²x²)ψ = 0` is discretized with the
//! three-point stencil on the interior nodes of a box with Dirichlet walls.
//! The resulting symmetric tridiagonal matrix has eigenvalues `k²`, found by
//! bisection on Sturm counts. No eigenvectors are formed.

use crate::error::{KgoError, Result};
use crate::params::OscillatorParams;
use crate::wavefn::GridSpec;

/// Bisection steps allowed per eigenvalue.
pub const MAX_BISECTION_STEPS: usize = 200;

/// Symmetric tridiagonal matrix on the interior grid nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalOperator {
    pub diagonal: Vec<f64>,
    pub off_diagonal: Vec<f64>,
    pub spacing: f64,
    /// `x` of the first interior node.
    pub origin: f64,
}

impl TridiagonalOperator {
    pub fn dimension(&self) -> usize {
        self.diagonal.len()
    }

    /// Infinity norm.
    pub fn norm_inf(&self) -> f64 {
        (0..self.dimension())
            .map(|i| {
                let left = if i > 0 {
                    self.off_diagonal[i - 1].abs()
                } else {
                    0.0
                };
                let right = self.off_diagonal.get(i).map_or(0.0, |e| e.abs());
                self.diagonal[i].abs() + left + right
            })
            .fold(0.0, f64::max)
    }

    /// Interval containing every eigenvalue.
    pub fn gershgorin_bounds(&self) -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for (i, &d) in self.diagonal.iter().enumerate() {
            let left = if i > 0 {
                self.off_diagonal[i - 1].abs()
            } else {
                0.0
            };
            let right = self.off_diagonal.get(i).map_or(0.0, |e| e.abs());
            lo = lo.min(d - left - right);
            hi = hi.max(d + left + right);
        }
        (lo, hi)
    }
}

/// `(−ψ_{i−1} + 2ψ_i − ψ_{i+1})/h² + λ²x_i²ψ_i = k²ψ_i` on interior nodes.
pub fn discretize_weber(lambda: f64, grid: &GridSpec) -> Result<TridiagonalOperator> {
    if !(lambda.is_finite() && lambda > 0.0) {
        return Err(KgoError::NonPositiveParameter {
            name: "lambda",
            value: lambda,
        });
    }
    if !grid.is_symmetric() {
        return Err(KgoError::InvalidGrid(
            "Weber discretization needs a symmetric grid".into(),
        ));
    }
    let h = grid.spacing();
    let inv_h2 = 1.0 / (h * h);
    let interior = grid.points() - 2;
    let diagonal = (1..=interior)
        .map(|i| {
            let x = grid.node(i);
            2.0 * inv_h2 + lambda * lambda * x * x
        })
        .collect();
    Ok(TridiagonalOperator {
        diagonal,
        off_diagonal: vec![-inv_h2; interior - 1],
        spacing: h,
        origin: grid.node(1),
    })
}

/// The momentum-coupled Klein-Gordon equation
/// `ψ″ − (m²ω²x²/ħ²)ψ + ((E² − m²c⁴)/(c²ħ²))ψ = 0` is Weber's equation with
/// `λ = mω/ħ`; it shares [`discretize_weber`].
pub fn discretize_klein_gordon(
    params: &OscillatorParams,
    grid: &GridSpec,
) -> Result<TridiagonalOperator> {
    discretize_weber(params.lambda(), grid)
}

/// Number of eigenvalues strictly below `shift`.
///
/// Counts negative pivots of the `LDLᵀ` factorization of `op − shift·I`.
/// A pivot smaller in magnitude than `ε‖op‖∞` is replaced by that guard,
/// keeping its sign (zero counts as positive).
pub fn sturm_count(op: &TridiagonalOperator, shift: f64) -> usize {
    let n = op.dimension();
    if n == 0 {
        return 0;
    }
    let guard = f64::EPSILON * op.norm_inf().max(f64::MIN_POSITIVE);
    let mut count = 0;
    let mut pivot = op.diagonal[0] - shift;
    for i in 0..n {
        if i > 0 {
            let e = op.off_diagonal[i - 1];
            pivot = (op.diagonal[i] - shift) - e * e / pivot;
        }
        if pivot.abs() < guard {
            pivot = if pivot < 0.0 { -guard } else { guard };
        }
        if pivot < 0.0 {
            count += 1;
        }
    }
    count
}

/// One eigenvalue of the discretized operator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenResult {
    pub index: usize,
    pub k_squared: f64,
    /// `Ē`, filled in once the eigenvalue is mapped through physical parameters.
    pub energy_dimensionless: Option<f64>,
    pub converged: bool,
    pub interval_width: f64,
}

/// The `count` smallest eigenvalues, each bisected to a bracket of width `≤ tol`.
pub fn lowest_eigenvalues(
    op: &TridiagonalOperator,
    count: usize,
    tol: f64,
) -> Result<Vec<EigenResult>> {
    let dimension = op.dimension();
    if count == 0 || count > dimension {
        return Err(KgoError::InvalidCount { count, dimension });
    }
    if !(tol.is_finite() && tol > 0.0) {
        return Err(KgoError::NonPositiveParameter {
            name: "tol",
            value: tol,
        });
    }
    let (lower, upper) = op.gershgorin_bounds();
    (0..count)
        .map(|index| {
            // Invariant: sturm_count(lo) ≤ index < sturm_count(hi).
            let mut lo = lower.min(0.0);
            let mut hi = upper;
            let mut steps = 0;
            while hi - lo > tol {
                if steps == MAX_BISECTION_STEPS {
                    return Err(KgoError::BudgetExceeded {
                        index,
                        iterations: MAX_BISECTION_STEPS,
                    });
                }
                let mid = 0.5 * (lo + hi);
                if sturm_count(op, mid) > index {
                    hi = mid;
                } else {
                    lo = mid;
                }
                steps += 1;
            }
            Ok(EigenResult {
                index,
                k_squared: 0.5 * (lo + hi),
                energy_dimensionless: None,
                converged: true,
                interval_width: hi - lo,
            })
        })
        .collect()
}

/// Box for the lowest `count` levels: twice the highest turning point plus tail.
pub fn default_grid(count: usize, lambda: f64, points: usize) -> Result<GridSpec> {
    GridSpec::for_level(count.saturating_sub(1), lambda, points)
}

/// Eigenvalues `k²` of the discretized equation mapped to `Ē = sqrt(1 + 2b·k²/2λ)`.
pub fn oracle_energies(
    params: &OscillatorParams,
    count: usize,
    grid: &GridSpec,
    tol: f64,
) -> Result<Vec<EigenResult>> {
    let op = discretize_klein_gordon(params, grid)?;
    let mut results = lowest_eigenvalues(&op, count, tol)?;
    for r in &mut results {
        r.energy_dimensionless = Some(params.energy_from_k_squared(r.k_squared));
    }
    Ok(results)
}

/// `V_eff = (E mω²x² − ¼ m²ω⁴x⁴)/(c²ħ²)`, from the harmonic potential
/// `V = ½mω²x²` entering as the time component of a vector.
pub fn effective_potential(params: &OscillatorParams, energy: f64, x: f64) -> f64 {
    let m = params.mass();
    let w2 = params.omega() * params.omega();
    let x2 = x * x;
    let scale = params.c() * params.c() * params.hbar() * params.hbar();
    (energy * m * w2 * x2 - 0.25 * m * m * w2 * w2 * x2 * x2) / scale
}

/// Outer zero of `V_eff`, `x* = 2 sqrt(E/(mω²))`; zero for `E ≤ 0`.
pub fn effective_potential_zero(params: &OscillatorParams, energy: f64) -> f64 {
    if energy <= 0.0 {
        return 0.0;
    }
    2.0 * (energy / (params.mass() * params.omega() * params.omega())).sqrt()
}

#[derive(Debug, Clone, PartialEq)]
pub struct EffectivePotentialProfile {
    pub energy: f64,
    pub samples: Vec<(f64, f64)>,
    pub outer_zero: f64,
    pub unbounded_below_detected: bool,
}

/// Samples `V_eff` on the grid and checks that it is negative and falling
/// outward over the outermost tenth of the samples beyond `x*`.
pub fn profile_effective_potential(
    params: &OscillatorParams,
    energy: f64,
    grid: &GridSpec,
) -> Result<EffectivePotentialProfile> {
    let outer_zero = effective_potential_zero(params, energy);
    let extent = grid.x_max().min(-grid.x_min());
    let samples: Vec<(f64, f64)> = grid
        .nodes()
        .map(|x| (x, effective_potential(params, energy, x)))
        .collect();

    // Ordered outward from x* on each side.
    let right: Vec<f64> = samples
        .iter()
        .filter(|(x, _)| *x > outer_zero)
        .map(|&(_, v)| v)
        .collect();
    let left: Vec<f64> = samples
        .iter()
        .rev()
        .filter(|(x, _)| *x < -outer_zero)
        .map(|&(_, v)| v)
        .collect();
    if extent <= outer_zero || right.len() < 2 || left.len() < 2 {
        return Err(KgoError::GridTooSmall {
            required: outer_zero,
            extent,
        });
    }

    let tail_len = (grid.points() / 2 / 10).max(2);
    let falls_away = |vals: &[f64]| {
        let tail = &vals[vals.len().saturating_sub(tail_len)..];
        tail.iter().all(|&v| v < 0.0) && tail.windows(2).all(|w| w[1] < w[0])
    };
    let unbounded_below_detected = falls_away(&right) && falls_away(&left);

    Ok(EffectivePotentialProfile {
        energy,
        samples,
        outer_zero,
        unbounded_below_detected,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy() -> TridiagonalOperator {
        TridiagonalOperator {
            diagonal: vec![2.0; 3],
            off_diagonal: vec![-1.0; 2],
            spacing: 1.0,
            origin: -1.0,
        }
    }

    #[test]
    fn weber_assembly_by_hand() {
        let grid = GridSpec::symmetric(2.0, 5).unwrap();
        let op = discretize_weber(1.0, &grid).unwrap();
        assert_eq!(op.diagonal, vec![3.0, 2.0, 3.0]);
        assert_eq!(op.off_diagonal, vec![-1.0, -1.0]);
        assert_eq!(op.spacing, 1.0);
        assert_eq!(op.origin, -1.0);
    }

    #[test]
    fn weber_rejects_bad_inputs() {
        let grid = GridSpec::symmetric(2.0, 5).unwrap();
        assert!(matches!(
            discretize_weber(0.0, &grid),
            Err(KgoError::NonPositiveParameter { .. })
        ));
        let lopsided = GridSpec::new(-1.0, 2.0, 5).unwrap();
        assert!(matches!(
            discretize_weber(1.0, &lopsided),
            Err(KgoError::InvalidGrid(_))
        ));
    }

    #[test]
    fn off_diagonal_is_stencil_constant() {
        let grid = GridSpec::symmetric(5.0, 101).unwrap();
        let op = discretize_weber(0.7, &grid).unwrap();
        let h = grid.spacing();
        assert!(op.off_diagonal.iter().all(|&e| e == -1.0 / (h * h)));
        assert_eq!(op.dimension(), 99);
    }

    #[test]
    fn klein_gordon_form_is_the_weber_matrix() {
        let params = OscillatorParams::new(2.0, 0.3, 1.5, 4.0).unwrap();
        let grid = GridSpec::symmetric(6.0, 201).unwrap();
        assert_eq!(
            discretize_klein_gordon(&params, &grid).unwrap(),
            discretize_weber(params.lambda(), &grid).unwrap()
        );
    }

    #[test]
    fn sturm_count_on_toy_matrix() {
        let op = toy();
        assert_eq!(sturm_count(&op, 2.0), 1);
        assert_eq!(sturm_count(&op, 0.0), 0);
        assert_eq!(sturm_count(&op, 4.0), 3);
    }

    #[test]
    fn toy_eigenvalues() {
        let results = lowest_eigenvalues(&toy(), 3, 1e-12).unwrap();
        let expected = [2.0 - 2f64.sqrt(), 2.0, 2.0 + 2f64.sqrt()];
        for (r, e) in results.iter().zip(expected) {
            assert!((r.k_squared - e).abs() <= 1e-12);
            assert!(r.converged);
            assert!(r.interval_width <= 1e-12);
            assert_eq!(r.energy_dimensionless, None);
        }
        let one = lowest_eigenvalues(&toy(), 1, 1e-3).unwrap();
        assert!(one[0].interval_width <= 1e-3);
    }

    #[test]
    fn eigenvalue_count_validation() {
        assert_eq!(
            lowest_eigenvalues(&toy(), 0, 1e-6),
            Err(KgoError::InvalidCount {
                count: 0,
                dimension: 3
            })
        );
        assert!(lowest_eigenvalues(&toy(), 4, 1e-6).is_err());
        assert!(lowest_eigenvalues(&toy(), 1, 0.0).is_err());
    }

    #[test]
    fn unreachable_tolerance_exhausts_budget() {
        assert!(matches!(
            lowest_eigenvalues(&toy(), 1, 1e-300),
            Err(KgoError::BudgetExceeded { index: 0, .. })
        ));
    }

    #[test]
    fn weber_spectrum_is_odd_integers() {
        let grid = GridSpec::symmetric(10.0, 2001).unwrap();
        let op = discretize_weber(1.0, &grid).unwrap();
        let results = lowest_eigenvalues(&op, 5, 1e-10).unwrap();
        for (n, r) in results.iter().enumerate() {
            let exact = (2 * n + 1) as f64;
            assert!((r.k_squared - exact).abs() / exact < 1e-3, "n={n}");
        }
        assert!(results.windows(2).all(|w| w[1].k_squared > w[0].k_squared));
    }

    #[test]
    fn oracle_energy_examples() {
        let params = OscillatorParams::natural_units();
        let grid = default_grid(3, 1.0, 2001).unwrap();
        let results = oracle_energies(&params, 3, &grid, 1e-10).unwrap();
        // b = 1: Ē² = 1 + k² with k² = 1, 3, 5.
        for (r, e2) in results.iter().zip([2.0f64, 4.0, 6.0]) {
            let e = r.energy_dimensionless.unwrap();
            assert!((e - e2.sqrt()).abs() / e2.sqrt() < 2e-3);
        }

        let params = OscillatorParams::from_b(0.001).unwrap();
        let grid = default_grid(1, params.lambda(), 2001).unwrap();
        let r = oracle_energies(&params, 1, &grid, 1e-12 * params.lambda()).unwrap();
        let e = r[0].energy_dimensionless.unwrap();
        assert!((e - 1.0005).abs() < 5e-6);
        assert!((e - 1.001).abs() > 1e-4);

        assert!(oracle_energies(&params, 0, &grid, 1e-9).is_err());
    }

    #[test]
    fn sturm_count_monotone_and_complete() {
        let grid = GridSpec::symmetric(6.0, 301).unwrap();
        let op = discretize_weber(1.3, &grid).unwrap();
        let (lo, hi) = op.gershgorin_bounds();
        let mut previous = 0;
        for i in 0..=400 {
            let shift = lo - 1.0 + (hi - lo + 2.0) * i as f64 / 400.0;
            let c = sturm_count(&op, shift);
            assert!(c >= previous);
            previous = c;
        }
        assert_eq!(sturm_count(&op, hi + 1.0), op.dimension());
        assert_eq!(sturm_count(&op, f64::MAX), op.dimension());
    }

    #[test]
    fn bracket_counts_agree_with_eigenvalues() {
        let grid = GridSpec::symmetric(8.0, 401).unwrap();
        let op = discretize_weber(1.0, &grid).unwrap();
        let eigs: Vec<f64> = lowest_eigenvalues(&op, 30, 1e-11)
            .unwrap()
            .iter()
            .map(|r| r.k_squared)
            .collect();
        for (a, b) in [(0.0, 10.0), (2.5, 7.5), (4.2, 40.0), (13.0, 13.5)] {
            let listed = eigs.iter().filter(|&&e| a <= e && e < b).count();
            assert_eq!(
                sturm_count(&op, b) - sturm_count(&op, a),
                listed,
                "[{a}, {b})"
            );
        }
    }

    #[test]
    fn second_order_convergence() {
        let exact = [1.0, 3.0, 5.0];
        let errors = |points: usize| -> Vec<f64> {
            let grid = GridSpec::symmetric(10.0, points).unwrap();
            let op = discretize_weber(1.0, &grid).unwrap();
            lowest_eigenvalues(&op, 3, 1e-13)
                .unwrap()
                .iter()
                .zip(exact)
                .map(|(r, e)| (r.k_squared - e).abs())
                .collect()
        };
        let coarse = errors(401);
        let fine = errors(801);
        for n in 0..3 {
            let ratio = coarse[n] / fine[n];
            assert!((3.5..=4.5).contains(&ratio), "n={n} ratio={ratio}");
        }
    }

    #[test]
    fn effective_potential_examples() {
        let p = OscillatorParams::natural_units();
        assert_eq!(effective_potential(&p, 1.0, 2.0), 0.0);
        assert_eq!(effective_potential(&p, 1.0, 3.0), -11.25);
        let q = OscillatorParams::new(2.0, 0.4, 0.9, 3.0).unwrap();
        assert_eq!(effective_potential(&q, 5.0, 0.0), 0.0);
        assert_eq!(effective_potential_zero(&p, 1.0), 2.0);
    }

    #[test]
    fn profile_detects_unbounded_well() {
        let p = OscillatorParams::natural_units();
        let grid = GridSpec::symmetric(5.0, 101).unwrap();
        let profile = profile_effective_potential(&p, 1.0, &grid).unwrap();
        assert!(profile.unbounded_below_detected);
        assert_eq!(profile.outer_zero, 2.0);
        let n = profile.samples.len();
        for i in 0..n {
            let (x, v) = profile.samples[i];
            let (mx, mv) = profile.samples[n - 1 - i];
            assert_eq!(x, -mx);
            assert_eq!(v, mv);
        }
    }

    #[test]
    fn profile_needs_grid_past_outer_zero() {
        let p = OscillatorParams::natural_units();
        let grid = GridSpec::symmetric(1.0, 101).unwrap();
        assert_eq!(
            profile_effective_potential(&p, 1.0, &grid),
            Err(KgoError::GridTooSmall {
                required: 2.0,
                extent: 1.0
            })
        );
    }

    #[test]
    fn profile_needs_two_samples_beyond_outer_zero() {
        let p = OscillatorParams::natural_units();
        // Only the end nodes ±2.05 lie beyond x* = 2.
        let grid = GridSpec::symmetric(2.05, 41).unwrap();
        assert!(matches!(
            profile_effective_potential(&p, 1.0, &grid),
            Err(KgoError::GridTooSmall { .. })
        ));
        let grid = GridSpec::symmetric(2.2, 441).unwrap();
        assert!(
            profile_effective_potential(&p, 1.0, &grid)
                .unwrap()
                .unbounded_below_detected
        );
    }

    #[test]
    fn negative_energy_is_unbounded_everywhere() {
        let p = OscillatorParams::from_b(0.3).unwrap();
        let grid = GridSpec::symmetric(3.0, 61).unwrap();
        let profile = profile_effective_potential(&p, -0.5, &grid).unwrap();
        assert_eq!(profile.outer_zero, 0.0);
        assert!(profile.unbounded_below_detected);
    }
}
