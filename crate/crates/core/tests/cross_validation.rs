use kgo::oracle::{default_grid, oracle_energies};
use kgo::params::OscillatorParams;
use kgo::spectrum::{energy_combined, table_row};
use kgo::wavefn::{inner_product, sample, GridSpec};

#[test]
fn finite_differences_confirm_closed_form_levels() {
    for b in [1e-4, 1e-3, 0.1] {
        let params = OscillatorParams::from_b(b).unwrap();
        let lambda = params.lambda();
        let grid = default_grid(9, lambda, 2001).unwrap();
        let levels = oracle_energies(&params, 9, &grid, 1e-12 * lambda).unwrap();
        for level in &levels {
            let n = level.index;
            let oracle = level.energy_dimensionless.unwrap();
            let closed = energy_combined(n, b).value();
            assert!(
                (oracle - closed).abs() / closed < 2e-3,
                "b={b} n={n}: {oracle} vs {closed}"
            );
            assert!(level.converged);
            assert!(oracle >= 1.0);
            if b == 0.1 {
                // Separated from the published-table expression by far more
                // than the discretization error.
                let printed = table_row(n, b).e_rel;
                assert!((oracle - printed).abs() > 10.0 * (oracle - closed).abs());
                assert!((oracle - printed).abs() / printed > 1e-2);
            }
        }
        assert!(levels.windows(2).all(|w| w[1].k_squared > w[0].k_squared));
    }
}

#[test]
fn gram_matrix_is_identity() {
    let lambda: f64 = 1.0;
    let extent = 2.0 * (21.0f64).sqrt() / lambda.sqrt();
    let grid = GridSpec::symmetric(extent, 1601).unwrap();
    let states: Vec<_> = (0..=10)
        .map(|n| sample(n, &grid, lambda).unwrap())
        .collect();
    for (i, f) in states.iter().enumerate() {
        for (j, g) in states.iter().enumerate() {
            let expected = if i == j { 1.0 } else { 0.0 };
            let got = inner_product(f, g).unwrap();
            assert!((got - expected).abs() < 1e-7, "<{i}|{j}> = {got}");
        }
    }
}

#[test]
fn gram_matrix_at_other_lambda() {
    let lambda = 3.5;
    let grid = GridSpec::for_level(10, lambda, 2001).unwrap();
    let states: Vec<_> = (0..=10)
        .map(|n| sample(n, &grid, lambda).unwrap())
        .collect();
    for (i, f) in states.iter().enumerate() {
        assert!((f.norm_squared() - 1.0).abs() < 1e-8, "n={i}");
        for g in &states[i + 1..] {
            assert!(inner_product(f, g).unwrap().abs() < 1e-8);
        }
    }
}
