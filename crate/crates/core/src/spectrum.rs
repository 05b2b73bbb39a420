//! Closed-form eigenenergies, binding energies and the dimensionless energy
//! table.
//!
//! Every energy here is `Ē = E/mc²` as a function of `b = ħω/mc²`. Callers
//! are expected to pass a validated `b > 0`; [`generate_table`] is the only
//! entry point that validates its own inputs.

use std::fmt;
use std::str::FromStr;

use crate::error::{KgoError, Result};
use crate::params::DimensionlessEnergy;

/// Largest level index accepted by the table generator.
pub const MAX_LEVEL: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: usize) -> Self {
        if n.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// Even states: `Ē² = 1 + 2b(2n + 1/2)`.
pub fn energy_even(n: usize, b: f64) -> DimensionlessEnergy {
    DimensionlessEnergy((1.0 + 2.0 * b * (2.0 * n as f64 + 0.5)).sqrt())
}

/// Odd states: `Ē² = 1 + 2b(2n + 3/2)`.
pub fn energy_odd(n: usize, b: f64) -> DimensionlessEnergy {
    DimensionlessEnergy((1.0 + 2.0 * b * (2.0 * n as f64 + 1.5)).sqrt())
}

/// Both parities under one index: `Ē² = 1 + 2b(n + 1/2)`.
pub fn energy_combined(n: usize, b: f64) -> DimensionlessEnergy {
    DimensionlessEnergy((1.0 + 2.0 * b * (n as f64 + 0.5)).sqrt())
}

/// Second-order expansion `1 + b(n + 1/2) − (1/2)b²(n + 1/2)²`.
pub fn energy_second_order(n: usize, b: f64) -> f64 {
    let quanta = n as f64 + 0.5;
    1.0 + b * quanta - 0.5 * b * b * quanta * quanta
}

/// `Ē − 1`. Divided by `b` it tends to `n + 1/2` as `b → 0`.
pub fn binding_energy(n: usize, b: f64) -> f64 {
    energy_combined(n, b).binding()
}

/// A level of the combined spectrum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyLevel {
    pub n: usize,
    pub parity: Parity,
    pub energy: DimensionlessEnergy,
    pub binding: f64,
}

impl EnergyLevel {
    pub fn new(n: usize, b: f64) -> Self {
        let energy = energy_combined(n, b);
        Self {
            n,
            parity: Parity::of(n),
            energy,
            binding: energy.binding(),
        }
    }
}

/// Which relativistic expression fills the `e_rel` table column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TableFormula {
    /// `sqrt(1 + 2b(n + 1/2))`, the derived spectrum.
    #[default]
    Eq21,
    /// `sqrt(1 + 2b(n + 1))`, the expression the published table follows.
    Table,
}

impl FromStr for TableFormula {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "eq21" => Ok(TableFormula::Eq21),
            "table" => Ok(TableFormula::Table),
            other => Err(format!(
                "unknown formula `{other}` (expected eq21 or table)"
            )),
        }
    }
}

/// One `(n, b)` entry of the energy table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumRow {
    pub n: usize,
    pub b: f64,
    pub e_rel: f64,
    pub e_nr_plus_one: f64,
}

/// `1 + b(n + 1/2)`: the non-relativistic level shifted by the rest energy.
pub fn nonrelativistic_plus_one(n: usize, b: f64) -> f64 {
    1.0 + b * (n as f64 + 0.5)
}

/// Row as printed in the published table, `e_rel = sqrt(1 + 2b(n + 1))`.
pub fn table_row(n: usize, b: f64) -> SpectrumRow {
    SpectrumRow {
        n,
        b,
        e_rel: (1.0 + 2.0 * b * (n as f64 + 1.0)).sqrt(),
        e_nr_plus_one: nonrelativistic_plus_one(n, b),
    }
}

pub fn row(n: usize, b: f64, formula: TableFormula) -> SpectrumRow {
    match formula {
        TableFormula::Table => table_row(n, b),
        TableFormula::Eq21 => SpectrumRow {
            n,
            b,
            e_rel: energy_combined(n, b).value(),
            e_nr_plus_one: nonrelativistic_plus_one(n, b),
        },
    }
}

/// Rows for every `(n, b)` pair, `n`-major and `b`-minor.
pub fn generate_table(
    b_values: &[f64],
    n_values: &[usize],
    formula: TableFormula,
) -> Result<Vec<SpectrumRow>> {
    if b_values.is_empty() {
        return Err(KgoError::EmptyInput("b values"));
    }
    if n_values.is_empty() {
        return Err(KgoError::EmptyInput("level indices"));
    }
    for &b in b_values {
        if !(b.is_finite() && b > 0.0) {
            return Err(KgoError::NonPositiveParameter {
                name: "b",
                value: b,
            });
        }
    }
    if let Some(&n) = n_values.iter().find(|&&n| n > MAX_LEVEL) {
        return Err(KgoError::InvalidCount {
            count: n,
            dimension: MAX_LEVEL,
        });
    }
    Ok(n_values
        .iter()
        .flat_map(|&n| b_values.iter().map(move |&b| row(n, b, formula)))
        .collect())
}
