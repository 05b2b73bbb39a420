//! Physical parameters of the oscillator and the dimensionless quantities
//! derived from them.

use crate::error::{KgoError, Result};

/// Mass, classical frequency, reduced Planck constant and speed of light.
///
/// Fields are private so that every instance has passed validation: all four
/// are strictly positive and finite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorParams {
    mass: f64,
    omega: f64,
    hbar: f64,
    c: f64,
}

fn check_positive(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(KgoError::NonPositiveParameter { name, value })
    }
}

impl OscillatorParams {
    pub fn new(mass: f64, omega: f64, hbar: f64, c: f64) -> Result<Self> {
        Ok(Self {
            mass: check_positive("mass", mass)?,
            omega: check_positive("omega", omega)?,
            hbar: check_positive("hbar", hbar)?,
            c: check_positive("c", c)?,
        })
    }

    /// ħ = c = m = ω = 1.
    pub fn natural_units() -> Self {
        Self {
            mass: 1.0,
            omega: 1.0,
            hbar: 1.0,
            c: 1.0,
        }
    }

    /// Natural units with `m = ħ = c = 1` and `ω = b`, so that `self.b() == b`.
    pub fn from_b(b: f64) -> Result<Self> {
        Ok(Self {
            omega: check_positive("b", b)?,
            ..Self::natural_units()
        })
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    /// Inverse squared oscillator length, `λ = mω/ħ`.
    pub fn lambda(&self) -> f64 {
        self.mass * self.omega / self.hbar
    }

    /// Strength parameter `b = ħω/mc²`.
    pub fn b(&self) -> f64 {
        self.hbar * self.omega / (self.mass * self.c * self.c)
    }

    /// Rest energy `mc²`.
    pub fn rest_energy(&self) -> f64 {
        self.mass * self.c * self.c
    }

    /// `k² = (E² − m²c⁴)/(c²ħ²)`. Negative below the rest energy.
    pub fn k_squared(&self, energy: f64) -> f64 {
        let rest = self.rest_energy();
        (energy * energy - rest * rest) / (self.c * self.c * self.hbar * self.hbar)
    }

    /// `k′ = k²/2λ`, the Kummer-form energy parameter.
    pub fn k_prime(&self, energy: f64) -> f64 {
        self.k_squared(energy) / (2.0 * self.lambda())
    }

    /// Maps `k²` back to the dimensionless energy `Ē = sqrt(1 + 2b·k²/2λ)`.
    pub fn energy_from_k_squared(&self, k_squared: f64) -> f64 {
        (1.0 + 2.0 * self.b() * (k_squared / (2.0 * self.lambda()))).sqrt()
    }
}

/// `k² = (E² − m²c⁴)/(c²ħ²)` for the given parameters.
pub fn k_squared(params: &OscillatorParams, energy: f64) -> f64 {
    params.k_squared(energy)
}

/// Energy in units of the rest energy, `Ē = E/mc²`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct DimensionlessEnergy(pub f64);

impl DimensionlessEnergy {
    pub fn value(self) -> f64 {
        self.0
    }

    /// `Ē − 1`, the binding energy in units of mc².
    pub fn binding(self) -> f64 {
        self.0 - 1.0
    }

    pub fn to_absolute(self, params: &OscillatorParams) -> f64 {
        self.0 * params.rest_energy()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn natural_units_are_all_one() {
        let p = OscillatorParams::natural_units();
        assert_eq!((p.mass(), p.omega(), p.hbar(), p.c()), (1.0, 1.0, 1.0, 1.0));
        assert_eq!(p.lambda(), 1.0);
        assert_eq!(p.b(), 1.0);
    }

    #[test]
    fn from_b_sets_omega() {
        let p = OscillatorParams::from_b(0.1).unwrap();
        assert_eq!(p.omega(), 0.1);
        assert_eq!(p.b(), 0.1);
        assert_eq!(
            OscillatorParams::from_b(1.0).unwrap(),
            OscillatorParams::natural_units()
        );
        assert_eq!(OscillatorParams::from_b(0.0001).unwrap().b(), 0.0001);
    }

    #[test]
    fn rejects_bad_parameters() {
        for b in [0.0, -1.0, f64::NAN, f64::INFINITY] {
            assert!(matches!(
                OscillatorParams::from_b(b),
                Err(KgoError::NonPositiveParameter { name: "b", .. })
            ));
        }
        assert!(OscillatorParams::new(1.0, 1.0, -2.0, 1.0).is_err());
        assert!(OscillatorParams::new(1.0, 1.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn k_squared_examples() {
        let p = OscillatorParams::natural_units();
        assert_eq!(k_squared(&p, 1.0), 0.0);
        assert!((k_squared(&p, 3f64.sqrt()) - 2.0).abs() < 1e-15);
        assert!(k_squared(&p, 0.5) < 0.0);

        // Printed table entry n = 0, b = 0.1.
        let p = OscillatorParams::from_b(0.1).unwrap();
        let e: f64 = 1.09545;
        assert!((p.k_squared(e) - (e * e - 1.0)).abs() < 1e-15);
        assert!((e * e - 1.0 - 0.2).abs() < 1e-4);
    }

    proptest! {
        #[test]
        fn from_b_round_trips(b in 1e-8f64..1e3) {
            prop_assert_eq!(OscillatorParams::from_b(b).unwrap().b(), b);
        }

        #[test]
        fn k_squared_increasing_in_abs_energy(
            e1 in 0.0f64..50.0, de in 1e-6f64..10.0,
            mass in 0.1f64..10.0, c in 0.5f64..5.0,
        ) {
            let p = OscillatorParams::new(mass, 1.3, 0.7, c).unwrap();
            prop_assert!(p.k_squared(e1 + de) > p.k_squared(e1));
            prop_assert!(p.k_squared(-(e1 + de)) > p.k_squared(-e1));
            prop_assert_eq!(p.k_squared(p.rest_energy()), 0.0);
        }

        #[test]
        fn kummer_parameter_in_dimensionless_form(
            ebar in 1.0f64..5.0,
            mass in 0.1f64..10.0, omega in 0.1f64..10.0,
            hbar in 0.1f64..10.0, c in 0.5f64..5.0,
        ) {
            let p = OscillatorParams::new(mass, omega, hbar, c).unwrap();
            let energy = ebar * p.rest_energy();
            let lhs = p.k_squared(energy) * (c * c * hbar * hbar)
                / (2.0 * p.rest_energy() * hbar * omega);
            let rhs = (ebar * ebar - 1.0) / (2.0 * p.b());
            prop_assert!((lhs - rhs).abs() <= 1e-10 * rhs.abs().max(1.0));
            prop_assert!((p.k_prime(energy) - rhs).abs() <= 1e-10 * rhs.abs().max(1.0));
        }
    }
}
