//! SI conversions for an electron plasma.
//!
//! With `k_B T = m v_T²/2` and `k_T = m v_T/ħ` the frequency unit is
//! `k_T v_T = 2 k_B T/ħ`.

use crate::dielectric::{PlasmaParams, QueryPoint};
use crate::error::{domain, Result};

/// Electron mass, kg.
pub const ELECTRON_MASS: f64 = 9.109_383_701_5e-31;
/// Elementary charge, C.
pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;
/// Reduced Planck constant, J s.
pub const HBAR: f64 = 1.054_571_817e-34;
/// Boltzmann constant, J/K.
pub const BOLTZMANN: f64 = 1.380_649e-23;
/// Vacuum permittivity, F/m.
pub const EPSILON_0: f64 = 8.854_187_812_8e-12;

/// Electron plasma described by temperature (K), number density (m⁻³)
/// and collision frequency (s⁻¹).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SiPlasma {
    pub temperature: f64,
    pub density: f64,
    pub collision_rate: f64,
}

impl SiPlasma {
    pub fn new(temperature: f64, density: f64, collision_rate: f64) -> Result<Self> {
        if !(temperature > 0.0 && temperature.is_finite()) {
            return Err(domain("temperature", temperature, "must be finite and > 0"));
        }
        if !(density >= 0.0 && density.is_finite()) {
            return Err(domain("density", density, "must be finite and >= 0"));
        }
        if !(collision_rate >= 0.0 && collision_rate.is_finite()) {
            return Err(domain(
                "collision_rate",
                collision_rate,
                "must be finite and >= 0",
            ));
        }
        Ok(Self {
            temperature,
            density,
            collision_rate,
        })
    }

    /// `v_T = sqrt(2 k_B T/m)`, m/s.
    pub fn thermal_velocity(&self) -> f64 {
        (2.0 * BOLTZMANN * self.temperature / ELECTRON_MASS).sqrt()
    }

    /// `k_T = m v_T/ħ`, m⁻¹.
    pub fn thermal_wave_number(&self) -> f64 {
        ELECTRON_MASS * self.thermal_velocity() / HBAR
    }

    /// `k_T v_T`, s⁻¹.
    pub fn frequency_unit(&self) -> f64 {
        2.0 * BOLTZMANN * self.temperature / HBAR
    }

    /// `ω_p = sqrt(n e²/(ε₀ m))`, s⁻¹.
    pub fn plasma_frequency(&self) -> f64 {
        (self.density * ELEMENTARY_CHARGE * ELEMENTARY_CHARGE / (EPSILON_0 * ELECTRON_MASS)).sqrt()
    }

    pub fn params(&self) -> Result<PlasmaParams<f64>> {
        let unit = self.frequency_unit();
        PlasmaParams::new(self.plasma_frequency() / unit, self.collision_rate / unit)
    }

    /// Dimensionless point for angular frequency ω (s⁻¹) and wave number k (m⁻¹).
    pub fn point(&self, omega: f64, k: f64) -> QueryPoint<f64> {
        QueryPoint::new(
            omega / self.frequency_unit(),
            k / self.thermal_wave_number(),
        )
    }
}
