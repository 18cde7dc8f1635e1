//! Longitudinal permittivity models in dimensionless variables.
//!
//! Frequencies are in units of `k_T v_T`, wave numbers in units of `k_T`:
//! `x = ω/(k_T v_T)`, `y = ν/(k_T v_T)`, `q = k/k_T`, `x_p = ω_p/(k_T v_T)`,
//! and the dispersion argument is `z = (x + iy)/q`.
//!
//! Every model can be evaluated at a complex frequency, which is what the
//! dispersion solver needs; the real-frequency entry points are thin
//! wrappers. Collisionless (`y = 0`) evaluation uses the Landau
//! continuation of `t(z)`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;

use crate::error::{domain, Error, Result};
use crate::scalar::{imag, real, Real};
use crate::special_functions::{dawson, AccuracyPolicy};

/// Dimensionless plasma state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlasmaParams<T> {
    /// Plasma frequency `ω_p/(k_T v_T)`.
    pub x_p: T,
    /// Collision frequency `ν/(k_T v_T)`.
    pub y: T,
}

impl<T: Real> PlasmaParams<T> {
    pub fn new(x_p: T, y: T) -> Result<Self> {
        let p = Self { x_p, y };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        non_negative("x_p", self.x_p)?;
        non_negative("y", self.y)
    }

    /// Quantum parameter `Q = ħω_p/(κT) = 2 x_p`.
    pub fn quantum_parameter(&self) -> T {
        T::lit(2.0) * self.x_p
    }

    /// Debye wave number in units of `k_T`: `k_D/k_T = √2 x_p`.
    pub fn debye_number(&self) -> T {
        T::SQRT_2() * self.x_p
    }

    /// `q = k/k_T` for a given `κ = k/k_D`.
    pub fn q_from_kappa(&self, kappa: T) -> T {
        kappa * self.debye_number()
    }

    /// `κ = k/k_D` for a given `q = k/k_T`.
    pub fn kappa_from_q(&self, q: T) -> T {
        q / self.debye_number()
    }

    /// Parameters with the plasma frequency chosen so that `Q = 2 x_p`.
    pub fn with_quantum_parameter(quantum: T, y: T) -> Result<Self> {
        Self::new(quantum * T::lit(0.5), y)
    }
}

/// Real frequency and wave number at which a model is evaluated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QueryPoint<T> {
    /// Frequency `ω/(k_T v_T)`.
    pub x: T,
    /// Wave number `k/k_T`.
    pub q: T,
}

impl<T: Real> QueryPoint<T> {
    pub fn new(x: T, q: T) -> Self {
        Self { x, q }
    }

    /// `z = (x + iy)/q`; `None` when `q = 0`.
    pub fn z(&self, y: T) -> Option<Complex<T>> {
        (self.q > T::zero()).then(|| Complex::new(self.x, y) / self.q)
    }
}

/// Dielectric model selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModelKind {
    /// Quantum collisional plasma with the particle-conserving BGK integral.
    Quantum,
    /// Classical collisional plasma.
    Classical,
    /// Mermin's particle-conserving extension of the Lindhard function.
    Mermin,
    /// Collisionless quantum (Lindhard) permittivity.
    Lindhard,
    /// Zero-frequency limit of the quantum model.
    Static,
    /// Long-wave (`k = 0`) limit.
    Drude,
}

impl ModelKind {
    pub const ALL: [ModelKind; 6] = [
        ModelKind::Quantum,
        ModelKind::Classical,
        ModelKind::Mermin,
        ModelKind::Lindhard,
        ModelKind::Static,
        ModelKind::Drude,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ModelKind::Quantum => "quantum",
            ModelKind::Classical => "classical",
            ModelKind::Mermin => "mermin",
            ModelKind::Lindhard => "lindhard",
            ModelKind::Static => "static",
            ModelKind::Drude => "drude",
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown model '{0}' (expected quantum, classical, mermin, lindhard, static or drude)")]
pub struct UnknownModel(pub String);

impl FromStr for ModelKind {
    type Err = UnknownModel;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "quantum" => Ok(ModelKind::Quantum),
            "classical" => Ok(ModelKind::Classical),
            "mermin" => Ok(ModelKind::Mermin),
            "lindhard" | "lindhard_collisionless" => Ok(ModelKind::Lindhard),
            "static" => Ok(ModelKind::Static),
            "drude" => Ok(ModelKind::Drude),
            other => Err(UnknownModel(other.to_string())),
        }
    }
}

/// Normalisation of the static kernel `D₀(q)` in the Mermin denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MerminD0 {
    /// `D₀ = [t(-q/2) - t(q/2)]/q = 4F(q/2)/q`.
    #[default]
    Dawson,
    /// `D₀ = 2F(q/2)`.
    /// Kept for comparison only; it does not reduce to `2` as `q → 0`.
    Compat,
}

/// Evaluator for all permittivity models.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dielectric<T> {
    pub policy: AccuracyPolicy<T>,
    /// Below this `q` the quantum kernel uses its long-wave expansion.
    pub q_min: T,
    pub mermin_d0: MerminD0,
}

impl<T: Real> Default for Dielectric<T> {
    fn default() -> Self {
        Self {
            policy: AccuracyPolicy::default(),
            q_min: T::lit(1e-4),
            mermin_d0: MerminD0::Dawson,
        }
    }
}

fn non_negative<T: Real>(name: &'static str, v: T) -> Result<()> {
    if v >= T::zero() && v.is_finite() {
        Ok(())
    } else {
        Err(domain(name, v, "must be finite and >= 0"))
    }
}

fn positive<T: Real>(name: &'static str, v: T) -> Result<()> {
    if v > T::zero() && v.is_finite() {
        Ok(())
    } else {
        Err(domain(name, v, "must be finite and > 0"))
    }
}

fn finite_omega<T: Real>(omega: Complex<T>) -> Result<()> {
    if omega.re.is_finite() && omega.im.is_finite() {
        Ok(())
    } else {
        Err(domain("x", omega.re, "frequency must be finite"))
    }
}

impl<T: Real> Dielectric<T> {
    pub fn with_policy(policy: AccuracyPolicy<T>) -> Self {
        Self {
            policy,
            ..Self::default()
        }
    }

    /// Evaluates `model` at a real frequency.
    ///
    /// The static model ignores `point.x`; the Lindhard model ignores
    /// `params.y`; the Drude model ignores `point.q`.
    pub fn epsilon(
        &self,
        model: ModelKind,
        params: &PlasmaParams<T>,
        point: &QueryPoint<T>,
    ) -> Result<Complex<T>> {
        self.epsilon_at(model, params, real(point.x), point.q)
    }

    /// Evaluates `model` at a complex frequency `omega` (units of `k_T v_T`).
    pub fn epsilon_at(
        &self,
        model: ModelKind,
        params: &PlasmaParams<T>,
        omega: Complex<T>,
        q: T,
    ) -> Result<Complex<T>> {
        params.validate()?;
        finite_omega(omega)?;
        match model {
            ModelKind::Quantum => self.quantum_at(params.x_p, params.y, omega, q),
            ModelKind::Classical => self.classical_at(params.x_p, params.y, omega, q),
            ModelKind::Mermin => self.mermin_at(params.x_p, params.y, omega, q),
            ModelKind::Lindhard => {
                positive("q", q)?;
                self.quantum_at(params.x_p, T::zero(), omega, q)
            }
            ModelKind::Static => self.epsilon_static(params.x_p, params.y, q),
            ModelKind::Drude => drude_at(params.x_p, params.y, omega),
        }
    }

    pub fn epsilon_quantum(
        &self,
        params: &PlasmaParams<T>,
        point: &QueryPoint<T>,
    ) -> Result<Complex<T>> {
        self.epsilon(ModelKind::Quantum, params, point)
    }

    pub fn epsilon_classical(
        &self,
        params: &PlasmaParams<T>,
        point: &QueryPoint<T>,
    ) -> Result<Complex<T>> {
        self.epsilon(ModelKind::Classical, params, point)
    }

    pub fn epsilon_mermin(
        &self,
        params: &PlasmaParams<T>,
        point: &QueryPoint<T>,
    ) -> Result<Complex<T>> {
        self.epsilon(ModelKind::Mermin, params, point)
    }

    /// Collisionless quantum permittivity `1 + (x_p²/q²) J₀(x/q)`.
    pub fn epsilon_lindhard(&self, x_p: T, x: T, q: T) -> Result<Complex<T>> {
        self.epsilon(
            ModelKind::Lindhard,
            &PlasmaParams { x_p, y: T::zero() },
            &QueryPoint { x, q },
        )
    }

    /// Lindhard permittivity through the explicit difference
    /// `1 + (x_p²/q³)[t(x/q - q/2) - t(x/q + q/2)]`, with no series switch.
    pub fn epsilon_lindhard_difference_form(&self, x_p: T, x: T, q: T) -> Result<Complex<T>> {
        non_negative("x_p", x_p)?;
        positive("q", q)?;
        finite_omega(real(x))?;
        let z = real(x / q);
        let h = T::lit(0.5) * q;
        let diff = self.policy.plasma_t(z - h) - self.policy.plasma_t(z + h);
        Ok(diff * (x_p * x_p / (q * q * q)) + T::one())
    }

    /// Zero-frequency permittivity `1 + (x_p²/q²) J₀(iy/q)/λ₀(iy/q)`.
    ///
    /// Real up to rounding; the imaginary part is returned as computed.
    pub fn epsilon_static(&self, x_p: T, y: T, q: T) -> Result<Complex<T>> {
        non_negative("x_p", x_p)?;
        positive("y", y)?;
        positive("q", q)?;
        let z = imag(y / q);
        let l = self.policy.lambda0(z);
        let j = self.j0(z, q);
        Ok(j / l * (x_p * x_p / (q * q)) + T::one())
    }

    /// Long-wave limit `1 - x_p²/((x + iy) x)`.
    pub fn epsilon_drude(&self, x_p: T, x: T, y: T) -> Result<Complex<T>> {
        non_negative("x_p", x_p)?;
        non_negative("y", y)?;
        drude_at(x_p, y, real(x))
    }

    /// Dimensionless conductivity `ŝ = -i x (ε - 1)`, so that `ε = 1 + i ŝ/x`.
    pub fn conductivity(
        &self,
        params: &PlasmaParams<T>,
        point: &QueryPoint<T>,
        model: ModelKind,
    ) -> Result<Complex<T>> {
        if model == ModelKind::Static {
            return Err(Error::Unsupported {
                model: model.name(),
                what: "conductivity (the static limit has x = 0)",
            });
        }
        positive("x", point.x)?;
        let eps = self.epsilon(model, params, point)?;
        Ok(imag(-point.x) * (eps - T::one()))
    }

    /// `J₀(z) = [t(z - q/2) - t(z + q/2)]/q`, switching to the long-wave
    /// kernel `2 exp(-q²/4) [λ₀ + (q²/6)(½ + z²λ₀)]` below `q_min`.
    pub(crate) fn j0(&self, z: Complex<T>, q: T) -> Complex<T> {
        if q < self.q_min {
            let l = self.policy.lambda0(z);
            let q2 = q * q;
            let k = l + (z * z * l + T::lit(0.5)) * (q2 / T::lit(6.0));
            k * (T::lit(2.0) * (-q2 * T::lit(0.25)).exp())
        } else {
            self.policy.diff_over_q(z, q)
        }
    }

    /// `D₀(q)` of the Mermin denominator.
    pub fn mermin_d0(&self, q: T) -> T {
        let f = dawson(T::lit(0.5) * q);
        match self.mermin_d0 {
            MerminD0::Dawson => T::lit(4.0) * f / q,
            MerminD0::Compat => T::lit(2.0) * f,
        }
    }

    fn quantum_at(&self, x_p: T, y: T, omega: Complex<T>, q: T) -> Result<Complex<T>> {
        non_negative("q", q)?;
        if q == T::zero() {
            return drude_at(x_p, y, omega);
        }
        let s = omega + imag(y);
        let z = s / q;
        let j = self.j0(z, q);
        let ratio = if y == T::zero() {
            real(T::one())
        } else {
            s / (omega + imag(y) * self.policy.lambda0(z))
        };
        Ok(ratio * j * (x_p * x_p / (q * q)) + T::one())
    }

    fn classical_at(&self, x_p: T, y: T, omega: Complex<T>, q: T) -> Result<Complex<T>> {
        non_negative("q", q)?;
        if q == T::zero() {
            return drude_at(x_p, y, omega);
        }
        let s = omega + imag(y);
        let z = s / q;
        let l = self.policy.lambda0(z);
        let ratio = if y == T::zero() {
            real(T::one())
        } else {
            s / (omega + imag(y) * l)
        };
        Ok(ratio * l * (T::lit(2.0) * x_p * x_p / (q * q)) + T::one())
    }

    fn mermin_at(&self, x_p: T, y: T, omega: Complex<T>, q: T) -> Result<Complex<T>> {
        non_negative("q", q)?;
        if q == T::zero() {
            return drude_at(x_p, y, omega);
        }
        let s = omega + imag(y);
        let d = self.j0(s / q, q);
        let ratio = if y == T::zero() {
            real(T::one())
        } else {
            s / (omega + imag(y) * d / self.mermin_d0(q))
        };
        Ok(ratio * d * (x_p * x_p / (q * q)) + T::one())
    }
}

fn drude_at<T: Real>(x_p: T, y: T, omega: Complex<T>) -> Result<Complex<T>> {
    if omega.norm() == T::zero() {
        return Err(domain(
            "x",
            omega.re,
            "must be nonzero in the long-wave limit (k -> 0 and omega -> 0 do not commute)",
        ));
    }
    Ok(real(T::one()) - real(x_p * x_p) / ((omega + imag(y)) * omega))
}

/// Quantum permittivity with default settings.
pub fn epsilon_quantum<T: Real>(
    params: &PlasmaParams<T>,
    point: &QueryPoint<T>,
) -> Result<Complex<T>> {
    Dielectric::default().epsilon_quantum(params, point)
}

/// Classical permittivity with default settings.
pub fn epsilon_classical<T: Real>(
    params: &PlasmaParams<T>,
    point: &QueryPoint<T>,
) -> Result<Complex<T>> {
    Dielectric::default().epsilon_classical(params, point)
}

/// Mermin permittivity with default settings.
pub fn epsilon_mermin<T: Real>(
    params: &PlasmaParams<T>,
    point: &QueryPoint<T>,
) -> Result<Complex<T>> {
    Dielectric::default().epsilon_mermin(params, point)
}

pub fn epsilon_lindhard<T: Real>(x_p: T, x: T, q: T) -> Result<Complex<T>> {
    Dielectric::default().epsilon_lindhard(x_p, x, q)
}

pub fn epsilon_static<T: Real>(x_p: T, y: T, q: T) -> Result<Complex<T>> {
    Dielectric::default().epsilon_static(x_p, y, q)
}

pub fn epsilon_drude<T: Real>(x_p: T, x: T, y: T) -> Result<Complex<T>> {
    Dielectric::default().epsilon_drude(x_p, x, y)
}

pub fn conductivity<T: Real>(
    params: &PlasmaParams<T>,
    point: &QueryPoint<T>,
    model: ModelKind,
) -> Result<Complex<T>> {
    Dielectric::default().conductivity(params, point, model)
}

#[cfg(test)]
mod tests {
    use super::*;

    type C = Complex<f64>;

    fn pp(x_p: f64, y: f64) -> PlasmaParams<f64> {
        PlasmaParams::new(x_p, y).unwrap()
    }

    #[test]
    fn no_plasma_means_vacuum() {
        let d = Dielectric::<f64>::default();
        let pt = QueryPoint::new(0.8, 0.3);
        for m in ModelKind::ALL {
            let e = d.epsilon(m, &pp(0.0, 0.1), &pt).unwrap();
            assert_eq!(e, C::new(1.0, 0.0), "{m}");
        }
    }

    #[test]
    fn drude_values() {
        assert_eq!(epsilon_drude(1.0, 1.0, 0.0).unwrap(), C::new(0.0, 0.0));
        assert_eq!(epsilon_drude(1.0, 2.0, 0.0).unwrap(), C::new(0.75, 0.0));
        assert!(epsilon_drude(1.0, 0.0, 0.1).is_err());
    }

    #[test]
    fn q_zero_is_the_drude_limit() {
        let p = pp(1.0, 0.05);
        let pt = QueryPoint::new(1.2, 0.0);
        let drude = epsilon_drude(1.0, 1.2, 0.05).unwrap();
        for m in [ModelKind::Quantum, ModelKind::Classical, ModelKind::Mermin] {
            assert_eq!(Dielectric::default().epsilon(m, &p, &pt).unwrap(), drude);
        }
    }

    #[test]
    fn long_wave_kernel_joins_direct_kernel() {
        let mut d = Dielectric::<f64>::default();
        let p = pp(1.0, 0.1);
        let pt = QueryPoint::new(1.0, 0.99e-4);
        let series = d.epsilon_quantum(&p, &pt).unwrap();
        d.q_min = 1e-5;
        let direct = d.epsilon_quantum(&p, &pt).unwrap();
        assert!((series - direct).norm() < 1e-13);
    }

    #[test]
    fn mermin_d0_has_the_right_long_wave_limit() {
        let d = Dielectric::<f64>::default();
        assert!((d.mermin_d0(1e-6) - 2.0).abs() < 1e-12);
        let literal = Dielectric {
            mermin_d0: MerminD0::Compat,
            ..d
        };
        assert!(literal.mermin_d0(1e-6) < 1e-5);
    }

    #[test]
    fn conductivity_rules() {
        let d = Dielectric::<f64>::default();
        let pt = QueryPoint::new(1.5, 0.5);
        let s = d
            .conductivity(&pp(1.0, 0.0), &pt, ModelKind::Drude)
            .unwrap();
        assert!(s.re.abs() < 1e-15 && (s.im - 1.0 / 1.5).abs() < 1e-15);
        assert!(matches!(
            d.conductivity(&pp(1.0, 0.1), &pt, ModelKind::Static),
            Err(Error::Unsupported { .. })
        ));
        assert!(d
            .conductivity(
                &pp(1.0, 0.1),
                &QueryPoint::new(0.0, 0.5),
                ModelKind::Quantum
            )
            .is_err());
    }

    #[test]
    fn model_names_round_trip() {
        for m in ModelKind::ALL {
            assert_eq!(m.name().parse::<ModelKind>().unwrap(), m);
        }
        assert_eq!(
            "lindhard_collisionless".parse::<ModelKind>().unwrap(),
            ModelKind::Lindhard
        );
        assert!("plasma".parse::<ModelKind>().is_err());
    }

    #[test]
    fn invalid_inputs_are_rejected() {
        assert!(PlasmaParams::new(-1.0, 0.1).is_err());
        assert!(PlasmaParams::new(1.0, f64::NAN).is_err());
        assert!(epsilon_quantum(&pp(1.0, 0.1), &QueryPoint::new(1.0, -0.1)).is_err());
        assert!(epsilon_lindhard(1.0, 1.0, 0.0).is_err());
        assert!(epsilon_static(1.0, 0.0, 0.5).is_err());
    }

    #[test]
    fn single_precision_quantum() {
        let p = PlasmaParams::new(1.0_f32, 0.1).unwrap();
        let e32 = epsilon_quantum(&p, &QueryPoint::new(1.0_f32, 0.5)).unwrap();
        let e64 = epsilon_quantum(&pp(1.0, 0.1), &QueryPoint::new(1.0, 0.5)).unwrap();
        assert!((e32.re as f64 - e64.re).abs() < 1e-4 && (e32.im as f64 - e64.im).abs() < 1e-4);
    }
}
