//! Brute-force quadrature of the defining integrals.
//!
//! These routines share no code with [`crate::special_functions`] and are
//! meant for validation only: they are slow, work in `f64`, and require the
//! poles to stay off the real axis (apart from the dedicated real-axis
//! principal-value routine).

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::dielectric::{PlasmaParams, QueryPoint};
use crate::error::{domain, Error, Result};

const GAUSS_POINTS: usize = 15;

/// Tolerances and limits for the adaptive quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// The integrals run over `[-R, R]`; `exp(-R²)` must be negligible.
    pub truncation_radius: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            abs_tol: 1e-13,
            rel_tol: 1e-11,
            truncation_radius: 12.0,
            max_subdivisions: 10_000,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0) {
            return Err(domain("abs_tol", self.abs_tol, "must be > 0"));
        }
        if !(self.rel_tol > 0.0) {
            return Err(domain("rel_tol", self.rel_tol, "must be > 0"));
        }
        if !(self.truncation_radius >= 8.0 && self.truncation_radius.is_finite()) {
            return Err(domain(
                "truncation_radius",
                self.truncation_radius,
                "must be finite and >= 8",
            ));
        }
        if self.max_subdivisions == 0 {
            return Err(domain("max_subdivisions", 0.0, "must be >= 1"));
        }
        Ok(())
    }

    /// Same spec with both tolerances scaled by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            abs_tol: self.abs_tol * factor,
            rel_tol: self.rel_tol * factor,
            ..*self
        }
    }
}

/// Result of an adaptive quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: Complex64,
    /// Sum of the local error estimates.
    pub error: f64,
    pub subdivisions: usize,
}

/// Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration on the
/// three-term recurrence.
fn gauss_legendre() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| {
        let n = GAUSS_POINTS;
        let mut rule = Vec::with_capacity(n);
        for i in 0..n {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            rule.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
        }
        rule
    })
}

fn gauss<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> Complex64 {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    gauss_legendre()
        .iter()
        .map(|&(x, w)| f(mid + half * x) * w)
        .sum::<Complex64>()
        * half
}

struct Piece {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
}

impl Piece {
    fn new<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> Self {
        let m = 0.5 * (a + b);
        let whole = gauss(f, a, b);
        let value = gauss(f, a, m) + gauss(f, m, b);
        Self {
            a,
            b,
            value,
            error: (whole - value).norm(),
        }
    }
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}

impl Eq for Piece {}

impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Piece {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Globally adaptive quadrature of `f` over `[lo, hi]`, starting from the
/// given interior breakpoints.
pub fn integrate<F: Fn(f64) -> Complex64>(
    f: F,
    lo: f64,
    hi: f64,
    breakpoints: &[f64],
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    spec.validate()?;
    let mut cuts: Vec<f64> = breakpoints
        .iter()
        .copied()
        .filter(|c| c.is_finite() && *c > lo && *c < hi)
        .collect();
    cuts.push(lo);
    cuts.push(hi);
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();

    let mut heap: BinaryHeap<Piece> = cuts
        .windows(2)
        .map(|w| Piece::new(&f, w[0], w[1]))
        .collect();
    let mut subdivisions = 0usize;
    loop {
        let value: Complex64 = heap.iter().map(|p| p.value).sum();
        let error: f64 = heap.iter().map(|p| p.error).sum();
        if error <= spec.abs_tol.max(spec.rel_tol * value.norm()) {
            return Ok(Estimate {
                value,
                error,
                subdivisions,
            });
        }
        if subdivisions >= spec.max_subdivisions {
            return Err(Error::QuadratureNotConverged {
                error,
                subdivisions,
            });
        }
        // split the worst pieces in batches to keep the bookkeeping linear
        let batch = (heap.len() / 8).max(1);
        for _ in 0..batch {
            let Some(worst) = heap.pop() else { break };
            let m = 0.5 * (worst.a + worst.b);
            if !(m > worst.a && m < worst.b) {
                return Err(Error::QuadratureNotConverged {
                    error,
                    subdivisions,
                });
            }
            heap.push(Piece::new(&f, worst.a, m));
            heap.push(Piece::new(&f, m, worst.b));
            subdivisions += 1;
        }
    }
}

fn require_upper(z: Complex64) -> Result<()> {
    if z.im > 0.0 && z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(domain("Im z", z.im, "the quadrature oracle needs Im z > 0"))
    }
}

fn gaussian(mu: f64) -> f64 {
    (-mu * mu).exp() / PI.sqrt()
}

/// `(1/√π) ∫ exp(-μ²)/(μ - z) dμ`.
pub fn quad_t(z: Complex64, spec: &QuadratureSpec) -> Result<Estimate> {
    require_upper(z)?;
    let r = spec.truncation_radius;
    integrate(|mu| gaussian(mu) / (mu - z), -r, r, &[z.re], spec)
}

/// `(1/√π) ∫ μ exp(-μ²)/(μ - z) dμ`, the integral form of `λ₀`.
pub fn quad_lambda0(z: Complex64, spec: &QuadratureSpec) -> Result<Estimate> {
    require_upper(z)?;
    let r = spec.truncation_radius;
    integrate(|mu| mu * gaussian(mu) / (mu - z), -r, r, &[z.re], spec)
}

/// `-(1/√π) ∫ exp(-μ²)/((μ - z)² - q²/4) dμ`.
pub fn quad_j0(z: Complex64, q: f64, spec: &QuadratureSpec) -> Result<Estimate> {
    require_upper(z)?;
    if !(q > 0.0 && q.is_finite()) {
        return Err(domain("q", q, "must be finite and > 0"));
    }
    let r = spec.truncation_radius;
    let h2 = 0.25 * q * q;
    integrate(
        |mu| -gaussian(mu) / ((mu - z) * (mu - z) - h2),
        -r,
        r,
        &[z.re - 0.5 * q, z.re + 0.5 * q],
        spec,
    )
}

/// `t(x)` on the real axis: principal value plus the half residue
/// `i√π exp(-x²)`.
///
/// The principal value is folded onto `s > 0` as
/// `-(2/√π) ∫₀^∞ exp(-x² - s²) sinh(2xs)/s ds`, which has no singularity.
pub fn quad_t_real_axis(x: f64, spec: &QuadratureSpec) -> Result<Estimate> {
    if !x.is_finite() {
        return Err(domain("x", x, "must be finite"));
    }
    let hi = spec.truncation_radius + x.abs();
    let est = integrate(
        |s| {
            let g = if s == 0.0 {
                2.0 * x
            } else {
                (2.0 * x * s).sinh() / s
            };
            Complex64::new(-2.0 * (-(x * x) - s * s).exp() * g / PI.sqrt(), 0.0)
        },
        0.0,
        hi,
        &[x.abs()],
        spec,
    )?;
    Ok(Estimate {
        value: est.value + Complex64::new(0.0, PI.sqrt() * (-x * x).exp()),
        ..est
    })
}

/// The quantum permittivity written out with both integrals done by
/// quadrature:
///
/// `ε = 1 - (x_p²/q²) · ((x+iy)/√π ∫ e^{-τ²}/([τ-z]² - q²/4) dτ)
///          / (x + (iy/√π) ∫ τ e^{-τ²}/(τ - z) dτ)`.
pub fn quad_epsilon_quantum(
    params: &PlasmaParams<f64>,
    point: &QueryPoint<f64>,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    params.validate()?;
    if !(point.q > 0.0) {
        return Err(domain("q", point.q, "must be > 0"));
    }
    if !(params.y > 0.0) {
        return Err(domain("y", params.y, "the quadrature oracle needs y > 0"));
    }
    let (x_p, y, x, q) = (params.x_p, params.y, point.x, point.q);
    let s = Complex64::new(x, y);
    let z = s / q;
    let num = quad_j0(z, q, spec)?;
    let lam = quad_lambda0(z, spec)?;
    // quad_j0 carries the leading minus sign of J₀
    let n = -num.value;
    let den = x + Complex64::new(0.0, y) * lam.value;
    let pref = x_p * x_p / (q * q);
    let value = 1.0 - pref * s * n / den;
    let error = pref
        * s.norm()
        * (num.error / den.norm() + (s * n).norm() * y * lam.error / den.norm_sqr());
    Ok(Estimate {
        value,
        error,
        subdivisions: num.subdivisions + lam.subdivisions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_rule_is_exact_for_polynomials() {
        let rule = gauss_legendre();
        let total: f64 = rule.iter().map(|&(_, w)| w).sum();
        assert!((total - 2.0).abs() < 1e-14);
        let x28: f64 = rule.iter().map(|&(x, w)| w * x.powi(28)).sum();
        assert!((x28 - 2.0 / 29.0).abs() < 1e-14);
    }

    #[test]
    fn gaussian_integral() {
        let est = integrate(
            |m| Complex64::new(gaussian(m), 0.0),
            -12.0,
            12.0,
            &[],
            &QuadratureSpec::default(),
        )
        .unwrap();
        assert!((est.value.re - 1.0).abs() < 1e-14);
    }

    #[test]
    fn leading_order_bound() {
        let z = Complex64::new(1.0, 1.0);
        let t = quad_t(z, &QuadratureSpec::default()).unwrap().value;
        assert!((t + 1.0 / z).norm() <= 1.0 / z.norm_sqr());
    }

    #[test]
    fn rejects_real_axis_and_bad_specs() {
        assert!(quad_t(Complex64::new(1.0, 0.0), &QuadratureSpec::default()).is_err());
        let bad = QuadratureSpec {
            truncation_radius: 5.0,
            ..Default::default()
        };
        assert!(quad_t(Complex64::new(1.0, 1.0), &bad).is_err());
    }

    #[test]
    fn reports_non_convergence() {
        let tight = QuadratureSpec {
            max_subdivisions: 3,
            ..Default::default()
        };
        let r = quad_t(Complex64::new(0.1, 1e-4), &tight);
        assert!(matches!(r, Err(Error::QuadratureNotConverged { .. })));
    }

    #[test]
    fn real_axis_value_at_origin() {
        let t = quad_t_real_axis(0.0, &QuadratureSpec::default())
            .unwrap()
            .value;
        assert!(t.re.abs() < 1e-15 && (t.im - PI.sqrt()).abs() < 1e-15);
    }
}
