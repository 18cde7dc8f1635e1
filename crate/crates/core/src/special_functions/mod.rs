//! Plasma dispersion function `t(z)`, the Van Kampen function `λ₀(z)` and
//! their relatives, valid over the whole complex plane.
//!
//! `t(z) = (1/√π) ∫ exp(-μ²)/(μ - z) dμ` for Im z > 0, continued to the rest
//! of the plane along the Landau contour; equivalently `t(z) = i√π w(z)`.

mod faddeeva;
mod real;

use num_complex::Complex;

use crate::error::{domain, Result};
use crate::scalar::{imag, Real};

pub use faddeeva::faddeeva_w;
pub(crate) use faddeeva::{exp_neg_sq, sqrt_pi};
pub use real::{dawson, erfcx};

/// Highest derivative order served by [`t_derivatives`].
pub const MAX_DERIVATIVE: usize = 6;

/// Accuracy and branch-switch thresholds for the dispersion functions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AccuracyPolicy<T> {
    /// Target relative error of every evaluation.
    pub target_rel_error: T,
    /// `t_diff_over_q` uses its Taylor form for `q < series_switch_q·(1+|z|)`.
    pub series_switch_q: T,
    /// Beyond this `|z|` the asymptotic series is summed directly.
    pub asymptotic_switch_z: T,
}

impl<T: Real> Default for AccuracyPolicy<T> {
    fn default() -> Self {
        Self {
            target_rel_error: T::lit(1e-12),
            series_switch_q: T::lit(1e-3),
            asymptotic_switch_z: T::lit(100.0),
        }
    }
}

impl<T: Real> AccuracyPolicy<T> {
    pub fn validate(&self) -> Result<()> {
        let checks = [
            ("target_rel_error", self.target_rel_error),
            ("series_switch_q", self.series_switch_q),
            ("asymptotic_switch_z", self.asymptotic_switch_z),
        ];
        for (name, v) in checks {
            if !(v > T::zero() && v.is_finite()) {
                return Err(domain(name, v, "must be finite and > 0"));
            }
        }
        Ok(())
    }

    /// Truncation tolerance for the internal series: three digits below the
    /// target, floored at the working precision.
    fn series_tol(&self) -> T {
        (self.target_rel_error * T::lit(1e-3)).max(T::epsilon())
    }

    /// `t(z)` and `λ₀(z)` evaluated together.
    pub(crate) fn t_lambda0(&self, z: Complex<T>) -> (Complex<T>, Complex<T>) {
        if z.norm() >= self.asymptotic_switch_z {
            asymptotic_t_lambda0(z, self.series_tol())
        } else {
            faddeeva::t_lambda0(z, self.series_tol())
        }
    }

    pub fn plasma_t(&self, z: Complex<T>) -> Complex<T> {
        self.t_lambda0(z).0
    }

    pub fn lambda0(&self, z: Complex<T>) -> Complex<T> {
        self.t_lambda0(z).1
    }

    /// `[t, t′, …, t⁽ⁿ⁾]`.
    pub fn t_derivatives(&self, z: Complex<T>, n: usize) -> Result<Vec<Complex<T>>> {
        if n > MAX_DERIVATIVE {
            return Err(domain("n", T::of(n), "derivative order must be <= 6"));
        }
        Ok(self.derivatives(z, n))
    }

    pub(crate) fn derivatives(&self, z: Complex<T>, n: usize) -> Vec<Complex<T>> {
        if z.norm() >= self.asymptotic_switch_z {
            return asymptotic_derivatives(z, n, self.series_tol());
        }
        let (t, l) = faddeeva::t_lambda0(z, self.series_tol());
        let mut d = Vec::with_capacity(n + 1);
        d.push(t);
        if n >= 1 {
            d.push(l * -T::lit(2.0));
        }
        for m in 1..n {
            let next = (d[m - 1] * T::of(m) + z * d[m]) * -T::lit(2.0);
            d.push(next);
        }
        d
    }

    /// `[t(z - q/2) - t(z + q/2)] / q`, which is the kernel `J₀(z)`.
    pub fn t_diff_over_q(&self, z: Complex<T>, q: T) -> Result<Complex<T>> {
        if !(q > T::zero() && q.is_finite()) {
            return Err(domain("q", q, "must be finite and > 0"));
        }
        Ok(self.diff_over_q(z, q))
    }

    pub(crate) fn diff_over_q(&self, z: Complex<T>, q: T) -> Complex<T> {
        if q < self.series_switch_q * (T::one() + z.norm()) {
            let d = self.derivatives(z, 5);
            let q2 = q * q;
            -(d[1] + d[3] * (q2 / T::lit(24.0)) + d[5] * (q2 * q2 / T::lit(1920.0)))
        } else {
            let h = T::lit(0.5) * q;
            (self.plasma_t(z - h) - self.plasma_t(z + h)) / q
        }
    }
}

/// `t(z) = i√π w(z)` with default accuracy.
pub fn plasma_t<T: Real>(z: Complex<T>) -> Complex<T> {
    AccuracyPolicy::default().plasma_t(z)
}

/// `λ₀(z) = 1 + z t(z)` with default accuracy.
pub fn lambda0<T: Real>(z: Complex<T>) -> Complex<T> {
    AccuracyPolicy::default().lambda0(z)
}

/// `[t, t′, …, t⁽ⁿ⁾]` for `n <= 6`, with default accuracy.
pub fn t_derivatives<T: Real>(z: Complex<T>, n: usize) -> Result<Vec<Complex<T>>> {
    AccuracyPolicy::default().t_derivatives(z, n)
}

/// `[t(z - q/2) - t(z + q/2)] / q` with default accuracy.
pub fn t_diff_over_q<T: Real>(z: Complex<T>, q: T) -> Result<Complex<T>> {
    AccuracyPolicy::default().t_diff_over_q(z, q)
}

/// Weight of the `exp(-z²)` term that the Landau continuation adds to the
/// upper-half-plane asymptotic series: 0 above, 1 on, 2 below the real axis.
fn stokes_weight<T: Real>(z: Complex<T>) -> T {
    if z.im > T::zero() {
        T::zero()
    } else if z.im == T::zero() {
        T::one()
    } else {
        T::lit(2.0)
    }
}

/// Asymptotic series `λ₀ = -Σ_{n≥1} (2n-1)!!/(2z²)ⁿ`, `t = (λ₀ - 1)/z`,
/// plus the continuation term.
fn asymptotic_t_lambda0<T: Real>(z: Complex<T>, tol: T) -> (Complex<T>, Complex<T>) {
    let inv = (z * z * T::lit(2.0)).finv();
    let mut term = inv;
    let mut sum = term;
    let mut prev = term.norm();
    for n in 2..200usize {
        let next = term * T::of(2 * n - 1) * inv;
        let size = next.norm();
        if size > prev {
            break;
        }
        term = next;
        prev = size;
        sum += term;
        if size <= tol * sum.norm() {
            break;
        }
    }
    let mut l = -sum;
    let mut t = (l - T::one()).fdiv(z);
    let k = stokes_weight(z);
    if k > T::zero() {
        let g = exp_neg_sq(z) * imag(k * sqrt_pi::<T>());
        t += g;
        l += g * z;
    }
    (t, l)
}

/// Term-by-term derivatives of `t(z) = -Σ c_k z^{-(2k+1)}`,
/// `c_k = (2k-1)!!/2ᵏ`, plus the Hermite-weighted continuation term.
fn asymptotic_derivatives<T: Real>(z: Complex<T>, n: usize, tol: T) -> Vec<Complex<T>> {
    let inv = z.finv();
    let inv2 = inv * inv;
    let mut out = Vec::with_capacity(n + 1);
    for m in 0..=n {
        let mut sum = Complex::new(T::zero(), T::zero());
        let mut c = T::one();
        let mut pw = inv.powu((m + 1) as u32);
        let mut prev = T::infinity();
        for k in 0..200usize {
            let p = 2 * k + 1;
            let rising: T = (0..m).map(|j| T::of(p + j)).fold(T::one(), |a, b| a * b);
            let term = pw * (c * rising);
            let size = term.norm();
            if size > prev {
                break;
            }
            prev = size;
            sum += term;
            if size <= tol * sum.norm() {
                break;
            }
            c *= T::of(2 * k + 1) * T::lit(0.5);
            pw *= inv2;
        }
        out.push(if m % 2 == 0 { -sum } else { sum });
    }
    let k = stokes_weight(z);
    if k > T::zero() {
        let g = exp_neg_sq(z) * imag(k * sqrt_pi::<T>());
        let two_z = z * T::lit(2.0);
        let mut h_prev = Complex::new(T::one(), T::zero());
        let mut h = two_z;
        for (m, d) in out.iter_mut().enumerate() {
            let hm = if m == 0 { h_prev } else { h };
            let signed = if m % 2 == 0 { hm } else { -hm };
            *d += g * signed;
            if m >= 1 {
                let next = two_z * h - h_prev * T::lit(2.0 * m as f64);
                h_prev = h;
                h = next;
            }
        }
    }
    out
}
