//! Real-argument helpers: scaled complementary error function and Dawson's
//! integral.

use crate::scalar::Real;

/// Below this magnitude Dawson's integral is summed from its positive-term
/// series; above it the asymptotic series is already at machine precision.
const DAWSON_SERIES_LIMIT: f64 = 7.0;

/// Scaled complementary error function `erfcx(x) = exp(x²)·erfc(x)`.
pub fn erfcx<T: Real>(x: T) -> T {
    if x.is_nan() {
        return x;
    }
    if x < T::zero() {
        // exp(x²) overflows to +inf for very negative x, which is the true limit
        return T::lit(2.0) * (x * x).exp() - erfcx(-x);
    }
    if x < T::one() {
        erfcx_series(x)
    } else {
        erfcx_continued_fraction(x)
    }
}

/// `exp(x²) - (2/√π) Σ 2ⁿ x²ⁿ⁺¹ / (2n+1)!!`; the sum is `exp(x²)·erf(x)`
/// and has positive terms only.
fn erfcx_series<T: Real>(x: T) -> T {
    let x2 = x * x;
    let eps = T::epsilon();
    let mut term = x;
    let mut sum = x;
    let mut n = 1usize;
    loop {
        term = term * T::lit(2.0) * x2 / T::of(2 * n + 1);
        sum += term;
        if term <= eps * sum || n > 200 {
            break;
        }
        n += 1;
    }
    x2.exp() - T::FRAC_2_SQRT_PI() * sum
}

/// Laplace continued fraction `1/(√π (x + ½/(x + 1/(x + 3/2/(x + …)))))`
/// evaluated with the modified Lentz algorithm.
fn erfcx_continued_fraction<T: Real>(x: T) -> T {
    let tiny = T::min_positive_value().sqrt();
    let eps = T::epsilon();
    let mut f = x;
    let mut c = f;
    let mut d = T::zero();
    for n in 1..5000usize {
        let a = T::of(n) * T::lit(0.5);
        d = x + a * d;
        if d.abs() < tiny {
            d = tiny;
        }
        d = d.recip();
        c = x + a / c;
        if c.abs() < tiny {
            c = tiny;
        }
        let delta = c * d;
        f *= delta;
        if (delta - T::one()).abs() <= eps {
            break;
        }
    }
    T::FRAC_2_SQRT_PI() * T::lit(0.5) / f
}

/// Dawson's integral `F(u) = exp(-u²) ∫₀ᵘ exp(t²) dt`.
pub fn dawson<T: Real>(u: T) -> T {
    if u.is_nan() {
        return u;
    }
    let a = u.abs();
    let v = if a < T::lit(DAWSON_SERIES_LIMIT) {
        dawson_series(a)
    } else {
        dawson_asymptotic(a)
    };
    if u < T::zero() {
        -v
    } else {
        v
    }
}

/// `exp(-a²) Σ a²ⁿ⁺¹ / (n! (2n+1))`
fn dawson_series<T: Real>(a: T) -> T {
    let a2 = a * a;
    let eps = T::epsilon();
    let mut power = a;
    let mut sum = a;
    let mut n = 1usize;
    loop {
        power = power * a2 / T::of(n);
        let term = power / T::of(2 * n + 1);
        sum += term;
        if term <= eps * sum || n > 500 {
            break;
        }
        n += 1;
    }
    (-a2).exp() * sum
}

fn dawson_asymptotic<T: Real>(a: T) -> T {
    (T::one() - one_minus_2x_dawson_tail(a)) / (T::lit(2.0) * a)
}

/// `-Σ_{n≥1} (2n-1)!! / (2x²)ⁿ`, the asymptotic expansion of `1 - 2x F(x)`
/// for large `|x|`.
fn one_minus_2x_dawson_tail<T: Real>(x: T) -> T {
    let inv = T::one() / (T::lit(2.0) * x * x);
    let eps = T::epsilon();
    let mut term = inv;
    let mut sum = term;
    for n in 2..400usize {
        let next = term * T::of(2 * n - 1) * inv;
        if next > term {
            break;
        }
        term = next;
        sum += term;
        if term <= eps * sum {
            break;
        }
    }
    -sum
}

/// `1 - 2x F(x)`, computed without cancellation for large `|x|`.
///
/// This is the real part of `λ₀(x) = 1 + x t(x)` on the real axis.
pub(crate) fn one_minus_2x_dawson<T: Real>(x: T) -> T {
    if x.abs() < T::lit(DAWSON_SERIES_LIMIT) {
        T::one() - T::lit(2.0) * x * dawson(x)
    } else {
        one_minus_2x_dawson_tail(x)
    }
}
