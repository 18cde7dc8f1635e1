//! Faddeeva function `w(z) = exp(-z²) erfc(-iz)` for complex arguments.
//!
//! Continued fraction for large `|z|` (Im z ≥ 0, then reflected), and the
//! Zaghloul-Ali exponentially convergent sums elsewhere, in the arrangement
//! popularised by S. G. Johnson's Faddeeva package.

use num_complex::Complex;

use super::real::{dawson, erfcx, one_minus_2x_dawson};
use crate::scalar::{imag, Real};

/// Johnson's fit for the number of continued-fraction terms.
const NU_FIT: [f64; 5] = [3.9, 11.398, 0.08254, 0.1421, 0.2023];

/// The fit targets `t`; `λ₀ = 1 + z t` is a relative correction of order
/// `1/z²` and needs a few more levels.
const LAMBDA0_EXTRA_TERMS: usize = 4;

pub(crate) fn inv_sqrt_pi<T: Real>() -> T {
    T::FRAC_2_SQRT_PI() * T::lit(0.5)
}

pub(crate) fn sqrt_pi<T: Real>() -> T {
    T::PI().sqrt()
}

/// `exp(-z²)`, with the exponent formed as `(y-x)(y+x)` so that it does not
/// overflow before the exponential does.
pub(crate) fn exp_neg_sq<T: Real>(z: Complex<T>) -> Complex<T> {
    let (x, y) = (z.re, z.im);
    let mag = ((y - x) * (y + x)).exp();
    if mag == T::zero() {
        return Complex::new(T::zero(), T::zero());
    }
    let phase = -T::lit(2.0) * x * y;
    Complex::new(mag * phase.cos(), mag * phase.sin())
}

/// Faddeeva function at machine precision.
pub fn faddeeva_w<T: Real>(z: Complex<T>) -> Complex<T> {
    faddeeva_w_tol(z, T::epsilon())
}

pub(crate) fn faddeeva_w_tol<T: Real>(z: Complex<T>, relerr: T) -> Complex<T> {
    if z.re == T::zero() {
        return Complex::new(erfcx(z.im), z.re);
    }
    if z.im == T::zero() {
        return Complex::new((-z.re * z.re).exp(), T::FRAC_2_SQRT_PI() * dawson(z.re));
    }
    if in_cf_region(z) {
        let (t, _) = cf_t_lambda0(z);
        // w = t / (i√π)
        return Complex::new(t.im, -t.re) * inv_sqrt_pi::<T>();
    }
    zaghloul(z, relerr)
}

/// `t(z) = i√π w(z)` together with `λ₀(z) = 1 + z t(z)`, with `λ₀` formed
/// without cancellation wherever `|z|` is large.
pub(crate) fn t_lambda0<T: Real>(z: Complex<T>, relerr: T) -> (Complex<T>, Complex<T>) {
    let one = Complex::new(T::one(), T::zero());
    if z.im == T::zero() {
        return real_axis(z.re);
    }
    if in_cf_region(z) {
        return cf_t_lambda0(z);
    }
    if z.im.abs() <= T::lit(1e-10) && z.re.abs() > T::lit(8.0) {
        // first-order step off the real axis; the O(y²) remainder is far
        // below rounding here
        let (t0, l0) = real_axis(z.re);
        let iy = imag(z.im);
        let dl = t0 - l0 * (z.re * T::lit(2.0));
        return (t0 - iy * l0 * T::lit(2.0), l0 + iy * dl);
    }
    let w = faddeeva_w_tol(z, relerr);
    let t = Complex::new(-w.im, w.re) * sqrt_pi::<T>();
    (t, one + z * t)
}

fn real_axis<T: Real>(x: T) -> (Complex<T>, Complex<T>) {
    let g = sqrt_pi::<T>() * (-x * x).exp();
    (
        Complex::new(-T::lit(2.0) * dawson(x), g),
        Complex::new(one_minus_2x_dawson(x), x * g),
    )
}

fn in_cf_region<T: Real>(z: Complex<T>) -> bool {
    let x = z.re.abs();
    let ya = z.im.abs();
    ya > T::lit(7.0)
        || (x > T::lit(6.0)
            && (ya > T::lit(0.1) || (x > T::lit(8.0) && ya > T::lit(1e-10)) || x > T::lit(28.0)))
}

/// Continued fraction `t(z) = -1/(z - ½/(z - 1/(z - 3/2/(z - …))))` in the
/// upper half-plane, reflected into the lower one.
fn cf_t_lambda0<T: Real>(z: Complex<T>) -> (Complex<T>, Complex<T>) {
    let lower = z.im < T::zero();
    let zu = if lower { -z } else { z };
    let (tu, lu) = cf_upper(zu);
    if !lower {
        return (tu, lu);
    }
    let g = exp_neg_sq(z) * imag(T::lit(2.0) * sqrt_pi::<T>());
    (g - tu, lu + g * z)
}

fn cf_upper<T: Real>(z: Complex<T>) -> (Complex<T>, Complex<T>) {
    let [c0, c1, c2, c3, c4] = NU_FIT.map(T::lit);
    let x = z.re.abs();
    let nu = (c0 + c1 / (c2 * x + c3 * z.im + c4)).floor() + T::of(LAMBDA0_EXTRA_TERMS);
    // tail coefficients j/2 for j = nu-1 … 2; the final ½ is split off so
    // that λ₀ = -r/D with D = z - r
    let mut tail = z;
    let mut j = nu.to_usize().unwrap_or(2).max(2) - 1;
    while j >= 2 {
        tail = z - (T::of(j) * T::lit(0.5)).fdiv_by(tail);
        j -= 1;
    }
    let r = T::lit(0.5).fdiv_by(tail);
    let d = z - r;
    let t = -T::one().fdiv_by(d);
    (t, -r.fdiv(d))
}

trait FDivBy<T> {
    fn fdiv_by(self, d: Complex<T>) -> Complex<T>;
}

impl<T: Real> FDivBy<T> for T {
    fn fdiv_by(self, d: Complex<T>) -> Complex<T> {
        Complex::new(self, T::zero()).fdiv(d)
    }
}

fn sinc<T: Real>(x: T, sinx: T) -> T {
    if x.abs() < T::lit(1e-4) {
        T::one() - x * x / T::lit(6.0)
    } else {
        sinx / x
    }
}

fn sinh_taylor<T: Real>(x: T) -> T {
    x * (T::one() + x * x * (T::lit(1.0 / 6.0) + T::lit(1.0 / 120.0) * x * x))
}

/// Zaghloul-Ali sums for the region not covered by the continued fraction.
fn zaghloul<T: Real>(z: Complex<T>, relerr: T) -> Complex<T> {
    let relerr = relerr.max(T::epsilon()).min(T::lit(0.1));
    let a = T::PI() / (-(relerr * T::lit(0.5)).ln()).sqrt();
    let a2 = a * a;
    let c = T::lit(2.0) * a / T::PI();
    let two = T::lit(2.0);

    let x = z.re.abs();
    let y = z.im;
    let y2 = y * y;
    let (mut sum1, mut sum2, mut sum3, mut sum4, mut sum5) =
        (T::zero(), T::zero(), T::zero(), T::zero(), T::zero());
    let ret: Complex<T>;

    if x < T::lit(10.0) {
        let expx2;
        let mut prod2ax = T::one();
        let mut prodm2ax = T::one();
        let mut n = 1usize;
        if x < T::lit(5e-4) {
            // sum4 and sum5 combined as sum5 - sum4 to avoid cancellation
            let x2 = x * x;
            expx2 = T::one() - x2 * (T::one() - T::lit(0.5) * x2);
            let ax2 = two * a * x;
            let exp2ax = T::one() + ax2 * (T::one() + ax2 * (T::lit(0.5) + ax2 / T::lit(6.0)));
            let expm2ax = T::one() - ax2 * (T::one() - ax2 * (T::lit(0.5) - ax2 / T::lit(6.0)));
            loop {
                let nf = T::of(n);
                let coef = (-a2 * nf * nf).exp() * expx2 / (a2 * nf * nf + y2);
                prod2ax *= exp2ax;
                prodm2ax *= expm2ax;
                sum1 += coef;
                sum2 += coef * prodm2ax;
                sum3 += coef * prod2ax;
                sum5 += coef * two * a * nf * sinh_taylor(two * a * nf * x);
                if coef * prod2ax < relerr * sum3 || n > 500 {
                    break;
                }
                n += 1;
            }
        } else {
            // exponents formed directly: the running products exp(±2anx)
            // overflow single precision
            expx2 = (-x * x).exp();
            loop {
                let nf = T::of(n);
                let an = a * nf;
                let den = an * an + y2;
                let coef = (-an * an - x * x).exp() / den;
                let minus = (-(an + x) * (an + x)).exp() / den;
                let plus = (-(an - x) * (an - x)).exp() / den;
                sum1 += coef;
                sum2 += minus;
                sum4 += minus * an;
                sum3 += plus;
                sum5 += plus * an;
                if plus * an < relerr * sum5 && an > x || n > 500 {
                    break;
                }
                n += 1;
            }
        }
        let expx2erfcxy = if y > -T::lit(6.0) {
            expx2 * erfcx(y)
        } else {
            two * (y * y - x * x).exp()
        };
        if y > T::lit(5.0) {
            let sinxy = (x * y).sin();
            ret = Complex::new(
                (expx2erfcxy - c * y * sum1) * (two * x * y).cos()
                    + c * x * expx2 * sinxy * sinc(x * y, sinxy),
                T::zero(),
            );
        } else {
            let xs = z.re;
            let sinxy = (xs * y).sin();
            let sin2xy = (two * xs * y).sin();
            let cos2xy = (two * xs * y).cos();
            let coef1 = expx2erfcxy - c * y * sum1;
            let coef2 = c * xs * expx2;
            ret = Complex::new(
                coef1 * cos2xy + coef2 * sinxy * sinc(xs * y, sinxy),
                coef2 * sinc(two * xs * y, sin2xy) - coef1 * sin2xy,
            );
        }
    } else {
        // only reached for |y| <= 1e-10, where exp(-x²) is the whole
        // regular part
        ret = Complex::new((-x * x).exp(), T::zero());
        let n0 = (x / a + T::lit(0.5)).floor();
        let dx = a * n0 - x;
        sum3 = (-dx * dx).exp() / (a2 * n0 * n0 + y2);
        sum5 = a * n0 * sum3;
        let exp1 = (T::lit(4.0) * a * dx).exp();
        let mut exp1dn = T::one();
        let mut dn = 1usize;
        let mut done = false;
        while n0 - T::of(dn) > T::zero() {
            let d = T::of(dn);
            let np = n0 + d;
            let nm = n0 - d;
            let mut tp = (-(a * d + dx) * (a * d + dx)).exp();
            exp1dn *= exp1;
            let mut tm = tp * exp1dn;
            tp /= a2 * np * np + y2;
            tm /= a2 * nm * nm + y2;
            sum3 += tp + tm;
            sum5 += a * (np * tp + nm * tm);
            dn += 1;
            if a * (np * tp + nm * tm) < relerr * sum5 {
                done = true;
                break;
            }
        }
        while !done {
            let np = n0 + T::of(dn);
            dn += 1;
            let tp = (-(a * np - x) * (a * np - x)).exp() / (a2 * np * np + y2);
            sum3 += tp;
            sum5 += a * np * tp;
            if a * np * tp < relerr * sum5 || dn > 1000 {
                done = true;
            }
        }
    }
    let half_c = T::lit(0.5) * c;
    ret + Complex::new(
        half_c * y * (sum2 + sum3),
        half_c * (sum5 - sum4).copysign(z.re),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    type C = Complex<f64>;

    // w(z) from a 40-digit evaluation
    const REFERENCE: [((f64, f64), (f64, f64)); 14] = [
        ((0.0, 1.0), (0.42758357615580700441, 0.0)),
        ((1.0, 1.0), (0.30474420525691259246, 0.20821893820283162729)),
        (
            (-2.5, 0.3),
            (0.038226506260685208947, -0.2430420085309775812),
        ),
        ((0.5, -0.5), (1.2220084158685705185, 1.1893393085928644093)),
        (
            (5.0, 0.01),
            (0.00024080339195117516647, 0.11524544620269498306),
        ),
        (
            (12.0, 3.0),
            (0.011163889644607902579, 0.044361237994963507751),
        ),
        (
            (20.0, 1e-12),
            (1.4157965867555475187e-15, 0.028244874092056703036),
        ),
        (
            (3.0, -2.0),
            (-0.081339079928627360454, 0.12108616246299844894),
        ),
        (
            (1e-5, 0.2),
            (0.80901951983677420802, 8.0477135908986977467e-6),
        ),
        (
            (0.001, 8.0),
            (0.069985165147777793581, 8.6165077536292756174e-6),
        ),
        (
            (-7.0, -0.05),
            (-0.00059426455573203193361, -0.081443123030749759121),
        ),
        (
            (50.0, 50.0),
            (0.0056424598557196664171, 0.0056413314767218276729),
        ),
        (
            (0.3, 6.9),
            (0.080788346535685804321, 0.0034424761312705258601),
        ),
        (
            (6.5, 0.05),
            (0.00069287286026634067925, 0.087858887902491691716),
        ),
    ];

    #[test]
    fn matches_reference_values() {
        for &((x, y), (re, im)) in &REFERENCE {
            let got = faddeeva_w(C::new(x, y));
            let want = C::new(re, im);
            let err = (got - want).norm() / want.norm();
            assert!(
                err < 1e-13,
                "w({x}+{y}i) = {got}, want {want}, rel err {err:e}"
            );
        }
    }

    #[test]
    fn origin_and_axes() {
        assert_eq!(faddeeva_w(C::new(0.0, 0.0)), C::new(1.0, 0.0));
        let w = faddeeva_w(C::new(0.5, 0.0));
        assert!((w.im * std::f64::consts::PI.sqrt() / 2.0 - dawson(0.5)).abs() < 1e-16);
    }

    #[test]
    fn lambda0_from_continued_fraction_has_no_cancellation() {
        let z = C::new(30.0, 9.0);
        let (t, l) = t_lambda0(z, f64::EPSILON);
        let series = -1.0 / (2.0 * z * z) - 3.0 / (4.0 * z.powi(4)) - 15.0 / (8.0 * z.powi(6));
        assert!((l - series).norm() / series.norm() < 1e-7);
        assert!((1.0 + z * t - l).norm() < 1e-14);
    }

    #[test]
    fn single_precision_tracks_double() {
        for &((x, y), _) in &REFERENCE[..6] {
            let w32 = faddeeva_w(Complex::new(x as f32, y as f32));
            let w64 = faddeeva_w(C::new(x, y));
            let err = ((w32.re as f64 - w64.re).hypot(w32.im as f64 - w64.im)) / w64.norm();
            assert!(err < 1e-5, "f32 w({x}+{y}i) off by {err:e}");
        }
    }

    #[test]
    fn lambda0_matches_reference_across_regions() {
        let pts: [(f64, f64, f64, f64); 10] = [
            (0.0, 7.01, 0.009879166956307856, 0.0),
            (6.01, 0.11, -0.014445619246444448, 0.0005534231082779684),
            (8.01, 1e-09, -0.007982714276217167, 2.042544093735956e-12),
            (28.5, 0.0, -0.000616714330974418, 0.0),
            (30.0, 9.0, -0.0004258226899833271, 0.0002812782542048187),
            (60.0, 40.0, -3.6962705602817795e-05, 8.877708610364561e-05),
            (99.0, 1.0, -5.1007391557354074e-05, 1.0307152976371154e-06),
            (3.0, -7.5, 1.6298950529906434e+21, 9.349945479424469e+21),
            (0.5, 20.0, 0.0012430290880836629, 6.195897934215036e-05),
            (15.0, 0.5, -0.002229642657314483, 0.00014981711747552568),
        ];
        for (x, y, re, im) in pts {
            let want = C::new(re, im);
            let (_, l) = t_lambda0(C::new(x, y), f64::EPSILON);
            let err = (l - want).norm() / want.norm();
            assert!(err < 1e-12, "lambda0({x}+{y}i) rel err {err:e}");
        }
    }
}
