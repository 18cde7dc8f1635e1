//! Complex roots `ε(ω, q) = 0` and the long-wave asymptotics of the
//! plasmon frequency and damping.
//!
//! `κ = k/k_D = q/(√2 x_p)` is the wave number in Debye units and
//! `Q = 2 x_p` the quantum parameter.

use num_complex::Complex;

use crate::dielectric::{Dielectric, ModelKind, PlasmaParams};
use crate::error::{domain, Error, Result};
use crate::scalar::{is_finite, Real};

/// Root solver settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig<T> {
    /// Convergence when `|ε(ω)| <= residual_tol`.
    pub residual_tol: T,
    pub max_iter: usize,
    /// Relative step of the central difference for `∂ε/∂ω`.
    pub fd_step: T,
    /// Largest relative change of `ω` between neighbouring traced roots.
    pub continuation_step: T,
}

impl<T: Real> Default for SolverConfig<T> {
    fn default() -> Self {
        Self {
            residual_tol: T::lit(1e-12),
            max_iter: 60,
            fd_step: T::lit(1e-7),
            continuation_step: T::lit(0.1),
        }
    }
}

impl<T: Real> SolverConfig<T> {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("residual_tol", self.residual_tol),
            ("fd_step", self.fd_step),
            ("continuation_step", self.continuation_step),
        ] {
            if !(v > T::zero() && v.is_finite()) {
                return Err(domain(name, v, "must be finite and > 0"));
            }
        }
        if self.max_iter == 0 {
            return Err(domain("max_iter", T::zero(), "must be >= 1"));
        }
        Ok(())
    }
}

/// A root `ω = ω_k + iγ_k` of the dispersion equation at fixed `q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DispersionRoot<T> {
    pub q: T,
    /// Complex frequency in units of `k_T v_T`.
    pub omega: Complex<T>,
    /// `|ε(ω, q)|` at the returned root.
    pub residual: T,
    pub iterations: usize,
}

/// `ω/ω_p = sqrt(1 + 3κ² + 6κ⁴ (1 + Q²/24))`.
pub fn omega_asymptotic<T: Real>(kappa: T, quantum: T) -> Result<T> {
    if !(kappa >= T::zero() && kappa.is_finite()) {
        return Err(domain("kappa", kappa, "must be finite and >= 0"));
    }
    if !(quantum >= T::zero() && quantum.is_finite()) {
        return Err(domain("Q", quantum, "must be finite and >= 0"));
    }
    let k2 = kappa * kappa;
    let q2 = quantum * quantum;
    Ok(
        (T::one() + T::lit(3.0) * k2 + T::lit(6.0) * k2 * k2 * (T::one() + q2 / T::lit(24.0)))
            .sqrt(),
    )
}

/// Collisionless Landau decrement `√(π/8) x_p κ⁻³ exp(-3/2 - 1/(2κ²))`
/// (as a positive number, in units of `k_T v_T`).
fn landau_term<T: Real>(x_p: T, kappa: T) -> T {
    let k2 = kappa * kappa;
    (T::PI() / T::lit(8.0)).sqrt() * x_p / (k2 * kappa)
        * (-T::lit(1.5) - T::one() / (T::lit(2.0) * k2)).exp()
}

fn kappa_of<T: Real>(params: &PlasmaParams<T>, q: T) -> Result<T> {
    params.validate()?;
    if !(q > T::zero() && q.is_finite()) {
        return Err(domain("q", q, "must be finite and > 0"));
    }
    if !(params.x_p > T::zero()) {
        return Err(domain(
            "x_p",
            params.x_p,
            "must be > 0 for plasma oscillations",
        ));
    }
    Ok(params.kappa_from_q(q))
}

/// Quantum collisional decrement
/// `γ = -y/2 - √(π/8) x_p κ⁻³ exp(-3/2 - 1/(2κ²)) (1 - q²/4)(1 + x_k²/6)`,
/// with `x_k = x_p ω/ω_p` the asymptotic real frequency, so that
/// `q² z² = x_k²` is taken real.
pub fn gamma_asymptotic<T: Real>(params: &PlasmaParams<T>, q: T) -> Result<T> {
    let kappa = kappa_of(params, q)?;
    let x_k = params.x_p * omega_asymptotic(kappa, params.quantum_parameter())?;
    let quantum = (T::one() - q * q * T::lit(0.25)) * (T::one() + x_k * x_k / T::lit(6.0));
    Ok(-params.y * T::lit(0.5) - landau_term(params.x_p, kappa) * quantum)
}

/// Classical decrement `γ = -y/2 - √(π/8) x_p κ⁻³ exp(-3/2 - 1/(2κ²))`;
/// with `y = 0` this is Landau's formula.
pub fn gamma_asymptotic_classical<T: Real>(params: &PlasmaParams<T>, q: T) -> Result<T> {
    let kappa = kappa_of(params, q)?;
    Ok(-params.y * T::lit(0.5) - landau_term(params.x_p, kappa))
}

/// Asymptotic `ω_k + iγ_k` used as the default starting point.
pub fn asymptotic_root<T: Real>(
    params: &PlasmaParams<T>,
    q: T,
    model: ModelKind,
) -> Result<Complex<T>> {
    let kappa = kappa_of(params, q)?;
    let (quantum, gamma) = if model == ModelKind::Classical {
        (T::zero(), gamma_asymptotic_classical(params, q)?)
    } else {
        (params.quantum_parameter(), gamma_asymptotic(params, q)?)
    };
    Ok(Complex::new(
        params.x_p * omega_asymptotic(kappa, quantum)?,
        gamma,
    ))
}

/// Dispersion-equation solver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DispersionSolver<T> {
    pub dielectric: Dielectric<T>,
    pub config: SolverConfig<T>,
}

impl<T: Real> Default for DispersionSolver<T> {
    fn default() -> Self {
        Self::new(SolverConfig::default())
    }
}

struct Iterate<T> {
    omega: Complex<T>,
    eps: Complex<T>,
}

impl<T: Real> DispersionSolver<T> {
    pub fn new(config: SolverConfig<T>) -> Self {
        Self {
            dielectric: Dielectric::default(),
            config,
        }
    }

    fn eps(
        &self,
        params: &PlasmaParams<T>,
        model: ModelKind,
        omega: Complex<T>,
        q: T,
    ) -> Result<Complex<T>> {
        self.dielectric.epsilon_at(model, params, omega, q)
    }

    /// Finds a root near `guess`, or near the asymptotic frequency and
    /// decrement when no guess is given.
    ///
    /// Without a guess a few perturbed seeds are tried as well and the root
    /// with `Re ω > 0` and the smallest `|Im ω|` is returned (ties go to the
    /// larger `Re ω`).
    pub fn solve_root(
        &self,
        params: &PlasmaParams<T>,
        q: T,
        model: ModelKind,
        guess: Option<Complex<T>>,
    ) -> Result<DispersionRoot<T>> {
        self.config.validate()?;
        if !matches!(
            model,
            ModelKind::Quantum | ModelKind::Classical | ModelKind::Mermin
        ) {
            return Err(Error::Unsupported {
                model: model.name(),
                what: "dispersion roots (use quantum, classical or mermin)",
            });
        }
        params.validate()?;
        if !(q > T::zero() && q.is_finite()) {
            return Err(domain("q", q, "must be finite and > 0"));
        }
        if let Some(g) = guess {
            let root = self.newton(params, q, model, g)?;
            return physical(root);
        }
        let base = asymptotic_root(params, q, model)?;
        let seeds = [
            base,
            Complex::new(base.re * T::lit(1.02), base.im),
            Complex::new(
                base.re * T::lit(0.98),
                base.im * T::lit(2.0) - base.re * T::lit(0.01),
            ),
        ];
        let mut best: Option<DispersionRoot<T>> = None;
        let mut first_err = None;
        for seed in seeds {
            match self.newton(params, q, model, seed) {
                Ok(root) if root.omega.re > T::zero() => {
                    let better = match &best {
                        None => true,
                        Some(b) => {
                            let (ai, bi) = (root.omega.im.abs(), b.omega.im.abs());
                            let tie = (ai - bi).abs() <= T::lit(1e-9) * (T::one() + bi);
                            (!tie && ai < bi) || (tie && root.omega.re > b.omega.re)
                        }
                    };
                    if better {
                        best = Some(root);
                    }
                }
                Ok(root) => {
                    first_err.get_or_insert(Error::NonPhysicalBranch {
                        re: root.omega.re.as_f64(),
                        im: root.omega.im.as_f64(),
                    });
                }
                Err(e) => {
                    first_err.get_or_insert(e);
                }
            }
        }
        best.ok_or_else(|| first_err.expect("at least one seed was tried"))
    }

    fn newton(
        &self,
        params: &PlasmaParams<T>,
        q: T,
        model: ModelKind,
        seed: Complex<T>,
    ) -> Result<DispersionRoot<T>> {
        let cfg = &self.config;
        let mut cur = Iterate {
            omega: seed,
            eps: self.eps(params, model, seed, q)?,
        };
        let mut history: Vec<Complex<T>> = vec![cur.omega];
        let mut values: Vec<Complex<T>> = vec![cur.eps];
        let mut stagnant = 0usize;
        for it in 0..=cfg.max_iter {
            let r = cur.eps.norm();
            if r <= cfg.residual_tol {
                return Ok(DispersionRoot {
                    q,
                    omega: cur.omega,
                    residual: r,
                    iterations: it,
                });
            }
            if it == cfg.max_iter {
                break;
            }
            let n = history.len();
            let step = if stagnant >= 3 && n >= 3 {
                stagnant = 0;
                muller(
                    [history[n - 3], history[n - 2], history[n - 1]],
                    [values[n - 3], values[n - 2], values[n - 1]],
                )
            } else {
                None
            };
            let step = match step {
                Some(s) => s,
                None => {
                    let h = cfg.fd_step * cur.omega.norm().max(T::lit(1e-3) * q);
                    let fp = (self.eps(params, model, cur.omega + h, q)?
                        - self.eps(params, model, cur.omega - h, q)?)
                        / (h * T::lit(2.0));
                    -cur.eps / fp
                }
            };
            if !is_finite(step) {
                break;
            }
            // backtrack until the residual drops
            let mut lambda = T::one();
            let mut next = None;
            for _ in 0..30 {
                let omega = cur.omega + step * lambda;
                if let Ok(eps) = self.eps(params, model, omega, q) {
                    if eps.norm() < r {
                        next = Some(Iterate { omega, eps });
                        break;
                    }
                }
                lambda *= T::lit(0.5);
            }
            let next = match next {
                Some(nx) => nx,
                None => {
                    let omega = cur.omega + step;
                    Iterate {
                        omega,
                        eps: self.eps(params, model, omega, q)?,
                    }
                }
            };
            if next.eps.norm() > T::lit(0.9) * r {
                stagnant += 1;
            } else {
                stagnant = 0;
            }
            cur = next;
            history.push(cur.omega);
            values.push(cur.eps);
        }
        Err(Error::NotConverged {
            re: cur.omega.re.as_f64(),
            im: cur.omega.im.as_f64(),
            residual: cur.eps.norm().as_f64(),
            iterations: cfg.max_iter,
        })
    }

    /// Follows one branch from `q_start` to `q_end` on a uniform grid, each
    /// root seeding the next. Steps whose root moves by more than
    /// `continuation_step` (relative) are bisected.
    pub fn trace_branch(
        &self,
        params: &PlasmaParams<T>,
        q_start: T,
        q_end: T,
        n_points: usize,
        model: ModelKind,
    ) -> Result<Vec<DispersionRoot<T>>> {
        if !(q_start > T::zero() && q_end > q_start && q_end.is_finite()) {
            return Err(domain("q_start", q_start, "need 0 < q_start < q_end"));
        }
        if n_points < 2 {
            return Err(domain("n_points", T::of(n_points), "must be >= 2"));
        }
        let first = self
            .solve_root(params, q_start, model, None)
            .map_err(|e| lost(q_start, e.to_string()))?;
        let mut out = Vec::with_capacity(n_points);
        out.push(first);
        for i in 1..n_points {
            let q = q_start + (q_end - q_start) * T::of(i) / T::of(n_points - 1);
            let prev = *out.last().expect("non-empty");
            let root = self.continue_to(params, model, prev, q, 0)?;
            out.push(root);
        }
        Ok(out)
    }

    fn continue_to(
        &self,
        params: &PlasmaParams<T>,
        model: ModelKind,
        prev: DispersionRoot<T>,
        q: T,
        depth: usize,
    ) -> Result<DispersionRoot<T>> {
        const MAX_DEPTH: usize = 12;
        let attempt = self.solve_root(params, q, model, Some(prev.omega));
        let limit = self.config.continuation_step * prev.omega.norm();
        match attempt {
            Ok(root) if (root.omega - prev.omega).norm() <= limit => Ok(root),
            other => {
                if depth >= MAX_DEPTH {
                    let reason = match other {
                        Ok(root) => format!(
                            "root jumped from {} to {} after {MAX_DEPTH} bisections",
                            prev.omega, root.omega
                        ),
                        Err(e) => e.to_string(),
                    };
                    return Err(lost(q, reason));
                }
                let mid = T::lit(0.5) * (prev.q + q);
                let half = self.continue_to(params, model, prev, mid, depth + 1)?;
                self.continue_to(params, model, half, q, depth + 1)
            }
        }
    }
}

fn lost<T: Real>(q: T, reason: String) -> Error {
    Error::BranchLost {
        q: q.as_f64(),
        reason,
    }
}

fn physical<T: Real>(root: DispersionRoot<T>) -> Result<DispersionRoot<T>> {
    if root.omega.re > T::zero() {
        Ok(root)
    } else {
        Err(Error::NonPhysicalBranch {
            re: root.omega.re.as_f64(),
            im: root.omega.im.as_f64(),
        })
    }
}

/// Müller step from the last three iterates.
fn muller<T: Real>(x: [Complex<T>; 3], f: [Complex<T>; 3]) -> Option<Complex<T>> {
    let h1 = x[1] - x[0];
    let h2 = x[2] - x[1];
    if h1.norm() == T::zero() || h2.norm() == T::zero() || (h1 + h2).norm() == T::zero() {
        return None;
    }
    let d1 = (f[1] - f[0]) / h1;
    let d2 = (f[2] - f[1]) / h2;
    let a = (d2 - d1) / (h2 + h1);
    let b = d2 + h2 * a;
    let disc = (b * b - f[2] * a * T::lit(4.0)).sqrt();
    let e = if (b + disc).norm() >= (b - disc).norm() {
        b + disc
    } else {
        b - disc
    };
    if e.norm() == T::zero() {
        return None;
    }
    let step = -f[2] * T::lit(2.0) / e;
    is_finite(step).then_some(step)
}

/// Root with default solver settings.
pub fn solve_root<T: Real>(
    params: &PlasmaParams<T>,
    q: T,
    model: ModelKind,
    guess: Option<Complex<T>>,
) -> Result<DispersionRoot<T>> {
    DispersionSolver::default().solve_root(params, q, model, guess)
}

/// Branch trace with default solver settings.
pub fn trace_branch<T: Real>(
    params: &PlasmaParams<T>,
    q_start: T,
    q_end: T,
    n_points: usize,
    model: ModelKind,
) -> Result<Vec<DispersionRoot<T>>> {
    DispersionSolver::default().trace_branch(params, q_start, q_end, n_points, model)
}
