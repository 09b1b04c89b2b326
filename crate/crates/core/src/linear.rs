//! Wavefunction for the linear potential `V(x) = A x` (x ≥ 0).
//!
//! In momentum space the equation is first order, giving
//! `φ̂(p) = exp[(−i/(Aħ))(Ep ∓ (C/(α+1))|p|^{α+1} e^{±iθπ/2})]` with the
//! sign following `Sgn(p)`. Its inverse transform depends on `x` only
//! through `y = (x − E/A)(1/ħ)(C/(ħA(α+1)))^{−1/(α+1)}` and equals
//! `(2πN/(α+1)) H^{1,1}_{2,2}(y)`.
//!
//! The potential is infinite for `x < 0`; the formulas are still evaluated
//! there and [`LinearConfig::is_physical`] tells the two regions apart.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dd::Dd;
use crate::error::{invalid, Error, Result};
use crate::fox_h::{eval_residue_sum, eval_with, EvalOptions, FoxHParams, GammaPair};
use crate::numerics::{c, log_gamma, I};
use crate::quadrature::{ray, QuadratureSpec, Strategy};
use crate::result::{EvalResult, Method};
use crate::symbol::validate_alpha_theta;

const MAX_TERMS: usize = 2000;
const DD_EPS: f64 = 4.93e-32;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinearConfig {
    pub hbar: f64,
    pub c_alpha: f64,
    pub alpha: f64,
    pub theta: f64,
    pub energy: f64,
    pub slope: f64,
}

impl LinearConfig {
    pub fn new(hbar: f64, c_alpha: f64, alpha: f64, theta: f64, energy: f64, slope: f64) -> Result<Self> {
        let cfg = LinearConfig { hbar, c_alpha, alpha, theta, energy, slope };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        validate_alpha_theta(self.alpha, self.theta)?;
        if !(self.hbar > 0.0 && self.hbar.is_finite()) {
            return Err(invalid(format!("hbar must be positive, got {}", self.hbar)));
        }
        if !(self.c_alpha > 0.0 && self.c_alpha.is_finite()) {
            return Err(invalid(format!("c_alpha must be positive, got {}", self.c_alpha)));
        }
        if !(self.slope > 0.0 && self.slope.is_finite()) {
            return Err(invalid(format!("slope must be positive, got {}", self.slope)));
        }
        if !self.energy.is_finite() {
            return Err(invalid("energy must be finite"));
        }
        Ok(())
    }

    /// `(C/(Aħ(α+1)))^{1/(α+1)}`, the momentum-to-`w` scale.
    fn momentum_scale(&self) -> f64 {
        (self.c_alpha / (self.slope * self.hbar * (self.alpha + 1.0))).powf(1.0 / (self.alpha + 1.0))
    }

    /// `N = (1/2πħ)(C/(Aħ(α+1)))^{−1/(α+1)}`.
    pub fn n_norm(&self) -> f64 {
        1.0 / (2.0 * PI * self.hbar * self.momentum_scale())
    }

    /// The scaled coordinate `y`.
    pub fn scaled_coordinate(&self, x: f64) -> f64 {
        (x - self.energy / self.slope) / (self.hbar * self.momentum_scale())
    }

    /// Inverse of [`scaled_coordinate`](Self::scaled_coordinate).
    pub fn position(&self, y: f64) -> f64 {
        y * self.hbar * self.momentum_scale() + self.energy / self.slope
    }

    /// The wall sits at `x = 0`; negative `x` is analytic continuation.
    pub fn is_physical(&self, x: f64) -> bool {
        x >= 0.0
    }

    /// `(b, B) = ((2+α−θ)/(2(α+1)), (α+θ)/(2(α+1)))`.
    fn shared_pair(&self) -> (f64, f64) {
        let d = 2.0 * (self.alpha + 1.0);
        ((2.0 + self.alpha - self.theta) / d, (self.alpha + self.theta) / d)
    }
}

/// `H^{1,1}_{2,2}` with upper `(α/(α+1), 1/(α+1)), (b, B)` and lower
/// `(0, 1), (b, B)`.
pub fn linear_params(cfg: &LinearConfig) -> Result<FoxHParams> {
    let (b, bw) = cfg.shared_pair();
    let a1 = cfg.alpha + 1.0;
    FoxHParams::new(
        1,
        1,
        vec![GammaPair::new(cfg.alpha / a1, 1.0 / a1), GammaPair::new(b, bw)],
        vec![GammaPair::new(0.0, 1.0), GammaPair::new(b, bw)],
    )
}

/// `φ̂(p)` with the integration constant set to 1.
pub fn linear_momentum_spectrum(cfg: &LinearConfig, p: f64) -> Complex64 {
    let k = cfg.c_alpha / (cfg.alpha + 1.0) * p.abs().powf(cfg.alpha + 1.0);
    let kinetic = if p >= 0.0 {
        -k * Complex64::from_polar(1.0, cfg.theta * PI / 2.0)
    } else {
        k * Complex64::from_polar(1.0, -cfg.theta * PI / 2.0)
    };
    (-I / (cfg.slope * cfg.hbar) * (cfg.energy * p + kinetic)).exp()
}

/// Mellin transform of `φ` in the scaled coordinate,
/// `(2πN/(α+1)) Γ(s) Γ((1−s)/(1+α)) / [Γ(1 − b − Bs) Γ(b + Bs)]`.
pub fn linear_mellin_factor(cfg: &LinearConfig, s: Complex64) -> Result<Complex64> {
    cfg.validate()?;
    let (b, bw) = cfg.shared_pair();
    let a1 = cfg.alpha + 1.0;
    let num = log_gamma(s)? + log_gamma((1.0 - s) / a1)?;
    let mut value = (num).exp() * (2.0 * PI * cfg.n_norm() / a1);
    // a pole of a denominator gamma makes the factor vanish
    for arg in [1.0 - b - bw * s, b + bw * s] {
        match log_gamma(arg) {
            Ok(v) => value *= (-v).exp(),
            Err(Error::PoleOfGamma { .. }) => return Ok(c(0.0, 0.0)),
            Err(e) => return Err(e),
        }
    }
    Ok(value)
}

/// `φ(x)` from the H-function. For `y < 0` the argument lies outside the
/// existence sector of the Mellin–Barnes integral and the (everywhere
/// convergent) residue series is summed instead; at `y = 0` the series
/// reduces to its first term.
pub fn linear_closed_form(cfg: &LinearConfig, x: f64) -> Result<EvalResult> {
    linear_closed_form_with(cfg, x, &EvalOptions::default())
}

pub fn linear_closed_form_with(cfg: &LinearConfig, x: f64, opts: &EvalOptions) -> Result<EvalResult> {
    cfg.validate()?;
    if !x.is_finite() {
        return Err(Error::DomainError(format!("x must be finite, got {x}")));
    }
    let y = cfg.scaled_coordinate(x);
    let pre = c(2.0 * PI * cfg.n_norm() / (cfg.alpha + 1.0), 0.0);
    if y == 0.0 {
        let v = first_term(cfg);
        return EvalResult::new(pre * v, pre.re * v.abs() * 4.0 * f64::EPSILON, Method::Series, 1);
    }
    let params = linear_params(cfg)?;
    let r = if y > 0.0 {
        eval_with(&params, c(y, 0.0), opts)?
    } else {
        eval_residue_sum(&params, c(y, 0.0), opts.rel_tol)?
    };
    // the H-function is real for real y; drop the rounding residue in Im
    let r = EvalResult::new(c(r.value.re, 0.0), r.err_estimate + r.value.im.abs(), r.method, r.work)?;
    r.scaled(pre)
}

/// `H(0) = Γ(1/(α+1)) sin(π(α+θ)/(2(α+1))) / π`.
fn first_term(cfg: &LinearConfig) -> f64 {
    let (_, bw) = cfg.shared_pair();
    let (lg, _) = ln_gamma_dd(1.0 / (cfg.alpha + 1.0));
    lg.exp().to_f64() * (PI * bw).sin() / PI
}

fn ln_gamma_dd(x: f64) -> (Dd, f64) {
    Dd::from_f64(x).ln_gamma()
}

/// `Σ_k Γ((k+1)/ν) sin(πc(k+1)) w^k / k!` in double-double arithmetic,
/// returning the sum, an error estimate and the number of terms.
fn gamma_sine_series(nu: f64, c_coef: f64, w: f64) -> Result<(f64, f64, usize)> {
    let nu_dd = Dd::from_f64(nu);
    let c_dd = Dd::from_f64(c_coef);
    let ln_w = if w == 0.0 { Dd::ZERO } else { Dd::from_f64(w.abs()).ln() };
    let mut sum = Dd::ZERO;
    let mut abs_sum = 0.0;
    let mut prev_env = f64::INFINITY;
    for k in 0..MAX_TERMS {
        let kp1 = Dd::from_f64((k + 1) as f64);
        let (lg, _) = (kp1 / nu_dd).ln_gamma();
        let mut ln_env = lg - Dd::ln_factorial(k as u64);
        if k > 0 {
            if w == 0.0 {
                break;
            }
            ln_env = ln_env + ln_w.mul_f64(k as f64);
        }
        let env = ln_env.exp();
        let mut term = env * (c_dd * kp1).sin_pi();
        if w < 0.0 && k % 2 == 1 {
            term = -term;
        }
        sum = sum + term;
        abs_sum += env.to_f64();
        let env_f = env.to_f64();
        let s = sum.to_f64().abs();
        // the envelope decays faster than geometrically once past its peak
        if k > 2 && env_f < prev_env && env_f < DD_EPS * s.max(DD_EPS * abs_sum) {
            let ratio = env_f / prev_env;
            let tail = env_f * ratio / (1.0 - ratio);
            let err = tail + 8.0 * DD_EPS * abs_sum * (k as f64).max(1.0) + 0.5 * f64::EPSILON * s;
            return Ok((sum.to_f64(), err, k + 1));
        }
        prev_env = env_f;
    }
    if w == 0.0 {
        let s = sum.to_f64();
        return Ok((s, 0.5 * f64::EPSILON * s.abs(), 1));
    }
    Err(Error::NonConvergence(format!("gamma-sine series at w = {w} needs more than {MAX_TERMS} terms")))
}

/// `φ(x)` from the power series
/// `(2N/(α+1)) Σ_k (−1)^k Γ((k+1)/(α+1)) sin(π(α+θ)(k+1)/(2(α+1))) y^k / k!`,
/// which at `θ = 0` is `(2N/(α+1)) Σ_k Γ((k+1)/(α+1)) sin((α+2)(k+1)π/(2(α+1))) y^k / k!`.
pub fn linear_series(cfg: &LinearConfig, x: f64) -> Result<EvalResult> {
    cfg.validate()?;
    if !x.is_finite() {
        return Err(Error::DomainError(format!("x must be finite, got {x}")));
    }
    let y = cfg.scaled_coordinate(x);
    let (_, bw) = cfg.shared_pair();
    let (s, err, n) = gamma_sine_series(cfg.alpha + 1.0, bw, -y)?;
    let pre = 2.0 * cfg.n_norm() / (cfg.alpha + 1.0);
    EvalResult::new(c(pre * s, 0.0), pre * err, Method::Series, n)
}

/// `(λ/π) Σ_k Γ((k+1)/3) sin(2(k+1)π/3) (3^{1/3}u)^k / k!` with
/// `u = (x − E/A)(2mA/ħ²)^{1/3}`, which is `λ 3^{2/3} Ai(u)`.
pub fn linear_classical_airy(hbar: f64, mass: f64, energy: f64, slope: f64, lambda: Complex64, x: f64) -> Result<Complex64> {
    if !(mass > 0.0 && slope > 0.0 && hbar > 0.0) {
        return Err(invalid("hbar, mass and slope must be positive"));
    }
    let u = (x - energy / slope) * (2.0 * mass * slope / (hbar * hbar)).cbrt();
    let (s, _, _) = gamma_sine_series(3.0, 2.0 / 3.0, 3f64.cbrt() * u)?;
    Ok(lambda * s / PI)
}

/// `φ = N(φ₁ + φ₂)` with `φ₁ = ∫₀^∞ e^{iyw} e^{i e^{iθπ/2} w^{α+1}} dw` and
/// `φ₂ = ∫₀^∞ e^{−iyw} e^{−i e^{−iθπ/2} w^{α+1}} dw`, each integrated along
/// the ray on which the `w^{α+1}` term is real and negative.
pub fn linear_quadrature(cfg: &LinearConfig, x: f64) -> Result<EvalResult> {
    cfg.validate()?;
    if !x.is_finite() {
        return Err(Error::DomainError(format!("x must be finite, got {x}")));
    }
    let y = cfg.scaled_coordinate(x);
    let p1 = cfg.alpha + 1.0;
    let omega = PI * (1.0 - cfg.theta) / (2.0 * p1);
    let spec = QuadratureSpec::new(1e-13, 1e-11, Strategy::RotatedRay);
    let e_plus = Complex64::from_polar(1.0, cfg.theta * PI / 2.0);
    let f1 = |w: Complex64| (I * y * w + I * e_plus * w.powf(p1)).exp();
    let f2 = |w: Complex64| (-I * y * w - I * e_plus.conj() * w.powf(p1)).exp();
    let a = ray(f1, c(0.0, 0.0), omega, &spec)?;
    let b = ray(f2, c(0.0, 0.0), -omega, &spec)?;
    let n = cfg.n_norm();
    EvalResult::new(n * (a.value + b.value), n * (a.err_estimate + b.err_estimate), Method::Quadrature, a.work + b.work)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(alpha: f64, theta: f64) -> LinearConfig {
        LinearConfig::new(1.0, 1.0, alpha, theta, 0.0, 1.0).unwrap()
    }

    fn x_of(cfg: &LinearConfig, y: f64) -> f64 {
        cfg.position(y)
    }

    #[test]
    fn reference_values() {
        let cfg = unit(1.5, 0.0);
        let h = linear_closed_form(&cfg, x_of(&cfg, 1.0)).unwrap().value.re * 2.5 / (2.0 * PI * cfg.n_norm());
        assert!((h - 0.280_568_041_140_985_7).abs() < 1e-12, "{h}");
        let cfg = unit(2.0, 0.0);
        let h = linear_closed_form(&cfg, x_of(&cfg, 10.0)).unwrap().value.re * 3.0 / (2.0 * PI * cfg.n_norm());
        assert!((h / 1.861_179_368_829_085_4e-6 - 1.0).abs() < 1e-10, "{h}");
    }

    #[test]
    fn series_matches_closed_form() {
        for (alpha, theta) in [(1.5, 0.0), (1.25, 0.1), (2.0, 0.0)] {
            let cfg = unit(alpha, theta);
            for y in [-3.0, -0.4, 0.0, 0.7, 2.5] {
                let x = x_of(&cfg, y);
                let a = linear_closed_form(&cfg, x).unwrap().value;
                let s = linear_series(&cfg, x).unwrap().value;
                assert!((a - s).norm() < 1e-10 * s.norm().max(1e-3), "α={alpha} y={y}: {a} vs {s}");
            }
        }
    }

    #[test]
    fn quadrature_matches_closed_form() {
        for (alpha, theta) in [(1.5, 0.3), (1.5, -0.3), (2.0, 0.0), (1.25, 0.0)] {
            let cfg = unit(alpha, theta);
            for y in [-2.0, 0.0, 0.7, 3.0] {
                let x = x_of(&cfg, y);
                let a = linear_closed_form(&cfg, x).unwrap().value;
                let q = linear_quadrature(&cfg, x).unwrap().value;
                assert!((a - q).norm() < 1e-9 * a.norm().max(1e-3), "α={alpha} θ={theta} y={y}: {a} vs {q}");
            }
        }
    }

    #[test]
    fn airy_series() {
        // Ai(0) = 3^{−2/3}/Γ(2/3) = 0.35502805388781724
        let v = linear_classical_airy(1.0, 0.5, 0.0, 1.0, c(1.0, 0.0), 0.0).unwrap();
        assert!((v.re / 3f64.powf(2.0 / 3.0) - 0.355_028_053_887_817_24).abs() < 1e-15);
        // Ai(1) = 0.13529241631288141
        let v = linear_classical_airy(1.0, 0.5, 0.0, 1.0, c(1.0, 0.0), 1.0).unwrap();
        assert!((v.re / 3f64.powf(2.0 / 3.0) - 0.135_292_416_312_881_41).abs() < 1e-15);
    }

    #[test]
    fn spectrum_and_mellin() {
        let cfg = unit(1.5, 0.3);
        assert_eq!(linear_momentum_spectrum(&cfg, 0.0), c(1.0, 0.0));
        let want = (-I * (-(1.0 / 2.5) * Complex64::from_polar(1.0, 0.15 * PI))).exp();
        assert!((linear_momentum_spectrum(&cfg, 1.0) - want).norm() < 1e-15);
        let flat = unit(1.5, 0.0);
        for p in [-3.0, -0.2, 0.5, 4.0] {
            assert!((linear_momentum_spectrum(&flat, p).norm() - 1.0).abs() < 1e-14);
        }
        assert!(linear_mellin_factor(&cfg, c(1.0, 0.0)).is_err());
    }

    #[test]
    fn translation_covariance() {
        let a = LinearConfig::new(1.0, 0.7, 1.5, 0.2, 0.4, 2.0).unwrap();
        let b = LinearConfig { energy: 0.4 + 2.0 * 0.3, ..a };
        let u = linear_closed_form(&a, 0.9).unwrap().value;
        let v = linear_closed_form(&b, 1.2).unwrap().value;
        assert!((u - v).norm() < 1e-14 * u.norm());
    }
}
