//! Bound state of the attractive Dirac-delta well `V(x) = −γ δ(x)`.
//!
//! In momentum space the equation is algebraic, so
//! `φ(x) = (γk/(2πħ)²) ∫ e^{ipx/ħ} dp / (C|p|^α e^{iSgn(p)θπ/2} − E)`.
//! Splitting the integral over `p > 0` and `p < 0` gives a cosine part `I₁`
//! and a sine part `I₂`, each of which is a pair of Fox H-functions:
//! `H^{2,1}_{2,3}` for `I₁` and `H^{2,1}_{1,3}` for `I₂`.
//!
//! The H-form is written for `x > 0`. Under `x → −x` the cosine part is
//! unchanged and the sine part flips sign, which is how negative `x` is
//! evaluated.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::fox_h::{eval_with, EvalOptions, FoxHParams, GammaPair};
use crate::numerics::{c, I};
use crate::quadrature::{adaptive, half_line, oscillatory, QuadratureSpec, Strategy};
use crate::result::{EvalResult, Method};
use crate::symbol::validate_alpha_theta;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeltaConfig {
    pub hbar: f64,
    pub c_alpha: f64,
    pub alpha: f64,
    pub theta: f64,
    pub energy: f64,
    pub gamma_strength: f64,
    pub k_norm: Complex64,
}

impl DeltaConfig {
    /// Config with `k = 1`.
    pub fn new(hbar: f64, c_alpha: f64, alpha: f64, theta: f64, energy: f64, gamma_strength: f64) -> Result<Self> {
        let cfg = DeltaConfig { hbar, c_alpha, alpha, theta, energy, gamma_strength, k_norm: c(1.0, 0.0) };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_k(mut self, k_norm: Complex64) -> Self {
        self.k_norm = k_norm;
        self
    }

    pub fn validate(&self) -> Result<()> {
        validate_alpha_theta(self.alpha, self.theta)?;
        if !(self.hbar > 0.0 && self.hbar.is_finite()) {
            return Err(invalid(format!("hbar must be positive, got {}", self.hbar)));
        }
        if !(self.c_alpha > 0.0 && self.c_alpha.is_finite()) {
            return Err(invalid(format!("c_alpha must be positive, got {}", self.c_alpha)));
        }
        if !(self.energy < 0.0 && self.energy.is_finite()) {
            return Err(invalid(format!("a bound state needs energy < 0, got {}", self.energy)));
        }
        if !(self.gamma_strength > 0.0 && self.gamma_strength.is_finite()) {
            return Err(invalid(format!("gamma must be positive, got {}", self.gamma_strength)));
        }
        if !(self.k_norm.re.is_finite() && self.k_norm.im.is_finite()) {
            return Err(invalid("k_norm must be finite"));
        }
        Ok(())
    }

    /// `γk/(2πħ)²`.
    fn prefactor(&self) -> Complex64 {
        self.k_norm * self.gamma_strength / (2.0 * PI * self.hbar).powi(2)
    }

    /// `(C/−E)^{−1/α}`.
    fn length_scale(&self) -> f64 {
        (self.c_alpha / -self.energy).powf(-1.0 / self.alpha)
    }

    /// `C|p|^α e^{iθπ/2} − E` for `p ≥ 0`.
    fn denominator(&self, p: f64) -> Complex64 {
        Complex64::from_polar(self.c_alpha * p.powf(self.alpha), self.theta * PI / 2.0) - self.energy
    }
}

/// `H^{2,1}_{2,3}` with upper `((α−1)/α, 1/α), (1/2, 1/2)` and lower
/// `(0, 1), ((α−1)/α, 1/α), (1/2, 1/2)`.
pub fn cosine_kernel_params(alpha: f64) -> Result<FoxHParams> {
    let a = GammaPair::new((alpha - 1.0) / alpha, 1.0 / alpha);
    let h = GammaPair::new(0.5, 0.5);
    FoxHParams::new(2, 1, vec![a, h], vec![GammaPair::new(0.0, 1.0), a, h])
}

/// `H^{2,1}_{1,3}` with upper `((α−1)/α, 1/α)` and lower
/// `(1/2, 1/2), ((α−1)/α, 1/α), (0, 1/2)`.
pub fn sine_kernel_params(alpha: f64) -> Result<FoxHParams> {
    let a = GammaPair::new((alpha - 1.0) / alpha, 1.0 / alpha);
    FoxHParams::new(2, 1, vec![a], vec![GammaPair::new(0.5, 0.5), a, GammaPair::new(0.0, 0.5)])
}

fn check_x(x: f64) -> Result<()> {
    if x == 0.0 || !x.is_finite() {
        return Err(Error::DomainError(format!("the closed form needs finite x != 0, got {x}")));
    }
    Ok(())
}

/// The H-function arguments `(r e^{−iθπ/(2α)}, r e^{iθπ/(2α)})` with
/// `r = |x| (C/−E)^{−1/α} / (ħ · scale)`.
fn kernel_arguments(cfg: &DeltaConfig, x: f64, scale: f64) -> (Complex64, Complex64) {
    let r = x.abs() * cfg.length_scale() / (cfg.hbar * scale);
    let phase = cfg.theta * PI / (2.0 * cfg.alpha);
    (Complex64::from_polar(r, -phase), Complex64::from_polar(r, phase))
}

/// `I₁(|x|)` and `I₂(|x|)` from the four H-functions, plus the summed error.
fn cosine_sine_parts(cfg: &DeltaConfig, x: f64, opts: &EvalOptions) -> Result<(Complex64, Complex64, f64, Method, usize)> {
    let alpha = cfg.alpha;
    let e = cfg.energy;
    let k = cfg.length_scale();
    let rot = Complex64::from_polar(1.0, -cfg.theta * PI / (2.0 * alpha));

    let (zp, zm) = kernel_arguments(cfg, x, 1.0);
    let h23 = cosine_kernel_params(alpha)?;
    let a = eval_with(&h23, zp, opts)?;
    let b = eval_with(&h23, zm, opts)?;
    let pre1 = -PI / (alpha * e) * k;
    let i1 = pre1 * (rot * a.value + rot.conj() * b.value);
    let mut err = pre1.abs() * (a.err_estimate + b.err_estimate);
    let mut work = a.work + b.work;
    let mut method = a.method;

    let mut i2 = c(0.0, 0.0);
    if cfg.theta != 0.0 {
        let (zp, zm) = kernel_arguments(cfg, x, 2.0);
        let h13 = sine_kernel_params(alpha)?;
        let a = eval_with(&h13, zp, opts)?;
        let b = eval_with(&h13, zm, opts)?;
        let pre2 = -PI.sqrt() / (2.0 * alpha * e) * k;
        i2 = pre2 * (rot * a.value - rot.conj() * b.value);
        err += pre2.abs() * (a.err_estimate + b.err_estimate);
        work += a.work + b.work;
        if a.method == Method::Contour || b.method == Method::Contour {
            method = Method::Contour;
        }
    }
    Ok((i1, i2, err, method, work))
}

/// `φ(x)` for `x ≠ 0` from the H-function representation.
pub fn delta_closed_form(cfg: &DeltaConfig, x: f64) -> Result<EvalResult> {
    delta_closed_form_with(cfg, x, &EvalOptions::default())
}

pub fn delta_closed_form_with(cfg: &DeltaConfig, x: f64, opts: &EvalOptions) -> Result<EvalResult> {
    cfg.validate()?;
    check_x(x)?;
    let (i1, i2, err, method, work) = cosine_sine_parts(cfg, x, opts)?;
    // the sine part is odd in x
    let i2 = if x < 0.0 { -i2 } else { i2 };
    let pre = cfg.prefactor();
    EvalResult::new(pre * (i1 + I * i2), pre.norm() * err, method, work)
}

/// The closed form away from the origin and the momentum quadrature at
/// `x = 0`, where the H-function arguments vanish.
pub fn delta_wavefunction(cfg: &DeltaConfig, x: f64, opts: &EvalOptions) -> Result<EvalResult> {
    if x == 0.0 {
        delta_quadrature(cfg, x)
    } else {
        delta_closed_form_with(cfg, x, opts)
    }
}

/// The symmetric (`θ = 0`) form `ξ₀ H^{2,1}_{2,3}[|x| (ħ^α D/−E)^{−1/α}]`
/// with `ξ₀ = (−γk/(2πħ²Eα)) (D/−E)^{−1/α}`, where `D = c_alpha`.
pub fn delta_riesz_form(cfg: &DeltaConfig, x: f64) -> Result<EvalResult> {
    delta_riesz_form_with(cfg, x, &EvalOptions::default())
}

pub fn delta_riesz_form_with(cfg: &DeltaConfig, x: f64, opts: &EvalOptions) -> Result<EvalResult> {
    cfg.validate()?;
    check_x(x)?;
    if cfg.theta != 0.0 {
        return Err(invalid(format!("the symmetric form needs theta = 0, got {}", cfg.theta)));
    }
    let (e, h) = (cfg.energy, cfg.hbar);
    let xi0 = cfg.k_norm * (-cfg.gamma_strength / (2.0 * PI * h * h * e * cfg.alpha)) * cfg.length_scale();
    let z = c(x.abs() * (h.powf(cfg.alpha) * cfg.c_alpha / -e).powf(-1.0 / cfg.alpha), 0.0);
    eval_with(&cosine_kernel_params(cfg.alpha)?, z, opts)?.scaled(xi0)
}

/// `λ e^{−|x|√(−2mE)/ħ}`, the bound state of the ordinary equation.
pub fn delta_classical(hbar: f64, mass: f64, energy: f64, lambda: Complex64, x: f64) -> Complex64 {
    lambda * (-x.abs() * (-2.0 * mass * energy).sqrt() / hbar).exp()
}

/// `φ(x)` by direct quadrature of the momentum integrals
/// `I₁ = ∫₀^∞ cos(px/ħ)(1/D₊ + 1/D₋) dp`, `I₂ = ∫₀^∞ sin(px/ħ)(1/D₊ − 1/D₋) dp`
/// with `D± = C p^α e^{±iθπ/2} − E`.
pub fn delta_quadrature(cfg: &DeltaConfig, x: f64) -> Result<EvalResult> {
    cfg.validate()?;
    if !x.is_finite() {
        return Err(Error::DomainError(format!("x must be finite, got {x}")));
    }
    // size of I₁ at x = 0, used to turn the tolerance into an absolute one
    let magnitude = PI / (cfg.alpha * -cfg.energy) * cfg.length_scale();
    let spec = QuadratureSpec::new(1e-10 * magnitude, 1e-10, Strategy::Adaptive);
    // 1/D₊ + 1/D₋ = 2 Re(1/D₊) and 1/D₊ − 1/D₋ = 2i Im(1/D₊)
    let even = |p: f64| 2.0 * cfg.denominator(p).inv().re;
    let odd = |p: f64| 2.0 * cfg.denominator(p).inv().im;

    let (i1, i2, err, work) = if x == 0.0 {
        let r = zero_point_integral(cfg, &even, &spec)?;
        (r.value, c(0.0, 0.0), r.err_estimate, r.work)
    } else {
        let q = x / cfg.hbar;
        let half_period = PI / q.abs();
        let a = oscillatory(|p| c((p * q).cos() * even(p), 0.0), 0.0, half_period, &spec)?;
        let b = if cfg.theta == 0.0 {
            EvalResult::exact(c(0.0, 0.0))?
        } else {
            oscillatory(|p| c((p * q).sin() * odd(p), 0.0), 0.0, half_period, &spec)?
        };
        // I₂ = i·(real integral of the sine against 2 Im(1/D₊))
        (a.value, I * b.value, a.err_estimate + b.err_estimate, a.work + b.work)
    };
    let pre = cfg.prefactor();
    EvalResult::new(pre * (i1 + I * i2), pre.norm() * err, Method::Quadrature, work)
}

/// `∫₀^∞ g` for `g(p) ~ p^{−α}`: `[0, 1]` directly, and `[1, ∞)` through
/// `p = v^{−1/(α−1)}`, which turns the algebraic tail into a bounded integrand.
fn zero_point_integral(cfg: &DeltaConfig, g: &dyn Fn(f64) -> f64, spec: &QuadratureSpec) -> Result<EvalResult> {
    let alpha = cfg.alpha;
    let head = adaptive(|p| c(g(p), 0.0), 0.0, 1.0, spec)?;
    let tail = adaptive(
        |v| {
            if v == 0.0 {
                // p → ∞: p^α g(p) → 2 cos(θπ/2)/C
                return c(2.0 * (cfg.theta * PI / 2.0).cos() / cfg.c_alpha / (alpha - 1.0), 0.0);
            }
            let p = v.powf(-1.0 / (alpha - 1.0));
            c(g(p) * p.powf(alpha) / (alpha - 1.0), 0.0)
        },
        0.0,
        1.0,
        spec,
    )?;
    EvalResult::new(head.value + tail.value, head.err_estimate + tail.err_estimate, Method::Quadrature, head.work + tail.work)
}

/// `k` making `∫|φ|² dx = 1`. By Plancherel
/// `∫|φ|² dx = γ²|k|²/(2πħ)³ ∫ dp/|D(p)|²`.
pub fn normalizing_k(cfg: &DeltaConfig) -> Result<Complex64> {
    cfg.validate()?;
    let spec = QuadratureSpec::new(1e-14, 1e-12, Strategy::Adaptive);
    let j = half_line(|p| c(2.0 / cfg.denominator(p).norm_sqr(), 0.0), 0.0, &spec)?;
    let k = (2.0 * PI * cfg.hbar).powf(1.5) / (cfg.gamma_strength * j.value.re.sqrt());
    Ok(c(k, 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn classical_ratio() {
        let cfg = DeltaConfig::new(1.0, 0.5, 2.0, 0.0, -0.5, 1.0).unwrap();
        let a = delta_closed_form(&cfg, 1.0).unwrap().value;
        let b = delta_closed_form(&cfg, 2.0).unwrap().value;
        assert!(((b / a).re - (-1f64).exp()).abs() < 1e-10);
        // I₁ = 2π e^{−1}, so φ(1) = 2π e^{−1}/(2π)²
        let q = delta_quadrature(&cfg, 1.0).unwrap().value;
        let want = (-1f64).exp() / (2.0 * PI);
        assert!((q.re - want).abs() < 1e-9 && q.im.abs() < 1e-12, "{q}");
        assert!(rel(a, c(want, 0.0)) < 1e-10);
    }

    #[test]
    fn skewed_matches_quadrature() {
        let cfg = DeltaConfig::new(1.0, 1.0, 1.5, 0.25, -1.0, 1.0).unwrap();
        for x in [1.0, -1.0, 0.3, -2.5] {
            let a = delta_closed_form(&cfg, x).unwrap().value;
            let q = delta_quadrature(&cfg, x).unwrap().value;
            assert!(rel(a, q) < 1e-7, "x={x}: {a} vs {q}");
        }
        let (i1, i2, ..) = cosine_sine_parts(&cfg, 1.0, &EvalOptions::default()).unwrap();
        assert!((i1 - c(0.972878898, 0.0)).norm() < 1e-8, "{i1}");
        assert!((i2 - c(0.0, -0.235719699)).norm() < 1e-8, "{i2}");
    }

    #[test]
    fn symmetric_routes_agree() {
        let cfg = DeltaConfig::new(1.0, 1.0, 1.5, 0.0, -1.0, 1.0).unwrap();
        for x in [0.2, 1.0, 4.0] {
            let a = delta_closed_form(&cfg, x).unwrap().value;
            let b = delta_riesz_form(&cfg, x).unwrap().value;
            assert!(rel(a, b) < 1e-12);
            assert_eq!(a, delta_closed_form(&cfg, -x).unwrap().value);
        }
        let cfg = DeltaConfig::new(1.0, 1.0, 1.2, 0.0, -2.0, 1.0).unwrap();
        let a = delta_riesz_form(&cfg, 0.3).unwrap().value;
        let q = delta_quadrature(&cfg, 0.3).unwrap().value;
        assert!(rel(a, q) < 1e-6, "{a} vs {q}");
    }

    #[test]
    fn zero_point_and_limits() {
        let cfg = DeltaConfig::new(1.0, 0.5, 2.0, 0.0, -0.5, 1.0).unwrap();
        let q = delta_quadrature(&cfg, 0.0).unwrap().value;
        assert!((q.re - 1.0 / (2.0 * PI)).abs() < 1e-9, "{q}");
        let cfg = DeltaConfig::new(1.0, 1.0, 1.5, 0.3, -1.0, 1.0).unwrap();
        let q0 = delta_quadrature(&cfg, 0.0).unwrap().value;
        // φ has an |x|^{α−1} cusp at the origin
        let near = delta_closed_form(&cfg, 1e-6).unwrap().value;
        assert!(rel(near, q0) < 1e-2, "{near} vs {q0}");
        assert!(matches!(delta_closed_form(&cfg, 0.0), Err(Error::DomainError(_))));
    }

    #[test]
    fn classical_formula() {
        assert_eq!(delta_classical(1.0, 1.0, -0.5, c(2.0, 0.0), 0.0), c(2.0, 0.0));
        let v = delta_classical(1.0, 0.5, -1.0, c(1.0, 0.0), 2.0);
        assert!((v.re - (-2f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn normalization() {
        let cfg = DeltaConfig::new(1.0, 0.5, 2.0, 0.0, -0.5, 1.0).unwrap();
        // φ = γk e^{−|x|}/(2π), unit norm at k = 2π
        let k = normalizing_k(&cfg).unwrap();
        assert!((k.re - 2.0 * PI).abs() < 1e-9, "{k}");
    }

    #[test]
    fn rejects_bad_theta() {
        let e = DeltaConfig::new(1.0, 1.0, 1.5, 0.7, -1.0, 1.0).unwrap_err();
        assert!(e.to_string().contains("|theta| <= min(alpha, 2 - alpha)"));
        assert!(DeltaConfig::new(1.0, 1.0, 1.5, 0.2, 0.5, 1.0).is_err());
    }
}
