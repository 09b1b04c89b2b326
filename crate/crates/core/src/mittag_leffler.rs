//! The Mittag-Leffler function `E_β(z) = Σ_k z^k / Γ(βk + 1)`, `0 < β ≤ 1`.
//!
//! Small arguments use the Taylor series. When `|z| > 10` or the series
//! would cancel beyond the requested tolerance, the Hankel-contour
//! representation is used instead:
//!
//! ```text
//! E_β(z) = [e^{s*}/β if |arg s*| < φ] + (1/2πiβ) ∫_0^∞ [ e^{u^{1/β} e^{iφ}} / (u − z e^{−iβφ})
//!                                                 − e^{u^{1/β} e^{−iφ}} / (u − z e^{iβφ}) ] du
//! ```
//!
//! with `s* = z^{1/β}` (present when `|arg z| < βπ`) and the ray angle
//! `φ ∈ (π/2, π)` chosen away from `arg s*`.
//!
//! For `β = 1` the fallback is `e^z = (e^{z/2^k})^{2^k}` in double-double
//! instead, which keeps the relative error small where `e^z` is tiny.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::dd::{CDd, Dd};
use crate::error::{invalid, Error, Result};
use crate::fox_h::{self, FoxHParams, GammaPair};
use crate::numerics::{c, ln_gamma_real, principal_arg, principal_ln, I};
use crate::quadrature::adaptive_raw;
use crate::result::{EvalResult, Method};

const TAYLOR_RADIUS: f64 = 10.0;
const MAX_TERMS: usize = 2000;
const RAY_ANGLES: [f64; 3] = [0.55 * PI, 0.75 * PI, 0.95 * PI];
/// Integration stops where `|e^{u^{1/β} e^{iφ}}| = e^{−50}`.
const RAY_DECAY: f64 = 50.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MLRequest {
    pub beta: f64,
    pub z: Complex64,
    pub rel_tol: f64,
}

impl MLRequest {
    pub fn new(beta: f64, z: Complex64, rel_tol: f64) -> Result<Self> {
        let r = MLRequest { beta, z, rel_tol };
        r.validate()?;
        Ok(r)
    }

    fn validate(&self) -> Result<()> {
        if !(self.beta > 0.0 && self.beta <= 1.0) {
            return Err(invalid(format!("beta must lie in (0, 1], got {}", self.beta)));
        }
        if !(1e-14..=1e-2).contains(&self.rel_tol) {
            return Err(invalid(format!("rel_tol must lie in [1e-14, 1e-2], got {}", self.rel_tol)));
        }
        if !(self.z.re.is_finite() && self.z.im.is_finite()) {
            return Err(invalid("argument must be finite"));
        }
        Ok(())
    }
}

/// `E_β(z)` to relative accuracy `rel_tol`.
pub fn ml_eval(req: &MLRequest) -> Result<EvalResult> {
    req.validate()?;
    if req.z == c(0.0, 0.0) {
        return EvalResult::new(c(1.0, 0.0), 0.0, Method::Series, 1);
    }
    let fallback = |req: &MLRequest| {
        if req.beta == 1.0 {
            scaling_and_squaring(req.z)
        } else {
            hankel(req.beta, req.z, req.rel_tol)
        }
    };
    let r = if req.z.norm() <= TAYLOR_RADIUS {
        match taylor(req.beta, req.z, req.rel_tol) {
            Ok(r) if r.err_estimate <= req.rel_tol * r.value.norm() => Ok(r),
            _ => fallback(req),
        }
    } else {
        fallback(req)
    }?;
    Ok(realify(r, req.z))
}

/// `E_1(z) = E_1(z/2ᵏ)^(2ᵏ)` with `|z/2ᵏ| ≤ 1`, summed and squared in
/// double-double. The Taylor sum of an exponentially small value cancels in
/// f64 (far out on the negative axis, say); here only the final rounding
/// to f64 remains.
fn scaling_and_squaring(z: Complex64) -> Result<EvalResult> {
    let k = z.norm().log2().ceil().max(0.0) as i32;
    let w = z / 2f64.powi(k);
    let w = CDd::new(Dd::from_f64(w.re), Dd::from_f64(w.im));
    let mut sum = CDd::new(Dd::ONE, Dd::ZERO);
    let mut term = sum;
    let mut n = 1;
    while term.norm_f64() > 1e-34 * sum.norm_f64() {
        term = (term * w).scale(Dd::ONE.div_f64(n as f64));
        sum = sum + term;
        n += 1;
    }
    for _ in 0..k {
        sum = sum * sum;
    }
    let v = sum.to_c64();
    EvalResult::new(v, f64::EPSILON * v.norm(), Method::Series, n + k as usize)
}

/// For real `z` the function is real; drop the rounding residue.
fn realify(mut r: EvalResult, z: Complex64) -> EvalResult {
    if z.im == 0.0 {
        r.value.im = 0.0;
    }
    r
}

/// Direct Taylor sum; the error estimate includes the rounding implied by
/// `Σ|terms|`.
pub(crate) fn taylor(beta: f64, z: Complex64, rel_tol: f64) -> Result<EvalResult> {
    let ln_abs = z.norm().ln();
    let arg = principal_arg(z);
    let real_negative = z.im == 0.0 && z.re < 0.0;
    let mut sum = c(1.0, 0.0);
    let mut abs_sum = 1.0;
    let mut small = 0;
    let mut prev = 1.0;
    for k in 1..MAX_TERMS {
        let kf = k as f64;
        let mag = (kf * ln_abs - ln_gamma_real(beta * kf + 1.0)?).exp();
        if !mag.is_finite() {
            return Err(Error::NonFinite(format!("E_{beta}({z}) overflows")));
        }
        let term = if z.im == 0.0 {
            let sign = if real_negative && k % 2 == 1 { -1.0 } else { 1.0 };
            c(sign * mag, 0.0)
        } else {
            Complex64::from_polar(mag, kf * arg)
        };
        sum += term;
        abs_sum += mag;
        if mag < rel_tol * sum.norm() {
            small += 1;
        } else {
            small = 0;
        }
        if small >= 3 {
            let ratio = (mag / prev).min(0.5);
            let err = mag * ratio / (1.0 - ratio) + 4.0 * f64::EPSILON * abs_sum * (1.0 + kf.ln());
            return EvalResult::new(sum, err, Method::Series, k + 1);
        }
        prev = mag;
    }
    Err(Error::NonConvergence(format!("Taylor series of E_{beta}({z}) needs more than {MAX_TERMS} terms")))
}

fn hankel(beta: f64, z: Complex64, rel_tol: f64) -> Result<EvalResult> {
    let arg_z = principal_arg(z);
    let pole_arg = if arg_z.abs() < beta * PI { Some(arg_z / beta) } else { None };
    let phi = match pole_arg {
        Some(a) => RAY_ANGLES
            .iter()
            .copied()
            .fold(RAY_ANGLES[0], |best, p| if (p - a.abs()).abs() > (best - a.abs()).abs() { p } else { best }),
        None => RAY_ANGLES[0],
    };
    let pole = match pole_arg {
        Some(a) if a.abs() < phi => {
            let s_star = (principal_ln(z) / beta).exp();
            let v = s_star.exp() / beta;
            if !(v.re.is_finite() && v.im.is_finite()) {
                return Err(Error::NonFinite(format!("E_{beta}({z}) overflows")));
            }
            v
        }
        _ => c(0.0, 0.0),
    };
    let e_plus = Complex64::from_polar(1.0, phi);
    let e_minus = e_plus.conj();
    let w_plus = z * Complex64::from_polar(1.0, -beta * phi);
    let w_minus = z * Complex64::from_polar(1.0, beta * phi);
    let inv_b = 1.0 / beta;
    let f = |u: f64| {
        let r = u.powf(inv_b);
        let a = (e_plus * r).exp() / (u - w_plus);
        let b = (e_minus * r).exp() / (u - w_minus);
        (a - b) / (2.0 * PI * I * beta)
    };
    let upper = (RAY_DECAY / phi.cos().abs()).powf(beta);
    let fail = |e: Error| Error::NonConvergence(format!("Hankel integral for E_{beta}({z}): {e}"));
    // ∫|f| sets the rounding floor of any quadrature of f
    let n_probe = 400;
    let h = upper / n_probe as f64;
    let abs_mass: f64 = (0..n_probe).map(|i| f((i as f64 + 0.5) * h).norm() * h).sum();
    let floor = 100.0 * f64::EPSILON * abs_mass;
    let (mut integral, mut err, mut work) =
        adaptive_raw(&f, 0.0, upper, floor.max(1e-300), 1e-3 * rel_tol.max(1e-8), 4000).map_err(fail)?;
    let estimate = (pole + integral).norm();
    let target = (0.1 * rel_tol * estimate).max(floor);
    if err > target {
        let (i2, e2, w2) = adaptive_raw(&f, 0.0, upper, target, 1e-300, 8000).map_err(fail)?;
        integral = i2;
        err = e2;
        work += w2;
    }
    let value = pole + integral;
    // truncation at `upper` leaves a tail bounded by e^{−RAY_DECAY}
    let err = err + (-RAY_DECAY).exp() * abs_mass + 4.0 * f64::EPSILON * (pole.norm() + abs_mass);
    if err > rel_tol * value.norm() {
        return Err(Error::NonConvergence(format!(
            "E_{beta}({z}): error estimate {err:.2e} exceeds the requested relative tolerance {rel_tol:.1e}"
        )));
    }
    EvalResult::new(value, err, Method::Contour, work)
}

/// Parameters of `E_β(z) = H^{1,1}_{1,2}(−z | (0,1); (0,1),(0,β))`.
pub fn ml_params(beta: f64) -> Result<FoxHParams> {
    FoxHParams::new(
        1,
        1,
        vec![GammaPair::new(0.0, 1.0)],
        vec![GammaPair::new(0.0, 1.0), GammaPair::new(0.0, beta)],
    )
}

/// `E_β(z)` through its Fox H representation. Where `−z` lies outside the
/// sector of existence of the Mellin–Barnes integral (`z > 0` for example)
/// the residue series, which is entire in `z`, is summed instead.
pub fn ml_as_foxh(beta: f64, z: Complex64) -> Result<EvalResult> {
    if !(beta > 0.0 && beta <= 1.0) {
        return Err(invalid(format!("beta must lie in (0, 1], got {beta}")));
    }
    if z == c(0.0, 0.0) {
        return EvalResult::new(c(1.0, 0.0), 0.0, Method::ClosedForm, 0);
    }
    let params = ml_params(beta)?;
    let w = -z;
    let tol = 1e-12;
    let r = if fox_h::exists(&params, w) {
        fox_h::eval(&params, w, tol)?
    } else {
        fox_h::eval_residue_sum(&params, w, tol)?
    };
    Ok(realify(r, z))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ml(beta: f64, z: Complex64) -> Complex64 {
        ml_eval(&MLRequest::new(beta, z, 1e-12).unwrap()).unwrap().value
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm()
    }

    // e^{x²} erfc(x) from a 30-digit evaluation
    const ERFC_SCALED: [(f64, f64); 5] = [
        (0.0, 1.0),
        (0.5, 0.615_690_344_192_925_9),
        (1.0, 0.427_583_576_155_807),
        (2.0, 0.255_395_676_310_505_7),
        (3.0, 0.179_001_151_181_389_95),
    ];

    #[test]
    fn spec_examples() {
        assert_eq!(ml(0.7, c(0.0, 0.0)), c(1.0, 0.0));
        assert!(rel(ml(1.0, c(1.0, 0.0)), c(std::f64::consts::E, 0.0)) < 1e-14);
        assert!(rel(ml(0.5, c(-1.0, 0.0)), c(0.427_583_576_155_807, 0.0)) < 1e-12);
    }

    #[test]
    fn half_order_matches_scaled_erfc() {
        for (x, want) in ERFC_SCALED {
            assert!(rel(ml(0.5, c(-x, 0.0)), c(want, 0.0)) < 1e-12, "x = {x}");
        }
    }

    #[test]
    fn large_arguments_use_the_contour() {
        let r = ml_eval(&MLRequest::new(0.5, c(-30.0, 0.0), 1e-12).unwrap()).unwrap();
        assert_eq!(r.method, Method::Contour);
        // e^{900} erfc(30) ~ 1/(30√π) (1 − 1/1800 + …)
        let x = 30.0f64;
        let asym = 1.0 / (x * PI.sqrt()) * (1.0 - 1.0 / (2.0 * x * x) + 3.0 / (4.0 * x.powi(4)) - 15.0 / (8.0 * x.powi(6)));
        assert!((r.value.re - asym).abs() / asym < 1e-9, "{}", r.value.re);
        assert_eq!(r.value.im, 0.0);
    }

    #[test]
    fn order_one_keeps_relative_accuracy_far_out() {
        for z in [c(12.0, 5.0), c(-20.0, 0.0), c(-49.0, 3.0), c(-7.1, 0.0)] {
            let r = ml_eval(&MLRequest::new(1.0, z, 1e-12).unwrap()).unwrap();
            assert!(rel(r.value, z.exp()) < 1e-12, "{z}: {}", r.value);
            assert!(r.err_estimate <= 1e-12 * r.value.norm());
        }
    }

    #[test]
    fn foxh_route_examples() {
        assert_eq!(ml_as_foxh(1.0, c(0.0, 0.0)).unwrap().value, c(1.0, 0.0));
        let v = ml_as_foxh(1.0, c(-2.0, 0.0)).unwrap().value;
        assert!(rel(v, c((-2f64).exp(), 0.0)) < 1e-10);
        let v = ml_as_foxh(0.5, c(-1.0, 0.0)).unwrap().value;
        assert!(rel(v, c(0.427_583_576_155_807, 0.0)) < 1e-10);
    }

    #[test]
    fn request_validation() {
        assert!(MLRequest::new(0.0, c(1.0, 0.0), 1e-10).is_err());
        assert!(MLRequest::new(1.2, c(1.0, 0.0), 1e-10).is_err());
        assert!(MLRequest::new(0.5, c(1.0, 0.0), 1e-16).is_err());
    }
}
