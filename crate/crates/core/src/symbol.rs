//! The quantum Riesz–Feller symbol `|p|^α e^{i Sgn(p) θπ/2}` and the
//! admissible `(α, θ)` region shared by both potentials.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{invalid, Result};
use crate::numerics::signum;

/// Slack for `|θ|` sitting exactly on `min(α, 2 − α)` after rounding.
const THETA_SLACK: f64 = 1e-12;

/// `1 < α ≤ 2` and `|θ| ≤ min(α, 2 − α)`.
pub fn validate_alpha_theta(alpha: f64, theta: f64) -> Result<()> {
    if !(alpha > 1.0 && alpha <= 2.0) {
        return Err(invalid(format!("alpha must satisfy 1 < alpha <= 2, got {alpha}")));
    }
    let bound = alpha.min(2.0 - alpha);
    if !theta.is_finite() || theta.abs() > bound + THETA_SLACK {
        return Err(invalid(format!(
            "skewness violates |theta| <= min(alpha, 2 - alpha): |{theta}| > {bound} for alpha = {alpha}"
        )));
    }
    Ok(())
}

/// `|p|^α e^{i Sgn(p) θπ/2}`.
pub fn riesz_feller_symbol(alpha: f64, theta: f64, p: f64) -> Complex64 {
    let s = signum(p) as f64;
    Complex64::from_polar(p.abs().powf(alpha), s * theta * PI / 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_bound() {
        assert!(validate_alpha_theta(1.5, 0.5).is_ok());
        assert!(validate_alpha_theta(1.5, -0.5).is_ok());
        let e = validate_alpha_theta(1.5, 0.6).unwrap_err().to_string();
        assert!(e.contains("|theta| <= min(alpha, 2 - alpha)"), "{e}");
        assert!(validate_alpha_theta(2.0, 0.0).is_ok());
        assert!(validate_alpha_theta(2.0, 0.01).is_err());
        assert!(validate_alpha_theta(1.0, 0.0).is_err());
    }

    #[test]
    fn symbol_values() {
        assert_eq!(riesz_feller_symbol(1.5, 0.3, 0.0), Complex64::new(0.0, 0.0));
        let v = riesz_feller_symbol(2.0, 0.0, -3.0);
        assert!((v - Complex64::new(9.0, 0.0)).norm() < 1e-14);
        let a = riesz_feller_symbol(1.5, 0.4, 2.0);
        let b = riesz_feller_symbol(1.5, 0.4, -2.0);
        assert!((a - b.conj()).norm() < 1e-14);
    }
}
