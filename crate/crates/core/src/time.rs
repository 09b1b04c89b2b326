//! The time factor `f(t) = f(0) E_β((t/(iħ))^β E)` of a separated solution
//! `ψ(x, t) = f(t) φ(x)` with a Caputo time derivative of order `β`.
//!
//! `t/(iħ) = −it/ħ` has argument `−π/2` on the principal branch, so
//! `(t/(iħ))^β = e^{−iπβ/2} (t/ħ)^β`; at `β = 1` this reproduces
//! `f(0) e^{−iEt/ħ}`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::fox_h;
use crate::mittag_leffler::{ml_eval, ml_params, MLRequest};
use crate::numerics::{c, principal_power};
use crate::result::EvalResult;

const ML_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimeConfig {
    pub beta: f64,
    pub hbar: f64,
    pub energy: Complex64,
    pub f0: Complex64,
}

impl TimeConfig {
    pub fn new(beta: f64, hbar: f64, energy: Complex64, f0: Complex64) -> Result<Self> {
        let cfg = TimeConfig { beta, hbar, energy, f0 };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.beta > 0.0 && self.beta <= 1.0) {
            return Err(invalid(format!("beta must lie in (0, 1], got {}", self.beta)));
        }
        if !(self.hbar > 0.0 && self.hbar.is_finite()) {
            return Err(invalid(format!("hbar must be positive, got {}", self.hbar)));
        }
        let finite = |z: Complex64| z.re.is_finite() && z.im.is_finite();
        if !finite(self.energy) || !finite(self.f0) {
            return Err(invalid("energy and f0 must be finite"));
        }
        Ok(())
    }
}

fn check_time(t: f64) -> Result<()> {
    if t >= 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::DomainError(format!("time must be finite and non-negative, got {t}")))
    }
}

/// `(t/(iħ))^β E`, the Mittag-Leffler argument.
pub fn time_argument(cfg: &TimeConfig, t: f64) -> Result<Complex64> {
    check_time(t)?;
    if t == 0.0 {
        return Ok(c(0.0, 0.0));
    }
    let base = c(0.0, -t / cfg.hbar);
    Ok(principal_power(base, c(cfg.beta, 0.0))? * cfg.energy)
}

pub fn time_factor(cfg: &TimeConfig, t: f64) -> Result<EvalResult> {
    cfg.validate()?;
    let z = time_argument(cfg, t)?;
    let r = match ml_eval(&MLRequest::new(cfg.beta, z, ML_TOL)?) {
        Err(Error::NonConvergence(_)) => ml_eval(&MLRequest::new(cfg.beta, z, 1e-8)?)?,
        r => r?,
    };
    r.scaled(cfg.f0)
}

/// `f(0) H^{1,1}_{1,2}[−(t/(iħ))^β E | (0,1); (0,1),(0,β)]`. On the
/// boundary of the existence sector (for instance `β = 1` with real `E`)
/// the residue series of the same H-function is summed.
pub fn time_factor_via_h(cfg: &TimeConfig, t: f64) -> Result<EvalResult> {
    cfg.validate()?;
    let z = time_argument(cfg, t)?;
    if z == c(0.0, 0.0) {
        return EvalResult::exact(cfg.f0);
    }
    let params = ml_params(cfg.beta)?;
    let w = -z;
    let r = if fox_h::exists(&params, w) {
        fox_h::eval(&params, w, ML_TOL)?
    } else {
        fox_h::eval_residue_sum(&params, w, ML_TOL)?
    };
    r.scaled(cfg.f0)
}

/// `f(0) e^{−iEt/ħ}`, the `β = 1` solution.
pub fn time_factor_classical(hbar: f64, energy: Complex64, f0: Complex64, t: f64) -> Complex64 {
    f0 * (c(0.0, -t / hbar) * energy).exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn cfg(beta: f64, e: f64) -> TimeConfig {
        TimeConfig::new(beta, 1.0, c(e, 0.0), c(1.0, 0.0)).unwrap()
    }

    #[test]
    fn initial_value() {
        let k = TimeConfig::new(0.6, 1.0, c(-1.0, 0.0), c(0.3, -2.0)).unwrap();
        assert_eq!(time_factor(&k, 0.0).unwrap().value, c(0.3, -2.0));
        assert_eq!(time_factor_via_h(&k, 0.0).unwrap().value, c(0.3, -2.0));
    }

    #[test]
    fn classical_quarter_turn() {
        let v = time_factor(&cfg(1.0, -0.5), PI).unwrap().value;
        assert!((v - c(0.0, 1.0)).norm() < 1e-12, "{v}");
        let v = time_factor_via_h(&cfg(1.0, -1.0), 1.0).unwrap().value;
        assert!((v - c(1f64.cos(), 1f64.sin())).norm() < 1e-10, "{v}");
    }

    #[test]
    fn fractional_spot_value() {
        // E_{1/2}(−e^{−iπ/4}) by the Taylor series directly
        let z = -Complex64::from_polar(1.0, -PI / 4.0);
        let mut want = c(0.0, 0.0);
        let mut zk = c(1.0, 0.0);
        for k in 0..80 {
            want += zk / crate::numerics::gamma(c(0.5 * k as f64 + 1.0, 0.0)).unwrap();
            zk *= z;
        }
        let v = time_factor(&cfg(0.5, -1.0), 1.0).unwrap().value;
        assert!((v - want).norm() < 1e-12 * want.norm());
        let h = time_factor_via_h(&cfg(0.7, -1.0), 0.5).unwrap().value;
        let m = time_factor(&cfg(0.7, -1.0), 0.5).unwrap().value;
        assert!((h - m).norm() < 1e-8 * m.norm());
    }

    #[test]
    fn negative_time_is_rejected() {
        assert!(matches!(time_factor(&cfg(0.5, -1.0), -1.0), Err(Error::DomainError(_))));
    }
}
