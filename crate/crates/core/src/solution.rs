//! Separated solutions `ψ(x, t) = f(t) φ(x)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::delta::{delta_quadrature, delta_wavefunction, DeltaConfig};
use crate::error::{Error, Result};
use crate::fox_h::EvalOptions;
use crate::linear::{linear_closed_form_with, linear_quadrature, linear_series, LinearConfig};
use crate::result::EvalResult;
use crate::time::{time_factor, TimeConfig};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "potential", rename_all = "snake_case")]
pub enum SpaceConfig {
    Delta(DeltaConfig),
    Linear(LinearConfig),
}

impl SpaceConfig {
    pub fn hbar(&self) -> f64 {
        match self {
            SpaceConfig::Delta(d) => d.hbar,
            SpaceConfig::Linear(l) => l.hbar,
        }
    }

    pub fn energy(&self) -> f64 {
        match self {
            SpaceConfig::Delta(d) => d.energy,
            SpaceConfig::Linear(l) => l.energy,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            SpaceConfig::Delta(d) => d.validate(),
            SpaceConfig::Linear(l) => l.validate(),
        }
    }
}

/// How the spatial factor is computed.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum SpaceMethod {
    /// The H-function form, evaluated with the given route and tolerance.
    ClosedForm(EvalOptions),
    /// The power series (linear potential only).
    Series,
    /// Direct quadrature of the momentum-space integrals.
    Quadrature,
    #[default]
    Auto,
}

/// `φ(x)` for either potential.
pub fn space_factor(space: &SpaceConfig, x: f64, method: SpaceMethod) -> Result<EvalResult> {
    let opts = match method {
        SpaceMethod::ClosedForm(o) => o,
        _ => EvalOptions::default(),
    };
    match (space, method) {
        (SpaceConfig::Delta(d), SpaceMethod::Quadrature) => delta_quadrature(d, x),
        (SpaceConfig::Delta(_), SpaceMethod::Series) => Err(Error::InvalidParameter(
            "the delta-well wavefunction has no power-series route".into(),
        )),
        (SpaceConfig::Delta(d), _) => delta_wavefunction(d, x, &opts),
        (SpaceConfig::Linear(l), SpaceMethod::Quadrature) => linear_quadrature(l, x),
        (SpaceConfig::Linear(l), SpaceMethod::Series) => linear_series(l, x),
        (SpaceConfig::Linear(l), _) => linear_closed_form_with(l, x, &opts),
    }
}

/// Both parts must describe the same `ħ` and separation constant `E`.
pub fn check_compatible(time: &TimeConfig, space: &SpaceConfig) -> Result<()> {
    let close = |a: f64, b: f64| (a - b).abs() <= 1e-12 * a.abs().max(b.abs());
    if !close(time.hbar, space.hbar()) {
        return Err(Error::ConfigMismatch(format!(
            "hbar differs between time ({}) and space ({}) parts",
            time.hbar,
            space.hbar()
        )));
    }
    let e = space.energy();
    if !(close(time.energy.re, e) && time.energy.im.abs() <= 1e-12 * e.abs().max(1.0)) {
        return Err(Error::ConfigMismatch(format!(
            "energy differs between time ({}) and space ({e}) parts",
            time.energy
        )));
    }
    Ok(())
}

/// `ψ(x, t) = f(t) φ(x)`.
pub fn full_solution(time: &TimeConfig, space: &SpaceConfig, x: f64, t: f64) -> Result<EvalResult> {
    full_solution_with(time, space, x, t, SpaceMethod::Auto)
}

pub fn full_solution_with(
    time: &TimeConfig,
    space: &SpaceConfig,
    x: f64,
    t: f64,
    method: SpaceMethod,
) -> Result<EvalResult> {
    time.validate()?;
    space.validate()?;
    check_compatible(time, space)?;
    let f = time_factor(time, t)?;
    let phi = space_factor(space, x, method)?;
    let value: Complex64 = f.value * phi.value;
    let err = f.err_estimate * phi.value.norm() + phi.err_estimate * f.value.norm();
    EvalResult::new(value, err, phi.method, f.work + phi.work)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::c;

    fn delta() -> SpaceConfig {
        SpaceConfig::Delta(DeltaConfig::new(1.0, 0.5, 2.0, 0.0, -0.5, 1.0).unwrap())
    }

    #[test]
    fn initial_time_gives_f0_phi() {
        let time = TimeConfig::new(0.5, 1.0, c(-0.5, 0.0), c(2.0, 1.0)).unwrap();
        let psi = full_solution(&time, &delta(), 1.0, 0.0).unwrap().value;
        let phi = space_factor(&delta(), 1.0, SpaceMethod::Auto).unwrap().value;
        assert!((psi - c(2.0, 1.0) * phi).norm() < 1e-15);
    }

    #[test]
    fn classical_evolution_is_unitary() {
        let time = TimeConfig::new(1.0, 1.0, c(-0.5, 0.0), c(1.0, 0.0)).unwrap();
        let phi = space_factor(&delta(), 0.7, SpaceMethod::Auto).unwrap().value;
        for t in [0.3, 2.0, 9.0] {
            let psi = full_solution(&time, &delta(), 0.7, t).unwrap().value;
            assert!((psi.norm_sqr() / phi.norm_sqr() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn fractional_evolution_decays() {
        let time = TimeConfig::new(0.5, 1.0, c(-0.5, 0.0), c(1.0, 0.0)).unwrap();
        let a = full_solution(&time, &delta(), 1.0, 1.0).unwrap().value.norm();
        let b = full_solution(&time, &delta(), 1.0, 10.0).unwrap().value.norm();
        assert!(b < a);
    }

    #[test]
    fn mismatch_is_reported() {
        let time = TimeConfig::new(1.0, 1.0, c(-1.0, 0.0), c(1.0, 0.0)).unwrap();
        assert!(matches!(full_solution(&time, &delta(), 1.0, 1.0), Err(Error::ConfigMismatch(_))));
        let time = TimeConfig::new(1.0, 2.0, c(-0.5, 0.0), c(1.0, 0.0)).unwrap();
        assert!(matches!(full_solution(&time, &delta(), 1.0, 1.0), Err(Error::ConfigMismatch(_))));
    }
}
