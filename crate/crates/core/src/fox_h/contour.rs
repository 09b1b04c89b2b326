//! Quadrature of the Mellin–Barnes integral along `Re s = γ`.
//!
//! `H = (1/2π) ∫ Θ(γ + it) e^{−(γ+it) log z} dt`, integrated outward in
//! blocks `[0, 8], [8, 16], [16, 32], …` on each side until a block adds
//! less than `0.1·rel_tol` of the accumulated value. The gamma decay along
//! vertical lines is exponential in `|t|` inside the existence sector, so
//! the doubling terminates quickly; `|t| ≤ 400` is the hard cap.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::FoxHParams;
use crate::error::{Error, Result};
use crate::numerics::{c, log_gamma};
use crate::quadrature::adaptive_raw;
use crate::result::{EvalResult, Method};

const T_CAP: f64 = 400.0;
const MIN_GAP: f64 = 1e-6;

/// `γ` in the middle of the gap between left and right pole sets.
pub(super) fn contour_abscissa(params: &FoxHParams) -> Result<f64> {
    let left = params.lower[..params.m]
        .iter()
        .map(|g| -g.shift.re / g.weight)
        .fold(f64::NEG_INFINITY, f64::max);
    let right = params.upper[..params.n]
        .iter()
        .map(|g| (1.0 - g.shift.re) / g.weight)
        .fold(f64::INFINITY, f64::min);
    match (left.is_finite(), right.is_finite()) {
        (true, true) => {
            if right - left <= MIN_GAP {
                Err(Error::NoSeparatingContour(format!(
                    "left poles reach Re s = {left}, right poles start at Re s = {right}"
                )))
            } else {
                Ok(0.5 * (left + right))
            }
        }
        (true, false) => Ok(left + 0.5),
        (false, true) => Ok(right - 0.5),
        (false, false) => Ok(0.0),
    }
}

fn integrand(params: &FoxHParams, gamma: f64, ln_z: Complex64, t: f64) -> Complex64 {
    let s = c(gamma, t);
    let mut ln = -s * ln_z;
    for (j, g) in params.lower.iter().enumerate() {
        if j < params.m {
            match log_gamma(g.shift + g.weight * s) {
                Ok(v) => ln += v,
                Err(_) => return c(f64::NAN, f64::NAN),
            }
        } else {
            // 1/Γ vanishes at its poles
            match log_gamma(1.0 - g.shift - g.weight * s) {
                Ok(v) => ln -= v,
                Err(_) => return c(0.0, 0.0),
            }
        }
    }
    for (j, g) in params.upper.iter().enumerate() {
        if j < params.n {
            match log_gamma(1.0 - g.shift - g.weight * s) {
                Ok(v) => ln += v,
                Err(_) => return c(f64::NAN, f64::NAN),
            }
        } else {
            match log_gamma(g.shift + g.weight * s) {
                Ok(v) => ln -= v,
                Err(_) => return c(0.0, 0.0),
            }
        }
    }
    if ln.re < -745.0 {
        return c(0.0, 0.0);
    }
    ln.exp() / (2.0 * PI)
}

pub(super) fn integrate(params: &FoxHParams, ln_z: Complex64, rel_tol: f64) -> Result<EvalResult> {
    let gamma = contour_abscissa(params)?;
    let f = |t: f64| integrand(params, gamma, ln_z, t);
    // coarse magnitude of the integral, used to turn rel_tol into an absolute target
    let mut scale = 0.0;
    for i in -16..16 {
        let t = i as f64 * 0.5 + 0.25;
        scale += f(t).norm() * 0.5;
    }
    let mut total = c(0.0, 0.0);
    let mut err = 0.0;
    let mut work = 0;
    // the rule's rounding floor is about 50ε per unit of ∫|integrand|
    let block_tol = |acc: Complex64| (0.1 * rel_tol * acc.norm()).max(200.0 * f64::EPSILON * scale).max(f64::MIN_POSITIVE);
    let (mut v, mut e, mut n) = adaptive_raw(&f, -8.0, 8.0, block_tol(c(scale, 0.0)), 1e-15, 20_000)?;
    if v.norm() < 0.5 * scale {
        // cancellation along the line: tighten to the size of the result
        let (v2, e2, n2) = adaptive_raw(&f, -8.0, 8.0, block_tol(v), 1e-15, 20_000)?;
        v = v2;
        e = e2;
        n += n2;
    }
    total += v;
    err += e;
    work += n;
    let mut lo: f64 = 8.0;
    loop {
        let hi = (2.0 * lo).min(T_CAP);
        let tol = block_tol(total);
        let (vp, ep, np) = adaptive_raw(&f, lo, hi, tol, 1e-15, 20_000)?;
        let (vm, em, nm) = adaptive_raw(&f, -hi, -lo, tol, 1e-15, 20_000)?;
        let block = vp + vm;
        total += block;
        err += ep + em;
        work += np + nm;
        if block.norm() < 0.1 * rel_tol * total.norm() {
            err += block.norm();
            break;
        }
        if hi >= T_CAP {
            return Err(Error::NonConvergence(format!(
                "Mellin–Barnes integrand not negligible at |Im s| = {T_CAP}"
            )));
        }
        lo = hi;
    }
    let value = total;
    if !(value.re.is_finite() && value.im.is_finite()) {
        return Err(Error::NonFinite("Mellin–Barnes integral".into()));
    }
    EvalResult::new(value, err, Method::Contour, work)
}
