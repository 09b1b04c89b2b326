//! The Fox H-function
//!
//! ```text
//! H^{m,n}_{p,q}(z) = (1/2πi) ∫_L Θ(s) z^{−s} ds,
//! Θ(s) = Π_{j≤m} Γ(b_j + B_j s) Π_{j≤n} Γ(1 − a_j − A_j s)
//!        / [Π_{j>m} Γ(1 − b_j − B_j s) Π_{j>n} Γ(a_j + A_j s)]
//! ```
//!
//! evaluated either as a sum of residues or by quadrature along a vertical
//! line. The residue series handles simple and double poles; poles of
//! order three or more are reported as [`Error::DegeneratePoles`]. When the
//! f64 residue sum loses too many digits to cancellation and all
//! parameters are real, it is re-summed in double-double arithmetic.

mod contour;
mod series;
mod transforms;

pub use transforms::{invert_argument, scale_argument_power, shift_by_power};

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{invalid, Error, Result};
use crate::numerics::{c, principal_arg, principal_ln, principal_power};
use crate::result::EvalResult;

/// One gamma-factor parameter pair `(a, A)` or `(b, B)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaPair {
    pub shift: Complex64,
    pub weight: f64,
}

impl GammaPair {
    pub fn new(shift: f64, weight: f64) -> Self {
        GammaPair { shift: c(shift, 0.0), weight }
    }

    pub fn complex(shift: Complex64, weight: f64) -> Self {
        GammaPair { shift, weight }
    }
}

/// Parameters of `H^{m,n}_{p,q}`; `upper` holds the `(a_j, A_j)`, `lower`
/// the `(b_j, B_j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FoxHParams {
    m: usize,
    n: usize,
    upper: Vec<GammaPair>,
    lower: Vec<GammaPair>,
}

impl FoxHParams {
    pub fn new(m: usize, n: usize, upper: Vec<GammaPair>, lower: Vec<GammaPair>) -> Result<Self> {
        if m > lower.len() {
            return Err(invalid(format!("m = {m} exceeds q = {}", lower.len())));
        }
        if n > upper.len() {
            return Err(invalid(format!("n = {n} exceeds p = {}", upper.len())));
        }
        for g in upper.iter().chain(&lower) {
            if !(g.weight > 0.0 && g.weight.is_finite()) {
                return Err(invalid(format!("gamma weights must be positive, got {}", g.weight)));
            }
            if !(g.shift.re.is_finite() && g.shift.im.is_finite()) {
                return Err(invalid("gamma shifts must be finite"));
            }
        }
        Ok(FoxHParams { m, n, upper, lower })
    }

    /// Lifts Meijer G parameters to H parameters with unit weights.
    pub fn from_meijer_g(m: usize, n: usize, a: &[Complex64], b: &[Complex64]) -> Result<Self> {
        FoxHParams::new(
            m,
            n,
            a.iter().map(|&x| GammaPair::complex(x, 1.0)).collect(),
            b.iter().map(|&x| GammaPair::complex(x, 1.0)).collect(),
        )
    }

    pub fn m(&self) -> usize {
        self.m
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn p(&self) -> usize {
        self.upper.len()
    }
    pub fn q(&self) -> usize {
        self.lower.len()
    }
    pub fn upper(&self) -> &[GammaPair] {
        &self.upper
    }
    pub fn lower(&self) -> &[GammaPair] {
        &self.lower
    }

    fn all_real(&self) -> bool {
        self.upper.iter().chain(&self.lower).all(|g| g.shift.im == 0.0)
    }
}

/// Existence index `σ = Σ_{j≤n}A_j − Σ_{j>n}A_j + Σ_{j≤m}B_j − Σ_{j>m}B_j`.
pub fn sigma(params: &FoxHParams) -> f64 {
    let sum = |v: &[GammaPair]| v.iter().map(|g| g.weight).sum::<f64>();
    sum(&params.upper[..params.n]) - sum(&params.upper[params.n..]) + sum(&params.lower[..params.m])
        - sum(&params.lower[params.m..])
}

/// `μ = ΣB_j − ΣA_j`; its sign decides which residue series converges.
pub fn mu(params: &FoxHParams) -> f64 {
    params.lower.iter().map(|g| g.weight).sum::<f64>() - params.upper.iter().map(|g| g.weight).sum::<f64>()
}

/// `β = Π A_j^{−A_j} Π B_j^{B_j}`, the radius of convergence when `μ = 0`.
pub fn beta0(params: &FoxHParams) -> f64 {
    let ln = params.upper.iter().map(|g| -g.weight * g.weight.ln()).sum::<f64>()
        + params.lower.iter().map(|g| g.weight * g.weight.ln()).sum::<f64>();
    ln.exp()
}

/// `z ≠ 0`, `σ > 0` and `|arg z| < πσ/2` (strict).
pub fn exists(params: &FoxHParams, z: Complex64) -> bool {
    let s = sigma(params);
    z != c(0.0, 0.0) && s > 0.0 && principal_arg(z).abs() < PI * s / 2.0
}

fn check_tol(rel_tol: f64) -> Result<()> {
    if rel_tol > 0.0 && rel_tol < 1.0 {
        Ok(())
    } else {
        Err(invalid(format!("relative tolerance must lie in (0, 1), got {rel_tol}")))
    }
}

fn require_exists(params: &FoxHParams, z: Complex64) -> Result<()> {
    if exists(params, z) {
        Ok(())
    } else {
        Err(Error::NotInExistenceDomain(format!(
            "z = {z}, sigma = {}, |arg z| = {}",
            sigma(params),
            principal_arg(z).abs()
        )))
    }
}

/// Residue series at `z` (principal branch). Closes the contour to the
/// left when `μ > 0` or `μ = 0, |z| < β`, to the right otherwise.
pub fn eval_series(params: &FoxHParams, z: Complex64, rel_tol: f64) -> Result<EvalResult> {
    check_tol(rel_tol)?;
    require_exists(params, z)?;
    series::residue_sum(params, series::LogArg::of(z), rel_tol)
}

/// Mellin–Barnes quadrature along `Re s = γ` at `z` (principal branch).
pub fn eval_contour(params: &FoxHParams, z: Complex64, rel_tol: f64) -> Result<EvalResult> {
    check_tol(rel_tol)?;
    require_exists(params, z)?;
    contour::integrate(params, principal_ln(z), rel_tol)
}

/// Residue sum at `z` (principal branch) without the existence test. This
/// continues the H-function analytically past the sector where the
/// Mellin–Barnes integral converges, for example onto the boundary
/// `|arg z| = πσ/2`. Requires `μ ≠ 0` or `|z| ≠ β`.
pub fn eval_residue_sum(params: &FoxHParams, z: Complex64, rel_tol: f64) -> Result<EvalResult> {
    check_tol(rel_tol)?;
    series::residue_sum(params, series::LogArg::of(z), rel_tol)
}

/// Series first, contour if the series cannot deliver `rel_tol`.
pub fn eval(params: &FoxHParams, z: Complex64, rel_tol: f64) -> Result<EvalResult> {
    check_tol(rel_tol)?;
    require_exists(params, z)?;
    let arg = series::LogArg::of(z);
    let ln_z = arg.ln;
    match series::residue_sum(params, arg, rel_tol) {
        Ok(r) => Ok(r),
        Err(Error::DegeneratePoles(_)) | Err(Error::NonConvergence(_)) | Err(Error::NonFinite(_)) => {
            contour::integrate(params, ln_z, rel_tol)
        }
        Err(e) => Err(e),
    }
}

/// Which evaluation scheme [`eval_with`] uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Route {
    #[default]
    Auto,
    Series,
    Contour,
}

/// Route and relative tolerance for H-function evaluations made on behalf
/// of a wavefunction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalOptions {
    pub route: Route,
    pub rel_tol: f64,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions { route: Route::Auto, rel_tol: 1e-12 }
    }
}

pub fn eval_with(params: &FoxHParams, z: Complex64, opts: &EvalOptions) -> Result<EvalResult> {
    match opts.route {
        Route::Auto => eval(params, z, opts.rel_tol),
        Route::Series => eval_series(params, z, opts.rel_tol),
        Route::Contour => eval_contour(params, z, opts.rel_tol),
    }
}

/// Both sides of `x^ρ/(1 + b x^α) = b^{−ρ/α} H^{1,1}_{1,1}(b x^α | (ρ/α, 1); (ρ/α, 1))`.
pub fn rational_identity_check(x: f64, rho: f64, alpha: f64, b: Complex64) -> Result<(Complex64, Complex64)> {
    if !(x > 0.0) || !(rho >= 0.0) || !(alpha > 0.0) {
        return Err(invalid("need x > 0, rho >= 0, alpha > 0"));
    }
    if b == c(0.0, 0.0) || principal_arg(b).abs() >= PI {
        return Err(invalid("need b != 0 and |arg b| < pi"));
    }
    let xa = x.powf(alpha);
    let lhs = x.powf(rho) / (1.0 + b * xa);
    let r = rho / alpha;
    let params = FoxHParams::new(1, 1, vec![GammaPair::new(r, 1.0)], vec![GammaPair::new(r, 1.0)])?;
    let h = eval(&params, b * xa, 1e-12)?;
    let rhs = principal_power(b, c(-r, 0.0))? * h.value;
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn rational_params() -> FoxHParams {
        FoxHParams::new(1, 1, vec![GammaPair::new(0.0, 1.0)], vec![GammaPair::new(0.0, 1.0)]).unwrap()
    }

    fn exp_params() -> FoxHParams {
        FoxHParams::new(1, 0, vec![], vec![GammaPair::new(0.0, 1.0)]).unwrap()
    }

    fn delta_h23(alpha: f64) -> FoxHParams {
        let r = (alpha - 1.0) / alpha;
        FoxHParams::new(
            2,
            1,
            vec![GammaPair::new(r, 1.0 / alpha), GammaPair::new(0.5, 0.5)],
            vec![GammaPair::new(0.0, 1.0), GammaPair::new(r, 1.0 / alpha), GammaPair::new(0.5, 0.5)],
        )
        .unwrap()
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol * b.norm().max(1e-300)
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma(&rational_params()), 2.0);
        assert!((sigma(&delta_h23(2.0)) - 1.0).abs() < 1e-15);
        assert_eq!(sigma(&exp_params()), 1.0);
    }

    #[test]
    fn existence_examples() {
        let p = rational_params();
        assert!(exists(&p, c(1.0, 0.0)));
        assert!(!exists(&p, c(0.0, 0.0)));
        assert!(!exists(&p, c(-1.0, 0.0)));
        assert!(!exists(&p, c(-1.0, -0.0)));
    }

    #[test]
    fn invalid_params_rejected() {
        assert!(FoxHParams::new(2, 0, vec![], vec![GammaPair::new(0.0, 1.0)]).is_err());
        assert!(FoxHParams::new(1, 0, vec![], vec![GammaPair::new(0.0, 0.0)]).is_err());
        assert!(FoxHParams::new(0, 1, vec![], vec![]).is_err());
    }

    #[test]
    fn series_examples() {
        let r = eval_series(&exp_params(), c(1.0, 0.0), 1e-12).unwrap();
        assert!(close(r.value, c((-1f64).exp(), 0.0), 1e-12));
        let r = eval_series(&rational_params(), c(1.0, 0.0), 1e-10);
        // |z| = β on the boundary of both series
        assert!(r.is_err());
        let r = eval(&rational_params(), c(1.0, 0.0), 1e-10).unwrap();
        assert!(close(r.value, c(0.5, 0.0), 1e-10));
        let ml = FoxHParams::new(
            1,
            1,
            vec![GammaPair::new(0.0, 1.0)],
            vec![GammaPair::new(0.0, 1.0), GammaPair::new(0.0, 1.0)],
        )
        .unwrap();
        let r = eval_series(&ml, c(0.5, 0.0), 1e-12).unwrap();
        assert!(close(r.value, c((-0.5f64).exp(), 0.0), 1e-12));
    }

    #[test]
    fn contour_examples() {
        let r = eval_contour(&exp_params(), c(1.0, 0.0), 1e-10).unwrap();
        assert!(close(r.value, c((-1f64).exp(), 0.0), 1e-10), "{r:?}");
        let r = eval_contour(&rational_params(), c(2.0, 0.0), 1e-10).unwrap();
        assert!(close(r.value, c(1.0 / 3.0, 0.0), 1e-10), "{r:?}");
    }

    #[test]
    fn evaluators_refuse_outside_existence_domain() {
        let p = rational_params();
        assert!(matches!(eval_series(&p, c(-1.0, 0.0), 1e-8), Err(Error::NotInExistenceDomain(_))));
        assert!(matches!(eval_contour(&p, c(-1.0, 0.0), 1e-8), Err(Error::NotInExistenceDomain(_))));
        assert!(matches!(eval_contour(&p, c(0.0, 0.0), 1e-8), Err(Error::NotInExistenceDomain(_))));
    }

    #[test]
    fn double_poles_match_contour() {
        // α = 1.5 puts the poles of Γ(s) and Γ(1/3 + 2s/3) on top of each other
        let p = delta_h23(1.5);
        for x in [0.05, 0.7, 3.0, 10.0] {
            let s = eval_series(&p, c(x, 0.0), 1e-12).unwrap();
            let k = eval_contour(&p, c(x, 0.0), 1e-12).unwrap();
            assert!(close(s.value, k.value, 1e-9), "x = {x}: {} vs {}", s.value, k.value);
        }
    }

    #[test]
    fn alpha_two_reduces_to_exponential() {
        let p = delta_h23(2.0);
        for x in [0.25, 1.0, 4.0] {
            let r = eval(&p, c(x, 0.0), 1e-12).unwrap();
            assert!(close(r.value, c((-x).exp(), 0.0), 1e-10), "{x}: {}", r.value);
        }
    }

    #[test]
    fn rational_identity_examples() {
        let (l, r) = rational_identity_check(1.0, 0.0, 1.0, c(1.0, 0.0)).unwrap();
        assert!(close(l, c(0.5, 0.0), 1e-15) && close(r, l, 1e-8));
        let (l, r) = rational_identity_check(2.0, 1.0, 2.0, c(0.25, 0.0)).unwrap();
        assert!(close(l, c(1.0, 0.0), 1e-15) && close(r, l, 1e-8));
        let b = Complex64::from_polar(1.0, PI / 4.0);
        let (l, r) = rational_identity_check(1.0, 0.5, 1.5, b).unwrap();
        assert!(close(l, 1.0 / (1.0 + b), 1e-15) && close(r, l, 1e-8), "{l} {r}");
    }

    #[test]
    fn residue_sum_continues_past_existence_sector() {
        // E_1(z) = e^z = H^{1,1}_{1,2}(−z | (0,1); (0,1),(0,1)); σ = 1 excludes −z < 0
        let ml = FoxHParams::new(
            1,
            1,
            vec![GammaPair::new(0.0, 1.0)],
            vec![GammaPair::new(0.0, 1.0), GammaPair::new(0.0, 1.0)],
        )
        .unwrap();
        let r = eval_residue_sum(&ml, c(-2.0, 0.0), 1e-12).unwrap();
        assert!(close(r.value, c(2f64.exp(), 0.0), 1e-12), "{r:?}");
    }

    #[test]
    fn meijer_lift_uses_unit_weights() {
        let p = FoxHParams::from_meijer_g(1, 0, &[], &[c(0.0, 0.0)]).unwrap();
        assert_eq!(p, exp_params());
    }

    #[test]
    fn auto_rejects_series_swamped_by_large_terms() {
        // the left series converges here but its terms peak near 1e47
        let p = FoxHParams::new(
            1,
            1,
            vec![GammaPair::new(0.19829591753848552, 0.9063391941160861)],
            vec![
                GammaPair::new(0.1160563792286966, 0.5037521925296145),
                GammaPair::new(0.31863189652155355, 0.5889052910976758),
            ],
        )
        .unwrap();
        let z = c(1.992409444993457, -0.30591515811426745);
        let a = eval(&p, z, 1e-12).unwrap();
        let b = eval_contour(&p, z, 1e-12).unwrap();
        assert!((a.value - b.value).norm() < 1e-12 * b.value.norm());
        assert!(eval_series(&p, z, 1e-12).is_err());
    }

    #[test]
    fn series_handles_double_poles_split_by_rounding() {
        // Γ(1/2 + s/2) and Γ(1/5 + 4s/5) share poles at s = −9, −19, ... but
        // 1/5 and 4/5 are not exact in f64; reference from high-precision
        // Mellin–Barnes quadrature
        let a = GammaPair::new(0.25 / 1.25, 1.0 / 1.25);
        let p = FoxHParams::new(2, 1, vec![a], vec![GammaPair::new(0.5, 0.5), a, GammaPair::new(0.0, 0.5)])
            .unwrap();
        let r = eval_series(&p, c(15.0, -3.0), 1e-12).unwrap();
        let want = c(0.045441110949879273, 0.0091460347449528740);
        assert!((r.value - want).norm() < 1e-13 * want.norm(), "{}", r.value);
    }
}
