//! Complex kernels shared by every other module: principal logarithm and
//! powers, the log-gamma and digamma functions, and the sign function.
//!
//! Branch cuts are principal everywhere: `arg z ∈ (−π, π]`, with the
//! negative real axis (including `−0.0` imaginary parts) mapped to `+π`.
//!
//! # Accuracy of `log_gamma`
//!
//! The argument is shifted by the recurrence `Γ(z) = Γ(z + n) / (z (z+1) … (z+n−1))`
//! until `Re(z + n) ≥ 10`, then the Stirling series with ten Bernoulli
//! terms is applied. The truncation error of the series at `|w| ≥ 10` is
//! below `1e-20`; the shift contributes one rounding per factor, so the
//! absolute error of `log Γ` stays within a few multiples of
//! `(n + |log Γ|) · ε`. For `|z| ≤ 50`, `Re z ≥ −30` this keeps
//! `exp(log_gamma(z))` within `1e-13` relative of `Γ(z)`, and on vertical
//! lines with `|Im z| ≤ 400` (the Mellin–Barnes range) within `1e-12`.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type ComplexValue = Complex64;

pub(crate) const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// `B_{2k}` for k = 1..=10.
const BERNOULLI_EVEN: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];

const STIRLING_SHIFT: f64 = 10.0;
const POLE_TOL: f64 = 1e-12;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Principal argument in `(−π, π]`.
pub fn principal_arg(z: Complex64) -> f64 {
    if z.im == 0.0 && z.re < 0.0 {
        std::f64::consts::PI
    } else {
        z.im.atan2(z.re)
    }
}

/// Principal logarithm `ln|z| + i·arg z`, `arg z ∈ (−π, π]`.
pub fn principal_ln(z: Complex64) -> Complex64 {
    c(z.norm().ln(), principal_arg(z))
}

/// `z^w = exp(w · Log z)` on the principal branch.
///
/// `0^w` is `0` when `Re w > 0` and an error otherwise.
pub fn principal_power(z: Complex64, w: Complex64) -> Result<Complex64> {
    if z == Complex64::new(0.0, 0.0) {
        return if w.re > 0.0 { Ok(c(0.0, 0.0)) } else { Err(Error::ZeroBase) };
    }
    if w == c(0.0, 0.0) {
        return Ok(c(1.0, 0.0));
    }
    if z.im == 0.0 && z.re > 0.0 && w.im == 0.0 {
        return Ok(c(z.re.powf(w.re), 0.0));
    }
    let v = (w * principal_ln(z)).exp();
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite(format!("({z})^({w}) overflows")))
    }
}

/// `Sgn(p)`: −1, 0 or +1.
pub fn signum(p: f64) -> i32 {
    if p > 0.0 {
        1
    } else if p < 0.0 {
        -1
    } else {
        0
    }
}

/// If `z` lies within `tol` of a non-positive integer, returns that integer's
/// absolute value.
pub(crate) fn nonpositive_integer_near(z: Complex64, tol: f64) -> Option<u64> {
    if z.re > 0.5 || z.im.abs() > tol {
        return None;
    }
    let n = z.re.round();
    if (z.re - n).abs() <= tol * n.abs().max(1.0) && n <= 0.0 {
        Some((-n) as u64)
    } else {
        None
    }
}

fn check_pole(z: Complex64) -> Result<()> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::NonFinite(format!("log_gamma argument {z}")));
    }
    if nonpositive_integer_near(z, POLE_TOL).is_some() {
        return Err(Error::PoleOfGamma { re: z.re, im: z.im });
    }
    Ok(())
}

fn stirling_ln_gamma(w: Complex64) -> Complex64 {
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut corr = c(0.0, 0.0);
    let mut pow = inv;
    for (k, b) in BERNOULLI_EVEN.iter().enumerate() {
        let k = (k + 1) as f64;
        corr += pow * (b / (2.0 * k * (2.0 * k - 1.0)));
        pow *= inv2;
    }
    (w - 0.5) * principal_ln(w) - w + LN_SQRT_2PI + corr
}

/// Principal branch of `log Γ(z)`: the branch that is real on the positive
/// real axis and continuous in the plane cut along the negative real axis.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    check_pole(z)?;
    let mut w = z;
    let mut shift = c(0.0, 0.0);
    while w.re < STIRLING_SHIFT {
        shift += principal_ln(w);
        w += 1.0;
    }
    Ok(stirling_ln_gamma(w) - shift)
}

/// `Γ(z)` via `exp(log_gamma(z))`.
pub fn gamma(z: Complex64) -> Result<Complex64> {
    let v = log_gamma(z)?.exp();
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite(format!("Γ({z}) overflows")))
    }
}

/// `log Γ(x)` for real `x > 0`.
pub fn ln_gamma_real(x: f64) -> Result<f64> {
    if x <= 0.0 {
        return Err(invalid_real(x));
    }
    Ok(log_gamma(c(x, 0.0))?.re)
}

fn invalid_real(x: f64) -> Error {
    Error::InvalidParameter(format!("ln_gamma_real expects x > 0, got {x}"))
}

/// Digamma `ψ(z) = Γ'(z)/Γ(z)`; used for residues at double poles.
pub(crate) fn digamma(z: Complex64) -> Result<Complex64> {
    check_pole(z)?;
    let mut w = z;
    let mut shift = c(0.0, 0.0);
    while w.re < STIRLING_SHIFT {
        shift += w.inv();
        w += 1.0;
    }
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = c(0.0, 0.0);
    let mut pow = inv2;
    for (k, b) in BERNOULLI_EVEN.iter().enumerate() {
        let k = (k + 1) as f64;
        series += pow * (b / (2.0 * k));
        pow *= inv2;
    }
    Ok(principal_ln(w) - inv * 0.5 - series - shift)
}

/// `ψ(n + 1) = −γ + H_n`.
pub(crate) fn digamma_int(n: u64) -> f64 {
    const EULER: f64 = 0.577_215_664_901_532_9;
    let mut h = 0.0;
    for j in 1..=n {
        h += 1.0 / j as f64;
    }
    h - EULER
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn log_gamma_at_one_is_zero() {
        assert_eq!(log_gamma(c(1.0, 0.0)).unwrap().norm() < 1e-15, true);
    }

    #[test]
    fn log_gamma_half_matches_reflection() {
        // Γ(1/2)² = π / sin(π/2)
        let v = log_gamma(c(0.5, 0.0)).unwrap();
        assert!((v.re - 0.5 * PI.ln()).abs() < 1e-14);
        assert!((v.re - 0.572_364_942_924_700_1).abs() < 1e-14);
        assert_eq!(v.im, 0.0);
    }

    #[test]
    fn log_gamma_reference_values() {
        // Reference values from an independent 50-digit evaluation.
        let cases = [
            (c(2.5, 1.0), c(0.048_108_629_623_555_02, 0.740_143_596_999_088_9)),
            (c(-3.3, 0.2), c(-1.080_555_944_299_958_6, -11.914_238_004_764_485)),
            (c(0.5, 200.0), c(-313.240_326_825_774_65, 859.663_681_643_244_5)),
        ];
        for (z, want) in cases {
            let got = log_gamma(z).unwrap();
            assert!((got - want).norm() < 1e-12 * want.norm().max(1.0), "{z}: {got} vs {want}");
        }
    }

    #[test]
    fn recurrence_at_complex_point() {
        let z = c(2.5, 1.0);
        let lhs = log_gamma(z + 1.0).unwrap().exp();
        let rhs = z * log_gamma(z).unwrap().exp();
        assert!(rel(lhs, rhs) < 1e-12);
    }

    #[test]
    fn poles_are_rejected() {
        for n in [0.0, -1.0, -7.0] {
            assert!(matches!(log_gamma(c(n, 0.0)), Err(Error::PoleOfGamma { .. })));
        }
        assert!(log_gamma(c(-1.0 + 1e-9, 0.0)).is_ok());
    }

    #[test]
    fn principal_power_examples() {
        assert_eq!(principal_power(c(1.0, 0.0), c(0.3, -2.0)).unwrap(), c(1.0, 0.0));
        let v = principal_power(c(-1.0, 0.0), c(0.5, 0.0)).unwrap();
        assert!((v - I).norm() < 1e-15);
        let v = principal_power(c(-1.0, -0.0), c(0.5, 0.0)).unwrap();
        assert!((v - I).norm() < 1e-15);
        let v = principal_power(c(0.0, 2.0), c(1.5, 0.0)).unwrap();
        let want = (c(1.5, 0.0) * c(2f64.ln(), PI / 2.0)).exp();
        assert!(rel(v, want) < 1e-15);
        assert_eq!(principal_power(c(0.0, 0.0), c(2.0, 0.0)).unwrap(), c(0.0, 0.0));
        assert_eq!(principal_power(c(0.0, 0.0), c(-1.0, 0.0)), Err(Error::ZeroBase));
        assert_eq!(principal_power(c(0.0, 0.0), c(0.0, 0.0)), Err(Error::ZeroBase));
    }

    #[test]
    fn signum_examples() {
        assert_eq!(signum(0.0), 0);
        assert_eq!(signum(-3.2), -1);
        assert_eq!(signum(7.0), 1);
    }

    #[test]
    fn digamma_reference_values() {
        let v = digamma(c(0.3, 0.0)).unwrap();
        assert!((v.re + 3.502_524_222_200_133).abs() < 1e-13);
        let v = digamma(c(-1.7, 0.0)).unwrap();
        assert!((v.re + 1.485_717_499_511_056_7).abs() < 1e-13);
        assert!((digamma_int(0) + 0.577_215_664_901_532_9).abs() < 1e-16);
        let v = digamma(c(4.0, 0.0)).unwrap();
        assert!((v.re - digamma_int(3)).abs() < 1e-14);
    }
}
