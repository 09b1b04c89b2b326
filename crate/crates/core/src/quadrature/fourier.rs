//! Discrete check of the momentum-representation Fourier pair
//! `ψ̂(p) = (1/2πħ) ∫ e^{−ipx/ħ} ψ(x) dx`, `ψ(x) = ∫ e^{ipx/ħ} ψ̂(p) dp`
//! and of its Plancherel identity `∫|ψ|² dx = 2πħ ∫|ψ̂|² dp`.
//!
//! The momentum grid is the reciprocal of the position grid,
//! `dp = 2πħ / (N dx)`, so the discrete pair inverts exactly and the check
//! measures only rounding and sampling defects.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{invalid, Error, Result};
pub use crate::grid::GridSpec;
use crate::numerics::c;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourierCheck {
    /// `max_j |(F⁻¹Fψ)_j − ψ_j|` relative to `max_j |ψ_j|`.
    pub round_trip_error: f64,
    /// `∫|ψ|²dx / (2πħ ∫|ψ̂|²dp)`.
    pub plancherel_ratio: f64,
    /// `max(|ψ_0|, |ψ_{N−1}|) / max_j |ψ_j|`; the continuous transform is
    /// only represented faithfully when this is tiny.
    pub edge_ratio: f64,
}

fn momentum_step(grid: &GridSpec, hbar: f64) -> f64 {
    2.0 * PI * hbar / (grid.count as f64 * grid.step())
}

/// Momentum points `p_k = (k − ⌊N/2⌋) dp` matching [`forward_transform`].
pub fn momentum_points(grid: &GridSpec, hbar: f64) -> Vec<f64> {
    let n = grid.count as i64;
    let dp = momentum_step(grid, hbar);
    (0..n).map(|k| (k - n / 2) as f64 * dp).collect()
}

/// Table of `e^{2πi r/N}`; indexing with `m·j mod N` keeps the phase exact
/// for large indices.
fn twiddles(n: i64) -> Vec<Complex64> {
    (0..n).map(|r| Complex64::from_polar(1.0, 2.0 * PI * r as f64 / n as f64)).collect()
}

fn twiddle(table: &[Complex64], m: i64, j: i64, sign: f64) -> Complex64 {
    let w = table[(m * j).rem_euclid(table.len() as i64) as usize];
    if sign < 0.0 {
        w.conj()
    } else {
        w
    }
}

/// Discrete forward transform: returns `(p_k, ψ̂(p_k))`.
pub fn forward_transform(samples: &[Complex64], grid: &GridSpec, hbar: f64) -> Result<(Vec<f64>, Vec<Complex64>)> {
    check_inputs(samples, grid, hbar)?;
    let n = grid.count as i64;
    let dx = grid.step();
    let dp = momentum_step(grid, hbar);
    let table = twiddles(n);
    let mut out = Vec::with_capacity(grid.count);
    for k in 0..n {
        let m = k - n / 2;
        // e^{−i p x_j/ħ} = e^{−i p start/ħ} · e^{−2πi m j / N}
        let base = Complex64::from_polar(1.0, -(m as f64 * dp) * grid.start / hbar);
        let mut acc = c(0.0, 0.0);
        for (j, psi) in samples.iter().enumerate() {
            acc += twiddle(&table, m, j as i64, -1.0) * psi;
        }
        out.push(base * acc * (dx / (2.0 * PI * hbar)));
    }
    Ok((momentum_points(grid, hbar), out))
}

fn inverse_transform(spectrum: &[Complex64], grid: &GridSpec, hbar: f64) -> Vec<Complex64> {
    let n = grid.count as i64;
    let dp = momentum_step(grid, hbar);
    let table = twiddles(n);
    let bases: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(1.0, ((k - n / 2) as f64 * dp) * grid.start / hbar))
        .collect();
    (0..n)
        .map(|j| {
            let mut acc = c(0.0, 0.0);
            for (k, v) in spectrum.iter().enumerate() {
                let m = k as i64 - n / 2;
                acc += bases[k] * twiddle(&table, m, j, 1.0) * v;
            }
            acc * dp
        })
        .collect()
}

fn check_inputs(samples: &[Complex64], grid: &GridSpec, hbar: f64) -> Result<()> {
    if grid.count < 2 {
        return Err(invalid("a Fourier pair needs at least 2 grid points"));
    }
    if samples.len() != grid.count {
        return Err(invalid(format!("{} samples for a grid of {} points", samples.len(), grid.count)));
    }
    if !(hbar > 0.0) {
        return Err(invalid("hbar must be positive"));
    }
    if samples.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
        return Err(Error::NonFinite("non-finite sample".into()));
    }
    Ok(())
}

/// Forward-then-inverse round trip and Plancherel ratio of sampled `ψ`.
pub fn fourier_pair_check(samples: &[Complex64], grid: &GridSpec, hbar: f64) -> Result<FourierCheck> {
    check_inputs(samples, grid, hbar)?;
    let peak = samples.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if peak == 0.0 {
        return Ok(FourierCheck { round_trip_error: 0.0, plancherel_ratio: 1.0, edge_ratio: 0.0 });
    }
    let (_, spectrum) = forward_transform(samples, grid, hbar)?;
    let back = inverse_transform(&spectrum, grid, hbar);
    let round_trip_error =
        samples.iter().zip(&back).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max) / peak;
    let dx = grid.step();
    let dp = momentum_step(grid, hbar);
    let norm_x: f64 = samples.iter().map(|z| z.norm_sqr()).sum::<f64>() * dx;
    let norm_p: f64 = spectrum.iter().map(|z| z.norm_sqr()).sum::<f64>() * dp;
    let plancherel_ratio = norm_x / (2.0 * PI * hbar * norm_p);
    let edge_ratio = samples[0].norm().max(samples[grid.count - 1].norm()) / peak;
    if round_trip_error > 1e-3 {
        return Err(Error::GridTooCoarse(format!("round-trip error {round_trip_error:.3e}")));
    }
    Ok(FourierCheck { round_trip_error, plancherel_ratio, edge_ratio })
}
