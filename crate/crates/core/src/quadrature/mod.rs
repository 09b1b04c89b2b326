//! Adaptive quadrature engines used as independent oracles.
//!
//! Every engine is built on the 21-point Gauss–Kronrod rule with
//! globally adaptive bisection. On top of it sit a half-line map for
//! smooth decaying integrands, a piecewise scheme with Wynn ε
//! extrapolation for slowly decaying oscillatory integrands, and a
//! rotated-ray integrator for integrands that decay along a complex ray.

mod fourier;

pub use fourier::{fourier_pair_check, forward_transform, FourierCheck, GridSpec};

use num_complex::Complex64;

use crate::error::{invalid, Error, Result};
use crate::numerics::c;
use crate::result::{EvalResult, Method};

#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Strategy {
    /// Globally adaptive Gauss–Kronrod on a finite interval or a mapped half-line.
    Adaptive,
    /// Half-line integral split into pieces of length `half_period` and
    /// summed with Wynn ε extrapolation.
    OscillatorySplit { half_period: f64 },
    /// Integral along `origin + r e^{i angle}`, `r ∈ [0, ∞)`.
    RotatedRay,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_panels: usize,
    pub strategy: Strategy,
}

impl QuadratureSpec {
    pub fn new(abs_tol: f64, rel_tol: f64, strategy: Strategy) -> Self {
        QuadratureSpec { abs_tol, rel_tol, max_panels: 4000, strategy }
    }

    fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0) {
            return Err(invalid("quadrature tolerances must be positive"));
        }
        if self.max_panels < 8 {
            return Err(invalid("max_panels must be at least 8"));
        }
        Ok(())
    }

    fn target(&self, value: Complex64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.norm())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Domain {
    Interval(f64, f64),
    HalfLine(f64),
    Ray { origin: Complex64, angle: f64 },
}

/// Integrates `f` over `domain`. Real domains call `f` with a real argument.
pub fn integrate<F>(f: F, domain: Domain, spec: &QuadratureSpec) -> Result<EvalResult>
where
    F: Fn(Complex64) -> Complex64,
{
    spec.validate()?;
    match (domain, spec.strategy) {
        (Domain::Interval(a, b), Strategy::Adaptive) => adaptive(|x| f(c(x, 0.0)), a, b, spec),
        (Domain::HalfLine(a), Strategy::Adaptive) => half_line(|x| f(c(x, 0.0)), a, spec),
        (Domain::HalfLine(a), Strategy::OscillatorySplit { half_period }) => {
            oscillatory(|x| f(c(x, 0.0)), a, half_period, spec)
        }
        (Domain::Ray { origin, angle }, Strategy::RotatedRay) => ray(f, origin, angle, spec),
        (d, s) => Err(invalid(format!("strategy {s:?} does not apply to domain {d:?}"))),
    }
}

struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    err: f64,
}

fn gk21<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> Panel {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut gauss = c(0.0, 0.0);
    let mut kronrod = fc * WGK[10];
    let mut resabs = fc.norm() * WGK[10];
    let mut fv1 = [c(0.0, 0.0); 10];
    let mut fv2 = [c(0.0, 0.0); 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        kronrod += (f1 + f2) * WGK[j];
        resabs += WGK[j] * (f1.norm() + f2.norm());
        if j % 2 == 1 {
            gauss += (f1 + f2) * WG[j / 2];
        }
    }
    let mean = kronrod * 0.5;
    let mut resasc = WGK[10] * (fc - mean).norm();
    for j in 0..10 {
        resasc += WGK[j] * ((fv1[j] - mean).norm() + (fv2[j] - mean).norm());
    }
    let h = half.abs();
    let value = kronrod * half;
    let resabs = resabs * h;
    let resasc = resasc * h;
    let mut err = ((kronrod - gauss) * half).norm();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * resabs);
    }
    if !(value.re.is_finite() && value.im.is_finite()) {
        err = f64::INFINITY;
    }
    Panel { a, b, value, err }
}

/// Raw adaptive driver: returns `(value, error, panels)`.
pub(crate) fn adaptive_raw<F: Fn(f64) -> Complex64>(
    f: &F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
    max_panels: usize,
) -> Result<(Complex64, f64, usize)> {
    if a == b {
        return Ok((c(0.0, 0.0), 0.0, 0));
    }
    let mut panels = vec![gk21(f, a, b)];
    let min_width = (b - a).abs() * 1e-14;
    loop {
        let value: Complex64 = panels.iter().map(|p| p.value).sum();
        let err: f64 = panels.iter().map(|p| p.err).sum();
        if !(value.re.is_finite() && value.im.is_finite()) {
            return Err(Error::QuadratureFailure(format!("non-finite integrand on [{a}, {b}]")));
        }
        if err <= abs_tol.max(rel_tol * value.norm()) {
            return Ok((value, err, panels.len()));
        }
        if panels.len() >= max_panels {
            return Err(Error::QuadratureFailure(format!(
                "panel budget {max_panels} exhausted on [{a}, {b}] (error {err:.3e})"
            )));
        }
        let (worst, _) = panels
            .iter()
            .enumerate()
            .filter(|(_, p)| (p.b - p.a).abs() > min_width)
            .fold((usize::MAX, -1.0), |acc, (i, p)| if p.err > acc.1 { (i, p.err) } else { acc });
        if worst == usize::MAX {
            return Err(Error::QuadratureFailure(format!(
                "stagnation on [{a}, {b}]: error {err:.3e} with panels at minimum width"
            )));
        }
        let p = panels.swap_remove(worst);
        let mid = 0.5 * (p.a + p.b);
        panels.push(gk21(f, p.a, mid));
        panels.push(gk21(f, mid, p.b));
    }
}

/// Adaptive Gauss–Kronrod on `[a, b]`.
pub fn adaptive<F: Fn(f64) -> Complex64>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<EvalResult> {
    spec.validate()?;
    let (v, e, n) = adaptive_raw(&f, a, b, spec.abs_tol, spec.rel_tol, spec.max_panels)?;
    EvalResult::new(v, e, Method::Quadrature, n)
}

/// `∫_a^∞ f` through the map `x = a + t/(1 − t)`.
pub fn half_line<F: Fn(f64) -> Complex64>(f: F, a: f64, spec: &QuadratureSpec) -> Result<EvalResult> {
    spec.validate()?;
    let g = |t: f64| {
        let s = 1.0 - t;
        let x = a + t / s;
        let v = f(x);
        if v == c(0.0, 0.0) {
            v
        } else {
            v / (s * s)
        }
    };
    let (v, e, n) = adaptive_raw(&g, 0.0, 1.0, spec.abs_tol, spec.rel_tol, spec.max_panels)?;
    EvalResult::new(v, e, Method::Quadrature, n)
}

/// Wynn ε extrapolation of a sequence of partial sums. Returns the
/// estimate from the last complete even column and the difference to the
/// previous estimate.
pub(crate) fn wynn_epsilon(sums: &[Complex64]) -> (Complex64, f64) {
    let n = sums.len();
    if n < 3 {
        let last = *sums.last().unwrap_or(&c(0.0, 0.0));
        let prev = if n >= 2 { sums[n - 2] } else { last };
        return (last, (last - prev).norm());
    }
    // `col` is column k of the ε table, `prev_col` column k − 1.
    let mut prev_col: Vec<Complex64> = vec![c(0.0, 0.0); n + 1];
    let mut col: Vec<Complex64> = sums.to_vec();
    let mut best = sums[n - 1];
    let mut best_prev = sums[n - 2];
    let mut k = 0;
    while col.len() >= 2 {
        let mut next = Vec::with_capacity(col.len() - 1);
        for i in 0..col.len() - 1 {
            let d = col[i + 1] - col[i];
            let base = if k == 0 { c(0.0, 0.0) } else { prev_col[i + 1] };
            if d.norm() < 1e-300 {
                // breakdown: keep what we have
                return (best, (best - best_prev).norm());
            }
            next.push(base + d.inv());
        }
        k += 1;
        prev_col = col;
        col = next;
        if k % 2 == 0 && !col.is_empty() {
            let m = col.len();
            let cand = col[m - 1];
            if !(cand.re.is_finite() && cand.im.is_finite()) {
                break;
            }
            best_prev = if m >= 2 { col[m - 2] } else { best };
            best = cand;
        }
    }
    (best, (best - best_prev).norm())
}

/// `∫_a^∞ f` for an oscillatory integrand whose sign pattern repeats every
/// `2·half_period`: pieces of length `half_period` are integrated
/// adaptively and the partial sums extrapolated with Wynn's ε algorithm.
pub fn oscillatory<F: Fn(f64) -> Complex64>(
    f: F,
    a: f64,
    half_period: f64,
    spec: &QuadratureSpec,
) -> Result<EvalResult> {
    spec.validate()?;
    if !(half_period > 0.0 && half_period.is_finite()) {
        return Err(invalid("oscillatory split needs a positive half period"));
    }
    let piece_tol = 0.01 * spec.abs_tol;
    let mut sums: Vec<Complex64> = Vec::new();
    let mut total = c(0.0, 0.0);
    let mut piece_err = 0.0;
    let mut work = 0;
    let mut stable = 0;
    let mut last_est = c(f64::NAN, 0.0);
    let max_pieces = spec.max_panels.min(600);
    for k in 0..max_pieces {
        let lo = a + k as f64 * half_period;
        let hi = lo + half_period;
        let (v, e, n) = adaptive_raw(&f, lo, hi, piece_tol, spec.rel_tol * 1e-2, spec.max_panels)?;
        work += n;
        total += v;
        piece_err += e;
        sums.push(total);
        // keep the extrapolation table short; old sums carry no extra information
        let window = if sums.len() > 40 { &sums[sums.len() - 40..] } else { &sums[..] };
        let (est, diff) = wynn_epsilon(window);
        let target = spec.target(est);
        let change = (est - last_est).norm();
        if sums.len() >= 8 && diff < 0.1 * target && change < 0.1 * target {
            stable += 1;
            if stable >= 2 {
                let err = diff.max(change) + piece_err;
                return EvalResult::new(est, err, Method::Quadrature, work);
            }
        } else {
            stable = 0;
        }
        last_est = est;
    }
    Err(Error::QuadratureFailure(format!(
        "oscillatory extrapolation did not settle after {max_pieces} pieces"
    )))
}

/// `∫_0^∞ f(origin + r e^{iω}) e^{iω} dr` over doubling panels.
pub fn ray<F: Fn(Complex64) -> Complex64>(
    f: F,
    origin: Complex64,
    angle: f64,
    spec: &QuadratureSpec,
) -> Result<EvalResult> {
    spec.validate()?;
    let dir = Complex64::from_polar(1.0, angle);
    let g = |r: f64| f(origin + dir * r) * dir;
    let mut total = c(0.0, 0.0);
    let mut err = 0.0;
    let mut work = 0;
    let mut lo = 0.0;
    let mut width = 1.0;
    let mut quiet = 0;
    for _ in 0..80 {
        let hi = lo + width;
        let (v, e, n) = adaptive_raw(&g, lo, hi, 0.01 * spec.abs_tol, 0.01 * spec.rel_tol, spec.max_panels)?;
        total += v;
        err += e;
        work += n;
        let probe = g(hi).norm() * width;
        if v.norm() < 0.01 * spec.target(total) && probe < 0.01 * spec.target(total) {
            quiet += 1;
            if quiet >= 2 {
                return EvalResult::new(total, err + v.norm(), Method::Quadrature, work);
            }
        } else {
            quiet = 0;
        }
        lo = hi;
        if lo >= 8.0 {
            width *= 2.0;
        }
    }
    Err(Error::QuadratureFailure("integrand does not decay along the ray".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn spec(strategy: Strategy) -> QuadratureSpec {
        QuadratureSpec::new(1e-12, 1e-12, strategy)
    }

    #[test]
    fn polynomial_is_exact() {
        let r = integrate(|x| x * x, Domain::Interval(0.0, 1.0), &spec(Strategy::Adaptive)).unwrap();
        assert!((r.value.re - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(r.work, 1);
    }

    #[test]
    fn lorentzian_cosine_transform() {
        // ∫_{−∞}^{∞} cos(p)/(p²+1) dp = π/e
        let s = spec(Strategy::OscillatorySplit { half_period: PI });
        let r = integrate(|p| c((p.re).cos() / (p.re * p.re + 1.0), 0.0), Domain::HalfLine(0.0), &s).unwrap();
        let want = PI * (-1f64).exp();
        assert!((2.0 * r.value.re - want).abs() < 1e-10, "{}", 2.0 * r.value.re);
    }

    #[test]
    fn fresnel_on_rotated_ray() {
        let r = integrate(
            |w| (crate::numerics::I * w * w).exp(),
            Domain::Ray { origin: c(0.0, 0.0), angle: PI / 4.0 },
            &spec(Strategy::RotatedRay),
        )
        .unwrap();
        let want = Complex64::from_polar(PI.sqrt() / 2.0, PI / 4.0);
        assert!((r.value - want).norm() < 1e-12);
    }

    #[test]
    fn half_line_gaussian() {
        let r = integrate(|x| (-x * x).exp(), Domain::HalfLine(0.0), &spec(Strategy::Adaptive)).unwrap();
        assert!((r.value.re - PI.sqrt() / 2.0).abs() < 1e-12);
    }

    #[test]
    fn mismatched_strategy_is_rejected() {
        let e = integrate(|x| x, Domain::Interval(0.0, 1.0), &spec(Strategy::RotatedRay));
        assert!(matches!(e, Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn budget_exhaustion_reports_failure() {
        let mut s = spec(Strategy::Adaptive);
        s.max_panels = 8;
        let e = integrate(|x| c(1.0 / x.re.abs().sqrt(), 0.0), Domain::Interval(-1.0, 1.0), &s);
        assert!(matches!(e, Err(Error::QuadratureFailure(_))));
    }

    #[test]
    fn wynn_sums_alternating_harmonic() {
        let mut s = 0.0;
        let sums: Vec<Complex64> = (1..=20)
            .map(|k| {
                s += if k % 2 == 1 { 1.0 } else { -1.0 } / k as f64;
                c(s, 0.0)
            })
            .collect();
        let (est, _) = wynn_epsilon(&sums);
        assert!((est.re - 2f64.ln()).abs() < 1e-12);
    }
}
