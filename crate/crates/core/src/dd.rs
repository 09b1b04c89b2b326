//! Double-double arithmetic (about 32 significant digits) for the residue
//! series of the Fox H-function when its terms cancel heavily.
//!
//! Only what the series needs is provided: field operations, `exp`, `ln`,
//! `sin`/`cos`, and `ln|Γ|`/`ψ` on the real line.

use std::cmp::Ordering;
use std::sync::OnceLock;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

pub(crate) const PI: Dd = Dd { hi: 3.141_592_653_589_793, lo: 1.224_646_799_147_353_2e-16 };
const FRAC_PI_2: Dd = Dd { hi: 1.570_796_326_794_896_6, lo: 6.123_233_995_736_766e-17 };
const LN2: Dd = Dd { hi: 0.693_147_180_559_945_3, lo: 2.319_046_813_846_299_6e-17 };
const HALF_LN_2PI: Dd = Dd { hi: 0.918_938_533_204_672_8, lo: -3.878_294_158_067_241_4e-17 };

/// `(numerator, denominator)` of `B_{2k}` for k = 1..=13.
const BERNOULLI_EVEN: [(f64, f64); 13] = [
    (1.0, 6.0),
    (-1.0, 30.0),
    (1.0, 42.0),
    (-1.0, 30.0),
    (5.0, 66.0),
    (-691.0, 2730.0),
    (7.0, 6.0),
    (-3617.0, 510.0),
    (43867.0, 798.0),
    (-174611.0, 330.0),
    (854513.0, 138.0),
    (-236364091.0, 2730.0),
    (8553103.0, 6.0),
];

const ASYMPTOTIC_SHIFT: f64 = 30.0;

/// `B_{2k}/(2k(2k−1))` and `B_{2k}/(2k)`, the Stirling coefficients of
/// `ln Γ` and `ψ`.
fn stirling_coefficients() -> &'static [(Dd, Dd); 13] {
    static TABLE: OnceLock<[(Dd, Dd); 13]> = OnceLock::new();
    TABLE.get_or_init(|| {
        std::array::from_fn(|i| {
            let (num, den) = BERNOULLI_EVEN[i];
            let k = (i + 1) as f64;
            let b = Dd::from_f64(num) / Dd::from_f64(den);
            (b / Dd::from_f64(2.0 * k * (2.0 * k - 1.0)), b / Dd::from_f64(2.0 * k))
        })
    })
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Dd {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    pub fn div_f64(self, b: f64) -> Dd {
        let q1 = self.hi / b;
        let (p, e) = two_prod(q1, b);
        let (s, t) = two_sum(self.hi, -p);
        let q2 = (s + (t - e + self.lo)) / b;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }
    }

    pub fn mul_f64(self, b: f64) -> Dd {
        let (p, e) = two_prod(self.hi, b);
        let (hi, lo) = quick_two_sum(p, e + self.lo * b);
        Dd { hi, lo }
    }

    pub fn round(self) -> Dd {
        let hi = self.hi.round();
        if hi == self.hi {
            let lo = self.lo.round();
            let (h, l) = quick_two_sum(hi, lo);
            Dd { hi: h, lo: l }
        } else if (hi - self.hi).abs() == 0.5 && self.lo != 0.0 {
            // tie broken by the low word
            let adj = if self.lo < 0.0 && hi > self.hi { hi - 1.0 } else if self.lo > 0.0 && hi < self.hi { hi + 1.0 } else { hi };
            Dd::from_f64(adj)
        } else {
            Dd::from_f64(hi)
        }
    }

    pub fn exp(self) -> Dd {
        if self.hi > 709.0 {
            return Dd::from_f64(f64::INFINITY);
        }
        if self.hi < -745.0 {
            return Dd::ZERO;
        }
        let k = (self.hi / LN2.hi).round();
        let r = self - LN2.mul_f64(k);
        // e^r = (e^{r/512})^512
        let r = r.mul_f64(1.0 / 512.0);
        let mut term = r;
        let mut em1 = r;
        for n in 2..=12 {
            term = (term * r).div_f64(n as f64);
            em1 = em1 + term;
            if term.hi.abs() < 1e-36 {
                break;
            }
        }
        // (1 + t)^2 - 1 = 2t + t^2
        for _ in 0..9 {
            em1 = em1.mul_f64(2.0) + em1 * em1;
        }
        let v = em1 + Dd::ONE;
        let scale = 2f64.powi(k as i32);
        Dd { hi: v.hi * scale, lo: v.lo * scale }
    }

    pub fn ln(self) -> Dd {
        debug_assert!(self.hi > 0.0);
        let mut y = Dd::from_f64(self.hi.ln());
        for _ in 0..2 {
            y = y + self * (-y).exp() - Dd::ONE;
        }
        y
    }

    /// `(sin x, cos x)`.
    pub fn sin_cos(self) -> (Dd, Dd) {
        let k = (self / FRAC_PI_2).round();
        let r = self - FRAC_PI_2 * k;
        let r2 = r * r;
        let mut s = r;
        let mut term = r;
        let mut cc = Dd::ONE;
        let mut cterm = Dd::ONE;
        for n in 1..=20 {
            let n = n as f64;
            term = -(term * r2) / Dd::from_f64((2.0 * n) * (2.0 * n + 1.0));
            cterm = -(cterm * r2) / Dd::from_f64((2.0 * n - 1.0) * (2.0 * n));
            s = s + term;
            cc = cc + cterm;
            if term.hi.abs() < 1e-36 && cterm.hi.abs() < 1e-36 {
                break;
            }
        }
        let q = (k.hi.rem_euclid(4.0)) as i32;
        match q {
            0 => (s, cc),
            1 => (cc, -s),
            2 => (-s, -cc),
            _ => (-cc, s),
        }
    }

    /// `sin(πx)` with exact reduction of `x` modulo 2.
    pub fn sin_pi(self) -> Dd {
        let n = (self.mul_f64(0.5)).round().mul_f64(2.0);
        let r = self - n;
        (PI * r).sin_cos().0
    }

    /// `(ln|Γ(x)|, sign Γ(x))` for real `x` away from the poles.
    pub fn ln_gamma(self) -> (Dd, f64) {
        if self.hi < 0.5 {
            // Γ(x)Γ(1−x) = π / sin(πx)
            let s = self.sin_pi();
            let (lg, _) = (Dd::ONE - self).ln_gamma();
            let v = PI.ln() - s.abs().ln() - lg;
            return (v, s.hi.signum());
        }
        let mut w = self;
        let mut prod = Dd::ONE;
        while w.hi < ASYMPTOTIC_SHIFT {
            prod = prod * w;
            w = w + Dd::ONE;
        }
        let inv = Dd::ONE / w;
        let inv2 = inv * inv;
        let mut pow = inv;
        let mut corr = Dd::ZERO;
        for (coef, _) in stirling_coefficients() {
            corr = corr + *coef * pow;
            pow = pow * inv2;
        }
        let lw = w.ln();
        let v = (w - Dd::from_f64(0.5)) * lw - w + HALF_LN_2PI + corr - prod.ln();
        (v, 1.0)
    }

    /// Digamma on the real line away from the poles.
    pub fn digamma(self) -> Dd {
        if self.hi < 0.5 {
            // ψ(x) = ψ(1−x) − π cot(πx)
            let n = (self.mul_f64(0.5)).round().mul_f64(2.0);
            let (s, co) = (PI * (self - n)).sin_cos();
            return (Dd::ONE - self).digamma() - PI * co / s;
        }
        let mut w = self;
        let mut shift = Dd::ZERO;
        while w.hi < ASYMPTOTIC_SHIFT {
            shift = shift + Dd::ONE / w;
            w = w + Dd::ONE;
        }
        let inv = Dd::ONE / w;
        let inv2 = inv * inv;
        let mut pow = inv2;
        let mut series = Dd::ZERO;
        for (_, coef) in stirling_coefficients() {
            series = series + *coef * pow;
            pow = pow * inv2;
        }
        w.ln() - inv.mul_f64(0.5) - series - shift
    }

    /// `ln(n!)`.
    pub fn ln_factorial(n: u64) -> Dd {
        Dd::from_f64(n as f64 + 1.0).ln_gamma().0
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, b: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, b: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo } + Dd::from_f64(q3)
    }
}

impl PartialOrd for Dd {
    fn partial_cmp(&self, other: &Dd) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&other.lo),
            o => o,
        }
    }
}

/// Complex number with double-double parts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct CDd {
    pub re: Dd,
    pub im: Dd,
}

impl CDd {
    pub const ZERO: CDd = CDd { re: Dd::ZERO, im: Dd::ZERO };

    pub fn new(re: Dd, im: Dd) -> CDd {
        CDd { re, im }
    }

    pub fn scale(self, k: Dd) -> CDd {
        CDd { re: self.re * k, im: self.im * k }
    }

    pub fn to_c64(self) -> num_complex::Complex64 {
        num_complex::Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn norm_f64(self) -> f64 {
        self.re.to_f64().hypot(self.im.to_f64())
    }
}

impl Add for CDd {
    type Output = CDd;
    fn add(self, b: CDd) -> CDd {
        CDd { re: self.re + b.re, im: self.im + b.im }
    }
}

impl Mul for CDd {
    type Output = CDd;
    fn mul(self, b: CDd) -> CDd {
        CDd { re: self.re * b.re - self.im * b.im, im: self.re * b.im + self.im * b.re }
    }
}
