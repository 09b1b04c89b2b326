//! Parameter transformations that leave the H-function invariant up to a
//! change of argument or a power prefactor.

use num_complex::Complex64;

use super::{FoxHParams, GammaPair};
use crate::error::{invalid, Result};

/// Parameters `H'` with `H(z) = k · H'(z^k)`: every weight multiplied by `k`.
/// With principal branches this needs `k |arg z| < π`, so that `z^k` does
/// not wrap across the cut.
pub fn scale_argument_power(params: &FoxHParams, k: f64) -> Result<FoxHParams> {
    if !(k > 0.0 && k.is_finite()) {
        return Err(invalid(format!("argument power must be positive, got {k}")));
    }
    let scale = |v: &[GammaPair]| v.iter().map(|g| GammaPair::complex(g.shift, g.weight * k)).collect();
    FoxHParams::new(params.m, params.n, scale(&params.upper), scale(&params.lower))
}

/// Parameters `H'` with `H(z) = H'(1/z)`: `(m, n, p, q) → (n, m, q, p)`,
/// `(a, A) → (1 − b, B)` and `(b, B) → (1 − a, A)`.
pub fn invert_argument(params: &FoxHParams) -> FoxHParams {
    let reflect = |v: &[GammaPair]| v.iter().map(|g| GammaPair::complex(1.0 - g.shift, g.weight)).collect();
    FoxHParams { m: params.n, n: params.m, upper: reflect(&params.lower), lower: reflect(&params.upper) }
}

/// Parameters `H'` with `z^σ H(z) = H'(z)`: `a → a + σA`, `b → b + σB`.
pub fn shift_by_power(params: &FoxHParams, sigma_shift: Complex64) -> FoxHParams {
    let shift = |v: &[GammaPair]| {
        v.iter().map(|g| GammaPair::complex(g.shift + sigma_shift * g.weight, g.weight)).collect()
    };
    FoxHParams { m: params.m, n: params.n, upper: shift(&params.upper), lower: shift(&params.lower) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fox_h::{eval, eval_series};
    use crate::numerics::c;

    fn rational() -> FoxHParams {
        FoxHParams::new(1, 1, vec![GammaPair::new(0.0, 1.0)], vec![GammaPair::new(0.0, 1.0)]).unwrap()
    }

    fn expo() -> FoxHParams {
        FoxHParams::new(1, 0, vec![], vec![GammaPair::new(0.0, 1.0)]).unwrap()
    }

    #[test]
    fn scaling_examples() {
        assert_eq!(scale_argument_power(&rational(), 1.0).unwrap(), rational());
        let p = scale_argument_power(&rational(), 2.0).unwrap();
        assert_eq!(p.upper()[0].weight, 2.0);
        let v = eval(&p, c(1.0, 0.0), 1e-12).unwrap().value;
        assert!((2.0 * v - 0.5).norm() < 1e-10);
        let p = scale_argument_power(&expo(), 0.5).unwrap();
        let v = eval_series(&p, c(2.0, 0.0), 1e-13).unwrap().value;
        assert!((0.5 * v.re - (-4f64).exp()).abs() < 1e-13);
        assert!(scale_argument_power(&rational(), 0.0).is_err());
    }

    #[test]
    fn inversion_examples() {
        assert_eq!(invert_argument(&invert_argument(&rational())), rational());
        let inv = invert_argument(&rational());
        assert_eq!(inv.upper()[0].shift, c(1.0, 0.0));
        let v = eval(&inv, c(0.5, 0.0), 1e-12).unwrap().value;
        assert!((v.re - 1.0 / 3.0).abs() < 1e-11);
        let inv = invert_argument(&expo());
        assert_eq!((inv.m(), inv.n(), inv.p(), inv.q()), (0, 1, 1, 0));
        let v = eval_series(&inv, c(1.0, 0.0), 1e-13).unwrap().value;
        assert!((v.re - (-1f64).exp()).abs() < 1e-13);
    }

    #[test]
    fn shift_examples() {
        assert_eq!(shift_by_power(&rational(), c(0.0, 0.0)), rational());
        let v = eval(&shift_by_power(&rational(), c(1.0, 0.0)), c(1.0, 0.0), 1e-12).unwrap().value;
        assert!((v.re - 0.5).abs() < 1e-10);
        let v = eval_series(&shift_by_power(&expo(), c(2.0, 0.0)), c(1.5, 0.0), 1e-13).unwrap().value;
        assert!((v.re - 2.25 * (-1.5f64).exp()).abs() < 1e-12);
    }
}
