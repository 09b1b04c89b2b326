//! E_β(z) along a few rays, next to the H-function representation.

use fracwave::mittag_leffler::{ml_as_foxh, ml_eval, MLRequest};
use num_complex::Complex64;

fn main() -> fracwave::error::Result<()> {
    for beta in [0.3, 0.5, 0.8, 1.0] {
        for z in [Complex64::new(-4.0, 0.0), Complex64::new(0.0, 3.0), Complex64::new(2.0, 1.0)] {
            let r = ml_eval(&MLRequest::new(beta, z, 1e-12)?)?;
            let h = ml_as_foxh(beta, z)?;
            println!(
                "beta={beta:<4} z={z:<8}  E={:.15e}  via H: {:.3e} apart  [{} err~{:.1e}]",
                r.value,
                (r.value - h.value).norm(),
                r.method.as_str(),
                r.err_estimate
            );
        }
    }
    Ok(())
}
