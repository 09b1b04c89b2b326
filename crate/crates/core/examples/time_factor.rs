//! |f(t)| for f(t) = f0 E_β((-i/ħ)^β E t^β): constant for β = 1, not for
//! β < 1.

use fracwave::time::{time_factor, TimeConfig};
use num_complex::Complex64;

fn main() -> fracwave::error::Result<()> {
    let one = Complex64::new(1.0, 0.0);
    for beta in [1.0, 0.9, 0.6] {
        let cfg = TimeConfig::new(beta, 1.0, Complex64::new(1.0, 0.0), one)?;
        print!("beta={beta}:");
        for t in [0.0, 1.0, 2.0, 5.0, 10.0] {
            print!("  |f({t})|={:.6}", time_factor(&cfg, t)?.value.norm());
        }
        println!();
    }
    Ok(())
}
