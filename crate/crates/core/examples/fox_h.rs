//! The H-function of x/(1 + x) by residue series and by contour, plus the
//! three transformation identities.

use fracwave::fox_h::{eval, eval_contour, eval_series, invert_argument, scale_argument_power, FoxHParams, GammaPair};
use num_complex::Complex64;

fn main() -> fracwave::error::Result<()> {
    // H^{1,1}_{1,1}(z | (1, 1); (1, 1)) = z / (1 + z)
    let params = FoxHParams::new(1, 1, vec![GammaPair::new(1.0, 1.0)], vec![GammaPair::new(1.0, 1.0)])?;
    for z in [Complex64::new(0.4, 0.2), Complex64::new(3.0, -1.0)] {
        let exact = z / (1.0 + z);
        let s = eval_series(&params, z, 1e-13)?;
        let q = eval_contour(&params, z, 1e-13)?;
        println!("z={z}: series err {:.1e}, contour err {:.1e}", (s.value - exact).norm(), (q.value - exact).norm());
    }

    let z = Complex64::new(0.7, 0.5);
    let base = eval(&params, z, 1e-13)?.value;
    let inverted = eval(&invert_argument(&params), 1.0 / z, 1e-13)?.value;
    let k = 1.5;
    let scaled = k * eval(&scale_argument_power(&params, k)?, z.powf(k), 1e-13)?.value;
    println!("H(z)={base:.15}\nH'(1/z)={inverted:.15}\nk H''(z^k)={scaled:.15}");
    Ok(())
}
