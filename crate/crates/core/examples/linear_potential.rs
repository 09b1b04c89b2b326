//! Linear potential: H-function form, power series and quadrature agree;
//! α = 2 reduces to an Airy function.

use fracwave::linear::{linear_classical_airy, linear_closed_form, linear_quadrature, linear_series, LinearConfig};
use num_complex::Complex64;

fn main() -> fracwave::error::Result<()> {
    let cfg = LinearConfig::new(1.0, 0.5, 1.6, 0.2, 0.5, 1.0)?;
    for x in [-1.0, 0.0, 1.0, 2.5] {
        let h = linear_closed_form(&cfg, x)?.value;
        let s = linear_series(&cfg, x)?.value;
        let q = linear_quadrature(&cfg, x)?.value;
        println!("x={x:<4} phi={h:.12}  series {:.1e}  quadrature {:.1e}", (h - s).norm(), (h - q).norm());
    }

    // α = 2: the H form is a multiple of Ai, so the ratio is flat in x
    let airy = LinearConfig::new(1.0, 0.5, 2.0, 0.0, 0.5, 1.0)?;
    for x in [-3.0, -1.0, 0.0, 1.0, 2.0] {
        let h = linear_closed_form(&airy, x)?.value;
        let a = linear_classical_airy(1.0, 1.0, 0.5, 1.0, Complex64::new(1.0, 0.0), x)?;
        println!("alpha=2 x={x:<4} H/Airy = {:.12}", (h / a).re);
    }
    Ok(())
}
