//! Bound-state profile in a delta well for several α, by closed form and
//! by direct quadrature.

use fracwave::delta::{delta_closed_form, delta_quadrature, DeltaConfig};

fn main() -> fracwave::error::Result<()> {
    for (alpha, theta) in [(2.0, 0.0), (1.5, 0.0), (1.5, 0.3), (1.2, -0.1)] {
        let cfg = DeltaConfig::new(1.0, 0.5, alpha, theta, -1.0, 1.0)?;
        println!("alpha={alpha} theta={theta}");
        for x in [-2.0, -0.5, 0.5, 2.0] {
            let h = delta_closed_form(&cfg, x)?;
            let q = delta_quadrature(&cfg, x)?;
            println!("  x={x:<5} phi={:.12}  quadrature differs by {:.1e}", h.value, (h.value - q.value).norm());
        }
    }
    Ok(())
}
