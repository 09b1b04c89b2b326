//! |ψ(x, t)|² for the delta well with a fractional time derivative.

use fracwave::delta::DeltaConfig;
use fracwave::solution::{full_solution, SpaceConfig};
use fracwave::time::TimeConfig;
use num_complex::Complex64;

fn main() -> fracwave::error::Result<()> {
    let space = SpaceConfig::Delta(DeltaConfig::new(1.0, 0.5, 1.5, 0.0, -1.0, 1.0)?);
    let time = TimeConfig::new(0.8, 1.0, Complex64::new(space.energy(), 0.0), Complex64::new(1.0, 0.0))?;
    println!("{:>6} {:>14} {:>14} {:>14}", "x", "t=0", "t=1", "t=4");
    for i in 0..=8 {
        let x = -2.0 + 0.5 * i as f64;
        print!("{x:>6.2}");
        for t in [0.0, 1.0, 4.0] {
            print!(" {:>14.8}", full_solution(&time, &space, x, t)?.value.norm_sqr());
        }
        println!();
    }
    Ok(())
}
