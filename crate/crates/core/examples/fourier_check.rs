//! Samples a wavefunction on a grid and checks the discrete Fourier pair:
//! round trip and Plancherel.

use fracwave::delta::{delta_closed_form, DeltaConfig};
use fracwave::quadrature::{fourier_pair_check, GridSpec};

fn main() -> fracwave::error::Result<()> {
    let cfg = DeltaConfig::new(1.0, 0.5, 1.8, 0.0, -1.0, 1.0)?;
    let grid = GridSpec::new(-40.0, 40.0, 1024)?;
    let samples = grid.points().iter().map(|&x| delta_closed_form(&cfg, x).map(|r| r.value)).collect::<Result<Vec<_>, _>>()?;
    let check = fourier_pair_check(&samples, &grid, cfg.hbar)?;
    println!("round trip error  {:.2e}", check.round_trip_error);
    println!("Plancherel ratio  {:.12}", check.plancherel_ratio);
    println!("edge / peak       {:.2e}", check.edge_ratio);
    Ok(())
}
