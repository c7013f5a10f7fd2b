//! `e^{-πx²}` is its own Fourier transform.
//!
//! ```bash
//! cargo run --example gaussian_fixed_point
//! ```

use std::f64::consts::PI;

use measure_lp::transforms::fourier_function;
use measure_lp::{GridFunction, GridSpec};

fn main() -> measure_lp::Result<()> {
    let g = GridFunction::sample_real(GridSpec::linspace(-8.0, 8.0, 4096)?, |x| (-PI * x * x).exp());
    let hat = fourier_function(&g, GridSpec::linspace(-4.0, 4.0, 9)?);
    println!("{:>6} {:>22} {:>22}", "y", "ĝ(y)", "g(y)");
    for k in 0..hat.grid.len() {
        let y = hat.grid.x(k);
        println!("{y:>6.2} {:>22.15e} {:>22.15e}", hat.grid.values[k].re, (-PI * y * y).exp());
    }
    println!("method {:?}, certified error {:.1e}", hat.method, hat.certified_error);
    Ok(())
}
