//! The Cantor measure: `μ̂(y) = e^{-πiy} ∏ cos(2πy/3^k)`, which does not
//! tend to zero along `y = 3^n`.

use measure_lp::measure::cantor_product;
use measure_lp::transforms::fourier_stieltjes;
use measure_lp::{GridSpec, Measure};

fn main() -> measure_lp::Result<()> {
    let mu = Measure::cantor();
    for n in 0..8 {
        let y = 3f64.powi(n);
        let (z, bound) = cantor_product(y, 40);
        println!("|μ̂(3^{n})| = {:.12}  (truncation bound {bound:.1e})", z.norm());
    }
    let t = fourier_stieltjes(&mu, GridSpec::linspace(0.0, 10.0, 11)?)?;
    println!("\nmethod {:?}, certified error {:.1e}", t.method, t.certified_error);
    print!("{}", t.to_csv());
    println!("\ntotal variation {:?}", mu.total_variation()?);
    Ok(())
}
