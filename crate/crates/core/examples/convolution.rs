//! Convolving a sampled function with an atomic measure translates it;
//! `f μ` weights the measure by `f`.

use std::f64::consts::PI;

use measure_lp::{Atom, GridFunction, GridSpec, Measure};

fn main() -> measure_lp::Result<()> {
    let f = GridFunction::sample_real(GridSpec::linspace(-6.0, 6.0, 1201)?, |x| (-PI * x * x).exp());
    let mu = Measure::atoms(vec![Atom::real(-2.0, 1.0), Atom::real(1.5, 0.5)])?;
    let conv = mu.convolve(&f)?;
    for x in [-2.0, -1.0, 0.0, 1.5, 3.0] {
        let direct = (-PI * (x + 2.0f64).powi(2)).exp() + 0.5 * (-PI * (x - 1.5f64).powi(2)).exp();
        println!("(f * μ)({x:>4}) = {:.12}   f(x + 2) + f(x - 1.5)/2 = {direct:.12}", conv.eval_or_zero(x).re);
    }
    let weighted = mu.scale_product(&f)?;
    println!("f μ = {:?}", weighted.kind());
    Ok(())
}
