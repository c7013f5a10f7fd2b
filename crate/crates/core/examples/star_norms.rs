//! `‖μ‖ₚ* = ‖μ̂‖_{p'}` for a few measures, with the window record of the
//! estimator.

use std::f64::consts::PI;

use measure_lp::norms::star_norm;
use measure_lp::{Atom, ExponentPair, GridFunction, GridSpec, Measure, SetOfIntervals};

fn show(name: &str, mu: &Measure, p: f64) -> measure_lp::Result<()> {
    let r = star_norm(mu, ExponentPair::new(p)?)?;
    let last = r.windows.last().map_or(0.0, |w| w.half_width);
    println!("{name:<28} p={p:<4} ‖μ‖* = {:<14.9} divergent={} (T = {last:.1})", r.value, r.divergence_flag);
    for c in &r.caveats {
        println!("{:30}{c}", "");
    }
    Ok(())
}

fn main() -> measure_lp::Result<()> {
    let delta = Measure::delta(0.0);
    show("δ₀", &delta, 1.0)?;
    // |δ̂₀| = 1 is not in any L^{p'} with p' < ∞
    show("δ₀", &delta, 1.5)?;

    let pair = Measure::atoms(vec![Atom::real(0.0, 0.5), Atom::real(1.0, -0.5)])?;
    show("(δ₀ - δ₁)/2", &pair, 1.0)?;

    let g = GridFunction::sample_real(GridSpec::linspace(-8.0, 8.0, 2049)?, |x| (-PI * x * x).exp());
    let gauss = Measure::density(g);
    for p in [1.0, 1.25, 1.5, 2.0, 4.0] {
        // ‖e^{-πy²}‖_{p'} = p'^{-1/(2p')}
        show("e^{-πx²} dx", &gauss, p)?;
    }
    show("e^{-πx²} dx on [0, 1)", &gauss.restrict(&SetOfIntervals::interval(0.0, 1.0)?), 2.0)?;
    Ok(())
}
