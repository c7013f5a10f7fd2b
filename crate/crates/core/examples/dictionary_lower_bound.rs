//! Lower bounds for `‖μ‖ₚ*` from the Gaussian test dictionary, next to the
//! duality value.

use std::f64::consts::PI;

use measure_lp::norms::{star_norm, star_norm_lower, Dictionary};
use measure_lp::{Atom, ExponentPair, GridFunction, GridSpec, Measure};

fn main() -> measure_lp::Result<()> {
    let bump = GridFunction::sample_real(GridSpec::linspace(-4.0, 4.0, 1025)?, |x| (1.0 + x) * (-PI * x * x).exp());
    let cases = [
        ("δ₀", Measure::delta(0.0), 1.0),
        (
            "δ₀ + i δ₁/2",
            Measure::atoms(vec![Atom::real(0.0, 1.0), Atom::new(1.0, num_complex::Complex64::new(0.0, 0.5))])?,
            1.0,
        ),
        ("(1 + x) e^{-πx²} dx", Measure::density(bump.clone()), 1.5),
        ("(1 + x) e^{-πx²} dx", Measure::density(bump), 2.0),
    ];
    for (name, mu, p) in cases {
        let p = ExponentPair::new(p)?;
        let dict = Dictionary::gaussian(p);
        let lower = star_norm_lower(&mu, p, &dict);
        let upper = star_norm(&mu, p)?;
        println!(
            "{name:<22} p={:<4} lower {:.6} (single member {:.6}, {} evaluations)  duality {:.6}",
            p.p(),
            lower.value,
            lower.single,
            lower.evaluations,
            upper.value
        );
        if let Some(g) = &lower.best {
            println!("{:27}best member {g:?}", "");
        }
    }
    Ok(())
}
