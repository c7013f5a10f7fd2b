//! `f̂_γ(x) = ∫₀^∞ f(t) cos 2π(xt - γ) dt` for a BV function, split into
//! `f(1/x) sin(2πγ)/(2πx)` and a remainder `Γ`; then `‖Γ‖_{L¹}` against
//! `‖f‖_{Vₚ*}`.

use measure_lp::bv::{check_embst, leading_term, remainder, theorem_main_report, BVFunction};
use measure_lp::{ExponentPair, GridSpec, LogGrid};

fn main() -> measure_lp::Result<()> {
    let f = BVFunction::gaussian_bump(1.0, 0.8, 2001)?;
    let gamma = 0.25;
    let xs = GridSpec::linspace(0.5, 3.0, 6)?;
    let gam = remainder(&f, gamma, xs)?;
    for k in 0..gam.len() {
        let x = gam.x(k);
        println!("x = {x:.2}: leading {:+.6e}, remainder {:+.6e}", leading_term(&f, gamma, x), gam.values[k].re);
    }
    let grid = LogGrid::new(1e-2, 1e2, 60)?;
    let p = ExponentPair::new(1.5)?;
    let rep = theorem_main_report(&f, p, gamma, &grid)?;
    println!(
        "\n‖Γ‖₁ = {:.6}, ‖f‖_Vp* = {:.6}, ratio {:.4} ({:?}), route gap {:.1e}",
        rep.remainder_l1, rep.vp_star, rep.ratio, rep.status, rep.route_gap
    );
    let embst = check_embst(&f, p, &grid)?;
    println!("∫|df| = {:.6} = {:.4} · ‖f‖_Vp*", embst.lhs, embst.constant_used);
    Ok(())
}
