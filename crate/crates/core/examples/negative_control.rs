//! `χ_{[0,1)}`: its derivative `-δ₁` has infinite `Vₚ*` norm for `p > 1`, and
//! the partial `L¹` integrals of `f̂₀(x) = sin(2πx)/(2πx)` grow like `log x`.

use measure_lp::bv::{remainder_l1, BVFunction};
use measure_lp::norms::vp_star_norm;
use measure_lp::{ExponentPair, LogGrid};

fn main() -> measure_lp::Result<()> {
    let f = BVFunction::indicator(1.0)?;
    let grid = LogGrid::new(1e-3, 1e3, 200)?;
    let vp = vp_star_norm(&f, ExponentPair::new(1.5)?, &grid)?;
    println!(
        "‖f‖_V1.5* = {} (divergent: {}, first block at x = {:?})",
        vp.norm.value, vp.norm.divergence_flag, vp.divergent_block
    );
    let l1 = remainder_l1(&f, 0.0, &grid)?;
    for x in [1.0, 10.0, 100.0, 1000.0] {
        let partial = l1.partials.iter().take_while(|(t, _)| *t <= x * (1.0 + 1e-12)).last().map_or(0.0, |p| p.1);
        println!("∫_(1e-3)^{x:<6} |f̂₀| = {partial:.5}");
    }
    Ok(())
}
