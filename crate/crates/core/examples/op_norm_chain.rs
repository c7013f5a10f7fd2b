//! `‖g‖_{Oₚ}` grows with `p`; on each dyadic block the `p₂` star norm of a
//! bump's derivative is controlled by its `p₁` star norm.

use measure_lp::bv::BVFunction;
use measure_lp::inequalities::{check_vpstar_embedding, random_function};
use measure_lp::norms::op_norm;
use measure_lp::{ExponentPair, LogGrid};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> measure_lp::Result<()> {
    let grid = LogGrid::new(0.05, 5.0, 60)?;
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for k in 0..3 {
        let g = random_function(&mut rng);
        let norms: Vec<String> = [1.2, 2.0, 3.5, f64::INFINITY]
            .iter()
            .map(|&p| Ok(format!("O_{p} = {:.6}", op_norm(&g, ExponentPair::new(p)?, &grid)?)))
            .collect::<measure_lp::Result<_>>()?;
        println!("g{k}: {}", norms.join(" ≤ "));
    }
    let bump = BVFunction::gaussian_bump(2.0, 0.5, 2001)?;
    let r = check_vpstar_embedding(&bump, ExponentPair::new(1.8)?, ExponentPair::new(1.4)?, &LogGrid::new(0.1, 10.0, 24)?)?;
    let held = r.blocks.iter().filter(|b| b.pass).count();
    println!(
        "bump: {held}/{} blocks within C x^(1/q); measured V*-constant {:.4}",
        r.blocks.len(),
        r.aggregate.constant_used
    );
    println!("      ‖f‖_V1.8* = {:.6}, ‖f‖_V1.4* = {:.6}", r.aggregate.extra["vp1"], r.aggregate.extra["vp2"]);
    Ok(())
}
