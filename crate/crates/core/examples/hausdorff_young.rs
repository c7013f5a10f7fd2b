//! `‖μ̂‖_{p'} ≤ ‖μ‖ₚ*` on random measures of every family, with the
//! dictionary lower bound squeezed underneath.

use measure_lp::inequalities::{check_hausdorff_young, random_measure, MeasureFamily};
use measure_lp::ExponentPair;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> measure_lp::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for family in MeasureFamily::ALL {
        let mu = random_measure(&mut rng, family);
        for p in [1.0, 1.5, 2.0] {
            let r = check_hausdorff_young(&mu, ExponentPair::new(p)?)?;
            let lower = r.extra.get("dictionary_lower").copied().unwrap_or(f64::NAN);
            println!(
                "{:<12} p={p:<4} {:?}: sampled {:.8} ≤ duality {:.8}, dictionary {:.8}",
                format!("{family:?}"),
                r.status,
                r.lhs,
                r.rhs,
                lower
            );
        }
    }
    Ok(())
}
