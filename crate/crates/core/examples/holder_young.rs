//! Hölder `|∫ f dμ| ≤ ‖f‖_{L̂^q} ‖μ‖ₚ*` and Young
//! `‖f * μ‖_{L̂^r} ≤ ‖f‖_{L̂^q} ‖μ‖ₚ*` for random inputs.

use measure_lp::inequalities::{check_holder, check_young, random_density, random_function, random_measure, MeasureFamily};
use measure_lp::ExponentPair;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> measure_lp::Result<()> {
    let ex = ExponentPair::new;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (p, q) in [(1.5, 3.0), (2.0, 2.0), (4.0, 4.0)] {
        let mu = random_density(&mut rng);
        let f = random_function(&mut rng);
        let r = check_holder(&mu, &f, ex(p)?, ex(q)?)?;
        println!("hölder p={p} q={q}: {:.6} ≤ {:.6} ({:?})", r.lhs, r.rhs, r.status);
    }
    for family in MeasureFamily::ALL {
        let mu = random_measure(&mut rng, family);
        let f = random_function(&mut rng);
        let r = check_young(&mu, &f, ExponentPair::one(), ex(1.5)?)?;
        println!("young {family:?} p=1 q=1.5: {:.6} ≤ {:.6} ({:?})", r.lhs, r.rhs, r.status);
    }
    Ok(())
}
