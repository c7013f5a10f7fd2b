//! `‖χ_E‖_{L̂ᵖ} ≤ |E|^{1/p}`: an equality at `p = 1, 2`, a strict
//! inequality in between, false beyond 2.

use measure_lp::inequalities::check_set_bound;
use measure_lp::{ExponentPair, SetOfIntervals};

fn main() -> measure_lp::Result<()> {
    let sets = [
        SetOfIntervals::interval(0.0, 1.0)?,
        SetOfIntervals::from_intervals(vec![(-2.0, -1.5), (0.0, 0.25), (3.0, 4.0)])?,
    ];
    for e in &sets {
        println!("E = {:?}, |E| = {}", e.intervals(), e.measure());
        for p in [1.0, 1.5, 2.0, 3.0] {
            let r = check_set_bound(e, ExponentPair::new(p)?)?;
            println!("  p={p:<4} ‖χ_E‖ = {:.9}  |E|^(1/p) = {:.9}  {:?}", r.lhs, r.rhs, r.status);
        }
    }
    Ok(())
}
