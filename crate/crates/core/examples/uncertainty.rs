//! Time-frequency limiting on `ℤ_N`: `σ = ‖P_E F P_F‖ ≤ √(|E||F|/N)`, and
//! the Dirac comb that makes `σ = 1` when `|E||F| = N`.

use measure_lp::uncertainty::{build_limiting_operator, dft, measure_annihilation_check, no_double_support, IndexSet};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> measure_lp::Result<()> {
    let n = 256;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (ke, kf) in [(4, 8), (8, 8), (16, 4)] {
        let e = IndexSet::random(&mut rng, n, ke);
        let f = IndexSet::random(&mut rng, n, kf);
        let op = build_limiting_operator(n, &e, &f)?;
        let w: Vec<Complex64> = (0..n)
            .map(|i| {
                if f.contains(i) {
                    Complex64::new(rng.gen_range(-1.0..1.0), 0.0)
                } else {
                    Complex64::default()
                }
            })
            .collect();
        let ann = measure_annihilation_check(&w, &e, &f)?;
        println!(
            "|E|={ke:<2} |F|={kf:<2} σ = {:.6} ≤ {:.6};  ‖w‖ ≤ C ‖w|_(Eᶜ)‖ with C = {:.4}: {:?}",
            op.sigma(),
            op.envelope(),
            ann.constant_used,
            ann.status
        );
    }
    let comb = IndexSet::multiples(64, 8)?;
    let rep = no_double_support(64, &comb, &comb)?;
    // a comb is its own transform up to scaling, so the pair does not annihilate
    println!(
        "\nN=64, E=F=8ℤ: σ = {:.12}, annihilating: {}",
        rep.sigma,
        rep.status == measure_lp::report::Status::Pass
    );
    if let Some(w) = &rep.witness {
        let on: Vec<usize> = (0..64).filter(|&i| w[i].norm() > 1e-9).collect();
        let spectrum: Vec<usize> = dft(w).iter().enumerate().filter(|(_, z)| z.norm() > 1e-9).map(|(k, _)| k).collect();
        println!("witness support {on:?}\nspectrum support {spectrum:?}");
    }
    Ok(())
}
