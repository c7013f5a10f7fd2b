use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;

// ‖P_E DFT P_F‖ by power iteration on explicit sums
fn sigma_by_power(n: usize, e: &IndexSet, f: &IndexSet) -> f64 {
    let entry = |k: usize, j: usize| {
        let t = -2.0 * PI * ((k * j) % n) as f64 / n as f64;
        Complex64::new(t.cos(), t.sin()) / (n as f64).sqrt()
    };
    let mut v: Vec<Complex64> = (0..f.len()).map(|j| Complex64::new(1.0 + j as f64 * 0.37, 0.1 * j as f64)).collect();
    let mut s = 0.0;
    for _ in 0..2000 {
        let u: Vec<Complex64> = e
            .indices()
            .iter()
            .map(|&k| f.indices().iter().zip(&v).map(|(&j, x)| entry(k, j) * x).sum())
            .collect();
        let w: Vec<Complex64> = f
            .indices()
            .iter()
            .map(|&j| e.indices().iter().zip(&u).map(|(&k, y)| entry(k, j).conj() * y).sum())
            .collect();
        let nw = l2(&w);
        s = (nw / l2(&v)).sqrt();
        v = w.iter().map(|z| z / nw).collect();
    }
    s
}

#[test]
fn full_sets_give_the_unitary_dft() {
    let op = build_limiting_operator(16, &IndexSet::all(16), &IndexSet::all(16)).unwrap();
    assert!((op.sigma() - 1.0).abs() < 1e-12);
    assert!(op.singular_values.iter().all(|s| (s - 1.0).abs() < 1e-12));
}

#[test]
fn single_entries() {
    for n in [2, 7, 64] {
        let e = IndexSet::new(n, vec![1]).unwrap();
        let f = IndexSet::new(n, vec![n - 1]).unwrap();
        let op = build_limiting_operator(n, &e, &f).unwrap();
        assert!((op.sigma() - 1.0 / (n as f64).sqrt()).abs() < 1e-14);
    }
}

#[test]
fn quarter_density_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..10 {
        let e = IndexSet::random(&mut rng, 256, 8);
        let f = IndexSet::random(&mut rng, 256, 8);
        let op = build_limiting_operator(256, &e, &f).unwrap();
        assert!(op.sigma() <= 0.5 + 1e-9);
        assert!((op.sigma() - sigma_by_power(256, &e, &f)).abs() < 1e-8);
    }
}

#[test]
fn errors() {
    let e = IndexSet::all(4096);
    assert!(matches!(build_limiting_operator(4096, &e, &e), Err(Error::Size(_))));
    assert!(IndexSet::new(4, vec![1, 1]).is_err());
    assert!(IndexSet::new(4, vec![4]).is_err());
    let full = IndexSet::all(8);
    assert!(build_limiting_operator(8, &IndexSet::empty(8), &full).is_err());
    let w = vec![Complex64::new(1.0, 0.0); 8];
    let f = IndexSet::new(8, vec![0]).unwrap();
    assert!(matches!(measure_annihilation_check(&w, &full, &f), Err(Error::Precondition(_))));
}

#[test]
fn empty_frequency_set_is_parseval() {
    let mut w = vec![Complex64::default(); 32];
    w[3] = Complex64::new(0.5, -1.0);
    w[10] = Complex64::new(2.0, 0.0);
    let f = IndexSet::new(32, vec![3, 10]).unwrap();
    let r = measure_annihilation_check(&w, &IndexSet::empty(32), &f).unwrap();
    assert_eq!(r.constant_used, 1.0);
    assert!(r.pass && (r.lhs - r.rhs).abs() < 1e-12);
}

#[test]
fn single_atom_passes_with_slack() {
    let n = 64;
    let mut w = vec![Complex64::default(); n];
    w[5] = Complex64::new(1.0, 0.0);
    let f = IndexSet::new(n, vec![5, 9]).unwrap();
    let e = IndexSet::new(n, vec![0, 1, 2]).unwrap();
    let r = measure_annihilation_check(&w, &e, &f).unwrap();
    // |δ̂|² = 1/N everywhere, so the right side is C √(1 − 3/N)
    let c = r.constant_used;
    assert!((r.rhs - c * (1.0 - 3.0 / n as f64).sqrt()).abs() < 1e-12);
    assert!(r.pass && r.slack > 0.0);
}

#[test]
fn random_annihilation_trials() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..100 {
        let ke = rng.gen_range(1..=8);
        let kf = rng.gen_range(1..=64 / ke);
        let e = IndexSet::random(&mut rng, 256, ke);
        let f = IndexSet::random(&mut rng, 256, kf);
        let mut w = vec![Complex64::default(); 256];
        for &i in f.indices() {
            w[i] = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        }
        let r = measure_annihilation_check(&w, &e, &f).unwrap();
        assert!(r.pass, "{r:?}");
    }
}

#[test]
fn random_small_pairs_have_no_double_support() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..20 {
        let e = IndexSet::random(&mut rng, 64, 4);
        let f = IndexSet::random(&mut rng, 64, 4);
        let r = no_double_support(64, &e, &f).unwrap();
        assert_eq!(r.status, Status::Pass);
        assert!(r.gap > 0.0 && r.witness.is_none());
    }
}

#[test]
fn picket_fence_has_a_comb_witness() {
    let comb = IndexSet::multiples(64, 8).unwrap();
    let r = no_double_support(64, &comb, &comb).unwrap();
    assert!((r.sigma - 1.0).abs() < 1e-12);
    assert_eq!(r.status, Status::Fail);
    let w = r.witness.unwrap();
    let mag = w[0].norm();
    for (i, z) in w.iter().enumerate() {
        if i % 8 == 0 {
            assert!((z.norm() - mag).abs() < 1e-9);
        } else {
            assert_eq!(z.norm(), 0.0);
        }
    }
    let hat = dft(&w);
    assert!((0..64).filter(|k| k % 8 != 0).all(|k| hat[k].norm() < 1e-9));
    let c = measure_annihilation_check(&w, &comb, &comb).unwrap();
    assert_eq!(c.status, Status::Inconclusive);
}

#[test]
fn empty_sets_trivially_pass() {
    let r = no_double_support(16, &IndexSet::empty(16), &IndexSet::all(16)).unwrap();
    assert_eq!(r.status, Status::Pass);
    assert_eq!(r.sigma, 0.0);
}

fn pair() -> impl Strategy<Value = (usize, Vec<usize>, Vec<usize>)> {
    (8usize..96).prop_flat_map(|n| {
        (
            Just(n),
            prop::collection::btree_set(0..n, 1..=n.min(12)).prop_map(|s| s.into_iter().collect()),
            prop::collection::btree_set(0..n, 1..=n.min(12)).prop_map(|s| s.into_iter().collect()),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn singular_values_are_contractive((n, e, f) in pair()) {
        let (e, f) = (IndexSet::new(n, e).unwrap(), IndexSet::new(n, f).unwrap());
        let op = build_limiting_operator(n, &e, &f).unwrap();
        prop_assert!(op.singular_values.iter().all(|&s| (0.0..=1.0 + 1e-12).contains(&s)));
        prop_assert!(op.singular_values.windows(2).all(|w| w[0] >= w[1]));
        prop_assert!(op.sigma() <= op.envelope() + 1e-9);
        let swapped = build_limiting_operator(n, &f, &e).unwrap();
        prop_assert!((op.sigma() - swapped.sigma()).abs() < 1e-12);
    }

    #[test]
    fn annihilation_holds_below_the_ceiling((n, e, f) in pair(), seed in 0u64..1000) {
        let (e, f) = (IndexSet::new(n, e).unwrap(), IndexSet::new(n, f).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut w = vec![Complex64::default(); n];
        for &i in f.indices() {
            w[i] = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        }
        let r = measure_annihilation_check(&w, &e, &f).unwrap();
        if r.extra["sigma"] < 0.99 {
            prop_assert!(r.pass);
        }
    }
}
