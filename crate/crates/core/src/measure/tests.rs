use std::f64::consts::PI;

use proptest::prelude::*;

use super::*;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn window() -> GridSpec {
    GridSpec::linspace(-8.0, 8.0, 4097).unwrap()
}

#[test]
fn total_variation_examples() {
    let m = Measure::atoms(vec![Atom::real(1.0, -1.0)]).unwrap();
    assert_eq!(m.total_variation().unwrap().value, 1.0);
    assert!((Measure::cantor().total_variation().unwrap().value - 1.0).abs() < 1e-12);
    let g = GridFunction::sample_real(
        GridSpec::linspace(-1.0, 3.0, 4001).unwrap(),
        |x| {
            if (0.0..=2.0).contains(&x) {
                1.0
            } else {
                0.0
            }
        },
    );
    let tv = Measure::density(g).total_variation().unwrap();
    assert!((tv.value - 2.0).abs() < 2e-3);
    assert!(tv.exact);
}

#[test]
fn sums_report_upper_bound() {
    let m = Measure::delta(0.0).plus(&Measure::gaussian(0.0, 1.0, c(1.0), window()));
    assert!(!m.total_variation().unwrap().exact);
    // merged atoms cancel exactly
    let z = Measure::delta(1.0).plus(&Measure::delta(1.0).scaled(c(-1.0)));
    let tv = z.total_variation().unwrap();
    assert_eq!(tv.value, 0.0);
    assert!(tv.exact);
}

#[test]
fn restriction_examples() {
    let d = Measure::delta(1.0);
    let inside = d.restrict(&SetOfIntervals::interval(0.5, 2.0).unwrap());
    assert_eq!(inside.total_variation().unwrap().value, 1.0);
    let outside = d.restrict(&SetOfIntervals::interval(2.0, 3.0).unwrap());
    assert_eq!(outside.total_variation().unwrap().value, 0.0);
    let leb = Measure::lebesgue(GridSpec::linspace(0.0, 4.0, 401).unwrap());
    let r = leb.restrict(&SetOfIntervals::interval(1.0, 3.0).unwrap());
    assert!((r.total_variation().unwrap().value - 2.0).abs() < 1e-12);
    let r = leb.restrict(&SetOfIntervals::interval(1.005, 2.333).unwrap());
    assert!((r.total_variation().unwrap().value - 1.328).abs() < 1e-12);
}

#[test]
fn restriction_composes_to_intersection() {
    let a = SetOfIntervals::interval(0.0, 2.0).unwrap();
    let b = SetOfIntervals::interval(1.0, 3.0).unwrap();
    let m = Measure::cantor().restrict(&a).restrict(&b);
    assert_eq!(m.restriction().unwrap(), &a.intersect(&b));
}

#[test]
fn half_open_boundary_atoms() {
    let m = Measure::atoms(vec![Atom::real(1.0, 1.0), Atom::real(2.0, 5.0)]).unwrap();
    let r = m.restrict(&SetOfIntervals::interval(1.0, 2.0).unwrap());
    assert_eq!(r.total_variation().unwrap().value, 1.0);
}

#[test]
fn scale_product_examples() {
    let spec = GridSpec::linspace(-1.0, 4.0, 501).unwrap();
    let x = GridFunction::sample_real(spec, |x| x);
    let p = Measure::delta(2.0).scale_product(&x).unwrap();
    let form = p.spectral_form();
    assert_eq!(form.atoms.len(), 1);
    assert!((form.atoms[0].weight - c(2.0)).norm() < 1e-12);

    let chi = GridFunction::sample_real(spec, |x| if x > 1.0 && x < 2.0 { 1.0 } else { 0.0 });
    let p = Measure::cantor().scale_product(&chi).unwrap();
    assert!(p.mass_above(-1.0, true).norm() < 1e-15);

    let one = GridFunction::sample_real(spec, |_| 1.0);
    let m = Measure::atoms(vec![Atom::real(0.5, 2.0), Atom::real(-0.5, -1.0)]).unwrap();
    assert_eq!(m.scale_product(&one).unwrap(), m.normalized());

    let narrow = GridFunction::sample_real(GridSpec::linspace(0.0, 0.5, 11).unwrap(), |_| 1.0);
    assert!(matches!(Measure::cantor().scale_product(&narrow), Err(Error::Domain { .. })));
}

#[test]
fn integrate_examples() {
    let gauss = GridFunction::sample_real(window(), |x| (-std::f64::consts::PI * x * x).exp());
    assert!((Measure::delta(0.0).integrate(&gauss).unwrap() - c(1.0)).norm() < 1e-12);
    let spec = GridSpec::linspace(-0.5, 1.5, 2001).unwrap();
    let one = GridFunction::sample_real(spec, |_| 1.0);
    assert!((Measure::cantor().integrate(&one).unwrap() - c(1.0)).norm() < 1e-12);
    let x = GridFunction::sample_real(spec, |x| x);
    let r = Measure::cantor().integrate_with_bound(&x).unwrap();
    assert!((r.value - c(0.5)).norm() < 1e-12);
    assert!(r.error_bound < 1e-7);
}

#[test]
fn convolution_examples() {
    let spec = window();
    let f = GridFunction::sample_real(spec, |x| (-std::f64::consts::PI * x * x).exp());
    let same = Measure::delta(0.0).convolve(&f).unwrap();
    assert!(same.values.iter().zip(&f.values).all(|(a, b)| (a - b).norm() < 1e-12));
    let shifted = Measure::delta(1.0).convolve(&f).unwrap();
    assert!((shifted.eval(1.0).unwrap() - c(1.0)).norm() < 1e-12);
    let two = Measure::atoms(vec![Atom::real(-1.0, 0.5), Atom::real(1.0, 0.5)]).unwrap();
    let conv = two.convolve(&f).unwrap();
    assert!((conv.eval(0.0).unwrap().re - (-std::f64::consts::PI).exp()).abs() < 1e-12);
}

#[test]
fn normalization_is_idempotent_and_merges() {
    let m = Measure::sum(vec![
        (c(2.0), Measure::delta(1.0)),
        (c(1.0), Measure::sum(vec![(c(0.5), Measure::delta(1.0)), (c(1.0), Measure::cantor())]).unwrap()),
    ])
    .unwrap();
    let n = m.normalized();
    assert_eq!(n.normalized(), n);
    let MeasureKind::Sum(terms) = n.kind() else { panic!("expected sum") };
    let MeasureKind::Atomic(atoms) = terms[0].1.kind() else {
        panic!("expected atoms")
    };
    assert_eq!(atoms, &vec![Atom::real(1.0, 2.5)]);
}

#[test]
fn mass_above_mixes_parts() {
    let m = Measure::delta(0.5).plus(&Measure::cantor());
    assert!((m.mass_above(0.5, false) - c(0.5)).norm() < 1e-12);
    assert!((m.mass_above(0.5, true) - c(1.5)).norm() < 1e-12);
    let leb = Measure::lebesgue(GridSpec::linspace(0.0, 4.0, 401).unwrap());
    assert!((leb.mass_above(1.25, false) - c(2.75)).norm() < 1e-12);
}

fn arb_atoms() -> impl Strategy<Value = Measure> {
    prop::collection::vec((-4.0f64..4.0, -2.0f64..2.0, -2.0f64..2.0), 1..6)
        .prop_map(|v| Measure::atoms(v.into_iter().map(|(x, a, b)| Atom::new(x, Complex64::new(a, b))).collect()).unwrap())
}

fn arb_gauss() -> impl Strategy<Value = Measure> {
    (-2.0f64..2.0, 0.3f64..1.5, 0.2f64..2.0).prop_map(|(x0, s, a)| Measure::gaussian(x0, s, c(a), window()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn integration_is_linear(mu in arb_atoms(), nu in arb_gauss(), a in -3.0f64..3.0, b in -3.0f64..3.0) {
        let h = GridFunction::sample(window(), |x| Complex64::from_polar((-x * x / 8.0).exp(), x));
        let combo = Measure::sum(vec![(c(a), mu.clone()), (c(b), nu.clone())]).unwrap();
        let lhs = combo.integrate(&h).unwrap();
        let rhs = mu.integrate(&h).unwrap() * a + nu.integrate(&h).unwrap() * b;
        prop_assert!((lhs - rhs).norm() <= 1e-12 * (1.0 + rhs.norm()));
    }

    #[test]
    fn restriction_matches_indicator(mu in arb_gauss(), lo in -3.0f64..0.0, len in 0.5f64..4.0) {
        let e = SetOfIntervals::interval(lo, lo + len).unwrap();
        let h = GridFunction::sample_real(window(), |x| (-x * x / 4.0).exp());
        let lhs = mu.restrict(&e).integrate(&h).unwrap();
        let chi = h.map(|x, v| if e.contains(x) { v } else { Complex64::default() });
        let rhs = mu.integrate(&chi).unwrap();
        // the sampled indicator is off by at most one step at each end
        prop_assert!((lhs - rhs).norm() < 2.0 * 2.0 * window().step);
    }

    #[test]
    fn restriction_does_not_increase_variation(mu in arb_atoms(), lo in -5.0f64..3.0, len in 0.0f64..5.0) {
        let e = SetOfIntervals::interval(lo, lo + len).unwrap();
        prop_assert!(mu.restrict(&e).total_variation().unwrap().value <= mu.total_variation().unwrap().value + 1e-15);
    }

    #[test]
    fn convolution_preserves_mass(w in prop::collection::vec((-2.0f64..2.0, 0.1f64..2.0), 1..4)) {
        let mu = Measure::atoms(w.iter().map(|(x, a)| Atom::real(*x, *a)).collect()).unwrap();
        let f = GridFunction::sample_real(GridSpec::linspace(-12.0, 12.0, 4801).unwrap(), |x| (-std::f64::consts::PI * x * x).exp());
        let mass: f64 = w.iter().map(|(_, a)| a).sum();
        let conv = mu.convolve(&f).unwrap();
        prop_assert!((conv.integral().re - f.integral().re * mass).abs() < 1e-9 * mass);
    }
}

#[test]
fn grid_evaluation_matches_pointwise() {
    let h = 1.0 / 64.0;
    let g = GridFunction::sample_real(GridSpec::new(-8.0, h, 1025).unwrap(), |x| (-PI * (x - 0.3) * (x - 0.3)).exp() * (1.0 + x));
    let mu = Measure::density(g.clone())
        .plus(&Measure::density(g).restrict(&SetOfIntervals::interval(-0.7, 1.1).unwrap()))
        .plus(&Measure::delta(0.25))
        .plus(&Measure::cantor().scaled(c(0.5)));
    let form = mu.resampled(257).spectral_form();
    // 1/(h dy) = 32768 is integral, so the unrestricted block goes through the FFT
    let (y0, dy, len) = (-3.9, 1.0 / 512.0, 4001);
    let grid = form.transform_grid(y0, dy, len);
    let worst = (0..len)
        .step_by(7)
        .map(|j| (grid[j] - form.transform(y0 + j as f64 * dy)).norm())
        .fold(0.0, f64::max);
    assert!(worst < 1e-12, "{worst}");
}

#[test]
fn affine_pieces_keep_two_nodes() {
    let lebesgue = Measure::lebesgue(GridSpec::linspace(-1.0, 4.0, 2).unwrap());
    let set = SetOfIntervals::from_intervals(vec![(0.0, 1.0), (2.0, 2.5)]).unwrap();
    let form = lebesgue.restrict(&set).resampled(257).spectral_form();
    assert!(form.blocks.iter().all(|b| b.coeffs.len() == 2));
    for y in [0.0, 0.3, 7.77] {
        let exact: Complex64 = set
            .intervals()
            .iter()
            .map(|&(a, b)| {
                if y == 0.0 {
                    c(b - a)
                } else {
                    (Complex64::from_polar(1.0, -2.0 * PI * b * y) - Complex64::from_polar(1.0, -2.0 * PI * a * y)) / Complex64::new(0.0, -2.0 * PI * y)
                }
            })
            .sum();
        assert!((form.transform(y) - exact).norm() < 1e-12, "y = {y}");
    }
}
