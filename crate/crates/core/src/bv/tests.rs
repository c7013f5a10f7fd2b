use super::*;

fn x_grid() -> GridSpec {
    GridSpec::linspace(0.05, 20.0, 400).unwrap()
}

#[test]
fn evaluation_examples() {
    let chi = BVFunction::indicator(1.0).unwrap();
    assert_eq!(chi.eval(0.5), 1.0);
    assert_eq!(chi.eval(2.0), 0.0);
    assert_eq!(chi.eval(1.0), 0.0);
    assert_eq!(BVFunction::zero().eval(0.3), 0.0);
    let c = BVFunction::cantor_complement();
    assert!((c.eval(0.5) - 0.5).abs() < 1e-9);
    assert!((c.eval(0.25) - 2.0 / 3.0).abs() < 1e-5);
    assert!((c.eval(0.0) - 1.0).abs() < 1e-12);
    assert!(c.eval(1.5).abs() < 1e-12);
}

#[test]
fn cantor_staircase_matches_ternary_digits() {
    // C(t) from the ternary expansion of t
    fn staircase(mut t: f64) -> f64 {
        let (mut c, mut w) = (0.0, 0.5);
        for _ in 0..40 {
            t *= 3.0;
            let d = t.floor();
            t -= d;
            if d == 1.0 {
                return c + w;
            }
            if d == 2.0 {
                c += w;
            }
            w *= 0.5;
        }
        c
    }
    let f = BVFunction::cantor_complement();
    for k in 1..50 {
        let t = k as f64 / 50.0 + 0.003;
        assert!((f.eval(t) - (1.0 - staircase(t))).abs() < 1e-5, "t = {t}");
    }
}

#[test]
fn indicator_transforms_match_closed_forms() {
    let f = BVFunction::indicator(1.0).unwrap();
    let c = fourier_bv(&f, 0.0, x_grid()).unwrap();
    let s = fourier_bv(&f, 0.25, x_grid()).unwrap();
    for k in 0..c.len() {
        let x = c.x(k);
        let w = 2.0 * PI * x;
        assert!((c.values[k].re - w.sin() / w).abs() < 1e-12);
        assert!((s.values[k].re - (1.0 - w.cos()) / w).abs() < 1e-12);
    }
}

#[test]
fn zero_function() {
    let f = BVFunction::zero();
    let g = fourier_bv(&f, 0.25, x_grid()).unwrap();
    assert!(g.values.iter().all(|v| v.norm() == 0.0));
    let r = remainder(&f, 0.25, x_grid()).unwrap();
    assert!(r.values.iter().all(|v| v.norm() == 0.0));
}

#[test]
fn routes_agree_on_test_families() {
    let families = [
        BVFunction::cantor_complement(),
        BVFunction::gaussian_bump(2.0, 0.5, 2001).unwrap(),
        BVFunction::new(
            Measure::delta(0.5)
                .scaled(Complex64::new(-0.5, 0.0))
                .plus(&Measure::cantor().dilated(2.0).unwrap().scaled(Complex64::new(-1.0, 0.0))),
        )
        .unwrap(),
    ];
    for f in &families {
        for gamma in [0.0, 0.25, 0.1] {
            let tr = BvTransform::new(f, gamma);
            for x in [0.01, 0.3, 1.0, 7.5, 40.0] {
                let (a, b) = (tr.stieltjes(x), tr.direct(x));
                assert!((a - b).abs() < ROUTE_TOLERANCE, "x = {x}, γ = {gamma}: {a} vs {b}");
            }
        }
    }
}

#[test]
fn bump_transform_matches_quadrature() {
    let f = BVFunction::gaussian_bump(2.0, 0.5, 4001).unwrap();
    let tr = BvTransform::new(&f, 0.0);
    for x in [0.1, 0.8, 2.0] {
        let q = crate::grid::gauss_panels(|t| (-PI * ((t - 2.0) / 0.5).powi(2)).exp() * (2.0 * PI * x * t).cos(), 0.0, 6.0, 200, 8);
        assert!((tr.stieltjes(x) - q).abs() < 1e-6, "x = {x}");
    }
}

#[test]
fn leading_term_examples() {
    let f = BVFunction::indicator(1.0).unwrap();
    assert_eq!(leading_term(&f, 0.0, 3.0), 0.0);
    assert!((leading_term(&f, 0.25, 2.0) - 1.0 / (4.0 * PI)).abs() < 1e-15);
    assert_eq!(leading_term(&f, 0.25, 0.5), 0.0);
}

#[test]
fn cosine_remainder_is_the_transform() {
    let f = BVFunction::cantor_complement();
    let r = remainder(&f, 0.0, x_grid()).unwrap();
    let h = fourier_bv(&f, 0.0, x_grid()).unwrap();
    assert_eq!(r, h);
}

#[test]
fn dilation_rescales_the_function() {
    let f = BVFunction::cantor_complement();
    let g = f.dilated(4.0).unwrap();
    for t in [0.01, 0.05, 0.1, 0.2] {
        assert!((g.eval(t) - f.eval(4.0 * t)).abs() < 1e-9);
    }
}

#[test]
fn smooth_bump_reports() {
    let f = BVFunction::gaussian_bump(2.0, 0.5, 2001).unwrap();
    let grid = LogGrid::new(1e-2, 1e2, 60).unwrap();
    let p = ExponentPair::new(2.0).unwrap();
    let rep = theorem_main_report(&f, p, 0.25, &grid).unwrap();
    assert_eq!(rep.status, Status::Pass);
    assert!(rep.ratio.is_finite() && rep.ratio > 0.0);
    let e = check_embst(&f, p, &grid).unwrap();
    assert!(e.pass);
    assert!((e.lhs - 2.0).abs() < 1e-3);
}

#[test]
fn jump_is_inconclusive() {
    let f = BVFunction::indicator(1.0).unwrap();
    let p = ExponentPair::new(1.5).unwrap();
    let rep = theorem_main_report(&f, p, 0.0, &LogGrid::new(1e-2, 1e2, 40).unwrap()).unwrap();
    assert_eq!(rep.status, Status::Inconclusive);
    let e = check_embst(&f, p, &LogGrid::new(1e-2, 1e2, 40).unwrap()).unwrap();
    assert_eq!(e.status, Status::Inconclusive);
}

#[test]
fn zero_embst() {
    let e = check_embst(&BVFunction::zero(), ExponentPair::new(1.2).unwrap(), &LogGrid::new(1e-1, 1e1, 10).unwrap()).unwrap();
    assert_eq!((e.lhs, e.rhs), (0.0, 0.0));
    assert!(e.pass);
}
