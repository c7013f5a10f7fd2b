//! Fourier transforms `f̂(y) = ∫ f(x) e^{-2πixy} dx` of grid functions and
//! Fourier–Stieltjes transforms `μ̂(y) = ∫ e^{-2πixy} dμ(x)` of measures.

use std::f64::consts::PI;
use std::io::Write;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{GridFunction, GridSpec};
use crate::measure::{Measure, MeasureKind, SpectralForm};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TransformMethod {
    ClosedForm,
    Quadrature,
    IfsProduct,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransformResult {
    pub grid: GridFunction,
    pub method: TransformMethod,
    #[serde(with = "crate::report::finite_or_string")]
    pub certified_error: f64,
}

/// Shortest round-trip text, in exponent form outside `[1e-4, 1e15)`.
fn num(v: f64) -> String {
    let a = v.abs();
    if a == 0.0 || (1e-4..1e15).contains(&a) || !a.is_finite() {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

impl TransformResult {
    /// Rows `y,re,im,abs`.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "y,re,im,abs")?;
        for (k, v) in self.grid.values.iter().enumerate() {
            writeln!(out, "{},{},{},{}", num(self.grid.x(k)), num(v.re), num(v.im), num(v.norm()))?;
        }
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("csv is ascii")
    }
}

/// `∫|f|` over the outer tenth of the window on each side: an estimate of
/// the mass the window cuts off for functions that have not decayed.
pub fn tail_estimate(f: &GridFunction) -> f64 {
    let n = f.len();
    let band = (n / 10).max(1);
    let edge: f64 = f.values[..band].iter().chain(&f.values[n - band..]).map(|v| v.norm()).sum();
    edge * f.step
}

fn density_form(f: &GridFunction) -> SpectralForm {
    Measure::density(f.clone()).spectral_form()
}

fn sample_form(form: &SpectralForm, ygrid: GridSpec) -> Vec<Complex64> {
    form.transform_grid(ygrid.start, ygrid.step, ygrid.len)
}

/// `f̂` on `ygrid` by the trapezoid rule with the phase `e^{-2πi start y}`
/// carried explicitly, so samples approximate the continuous transform.
pub fn fourier_function(f: &GridFunction, ygrid: GridSpec) -> TransformResult {
    let form = density_form(f);
    let values = sample_form(&form, ygrid);
    TransformResult {
        grid: GridFunction {
            start: ygrid.start,
            step: ygrid.step,
            values,
        },
        method: TransformMethod::Quadrature,
        certified_error: tail_estimate(f),
    }
}

/// Tail estimates of the unrestricted densities of `mu` (restricted ones are
/// compactly supported inside their window).
fn density_tails(mu: &Measure, coeff: f64) -> f64 {
    match mu.kind() {
        MeasureKind::Density(g) if mu.restriction().is_none() => coeff * tail_estimate(g),
        MeasureKind::Sum(terms) => terms.iter().map(|(c, m)| density_tails(m, coeff * c.norm())).sum(),
        _ => 0.0,
    }
}

/// `μ̂` on `ygrid`. Atoms are summed exactly, densities by quadrature and
/// self-similar parts by the truncated product, with the certified
/// truncation bound of the product and the density tail estimate.
pub fn fourier_stieltjes(mu: &Measure, ygrid: GridSpec) -> Result<TransformResult> {
    let tv = mu.total_variation()?;
    if !tv.value.is_finite() {
        return Err(Error::Divergence("measure has infinite total variation".into()));
    }
    let form = mu.spectral_form();
    let values = sample_form(&form, ygrid);
    let ifs_error = (0..ygrid.len).map(|j| form.transform_error(ygrid.x(j))).fold(0.0, f64::max);
    let method = if !form.blocks.is_empty() {
        TransformMethod::Quadrature
    } else if form.cell_groups.iter().any(|g| !g.cells.is_empty()) {
        TransformMethod::IfsProduct
    } else {
        TransformMethod::ClosedForm
    };
    Ok(TransformResult {
        grid: GridFunction {
            start: ygrid.start,
            step: ygrid.step,
            values,
        },
        method,
        certified_error: ifs_error + density_tails(mu, 1.0),
    })
}

/// Closed form of `χ̂_{[-R,R]}(y) = sin(2πRy)/(πy)`.
pub fn box_transform(radius: f64, y: f64) -> f64 {
    if y == 0.0 {
        2.0 * radius
    } else {
        (2.0 * PI * radius * y).sin() / (PI * y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intervals::SetOfIntervals;
    use crate::measure::{cantor_product, Atom};

    fn gaussian() -> GridFunction {
        GridFunction::sample_real(GridSpec::centered_window(8.0, 4096).unwrap(), |x| (-PI * x * x).exp())
    }

    #[test]
    fn gaussian_is_a_fixed_point() {
        let yg = GridSpec::linspace(-4.0, 4.0, 801).unwrap();
        let t = fourier_function(&gaussian(), yg);
        let err = (0..yg.len)
            .map(|j| (t.grid.values[j] - (-PI * yg.x(j).powi(2)).exp()).norm())
            .fold(0.0, f64::max);
        assert!(err < 1e-6, "sup error {err}");
        assert!(t.certified_error < 1e-12);
    }

    #[test]
    fn box_transform_matches_closed_form() {
        let r = 0.75;
        let f = GridFunction::sample_real(GridSpec::linspace(-1.0, 1.0, 8001).unwrap(), |x| if x.abs() <= r { 1.0 } else { 0.0 });
        let mu = Measure::density(GridFunction::sample_real(f.spec(), |_| 1.0)).restrict(&SetOfIntervals::interval(-r, r).unwrap());
        let yg = GridSpec::linspace(-3.0, 3.0, 61).unwrap();
        let t = fourier_stieltjes(&mu, yg).unwrap();
        for j in 0..yg.len {
            let exact = box_transform(r, yg.x(j));
            assert!((t.grid.values[j].re - exact).abs() < 1e-5, "y = {}", yg.x(j));
        }
    }

    #[test]
    fn zero_function_has_zero_transform() {
        let f = GridFunction::zeros(GridSpec::centered_window(8.0, 256).unwrap());
        let t = fourier_function(&f, GridSpec::linspace(-2.0, 2.0, 9).unwrap());
        assert!(t.grid.values.iter().all(|v| v.norm() == 0.0));
    }

    #[test]
    fn delta_has_unit_modulus() {
        let yg = GridSpec::linspace(-50.0, 50.0, 1001).unwrap();
        let t = fourier_stieltjes(&Measure::delta(0.7), yg).unwrap();
        assert_eq!(t.method, TransformMethod::ClosedForm);
        assert_eq!(t.certified_error, 0.0);
        for j in 0..yg.len {
            let y = yg.x(j);
            assert!((t.grid.values[j] - Complex64::from_polar(1.0, -2.0 * PI * 0.7 * y)).norm() < 1e-12);
        }
    }

    #[test]
    fn cantor_transform_matches_product_and_integration() {
        let yg = GridSpec::linspace(-20.0, 20.0, 81).unwrap();
        let t = fourier_stieltjes(&Measure::cantor(), yg).unwrap();
        assert_eq!(t.method, TransformMethod::IfsProduct);
        for j in 0..yg.len {
            let y = yg.x(j);
            let (closed, bound) = cantor_product(y, 18);
            assert!((t.grid.values[j] - closed).norm() < 1e-12 + bound);
        }
        // x-side oracle: level-14 barycenter atoms against e^{-2πixy}
        let nodes = Measure::cantor().spectral_form().point_nodes(14);
        for y in [0.25, 1.0, 3f64.powi(5) / 4.0] {
            let direct: Complex64 = nodes.iter().map(|a| a.weight * Complex64::from_polar(1.0, -2.0 * PI * a.position * y)).sum();
            let lip = 2.0 * PI * y.abs();
            assert!((direct - cantor_product(y, 18).0).norm() < lip * 3f64.powi(-14));
        }
    }

    #[test]
    fn restricted_cantor_matches_point_expansion() {
        let e = SetOfIntervals::from_intervals(vec![(0.1, 0.3), (0.65, 0.8)]).unwrap();
        let mu = Measure::cantor().restrict(&e);
        let form = mu.spectral_form();
        let nodes = form.point_nodes(12);
        for y in [0.0, 0.7, 5.0, 40.5] {
            let direct: Complex64 = nodes.iter().map(|a| a.weight * Complex64::from_polar(1.0, -2.0 * PI * a.position * y)).sum();
            let bound = 2.0 * PI * y * form.cell_spread(12) + form.transform_error(y) + 1e-12;
            assert!((direct - form.transform(y)).norm() <= bound, "y = {y}");
        }
    }

    #[test]
    fn transform_bounded_by_variation_and_linear() {
        let mu = Measure::atoms(vec![Atom::new(0.3, Complex64::new(1.0, -2.0)), Atom::real(-1.2, 0.5)]).unwrap();
        let nu = Measure::density(gaussian());
        let yg = GridSpec::linspace(-10.0, 10.0, 201).unwrap();
        let a = Complex64::new(0.5, 1.5);
        let combo = Measure::sum(vec![(a, mu.clone()), (Complex64::new(-2.0, 0.0), nu.clone())]).unwrap();
        let tm = fourier_stieltjes(&mu, yg).unwrap();
        let tn = fourier_stieltjes(&nu, yg).unwrap();
        let tc = fourier_stieltjes(&combo, yg).unwrap();
        let tv = mu.total_variation().unwrap().value;
        for j in 0..yg.len {
            assert!(tm.grid.values[j].norm() <= tv + 1e-12);
            let expect = tm.grid.values[j] * a - tn.grid.values[j] * 2.0;
            assert!((tc.grid.values[j] - expect).norm() <= 1e-12 * (1.0 + expect.norm()));
        }
    }

    #[test]
    fn fubini_pairing() {
        // ∫ h μ̂ dy = ∫ ĥ dμ with h = e^{-πy²}, ĥ = h
        let mu = Measure::atoms(vec![Atom::real(0.4, 1.0), Atom::real(-1.0, -0.5)]).unwrap();
        let yg = GridSpec::centered_window(8.0, 4096).unwrap();
        let t = fourier_stieltjes(&mu, yg).unwrap();
        let lhs: Complex64 = (0..yg.len).map(|j| t.grid.values[j] * (-PI * yg.x(j).powi(2)).exp() * yg.step).sum();
        let rhs = (-PI * 0.16f64).exp() - 0.5 * (-PI).exp();
        assert!((lhs - Complex64::new(rhs, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn csv_has_header_and_rows() {
        let t = fourier_stieltjes(&Measure::delta(0.0), GridSpec::linspace(0.0, 1.0, 3).unwrap()).unwrap();
        let csv = t.to_csv();
        assert!(csv.starts_with("y,re,im,abs\n"));
        assert_eq!(csv.lines().count(), 4);
    }
}
