//! Functions of bounded variation on `(0, ∞)` vanishing at infinity, given
//! by their derivative measure, and the decomposition
//! `f̂_γ(x) = f(1/x) sin(2πγ) / (2πx) + Γ(x)` of
//! `f̂_γ(x) = ∫₀^∞ f(t) cos 2π(xt - γ) dt`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exponent::ExponentPair;
use crate::grid::{GridFunction, GridSpec, LogGrid};
use crate::measure::{Measure, SpectralForm, POINT_EXPANSION_LEVELS};
use crate::norms::vp_star_norm;
use crate::report::{digest, InequalityReport, Status};

/// Largest admissible disagreement between the two transform routes.
pub const ROUTE_TOLERANCE: f64 = 1e-4;

/// `f(t) = -μ_f((t, ∞))`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BVFunction {
    derivative: Measure,
}

impl BVFunction {
    pub fn new(derivative: Measure) -> Result<Self> {
        if let Some((lo, _)) = derivative.support_hull() {
            if lo < 0.0 {
                return Err(Error::InvalidMeasure(format!("derivative measure must live on [0, ∞), support starts at {lo}")));
            }
        }
        let tv = derivative.total_variation()?;
        if !tv.value.is_finite() {
            return Err(Error::InvalidMeasure("derivative measure has infinite variation".into()));
        }
        Ok(Self { derivative })
    }

    pub fn zero() -> Self {
        Self { derivative: Measure::zero() }
    }

    /// `χ_{[0,a)}`, derivative `-δ_a`.
    pub fn indicator(a: f64) -> Result<Self> {
        Self::new(Measure::delta(a).scaled(Complex64::new(-1.0, 0.0)))
    }

    /// `1 - C(t)` on `[0, 1]`, `0` after, `C` the Cantor staircase.
    pub fn cantor_complement() -> Self {
        Self::new(Measure::cantor().scaled(Complex64::new(-1.0, 0.0))).expect("valid derivative")
    }

    /// `e^{-π((t-c)/w)²}` sampled with `points` nodes on `[0, c + 8w]`.
    pub fn gaussian_bump(center: f64, width: f64, points: usize) -> Result<Self> {
        let spec = GridSpec::linspace(0.0, center + 8.0 * width, points)?;
        let g = GridFunction::sample_real(spec, |t| {
            let u = (t - center) / width;
            -2.0 * PI * u / width * (-PI * u * u).exp()
        });
        Self::new(Measure::density(g))
    }

    pub fn derivative_measure(&self) -> &Measure {
        &self.derivative
    }

    /// `t ↦ f(λt)`.
    pub fn dilated(&self, lambda: f64) -> Result<Self> {
        Self::new(self.derivative.dilated(lambda)?)
    }

    pub fn with_depth(&self, depth: u32) -> Self {
        Self {
            derivative: self.derivative.with_depth(depth),
        }
    }

    /// Right end of the support of `μ_f` (0 for the zero function).
    pub fn support_end(&self) -> f64 {
        self.derivative.support_hull().map_or(0.0, |(_, hi)| hi)
    }

    /// `f(0+) = -μ_f((0, ∞))`.
    pub fn at_zero(&self) -> f64 {
        self.eval(0.0)
    }

    pub fn eval(&self, t: f64) -> f64 {
        -self.derivative.mass_above(t, false).re
    }
}

/// `f(t) = -μ_f((t, ∞))`.
pub fn eval_bv(f: &BVFunction, t: f64) -> f64 {
    f.eval(t)
}

/// `∫ sin 2π(xt - γ) dμ_f(t)` from `μ̂(±x)`.
fn sine_pairing(form: &SpectralForm, x: f64, gamma: f64) -> f64 {
    let plus = Complex64::from_polar(1.0, -2.0 * PI * gamma) * form.transform(-x);
    let minus = Complex64::from_polar(1.0, 2.0 * PI * gamma) * form.transform(x);
    ((plus - minus) / Complex64::new(0.0, 2.0)).re
}

/// Piecewise-linear description of `f` used by the direct route.
#[derive(Debug, Clone)]
struct DirectForm {
    /// `(position, weight)`: `f` jumps by `weight` at `position`.
    jumps: Vec<(f64, f64)>,
    /// `(a, b, f(a+), f(b-), κ)`: `f` is the chord plus `κ (t-a)(t-b)`.
    segments: Vec<(f64, f64, f64, f64, f64)>,
}

impl DirectForm {
    fn new(f: &BVFunction) -> Self {
        let form = f.derivative.resampled(257).spectral_form();
        let mut jumps: Vec<(f64, f64)> = form.atoms.iter().map(|a| (a.position, a.weight.re)).collect();
        jumps.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut segments = Vec::new();

        // self-similar parts: ramps across level-L sub-cells, flat in the gaps
        let mut cells: Vec<(f64, f64, f64)> = Vec::new();
        for g in &form.cell_groups {
            for c in &g.cells {
                let levels = POINT_EXPANSION_LEVELS.min(g.base.depth().saturating_sub(c.level));
                let mut current = vec![*c];
                for _ in 0..levels {
                    current = current
                        .iter()
                        .flat_map(|c| {
                            g.base.translations().iter().zip(g.base.weights()).map(move |(t, w)| crate::measure::Cell {
                                weight: c.weight * *w,
                                offset: c.offset + c.scale * t,
                                scale: c.scale * g.base.ratio(),
                                level: c.level + 1,
                            })
                        })
                        .collect();
                }
                cells.extend(current.iter().map(|c| {
                    let (lo, hi) = g.base.cell_hull(c);
                    (lo, hi, c.weight.re)
                }));
            }
        }
        cells.sort_by(|a, b| a.0.total_cmp(&b.0));
        push_ramps(&cells, &mut segments);

        // densities: f at nodes from cumulative trapezoid sums from the right
        for b in &form.blocks {
            let n = b.coeffs.len();
            if n < 2 {
                continue;
            }
            let g: Vec<f64> = (0..n).map(|k| b.coeffs[k].re / crate::grid::trapezoid_weight(k, n, b.step)).collect();
            let mut f = vec![0.0; n];
            for k in (0..n - 1).rev() {
                f[k] = f[k + 1] - 0.5 * b.step * (g[k] + g[k + 1]);
            }
            let start = b.start;
            if start > 0.0 {
                segments.push((0.0, start, f[0], f[0], 0.0));
            }
            for k in 0..n - 1 {
                let a = start + k as f64 * b.step;
                let curv = 0.5 * (g[k + 1] - g[k]) / b.step;
                segments.push((a, a + b.step, f[k], f[k + 1], curv));
            }
        }
        Self { jumps, segments }
    }

    /// `∫₀^∞ f(t) cos(ωt - φ) dt` exactly for this piecewise-linear `f`.
    fn integrate(&self, x: f64, gamma: f64) -> f64 {
        let w = 2.0 * PI * x;
        let phi = 2.0 * PI * gamma;
        // a jump of size c at s contributes -c ∫₀^s cos(ωt - φ) dt
        let jumps: f64 = self.jumps.iter().map(|&(s, c)| -c * sin_diff(w * s - phi, -phi) / w).sum();
        let segs: f64 = self
            .segments
            .iter()
            .map(|&(a, b, fa, fb, curv)| {
                if !(b > a) {
                    return 0.0;
                }
                let (ta, tb) = (w * a - phi, w * b - phi);
                let slope = (fb - fa) / (b - a);
                // [L sin/ω] + slope [cos/ω²]
                let linear = (fb * sin_diff(tb, ta) + (fb - fa) * ta.sin()) / w + slope * cos_diff(tb, ta) / (w * w);
                if curv == 0.0 {
                    return linear;
                }
                let h = b - a;
                let theta = 0.5 * w * h;
                let shape = if theta.abs() < 1e-2 {
                    -1.0 / 3.0 + theta * theta / 30.0
                } else {
                    (theta * theta.cos() - theta.sin()) / theta.powi(3)
                };
                linear + curv * h.powi(3) * (0.5 * (ta + tb)).cos() * 0.5 * shape
            })
            .sum();
        jumps + segs
    }
}

/// `(lo, hi, w)` sorted cells to ramps of `f = -μ((t,∞))`.
fn push_ramps(cells: &[(f64, f64, f64)], segments: &mut Vec<(f64, f64, f64, f64, f64)>) {
    if cells.is_empty() {
        return;
    }
    let mut above: Vec<f64> = vec![0.0; cells.len() + 1];
    for i in (0..cells.len()).rev() {
        above[i] = above[i + 1] + cells[i].2;
    }
    let mut prev_end = 0.0;
    for (i, &(lo, hi, _)) in cells.iter().enumerate() {
        if lo > prev_end {
            segments.push((prev_end, lo, -above[i], -above[i], 0.0));
        }
        segments.push((lo, hi, -above[i], -above[i + 1], 0.0));
        prev_end = hi;
    }
}

/// `sin b - sin a` without cancellation.
fn sin_diff(b: f64, a: f64) -> f64 {
    2.0 * (0.5 * (a + b)).cos() * (0.5 * (b - a)).sin()
}

/// `cos b - cos a` without cancellation.
fn cos_diff(b: f64, a: f64) -> f64 {
    -2.0 * (0.5 * (a + b)).sin() * (0.5 * (b - a)).sin()
}

/// The two routes to `f̂_γ`.
pub struct BvTransform {
    form: SpectralForm,
    direct: DirectForm,
    at_zero: f64,
    gamma: f64,
}

impl BvTransform {
    pub fn new(f: &BVFunction, gamma: f64) -> Self {
        Self {
            form: f.derivative.spectral_form(),
            direct: DirectForm::new(f),
            at_zero: f.at_zero(),
            gamma,
        }
    }

    /// `f(0+) sin(2πγ)/(2πx) - (1/2πx) ∫ sin 2π(xt - γ) dμ_f(t)`.
    pub fn stieltjes(&self, x: f64) -> f64 {
        let w = 2.0 * PI * x;
        (self.at_zero * (2.0 * PI * self.gamma).sin() - sine_pairing(&self.form, x, self.gamma)) / w
    }

    /// Exact integration of the piecewise-linear model of `f`.
    pub fn direct(&self, x: f64) -> f64 {
        self.direct.integrate(x, self.gamma)
    }
}

fn check_routes(tr: &BvTransform, xs: &[f64]) -> Result<Vec<f64>> {
    let pairs: Vec<(f64, f64)> = xs.par_iter().map(|&x| (tr.stieltjes(x), tr.direct(x))).collect();
    let (worst, at) = pairs
        .iter()
        .zip(xs)
        .map(|((s, d), x)| ((s - d).abs(), *x))
        .fold((0.0, f64::NAN), |acc, v| if v.0 > acc.0 { v } else { acc });
    if !(worst <= ROUTE_TOLERANCE) {
        return Err(Error::Integrity(format!("Stieltjes and direct routes differ by {worst:.3e} at x = {at:.6e}")));
    }
    Ok(pairs.into_iter().map(|(s, _)| s).collect())
}

/// `f̂_γ` on `xgrid` (which must lie in `(0, ∞)`), computed by both routes;
/// disagreement beyond [`ROUTE_TOLERANCE`] is an integrity error.
pub fn fourier_bv(f: &BVFunction, gamma: f64, xgrid: GridSpec) -> Result<GridFunction> {
    if !(xgrid.start > 0.0) {
        return Err(Error::Precondition("x-grid must lie in (0, ∞)".into()));
    }
    let tr = BvTransform::new(f, gamma);
    let xs: Vec<f64> = xgrid.nodes().collect();
    let values = check_routes(&tr, &xs)?;
    GridFunction::new(xgrid.start, xgrid.step, values.into_iter().map(|v| Complex64::new(v, 0.0)).collect())
}

/// `f(1/x) sin(2πγ) / (2πx)`.
pub fn leading_term(f: &BVFunction, gamma: f64, x: f64) -> f64 {
    let s = (2.0 * PI * gamma).sin();
    if s == 0.0 {
        return 0.0;
    }
    f.eval(1.0 / x) * s / (2.0 * PI * x)
}

/// `Γ = f̂_γ - leading term` on `xgrid`.
pub fn remainder(f: &BVFunction, gamma: f64, xgrid: GridSpec) -> Result<GridFunction> {
    let hat = fourier_bv(f, gamma, xgrid)?;
    Ok(hat.map(|x, v| v - leading_term(f, gamma, x)))
}

/// `‖Γ‖_{L¹}` on the range of a geometric grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RemainderL1 {
    pub value: f64,
    /// Contribution of the last decade, a proxy for the truncated tail.
    pub last_decade: f64,
    /// `(x, ∫_{x_min}^x |Γ|)` at every grid node.
    pub partials: Vec<(f64, f64)>,
    /// Largest route disagreement on the grid nodes.
    pub route_gap: f64,
}

/// Integrates `|Γ|` over each cell `[x_i, x_{i+1}]` of the geometric grid
/// with enough trapezoid nodes to follow oscillations of period
/// `1 / t_max`; the two transform routes are compared on the grid nodes.
pub fn remainder_l1(f: &BVFunction, gamma: f64, xrange: &LogGrid) -> Result<RemainderL1> {
    let tr = BvTransform::new(f, gamma);
    let nodes = xrange.nodes();
    let checked = check_routes(&tr, &nodes)?;
    let route_gap = nodes.iter().zip(&checked).map(|(x, s)| (s - tr.direct(*x)).abs()).fold(0.0, f64::max);
    let t_max = f.support_end().max(1e-12);
    let cells: Vec<f64> = nodes
        .par_windows(2)
        .map(|w| {
            let (a, b) = (w[0], w[1]);
            let m = 32usize.max((16.0 * (b - a) * t_max).ceil() as usize) + 1;
            let h = (b - a) / (m - 1) as f64;
            (0..m)
                .map(|k| {
                    let x = a + k as f64 * h;
                    let wk = if k == 0 || k == m - 1 { 0.5 * h } else { h };
                    wk * (tr.stieltjes(x) - leading_term(f, gamma, x)).abs()
                })
                .sum::<f64>()
        })
        .collect();
    let mut partials = Vec::with_capacity(nodes.len());
    let mut acc = 0.0;
    partials.push((nodes[0], 0.0));
    for (i, c) in cells.iter().enumerate() {
        acc += c;
        partials.push((nodes[i + 1], acc));
    }
    let cut = xrange.x_max / 10.0;
    let before = partials.iter().take_while(|(x, _)| *x <= cut).last().map_or(0.0, |p| p.1);
    Ok(RemainderL1 {
        value: acc,
        last_decade: acc - before,
        partials,
        route_gap,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremMainReport {
    pub p: ExponentPair,
    pub gamma: f64,
    pub remainder_l1: f64,
    pub remainder_last_decade: f64,
    #[serde(with = "crate::report::finite_or_string")]
    pub vp_star: f64,
    #[serde(with = "crate::report::finite_or_string")]
    pub ratio: f64,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub divergent_block: Option<f64>,
    pub route_gap: f64,
    pub notes: Vec<String>,
}

/// `‖Γ‖_{L¹}` against `‖f‖_{Vₚ*}`: their ratio is the empirical constant.
/// An infinite `Vₚ*` norm leaves the hypothesis unmet (inconclusive).
pub fn theorem_main_report(f: &BVFunction, p: ExponentPair, gamma: f64, xrange: &LogGrid) -> Result<TheoremMainReport> {
    let l1 = remainder_l1(f, gamma, xrange)?;
    let vp = vp_star_norm(f, p, xrange)?;
    let mut notes = Vec::new();
    let (ratio, status) = if !vp.norm.is_finite() {
        notes.push("‖f‖_{Vp*} is infinite: hypothesis not met".into());
        (f64::NAN, Status::Inconclusive)
    } else if vp.norm.value == 0.0 {
        (
            if l1.value == 0.0 { 0.0 } else { f64::INFINITY },
            if l1.value == 0.0 { Status::Pass } else { Status::Fail },
        )
    } else {
        (l1.value / vp.norm.value, Status::Pass)
    };
    Ok(TheoremMainReport {
        p,
        gamma,
        remainder_l1: l1.value,
        remainder_last_decade: l1.last_decade,
        vp_star: vp.norm.value,
        ratio,
        status,
        divergent_block: vp.divergent_block,
        route_gap: l1.route_gap,
        notes,
    })
}

/// `∫|df| ≲ ‖f‖_{Vₚ*}`: the constant is measured, the report is
/// inconclusive when the right-hand side diverges.
pub fn check_embst(f: &BVFunction, p: ExponentPair, xrange: &LogGrid) -> Result<InequalityReport> {
    let lhs = f.derivative_measure().total_variation()?.value;
    let vp = vp_star_norm(f, p, xrange)?;
    let inputs = digest(&(f, p, xrange));
    if !vp.norm.is_finite() {
        let mut r = InequalityReport::new("embst", lhs, f64::INFINITY, f64::NAN, 0.0, inputs);
        r.notes.push(format!("‖f‖_{{Vp*}} diverges (block at x = {:?})", vp.divergent_block));
        return Ok(r);
    }
    let norm = vp.norm.value;
    let constant = if norm > 0.0 {
        lhs / norm
    } else if lhs == 0.0 {
        0.0
    } else {
        f64::INFINITY
    };
    let rhs = if norm > 0.0 { constant * norm } else { 0.0 };
    Ok(InequalityReport::new("embst", lhs, rhs, constant, 1e-12, inputs)
        .with_extra("vp_star", norm)
        .with_extra("empirical_constant", constant)
        .with_note("constant is measured, not asserted"))
}

#[cfg(test)]
mod tests;
