//! Norm functionals: `Lᵖ` norms of grid functions, the `L̂ᵖ` norm
//! `‖f̂‖_{p'}`, the dual norm `‖μ‖ₚ*` and its restricted form, and the
//! dyadic-block scales `Oₚ` and `Vₚ*`.
//!
//! For a finite measure the dual norm is computed through the identity
//! `‖μ‖ₚ* = ‖μ̂‖_{p'}` on growing symmetric windows `[-T, T]`; a finite
//! dictionary of Gaussian test functions gives an independent lower bound.

mod dictionary;

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bv::BVFunction;
use crate::error::{Error, Result};
use crate::exponent::ExponentPair;
use crate::grid::{GridFunction, LogGrid};
use crate::intervals::SetOfIntervals;
use crate::measure::{Measure, SpectralForm};

pub use dictionary::{star_norm_lower, Dictionary, DictionaryMember, LowerBound};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NormMethod {
    Duality,
    DictionaryLowerBound,
    Quadrature,
}

/// Partial integral `∫_{-T}^{T} |μ̂|^{p'}` (or `sup |μ̂|` when `p' = ∞`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WindowRecord {
    pub half_width: f64,
    #[serde(with = "crate::report::finite_or_string")]
    pub partial: f64,
    #[serde(with = "crate::report::finite_or_string")]
    pub increment: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormResult {
    #[serde(with = "crate::report::finite_or_string")]
    pub value: f64,
    pub method: NormMethod,
    pub divergence_flag: bool,
    pub windows: Vec<WindowRecord>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub caveats: Vec<String>,
}

impl NormResult {
    fn exact(value: f64, method: NormMethod) -> Self {
        Self {
            value,
            method,
            divergence_flag: false,
            windows: vec![],
            caveats: vec![],
        }
    }

    pub fn is_finite(&self) -> bool {
        !self.divergence_flag && self.value.is_finite()
    }
}

/// Knobs of the windowed duality estimator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StarNormConfig {
    /// Increments whose ratio stays above this across three doublings at
    /// the largest window are read as divergence.
    pub divergence_ratio: f64,
    /// Relative increment below which the windows stop growing.
    pub convergence_tol: f64,
    /// Relative increment below which the test never reports divergence.
    pub divergence_floor: f64,
    pub max_doublings: u32,
    /// Extra doublings for forms without a singular part, granted while
    /// `block coefficients × samples` stays below `direct_budget`.
    pub density_doublings: u32,
    pub direct_budget: f64,
    /// Samples of `μ̂` per initial half-window `T₀ = 1/diam`.
    pub points_per_window: usize,
    /// Half-width of the `sup` window for `p' = ∞`, in units of `T₀ ∨ 1`.
    pub sup_half_width: f64,
    /// Minimum nodes per piece when restricted densities are re-gridded.
    pub min_piece_points: usize,
}

impl Default for StarNormConfig {
    fn default() -> Self {
        Self {
            divergence_ratio: 0.9,
            convergence_tol: 1e-12,
            divergence_floor: 1e-10,
            max_doublings: 10,
            density_doublings: 4,
            direct_budget: 1e8,
            points_per_window: 32,
            sup_half_width: 64.0,
            min_piece_points: 257,
        }
    }
}

/// `‖f‖_p` by the trapezoid rule; the grid maximum for `p = ∞`.
pub fn lp_norm(f: &GridFunction, p: ExponentPair) -> f64 {
    if p.is_infinite() {
        return f.max_abs();
    }
    let s: f64 = f.values.iter().enumerate().map(|(k, v)| f.trapezoid_weight(k) * v.norm().powf(p.p())).sum();
    s.powf(1.0 / p.p())
}

/// `‖f‖_{L̂ᵖ} = ‖f̂‖_{p'}`, the dual norm of the measure `f dx`.
pub fn hat_norm(f: &GridFunction, p: ExponentPair) -> Result<NormResult> {
    let mut r = star_norm(&Measure::density(f.clone()), p)?;
    r.method = NormMethod::Quadrature;
    Ok(r)
}

/// `‖μ‖ₚ*` with the default configuration.
pub fn star_norm(mu: &Measure, p: ExponentPair) -> Result<NormResult> {
    star_norm_with(mu, p, &StarNormConfig::default())
}

/// `‖μ‖ₚ* = ‖μ̂‖_{p'}` over doubling windows. Returns `+∞` with the
/// divergence flag when the partial integrals keep growing at the largest
/// window.
pub fn star_norm_with(mu: &Measure, p: ExponentPair, cfg: &StarNormConfig) -> Result<NormResult> {
    let tv = mu.total_variation()?;
    if !tv.value.is_finite() {
        return Err(Error::Precondition("measure must have finite total variation".into()));
    }
    let form = mu.resampled(cfg.min_piece_points).spectral_form();
    let mut result = dual_norm(&form, p.conjugate(), cfg);
    if p.p() == 1.0 {
        result.caveats.push("p = 1: value is sup|μ̂| over a finite window".into());
    }
    Ok(result)
}

/// `‖χ_E μ‖ₚ*`.
pub fn restricted_star_norm(mu: &Measure, p: ExponentPair, set: &SetOfIntervals) -> Result<NormResult> {
    star_norm(&mu.restrict(set), p)
}

struct Layout {
    dy: f64,
    n0: usize,
    n_cap: usize,
    /// The cap is the Nyquist frequency of the density samples, so the
    /// last window is a full period of the sampled transform.
    periodic: bool,
}

fn layout(form: &SpectralForm, q: f64, cfg: &StarNormConfig) -> Option<Layout> {
    let (lo, hi) = form.support_hull()?;
    let diam = hi - lo;
    let t0 = if diam > 0.0 { 1.0 / diam } else { 1.0 };
    let mut dy = t0 / cfg.points_per_window as f64;
    let mut cap = if q.is_infinite() {
        cfg.sup_half_width * t0.max(1.0)
    } else {
        let terms: usize = form.blocks.iter().map(|b| b.coeffs.len()).sum();
        let samples = 2.0 * cfg.points_per_window as f64 * 2f64.powi((cfg.max_doublings + cfg.density_doublings) as i32);
        let extra = if form.has_singular_part() || terms as f64 * samples > cfg.direct_budget {
            0
        } else {
            cfg.density_doublings
        };
        t0 * 2f64.powi((cfg.max_doublings + extra) as i32)
    };
    let mut periodic = false;
    if let Some(nyq) = form.nyquist() {
        if nyq <= cap {
            cap = nyq;
            periodic = form.is_pure_density();
            // whole number of steps per half-period
            dy = nyq / (nyq / dy).ceil();
        }
    }
    let n_cap = ((cap / dy).round() as usize).max(1);
    let n0 = cfg.points_per_window.min(n_cap);
    Some(Layout { dy, n0, n_cap, periodic })
}

fn dual_norm(form: &SpectralForm, q: f64, cfg: &StarNormConfig) -> NormResult {
    let Some(lay) = layout(form, q, cfg) else {
        return NormResult::exact(0.0, NormMethod::Duality);
    };
    if form.is_zero() {
        return NormResult::exact(0.0, NormMethod::Duality);
    }
    let mut result = if q.is_infinite() {
        sup_norm(form, &lay)
    } else {
        windowed_integral(form, q, &lay, cfg)
    };
    if form.nyquist().is_some() {
        result.caveats.push("sampled densities are resolved up to their Nyquist frequency".into());
    }
    result
}

/// `|μ̂(j dy)|^q` for `j = lo..=hi` (`|μ̂|` when `q = ∞`).
fn sample_abs(form: &SpectralForm, dy: f64, lo: i64, hi: i64, q: f64) -> Vec<f64> {
    if hi < lo {
        return Vec::new();
    }
    form.transform_grid(lo as f64 * dy, dy, (hi - lo + 1) as usize)
        .into_iter()
        .map(|z| if q.is_infinite() { z.norm() } else { z.norm().powf(q) })
        .collect()
}

fn sup_norm(form: &SpectralForm, lay: &Layout) -> NormResult {
    let n = lay.n_cap as i64;
    let vals = sample_abs(form, lay.dy, -n, n, f64::INFINITY);
    let best = polish_sup(|t| form.transform(t).norm(), &vals, -(n as f64) * lay.dy, lay.dy);
    NormResult {
        value: best,
        method: NormMethod::Duality,
        divergence_flag: false,
        windows: vec![WindowRecord {
            half_width: lay.n_cap as f64 * lay.dy,
            partial: best,
            increment: 0.0,
        }],
        caveats: vec![],
    }
}

fn windowed_integral(form: &SpectralForm, q: f64, lay: &Layout, cfg: &StarNormConfig) -> NormResult {
    let dy = lay.dy;
    // densities alone are cheapest sampled in one sweep
    let cap = lay.n_cap as i64;
    let full = (!form.has_singular_part()).then(|| sample_abs(form, dy, -cap, cap, q));
    let sample = |lo: i64, hi: i64| match &full {
        Some(v) => v[(lo + cap) as usize..=(hi + cap) as usize].to_vec(),
        None => sample_abs(form, dy, lo, hi, q),
    };
    // interior sum over |j| < n plus the two end samples
    let mut n = lay.n0;
    let first = sample(-(n as i64), n as i64);
    let mut interior: f64 = first[1..first.len() - 1].iter().sum();
    let mut ends = first[0] + first[first.len() - 1];
    let mut windows = vec![WindowRecord {
        half_width: n as f64 * dy,
        partial: dy * (interior + 0.5 * ends),
        increment: f64::NAN,
    }];
    let mut increments: Vec<f64> = Vec::new();
    let mut amplitude = f64::NAN;
    loop {
        let total = windows.last().unwrap().partial;
        let last_inc = increments.last().copied();
        if let Some(d) = last_inc {
            if d <= cfg.convergence_tol * total {
                return finish(total, windows, &increments, None, lay.periodic, q);
            }
        }
        if n >= lay.n_cap {
            // near the Nyquist frequency the sampled transform folds back,
            // so a periodic layout is judged on the resolved band below it
            let band = if lay.periodic {
                &increments[..increments.len().saturating_sub(2)]
            } else {
                &increments[..]
            };
            let ratio = mean_ratio(band);
            let rel = band.last().copied().unwrap_or(f64::INFINITY) / total;
            if !lay.periodic || q <= 1.0 {
                if let Some(r) = ratio {
                    if r > cfg.divergence_ratio && rel > cfg.divergence_floor {
                        return NormResult {
                            value: f64::INFINITY,
                            method: NormMethod::Duality,
                            divergence_flag: true,
                            windows,
                            caveats: vec![format!("partial integrals still growing at T = {:.4e} (increment ratio {r:.3})", n as f64 * dy)],
                        };
                    }
                }
            }
            let tail = (!lay.periodic).then_some((amplitude, n as f64 * dy));
            return finish(total, windows, &increments, tail, lay.periodic, q);
        }
        let m = (2 * n).min(lay.n_cap);
        let (n_i, m_i) = (n as i64, m as i64);
        let right = sample(n_i + 1, m_i);
        let left = sample(-m_i, -n_i - 1);
        // Hann-weighted mean of |μ̂(y)|^q (2π|y|)^q over the new band
        let band = right.len() as f64 + 1.0;
        let hann = |k: usize| (PI * (k as f64 + 1.0) / band).sin().powi(2);
        let (mut weighted, mut mass) = (0.0, 0.0);
        for (k, (r, l)) in right.iter().zip(left.iter().rev()).enumerate() {
            let y = (n_i + 1 + k as i64) as f64 * dy;
            weighted += hann(k) * (r + l) * (2.0 * PI * y).powf(q);
            mass += 2.0 * hann(k);
        }
        amplitude = weighted / mass;
        interior += ends;
        interior += right[..right.len() - 1].iter().sum::<f64>();
        interior += left[1..].iter().sum::<f64>();
        ends = right[right.len() - 1] + left[0];
        let partial = dy * (interior + 0.5 * ends);
        let inc = partial - total;
        increments.push(inc.max(0.0));
        windows.push(WindowRecord {
            half_width: m as f64 * dy,
            partial,
            increment: inc,
        });
        n = m;
    }
}

/// Geometric mean of the last three increment ratios.
fn mean_ratio(increments: &[f64]) -> Option<f64> {
    if increments.len() < 4 {
        return None;
    }
    let k = increments.len();
    let (a, b) = (increments[k - 4], increments[k - 1]);
    if a <= 0.0 {
        return Some(if b > 0.0 { f64::INFINITY } else { 0.0 });
    }
    Some((b / a).powf(1.0 / 3.0))
}

/// `tail = Some((M, T))` asks for a tail estimate beyond `T`. Increments
/// shrinking like `2^{1-q}` per doubling are read as `|μ̂(y)| ≈ M^{1/q}/(2π|y|)`
/// (jump discontinuities), whose tail `2M(2π)^{-q} T^{1-q}/(q-1)` is
/// added; faster decay is extrapolated geometrically.
fn finish(total: f64, windows: Vec<WindowRecord>, increments: &[f64], tail: Option<(f64, f64)>, periodic: bool, q: f64) -> NormResult {
    let mut caveats = vec![];
    let mut value = total;
    if let Some((amp, t)) = tail {
        if let (Some(r), Some(d)) = (mean_ratio(increments), increments.last()) {
            if q > 1.0 && amp.is_finite() && (r.log2() - (1.0 - q)).abs() < 0.15 {
                value += 2.0 * amp * (2.0 * PI).powf(-q) * t.powf(1.0 - q) / (q - 1.0);
                caveats.push(format!("algebraic tail |y|^(-{q}) extrapolated (increment ratio {r:.3})"));
            } else if r < 1.0 {
                value += d * r / (1.0 - r);
                caveats.push(format!("geometric tail extrapolated with ratio {r:.3}"));
            }
        }
    }
    if periodic {
        caveats.push("integrated over one full period of the sampled transform".into());
    }
    NormResult {
        value: value.powf(1.0 / q),
        method: NormMethod::Duality,
        divergence_flag: false,
        windows,
        caveats,
    }
}

/// Golden-section maximization of a unimodal-looking `f` on `[a, b]`.
/// Largest value of `f` given samples `vals[k] = f(y0 + k dy)`, refining
/// the 32 largest local maxima by golden-section search.
pub(crate) fn polish_sup<F: Fn(f64) -> f64 + Sync>(f: F, vals: &[f64], y0: f64, dy: f64) -> f64 {
    let n = vals.len();
    let mut peaks: Vec<usize> = (0..n)
        .filter(|&k| (k == 0 || vals[k] >= vals[k - 1]) && (k + 1 == n || vals[k] >= vals[k + 1]))
        .collect();
    peaks.sort_by(|&a, &b| vals[b].total_cmp(&vals[a]).then(a.cmp(&b)));
    peaks.truncate(32);
    peaks
        .par_iter()
        .map(|&k| {
            let y = y0 + k as f64 * dy;
            golden_max(&f, y - dy, y + dy, 60).1
        })
        .collect::<Vec<f64>>()
        .into_iter()
        .fold(vals.iter().copied().fold(0.0, f64::max), f64::max)
}

pub(crate) fn golden_max<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, iters: usize) -> (f64, f64) {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..iters {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    if fc >= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// `‖g‖_{Oₚ} = ∫ (x^{-1} ∫_x^{2x} |g|ᵖ)^{1/p} dx` over the geometric grid.
/// The inner average uses normalized trapezoid weights on `[x, 2x]` so the
/// integrand is a power mean and is monotone in `p` exactly.
pub fn op_norm(g: &GridFunction, p: ExponentPair, xrange: &LogGrid) -> Result<f64> {
    if p.p() <= 1.0 {
        return Err(Error::InvalidExponent(p.p()));
    }
    let xs = xrange.nodes();
    let samples: Vec<f64> = xs
        .par_iter()
        .map(|&x| {
            let m = (64usize).max(2 * (x / g.step).ceil() as usize + 1);
            let h = x / (m - 1) as f64;
            let vals = (0..m).map(|k| g.eval_or_zero(x + k as f64 * h).norm());
            if p.is_infinite() {
                vals.fold(0.0, f64::max)
            } else {
                let w = 1.0 / (m - 1) as f64;
                vals.enumerate()
                    .map(|(k, v)| if k == 0 || k == m - 1 { 0.5 * w } else { w } * v.powf(p.p()))
                    .sum::<f64>()
                    .powf(1.0 / p.p())
            }
        })
        .collect();
    Ok(xrange.integrate(&samples))
}

/// Per-block record of a `Vₚ*` computation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockNorm {
    pub x: f64,
    #[serde(with = "crate::report::finite_or_string")]
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VpStarResult {
    pub norm: NormResult,
    pub blocks: Vec<BlockNorm>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub divergent_block: Option<f64>,
}

/// `‖χ_{[x,2x)} μ‖ₚ*` for every node `x` of the grid.
pub fn block_norms(mu: &Measure, p: ExponentPair, xrange: &LogGrid, stop_on_divergence: bool) -> Result<Vec<BlockNorm>> {
    let mut out = Vec::with_capacity(xrange.points);
    for x in xrange.nodes() {
        let block = mu.restrict(&SetOfIntervals::interval(x, 2.0 * x)?);
        let value = if block.support_hull().is_none() { 0.0 } else { star_norm(&block, p)?.value };
        out.push(BlockNorm { x, value });
        if stop_on_divergence && !value.is_finite() {
            break;
        }
    }
    Ok(out)
}

/// `‖f‖_{Vₚ*} = ∫ x^{-1/p} ‖χ_{(x,2x)} μ_f‖ₚ* dx` on the geometric grid.
/// The first divergent block makes the whole norm `+∞` and is reported.
pub fn vp_star_norm(f: &BVFunction, p: ExponentPair, xrange: &LogGrid) -> Result<VpStarResult> {
    if p.p() <= 1.0 {
        return Err(Error::InvalidExponent(p.p()));
    }
    let blocks = block_norms(f.derivative_measure(), p, xrange, true)?;
    if let Some(bad) = blocks.iter().find(|b| !b.value.is_finite()) {
        return Ok(VpStarResult {
            norm: NormResult {
                value: f64::INFINITY,
                method: NormMethod::Duality,
                divergence_flag: true,
                windows: vec![],
                caveats: vec![format!("block [{:.4e}, {:.4e}) has infinite norm", bad.x, 2.0 * bad.x)],
            },
            divergent_block: Some(bad.x),
            blocks,
        });
    }
    let samples: Vec<f64> = blocks.iter().map(|b| b.x.powf(-p.reciprocal()) * b.value).collect();
    Ok(VpStarResult {
        norm: NormResult::exact(xrange.integrate(&samples), NormMethod::Quadrature),
        blocks,
        divergent_block: None,
    })
}
