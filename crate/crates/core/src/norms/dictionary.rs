//! Lower bounds for `‖μ‖ₚ*` from finite families of Gaussian test
//! functions: `|∫ ĝ dμ| ≤ ‖μ‖ₚ*` whenever `‖g‖_p ≤ 1`.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::golden_max;
use crate::exponent::ExponentPair;
use crate::measure::{Atom, Measure, POINT_EXPANSION_LEVELS};

/// `g(y) = A e^{-π((y-b)/s)²} e^{2πimy}` with `A` chosen so `‖g‖_p = 1`;
/// `ĝ(x) = A s e^{-πs²(x-m)²} e^{-2πib(x-m)}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DictionaryMember {
    pub amplitude: f64,
    pub scale: f64,
    pub shift: f64,
    pub modulation: f64,
}

impl DictionaryMember {
    pub fn normalized(scale: f64, shift: f64, modulation: f64, p: ExponentPair) -> Self {
        let amplitude = if p.is_infinite() { 1.0 } else { (scale / p.p().sqrt()).powf(-p.reciprocal()) };
        Self {
            amplitude,
            scale,
            shift,
            modulation,
        }
    }

    pub fn eval(&self, y: f64) -> Complex64 {
        let u = (y - self.shift) / self.scale;
        Complex64::from_polar(self.amplitude * (-PI * u * u).exp(), 2.0 * PI * self.modulation * y)
    }

    pub fn transform(&self, x: f64) -> Complex64 {
        let d = x - self.modulation;
        Complex64::from_polar(
            self.amplitude * self.scale * (-PI * self.scale * self.scale * d * d).exp(),
            -2.0 * PI * self.shift * d,
        )
    }
}

/// Parameter grid of the dictionary, relative to a base scale and centre.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dictionary {
    pub p: ExponentPair,
    pub dilations: Vec<f64>,
    pub shifts: Vec<f64>,
    pub modulation_points: usize,
    pub refine: bool,
    pub span_size: usize,
}

impl Dictionary {
    /// 5 dilations × 9 translations × 17 modulations, refined.
    pub fn gaussian(p: ExponentPair) -> Self {
        Self {
            p,
            dilations: vec![0.25, 0.5, 1.0, 2.0, 4.0],
            shifts: (0..9).map(|k| -2.0 + 0.5 * k as f64).collect(),
            modulation_points: 17,
            refine: true,
            span_size: 8,
        }
    }

    pub fn size(&self) -> usize {
        self.dilations.len() * self.shifts.len() * self.modulation_points
    }

    fn members(&self, base_scale: f64, hull: (f64, f64)) -> Vec<DictionaryMember> {
        let (lo, hi) = hull;
        let np = self.modulation_points.max(1);
        let mods: Vec<f64> = if np == 1 {
            vec![0.5 * (lo + hi)]
        } else {
            (0..np).map(|k| lo + (hi - lo) * k as f64 / (np - 1) as f64).collect()
        };
        let mut out = Vec::with_capacity(self.size());
        for &d in &self.dilations {
            let s = base_scale * d;
            for &b in &self.shifts {
                for &m in &mods {
                    out.push(DictionaryMember::normalized(s, b * base_scale, m, self.p));
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LowerBound {
    #[serde(with = "crate::report::finite_or_string")]
    pub value: f64,
    /// Best single member.
    #[serde(with = "crate::report::finite_or_string")]
    pub single: f64,
    pub best: Option<DictionaryMember>,
    pub evaluations: usize,
}

fn pairing(nodes: &[Atom], g: &DictionaryMember) -> Complex64 {
    nodes.iter().map(|a| a.weight * g.transform(a.position)).sum()
}

/// `max |∫ ĝ dμ|` over the dictionary, refined coordinate-wise by
/// golden-section search and then over spans of the best members.
pub fn star_norm_lower(mu: &Measure, p: ExponentPair, dict: &Dictionary) -> LowerBound {
    let dict = &Dictionary { p, ..dict.clone() };
    let form = mu.resampled(257).spectral_form();
    let nodes: Vec<Atom> = form
        .point_nodes(POINT_EXPANSION_LEVELS)
        .into_iter()
        .filter(|a| a.weight != Complex64::default())
        .collect();
    let Some(hull) = form.support_hull() else {
        return LowerBound {
            value: 0.0,
            single: 0.0,
            best: None,
            evaluations: 0,
        };
    };
    if nodes.is_empty() {
        return LowerBound {
            value: 0.0,
            single: 0.0,
            best: None,
            evaluations: 0,
        };
    }
    // spread of |μ| sets the scale of μ̂
    let mass: f64 = nodes.iter().map(|a| a.weight.norm()).sum();
    let mean = nodes.iter().map(|a| a.weight.norm() * a.position).sum::<f64>() / mass;
    let var = nodes.iter().map(|a| a.weight.norm() * (a.position - mean).powi(2)).sum::<f64>() / mass;
    let spread = var.sqrt() * (2.0 * PI).sqrt();
    let base_scale = if spread > 1e-12 { 1.0 / spread } else { 1.0 };
    let hull = if hull.1 - hull.0 > 1e-12 { hull } else { (hull.0 - 1.0, hull.1 + 1.0) };

    let members = dict.members(base_scale, hull);
    let mut scored: Vec<(f64, DictionaryMember)> = members.par_iter().map(|g| (pairing(&nodes, g).norm(), *g)).collect();
    let mut evaluations = scored.len();
    scored.sort_by(|a, b| b.0.total_cmp(&a.0));

    let dm = (hull.1 - hull.0) / (dict.modulation_points.max(2) - 1) as f64;
    let db = 0.5 * base_scale;
    if dict.refine {
        let refined: Vec<(f64, DictionaryMember, usize)> = scored
            .iter()
            .take(4)
            .map(|&(v, g)| refine(|g| pairing(&nodes, g).norm(), g, v, dict.p, db, dm))
            .collect();
        for (v, g, evals) in refined {
            evaluations += evals;
            scored.push((v, g));
        }
        scored.sort_by(|a, b| b.0.total_cmp(&a.0));
    }
    let (single, best) = scored[0];

    let (chosen, evals) = pursuit(&nodes, &scored, dict, db, dm);
    evaluations += evals;
    let span = span_bound(&nodes, &chosen, dict.p);
    LowerBound {
        value: single.max(span),
        single,
        best: Some(best),
        evaluations,
    }
}

fn refine(score: impl Fn(&DictionaryMember) -> f64, start: DictionaryMember, value: f64, p: ExponentPair, db: f64, dm: f64) -> (f64, DictionaryMember, usize) {
    let mut g = start;
    let mut best = value;
    let mut evals = 0;
    for _ in 0..2 {
        let (ls, b, m) = (g.scale.ln(), g.shift, g.modulation);
        let (t, v) = golden_max(|t| score(&DictionaryMember::normalized(t.exp(), b, m, p)), ls - 0.7, ls + 0.7, 30);
        evals += 32;
        if v > best {
            best = v;
            g = DictionaryMember::normalized(t.exp(), b, m, p);
        }
        let (s, m) = (g.scale, g.modulation);
        let (t, v) = golden_max(|t| score(&DictionaryMember::normalized(s, t, m, p)), b - db, b + db, 30);
        evals += 32;
        if v > best {
            best = v;
            g = DictionaryMember::normalized(s, t, m, p);
        }
        let b = g.shift;
        let (t, v) = golden_max(|t| score(&DictionaryMember::normalized(s, b, t, p)), m - dm, m + dm, 30);
        evals += 32;
        if v > best {
            best = v;
            g = DictionaryMember::normalized(s, b, t, p);
        }
    }
    (best, g, evals)
}

/// `∫ g₁ conj(g₂) dy`.
fn inner(a: &DictionaryMember, b: &DictionaryMember) -> Complex64 {
    let (ia, ib) = (a.scale.powi(-2), b.scale.powi(-2));
    let alpha = PI * (ia + ib);
    let beta = Complex64::new(2.0 * PI * (a.shift * ia + b.shift * ib), 2.0 * PI * (a.modulation - b.modulation));
    let gamma = -PI * (a.shift * a.shift * ia + b.shift * b.shift * ib);
    (beta * beta / (4.0 * alpha) + gamma).exp() * (a.amplitude * b.amplitude * (PI / alpha).sqrt())
}

/// `conj(μ̂)|μ̂|^{p'-2}` sampled on a grid, the shape of the optimal `g`.
struct DualTarget {
    lo: f64,
    dy: f64,
    phi: Vec<Complex64>,
}

impl DualTarget {
    fn new(nodes: &[Atom], pool: &[(DictionaryMember, Complex64)], exponent: f64) -> Self {
        let lo = pool.iter().map(|(g, _)| g.shift - 5.0 * g.scale).fold(f64::INFINITY, f64::min);
        let hi = pool.iter().map(|(g, _)| g.shift + 5.0 * g.scale).fold(f64::NEG_INFINITY, f64::max);
        let smin = pool.iter().map(|(g, _)| g.scale).fold(f64::INFINITY, f64::min);
        let xmax = nodes.iter().map(|a| a.position.abs()).fold(0.0, f64::max);
        let mmax = pool.iter().map(|(g, _)| g.modulation.abs()).fold(xmax, f64::max);
        let mut dy = smin / 8.0;
        if mmax > 0.0 {
            dy = dy.min(1.0 / (8.0 * mmax));
        }
        let n = (((hi - lo) / dy).ceil() as usize + 1).min(40_001);
        let dy = (hi - lo) / (n - 1) as f64;
        let phi = (0..n)
            .into_par_iter()
            .map(|i| {
                let y = lo + i as f64 * dy;
                let m: Complex64 = nodes.iter().map(|a| a.weight * Complex64::from_polar(1.0, -2.0 * PI * a.position * y)).sum();
                let r = m.norm();
                if r > 0.0 {
                    m.conj() * r.powf(exponent)
                } else {
                    Complex64::default()
                }
            })
            .collect();
        Self { lo, dy, phi }
    }

    /// `∫ φ conj(g) dy`.
    fn correlate(&self, g: &DictionaryMember) -> Complex64 {
        let n = self.phi.len();
        self.phi
            .iter()
            .enumerate()
            .map(|(i, f)| {
                let w = if i == 0 || i == n - 1 { 0.5 } else { 1.0 };
                f * g.eval(self.lo + i as f64 * self.dy).conj() * w
            })
            .sum::<Complex64>()
            * self.dy
    }
}

/// Orthogonal matching pursuit in `L²`: each step adds the member most
/// correlated with the residual `φ − P_span φ`, where `φ` is the dual
/// element `conj(μ̂)|μ̂|^{p'-2}` (`conj(μ̂)` when `p = 1`).
fn pursuit(nodes: &[Atom], scored: &[(f64, DictionaryMember)], dict: &Dictionary, db: f64, dm: f64) -> (Vec<DictionaryMember>, usize) {
    let pool: Vec<(DictionaryMember, Complex64)> = scored.par_iter().map(|&(_, g)| (g, pairing(nodes, &g))).collect();
    let mut evaluations = pool.len();
    let exponent = if dict.p.p() > 1.0 { dict.p.conjugate() - 2.0 } else { 0.0 };
    let target = (exponent != 0.0).then(|| DualTarget::new(nodes, &pool, exponent));
    let correlate = |g: &DictionaryMember, vg: Complex64| match &target {
        Some(t) => t.correlate(g),
        None => vg.conj(),
    };
    let pool: Vec<(DictionaryMember, Complex64)> = pool.par_iter().map(|&(g, vg)| (g, correlate(&g, vg))).collect();
    let first = pool
        .iter()
        .max_by(|a, b| (a.1.norm() / inner(&a.0, &a.0).re.sqrt()).total_cmp(&(b.1.norm() / inner(&b.0, &b.0).re.sqrt())))
        .unwrap();
    let scale = first.1.norm() / inner(&first.0, &first.0).re.sqrt();
    let mut chosen = vec![first.0];
    let mut b = vec![first.1];
    while chosen.len() < dict.span_size {
        let k = chosen.len();
        let gram = DMatrix::from_fn(k, k, |j, l| inner(&chosen[l], &chosen[j]));
        let rhs = DVector::from_column_slice(&b);
        let Ok(c) = gram.pseudo_inverse(1e-13).map(|h| h * rhs) else {
            break;
        };
        let residual = |g: &DictionaryMember, bg: Complex64| -> f64 {
            let proj: Complex64 = (0..k).map(|l| c[l] * inner(&chosen[l], g)).sum();
            (bg - proj).norm() / inner(g, g).re.sqrt()
        };
        let (mut best, mut g) = pool.iter().map(|&(g, bg)| (residual(&g, bg), g)).max_by(|a, b| a.0.total_cmp(&b.0)).unwrap();
        if dict.refine {
            let (r, h, e) = refine(|h| residual(h, correlate(h, pairing(nodes, h))), g, best, dict.p, db, dm);
            evaluations += e;
            (best, g) = (r, h);
        }
        if !(best > 1e-10 * scale) {
            break;
        }
        b.push(correlate(&g, pairing(nodes, &g)));
        chosen.push(g);
        evaluations += 1;
    }
    (chosen, evaluations)
}

/// Best ratio `|Σ c_j v_j| / ‖Σ c_j g_j‖_p` over the span of `chosen`,
/// `v_j = ∫ ĝ_j dμ`. Coefficients come from the Gram system `H c = v̄`,
/// reweighted by `|f|^{p-2}` for `p ≠ 2`.
fn span_bound(nodes: &[Atom], chosen: &[DictionaryMember], p: ExponentPair) -> f64 {
    let k = chosen.len();
    if k < 2 {
        return 0.0;
    }
    let v: Vec<Complex64> = chosen.iter().map(|g| pairing(nodes, g)).collect();

    // y-grid resolving every member
    let lo = chosen.iter().map(|g| g.shift - 6.0 * g.scale).fold(f64::INFINITY, f64::min);
    let hi = chosen.iter().map(|g| g.shift + 6.0 * g.scale).fold(f64::NEG_INFINITY, f64::max);
    let smin = chosen.iter().map(|g| g.scale).fold(f64::INFINITY, f64::min);
    let mmax = chosen.iter().map(|g| g.modulation.abs()).fold(0.0, f64::max);
    let mut dy = smin / 16.0;
    if mmax > 0.0 {
        dy = dy.min(1.0 / (16.0 * mmax));
    }
    let n = (((hi - lo) / dy).ceil() as usize + 1).min(200_001);
    let dy = (hi - lo) / (n - 1) as f64;
    let samples: Vec<Vec<Complex64>> = chosen.iter().map(|g| (0..n).map(|i| g.eval(lo + i as f64 * dy)).collect()).collect();
    let weight = |i: usize| if i == 0 || i == n - 1 { 0.5 * dy } else { dy };

    let combine = |c: &DVector<Complex64>| -> Vec<Complex64> { (0..n).map(|i| (0..k).map(|j| c[j] * samples[j][i]).sum()).collect() };
    let lp = |f: &[Complex64]| -> f64 {
        if p.is_infinite() {
            f.iter().map(|z| z.norm()).fold(0.0, f64::max)
        } else {
            f.iter()
                .enumerate()
                .map(|(i, z)| weight(i) * z.norm().powf(p.p()))
                .sum::<f64>()
                .powf(1.0 / p.p())
        }
    };
    let vbar = DVector::from_iterator(k, v.iter().map(|z| z.conj()));
    let mut w: Vec<f64> = vec![1.0; n];
    let mut best = 0.0;
    let iterations = if (p.p() - 2.0).abs() < 1e-12 { 1 } else { 12 };
    for _ in 0..iterations {
        // H_{jl} = ∫ w g_l conj(g_j)
        let h = DMatrix::from_fn(k, k, |j, l| {
            (0..n).map(|i| samples[l][i] * samples[j][i].conj() * (w[i] * weight(i))).sum::<Complex64>()
        });
        let Ok(c) = h.pseudo_inverse(1e-12).map(|hi| hi * &vbar) else {
            break;
        };
        let f = combine(&c);
        let norm = lp(&f);
        if !(norm > 0.0) {
            break;
        }
        let num: Complex64 = (0..k).map(|j| c[j] * v[j]).sum();
        best = f64::max(best, num.norm() / norm);
        if p.is_infinite() {
            break;
        }
        let fmax = f.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let eps = 1e-6 * fmax;
        w = f.iter().map(|z| (z.norm_sqr() + eps * eps).powf(0.5 * (p.p() - 2.0))).collect();
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{GridFunction, GridSpec};
    use crate::norms::lp_norm;

    #[test]
    fn members_have_unit_norm() {
        for p in [1.0, 1.5, 2.0, 4.0] {
            let p = ExponentPair::new(p).unwrap();
            for &(s, b, m) in &[(0.3, 0.5, -2.0), (1.0, 0.0, 0.0), (2.5, -1.0, 3.0)] {
                let g = DictionaryMember::normalized(s, b, m, p);
                let f = GridFunction::sample(GridSpec::linspace(-30.0, 30.0, 120_001).unwrap(), |y| g.eval(y));
                assert!((lp_norm(&f, p) - 1.0).abs() < 1e-10, "p = {}, s = {s}", p.p());
            }
        }
    }

    #[test]
    fn closed_form_transform_matches_quadrature() {
        let p = ExponentPair::new(2.0).unwrap();
        let g = DictionaryMember::normalized(0.7, 0.4, -1.3, p);
        let spec = GridSpec::linspace(-10.0, 10.0, 20_001).unwrap();
        for x in [-2.0, -1.3, 0.0, 0.8] {
            let q: Complex64 = spec.nodes().map(|y| g.eval(y) * Complex64::from_polar(spec.step, -2.0 * PI * x * y)).sum();
            assert!((q - g.transform(x)).norm() < 1e-10);
        }
    }

    #[test]
    fn delta_witness() {
        let p = ExponentPair::one();
        let lb = star_norm_lower(&Measure::delta(0.0), p, &Dictionary::gaussian(p));
        assert!(lb.value >= 0.99, "{}", lb.value);
        assert!(lb.value <= 1.0 + 1e-12);
    }

    #[test]
    fn zero_measure_gives_zero() {
        let p = ExponentPair::new(1.5).unwrap();
        assert_eq!(star_norm_lower(&Measure::zero(), p, &Dictionary::gaussian(p)).value, 0.0);
    }
}
