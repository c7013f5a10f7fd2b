//! Flattened representation of a (restricted) measure that supports fast
//! evaluation of `∫ h dμ` and `μ̂(y)`.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;

use super::self_similar::{Cell, SelfSimilar};
use super::Atom;

/// Density samples on a uniform grid with trapezoid weights folded in.
/// When `interpolant` is set the block stands for the piecewise-linear
/// interpolant of its samples, cut at both ends, and is transformed
/// exactly; otherwise the samples are treated as a smooth, decayed density
/// and transformed by the trapezoid sum.
#[derive(Debug, Clone, PartialEq)]
pub struct UniformBlock {
    pub start: f64,
    pub step: f64,
    pub coeffs: Vec<Complex64>,
    pub interpolant: bool,
}

/// Longest FFT used for grid evaluation of a block.
const MAX_FFT: usize = 1 << 22;

/// `∫_0^h (1 - u/h) e^{iωu} du`.
fn half_hat(omega: f64, h: f64) -> Complex64 {
    let t = omega * h;
    if t.abs() < 1e-3 {
        return Complex64::new(h * (0.5 - t * t / 24.0), h * t / 6.0);
    }
    Complex64::new(0.0, 1.0 / omega) - (Complex64::from_polar(1.0, t) - 1.0) / (h * omega * omega)
}

impl UniformBlock {
    fn trapezoid_sum(&self, y: f64) -> Complex64 {
        let z = Complex64::from_polar(1.0, -2.0 * PI * self.step * y);
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc * Complex64::from_polar(1.0, -2.0 * PI * self.start * y)
    }

    /// Trapezoid sums at `y0 + j dy`, `j < len`, by one FFT when the grid
    /// is commensurate with the block (`1/(h dy)` an integer) and the FFT
    /// is cheaper than direct summation.
    fn trapezoid_grid(&self, y0: f64, dy: f64, len: usize) -> Option<Vec<Complex64>> {
        let n = self.coeffs.len();
        let inv = 1.0 / (self.step * dy);
        let m = inv.round();
        if !(m >= 1.0 && m <= MAX_FFT as f64) || (inv - m).abs() > 1e-9 * inv {
            return None;
        }
        let m = m as usize;
        if (len as f64) * (n as f64) < 4.0 * m as f64 * (m as f64).log2().max(1.0) {
            return None;
        }
        let mut buf = vec![Complex64::default(); m];
        for (k, c) in self.coeffs.iter().enumerate() {
            buf[k % m] += c * Complex64::from_polar(1.0, -2.0 * PI * k as f64 * self.step * y0);
        }
        FftPlanner::new().plan_fft_forward(m).process(&mut buf);
        Some(
            (0..len)
                .map(|j| {
                    let y = y0 + j as f64 * dy;
                    buf[j % m] * Complex64::from_polar(1.0, -2.0 * PI * self.start * y)
                })
                .collect(),
        )
    }

    fn transform(&self, y: f64) -> Complex64 {
        self.finish_trapezoid(y, self.trapezoid_sum(y))
    }

    fn finish_trapezoid(&self, y: f64, trapezoid: Complex64) -> Complex64 {
        let n = self.coeffs.len();
        if !self.interpolant || n < 2 {
            return trapezoid;
        }
        let h = self.step;
        let omega = 2.0 * PI * y;
        let end = self.start + (n - 1) as f64 * h;
        let e0 = Complex64::from_polar(1.0, -omega * self.start);
        let e1 = Complex64::from_polar(1.0, -omega * end);
        // Σ g_k e_k with g_k = c_k / w_k
        let (c0, c1) = (self.coeffs[0], self.coeffs[n - 1]);
        let samples = (trapezoid + c0 * e0 + c1 * e1) / h;
        let t = PI * h * y;
        let sinc2 = if t.abs() < 1e-4 { 1.0 - t * t / 3.0 } else { (t.sin() / t).powi(2) };
        let (g0, g1) = (c0 * (2.0 / h), c1 * (2.0 / h));
        samples * (h * sinc2) - g0 * e0 * half_hat(omega, h) - g1 * e1 * half_hat(-omega, h)
    }

    fn nodes(&self) -> impl Iterator<Item = Atom> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(k, c)| Atom::new(self.start + k as f64 * self.step, *c))
    }
}

/// `Σ_cells w e^{-2πi offset y} μ̂(ratio^level y)`. All cells share one
/// absolute truncation level `max_level + depth`, so the symbol factors
/// `m(ratio^i y)` are computed once and reused through suffix products.
fn group_transform(g: &CellGroup, y: f64) -> Complex64 {
    let Some(max_level) = g.cells.iter().map(|c| c.level).max() else {
        return Complex64::default();
    };
    let min_level = g.cells.iter().map(|c| c.level).min().unwrap_or(0);
    let base = &g.base;
    let end = max_level + base.depth();
    let r = base.ratio();
    // suffix[i - min_level] = ∏_{k=i}^{end-1} m(r^k y) · e^{-2πi b r^end y}
    let len = (end - min_level) as usize;
    let mut suffix = vec![Complex64::default(); len + 1];
    let z_end = y * r.powi(end as i32);
    suffix[len] = Complex64::from_polar(1.0, -2.0 * PI * base.barycenter() * z_end);
    let mut z = z_end;
    for i in (0..len).rev() {
        z /= r;
        suffix[i] = suffix[i + 1] * base.symbol(z);
    }
    g.cells
        .iter()
        .map(|c| c.weight * Complex64::from_polar(1.0, -2.0 * PI * c.offset * y) * suffix[(c.level - min_level) as usize])
        .sum()
}

/// Cells of one self-similar base measure.
#[derive(Debug, Clone)]
pub struct CellGroup {
    pub base: Arc<SelfSimilar>,
    pub cells: Vec<Cell>,
}

/// `μ = Σ atoms + Σ density quadrature nodes + Σ self-similar cells`.
#[derive(Debug, Clone, Default)]
pub struct SpectralForm {
    /// Genuine point masses.
    pub atoms: Vec<Atom>,
    pub blocks: Vec<UniformBlock>,
    pub cell_groups: Vec<CellGroup>,
}

impl SpectralForm {
    pub fn is_zero(&self) -> bool {
        self.atoms.iter().all(|a| a.weight == Complex64::default())
            && self.blocks.iter().all(|b| b.coeffs.iter().all(|c| *c == Complex64::default()))
            && self.cell_groups.iter().all(|g| g.cells.is_empty())
    }

    /// Only smooth density samples: the transform is then the band-limited
    /// interpolant of the samples, meaningful up to the Nyquist frequency.
    pub fn is_pure_density(&self) -> bool {
        self.atoms.is_empty() && self.cell_groups.iter().all(|g| g.cells.is_empty()) && self.blocks.iter().all(|b| !b.interpolant)
    }

    pub fn has_singular_part(&self) -> bool {
        !self.atoms.is_empty() || self.cell_groups.iter().any(|g| !g.cells.is_empty())
    }

    /// Nyquist frequency of the coarsest trapezoid block, if any.
    pub fn nyquist(&self) -> Option<f64> {
        self.blocks
            .iter()
            .filter(|b| !b.coeffs.is_empty() && !b.interpolant)
            .map(|b| 0.5 / b.step)
            .reduce(f64::min)
    }

    /// `μ̂(y) = ∫ e^{-2πixy} dμ(x)`.
    pub fn transform(&self, y: f64) -> Complex64 {
        let point = |a: &Atom| a.weight * Complex64::from_polar(1.0, -2.0 * PI * a.position * y);
        let mut acc: Complex64 = self.atoms.iter().map(point).sum();
        acc += self.blocks.iter().map(|b| b.transform(y)).sum::<Complex64>();
        for g in &self.cell_groups {
            acc += group_transform(g, y);
        }
        acc
    }

    /// `μ̂(y0 + j dy)` for `j < len`.
    pub fn transform_grid(&self, y0: f64, dy: f64, len: usize) -> Vec<Complex64> {
        let point = |a: &Atom, y: f64| a.weight * Complex64::from_polar(1.0, -2.0 * PI * a.position * y);
        let fast: Vec<Option<Vec<Complex64>>> = self.blocks.iter().map(|b| b.trapezoid_grid(y0, dy, len)).collect();
        (0..len)
            .into_par_iter()
            .map(|j| {
                let y = y0 + j as f64 * dy;
                let mut acc: Complex64 = self.atoms.iter().map(|a| point(a, y)).sum();
                for (b, f) in self.blocks.iter().zip(&fast) {
                    acc += match f {
                        Some(t) => b.finish_trapezoid(y, t[j]),
                        None => b.transform(y),
                    };
                }
                for g in &self.cell_groups {
                    acc += group_transform(g, y);
                }
                acc
            })
            .collect()
    }

    /// Bound on the truncation error of [`SpectralForm::transform`] coming
    /// from the self-similar parts.
    pub fn transform_error(&self, y: f64) -> f64 {
        self.cell_groups
            .iter()
            .flat_map(|g| g.cells.iter().map(move |c| c.weight.norm() * g.base.transform_error(c.scale * y)))
            .sum()
    }

    /// Every part as weighted points; cells are replaced by barycenter atoms
    /// `levels` generations deeper (capped at each base's depth).
    pub fn point_nodes(&self, levels: u32) -> Vec<Atom> {
        let mut out = self.atoms.clone();
        for b in &self.blocks {
            out.extend(b.nodes());
        }
        for g in &self.cell_groups {
            for c in &g.cells {
                let l = levels.min(g.base.depth().saturating_sub(c.level));
                out.extend(g.base.expand_cell(c, l));
            }
        }
        out
    }

    /// `Σ |w| · diam` over the cells after expanding `levels` generations:
    /// multiplied by a Lipschitz constant this bounds the error of
    /// replacing each cell by its barycenter.
    pub fn cell_spread(&self, levels: u32) -> f64 {
        self.cell_groups
            .iter()
            .flat_map(|g| {
                g.cells.iter().map(move |c| {
                    let l = levels.min(g.base.depth().saturating_sub(c.level));
                    c.weight.norm() * c.scale * g.base.ratio().powi(l as i32) * g.base.diameter()
                })
            })
            .sum()
    }

    /// Convex hull of the points carrying nonzero mass.
    pub fn support_hull(&self) -> Option<(f64, f64)> {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        let mut take = |x: f64| {
            lo = lo.min(x);
            hi = hi.max(x);
        };
        for a in &self.atoms {
            if a.weight != Complex64::default() {
                take(a.position);
            }
        }
        for b in &self.blocks {
            let first = b.coeffs.iter().position(|c| *c != Complex64::default());
            let last = b.coeffs.iter().rposition(|c| *c != Complex64::default());
            if let (Some(i), Some(j)) = (first, last) {
                take(b.start + i as f64 * b.step);
                take(b.start + j as f64 * b.step);
            }
        }
        for g in &self.cell_groups {
            for c in &g.cells {
                let (a, b) = g.base.cell_hull(c);
                take(a);
                take(b);
            }
        }
        (lo <= hi).then_some((lo, hi))
    }
}
