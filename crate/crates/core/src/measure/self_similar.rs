//! Self-similar probability measures generated by an iterated function
//! system `x -> ratio * x + t_j` chosen with probabilities `w_j`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intervals::SetOfIntervals;

use super::Atom;

/// Default recursion depth. For ratio 1/3 the level-18 cells have
/// diameter `3^-18 < 1e-8`.
pub const DEFAULT_DEPTH: u32 = 18;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelfSimilar {
    ratio: f64,
    translations: Vec<f64>,
    weights: Vec<f64>,
    window: (f64, f64),
    depth: u32,
}

/// An affine image `offset + scale * (base measure)` carrying `weight`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cell {
    pub weight: Complex64,
    pub offset: f64,
    pub scale: f64,
    pub level: u32,
}

impl SelfSimilar {
    pub fn new(ratio: f64, translations: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        if !(ratio > 0.0 && ratio < 1.0) {
            return Err(Error::InvalidMeasure(format!("ratio {ratio} not in (0,1)")));
        }
        if translations.is_empty() || translations.len() != weights.len() {
            return Err(Error::InvalidMeasure("translations and weights must be non-empty and of equal length".into()));
        }
        if weights.iter().any(|w| !(*w >= 0.0)) || translations.iter().any(|t| !t.is_finite()) {
            return Err(Error::InvalidMeasure("weights must be nonnegative, translations finite".into()));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidMeasure(format!("weights sum to {total}, expected 1")));
        }
        let lo = translations.iter().cloned().fold(f64::INFINITY, f64::min) / (1.0 - ratio);
        let hi = translations.iter().cloned().fold(f64::NEG_INFINITY, f64::max) / (1.0 - ratio);
        Ok(Self {
            ratio,
            translations,
            weights,
            window: (lo, hi),
            depth: DEFAULT_DEPTH,
        })
    }

    /// The middle-thirds Cantor measure on `[0, 1]`.
    pub fn cantor() -> Self {
        Self::new(1.0 / 3.0, vec![0.0, 2.0 / 3.0], vec![0.5, 0.5]).expect("valid IFS")
    }

    pub fn with_depth(mut self, depth: u32) -> Self {
        self.depth = depth.max(1);
        self
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn ratio(&self) -> f64 {
        self.ratio
    }

    pub fn translations(&self) -> &[f64] {
        &self.translations
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Convex hull of the attractor.
    pub fn window(&self) -> (f64, f64) {
        self.window
    }

    pub fn diameter(&self) -> f64 {
        self.window.1 - self.window.0
    }

    /// Mean of the measure, the fixed point of `c = Σ w_j (ratio c + t_j)`.
    pub fn barycenter(&self) -> f64 {
        self.weights.iter().zip(&self.translations).map(|(w, t)| w * t).sum::<f64>() / (1.0 - self.ratio)
    }

    /// Largest distance from the barycenter to the attractor.
    pub fn radius(&self) -> f64 {
        let c = self.barycenter();
        (c - self.window.0).max(self.window.1 - c)
    }

    pub(crate) fn symbol(&self, y: f64) -> Complex64 {
        self.weights
            .iter()
            .zip(&self.translations)
            .map(|(w, t)| Complex64::from_polar(*w, -2.0 * PI * t * y))
            .sum()
    }

    /// `μ̂(y)` from the self-similarity `μ̂(y) = m(y) μ̂(ratio y)`, truncated
    /// after `depth` factors with the remaining measure replaced by a point
    /// mass at its barycenter.
    pub fn transform(&self, y: f64) -> Complex64 {
        let mut acc = Complex64::new(1.0, 0.0);
        let mut z = y;
        for _ in 0..self.depth {
            acc *= self.symbol(z);
            z *= self.ratio;
        }
        acc * Complex64::from_polar(1.0, -2.0 * PI * self.barycenter() * z)
    }

    /// Bound on `|μ̂(y) - transform(y)|`.
    pub fn transform_error(&self, y: f64) -> f64 {
        let z = (y * self.ratio.powi(self.depth as i32)).abs();
        let r = self.radius();
        (2.0 * PI * z * r).min(2.0 * PI * PI * z * z * r * r)
    }

    pub fn root_cell(&self, weight: Complex64) -> Cell {
        Cell {
            weight,
            offset: 0.0,
            scale: 1.0,
            level: 0,
        }
    }

    fn children(&self, cell: &Cell) -> impl Iterator<Item = Cell> + '_ {
        let cell = *cell;
        self.translations.iter().zip(&self.weights).filter(|(_, w)| **w > 0.0).map(move |(t, w)| Cell {
            weight: cell.weight * *w,
            offset: cell.offset + cell.scale * t,
            scale: cell.scale * self.ratio,
            level: cell.level + 1,
        })
    }

    pub fn cell_hull(&self, cell: &Cell) -> (f64, f64) {
        (cell.offset + cell.scale * self.window.0, cell.offset + cell.scale * self.window.1)
    }

    pub fn cell_barycenter(&self, cell: &Cell) -> f64 {
        cell.offset + cell.scale * self.barycenter()
    }

    /// Decomposes `χ_E μ` into maximal cells contained in `E`. Cells that
    /// still straddle the boundary at `depth` become barycenter atoms when
    /// the barycenter lies in `E` (half-open membership).
    pub fn restrict_cells(&self, weight: Complex64, set: &SetOfIntervals) -> (Vec<Cell>, Vec<Atom>) {
        let mut cells = Vec::new();
        let mut atoms = Vec::new();
        let mut stack = vec![self.root_cell(weight)];
        while let Some(cell) = stack.pop() {
            let (lo, hi) = self.cell_hull(&cell);
            if set.disjoint_from(lo, hi) {
                continue;
            }
            if set.contains_interval(lo, hi) {
                cells.push(cell);
            } else if cell.level >= self.depth {
                let c = self.cell_barycenter(&cell);
                if set.contains(c) {
                    atoms.push(Atom::new(c, cell.weight));
                }
            } else {
                stack.extend(self.children(&cell));
            }
        }
        // deterministic order independent of traversal
        cells.sort_by(|a, b| a.offset.total_cmp(&b.offset).then(a.level.cmp(&b.level)));
        atoms.sort_by(|a, b| a.position.total_cmp(&b.position));
        (cells, atoms)
    }

    /// Replaces `cell` by barycenter atoms of its sub-cells `levels` deeper.
    pub fn expand_cell(&self, cell: &Cell, levels: u32) -> Vec<Atom> {
        let mut current = vec![*cell];
        for _ in 0..levels {
            current = current.iter().flat_map(|c| self.children(c)).collect();
        }
        current.iter().map(|c| Atom::new(self.cell_barycenter(c), c.weight)).collect()
    }

    /// `μ((t, ∞))` (or `μ([t, ∞))` when `inclusive`) for the measure scaled
    /// into `cell`.
    pub fn mass_above(&self, cell: &Cell, t: f64, inclusive: bool) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut stack = vec![*cell];
        while let Some(c) = stack.pop() {
            let (lo, hi) = self.cell_hull(&c);
            if lo > t {
                acc += c.weight;
            } else if hi < t || (hi == t && !inclusive) {
                continue;
            } else if c.level >= self.depth {
                let b = self.cell_barycenter(&c);
                if b > t || (inclusive && b == t) {
                    acc += c.weight;
                }
            } else {
                stack.extend(self.children(&c));
            }
        }
        acc
    }
}

/// Closed-form Cantor kernel `e^{-πiy} ∏_{k=1}^{depth} cos(2πy/3^k)` and the
/// bound `(2πy)^2 3^{-2 depth} / 4` on the neglected tail factor.
pub fn cantor_product(y: f64, depth: u32) -> (Complex64, f64) {
    let depth = depth.max(1);
    let mut prod = 1.0;
    let mut z = y;
    for _ in 0..depth {
        z /= 3.0;
        prod *= (2.0 * PI * z).cos();
    }
    let bound = (2.0 * PI * y).powi(2) * 3f64.powi(-2 * depth as i32) / 4.0;
    (Complex64::from_polar(prod, -PI * y), bound)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cantor_window_and_barycenter() {
        let c = SelfSimilar::cantor();
        let (lo, hi) = c.window();
        assert!(lo == 0.0 && (hi - 1.0).abs() < 1e-15);
        assert!((c.barycenter() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_weights() {
        assert!(SelfSimilar::new(0.5, vec![0.0, 1.0], vec![0.5, 0.6]).is_err());
        assert!(SelfSimilar::new(1.5, vec![0.0], vec![1.0]).is_err());
    }

    #[test]
    fn general_transform_matches_cantor_product() {
        let c = SelfSimilar::cantor();
        for y in [0.0, 0.3, 1.0, 4.5, 27.0, 100.25] {
            let (closed, _) = cantor_product(y, c.depth());
            assert!((c.transform(y) - closed).norm() < 1e-12, "y = {y}");
        }
    }

    #[test]
    fn cantor_product_at_zero_is_one() {
        for d in [1, 5, 18] {
            assert!((cantor_product(0.0, d).0 - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn restricted_cells_partition_mass() {
        let c = SelfSimilar::cantor();
        let full = SetOfIntervals::interval(-1.0, 2.0).unwrap();
        let (cells, atoms) = c.restrict_cells(Complex64::new(1.0, 0.0), &full);
        assert_eq!(cells.len(), 1);
        assert!(atoms.is_empty());
        let half = SetOfIntervals::interval(0.25, 0.5).unwrap();
        let (cells, atoms) = c.restrict_cells(Complex64::new(1.0, 0.0), &half);
        let mass: f64 = cells.iter().map(|c| c.weight.re).sum::<f64>() + atoms.iter().map(|a| a.weight.re).sum::<f64>();
        // C(1/2) - C(1/4) = 1/2 - 1/3
        assert!((mass - (0.5 - 1.0 / 3.0)).abs() < 1e-5, "mass {mass}");
    }

    #[test]
    fn mass_above_is_staircase() {
        let c = SelfSimilar::cantor();
        let root = c.root_cell(Complex64::new(1.0, 0.0));
        assert!((c.mass_above(&root, 0.5, false).re - 0.5).abs() < 1e-12);
        assert!((c.mass_above(&root, 0.25, false).re - 2.0 / 3.0).abs() < 1e-5);
        assert!((c.mass_above(&root, -1.0, false).re - 1.0).abs() < 1e-15);
        assert!(c.mass_above(&root, 1.0, false).re.abs() < 1e-15);
    }
}
