//! Complex measures on the real line: atomic, absolutely continuous with a
//! sampled density, self-similar, and finite linear combinations of these,
//! each optionally restricted to a finite union of intervals.

mod self_similar;
mod spectral;

use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{GridFunction, GridSpec};
use crate::intervals::SetOfIntervals;

pub use self_similar::{cantor_product, Cell, SelfSimilar, DEFAULT_DEPTH};
pub use spectral::{CellGroup, SpectralForm, UniformBlock};

/// Levels used when a self-similar part must be replaced by point masses
/// for products and convolutions (`2^14` atoms for the Cantor measure).
pub const POINT_EXPANSION_LEVELS: u32 = 14;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    pub position: f64,
    pub weight: Complex64,
}

impl Atom {
    pub fn new(position: f64, weight: Complex64) -> Self {
        Self { position, weight }
    }

    pub fn real(position: f64, weight: f64) -> Self {
        Self::new(position, Complex64::new(weight, 0.0))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum MeasureKind {
    Atomic(Vec<Atom>),
    /// `dμ = g dx` with `g` the linear interpolant of the samples.
    Density(GridFunction),
    SelfSimilar(SelfSimilar),
    Sum(Vec<(Complex64, Measure)>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Measure {
    kind: MeasureKind,
    restriction: Option<SetOfIntervals>,
}

/// Total variation with a flag telling whether it is exact or only an
/// upper bound (sums whose terms may cancel).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TotalVariation {
    pub value: f64,
    pub exact: bool,
}

/// `∫ h dμ` with a bound on the self-similar truncation error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: Complex64,
    pub error_bound: f64,
}

impl Measure {
    pub fn new(kind: MeasureKind) -> Result<Self> {
        if let MeasureKind::Atomic(atoms) = &kind {
            if atoms
                .iter()
                .any(|a| !a.position.is_finite() || !a.weight.re.is_finite() || !a.weight.im.is_finite())
            {
                return Err(Error::InvalidMeasure("atoms must have finite positions and weights".into()));
            }
        }
        if let MeasureKind::Sum(terms) = &kind {
            if terms.iter().any(|(c, _)| !c.re.is_finite() || !c.im.is_finite()) {
                return Err(Error::InvalidMeasure("non-finite sum coefficient".into()));
            }
        }
        Ok(Self { kind, restriction: None })
    }

    pub fn zero() -> Self {
        Self::from_kind(MeasureKind::Atomic(vec![]))
    }

    fn from_kind(kind: MeasureKind) -> Self {
        Self { kind, restriction: None }
    }

    pub fn delta(a: f64) -> Self {
        Self::from_kind(MeasureKind::Atomic(vec![Atom::real(a, 1.0)]))
    }

    pub fn atoms(atoms: Vec<Atom>) -> Result<Self> {
        Self::new(MeasureKind::Atomic(atoms))
    }

    pub fn density(g: GridFunction) -> Self {
        Self::from_kind(MeasureKind::Density(g))
    }

    /// Lebesgue measure seen through the window of `spec`.
    pub fn lebesgue(spec: GridSpec) -> Self {
        Self::density(GridFunction::sample_real(spec, |_| 1.0))
    }

    /// `dμ = amplitude · e^{-π((x-center)/scale)^2} dx`.
    pub fn gaussian(center: f64, scale: f64, amplitude: Complex64, spec: GridSpec) -> Self {
        Self::density(GridFunction::sample(spec, |x| {
            let u = (x - center) / scale;
            amplitude * (-std::f64::consts::PI * u * u).exp()
        }))
    }

    pub fn self_similar(ss: SelfSimilar) -> Self {
        Self::from_kind(MeasureKind::SelfSimilar(ss))
    }

    pub fn cantor() -> Self {
        Self::self_similar(SelfSimilar::cantor())
    }

    pub fn sum(terms: Vec<(Complex64, Measure)>) -> Result<Self> {
        Self::new(MeasureKind::Sum(terms))
    }

    pub fn kind(&self) -> &MeasureKind {
        &self.kind
    }

    pub fn restriction(&self) -> Option<&SetOfIntervals> {
        self.restriction.as_ref()
    }

    /// `c · μ`.
    pub fn scaled(&self, c: Complex64) -> Self {
        Self::from_kind(MeasureKind::Sum(vec![(c, self.clone())]))
    }

    /// `μ + ν`.
    pub fn plus(&self, other: &Measure) -> Self {
        let one = Complex64::new(1.0, 0.0);
        Self::from_kind(MeasureKind::Sum(vec![(one, self.clone()), (one, other.clone())]))
    }

    /// Self-similar parts re-created with recursion depth `depth`.
    pub fn with_depth(&self, depth: u32) -> Self {
        let kind = match &self.kind {
            MeasureKind::SelfSimilar(ss) => MeasureKind::SelfSimilar(ss.clone().with_depth(depth)),
            MeasureKind::Sum(terms) => MeasureKind::Sum(terms.iter().map(|(c, m)| (*c, m.with_depth(depth))).collect()),
            other => other.clone(),
        };
        Self {
            kind,
            restriction: self.restriction.clone(),
        }
    }

    /// Image of `μ` under `x ↦ x / λ`, so that `f(λ·)` has derivative
    /// measure `μ_f.dilated(λ)`.
    pub fn dilated(&self, lambda: f64) -> Result<Measure> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::InvalidMeasure(format!("dilation factor {lambda} must be positive")));
        }
        let kind = match &self.kind {
            MeasureKind::Atomic(atoms) => MeasureKind::Atomic(atoms.iter().map(|a| Atom::new(a.position / lambda, a.weight)).collect()),
            MeasureKind::Density(g) => MeasureKind::Density(GridFunction::new(
                g.start / lambda,
                g.step / lambda,
                g.values.iter().map(|v| v * lambda).collect(),
            )?),
            MeasureKind::SelfSimilar(ss) => MeasureKind::SelfSimilar(
                SelfSimilar::new(ss.ratio(), ss.translations().iter().map(|t| t / lambda).collect(), ss.weights().to_vec())?.with_depth(ss.depth()),
            ),
            MeasureKind::Sum(terms) => MeasureKind::Sum(terms.iter().map(|(c, m)| Ok((*c, m.dilated(lambda)?))).collect::<Result<Vec<_>>>()?),
        };
        let restriction = match &self.restriction {
            Some(r) => Some(SetOfIntervals::from_intervals(
                r.intervals().iter().map(|(a, b)| (a / lambda, b / lambda)).collect(),
            )?),
            None => None,
        };
        Ok(Self { kind, restriction })
    }

    /// `χ_E μ`. Restricting twice restricts to the intersection.
    pub fn restrict(&self, set: &SetOfIntervals) -> Measure {
        let restriction = match &self.restriction {
            Some(r) => r.intersect(set),
            None => set.clone(),
        };
        Self {
            kind: self.kind.clone(),
            restriction: Some(restriction),
        }
    }

    /// Flattened form with restrictions applied.
    pub fn spectral_form(&self) -> SpectralForm {
        let mut form = SpectralForm::default();
        self.flatten_into(Complex64::new(1.0, 0.0), None, &mut form);
        form
    }

    fn flatten_into(&self, coeff: Complex64, outer: Option<&SetOfIntervals>, form: &mut SpectralForm) {
        let combined = combine(self.restriction.as_ref(), outer);
        let set = combined.as_ref();
        match &self.kind {
            MeasureKind::Atomic(atoms) => {
                form.atoms.extend(
                    atoms
                        .iter()
                        .filter(|a| set.is_none_or(|e| e.contains(a.position)))
                        .map(|a| Atom::new(a.position, a.weight * coeff)),
                );
            }
            MeasureKind::Density(g) => density_into(g, coeff, set, form),
            MeasureKind::SelfSimilar(ss) => {
                let base = Arc::new(ss.clone());
                let cells = match set {
                    None => vec![ss.root_cell(coeff)],
                    Some(e) => {
                        let (cells, atoms) = ss.restrict_cells(coeff, e);
                        form.atoms.extend(atoms);
                        cells
                    }
                };
                form.cell_groups.push(CellGroup { base, cells });
            }
            MeasureKind::Sum(terms) => {
                for (c, m) in terms {
                    m.flatten_into(coeff * c, set, form);
                }
            }
        }
    }

    /// Leaves of the sum tree with coefficients multiplied out and
    /// restrictions pushed down to the leaves.
    fn leaves(&self, coeff: Complex64, outer: Option<&SetOfIntervals>, out: &mut Vec<(Complex64, Measure)>) {
        let combined = combine(self.restriction.as_ref(), outer);
        match &self.kind {
            MeasureKind::Sum(terms) => {
                for (c, m) in terms {
                    m.leaves(coeff * c, combined.as_ref(), out);
                }
            }
            kind => out.push((
                coeff,
                Measure {
                    kind: kind.clone(),
                    restriction: combined,
                },
            )),
        }
    }

    /// Canonical form: a flat sum whose atomic leaves are merged into a
    /// single atomic term (equal positions combined, zero weights dropped).
    pub fn normalized(&self) -> Measure {
        let mut leaves = Vec::new();
        self.leaves(Complex64::new(1.0, 0.0), None, &mut leaves);
        let mut atoms: Vec<Atom> = Vec::new();
        let mut rest: Vec<(Complex64, Measure)> = Vec::new();
        let mut saw_atomic = false;
        for (c, leaf) in leaves {
            if c == Complex64::default() {
                continue;
            }
            match &leaf.kind {
                MeasureKind::Atomic(list) => {
                    saw_atomic = true;
                    atoms.extend(
                        list.iter()
                            .filter(|a| leaf.restriction.as_ref().is_none_or(|e| e.contains(a.position)))
                            .map(|a| Atom::new(a.position, a.weight * c)),
                    );
                }
                _ => rest.push((c, leaf)),
            }
        }
        let atoms = merge_atoms(atoms);
        let mut terms = Vec::new();
        if !atoms.is_empty() || (saw_atomic && rest.is_empty()) {
            terms.push((Complex64::new(1.0, 0.0), Self::from_kind(MeasureKind::Atomic(atoms))));
        }
        terms.extend(rest);
        match terms.len() {
            0 => Self::zero(),
            1 if terms[0].0 == Complex64::new(1.0, 0.0) => terms.pop().unwrap().1,
            _ => Self::from_kind(MeasureKind::Sum(terms)),
        }
    }

    /// The same measure with every restricted density replaced by
    /// unrestricted densities sampled afresh on each piece of its
    /// restriction, with at least `min_points` nodes per piece and never
    /// coarser than the original grid. The linear interpolant is preserved
    /// at the new nodes, so short pieces stay resolved.
    pub fn resampled(&self, min_points: usize) -> Measure {
        let mut leaves = Vec::new();
        self.leaves(Complex64::new(1.0, 0.0), None, &mut leaves);
        let mut terms = Vec::with_capacity(leaves.len());
        for (c, leaf) in leaves {
            match (&leaf.kind, &leaf.restriction) {
                (MeasureKind::Density(g), Some(set)) => {
                    let (start, end) = g.window();
                    for &(a, b) in set.intervals() {
                        let lo = a.max(start);
                        let hi = b.min(end);
                        if !(hi > lo) {
                            continue;
                        }
                        let piece = piece_samples(g, lo, hi, min_points);
                        let whole = SetOfIntervals::interval(lo, hi).expect("non-empty piece");
                        terms.push((c, Self::density(piece).restrict(&whole)));
                    }
                }
                _ => terms.push((c, leaf)),
            }
        }
        Self::from_kind(MeasureKind::Sum(terms))
    }

    /// Total variation `|μ|(ℝ)`.
    pub fn total_variation(&self) -> Result<TotalVariation> {
        let normalized = self.normalized();
        let leaves: Vec<(Complex64, Measure)> = match &normalized.kind {
            MeasureKind::Sum(terms) => terms.clone(),
            _ => vec![(Complex64::new(1.0, 0.0), normalized.clone())],
        };
        let mut value = 0.0;
        for (c, leaf) in &leaves {
            let form = leaf.scaled(*c).spectral_form();
            let tv: f64 = form.atoms.iter().map(|a| a.weight.norm()).sum::<f64>()
                + form.blocks.iter().flat_map(|b| b.coeffs.iter()).map(|c| c.norm()).sum::<f64>()
                + form.cell_groups.iter().flat_map(|g| g.cells.iter()).map(|c| c.weight.norm()).sum::<f64>();
            value += tv;
        }
        if !value.is_finite() {
            return Err(Error::Divergence("total variation quadrature".into()));
        }
        Ok(TotalVariation {
            value,
            exact: leaves.len() <= 1,
        })
    }

    /// Convex hull of the effective support, `None` for the zero measure.
    pub fn support_hull(&self) -> Option<(f64, f64)> {
        self.spectral_form().support_hull()
    }

    fn check_covered(&self, f: &GridFunction) -> Result<()> {
        check_covered(f, self.support_hull())
    }

    /// `∫ h dμ` together with the self-similar truncation bound.
    pub fn integrate_with_bound(&self, h: &GridFunction) -> Result<Integral> {
        let form = self.spectral_form();
        check_covered(h, form.support_hull())?;
        let levels = u32::MAX;
        let value = form.point_nodes(levels).iter().map(|a| a.weight * h.eval_or_zero(a.position)).sum();
        Ok(Integral {
            value,
            error_bound: h.lipschitz_bound() * form.cell_spread(levels),
        })
    }

    /// `∫ h dμ`.
    pub fn integrate(&self, h: &GridFunction) -> Result<Complex64> {
        Ok(self.integrate_with_bound(h)?.value)
    }

    /// The measure `f μ`, `(fμ)(F) = ∫_F f dμ`. Self-similar parts are
    /// replaced by their level-[`POINT_EXPANSION_LEVELS`] barycenter atoms.
    pub fn scale_product(&self, f: &GridFunction) -> Result<Measure> {
        self.check_covered(f)?;
        let normalized = self.normalized();
        let leaves: Vec<(Complex64, Measure)> = match &normalized.kind {
            MeasureKind::Sum(terms) => terms.clone(),
            _ => vec![(Complex64::new(1.0, 0.0), normalized.clone())],
        };
        let mut terms = Vec::with_capacity(leaves.len());
        for (c, leaf) in leaves {
            let product = match &leaf.kind {
                MeasureKind::Density(g) => Measure {
                    kind: MeasureKind::Density(g.map(|x, v| v * f.eval_or_zero(x))),
                    restriction: leaf.restriction.clone(),
                },
                _ => {
                    let nodes = leaf.spectral_form().point_nodes(POINT_EXPANSION_LEVELS);
                    Self::from_kind(MeasureKind::Atomic(
                        nodes
                            .into_iter()
                            .map(|a| Atom::new(a.position, a.weight * f.eval_or_zero(a.position)))
                            .collect(),
                    ))
                }
            };
            terms.push((c, product));
        }
        Ok(Self::from_kind(MeasureKind::Sum(terms)).normalized())
    }

    /// Samples of `(f * μ)(x) = ∫ f(x - y) dμ(y)` on the grid of `f`.
    pub fn convolve(&self, f: &GridFunction) -> Result<GridFunction> {
        let edge = f.edge_magnitude();
        if edge > 1e-8 * f.max_abs().max(f64::MIN_POSITIVE) {
            log::warn!("convolution kernel does not decay at its window edges (edge value {edge:e})");
        }
        let nodes = self.spectral_form().point_nodes(POINT_EXPANSION_LEVELS);
        let values: Vec<Complex64> = (0..f.len())
            .into_par_iter()
            .map(|i| {
                let x = f.x(i);
                nodes.iter().map(|a| a.weight * f.eval_or_zero(x - a.position)).sum()
            })
            .collect();
        GridFunction::new(f.start, f.step, values)
    }

    /// `μ((t, ∞))`, or `μ([t, ∞))` when `inclusive`.
    pub fn mass_above(&self, t: f64, inclusive: bool) -> Complex64 {
        let form = self.spectral_form();
        let atoms: Complex64 = form
            .atoms
            .iter()
            .filter(|a| a.position > t || (inclusive && a.position == t))
            .map(|a| a.weight)
            .sum();
        // densities carry no point masses; cut them at t
        let tail = SetOfIntervals::interval(t, f64::MAX).expect("valid interval");
        let mut dens = SpectralForm::default();
        let mut leaves = Vec::new();
        self.leaves(Complex64::new(1.0, 0.0), None, &mut leaves);
        for (c, leaf) in &leaves {
            if let MeasureKind::Density(_) = leaf.kind {
                leaf.flatten_into(*c, Some(&tail), &mut dens);
            }
        }
        let density: Complex64 = dens.blocks.iter().flat_map(|b| b.coeffs.iter()).sum::<Complex64>();
        let cells: Complex64 = form
            .cell_groups
            .iter()
            .flat_map(|g| g.cells.iter().map(move |c| g.base.mass_above(c, t, inclusive)))
            .sum();
        atoms + density + cells
    }
}

fn combine(inner: Option<&SetOfIntervals>, outer: Option<&SetOfIntervals>) -> Option<SetOfIntervals> {
    match (inner, outer) {
        (Some(a), Some(b)) => Some(a.intersect(b)),
        (Some(a), None) => Some(a.clone()),
        (None, Some(b)) => Some(b.clone()),
        (None, None) => None,
    }
}

fn merge_atoms(mut atoms: Vec<Atom>) -> Vec<Atom> {
    atoms.sort_by(|a, b| a.position.total_cmp(&b.position));
    let mut out: Vec<Atom> = Vec::with_capacity(atoms.len());
    for a in atoms {
        match out.last_mut() {
            Some(last) if last.position == a.position => last.weight += a.weight,
            _ => out.push(a),
        }
    }
    out.retain(|a| a.weight != Complex64::default());
    out
}

pub(crate) fn check_covered(f: &GridFunction, hull: Option<(f64, f64)>) -> Result<()> {
    let Some((lo, hi)) = hull else { return Ok(()) };
    let (a, b) = f.window();
    let slack = 1e-9 * (1.0 + a.abs().max(b.abs()));
    if lo < a - slack || hi > b + slack {
        return Err(Error::Domain {
            window_lo: a,
            window_hi: b,
            support_lo: lo,
            support_hi: hi,
        });
    }
    Ok(())
}

/// Samples of the piecewise-linear interpolant of `g` on a uniform grid
/// over `[lo, hi]`, at least twice as fine as `g`.
pub(crate) fn piece_samples(g: &GridFunction, lo: f64, hi: f64, min_points: usize) -> GridFunction {
    let (ga, gb) = (g.eval_or_zero(lo), g.eval_or_zero(hi));
    let affine = (0..g.len()).filter(|&k| g.x(k) > lo && g.x(k) < hi).all(|k| {
        let line = ga + (gb - ga) * ((g.x(k) - lo) / (hi - lo));
        (g.values[k] - line).norm() <= 1e-14 * (ga.norm() + gb.norm())
    });
    // the linear interpolant is exact on an affine piece
    let points = if affine {
        2
    } else {
        min_points.max(2 * ((hi - lo) / g.step).ceil() as usize + 1).max(2)
    };
    let spec = GridSpec::linspace(lo, hi, points).expect("non-empty piece");
    GridFunction::sample(spec, |x| g.eval_or_zero(x))
}

fn push_block(g: &GridFunction, coeff: Complex64, interpolant: bool, form: &mut SpectralForm) {
    form.blocks.push(UniformBlock {
        start: g.start,
        step: g.step,
        coeffs: (0..g.len()).map(|k| g.values[k] * (coeff * g.trapezoid_weight(k))).collect(),
        interpolant,
    });
}

/// Trapezoid blocks of `coeff · g`. Densities that have not decayed at
/// their window edges and every piece of a restriction are cut functions
/// and become interpolant blocks.
fn density_into(g: &GridFunction, coeff: Complex64, set: Option<&SetOfIntervals>, form: &mut SpectralForm) {
    let Some(set) = set else {
        let cut = g.edge_magnitude() > 1e-8 * g.max_abs();
        push_block(g, coeff, cut, form);
        return;
    };
    let (start, end) = g.window();
    for &(a, b) in set.intervals() {
        let lo = a.max(start);
        let hi = b.min(end);
        if !(hi > lo) {
            continue;
        }
        if lo == start && hi == end {
            push_block(g, coeff, true, form);
        } else {
            push_block(&piece_samples(g, lo, hi, 0), coeff, true, form);
        }
    }
}

#[cfg(test)]
mod tests;
