//! Seeded random inputs for the inequality suites. Every position and
//! grid lives on one lattice so that convolutions and products of samples
//! are exact translations and pointwise products.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::grid::{GridFunction, GridSpec};
use crate::intervals::SetOfIntervals;
use crate::measure::{Atom, Measure};

pub const LATTICE_STEP: f64 = 1.0 / 64.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MeasureFamily {
    Atomic,
    Density,
    Mixed,
    WithCantor,
}

impl MeasureFamily {
    pub const ALL: [MeasureFamily; 4] = [Self::Atomic, Self::Density, Self::Mixed, Self::WithCantor];
}

fn snap(x: f64) -> f64 {
    (x / LATTICE_STEP).round() * LATTICE_STEP
}

fn lattice_window(half_width: f64) -> GridSpec {
    let n = (2.0 * half_width / LATTICE_STEP).round() as usize + 1;
    GridSpec::new(-half_width, LATTICE_STEP, n).expect("valid lattice window")
}

fn weight<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::from_polar(rng.gen_range(0.2..1.0), rng.gen_range(0.0..2.0 * PI))
}

fn gaussian_mixture<R: Rng>(rng: &mut R, spec: GridSpec, centers: f64, widths: (f64, f64)) -> GridFunction {
    let k = rng.gen_range(1..=3);
    let parts: Vec<(f64, f64, Complex64)> = (0..k)
        .map(|_| (rng.gen_range(-centers..centers), rng.gen_range(widths.0..widths.1), weight(rng)))
        .collect();
    GridFunction::sample(spec, |x| parts.iter().map(|&(c, w, a)| a * (-PI * ((x - c) / w).powi(2)).exp()).sum())
}

/// `e^{-π((x-c)/w)²}` mixtures with 1–3 terms on `[-8, 8]`.
pub fn random_density<R: Rng>(rng: &mut R) -> Measure {
    Measure::density(gaussian_mixture(rng, lattice_window(8.0), 3.0, (0.3, 1.2)))
}

/// Smooth test functions on `[-16, 16]`, wide enough to hold their
/// convolutions with [`random_measure`] outputs.
pub fn random_function<R: Rng>(rng: &mut R) -> GridFunction {
    gaussian_mixture(rng, lattice_window(16.0), 2.0, (0.3, 1.0))
}

pub fn random_measure<R: Rng>(rng: &mut R, family: MeasureFamily) -> Measure {
    let atoms = |rng: &mut R| {
        let k = rng.gen_range(1..=5);
        Measure::atoms((0..k).map(|_| Atom::new(snap(rng.gen_range(-4.0..4.0)), weight(rng))).collect()).expect("finite atoms")
    };
    match family {
        MeasureFamily::Atomic => atoms(rng),
        MeasureFamily::Density => random_density(rng),
        MeasureFamily::Mixed => atoms(rng).plus(&random_density(rng)),
        MeasureFamily::WithCantor => {
            let c = weight(rng);
            atoms(rng).plus(&Measure::cantor().scaled(c))
        }
    }
}

/// 1–4 disjoint intervals inside `[-4, 4]`.
pub fn random_union<R: Rng>(rng: &mut R) -> SetOfIntervals {
    let k = rng.gen_range(1..=4);
    let mut cuts: Vec<f64> = (0..2 * k).map(|_| rng.gen_range(-4.0..4.0)).collect();
    cuts.sort_by(f64::total_cmp);
    let pieces = cuts.chunks(2).filter(|c| c[1] - c[0] > 1e-3).map(|c| (c[0], c[1])).collect::<Vec<_>>();
    if pieces.is_empty() {
        return SetOfIntervals::interval(0.0, 1.0).expect("valid interval");
    }
    SetOfIntervals::from_intervals(pieces).expect("sorted disjoint pieces")
}
