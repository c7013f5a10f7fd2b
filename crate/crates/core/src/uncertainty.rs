//! Time–frequency limiting on the cyclic group `ℤ_N`: the norm of
//! `P_E ∘ DFT ∘ P_F`, the annihilation inequality it controls, and the
//! search for vectors supported in `F` whose transform lives in `E`.
//!
//! The DFT is unitary, `x̂_k = N^{-1/2} Σ_j x_j e^{-2πijk/N}`.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::seq::index::sample;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::{digest, InequalityReport, Status};

/// Largest grid for which the dense SVD is attempted.
pub const MAX_N: usize = 2048;

/// `σ` at or above this makes the annihilation constant meaningless.
pub const SIGMA_CEILING: f64 = 1.0 - 1e-9;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexSet {
    n: usize,
    indices: Vec<usize>,
}

impl IndexSet {
    pub fn new(n: usize, mut indices: Vec<usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Precondition("grid size must be positive".into()));
        }
        indices.sort_unstable();
        if let Some(&bad) = indices.iter().find(|&&i| i >= n) {
            return Err(Error::Precondition(format!("index {bad} outside 0..{n}")));
        }
        if indices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Precondition("indices must be distinct".into()));
        }
        Ok(Self { n, indices })
    }

    pub fn all(n: usize) -> Self {
        Self { n, indices: (0..n).collect() }
    }

    pub fn empty(n: usize) -> Self {
        Self { n, indices: Vec::new() }
    }

    /// `{0, step, 2·step, …}`.
    pub fn multiples(n: usize, step: usize) -> Result<Self> {
        if step == 0 {
            return Err(Error::Precondition("step must be positive".into()));
        }
        Self::new(n, (0..n).step_by(step).collect())
    }

    /// `k` distinct indices drawn uniformly.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, n: usize, k: usize) -> Self {
        let mut indices = sample(rng, n, k.min(n)).into_vec();
        indices.sort_unstable();
        Self { n, indices }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    pub fn complement(&self) -> Self {
        Self {
            n: self.n,
            indices: (0..self.n).filter(|&i| !self.contains(i)).collect(),
        }
    }
}

fn root(n: usize, jk: usize) -> Complex64 {
    Complex64::from_polar(1.0, -2.0 * PI * (jk % n) as f64 / n as f64)
}

/// Unitary DFT, dense.
pub fn dft(x: &[Complex64]) -> Vec<Complex64> {
    let n = x.len();
    let norm = 1.0 / (n as f64).sqrt();
    (0..n)
        .map(|k| x.iter().enumerate().map(|(j, v)| v * root(n, j * k)).sum::<Complex64>() * norm)
        .collect()
}

/// `P_E ∘ DFT ∘ P_F` as the `|E| × |F|` block of the DFT matrix: it maps a
/// vector supported in the time set `F` to its transform on the frequency
/// set `E`. The DFT matrix is symmetric, so swapping `E` and `F` transposes
/// the block and keeps the singular values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitingOperator {
    pub n: usize,
    pub e: IndexSet,
    pub f: IndexSet,
    /// Descending.
    pub singular_values: Vec<f64>,
    /// Unit vector on `F` (length `N`) attaining the top singular value.
    pub top_vector: Vec<Complex64>,
}

impl LimitingOperator {
    pub fn sigma(&self) -> f64 {
        self.singular_values.first().copied().unwrap_or(0.0)
    }

    /// `√(|E||F|/N)`, the Frobenius norm of the block.
    pub fn envelope(&self) -> f64 {
        (self.e.len() as f64 * self.f.len() as f64 / self.n as f64).sqrt()
    }
}

pub fn build_limiting_operator(n: usize, e: &IndexSet, f: &IndexSet) -> Result<LimitingOperator> {
    if n < 2 {
        return Err(Error::Precondition(format!("grid size {n} < 2")));
    }
    if n > MAX_N {
        return Err(Error::Size(format!("N = {n} exceeds the dense limit {MAX_N}")));
    }
    if e.n() != n || f.n() != n {
        return Err(Error::Precondition("index sets belong to a different grid".into()));
    }
    if e.is_empty() || f.is_empty() {
        return Err(Error::Precondition("index sets must be nonempty".into()));
    }
    let norm = 1.0 / (n as f64).sqrt();
    let block = DMatrix::from_fn(e.len(), f.len(), |i, j| root(n, e.indices[i] * f.indices[j]) * norm);
    let svd = block.svd(false, true);
    let vt = svd.v_t.as_ref().expect("requested right singular vectors");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
    let top = order[0];
    let mut top_vector = vec![Complex64::default(); n];
    for (j, &t) in f.indices.iter().enumerate() {
        top_vector[t] = vt[(top, j)].conj();
    }
    Ok(LimitingOperator {
        n,
        e: e.clone(),
        f: f.clone(),
        singular_values: order.iter().map(|&k| svd.singular_values[k]).collect(),
        top_vector,
    })
}

fn l2(x: &[Complex64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// For `μ` supported in `F`: `‖μ‖₂ ≤ (1 − σ²)^{-1/2} ‖μ̂‖_{ℓ²(E^c)}`.
pub fn measure_annihilation_check(weights: &[Complex64], e: &IndexSet, f: &IndexSet) -> Result<InequalityReport> {
    let n = weights.len();
    if e.n() != n || f.n() != n {
        return Err(Error::Precondition(format!("index sets do not live on a grid of size {n}")));
    }
    if let Some(i) = (0..n).find(|&i| weights[i] != Complex64::default() && !f.contains(i)) {
        return Err(Error::Precondition(format!("weight at index {i} lies outside F")));
    }
    let inputs = digest(&(weights, e, f));
    let sigma = if e.is_empty() || f.is_empty() {
        0.0
    } else {
        build_limiting_operator(n, e, f)?.sigma()
    };
    let located = format!("N = {n}, E = {:?}, F = {:?}", e.indices, f.indices);
    if sigma >= SIGMA_CEILING {
        return Ok(
            InequalityReport::inconclusive("annihilation", format!("sigma = {sigma}: constant unbounded"), inputs)
                .with_extra("sigma", sigma)
                .with_note(located),
        );
    }
    let constant = (1.0 - sigma * sigma).powf(-0.5);
    let hat = dft(weights);
    let outside: Vec<Complex64> = (0..n).filter(|&k| !e.contains(k)).map(|k| hat[k]).collect();
    Ok(
        InequalityReport::new("annihilation", l2(weights), constant * l2(&outside), constant, 1e-9, inputs)
            .with_extra("sigma", sigma)
            .with_extra("n", n as f64)
            .with_note(located),
    )
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DoubleSupportReport {
    pub n: usize,
    pub e: Vec<usize>,
    pub f: Vec<usize>,
    pub sigma: f64,
    /// `1 − σ²`, the smallest singular value squared of `P_{E^c} ∘ DFT` on
    /// vectors supported in `F`.
    pub gap: f64,
    pub status: Status,
    /// A nonzero vector supported in `F` with transform supported in `E`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Vec<Complex64>>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
}

/// Certifies that no nonzero vector is supported in `F` with transform in
/// `E`, or returns one. Such vectors exist on `ℤ_N` (e.g. Dirac combs on
/// subgroups), unlike on the line.
pub fn no_double_support(n: usize, e: &IndexSet, f: &IndexSet) -> Result<DoubleSupportReport> {
    let mut rep = DoubleSupportReport {
        n,
        e: e.indices.clone(),
        f: f.indices.clone(),
        sigma: 0.0,
        gap: 1.0,
        status: Status::Pass,
        witness: None,
        notes: Vec::new(),
    };
    if e.is_empty() || f.is_empty() {
        rep.notes.push("empty index set".into());
        return Ok(rep);
    }
    let op = build_limiting_operator(n, e, f)?;
    rep.sigma = op.sigma();
    rep.gap = (1.0 - rep.sigma * rep.sigma).max(0.0);
    if rep.sigma >= SIGMA_CEILING {
        let w = op.top_vector;
        let leak = dft(&w)
            .iter()
            .enumerate()
            .filter(|(k, _)| !e.contains(*k))
            .map(|(_, z)| z.norm_sqr())
            .sum::<f64>()
            .sqrt();
        rep.status = Status::Fail;
        rep.notes.push(format!("nontrivial kernel: witness leaks {leak:.3e} outside E"));
        rep.witness = Some(w);
    }
    Ok(rep)
}

#[cfg(test)]
mod tests;
