//! Uniform and geometric sampling grids, and the complex-valued grid
//! functions that carry test functions, densities and transform samples.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A uniform grid `start + k * step`, `k = 0..len`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub start: f64,
    pub step: f64,
    pub len: usize,
}

impl GridSpec {
    pub fn new(start: f64, step: f64, len: usize) -> Result<Self> {
        if !(step > 0.0) || !step.is_finite() || !start.is_finite() {
            return Err(Error::InvalidGrid(format!("start {start}, step {step}")));
        }
        if len == 0 {
            return Err(Error::InvalidGrid("empty grid".into()));
        }
        Ok(Self { start, step, len })
    }

    /// `points` equispaced nodes covering `[lo, hi]` inclusive.
    pub fn linspace(lo: f64, hi: f64, points: usize) -> Result<Self> {
        if points < 2 || !(hi > lo) {
            return Err(Error::InvalidGrid(format!("linspace [{lo}, {hi}] with {points} points")));
        }
        Self::new(lo, (hi - lo) / (points - 1) as f64, points)
    }

    /// The grid `[-half_width, half_width)` with `points` nodes, the layout
    /// used for the default `[-8, 8]` / 4096-point window.
    pub fn centered_window(half_width: f64, points: usize) -> Result<Self> {
        Self::new(-half_width, 2.0 * half_width / points as f64, points)
    }

    pub fn x(&self, k: usize) -> f64 {
        self.start + k as f64 * self.step
    }

    pub fn end(&self) -> f64 {
        self.x(self.len - 1)
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.len).map(move |k| self.x(k))
    }
}

/// Complex samples of a function on a uniform grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridFunction {
    pub start: f64,
    pub step: f64,
    pub values: Vec<Complex64>,
}

impl GridFunction {
    pub fn new(start: f64, step: f64, values: Vec<Complex64>) -> Result<Self> {
        GridSpec::new(start, step, values.len())?;
        if values.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::InvalidGrid("non-finite sample".into()));
        }
        Ok(Self { start, step, values })
    }

    pub fn sample<F: Fn(f64) -> Complex64>(spec: GridSpec, f: F) -> Self {
        Self {
            start: spec.start,
            step: spec.step,
            values: spec.nodes().map(f).collect(),
        }
    }

    pub fn sample_real<F: Fn(f64) -> f64>(spec: GridSpec, f: F) -> Self {
        Self::sample(spec, |x| Complex64::new(f(x), 0.0))
    }

    pub fn zeros(spec: GridSpec) -> Self {
        Self::sample(spec, |_| Complex64::new(0.0, 0.0))
    }

    pub fn spec(&self) -> GridSpec {
        GridSpec {
            start: self.start,
            step: self.step,
            len: self.values.len(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn x(&self, k: usize) -> f64 {
        self.start + k as f64 * self.step
    }

    pub fn end(&self) -> f64 {
        self.x(self.values.len() - 1)
    }

    pub fn window(&self) -> (f64, f64) {
        (self.start, self.end())
    }

    /// Linear interpolation; `None` outside the window.
    pub fn eval(&self, x: f64) -> Option<Complex64> {
        let n = self.values.len();
        let t = (x - self.start) / self.step;
        // half-ulp slack so nodes computed as start + k*step hit the window
        if !(t >= -1e-9) || t > (n - 1) as f64 + 1e-9 {
            return None;
        }
        let t = t.clamp(0.0, (n - 1) as f64);
        let k = (t.floor() as usize).min(n.saturating_sub(2));
        if n == 1 {
            return Some(self.values[0]);
        }
        let frac = t - k as f64;
        Some(self.values[k] * (1.0 - frac) + self.values[k + 1] * frac)
    }

    /// Linear interpolation, zero outside the window.
    pub fn eval_or_zero(&self, x: f64) -> Complex64 {
        self.eval(x).unwrap_or_default()
    }

    pub fn map<F: Fn(f64, Complex64) -> Complex64>(&self, f: F) -> Self {
        Self {
            start: self.start,
            step: self.step,
            values: self.values.iter().enumerate().map(|(k, v)| f(self.x(k), *v)).collect(),
        }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        self.map(|_, v| v * c)
    }

    /// Trapezoid weights of the grid (endpoint nodes get half a step).
    pub fn trapezoid_weight(&self, k: usize) -> f64 {
        trapezoid_weight(k, self.values.len(), self.step)
    }

    /// Trapezoid quadrature of the samples.
    pub fn integral(&self) -> Complex64 {
        self.values.iter().enumerate().map(|(k, v)| v * self.trapezoid_weight(k)).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Largest absolute value at the two window edges.
    pub fn edge_magnitude(&self) -> f64 {
        let first = self.values.first().map(|v| v.norm()).unwrap_or(0.0);
        let last = self.values.last().map(|v| v.norm()).unwrap_or(0.0);
        first.max(last)
    }

    /// Upper bound on `|f(x) - f(y)| / |x - y|` for the linear interpolant.
    pub fn lipschitz_bound(&self) -> f64 {
        self.values.windows(2).map(|w| (w[1] - w[0]).norm() / self.step).fold(0.0, f64::max)
    }
}

pub(crate) fn trapezoid_weight(k: usize, n: usize, step: f64) -> f64 {
    if n == 1 {
        0.0
    } else if k == 0 || k == n - 1 {
        0.5 * step
    } else {
        step
    }
}

/// Geometric grid `x_min .. x_max` used for the dyadic-block integrals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogGrid {
    pub x_min: f64,
    pub x_max: f64,
    pub points: usize,
}

impl Default for LogGrid {
    fn default() -> Self {
        Self {
            x_min: 1e-3,
            x_max: 1e3,
            points: 200,
        }
    }
}

impl LogGrid {
    pub fn new(x_min: f64, x_max: f64, points: usize) -> Result<Self> {
        if !(x_min > 0.0) || !(x_max > x_min) || points < 2 || !x_max.is_finite() {
            return Err(Error::InvalidGrid(format!("log grid [{x_min}, {x_max}] with {points} points")));
        }
        Ok(Self { x_min, x_max, points })
    }

    pub fn nodes(&self) -> Vec<f64> {
        let (a, b) = (self.x_min.ln(), self.x_max.ln());
        let du = (b - a) / (self.points - 1) as f64;
        (0..self.points).map(|k| (a + k as f64 * du).exp()).collect()
    }

    /// Log-step `du` of the grid.
    pub fn log_step(&self) -> f64 {
        (self.x_max.ln() - self.x_min.ln()) / (self.points - 1) as f64
    }

    /// `∫ F(x) dx` over `[x_min, x_max]` from samples at [`LogGrid::nodes`],
    /// by the trapezoid rule in `u = ln x`.
    pub fn integrate(&self, samples: &[f64]) -> f64 {
        let du = self.log_step();
        let xs = self.nodes();
        let n = xs.len();
        xs.iter().zip(samples).enumerate().map(|(k, (x, s))| trapezoid_weight(k, n, du) * x * s).sum()
    }

    pub fn refined(&self) -> Self {
        Self {
            points: 2 * self.points - 1,
            ..*self
        }
    }
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (mut p1, mut p2) = (1.0, 0.0);
            for j in 1..=n {
                let p3 = p2;
                p2 = p1;
                p1 = ((2 * j - 1) as f64 * x * p2 - (j - 1) as f64 * p3) / j as f64;
            }
            dp = n as f64 * (x * p1 - p2) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// `∫_a^b f` with an `order`-point Gauss–Legendre rule on each of `panels`
/// equal sub-intervals.
pub fn gauss_panels<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize, order: usize) -> f64 {
    let (xs, ws) = gauss_legendre(order);
    let h = (b - a) / panels as f64;
    (0..panels)
        .map(|j| {
            let lo = a + j as f64 * h;
            let mid = lo + 0.5 * h;
            xs.iter().zip(&ws).map(|(x, w)| w * f(mid + 0.5 * h * x)).sum::<f64>() * 0.5 * h
        })
        .sum()
}
