use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite union of disjoint, sorted half-open intervals `[a, b)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SetOfIntervals {
    intervals: Vec<(f64, f64)>,
}

impl SetOfIntervals {
    pub fn empty() -> Self {
        Self { intervals: vec![] }
    }

    pub fn interval(a: f64, b: f64) -> Result<Self> {
        Self::from_intervals(vec![(a, b)])
    }

    /// Normalizes an arbitrary list: drops empty pieces, sorts, and merges
    /// overlapping or touching intervals.
    pub fn from_intervals(mut raw: Vec<(f64, f64)>) -> Result<Self> {
        if raw.iter().any(|(a, b)| a.is_nan() || b.is_nan()) {
            return Err(Error::InvalidGrid("NaN interval endpoint".into()));
        }
        raw.retain(|(a, b)| b > a);
        raw.sort_by(|x, y| x.0.total_cmp(&y.0));
        let mut out: Vec<(f64, f64)> = Vec::with_capacity(raw.len());
        for (a, b) in raw {
            match out.last_mut() {
                Some(last) if a <= last.1 => last.1 = last.1.max(b),
                _ => out.push((a, b)),
            }
        }
        Ok(Self { intervals: out })
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// Half-open membership: `a <= x < b`.
    pub fn contains(&self, x: f64) -> bool {
        // intervals are sorted, so find the last one starting at or before x
        let idx = self.intervals.partition_point(|(a, _)| *a <= x);
        idx > 0 && x < self.intervals[idx - 1].1
    }

    /// Lebesgue measure `|E|`.
    pub fn measure(&self) -> f64 {
        self.intervals.iter().map(|(a, b)| b - a).sum()
    }

    pub fn intersect(&self, other: &Self) -> Self {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.intervals.len() && j < other.intervals.len() {
            let (a1, b1) = self.intervals[i];
            let (a2, b2) = other.intervals[j];
            let lo = a1.max(a2);
            let hi = b1.min(b2);
            if hi > lo {
                out.push((lo, hi));
            }
            if b1 < b2 {
                i += 1;
            } else {
                j += 1;
            }
        }
        Self { intervals: out }
    }

    /// Whether the closed interval `[lo, hi]` lies inside one piece.
    pub fn contains_interval(&self, lo: f64, hi: f64) -> bool {
        self.intervals.iter().any(|(a, b)| *a <= lo && hi < *b)
    }

    /// Whether the closed interval `[lo, hi]` misses every piece.
    pub fn disjoint_from(&self, lo: f64, hi: f64) -> bool {
        self.intervals.iter().all(|(a, b)| hi < *a || lo >= *b)
    }

    pub fn hull(&self) -> Option<(f64, f64)> {
        Some((self.intervals.first()?.0, self.intervals.last()?.1))
    }
}
