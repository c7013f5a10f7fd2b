use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An exponent `p` in `[1, inf]` together with its conjugate `p'`,
/// `1/p + 1/p' = 1` with `1/inf = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExponentPair {
    #[serde(with = "crate::report::finite_or_string")]
    p: f64,
    #[serde(with = "crate::report::finite_or_string")]
    p_prime: f64,
}

impl ExponentPair {
    pub fn new(p: f64) -> Result<Self> {
        if p.is_nan() || p < 1.0 {
            return Err(Error::InvalidExponent(p));
        }
        Ok(Self { p, p_prime: conjugate(p) })
    }

    pub fn one() -> Self {
        Self {
            p: 1.0,
            p_prime: f64::INFINITY,
        }
    }

    pub fn infinity() -> Self {
        Self {
            p: f64::INFINITY,
            p_prime: 1.0,
        }
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn conjugate(&self) -> f64 {
        self.p_prime
    }

    /// The pair with the roles of `p` and `p'` exchanged.
    pub fn dual(&self) -> Self {
        Self {
            p: self.p_prime,
            p_prime: self.p,
        }
    }

    /// `1/p`, with `1/inf = 0`.
    pub fn reciprocal(&self) -> f64 {
        recip(self.p)
    }

    pub fn is_infinite(&self) -> bool {
        self.p.is_infinite()
    }

    /// Builds the exponent whose reciprocal is `r`, for `r` in `[0, 1]`.
    pub fn from_reciprocal(r: f64) -> Result<Self> {
        if !(0.0..=1.0 + 1e-15).contains(&r) {
            return Err(Error::InvalidExponent(if r == 0.0 { f64::INFINITY } else { 1.0 / r }));
        }
        let r = r.min(1.0);
        if r == 0.0 {
            Ok(Self::infinity())
        } else {
            Self::new(1.0 / r)
        }
    }
}

/// Conjugate exponent of `p >= 1`.
pub fn conjugate(p: f64) -> f64 {
    if p == 1.0 {
        f64::INFINITY
    } else if p.is_infinite() {
        1.0
    } else {
        p / (p - 1.0)
    }
}

fn recip(p: f64) -> f64 {
    if p.is_infinite() {
        0.0
    } else {
        1.0 / p
    }
}
