//! The four indices `(s, p, q, α)` of a decomposition space.

use crate::error::{Error, Result};
use alloc::format;

/// `p` and `q` are extended reals in `(0, ∞]` (`f64::INFINITY` for sup
/// norms). `alpha = 1` selects dyadic blocks with weight `2^{sj}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpaceParams {
    pub s: f64,
    pub p: f64,
    pub q: f64,
    pub alpha: f64,
}

impl SpaceParams {
    pub fn new(s: f64, p: f64, q: f64, alpha: f64) -> Result<Self> {
        if !(p > 0.0) || !(q > 0.0) {
            return Err(Error::InvalidParam(format!(
                "p, q must be positive, got p={p} q={q}"
            )));
        }
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::InvalidParam(format!(
                "alpha must lie in [0, 1], got {alpha}"
            )));
        }
        if !s.is_finite() {
            return Err(Error::InvalidParam(format!("s must be finite, got {s}")));
        }
        Ok(SpaceParams { s, p, q, alpha })
    }

    #[inline]
    pub fn inv_p(&self) -> f64 {
        if self.p.is_infinite() {
            0.0
        } else {
            1.0 / self.p
        }
    }

    #[inline]
    pub fn inv_q(&self) -> f64 {
        if self.q.is_infinite() {
            0.0
        } else {
            1.0 / self.q
        }
    }

    /// True when the space is to be realized with dyadic blocks.
    #[inline]
    pub fn is_dyadic(&self) -> bool {
        self.alpha >= 1.0
    }

    /// The block weight exponent `s/(1−α)` applied to `⟨k⟩`.
    #[inline]
    pub fn weight_exponent(&self) -> f64 {
        self.s / (1.0 - self.alpha)
    }
}
