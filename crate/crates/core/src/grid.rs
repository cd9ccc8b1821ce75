//! Periodic sampling grids and their frequency lattices.

use crate::error::{Error, Result};
use alloc::format;

/// A uniform grid on `[-L, L)^n` with a power-of-two number of samples per
/// axis. Its frequency lattice is `(π/L)·Z^n` truncated at Nyquist.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub dim: usize,
    pub half_period: f64,
    pub samples_per_axis: usize,
}

impl GridSpec {
    pub fn new(dim: usize, half_period: f64, samples_per_axis: usize) -> Result<Self> {
        if !(1..=2).contains(&dim) {
            return Err(Error::InvalidParam(format!(
                "dim must be 1 or 2, got {dim}"
            )));
        }
        if !(half_period > 0.0) || !half_period.is_finite() {
            return Err(Error::InvalidParam(format!(
                "half_period must be positive, got {half_period}"
            )));
        }
        if !samples_per_axis.is_power_of_two() || samples_per_axis < 16 {
            return Err(Error::InvalidParam(format!(
                "samples_per_axis must be a power of two >= 16, got {samples_per_axis}"
            )));
        }
        Ok(GridSpec {
            dim,
            half_period,
            samples_per_axis,
        })
    }

    /// Default working grid for 1D experiments.
    pub fn default_1d() -> Self {
        GridSpec {
            dim: 1,
            half_period: 64.0 * core::f64::consts::PI,
            samples_per_axis: 1 << 14,
        }
    }

    /// Default working grid for 2D experiments.
    pub fn default_2d() -> Self {
        GridSpec {
            dim: 2,
            half_period: 16.0 * core::f64::consts::PI,
            samples_per_axis: 1 << 9,
        }
    }

    /// Total number of samples.
    pub fn len(&self) -> usize {
        let n = self.samples_per_axis;
        match self.dim {
            1 => n,
            _ => n * n,
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Sample spacing `2L/N`.
    pub fn dx(&self) -> f64 {
        2.0 * self.half_period / self.samples_per_axis as f64
    }

    /// Frequency lattice spacing `π/L`.
    pub fn freq_step(&self) -> f64 {
        core::f64::consts::PI / self.half_period
    }

    /// Largest represented frequency magnitude per axis, `(N/2)·π/L`.
    pub fn nyquist(&self) -> f64 {
        (self.samples_per_axis / 2) as f64 * self.freq_step()
    }

    /// Signed per-axis frequency index of an axis bin.
    #[inline]
    pub fn signed_bin(&self, bin: usize) -> i64 {
        let n = self.samples_per_axis;
        if bin < n / 2 {
            bin as i64
        } else {
            bin as i64 - n as i64
        }
    }

    /// Axis bin of a signed frequency index.
    #[inline]
    pub fn bin_of_signed(&self, m: i64) -> usize {
        let n = self.samples_per_axis as i64;
        (m.rem_euclid(n)) as usize
    }

    /// Decompose a flat index into per-axis bins (row-major).
    #[inline]
    pub fn axis_bins(&self, flat: usize) -> [usize; 2] {
        let n = self.samples_per_axis;
        match self.dim {
            1 => [flat, 0],
            _ => [flat / n, flat % n],
        }
    }

    #[inline]
    pub fn flat_of_bins(&self, bins: [usize; 2]) -> usize {
        match self.dim {
            1 => bins[0],
            _ => bins[0] * self.samples_per_axis + bins[1],
        }
    }

    /// Spatial coordinates of a flat sample index.
    #[inline]
    pub fn point(&self, flat: usize) -> [f64; 2] {
        let bins = self.axis_bins(flat);
        let dx = self.dx();
        let l = self.half_period;
        let coord = |b: usize| -l + b as f64 * dx;
        match self.dim {
            1 => [coord(bins[0]), 0.0],
            _ => [coord(bins[0]), coord(bins[1])],
        }
    }

    /// Frequency coordinates of a flat spectrum index.
    #[inline]
    pub fn freq(&self, flat: usize) -> [f64; 2] {
        let bins = self.axis_bins(flat);
        let step = self.freq_step();
        match self.dim {
            1 => [self.signed_bin(bins[0]) as f64 * step, 0.0],
            _ => [
                self.signed_bin(bins[0]) as f64 * step,
                self.signed_bin(bins[1]) as f64 * step,
            ],
        }
    }

    /// The axis-aligned box of represented frequencies.
    pub fn nyquist_box(&self) -> FreqBox {
        let nyq = self.nyquist();
        let mut lo = [0.0; 2];
        let mut hi = [0.0; 2];
        for a in 0..self.dim {
            lo[a] = -nyq;
            hi[a] = nyq;
        }
        FreqBox {
            lo,
            hi,
            dim: self.dim,
        }
    }
}

/// Axis-aligned frequency box.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FreqBox {
    pub lo: [f64; 2],
    pub hi: [f64; 2],
    pub dim: usize,
}

impl FreqBox {
    pub fn new_1d(lo: f64, hi: f64) -> Self {
        FreqBox {
            lo: [lo, 0.0],
            hi: [hi, 0.0],
            dim: 1,
        }
    }

    pub fn new_2d(lo: [f64; 2], hi: [f64; 2]) -> Self {
        FreqBox { lo, hi, dim: 2 }
    }

    pub fn contains(&self, xi: [f64; 2]) -> bool {
        (0..self.dim).all(|a| xi[a] >= self.lo[a] && xi[a] <= self.hi[a])
    }

    pub fn contains_box(&self, other: &FreqBox) -> bool {
        (0..self.dim).all(|a| self.lo[a] <= other.lo[a] && other.hi[a] <= self.hi[a])
    }

    /// Euclidean distance from the box to a point.
    pub fn distance_to(&self, xi: [f64; 2]) -> f64 {
        let mut d2 = 0.0;
        for a in 0..self.dim {
            let gap = if xi[a] < self.lo[a] {
                self.lo[a] - xi[a]
            } else if xi[a] > self.hi[a] {
                xi[a] - self.hi[a]
            } else {
                0.0
            };
            d2 += gap * gap;
        }
        libm::sqrt(d2)
    }

    pub fn intersects_ball(&self, center: [f64; 2], radius: f64) -> bool {
        self.distance_to(center) < radius
    }

    pub fn intersects_box(&self, other: &FreqBox) -> bool {
        (0..self.dim).all(|a| self.lo[a] <= other.hi[a] && other.lo[a] <= self.hi[a])
    }
}
