//! Complex fields sampled on a periodic grid, with their spectra.
//!
//! A field is stored together with its Fourier coefficients
//! `c_m = (2L)^{-n} ∫ f e^{-i ξ_m x} dx`, so `f(x) = Σ_m c_m e^{i ξ_m x}`.
//! With this convention `‖f‖₂² = (2L)^n Σ|c_m|²` and a field built from a
//! symbol `g` via `c_m = g(ξ_m)/(2L)^n` approximates the inverse transform
//! of `g` in the whole-line normalization `(2π)^{-n} ∫ g e^{iξx} dξ`.

use crate::error::{Error, Result};
use crate::fft::{self, Fft};
use crate::grid::{FreqBox, GridSpec};
use crate::util::tree_sum;
use crate::Complex64;
use alloc::vec;
use alloc::vec::Vec;

#[derive(Debug, Clone)]
pub struct SampledField {
    grid: GridSpec,
    values: Vec<Complex64>,
    spectrum: Vec<Complex64>,
    peak_coeff: f64,
}

impl SampledField {
    pub fn from_values(grid: GridSpec, values: Vec<Complex64>) -> Self {
        assert_eq!(values.len(), grid.len());
        let spectrum = analyze(&grid, &values);
        let peak_coeff = peak_norm(&spectrum);
        SampledField {
            grid,
            values,
            spectrum,
            peak_coeff,
        }
    }

    pub fn from_spectrum(grid: GridSpec, spectrum: Vec<Complex64>) -> Self {
        assert_eq!(spectrum.len(), grid.len());
        let values = synthesize(&grid, &spectrum);
        let peak_coeff = peak_norm(&spectrum);
        SampledField {
            grid,
            values,
            spectrum,
            peak_coeff,
        }
    }

    /// Field whose coefficients sample a frequency symbol: `c_m = g(ξ_m)/(2L)^n`.
    pub fn from_symbol<F: FnMut([f64; 2]) -> Complex64>(grid: GridSpec, mut g: F) -> Self {
        let vol = libm::pow(2.0 * grid.half_period, grid.dim as f64);
        let spectrum: Vec<Complex64> = (0..grid.len()).map(|i| g(grid.freq(i)) / vol).collect();
        Self::from_spectrum(grid, spectrum)
    }

    /// Field sampled pointwise in space.
    pub fn from_samples<F: FnMut([f64; 2]) -> Complex64>(grid: GridSpec, mut f: F) -> Self {
        let values: Vec<Complex64> = (0..grid.len()).map(|i| f(grid.point(i))).collect();
        Self::from_values(grid, values)
    }

    pub fn zero(grid: GridSpec) -> Self {
        let n = grid.len();
        SampledField {
            grid,
            values: vec![Complex64::new(0.0, 0.0); n],
            spectrum: vec![Complex64::new(0.0, 0.0); n],
            peak_coeff: 0.0,
        }
    }

    /// Coefficients at or below this magnitude are treated as zero by every
    /// decomposition (truncation floor, `1e-14` of the peak coefficient).
    pub fn spectral_floor(&self) -> f64 {
        1e-14 * self.peak_coeff
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn spectrum(&self) -> &[Complex64] {
        &self.spectrum
    }

    /// `L^p` quasi-norm by Riemann quadrature, `(Δx)^{n/p} (Σ|f|^p)^{1/p}`;
    /// `p = ∞` is the max.
    pub fn lp_norm(&self, p: f64) -> f64 {
        assert!(p > 0.0, "p must be positive");
        if p.is_infinite() {
            let mut m = 0.0f64;
            for v in &self.values {
                m = m.max(v.norm());
            }
            return m;
        }
        let n_over_p = self.grid.dim as f64 / p;
        let scale = libm::pow(self.grid.dx(), n_over_p);
        let terms: Vec<f64> = if p == 2.0 {
            self.values.iter().map(|v| v.norm_sqr()).collect()
        } else if p == 1.0 {
            self.values.iter().map(|v| v.norm()).collect()
        } else {
            self.values.iter().map(|v| libm::pow(v.norm(), p)).collect()
        };
        scale * libm::pow(tree_sum(&terms), 1.0 / p)
    }

    /// `L²` norm through the spectrum (Parseval route, independent of the
    /// sample-side quadrature).
    pub fn l2_from_spectrum(&self) -> f64 {
        let vol = libm::pow(2.0 * self.grid.half_period, self.grid.dim as f64);
        let terms: Vec<f64> = self.spectrum.iter().map(|c| c.norm_sqr()).collect();
        libm::sqrt(vol * tree_sum(&terms))
    }

    /// Realize `f(λ·)` exactly by rescaling the grid: the samples are kept
    /// and the half-period becomes `L/λ`, so every Fourier coefficient moves
    /// from `ξ` to `λξ` with no interpolation. Errors with `Aliasing` when
    /// the rescaled frequency lattice becomes too coarse to resolve
    /// unit-scale frequency windows.
    pub fn dilate(&self, lambda: f64) -> Result<SampledField> {
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(Error::InvalidParam(alloc::format!(
                "lambda must be positive, got {lambda}"
            )));
        }
        let new_grid = GridSpec {
            dim: self.grid.dim,
            half_period: self.grid.half_period / lambda,
            samples_per_axis: self.grid.samples_per_axis,
        };
        if new_grid.freq_step() > 1.0 + 1e-12 {
            return Err(Error::Aliasing {
                lambda,
                detail: "rescaled frequency lattice coarser than unit windows",
            });
        }
        Ok(SampledField {
            grid: new_grid,
            values: self.values.clone(),
            spectrum: self.spectrum.clone(),
            peak_coeff: self.peak_coeff,
        })
    }

    /// Band-limited resampling to a different resolution on the same domain:
    /// spectrum is zero-padded or truncated. Truncation that would discard
    /// non-negligible coefficients is an aliasing error.
    pub fn resample(&self, samples_per_axis: usize) -> Result<SampledField> {
        let new_grid = GridSpec::new(self.grid.dim, self.grid.half_period, samples_per_axis)?;
        let mut out = vec![Complex64::new(0.0, 0.0); new_grid.len()];
        let keep = (self.grid.samples_per_axis.min(samples_per_axis) / 2) as i64;
        let peak = self.spectrum.iter().fold(0.0f64, |m, c| m.max(c.norm()));
        let tol = 1e-12 * peak;
        for (i, &c) in self.spectrum.iter().enumerate() {
            let bins = self.grid.axis_bins(i);
            let mut signed = [0i64; 2];
            for a in 0..self.grid.dim {
                signed[a] = self.grid.signed_bin(bins[a]);
            }
            let fits = (0..self.grid.dim).all(|a| signed[a] >= -keep && signed[a] < keep);
            if fits {
                let nb = [
                    new_grid.bin_of_signed(signed[0]),
                    new_grid.bin_of_signed(signed[1]),
                ];
                out[new_grid.flat_of_bins(nb)] = c;
            } else if c.norm() > tol {
                return Err(Error::Aliasing {
                    lambda: 1.0,
                    detail: "resample would truncate non-negligible spectrum",
                });
            }
        }
        Ok(SampledField::from_spectrum(new_grid, out))
    }

    pub fn scaled(&self, factor: Complex64) -> SampledField {
        SampledField {
            grid: self.grid,
            values: self.values.iter().map(|v| v * factor).collect(),
            spectrum: self.spectrum.iter().map(|c| c * factor).collect(),
            peak_coeff: self.peak_coeff * factor.norm(),
        }
    }

    pub fn add(&self, other: &SampledField) -> Result<SampledField> {
        self.check_same_grid(other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a + b)
            .collect();
        let spectrum: Vec<Complex64> = self
            .spectrum
            .iter()
            .zip(&other.spectrum)
            .map(|(a, b)| a + b)
            .collect();
        let peak_coeff = peak_norm(&spectrum);
        Ok(SampledField {
            grid: self.grid,
            values,
            spectrum,
            peak_coeff,
        })
    }

    /// Pointwise product.
    pub fn mul(&self, other: &SampledField) -> Result<SampledField> {
        self.check_same_grid(other)?;
        let values: Vec<Complex64> = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b)
            .collect();
        Ok(SampledField::from_values(self.grid, values))
    }

    /// Periodic convolution `∫ f(y) g(x-y) dy`, computed spectrally.
    pub fn convolve(&self, other: &SampledField) -> Result<SampledField> {
        self.check_same_grid(other)?;
        let vol = libm::pow(2.0 * self.grid.half_period, self.grid.dim as f64);
        let spectrum: Vec<Complex64> = self
            .spectrum
            .iter()
            .zip(&other.spectrum)
            .map(|(a, b)| a * b * vol)
            .collect();
        Ok(SampledField::from_spectrum(self.grid, spectrum))
    }

    fn check_same_grid(&self, other: &SampledField) -> Result<()> {
        if self.grid != other.grid {
            return Err(Error::InvalidParam(alloc::string::String::from(
                "grids differ",
            )));
        }
        Ok(())
    }

    /// Bounding box of the non-negligible spectrum, or `None` for a
    /// (numerically) zero field. The relative floor is `1e-14` of the peak.
    pub fn spectral_support_box(&self) -> Option<FreqBox> {
        if self.peak_coeff == 0.0 {
            return None;
        }
        let tol = self.spectral_floor();
        let mut lo = [f64::INFINITY; 2];
        let mut hi = [f64::NEG_INFINITY; 2];
        for (i, c) in self.spectrum.iter().enumerate() {
            if c.norm() > tol {
                let xi = self.grid.freq(i);
                for a in 0..self.grid.dim {
                    lo[a] = lo[a].min(xi[a]);
                    hi[a] = hi[a].max(xi[a]);
                }
            }
        }
        Some(FreqBox {
            lo,
            hi,
            dim: self.grid.dim,
        })
    }

    /// Largest `|ξ|` carrying non-negligible spectrum.
    pub fn spectral_radius(&self) -> f64 {
        match self.spectral_support_box() {
            None => 0.0,
            Some(b) => {
                let mut r: f64 = 0.0;
                for a in 0..b.dim {
                    r = r.max(b.lo[a].abs().max(b.hi[a].abs()));
                }
                r
            }
        }
    }

    /// Relative `L²` distance to another field on the same grid.
    pub fn rel_l2_distance(&self, other: &SampledField) -> f64 {
        assert_eq!(self.grid, other.grid);
        let diff: Vec<f64> = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm_sqr())
            .collect();
        let base: Vec<f64> = self.values.iter().map(|v| v.norm_sqr()).collect();
        let denom = tree_sum(&base);
        if denom == 0.0 {
            return libm::sqrt(tree_sum(&diff));
        }
        libm::sqrt(tree_sum(&diff) / denom)
    }
}

fn peak_norm(spectrum: &[Complex64]) -> f64 {
    spectrum.iter().fold(0.0f64, |m, c| m.max(c.norm()))
}

/// Forward analysis: values to Fourier coefficients.
fn analyze(grid: &GridSpec, values: &[Complex64]) -> Vec<Complex64> {
    let mut buf = values.to_vec();
    let plan = Fft::new(grid.samples_per_axis);
    match grid.dim {
        1 => plan.forward(&mut buf),
        _ => fft::forward_2d(&plan, &mut buf),
    }
    let scale = 1.0 / grid.len() as f64;
    for (i, c) in buf.iter_mut().enumerate() {
        let bins = grid.axis_bins(i);
        let parity = (bins[0] + bins[1]) & 1;
        let sign = if parity == 0 { scale } else { -scale };
        *c *= sign;
    }
    buf
}

/// Inverse synthesis: Fourier coefficients to values.
fn synthesize(grid: &GridSpec, spectrum: &[Complex64]) -> Vec<Complex64> {
    let mut buf = spectrum.to_vec();
    for (i, c) in buf.iter_mut().enumerate() {
        let bins = grid.axis_bins(i);
        if (bins[0] + bins[1]) & 1 == 1 {
            *c = -*c;
        }
    }
    let plan = Fft::new(grid.samples_per_axis);
    match grid.dim {
        1 => plan.inverse_unscaled(&mut buf),
        _ => fft::inverse_unscaled_2d(&plan, &mut buf),
    }
    buf
}

/// Synthesize values from a spectrum without constructing a field.
pub fn synthesize_values(grid: &GridSpec, spectrum: &[Complex64]) -> Vec<Complex64> {
    synthesize(grid, spectrum)
}
