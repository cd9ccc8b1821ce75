//! Decomposition operators and the weighted `ℓ^q(L^p)` norms built on them.
//!
//! A block is the inverse transform of one window applied to the spectrum.
//! Norms gather, per block, an `L^p` quadrature norm, weight it by
//! `⟨k⟩^{s/(1-α)}` (or `2^{sj}` on the dyadic side, `⟨j⟩^{s/(1-α)}` on the
//! rectangular side) and combine in `ℓ^q` with a fixed summation order.
//! Blocks whose window never meets the spectrum are skipped exactly; the
//! index sums are truncated to the windows meeting the Nyquist box.

use crate::covering::{AlphaParams, FreqIndex, WindowSet};
use crate::error::{Error, Result};
use crate::fft::{self, Fft};
use crate::field::SampledField;
use crate::grid::GridSpec;
use crate::rect::RectCovering;
use crate::space::SpaceParams;
use crate::util::{lq_combine, tree_sum};
use crate::Complex64;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

/// Reusable scratch for masked-block synthesis and `L^p` evaluation.
pub struct BlockNormEngine {
    grid: GridSpec,
    plan: Arc<Fft>,
    buf: Vec<Complex64>,
}

impl BlockNormEngine {
    pub fn new(grid: &GridSpec) -> Self {
        BlockNormEngine {
            grid: *grid,
            plan: Fft::new(grid.samples_per_axis),
            buf: vec![Complex64::new(0.0, 0.0); grid.len()],
        }
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    /// `L^p` norms (one per entry of `ps`) of the field whose spectrum is
    /// `symbols[i] * spectrum[bins[i]]`.
    pub fn masked_norms(
        &mut self,
        spectrum: &[Complex64],
        bins: &[usize],
        symbols: &[f64],
        ps: &[f64],
    ) -> Vec<f64> {
        debug_assert_eq!(bins.len(), symbols.len());
        for v in self.buf.iter_mut() {
            *v = Complex64::new(0.0, 0.0);
        }
        let mut any = false;
        for (&bin, &sym) in bins.iter().zip(symbols) {
            let c = spectrum[bin] * sym;
            if c.norm_sqr() > 0.0 {
                any = true;
            }
            let ab = self.grid.axis_bins(bin);
            let signed = if (ab[0] + ab[1]) & 1 == 1 { -c } else { c };
            self.buf[bin] = signed;
        }
        if !any {
            return vec![0.0; ps.len()];
        }
        match self.grid.dim {
            1 => self.plan.inverse_unscaled(&mut self.buf),
            _ => fft::inverse_unscaled_2d(&self.plan, &mut self.buf),
        }
        let dx = self.grid.dx();
        let dim = self.grid.dim as f64;
        ps.iter()
            .map(|&p| {
                if p.is_infinite() {
                    let mut m = 0.0f64;
                    for v in &self.buf {
                        m = m.max(v.norm());
                    }
                    m
                } else {
                    let terms: Vec<f64> = if p == 2.0 {
                        self.buf.iter().map(|v| v.norm_sqr()).collect()
                    } else {
                        self.buf.iter().map(|v| libm::pow(v.norm(), p)).collect()
                    };
                    libm::pow(dx, dim / p) * libm::pow(tree_sum(&terms), 1.0 / p)
                }
            })
            .collect()
    }
}

/// Lattice bins lying in a ball, with their frequencies, in a fixed order.
fn bins_in_ball(grid: &GridSpec, center: [f64; 2], radius: f64, out: &mut Vec<(usize, [f64; 2])>) {
    out.clear();
    let step = grid.freq_step();
    let half = (grid.samples_per_axis / 2) as i64;
    let range = |a: usize| {
        let lo = libm::ceil((center[a] - radius) / step) as i64;
        let hi = libm::floor((center[a] + radius) / step) as i64;
        (lo.max(-half), hi.min(half - 1))
    };
    match grid.dim {
        1 => {
            let (lo, hi) = range(0);
            for m in lo..=hi {
                let xi = [m as f64 * step, 0.0];
                let d = xi[0] - center[0];
                if d.abs() < radius {
                    out.push((grid.bin_of_signed(m), xi));
                }
            }
        }
        _ => {
            let (lo0, hi0) = range(0);
            let (lo1, hi1) = range(1);
            let r2 = radius * radius;
            for m0 in lo0..=hi0 {
                let x0 = m0 as f64 * step;
                let d0 = x0 - center[0];
                for m1 in lo1..=hi1 {
                    let x1 = m1 as f64 * step;
                    let d1 = x1 - center[1];
                    if d0 * d0 + d1 * d1 < r2 {
                        let flat =
                            grid.flat_of_bins([grid.bin_of_signed(m0), grid.bin_of_signed(m1)]);
                        out.push((flat, [x0, x1]));
                    }
                }
            }
        }
    }
}

/// Precomputed masks for every window of a set on a fixed grid: the bins
/// each window touches and the symbol values there, with the window-sum
/// denominator shared across windows. Build once, then analyze, norm or
/// reconstruct many fields cheaply.
pub struct WindowTable {
    grid: GridSpec,
    normalized: bool,
    /// `(lattice index, weight base, bins, symbols)` per window.
    entries: Vec<(FreqIndex, f64, Vec<u32>, Vec<f64>)>,
    /// Positive where at least one window covers the bin.
    covered: Vec<bool>,
}

impl WindowTable {
    pub fn build(set: &WindowSet, grid: &GridSpec, normalized: bool) -> WindowTable {
        let n = grid.len();
        let mut denom = vec![0.0f64; n];
        let mut covered = vec![false; n];
        let mut bins = Vec::new();
        let mut raw: Vec<(FreqIndex, f64, Vec<u32>, Vec<f64>)> = Vec::with_capacity(set.len());
        for w in &set.windows {
            bins_in_ball(grid, w.center, w.radius, &mut bins);
            let mut wb = Vec::with_capacity(bins.len());
            let mut ws = Vec::with_capacity(bins.len());
            for &(bin, xi) in &bins {
                let rho = crate::covering::bump_profile(dist(&xi, &w.center, grid.dim) / w.radius);
                if rho > 0.0 {
                    denom[bin] += rho;
                    covered[bin] = true;
                    wb.push(bin as u32);
                    ws.push(rho);
                }
            }
            raw.push((w.index, w.index.weight(), wb, ws));
        }
        if normalized {
            for (_, _, wb, ws) in raw.iter_mut() {
                for (b, s) in wb.iter().zip(ws.iter_mut()) {
                    *s /= denom[*b as usize];
                }
            }
        }
        WindowTable {
            grid: *grid,
            normalized,
            entries: raw,
            covered,
        }
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    /// Fails when the field carries spectrum at a bin no window covers.
    fn check_coverage(&self, f: &SampledField) -> Result<()> {
        let floor = f.spectral_floor();
        for (bin, c) in f.spectrum().iter().enumerate() {
            if c.norm() > floor && !self.covered[bin] {
                return Err(Error::CoveringGap {
                    xi: self.grid.freq(bin),
                    dim: self.grid.dim,
                });
            }
        }
        Ok(())
    }

    /// Sum of all masked blocks, assembled spectrally.
    pub fn reconstruct(&self, f: &SampledField) -> Result<SampledField> {
        self.check_coverage(f)?;
        let mut spectrum = vec![Complex64::new(0.0, 0.0); self.grid.len()];
        for (_, _, wb, ws) in &self.entries {
            for (&b, &s) in wb.iter().zip(ws) {
                spectrum[b as usize] += f.spectrum()[b as usize] * s;
            }
        }
        Ok(SampledField::from_spectrum(self.grid, spectrum))
    }

    /// Per-window `L^p` norms for several `p` at once.
    pub fn profile(
        &self,
        f: &SampledField,
        ps: &[f64],
        engine: &mut BlockNormEngine,
    ) -> Result<BlockNormProfile> {
        assert_eq!(*f.grid(), self.grid);
        self.check_coverage(f)?;
        let floor = f.spectral_floor();
        let mut entries = Vec::new();
        let mut bins = Vec::new();
        let mut symbols = Vec::new();
        for (index, weight, wb, ws) in &self.entries {
            bins.clear();
            symbols.clear();
            for (&b, &s) in wb.iter().zip(ws) {
                if f.spectrum()[b as usize].norm() > floor {
                    bins.push(b as usize);
                    symbols.push(s);
                }
            }
            if bins.is_empty() {
                continue;
            }
            let norms = engine.masked_norms(f.spectrum(), &bins, &symbols, ps);
            entries.push((*index, *weight, norms));
        }
        Ok(BlockNormProfile { entries })
    }

    /// Weighted `l^q` norm of one field.
    pub fn norm(&self, f: &SampledField, sp: &SpaceParams) -> Result<f64> {
        let mut engine = BlockNormEngine::new(&self.grid);
        let profile = self.profile(f, &[sp.p], &mut engine)?;
        Ok(assemble_norm(&profile, sp, 0))
    }
}

fn dist(a: &[f64; 2], b: &[f64; 2], dim: usize) -> f64 {
    let mut s = 0.0;
    for ax in 0..dim {
        let d = a[ax] - b[ax];
        s += d * d;
    }
    libm::sqrt(s)
}

/// Window set covering the spectral support of a field (the exact set of
/// blocks that can be nonzero), or `None` for a zero field.
pub fn window_set_for(f: &SampledField, params: &AlphaParams) -> Option<WindowSet> {
    f.spectral_support_box()
        .map(|b| WindowSet::covering(params, &b))
}

/// One decomposition block `𝓕^{-1}[η_k f̂]` (or the un-normalized `ρ_k`
/// variant) as a full field.
pub fn block(
    f: &SampledField,
    k: &FreqIndex,
    set: &WindowSet,
    normalized: bool,
) -> Result<SampledField> {
    let grid = *f.grid();
    let floor = f.spectral_floor();
    let mut spectrum = vec![Complex64::new(0.0, 0.0); grid.len()];
    if let Some(wi) = set.window_id(k) {
        let w = set.windows[wi].clone();
        let mut bins = Vec::new();
        bins_in_ball(&grid, w.center, w.radius, &mut bins);
        let mut scratch = Vec::new();
        for &(bin, xi) in &bins {
            if f.spectrum()[bin].norm() <= floor {
                continue;
            }
            let sym = if normalized {
                set.eta_at(wi, xi, &mut scratch)?
            } else {
                set.rho_at(wi, xi)
            };
            spectrum[bin] = f.spectrum()[bin] * sym;
        }
    }
    Ok(SampledField::from_spectrum(grid, spectrum))
}

/// Sparse spectra of every block of `f` under the window set.
pub struct BlockDecomposition {
    grid: GridSpec,
    pub blocks: Vec<(FreqIndex, Vec<(usize, Complex64)>)>,
}

pub fn analyze(f: &SampledField, set: &WindowSet, normalized: bool) -> Result<BlockDecomposition> {
    let grid = *f.grid();
    let mut blocks = Vec::new();
    let floor = f.spectral_floor();
    let mut bins = Vec::new();
    let mut scratch = Vec::new();
    for (wi, w) in set.windows.iter().enumerate() {
        bins_in_ball(&grid, w.center, w.radius, &mut bins);
        let mut entries = Vec::new();
        for &(bin, xi) in &bins {
            let c = f.spectrum()[bin];
            if c.norm() <= floor {
                continue;
            }
            let sym = if normalized {
                set.eta_at(wi, xi, &mut scratch)?
            } else {
                set.rho_at(wi, xi)
            };
            if sym != 0.0 {
                entries.push((bin, c * sym));
            }
        }
        if !entries.is_empty() {
            blocks.push((w.index, entries));
        }
    }
    Ok(BlockDecomposition { grid, blocks })
}

impl BlockDecomposition {
    /// Sum of all blocks, assembled spectrally.
    pub fn synthesize(&self) -> SampledField {
        let mut spectrum = vec![Complex64::new(0.0, 0.0); self.grid.len()];
        for (_, entries) in &self.blocks {
            for &(bin, c) in entries {
                spectrum[bin] += c;
            }
        }
        SampledField::from_spectrum(self.grid, spectrum)
    }

    pub fn block_field(&self, i: usize) -> SampledField {
        let mut spectrum = vec![Complex64::new(0.0, 0.0); self.grid.len()];
        for &(bin, c) in &self.blocks[i].1 {
            spectrum[bin] = c;
        }
        SampledField::from_spectrum(self.grid, spectrum)
    }
}

/// Per-block `L^p` norms for several `p` at once, with the weight base
/// `⟨k⟩` alongside. Blocks that cannot meet the spectrum are skipped.
pub struct BlockNormProfile {
    /// `(index, ⟨k⟩, one L^p norm per requested p)`.
    pub entries: Vec<(FreqIndex, f64, Vec<f64>)>,
}

/// Assemble a weighted `ℓ^q` norm from a profile (`p_slot` selects which
/// entry of the per-block norm vector to use).
pub fn assemble_norm(profile: &BlockNormProfile, sp: &SpaceParams, p_slot: usize) -> f64 {
    let we = sp.weight_exponent();
    let terms: Vec<f64> = profile
        .entries
        .iter()
        .map(|(_, wk, norms)| libm::pow(*wk, we) * norms[p_slot])
        .collect();
    lq_combine(&terms, sp.q)
}

fn check_alpha_match(sp: &SpaceParams, params: &AlphaParams) -> Result<()> {
    if sp.is_dyadic() {
        return Err(Error::InvalidParam(String::from(
            "alpha = 1 selects dyadic blocks; use besov_norm",
        )));
    }
    if (sp.alpha - params.alpha).abs() > 1e-12 {
        return Err(Error::InvalidParam(alloc::format!(
            "space alpha {} does not match covering alpha {}",
            sp.alpha,
            params.alpha
        )));
    }
    Ok(())
}

/// The α-modulation norm `(Σ_k ⟨k⟩^{sq/(1-α)} ‖block_k‖_p^q)^{1/q}` with
/// normalized windows.
pub fn alpha_mod_norm(f: &SampledField, sp: &SpaceParams, set: &WindowSet) -> Result<f64> {
    check_alpha_match(sp, &set.params)?;
    WindowTable::build(set, f.grid(), true).norm(f, sp)
}

/// The equivalent norm built from un-normalized window bumps.
pub fn circ_norm(f: &SampledField, sp: &SpaceParams, set: &WindowSet) -> Result<f64> {
    check_alpha_match(sp, &set.params)?;
    WindowTable::build(set, f.grid(), false).norm(f, sp)
}

/// Dyadic annular windows `φ_j` with `φ_j = φ(2^{-j}·)` and a low-pass
/// `φ_0`; the family telescopes to 1 on the whole represented box.
#[derive(Debug, Clone)]
pub struct DyadicWindows {
    plateau: f64,
    support: f64,
    pub levels: usize,
}

impl DyadicWindows {
    pub fn for_grid(grid: &GridSpec) -> Self {
        DyadicWindows::for_radius(grid.nyquist() * libm::sqrt(grid.dim as f64))
    }

    pub fn for_radius(radius: f64) -> Self {
        let plateau = 1.4;
        let support = 1.75;
        let mut top = 0usize;
        while plateau * libm::pow(2.0, top as f64) < radius {
            top += 1;
        }
        DyadicWindows {
            plateau,
            support,
            levels: top + 1,
        }
    }

    fn low_pass(&self, t: f64) -> f64 {
        if t <= self.plateau {
            1.0
        } else if t >= self.support {
            0.0
        } else {
            crate::covering::bump_profile(
                0.5 + 0.5 * (t - self.plateau) / (self.support - self.plateau),
            )
        }
    }

    /// Symbol of level `j` at `ξ`.
    pub fn symbol(&self, j: usize, xi: [f64; 2]) -> f64 {
        let r = libm::sqrt(xi[0] * xi[0] + xi[1] * xi[1]);
        if j == 0 {
            self.low_pass(2.0 * r)
        } else {
            let s = libm::pow(2.0, -(j as f64));
            self.low_pass(s * r) - self.low_pass(2.0 * s * r)
        }
    }

    /// The annulus carrying level `j` (a ball for `j = 0`).
    pub fn support_annulus(&self, j: usize) -> (f64, f64) {
        if j == 0 {
            (0.0, self.support / 2.0)
        } else {
            let s = libm::pow(2.0, j as f64);
            (s * self.plateau / 2.0, s * self.support)
        }
    }

    /// Interval of `|ξ|` on which `symbol(j, ·) = 1` exactly.
    pub fn plateau_annulus(&self, j: usize) -> (f64, f64) {
        if j == 0 {
            (0.0, self.plateau / 2.0)
        } else {
            let s = libm::pow(2.0, j as f64);
            (s * self.support / 2.0, s * self.plateau)
        }
    }
}

/// One dyadic block `△_j f`.
pub fn dyadic_block(f: &SampledField, j: usize, dw: &DyadicWindows) -> SampledField {
    let grid = *f.grid();
    let spectrum: Vec<Complex64> = (0..grid.len())
        .map(|i| f.spectrum()[i] * dw.symbol(j, grid.freq(i)))
        .collect();
    SampledField::from_spectrum(grid, spectrum)
}

/// Besov norm `(Σ_j 2^{sjq} ‖△_j f‖_p^q)^{1/q}`.
pub fn besov_norm(f: &SampledField, s: f64, p: f64, q: f64, dw: &DyadicWindows) -> f64 {
    let grid = f.grid();
    let support = match f.spectral_support_box() {
        None => return 0.0,
        Some(b) => b,
    };
    let mut engine = BlockNormEngine::new(grid);
    let mut terms = Vec::new();
    let mut bins = Vec::new();
    let mut symbols = Vec::new();
    for j in 0..dw.levels {
        let (lo, hi) = dw.support_annulus(j);
        // Skip levels whose annulus cannot meet the spectrum.
        let mut corner: f64 = 0.0;
        for a in 0..grid.dim {
            let far_a = support.lo[a].abs().max(support.hi[a].abs());
            corner += far_a * far_a;
        }
        let far = libm::sqrt(corner);
        if support.distance_to([0.0, 0.0]) > hi || far < lo {
            terms.push(0.0);
            continue;
        }
        bins.clear();
        symbols.clear();
        let floor = f.spectral_floor();
        for i in 0..grid.len() {
            if f.spectrum()[i].norm() <= floor {
                continue;
            }
            let sym = dw.symbol(j, grid.freq(i));
            if sym != 0.0 {
                bins.push(i);
                symbols.push(sym);
            }
        }
        let norms = engine.masked_norms(f.spectrum(), &bins, &symbols, &[p]);
        terms.push(libm::pow(2.0, s * j as f64) * norms[0]);
    }
    lq_combine(&terms, q)
}

/// Norm from a rectangular covering: weight `⟨j⟩^{s/(1-α)}` on shell `j`.
pub fn rect_norm(f: &SampledField, sp: &SpaceParams, cov: &RectCovering) -> Result<f64> {
    if sp.is_dyadic() {
        return Err(Error::InvalidParam(String::from(
            "rect_norm needs alpha < 1",
        )));
    }
    if (sp.alpha - cov.alpha).abs() > 1e-12 {
        return Err(Error::InvalidParam(String::from(
            "space alpha does not match covering",
        )));
    }
    let grid = f.grid();
    if f.spectral_support_box().is_none() {
        return Ok(0.0);
    }
    // Dense sum of box bumps over the grid bins each box covers.
    let step = grid.freq_step();
    let half = (grid.samples_per_axis / 2) as i64;
    let mut denom = vec![0.0f64; grid.len()];
    let mut box_bins: Vec<Vec<(usize, f64)>> = Vec::with_capacity(cov.boxes().len());
    for b in cov.boxes() {
        let mut list = Vec::new();
        let range = |a: usize| {
            let lo = libm::ceil((b.center[a] - b.half_width) / step) as i64;
            let hi = libm::floor((b.center[a] + b.half_width) / step) as i64;
            (lo.max(-half), hi.min(half - 1))
        };
        match grid.dim {
            1 => {
                let (lo, hi) = range(0);
                for m in lo..=hi {
                    let xi = [m as f64 * step, 0.0];
                    let sym = b.symbol(xi, 1);
                    if sym > 0.0 {
                        let bin = grid.bin_of_signed(m);
                        denom[bin] += sym;
                        list.push((bin, sym));
                    }
                }
            }
            _ => {
                let (lo0, hi0) = range(0);
                let (lo1, hi1) = range(1);
                for m0 in lo0..=hi0 {
                    for m1 in lo1..=hi1 {
                        let xi = [m0 as f64 * step, m1 as f64 * step];
                        let sym = b.symbol(xi, 2);
                        if sym > 0.0 {
                            let bin =
                                grid.flat_of_bins([grid.bin_of_signed(m0), grid.bin_of_signed(m1)]);
                            denom[bin] += sym;
                            list.push((bin, sym));
                        }
                    }
                }
            }
        }
        box_bins.push(list);
    }
    // Every spectral bin above the truncation floor must be covered.
    let floor = f.spectral_floor();
    for i in 0..grid.len() {
        if f.spectrum()[i].norm() > floor && denom[i] <= 0.0 {
            return Err(Error::CoveringGap {
                xi: grid.freq(i),
                dim: grid.dim,
            });
        }
    }
    let mut engine = BlockNormEngine::new(grid);
    let we = sp.weight_exponent();
    let mut terms = Vec::new();
    let mut bins = Vec::new();
    let mut symbols = Vec::new();
    for (b, list) in cov.boxes().iter().zip(&box_bins) {
        bins.clear();
        symbols.clear();
        for &(bin, sym) in list {
            if f.spectrum()[bin].norm() > floor {
                bins.push(bin);
                symbols.push(sym / denom[bin]);
            }
        }
        if bins.is_empty() {
            continue;
        }
        let norms = engine.masked_norms(f.spectrum(), &bins, &symbols, &[sp.p]);
        let weight = libm::pow(libm::sqrt(1.0 + (b.shell * b.shell) as f64), we);
        terms.push(weight * norms[0]);
    }
    Ok(lq_combine(&terms, sp.q))
}
