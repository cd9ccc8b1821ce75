//! Frequency-space α-coverings and their smooth partitions of unity.
//!
//! The covering at parameter `α ∈ [0,1)` places a ball at
//! `⟨k⟩^{α/(1-α)} k` of radius `C ⟨k⟩^{α/(1-α)}` for every lattice point
//! `k ∈ Z^n`. A smooth radial bump per ball, normalized by the pointwise
//! sum, gives the partition of unity driving every block decomposition.
//! The combinatorics of which windows meet which (plain, or after a
//! dilation of one family) carry the cardinality laws the norm estimates
//! rest on, so they are exposed here as first-class set operations.

use crate::error::{Error, Result};
use crate::grid::FreqBox;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

/// Default lower-bound radius constant `c`.
pub const DEFAULT_INNER_C: f64 = 0.75;

/// Candidate support constants, smallest first; `certified` scales them by
/// `√n` and takes the first that validates.
pub const OUTER_C_MENU: [f64; 5] = [2.0, 3.0, 4.0, 6.0, 8.0];

/// Scaled finite-difference bounds accepted for first and second window
/// derivatives (fixed multiples of the order-zero bound, which is 1).
pub const DERIV_BOUND_ORDER1: f64 = 16.0;
pub const DERIV_BOUND_ORDER2: f64 = 320.0;

/// A lattice index of the covering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FreqIndex {
    coords: [i64; 2],
    dim: usize,
}

impl FreqIndex {
    pub fn d1(k: i64) -> Self {
        FreqIndex {
            coords: [k, 0],
            dim: 1,
        }
    }

    pub fn d2(k0: i64, k1: i64) -> Self {
        FreqIndex {
            coords: [k0, k1],
            dim: 2,
        }
    }

    pub fn zero(dim: usize) -> Self {
        FreqIndex {
            coords: [0, 0],
            dim,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords[..self.dim]
    }

    pub fn norm_sq(&self) -> f64 {
        let mut s = 0.0;
        for &c in self.coords() {
            s += (c as f64) * (c as f64);
        }
        s
    }

    /// `⟨k⟩ = (1 + |k|²)^{1/2}`.
    pub fn weight(&self) -> f64 {
        libm::sqrt(1.0 + self.norm_sq())
    }
}

/// Parameters of a smooth α-covering.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaParams {
    pub alpha: f64,
    pub dim: usize,
    pub outer_c: f64,
    pub inner_c: f64,
}

/// The `C^∞` transition used in every bump: 1 at `u = 0`, 0 at `u = 1`.
fn glue(u: f64) -> f64 {
    if u <= 0.0 {
        return 1.0;
    }
    if u >= 1.0 {
        return 0.0;
    }
    let h = |t: f64| libm::exp(-1.0 / t);
    let a = h(1.0 - u);
    a / (a + h(u))
}

/// Radial bump profile in a normalized coordinate: 1 on `[0, 1/2]`, smooth
/// decay, exactly 0 from 1 on.
pub fn bump_profile(t: f64) -> f64 {
    if t <= 0.5 {
        1.0
    } else if t >= 1.0 {
        0.0
    } else {
        glue(2.0 * t - 1.0)
    }
}

/// The reference radial bump: 1 for `|ξ| ≤ 1`, supported in `|ξ| < 2`.
pub fn base_bump(xi_norm: f64) -> f64 {
    bump_profile(xi_norm / 2.0)
}

impl AlphaParams {
    pub fn new(alpha: f64, dim: usize, outer_c: f64, inner_c: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&alpha) {
            return Err(Error::InvalidParam(format!(
                "alpha must lie in [0, 1), got {alpha}"
            )));
        }
        if !(1..=2).contains(&dim) {
            return Err(Error::InvalidParam(format!(
                "dim must be 1 or 2, got {dim}"
            )));
        }
        if !(inner_c > 0.0 && inner_c < 1.0 && outer_c > 1.0) {
            return Err(Error::InvalidParam(format!(
                "need 0 < inner_c < 1 < outer_c, got inner_c={inner_c} outer_c={outer_c}"
            )));
        }
        Ok(AlphaParams {
            alpha,
            dim,
            outer_c,
            inner_c,
        })
    }

    /// Smallest menu constant whose covering passes `validate_bapu` on a
    /// probe lattice filling `domain` at spacing `step`.
    pub fn certified(alpha: f64, dim: usize, domain: &FreqBox, step: f64) -> Result<Self> {
        for c in OUTER_C_MENU {
            let params = AlphaParams::new(alpha, dim, c * libm::sqrt(dim as f64), DEFAULT_INNER_C)?;
            let set = WindowSet::covering(&params, domain);
            let report = validate_bapu(&set, domain, step, 4);
            if report.all_pass() {
                return Ok(params);
            }
        }
        Err(Error::InvalidParam(format!(
            "no menu constant certifies alpha={alpha} dim={dim} on this domain"
        )))
    }

    #[inline]
    fn growth_exponent(&self) -> f64 {
        self.alpha / (1.0 - self.alpha)
    }

    /// The block scale `⟨k⟩^{α/(1-α)}`.
    #[inline]
    pub fn scale(&self, k: &FreqIndex) -> f64 {
        libm::pow(1.0 + k.norm_sq(), 0.5 * self.growth_exponent())
    }

    /// Support ball `(center, radius)` of the window at `k`.
    pub fn block_geometry(&self, k: &FreqIndex) -> ([f64; 2], f64) {
        let m = self.scale(k);
        let mut center = [0.0; 2];
        for (a, &c) in k.coords().iter().enumerate() {
            center[a] = m * c as f64;
        }
        (center, self.outer_c * m)
    }

    fn dist(&self, a: [f64; 2], b: [f64; 2]) -> f64 {
        let mut s = 0.0;
        for ax in 0..self.dim {
            let d = a[ax] - b[ax];
            s += d * d;
        }
        libm::sqrt(s)
    }

    /// Un-normalized window value at `ξ`.
    pub fn rho(&self, k: &FreqIndex, xi: [f64; 2]) -> f64 {
        let (center, radius) = self.block_geometry(k);
        bump_profile(self.dist(xi, center) / radius)
    }

    /// All indices whose support ball contains `ξ`.
    pub fn covering_at(&self, xi: [f64; 2]) -> Vec<FreqIndex> {
        let mut xin = 0.0;
        for a in 0..self.dim {
            xin += xi[a] * xi[a];
        }
        let bound = libm::sqrt(xin);
        let mut out = Vec::new();
        self.enumerate_candidates(
            bound,
            |k, params| {
                let (center, radius) = params.block_geometry(&k);
                params.dist(xi, center) < radius
            },
            &mut out,
        );
        out
    }

    /// Sum of un-normalized windows at `ξ`.
    pub fn rho_sum(&self, xi: [f64; 2]) -> f64 {
        let mut s = 0.0;
        for k in self.covering_at(xi) {
            s += self.rho(&k, xi);
        }
        s
    }

    /// Normalized window value `ρ_k / Σ_l ρ_l` at `ξ`. Signals a covering
    /// gap when the denominator vanishes.
    pub fn eta(&self, k: &FreqIndex, xi: [f64; 2]) -> Result<f64> {
        let s = self.rho_sum(xi);
        if s <= 0.0 {
            return Err(Error::CoveringGap { xi, dim: self.dim });
        }
        Ok(self.rho(k, xi) / s)
    }

    /// Enumerate every index possibly relevant to a region reaching out to
    /// Euclidean distance `bound` from the origin (in frequency space), and
    /// keep those passing `accept`. The scan radius is pruned with the
    /// monotone tail of `|center(k)| - radius(k)`.
    fn enumerate_candidates<F>(&self, bound: f64, accept: F, out: &mut Vec<FreqIndex>)
    where
        F: Fn(FreqIndex, &AlphaParams) -> bool,
    {
        let beta = 0.5 * self.growth_exponent();
        let reach = |t: f64| {
            // |center| - radius for |k| = t.
            let w = 1.0 + t * t;
            t * libm::pow(w, beta) - self.outer_c * libm::pow(w, beta)
        };
        // Past t_mono, reach(t) is increasing: the positive root of
        // 1 + (1+2β)t² - 2Cβt from differentiating t(1+t²)^β - C(1+t²)^β.
        let c2b = 2.0 * self.outer_c * beta;
        let quad = c2b * c2b - 4.0 * (1.0 + 2.0 * beta);
        let t_mono = if quad <= 0.0 {
            0.0
        } else {
            (c2b + libm::sqrt(quad)) / (2.0 * (1.0 + 2.0 * beta))
        };
        let mut t_max = 2.0f64.max(t_mono);
        while reach(t_max) <= bound {
            t_max *= 2.0;
            if t_max > 1e12 {
                break;
            }
        }
        // Refine downward so the box scan stays tight.
        let mut lo = 0.0;
        let mut hi = t_max;
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if mid >= t_mono && reach(mid) > bound {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let t_int = libm::ceil(hi) as i64;
        match self.dim {
            1 => {
                for k in -t_int..=t_int {
                    let idx = FreqIndex::d1(k);
                    if accept(idx, self) {
                        out.push(idx);
                    }
                }
            }
            _ => {
                for k0 in -t_int..=t_int {
                    for k1 in -t_int..=t_int {
                        let idx = FreqIndex::d2(k0, k1);
                        if accept(idx, self) {
                            out.push(idx);
                        }
                    }
                }
            }
        }
    }

    /// Indices whose support ball intersects an axis-aligned box.
    pub fn active_indices(&self, region: &FreqBox) -> Vec<FreqIndex> {
        let mut corner = 0.0;
        for a in 0..self.dim {
            let m = region.lo[a].abs().max(region.hi[a].abs());
            corner += m * m;
        }
        let bound = libm::sqrt(corner);
        let mut out = Vec::new();
        self.enumerate_candidates(
            bound,
            |k, params| {
                let (center, radius) = params.block_geometry(&k);
                region.intersects_ball(center, radius)
            },
            &mut out,
        );
        out
    }

    /// Indices whose window, dilated by `1/λ` in the argument (so its
    /// support shrinks by `λ⁻¹`... support of `η_k(λ·)` is the support ball
    /// scaled by `1/λ`), meets the window of `l`. At `λ = 1` this is the
    /// plain overlap neighborhood.
    pub fn scaled_set(&self, l: &FreqIndex, lambda: f64) -> Vec<FreqIndex> {
        assert!(lambda > 0.0);
        let (cl, rl) = self.block_geometry(l);
        let mut target = [0.0; 2];
        for a in 0..self.dim {
            target[a] = lambda * cl[a];
        }
        let extra = lambda * rl;
        let mut tn = 0.0;
        for a in 0..self.dim {
            tn += target[a] * target[a];
        }
        let bound = libm::sqrt(tn) + extra;
        let mut out = Vec::new();
        self.enumerate_candidates(
            bound,
            |k, params| {
                let (ck, rk) = params.block_geometry(&k);
                params.dist(ck, target) < rk + extra
            },
            &mut out,
        );
        out
    }

    /// Indices whose window overlaps the window of `k`.
    pub fn neighbor_set(&self, k: &FreqIndex) -> Vec<FreqIndex> {
        self.scaled_set(k, 1.0)
    }
}

/// One materialized window of a covering.
#[derive(Debug, Clone)]
pub struct Window {
    pub index: FreqIndex,
    pub center: [f64; 2],
    pub radius: f64,
}

/// A covering restricted to the windows meeting a working box, with a
/// bucket index for point queries.
#[derive(Debug, Clone)]
pub struct WindowSet {
    pub params: AlphaParams,
    pub windows: Vec<Window>,
    by_index: BTreeMap<FreqIndex, usize>,
    domain: FreqBox,
    cells_per_axis: usize,
    cell_size: [f64; 2],
    cells: Vec<Vec<u32>>,
}

impl WindowSet {
    pub fn covering(params: &AlphaParams, domain: &FreqBox) -> Self {
        let mut indices = params.active_indices(domain);
        indices.sort();
        let windows: Vec<Window> = indices
            .iter()
            .map(|k| {
                let (center, radius) = params.block_geometry(k);
                Window {
                    index: *k,
                    center,
                    radius,
                }
            })
            .collect();
        let by_index = indices.iter().enumerate().map(|(i, k)| (*k, i)).collect();

        let mut width: f64 = 0.0;
        for a in 0..params.dim {
            width = width.max(domain.hi[a] - domain.lo[a]);
        }
        let min_radius = windows.iter().fold(f64::INFINITY, |m, w| m.min(w.radius));
        let target = (width / min_radius.max(1e-9)).min(4096.0).max(1.0);
        let cells_per_axis = libm::ceil(target) as usize;
        let mut cell_size = [1.0; 2];
        for a in 0..params.dim {
            cell_size[a] = (domain.hi[a] - domain.lo[a]) / cells_per_axis as f64;
        }
        let n_cells = if params.dim == 1 {
            cells_per_axis
        } else {
            cells_per_axis * cells_per_axis
        };
        let mut cells: Vec<Vec<u32>> = vec![Vec::new(); n_cells];
        let clampc = |v: i64, n: usize| v.clamp(0, n as i64 - 1) as usize;
        for (wi, w) in windows.iter().enumerate() {
            let mut lo = [0usize; 2];
            let mut hi = [0usize; 2];
            for a in 0..params.dim {
                lo[a] = clampc(
                    libm::floor((w.center[a] - w.radius - domain.lo[a]) / cell_size[a]) as i64,
                    cells_per_axis,
                );
                hi[a] = clampc(
                    libm::floor((w.center[a] + w.radius - domain.lo[a]) / cell_size[a]) as i64,
                    cells_per_axis,
                );
            }
            match params.dim {
                1 => {
                    for c in lo[0]..=hi[0] {
                        cells[c].push(wi as u32);
                    }
                }
                _ => {
                    for c0 in lo[0]..=hi[0] {
                        for c1 in lo[1]..=hi[1] {
                            cells[c0 * cells_per_axis + c1].push(wi as u32);
                        }
                    }
                }
            }
        }
        WindowSet {
            params: *params,
            windows,
            by_index,
            domain: *domain,
            cells_per_axis,
            cell_size,
            cells,
        }
    }

    pub fn len(&self) -> usize {
        self.windows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.windows.is_empty()
    }

    pub fn window_id(&self, k: &FreqIndex) -> Option<usize> {
        self.by_index.get(k).copied()
    }

    fn cell_of(&self, xi: [f64; 2]) -> Option<usize> {
        let mut c = [0usize; 2];
        for a in 0..self.params.dim {
            let rel = (xi[a] - self.domain.lo[a]) / self.cell_size[a];
            if rel < 0.0 || xi[a] > self.domain.hi[a] {
                return None;
            }
            c[a] = (libm::floor(rel) as usize).min(self.cells_per_axis - 1);
        }
        Some(match self.params.dim {
            1 => c[0],
            _ => c[0] * self.cells_per_axis + c[1],
        })
    }

    /// Window ids whose support contains `ξ`.
    pub fn local_ids(&self, xi: [f64; 2], out: &mut Vec<u32>) {
        out.clear();
        match self.cell_of(xi) {
            Some(cell) => {
                for &wi in &self.cells[cell] {
                    let w = &self.windows[wi as usize];
                    if self.params.dist(xi, w.center) < w.radius {
                        out.push(wi);
                    }
                }
            }
            None => {
                for k in self.params.covering_at(xi) {
                    if let Some(id) = self.window_id(&k) {
                        out.push(id as u32);
                    }
                }
            }
        }
    }

    /// Sum of un-normalized windows at `ξ` over this set.
    pub fn rho_sum_at(&self, xi: [f64; 2], scratch: &mut Vec<u32>) -> f64 {
        self.local_ids(xi, scratch);
        let mut s = 0.0;
        for &wi in scratch.iter() {
            let w = &self.windows[wi as usize];
            s += bump_profile(self.params.dist(xi, w.center) / w.radius);
        }
        s
    }

    /// Normalized symbol of window `wi` at `ξ`; errors on a covering gap.
    pub fn eta_at(&self, wi: usize, xi: [f64; 2], scratch: &mut Vec<u32>) -> Result<f64> {
        let s = self.rho_sum_at(xi, scratch);
        if s <= 0.0 {
            return Err(Error::CoveringGap {
                xi,
                dim: self.params.dim,
            });
        }
        let w = &self.windows[wi];
        Ok(bump_profile(self.params.dist(xi, w.center) / w.radius) / s)
    }

    /// Un-normalized symbol of window `wi` at `ξ`.
    pub fn rho_at(&self, wi: usize, xi: [f64; 2]) -> f64 {
        let w = &self.windows[wi];
        bump_profile(self.params.dist(xi, w.center) / w.radius)
    }
}

/// Outcome of certifying a window family on a lattice.
#[derive(Debug, Clone)]
pub struct BapuReport {
    /// max over the lattice of `|Σ_k η_k - 1|`.
    pub partition_max_dev: f64,
    pub partition_worst_xi: [f64; 2],
    /// First lattice point at which the window sum vanished, if any.
    pub gap_at: Option<[f64; 2]>,
    /// Worst positive symbol value found outside its support ball.
    pub support_max_violation: f64,
    /// min over windows of the window's minimum on its inner ball.
    pub lower_bound_min: f64,
    pub lower_bound_worst: (FreqIndex, [f64; 2]),
    /// Reciprocal of the largest overlap count (the provable floor for the
    /// inner-ball lower bound).
    pub overlap_max: usize,
    /// max over windows and lattice points of the scaled finite differences
    /// `scale(k)^{|δ|} |D^δ η_k|`, orders one and two.
    pub deriv_scaled_max: [f64; 2],
    pub deriv_worst: (FreqIndex, [f64; 2]),
    pub partition_tol: f64,
}

impl BapuReport {
    pub fn partition_ok(&self) -> bool {
        self.gap_at.is_none() && self.partition_max_dev < self.partition_tol
    }

    pub fn support_ok(&self) -> bool {
        self.support_max_violation == 0.0
    }

    pub fn lower_bound_ok(&self) -> bool {
        self.overlap_max > 0 && self.lower_bound_min >= 1.0 / self.overlap_max as f64 - 1e-12
    }

    pub fn derivatives_ok(&self) -> bool {
        self.deriv_scaled_max[0] <= DERIV_BOUND_ORDER1
            && self.deriv_scaled_max[1] <= DERIV_BOUND_ORDER2
    }

    pub fn all_pass(&self) -> bool {
        self.partition_ok() && self.support_ok() && self.lower_bound_ok() && self.derivatives_ok()
    }
}

/// Certify the four window-family conditions on a regular lattice over
/// `domain` at spacing `step`: partition of unity, support confinement,
/// inner-ball lower bound, and scaled derivative bounds (the last measured
/// by centered differences at step `step`, sampled every `deriv_stride`
/// lattice points). Never errors; failed checks are reported.
pub fn validate_bapu(
    set: &WindowSet,
    domain: &FreqBox,
    step: f64,
    deriv_stride: usize,
) -> BapuReport {
    let dim = set.params.dim;
    let counts: Vec<i64> = (0..dim)
        .map(|a| (libm::floor((domain.hi[a] - domain.lo[a]) / step) as i64) + 1)
        .collect();
    let total: usize = counts.iter().map(|&c| c as usize).product();
    let flat_of = |it: &[i64; 2]| -> usize {
        match dim {
            1 => it[0] as usize,
            _ => (it[0] * counts[1] + it[1]) as usize,
        }
    };
    let xi_of = |it: &[i64; 2]| -> [f64; 2] {
        [
            domain.lo[0] + it[0] as f64 * step,
            if dim == 2 {
                domain.lo[1] + it[1] as f64 * step
            } else {
                0.0
            },
        ]
    };
    // Lattice-aligned bounding box of a ball, clipped to the domain.
    let bbox_of = |center: [f64; 2], radius: f64| -> ([i64; 2], [i64; 2]) {
        let mut lo = [0i64; 2];
        let mut hi = [0i64; 2];
        for a in 0..dim {
            lo[a] = (libm::ceil((center[a] - radius - domain.lo[a]) / step) as i64).max(0);
            hi[a] =
                (libm::floor((center[a] + radius - domain.lo[a]) / step) as i64).min(counts[a] - 1);
        }
        (lo, hi)
    };
    let for_ball = |center: [f64; 2], radius: f64, f: &mut dyn FnMut([i64; 2], [f64; 2], f64)| {
        let (lo, hi) = bbox_of(center, radius);
        if (0..dim).any(|a| lo[a] > hi[a]) {
            return;
        }
        let mut it = [lo[0], lo[1]];
        if dim == 1 {
            it[1] = 0;
        }
        while it[0] <= hi[0] {
            let xi = xi_of(&it);
            let mut d2 = 0.0;
            for a in 0..dim {
                let d = xi[a] - center[a];
                d2 += d * d;
            }
            let d = libm::sqrt(d2);
            if d < radius {
                f(it, xi, d);
            }
            if dim == 1 {
                it[0] += 1;
            } else {
                it[1] += 1;
                if it[1] > hi[1] {
                    it[1] = lo[1];
                    it[0] += 1;
                }
            }
        }
    };

    let mut report = BapuReport {
        partition_max_dev: 0.0,
        partition_worst_xi: [0.0; 2],
        gap_at: None,
        support_max_violation: 0.0,
        lower_bound_min: f64::INFINITY,
        lower_bound_worst: (FreqIndex::zero(dim), [0.0; 2]),
        overlap_max: 0,
        deriv_scaled_max: [0.0, 0.0],
        deriv_worst: (FreqIndex::zero(dim), [0.0; 2]),
        partition_tol: 1e-9,
    };

    // Pass A: window-sum and overlap count at every lattice point.
    let mut denom = alloc::vec![0.0f64; total];
    let mut cover = alloc::vec![0u16; total];
    for w in &set.windows {
        let scale = 1.0 / w.radius;
        for_ball(w.center, w.radius, &mut |it, _xi, d| {
            let flat = flat_of(&it);
            denom[flat] += bump_profile(d * scale);
            cover[flat] += 1;
        });
    }
    for flat in 0..total {
        if cover[flat] == 0 && report.gap_at.is_none() {
            let coords = match dim {
                1 => [flat as i64, 0],
                _ => [(flat as i64) / counts[1], (flat as i64) % counts[1]],
            };
            report.gap_at = Some(xi_of(&coords));
        }
        report.overlap_max = report.overlap_max.max(cover[flat] as usize);
    }

    // Pass B: independent per-window accumulation of the normalized
    // symbols; their sum must return to 1.
    let mut psum = alloc::vec![0.0f64; total];
    for w in &set.windows {
        let scale = 1.0 / w.radius;
        for_ball(w.center, w.radius, &mut |it, _xi, d| {
            let flat = flat_of(&it);
            if denom[flat] > 0.0 {
                psum[flat] += bump_profile(d * scale) / denom[flat];
            }
        });
    }
    for flat in 0..total {
        if cover[flat] == 0 {
            continue;
        }
        let dev = (psum[flat] - 1.0).abs();
        if dev > report.partition_max_dev {
            report.partition_max_dev = dev;
            let coords = match dim {
                1 => [flat as i64, 0],
                _ => [(flat as i64) / counts[1], (flat as i64) % counts[1]],
            };
            report.partition_worst_xi = xi_of(&coords);
        }
    }

    // Pass C, per window: support probes just outside the ball, the
    // inner-ball lower bound, and scaled finite differences on a
    // subsampled stencil grid.
    let eta_at_bin = |w: &Window, it: &[i64; 2]| -> f64 {
        let flat = flat_of(it);
        if denom[flat] <= 0.0 {
            return 0.0;
        }
        let xi = xi_of(it);
        let mut d2 = 0.0;
        for a in 0..dim {
            let d = xi[a] - w.center[a];
            d2 += d * d;
        }
        bump_profile(libm::sqrt(d2) / w.radius) / denom[flat]
    };
    let stride = deriv_stride.max(1) as i64;
    for w in &set.windows {
        let scale_len = w.radius / set.params.outer_c;
        // Support: the symbol must vanish outside its stated ball.
        for a in 0..dim {
            for sgn in [-1.0, 1.0] {
                let mut xi = w.center;
                xi[a] += sgn * w.radius * (1.0 + 1e-9);
                let v = set.params.rho(&w.index, xi);
                report.support_max_violation = report.support_max_violation.max(v);
            }
        }
        // Inner-ball lower bound.
        let inner = set.params.inner_c * scale_len;
        for_ball(w.center, inner, &mut |it, xi, _d| {
            let v = eta_at_bin(w, &it);
            if v < report.lower_bound_min {
                report.lower_bound_min = v;
                report.lower_bound_worst = (w.index, xi);
            }
        });
        // Scaled centered differences, orders one and two.
        let (lo, hi) = bbox_of(w.center, w.radius);
        let interior = |it: &[i64; 2]| (0..dim).all(|a| it[a] > 0 && it[a] < counts[a] - 1);
        let mut it = [lo[0], lo[1]];
        if dim == 1 {
            it[1] = 0;
        }
        while it[0] <= hi[0] {
            let on_stride = it[0] % stride == 0 && (dim == 1 || it[1] % stride == 0);
            if on_stride && interior(&it) {
                let xi = xi_of(&it);
                let v0 = eta_at_bin(w, &it);
                let mut d1max = 0.0f64;
                let mut d2max = 0.0f64;
                for a in 0..dim {
                    let mut p = it;
                    p[a] += 1;
                    let mut m = it;
                    m[a] -= 1;
                    let vp = eta_at_bin(w, &p);
                    let vm = eta_at_bin(w, &m);
                    d1max = d1max.max(((vp - vm) / (2.0 * step)).abs());
                    d2max = d2max.max(((vp - 2.0 * v0 + vm) / (step * step)).abs());
                }
                if dim == 2 {
                    let ev = |d0: i64, d1: i64| eta_at_bin(w, &[it[0] + d0, it[1] + d1]);
                    let mixed =
                        (ev(1, 1) - ev(1, -1) - ev(-1, 1) + ev(-1, -1)) / (4.0 * step * step);
                    d2max = d2max.max(mixed.abs());
                }
                let s1 = scale_len * d1max;
                let s2 = scale_len * scale_len * d2max;
                if s1 > report.deriv_scaled_max[0] {
                    report.deriv_scaled_max[0] = s1;
                    report.deriv_worst = (w.index, xi);
                }
                if s2 > report.deriv_scaled_max[1] {
                    report.deriv_scaled_max[1] = s2;
                }
            }
            if dim == 1 {
                it[0] += 1;
            } else {
                it[1] += 1;
                if it[1] > hi[1] {
                    it[1] = lo[1];
                    it[0] += 1;
                }
            }
        }
    }
    if report.lower_bound_min == f64::INFINITY {
        // No lattice point fell in any inner ball; treat as failed
        // certification rather than a vacuous pass.
        report.lower_bound_min = 0.0;
    }
    report
}
