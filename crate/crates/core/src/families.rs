//! Constructed fields: atoms, plateaus, separated lattice sums and
//! characteristic-box pairs.
//!
//! Each constructor realizes its field exactly on the frequency lattice
//! (translations and modulations enter as phases in the symbol, so nothing
//! is rounded to sample positions). Constructions that would need
//! frequencies beyond Nyquist or structure below a few lattice cells
//! return `Unresolvable`.

use crate::covering::{base_bump, AlphaParams, FreqIndex};
use crate::error::{Error, Result};
use crate::field::SampledField;
use crate::grid::GridSpec;
use crate::transform::DyadicWindows;
use crate::Complex64;
use alloc::vec::Vec;

/// Minimum lattice cells across the narrowest constructed bump.
const MIN_CELLS: f64 = 4.0;

fn phase(theta: f64) -> Complex64 {
    Complex64::new(libm::cos(theta), libm::sin(theta))
}

/// Smooth reference field `exp(-|x|²/(2σ²))`.
pub fn gaussian(grid: &GridSpec, sigma: f64) -> Result<SampledField> {
    if !(sigma > 0.0) {
        return Err(Error::InvalidParam(alloc::format!(
            "sigma must be positive, got {sigma}"
        )));
    }
    if 4.0 / sigma > grid.nyquist() || sigma < MIN_CELLS * grid.dx() {
        return Err(Error::Unresolvable(
            "gaussian width outside the resolvable range",
        ));
    }
    Ok(SampledField::from_samples(*grid, |x| {
        let mut r2 = 0.0;
        for a in 0..grid.dim {
            r2 += x[a] * x[a];
        }
        Complex64::new(libm::exp(-0.5 * r2 / (sigma * sigma)), 0.0)
    }))
}

/// Inverse transform of one covering bump `ρ_k`.
pub fn bump_atom(grid: &GridSpec, params: &AlphaParams, k: &FreqIndex) -> Result<SampledField> {
    let (center, radius) = params.block_geometry(k);
    let mut cn = 0.0;
    for a in 0..grid.dim {
        cn += center[a] * center[a];
    }
    if libm::sqrt(cn) + radius > grid.nyquist() {
        return Err(Error::Unresolvable("window atom reaches past Nyquist"));
    }
    if radius < MIN_CELLS * grid.freq_step() {
        return Err(Error::Unresolvable("window atom below lattice resolution"));
    }
    Ok(SampledField::from_symbol(*grid, |xi| {
        Complex64::new(params.rho(k, xi), 0.0)
    }))
}

/// `e^{i x₁} 𝓕^{-1}(ρ(λ·))`: a unit-frequency carrier with an `O(1/λ)`
/// spectral width.
pub fn modulated_atom(grid: &GridSpec, lambda: f64) -> Result<SampledField> {
    if !(lambda > 0.0) {
        return Err(Error::InvalidParam(alloc::format!(
            "lambda must be positive, got {lambda}"
        )));
    }
    let radius = 2.0 / lambda;
    if radius < MIN_CELLS * grid.freq_step() {
        return Err(Error::Unresolvable(
            "modulated atom narrower than the lattice",
        ));
    }
    if 1.0 + radius > grid.nyquist() {
        return Err(Error::Unresolvable("modulated atom reaches past Nyquist"));
    }
    Ok(SampledField::from_symbol(*grid, |xi| {
        let mut d2 = (xi[0] - 1.0) * (xi[0] - 1.0);
        for a in 1..grid.dim {
            d2 += xi[a] * xi[a];
        }
        Complex64::new(base_bump(lambda * libm::sqrt(d2)), 0.0)
    }))
}

/// Greedy selection of indices whose support balls are pairwise disjoint,
/// scanned in a fixed order.
fn separated_subset(params: &AlphaParams, candidates: &[FreqIndex]) -> Vec<FreqIndex> {
    let mut kept: Vec<FreqIndex> = Vec::new();
    for k in candidates {
        let (ck, rk) = params.block_geometry(k);
        let clear = kept.iter().all(|l| {
            let (cl, rl) = params.block_geometry(l);
            let mut d2 = 0.0;
            for a in 0..params.dim {
                let d = ck[a] - cl[a];
                d2 += d * d;
            }
            libm::sqrt(d2) > rk + rl
        });
        if clear {
            kept.push(*k);
        }
    }
    kept
}

fn shell_candidates(dim: usize, lo: f64, hi: f64) -> Vec<FreqIndex> {
    let mut out = Vec::new();
    let top = libm::floor(hi) as i64;
    match dim {
        1 => {
            for l in 1..=top {
                if (l as f64) >= lo {
                    out.push(FreqIndex::d1(l));
                    out.push(FreqIndex::d1(-l));
                }
            }
        }
        _ => {
            for l0 in -top..=top {
                for l1 in -top..=top {
                    let n = libm::sqrt((l0 * l0 + l1 * l1) as f64);
                    if n >= lo && n <= hi && n > 0.0 {
                        out.push(FreqIndex::d2(l0, l1));
                    }
                }
            }
        }
    }
    out.sort_by(|a, b| {
        let (na, nb) = (a.norm_sq(), b.norm_sq());
        na.partial_cmp(&nb).unwrap().then(a.cmp(b))
    });
    out
}

/// The growing-dilation lattice sum: one narrow bump per separated index
/// on the shell `|l| ∈ [ε₀ λ^{1-α}, ε₁ λ^{1-α}]`, placed at `c_l/λ` with a
/// translation phase `λ^{1-α} l`.
pub fn lattice_sum_up(
    grid: &GridSpec,
    params: &AlphaParams,
    lambda: f64,
    eps: (f64, f64),
) -> Result<SampledField> {
    let shell_scale = libm::pow(lambda, 1.0 - params.alpha);
    let (lo, hi) = (eps.0 * shell_scale, eps.1 * shell_scale);
    let kept = separated_subset(params, &shell_candidates(params.dim, lo.max(1.0), hi));
    if kept.is_empty() {
        return Err(Error::Unresolvable("empty separated shell for lattice sum"));
    }
    let c_fam = params.outer_c / 4.0;
    struct Piece {
        center: [f64; 2],
        radius_arg: f64,
        shift: [f64; 2],
    }
    let mut pieces = Vec::new();
    for l in &kept {
        let (cl, _) = params.block_geometry(l);
        let m = params.scale(l);
        let width = 2.0 * c_fam * m / lambda;
        if width < MIN_CELLS * grid.freq_step() {
            return Err(Error::Unresolvable(
                "lattice-sum bump narrower than the lattice",
            ));
        }
        let mut center = [0.0; 2];
        let mut shift = [0.0; 2];
        for a in 0..params.dim {
            center[a] = cl[a] / lambda;
            shift[a] = shell_scale * l.coords()[a] as f64;
        }
        if shift[0].abs().max(shift[1].abs()) > grid.half_period / 2.0 {
            return Err(Error::Unresolvable(
                "lattice-sum translations wrap the torus",
            ));
        }
        pieces.push(Piece {
            center,
            radius_arg: lambda / (c_fam * m),
            shift,
        });
    }
    Ok(SampledField::from_symbol(*grid, |xi| {
        let mut acc = Complex64::new(0.0, 0.0);
        for p in &pieces {
            let mut d2 = 0.0;
            let mut dot = 0.0;
            for a in 0..grid.dim {
                let d = xi[a] - p.center[a];
                d2 += d * d;
                dot += p.shift[a] * d;
            }
            let env = base_bump(p.radius_arg * libm::sqrt(d2));
            if env != 0.0 {
                acc += phase(-dot) * env;
            }
        }
        acc
    }))
}

/// The shrinking-dilation lattice sum: full-width bumps at the windows of a
/// separated shell `|l| ∈ [ε₀ λ^{α-1}, ε₁ λ^{α-1}]`, spatially translated to
/// `C'l`. Returns the field and the chosen separation multiplier `C'`.
pub fn lattice_sum_down(
    grid: &GridSpec,
    params: &AlphaParams,
    lambda: f64,
    eps: (f64, f64),
) -> Result<(SampledField, f64)> {
    if !(lambda <= 1.0) {
        return Err(Error::InvalidParam(alloc::format!(
            "shrinking lattice sum needs lambda <= 1, got {lambda}"
        )));
    }
    let shell_scale = libm::pow(lambda, params.alpha - 1.0);
    let (lo, hi) = (eps.0 * shell_scale, eps.1 * shell_scale);
    let kept = separated_subset(params, &shell_candidates(params.dim, lo.max(1.0), hi));
    if kept.is_empty() {
        return Err(Error::Unresolvable("empty separated shell for lattice sum"));
    }
    let c_fam = params.outer_c / 4.0;
    let mut l_max = 0.0f64;
    for l in &kept {
        l_max = l_max.max(libm::sqrt(l.norm_sq()));
    }
    // Peak of one piece at its own center: (2π)^{-n} ∫ ρ(|ξ|/(c m)) dξ.
    let bump_mass_1d = {
        // Fixed Simpson rule on [-2, 2].
        let n = 400;
        let h = 4.0 / n as f64;
        let mut s = 0.0;
        for i in 0..=n {
            let t: f64 = -2.0 + i as f64 * h;
            let w = if i == 0 || i == n {
                1.0
            } else if i % 2 == 1 {
                4.0
            } else {
                2.0
            };
            s += w * base_bump(t.abs());
        }
        s * h / 3.0
    };
    let build = |c_prime: f64| -> SampledField {
        let pieces: Vec<([f64; 2], f64, [f64; 2])> = kept
            .iter()
            .map(|l| {
                let (cl, _) = params.block_geometry(l);
                let m = params.scale(l);
                let mut shift = [0.0; 2];
                for a in 0..params.dim {
                    shift[a] = c_prime * l.coords()[a] as f64;
                }
                (cl, 1.0 / (c_fam * m), shift)
            })
            .collect();
        SampledField::from_symbol(*grid, |xi| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (center, inv_w, shift) in &pieces {
                let mut d2 = 0.0;
                let mut dot = 0.0;
                for a in 0..grid.dim {
                    let d = xi[a] - center[a];
                    d2 += d * d;
                    dot += shift[a] * d;
                }
                let env = base_bump(inv_w * libm::sqrt(d2));
                if env != 0.0 {
                    acc += phase(-dot) * env;
                }
            }
            acc
        })
    };
    // Smallest power-of-two translation multiplier whose pieces do not
    // interfere: at every piece center the field keeps at least half of the
    // single-piece peak.
    let mut c_prime = 8.0;
    while c_prime * l_max <= grid.half_period / 2.0 {
        let f = build(c_prime);
        let two_pi_n = libm::pow(2.0 * core::f64::consts::PI, grid.dim as f64);
        let ok = kept.iter().all(|l| {
            let m = params.scale(l);
            let peak = libm::pow(c_fam * m * bump_mass_1d, grid.dim as f64) / two_pi_n;
            let mut x = [0.0; 2];
            for a in 0..grid.dim {
                x[a] = c_prime * l.coords()[a] as f64;
            }
            // Nearest sample to the piece center.
            let dx = grid.dx();
            let mut bins = [0usize; 2];
            for a in 0..grid.dim {
                let rel = (x[a] + grid.half_period) / dx;
                bins[a] =
                    (libm::round(rel) as i64).rem_euclid(grid.samples_per_axis as i64) as usize;
            }
            f.values()[grid.flat_of_bins(bins)].norm() >= 0.5 * peak
        });
        if ok {
            return Ok((f, c_prime));
        }
        c_prime *= 2.0;
    }
    Err(Error::Unresolvable(
        "no separation multiplier fits the torus",
    ))
}

/// `𝓕^{-1} φ_j`: the plateau annulus of one dyadic level.
pub fn annulus_plateau(grid: &GridSpec, dw: &DyadicWindows, level: usize) -> Result<SampledField> {
    let (_, hi) = dw.support_annulus(level);
    if hi > grid.nyquist() {
        return Err(Error::Unresolvable("dyadic level reaches past Nyquist"));
    }
    if level >= dw.levels {
        return Err(Error::Unresolvable("dyadic level outside the family"));
    }
    Ok(SampledField::from_symbol(*grid, |xi| {
        Complex64::new(dw.symbol(level, xi), 0.0)
    }))
}

/// Sum of spatially translated window atoms inside the plateau annulus of
/// one dyadic level: `Σ_k τ_{νk} 𝓕^{-1} ρ_k`, over a separated index set.
pub fn translated_lattice(
    grid: &GridSpec,
    params: &AlphaParams,
    dw: &DyadicWindows,
    level: usize,
    shift_mult: f64,
) -> Result<SampledField> {
    let (lo, hi) = dw.plateau_annulus(level);
    if hi > grid.nyquist() {
        return Err(Error::Unresolvable("dyadic level reaches past Nyquist"));
    }
    // Candidates whose whole window sits inside the plateau annulus.
    let all = shell_candidates(params.dim, 0.5, libm::pow(hi, 1.0 - params.alpha) + 2.0);
    let mut inside = Vec::new();
    for k in all {
        let (c, r) = params.block_geometry(&k);
        let mut cn = 0.0;
        for a in 0..params.dim {
            cn += c[a] * c[a];
        }
        let cn = libm::sqrt(cn);
        if cn - r >= lo && cn + r <= hi {
            inside.push(k);
        }
    }
    let kept = separated_subset(params, &inside);
    if kept.is_empty() {
        return Err(Error::Unresolvable(
            "no separated atoms fit the plateau annulus",
        ));
    }
    if params.block_geometry(&kept[0]).1 < MIN_CELLS * grid.freq_step() {
        return Err(Error::Unresolvable("atoms below lattice resolution"));
    }
    let pieces: Vec<(FreqIndex, [f64; 2])> = kept
        .iter()
        .map(|k| {
            let mut shift = [0.0; 2];
            for a in 0..params.dim {
                shift[a] = shift_mult * k.coords()[a] as f64;
            }
            (*k, shift)
        })
        .collect();
    Ok(SampledField::from_symbol(*grid, |xi| {
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, shift) in &pieces {
            let env = params.rho(k, xi);
            if env != 0.0 {
                let mut dot = 0.0;
                for a in 0..grid.dim {
                    dot += shift[a] * xi[a];
                }
                acc += phase(-dot) * env;
            }
        }
        acc
    }))
}

/// Geometry of a constructed characteristic box.
#[derive(Debug, Clone, Copy)]
pub struct CharBoxInfo {
    /// Signed lattice index of the box center, per axis.
    pub center_bin: i64,
    /// Half-width in lattice bins.
    pub half_bins: i64,
    /// Points per axis, `2 * half_bins + 1`.
    pub points_per_axis: i64,
}

/// The characteristic-function pair: `f̂ = χ_box` at `(X_J, …, X_J)` with
/// half-width `r X_J^{α} …` (`r m_J / 2`), `ĝ` its reflection. Both boxes
/// are aligned to the lattice so the product spectrum is an exact discrete
/// tent.
pub fn char_box_pair(
    grid: &GridSpec,
    alpha: f64,
    r: f64,
    j: i64,
) -> Result<(SampledField, SampledField, CharBoxInfo)> {
    if j < 1 {
        return Err(Error::InvalidParam(alloc::format!(
            "box index must be >= 1, got {j}"
        )));
    }
    let m = libm::pow(j as f64, alpha / (1.0 - alpha));
    let center = m * j as f64;
    let half = 0.5 * r * m;
    let step = grid.freq_step();
    let center_bin = libm::round(center / step) as i64;
    let half_bins = libm::floor(half / step) as i64;
    if half_bins < 4 {
        return Err(Error::Unresolvable(
            "characteristic box below lattice resolution",
        ));
    }
    let max_bin = (grid.samples_per_axis / 2) as i64 - 1;
    if center_bin + half_bins > max_bin {
        return Err(Error::Unresolvable(
            "characteristic box reaches past Nyquist",
        ));
    }
    let in_box = move |xi: f64, sign: f64| -> bool {
        let b = libm::round(xi / step) as i64;
        (b - sign as i64 * center_bin).abs() <= half_bins
    };
    let dim = grid.dim;
    let f = SampledField::from_symbol(*grid, |xi| {
        if (0..dim).all(|a| in_box(xi[a], 1.0)) {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let g = SampledField::from_symbol(*grid, |xi| {
        if (0..dim).all(|a| in_box(xi[a], -1.0)) {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    Ok((
        f,
        g,
        CharBoxInfo {
            center_bin,
            half_bins,
            points_per_axis: 2 * half_bins + 1,
        },
    ))
}

/// The full-cube characteristic pair: `f̂ = χ_box` on `[X, 3X]^n` at
/// `X = j^{1/(1-α)}`, `ĝ` its reflection, lattice-aligned.
pub fn char_box_pair_wide(
    grid: &GridSpec,
    alpha: f64,
    j: i64,
) -> Result<(SampledField, SampledField, CharBoxInfo)> {
    if j < 1 {
        return Err(Error::InvalidParam(alloc::format!(
            "box index must be >= 1, got {j}"
        )));
    }
    let x = libm::pow(j as f64, 1.0 / (1.0 - alpha));
    let step = grid.freq_step();
    let center_bin = libm::round(2.0 * x / step) as i64;
    let half_bins = libm::floor(x / step) as i64;
    if half_bins < 4 {
        return Err(Error::Unresolvable(
            "characteristic box below lattice resolution",
        ));
    }
    let max_bin = (grid.samples_per_axis / 2) as i64 - 1;
    if center_bin + half_bins > max_bin {
        return Err(Error::Unresolvable(
            "characteristic box reaches past Nyquist",
        ));
    }
    let in_box = move |xi: f64, sign: f64| -> bool {
        let b = libm::round(xi / step) as i64;
        (b - sign as i64 * center_bin).abs() <= half_bins
    };
    let dim = grid.dim;
    let f = SampledField::from_symbol(*grid, |xi| {
        if (0..dim).all(|a| in_box(xi[a], 1.0)) {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let g = SampledField::from_symbol(*grid, |xi| {
        if (0..dim).all(|a| in_box(xi[a], -1.0)) {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    Ok((
        f,
        g,
        CharBoxInfo {
            center_bin,
            half_bins,
            points_per_axis: 2 * half_bins + 1,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::GridSpec;

    fn grid() -> GridSpec {
        GridSpec::default_1d()
    }

    #[test]
    fn gaussian_and_bump_atom_resolvability() {
        let g = grid();
        assert!(gaussian(&g, 1.0).is_ok());
        assert!(matches!(gaussian(&g, 1e-4), Err(Error::Unresolvable(_))));
        let p = AlphaParams::new(0.5, 1, 2.0, 0.75).unwrap();
        assert!(bump_atom(&g, &p, &FreqIndex::d1(3)).is_ok());
        // k far past Nyquist.
        assert!(matches!(
            bump_atom(&g, &p, &FreqIndex::d1(60)),
            Err(Error::Unresolvable(_))
        ));
    }

    #[test]
    fn lattice_sum_up_l2_is_lambda_flat() {
        let g = GridSpec::new(1, 256.0 * core::f64::consts::PI, 1 << 16).unwrap();
        let p = AlphaParams::new(0.5, 1, 2.0, 0.75).unwrap();
        let mut norms = alloc::vec::Vec::new();
        for &lambda in &[4.0, 8.0, 16.0, 32.0] {
            let f = lattice_sum_up(&g, &p, lambda, (0.125, 0.5)).unwrap();
            norms.push(f.lp_norm(2.0));
        }
        let max = norms.iter().cloned().fold(0.0f64, f64::max);
        let min = norms.iter().cloned().fold(f64::INFINITY, f64::min);
        assert!(max / min < 4.0, "norms {norms:?}");
    }

    #[test]
    fn lattice_sum_down_interference_bound_holds() {
        let g = grid();
        let p = AlphaParams::new(0.5, 1, 2.0, 0.75).unwrap();
        let (f, c_prime) = lattice_sum_down(&g, &p, 1.0 / 16.0, (0.125, 0.5)).unwrap();
        assert!(c_prime >= 8.0);
        assert!(f.lp_norm(2.0) > 0.0);
    }

    #[test]
    fn char_box_product_spectrum_is_discrete_tent() {
        let g = grid();
        let (f, gg, info) = char_box_pair(&g, 0.5, 1.03, 7).unwrap();
        let h = f.mul(&gg).unwrap();
        let vol = 2.0 * g.half_period;
        let p = info.points_per_axis;
        let mut worst = 0.0f64;
        for i in 0..g.len() {
            let bins = g.axis_bins(i);
            let t = g.signed_bin(bins[0]);
            let want = if t.abs() < p {
                (p - t.abs()) as f64 / (vol * vol)
            } else {
                0.0
            };
            worst = worst.max((h.spectrum()[i].norm() - want).abs() * vol * vol / p as f64);
        }
        assert!(worst < 1e-8, "worst rel deviation {worst}");
    }

    #[test]
    fn translated_lattice_builds_on_plateau() {
        // Windows narrow enough to sit inside a dyadic plateau annulus need
        // a shallow covering (windows grow like |center|^alpha) and a wide
        // band.
        let g = GridSpec::new(1, 4.0 * core::f64::consts::PI, 1 << 14).unwrap();
        let p = AlphaParams::new(0.3, 1, 2.0, 0.75).unwrap();
        let dw = DyadicWindows::for_grid(&g);
        let f = translated_lattice(&g, &p, &dw, 8, 1.0).unwrap();
        assert!(f.lp_norm(2.0) > 0.0);
        // Spectrum confined to the plateau annulus.
        let (lo, hi) = dw.plateau_annulus(8);
        let sup = f.spectral_support_box().unwrap();
        assert!(sup.lo[0].abs().max(sup.hi[0].abs()) <= hi + 1e-9);
        assert!(sup.hi[0] >= lo);
    }
}
