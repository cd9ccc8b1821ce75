//! Experiment runners: regenerate the scaling, embedding, cardinality and
//! product-growth phenomena at desk scale and fit their log–log slopes
//! against the closed-form exponents.
//!
//! Every runner is a pure function of its config; reports carry a canonical
//! config string and its hash so reruns are bit-identical and traceable.

use crate::covering::{AlphaParams, FreqIndex, WindowSet};
use crate::error::{Error, Result};
use crate::exponents::{self, IndexPair};
use crate::families;
use crate::field::SampledField;
use crate::fit::{fit_power_law, FitResult};
use crate::grid::GridSpec;
use crate::rect::{self, RectCovering};
use crate::rng::Rng;
use crate::space::SpaceParams;
use crate::transform::{
    alpha_mod_norm, besov_norm, circ_norm, rect_norm, window_set_for, DyadicWindows,
};
use crate::util::Fnv1a;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

/// Default fit-quality floor for a passing verdict.
pub const R2_FLOOR: f64 = 0.95;

/// Outcome of one experiment: a fitted power law against its predicted
/// exponent.
#[derive(Debug, Clone)]
pub struct ExperimentReport {
    pub id: String,
    pub config: String,
    pub config_hash: u64,
    /// `(parameter, measured value)` pairs, in run order.
    pub series: Vec<(f64, f64)>,
    pub fit: FitResult,
    pub theory_slope: f64,
    pub tolerance: f64,
    pub r2_floor: f64,
    pub verdict: bool,
    pub notes: Vec<String>,
}

impl ExperimentReport {
    fn build(
        id: &str,
        config: String,
        series: Vec<(f64, f64)>,
        theory_slope: f64,
        tolerance: f64,
        notes: Vec<String>,
    ) -> Result<Self> {
        let xs: Vec<f64> = series.iter().map(|p| p.0).collect();
        let ys: Vec<f64> = series.iter().map(|p| p.1).collect();
        let fit = fit_power_law(&xs, &ys)?;
        let mut hasher = Fnv1a::new();
        hasher.write(config.as_bytes());
        let verdict = (fit.slope - theory_slope).abs() <= tolerance && fit.r_squared >= R2_FLOOR;
        Ok(ExperimentReport {
            id: String::from(id),
            config_hash: hasher.finish(),
            config,
            series,
            fit,
            theory_slope,
            tolerance,
            r2_floor: R2_FLOOR,
            verdict,
            notes,
        })
    }
}

fn canon_f(x: f64) -> String {
    if x.is_infinite() {
        String::from("inf")
    } else {
        format!("{x}")
    }
}

fn canon_grid(grid: &GridSpec) -> String {
    format!(
        "dim={};L={};N={}",
        grid.dim,
        canon_f(grid.half_period),
        grid.samples_per_axis
    )
}

fn canon_space(sp: &SpaceParams) -> String {
    format!(
        "s={};p={};q={};alpha={}",
        canon_f(sp.s),
        canon_f(sp.p),
        canon_f(sp.q),
        canon_f(sp.alpha)
    )
}

/// Complex white noise filtered to the middle third of the band: the
/// reproducible random field suite.
pub fn suite_field(grid: &GridSpec, seed: u64) -> SampledField {
    let mut rng = Rng::seed_from(seed);
    let nyq = grid.nyquist();
    SampledField::from_symbol(*grid, |xi| {
        let r = libm::sqrt(xi[0] * xi[0] + xi[1] * xi[1]);
        let z = rng.complex_normal();
        if r > nyq / 3.0 && r < 2.0 * nyq / 3.0 {
            z
        } else {
            crate::Complex64::new(0.0, 0.0)
        }
    })
}

// ---------------------------------------------------------------------
// Scaling
// ---------------------------------------------------------------------

/// Which constructed field feeds the dilation fit. Families marked
/// per-λ are regenerated at every dilation value.
#[derive(Debug, Clone, PartialEq)]
pub enum ScalingFamily {
    Gaussian {
        sigma: f64,
    },
    BumpAtom {
        k: i64,
    },
    /// Per-λ unit-carrier atom with `O(1/λ)` spectral width.
    ModulatedAtom,
    /// Per-λ window atom at the index tracking `λ^{-(1-α)}`.
    TrackedAtom,
    /// Per-λ separated lattice sum on the shell `|l| ~ λ^{1-α}`.
    LatticeSumUp {
        eps: (f64, f64),
    },
    /// Per-λ separated lattice sum on the shell `|l| ~ λ^{-(1-α)}`.
    LatticeSumDown {
        eps: (f64, f64),
    },
}

impl ScalingFamily {
    fn name(&self) -> String {
        match self {
            ScalingFamily::Gaussian { sigma } => format!("gaussian(sigma={})", canon_f(*sigma)),
            ScalingFamily::BumpAtom { k } => format!("bump_atom(k={k})"),
            ScalingFamily::ModulatedAtom => String::from("modulated_atom"),
            ScalingFamily::TrackedAtom => String::from("tracked_atom"),
            ScalingFamily::LatticeSumUp { eps } => {
                format!("lattice_sum_up(eps={},{})", canon_f(eps.0), canon_f(eps.1))
            }
            ScalingFamily::LatticeSumDown { eps } => {
                format!(
                    "lattice_sum_down(eps={},{})",
                    canon_f(eps.0),
                    canon_f(eps.1)
                )
            }
        }
    }

    /// Build the field this family prescribes at dilation `lambda`.
    pub fn build_public(
        &self,
        grid: &GridSpec,
        params: &AlphaParams,
        lambda: f64,
    ) -> Result<SampledField> {
        self.build(grid, params, lambda)
    }

    fn build(&self, grid: &GridSpec, params: &AlphaParams, lambda: f64) -> Result<SampledField> {
        match self {
            ScalingFamily::Gaussian { sigma } => families::gaussian(grid, *sigma),
            ScalingFamily::BumpAtom { k } => families::bump_atom(grid, params, &FreqIndex::d1(*k)),
            ScalingFamily::ModulatedAtom => families::modulated_atom(grid, lambda),
            ScalingFamily::TrackedAtom => {
                let k0 = libm::round(libm::pow(lambda, -(1.0 - params.alpha))) as i64;
                families::bump_atom(grid, params, &FreqIndex::d1(k0.max(1)))
            }
            ScalingFamily::LatticeSumUp { eps } => {
                families::lattice_sum_up(grid, params, lambda, *eps)
            }
            ScalingFamily::LatticeSumDown { eps } => {
                Ok(families::lattice_sum_down(grid, params, lambda, *eps)?.0)
            }
        }
    }

    fn is_per_lambda(&self) -> bool {
        !matches!(
            self,
            ScalingFamily::Gaussian { .. } | ScalingFamily::BumpAtom { .. }
        )
    }
}

#[derive(Debug, Clone)]
pub struct ScalingConfig {
    pub family: ScalingFamily,
    pub space: SpaceParams,
    pub grid: GridSpec,
    pub params: AlphaParams,
    /// Strictly increasing; all `> 1` or all `< 1`.
    pub lambdas: Vec<f64>,
    pub tolerance: f64,
}

impl ScalingConfig {
    fn canonical(&self) -> String {
        let ls: Vec<String> = self.lambdas.iter().map(|l| canon_f(*l)).collect();
        format!(
            "scaling;family={};{};{};outer_c={};inner_c={};lambdas={};tol={}",
            self.family.name(),
            canon_space(&self.space),
            canon_grid(&self.grid),
            canon_f(self.params.outer_c),
            canon_f(self.params.inner_c),
            ls.join(","),
            canon_f(self.tolerance)
        )
    }
}

/// Fit `‖f_λ‖ / ‖f‖` in the α-modulation norm against the predicted
/// dilation slope.
pub fn scaling_experiment(cfg: &ScalingConfig) -> Result<ExperimentReport> {
    let sp = &cfg.space;
    let ip = IndexPair::from_pq(sp.p, sp.q);
    if cfg.lambdas.is_empty() {
        return Err(Error::InvalidParam(String::from("empty lambda grid")));
    }
    let up_side = cfg.lambdas[0] > 1.0;
    if cfg.lambdas.iter().any(|&l| (l > 1.0) != up_side) {
        return Err(Error::InvalidParam(String::from(
            "lambda grid must stay on one side of 1",
        )));
    }
    let slopes = exponents::scaling_slopes(sp.s, ip, sp.alpha, cfg.grid.dim)?;
    let theory = if up_side { slopes.up } else { slopes.down };

    let mut series = Vec::new();
    let mut notes = Vec::new();
    let fixed = if cfg.family.is_per_lambda() {
        None
    } else {
        Some(cfg.family.build(&cfg.grid, &cfg.params, 1.0)?)
    };
    let mut fixed_norm = None;
    for &lambda in &cfg.lambdas {
        let f = match &fixed {
            Some(f) => f.clone(),
            None => cfg.family.build(&cfg.grid, &cfg.params, lambda)?,
        };
        let denom = match (&fixed, fixed_norm) {
            (Some(_), Some(n)) => n,
            _ => {
                let set =
                    window_set_for(&f, &cfg.params).ok_or(Error::Degenerate("zero base field"))?;
                let n = alpha_mod_norm(&f, sp, &set)?;
                if fixed.is_some() {
                    fixed_norm = Some(n);
                }
                n
            }
        };
        let dilated = f.dilate(lambda)?;
        let set =
            window_set_for(&dilated, &cfg.params).ok_or(Error::Degenerate("zero dilated field"))?;
        let num = alpha_mod_norm(&dilated, sp, &set)?;
        series.push((lambda, num / denom));
    }
    if cfg.family.is_per_lambda() {
        notes.push(String::from("family regenerated at every lambda"));
    }
    ExperimentReport::build(
        "scaling",
        cfg.canonical(),
        series,
        theory,
        cfg.tolerance,
        notes,
    )
}

// ---------------------------------------------------------------------
// Embedding
// ---------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
pub enum EmbeddingFamily {
    /// Window atoms `𝓕^{-1}ρ_k` of the steeper covering, over an index
    /// ladder.
    Atoms { ks: Vec<i64> },
    /// Dyadic plateau fields `𝓕^{-1}φ_j` over a level ladder.
    Plateau { levels: Vec<usize> },
    /// Translated separated atoms inside the plateau annulus; `shift`
    /// scales the per-atom spatial translation.
    TranslatedAtoms { levels: Vec<usize>, shift: f64 },
}

#[derive(Debug, Clone)]
pub struct EmbeddingConfig {
    /// Source smoothness parameter (1 = dyadic side).
    pub a1: f64,
    /// Target smoothness parameter (1 = dyadic side).
    pub a2: f64,
    pub p: f64,
    pub q: f64,
    pub family: EmbeddingFamily,
    pub grid: GridSpec,
    pub tolerance: f64,
}

impl EmbeddingConfig {
    fn canonical(&self) -> String {
        let fam = match &self.family {
            EmbeddingFamily::Atoms { ks } => {
                let s: Vec<String> = ks.iter().map(|k| format!("{k}")).collect();
                format!("atoms({})", s.join(","))
            }
            EmbeddingFamily::Plateau { levels } => {
                let s: Vec<String> = levels.iter().map(|j| format!("{j}")).collect();
                format!("plateau({})", s.join(","))
            }
            EmbeddingFamily::TranslatedAtoms { levels, shift } => {
                let s: Vec<String> = levels.iter().map(|j| format!("{j}")).collect();
                format!("translated({};shift={})", s.join(","), canon_f(*shift))
            }
        };
        format!(
            "embedding;a1={};a2={};p={};q={};family={};{};tol={}",
            canon_f(self.a1),
            canon_f(self.a2),
            canon_f(self.p),
            canon_f(self.q),
            fam,
            canon_grid(&self.grid),
            canon_f(self.tolerance)
        )
    }
}

/// Zero-smoothness norm of `f` in the space with parameter `a` (dyadic
/// when `a = 1`), through the un-normalized block bumps.
fn side_norm(
    f: &SampledField,
    a: f64,
    p: f64,
    q: f64,
    dw: &DyadicWindows,
    cache: &mut Option<(f64, AlphaParams)>,
) -> Result<f64> {
    if a >= 1.0 {
        return Ok(besov_norm(f, 0.0, p, q, dw));
    }
    let params = match cache {
        Some((ca, cp)) if *ca == a => *cp,
        _ => {
            let p = AlphaParams::new(a, f.grid().dim, 2.0 * libm::sqrt(f.grid().dim as f64), 0.75)?;
            *cache = Some((a, p));
            p
        }
    };
    let sp = SpaceParams::new(0.0, p, q, a)?;
    let set = window_set_for(f, &params).ok_or(Error::Degenerate("zero field"))?;
    circ_norm(f, &sp, &set)
}

/// Fit the growth of `‖f‖_{target} / ‖f‖_{source}` in the family's
/// frequency scale against the embedding threshold `R(p,q;a1,a2)`.
pub fn embedding_experiment(cfg: &EmbeddingConfig) -> Result<ExperimentReport> {
    let ip = IndexPair::from_pq(cfg.p, cfg.q);
    let theory = exponents::embedding_threshold(ip, cfg.a1, cfg.a2, cfg.grid.dim);
    let dw = DyadicWindows::for_grid(&cfg.grid);
    let mut cache_src = None;
    let mut cache_dst = None;
    let mut series = Vec::new();
    let mut notes = Vec::new();
    let atom_alpha = if cfg.a1 < 1.0 && cfg.a2 < 1.0 {
        cfg.a1.max(cfg.a2)
    } else {
        cfg.a1.min(cfg.a2)
    };
    match &cfg.family {
        EmbeddingFamily::Atoms { ks } => {
            let params = AlphaParams::new(
                atom_alpha,
                cfg.grid.dim,
                2.0 * libm::sqrt(cfg.grid.dim as f64),
                0.75,
            )?;
            for &k in ks {
                let idx = FreqIndex::d1(k);
                let f = match families::bump_atom(&cfg.grid, &params, &idx) {
                    Ok(f) => f,
                    // The index ladder shrinks away from atoms the grid
                    // cannot host.
                    Err(Error::Unresolvable(what)) => {
                        notes.push(alloc::format!("k={k}: skipped ({what})"));
                        continue;
                    }
                    Err(e) => return Err(e),
                };
                let t = libm::pow(idx.weight(), 1.0 / (1.0 - atom_alpha));
                let src = side_norm(&f, cfg.a1, cfg.p, cfg.q, &dw, &mut cache_src)?;
                let dst = side_norm(&f, cfg.a2, cfg.p, cfg.q, &dw, &mut cache_dst)?;
                series.push((t, dst / src));
            }
        }
        EmbeddingFamily::Plateau { levels } => {
            for &j in levels {
                let f = families::annulus_plateau(&cfg.grid, &dw, j)?;
                let t = libm::pow(2.0, j as f64);
                let src = side_norm(&f, cfg.a1, cfg.p, cfg.q, &dw, &mut cache_src)?;
                let dst = side_norm(&f, cfg.a2, cfg.p, cfg.q, &dw, &mut cache_dst)?;
                series.push((t, dst / src));
            }
        }
        EmbeddingFamily::TranslatedAtoms { levels, shift } => {
            let params = AlphaParams::new(
                atom_alpha,
                cfg.grid.dim,
                2.0 * libm::sqrt(cfg.grid.dim as f64),
                0.75,
            )?;
            for &j in levels {
                let f = families::translated_lattice(&cfg.grid, &params, &dw, j, *shift)?;
                let t = libm::pow(2.0, j as f64);
                let src = side_norm(&f, cfg.a1, cfg.p, cfg.q, &dw, &mut cache_src)?;
                let dst = side_norm(&f, cfg.a2, cfg.p, cfg.q, &dw, &mut cache_dst)?;
                series.push((t, dst / src));
            }
        }
    }
    ExperimentReport::build(
        "embedding",
        cfg.canonical(),
        series,
        theory,
        cfg.tolerance,
        Vec::new(),
    )
}

// ---------------------------------------------------------------------
// Algebra counterexample
// ---------------------------------------------------------------------

/// Which characteristic-box pair drives the product-growth fit: separated
/// boxes on one covering shell, or full cubes spanning an octave.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlgebraRegime {
    SeparatedBox,
    WideBox,
}

#[derive(Debug, Clone)]
pub struct AlgebraConfig {
    pub space: SpaceParams,
    pub grid: GridSpec,
    /// Characteristic-box indices, strictly increasing.
    pub js: Vec<i64>,
    /// Rectangular covering half-width constant.
    pub r: f64,
    pub regime: AlgebraRegime,
    pub tolerance: f64,
}

impl AlgebraConfig {
    fn canonical(&self) -> String {
        let js: Vec<String> = self.js.iter().map(|j| format!("{j}")).collect();
        let regime = match self.regime {
            AlgebraRegime::SeparatedBox => "separated",
            AlgebraRegime::WideBox => "wide",
        };
        format!(
            "algebra;{};{};r={};js={};regime={regime};tol={}",
            canon_space(&self.space),
            canon_grid(&self.grid),
            canon_f(self.r),
            js.join(","),
            canon_f(self.tolerance)
        )
    }
}

/// Fit the normalized product growth `‖fg‖/(‖f‖‖g‖)` of the
/// characteristic-box pair in the box index against the symbolic deficit
/// slope.
pub fn algebra_experiment(cfg: &AlgebraConfig) -> Result<ExperimentReport> {
    let sp = &cfg.space;
    let ip = IndexPair::from_pq(sp.p, sp.q);
    let theory = match cfg.regime {
        AlgebraRegime::SeparatedBox => {
            exponents::algebra_deficit_slope(sp.s, ip, sp.alpha, cfg.grid.dim)
        }
        AlgebraRegime::WideBox => {
            exponents::algebra_deficit_slope_wide(sp.s, ip, sp.alpha, cfg.grid.dim)
        }
    };
    let cov = RectCovering::build(
        sp.alpha,
        cfg.grid.dim,
        cfg.r,
        cfg.grid.nyquist() * libm::sqrt(cfg.grid.dim as f64) * 1.05,
    )?;
    let quarter = cfg.grid.nyquist() / 4.0;
    let mut series = Vec::new();
    let mut notes = Vec::new();
    for &j in &cfg.js {
        let x_j = libm::pow(j as f64, 1.0 / (1.0 - sp.alpha));
        let reach = match cfg.regime {
            AlgebraRegime::SeparatedBox => x_j,
            AlgebraRegime::WideBox => 3.0 * x_j,
        };
        if reach > quarter {
            notes.push(format!("box {j} beyond a quarter of Nyquist; skipped"));
            continue;
        }
        let (f, g, _) = match cfg.regime {
            AlgebraRegime::SeparatedBox => families::char_box_pair(&cfg.grid, sp.alpha, cfg.r, j)?,
            AlgebraRegime::WideBox => families::char_box_pair_wide(&cfg.grid, sp.alpha, j)?,
        };
        let h = f.mul(&g)?;
        let nf = rect_norm(&f, sp, &cov)?;
        let ng = rect_norm(&g, sp, &cov)?;
        let nh = rect_norm(&h, sp, &cov)?;
        series.push((j as f64, nh / (nf * ng)));
    }
    ExperimentReport::build(
        "algebra",
        cfg.canonical(),
        series,
        theory,
        cfg.tolerance,
        notes,
    )
}

// ---------------------------------------------------------------------
// Cardinality laws
// ---------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct CardinalityConfig {
    pub alpha: f64,
    pub dim: usize,
    /// Base index `l` of the dilated-overlap count.
    pub base: i64,
    pub lambdas: Vec<f64>,
    pub tolerance: f64,
}

impl CardinalityConfig {
    fn canonical(&self) -> String {
        let ls: Vec<String> = self.lambdas.iter().map(|l| canon_f(*l)).collect();
        format!(
            "cardinality;alpha={};dim={};base={};lambdas={};tol={}",
            canon_f(self.alpha),
            self.dim,
            self.base,
            ls.join(","),
            canon_f(self.tolerance)
        )
    }
}

/// Fit `#Λ(l, λ)` against `λ^{n(1-α)}`.
pub fn cardinality_experiment(cfg: &CardinalityConfig) -> Result<ExperimentReport> {
    let params = AlphaParams::new(cfg.alpha, cfg.dim, 2.0 * libm::sqrt(cfg.dim as f64), 0.75)?;
    let theory = cfg.dim as f64 * (1.0 - cfg.alpha);
    let l = FreqIndex::d1(cfg.base);
    let mut series = Vec::new();
    for &lambda in &cfg.lambdas {
        let count = params.scaled_set(&l, lambda).len();
        series.push((lambda, count as f64));
    }
    ExperimentReport::build(
        "cardinality",
        cfg.canonical(),
        series,
        theory,
        cfg.tolerance,
        Vec::new(),
    )
}

// ---------------------------------------------------------------------
// Plancherel bracket
// ---------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct PlancherelEntry {
    pub alpha: f64,
    pub ratio_min: f64,
    pub ratio_max: f64,
    pub bracket: f64,
    pub fields_used: usize,
}

#[derive(Debug, Clone)]
pub struct PlancherelReport {
    pub config: String,
    pub config_hash: u64,
    pub entries: Vec<PlancherelEntry>,
}

/// Bracket of `‖f‖_{(0,2,2,α)} / ‖f‖₂` over the random suite, per α.
pub fn plancherel_check(
    grid: &GridSpec,
    alphas: &[f64],
    seeds: core::ops::Range<u64>,
) -> Result<PlancherelReport> {
    let alphas_s: Vec<String> = alphas.iter().map(|a| canon_f(*a)).collect();
    let config = format!(
        "plancherel;{};alphas={};seeds={}..{}",
        canon_grid(grid),
        alphas_s.join(","),
        seeds.start,
        seeds.end
    );
    let mut hasher = Fnv1a::new();
    hasher.write(config.as_bytes());
    let mut entries = Vec::new();
    for &alpha in alphas {
        let params =
            AlphaParams::certified(alpha, grid.dim, &grid.nyquist_box(), grid.freq_step())?;
        let sp = SpaceParams::new(0.0, 2.0, 2.0, alpha)?;
        let set = WindowSet::covering(&params, &grid.nyquist_box());
        let mut lo = f64::INFINITY;
        let mut hi = 0.0f64;
        let mut used = 0usize;
        for seed in seeds.clone() {
            let f = suite_field(grid, seed);
            let l2 = f.lp_norm(2.0);
            if l2 == 0.0 {
                continue;
            }
            let m = alpha_mod_norm(&f, &sp, &set)?;
            let ratio = m / l2;
            lo = lo.min(ratio);
            hi = hi.max(ratio);
            used += 1;
        }
        entries.push(PlancherelEntry {
            alpha,
            ratio_min: lo,
            ratio_max: hi,
            bracket: hi / lo,
            fields_used: used,
        });
    }
    Ok(PlancherelReport {
        config,
        config_hash: hasher.finish(),
        entries,
    })
}

/// Default rectangular covering constant re-exported for configs.
pub fn default_rect_r(alpha: f64) -> f64 {
    rect::default_r(alpha)
}
