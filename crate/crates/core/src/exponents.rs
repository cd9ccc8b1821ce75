//! Closed-form critical exponents and index maps.
//!
//! Everything is written in the `(1/p, 1/q)` coordinate plane so `p = ∞`
//! never produces an infinity. These formulas are the analytic ground truth
//! the experiment layer fits measured slopes against.

use crate::error::{Error, Result};
use crate::space::SpaceParams;

/// A point of the `(1/p, 1/q)` quarter-plane. Values above 1 mean `p < 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IndexPair {
    pub inv_p: f64,
    pub inv_q: f64,
}

impl IndexPair {
    pub fn new(inv_p: f64, inv_q: f64) -> Self {
        IndexPair { inv_p, inv_q }
    }

    /// Build from `(p, q)`; `f64::INFINITY` maps to coordinate 0.
    pub fn from_pq(p: f64, q: f64) -> Self {
        let inv = |x: f64| if x.is_infinite() { 0.0 } else { 1.0 / x };
        IndexPair {
            inv_p: inv(p),
            inv_q: inv(q),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SRegion {
    S1,
    S2,
    S3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TRegion {
    T1,
    T2,
    T3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DRegion {
    D1,
    D2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegionTag {
    pub s: SRegion,
    pub t: TRegion,
    pub d: DRegion,
}

/// Region membership with the closures exactly as the defining inequalities
/// are written (non-strict where printed non-strict). The third member of
/// each family is the set complement.
pub fn classify(ip: IndexPair) -> RegionTag {
    let (p, q) = (ip.inv_p, ip.inv_q);
    let s = if q >= p && p <= 0.5 {
        SRegion::S1
    } else if p + q >= 1.0 && p > 0.5 {
        SRegion::S2
    } else {
        SRegion::S3
    };
    let t = if p >= q && p > 0.5 {
        TRegion::T1
    } else if p + q <= 1.0 && p <= 0.5 {
        TRegion::T2
    } else {
        TRegion::T3
    };
    let d = if q >= 2.0 * p && p <= 0.5 {
        DRegion::D1
    } else {
        DRegion::D2
    };
    RegionTag { s, t, d }
}

/// The sharp regularity price `R(p,q; α₁, α₂)`: the largest of zero and the
/// two linear branches `n(α₁−α₂)(1/q−1/p)` and `n(α₁−α₂)(1/p+1/q−1)`.
pub fn big_r(ip: IndexPair, a1: f64, a2: f64, dim: usize) -> f64 {
    let n = dim as f64;
    let factor = n * (a1 - a2);
    let b1 = factor * (ip.inv_q - ip.inv_p);
    let b2 = factor * (ip.inv_p + ip.inv_q - 1.0);
    0.0f64.max(b1).max(b2)
}

/// Which side of `λ = 1` a dilation exponent refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LambdaSide {
    /// `λ > 1`
    Up,
    /// `λ ≤ 1`
    Down,
}

/// Critical dilation exponent `s_c`: `R(p,q;1,α)` for growing dilations and
/// `-R(p,q;α,1)` for shrinking ones.
pub fn s_c(ip: IndexPair, alpha: f64, side: LambdaSide, dim: usize) -> f64 {
    match side {
        LambdaSide::Up => big_r(ip, 1.0, alpha, dim),
        LambdaSide::Down => -big_r(ip, alpha, 1.0, dim),
    }
}

/// `s_p = n(1/(1∧p) − 1)`, zero for `p ≥ 1`.
pub fn s_p(inv_p: f64, dim: usize) -> f64 {
    dim as f64 * 0.0f64.max(inv_p - 1.0)
}

/// Asymptotic log–log slopes of `λ ↦ ‖f(λ·)‖` for a generic field:
/// `-n/p + max(s_p, s + s_c↑)` as `λ → ∞` and `-n/p + min(0, s + s_c↓)`
/// as `λ → 0⁺`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingSlopes {
    pub up: f64,
    pub down: f64,
}

pub fn scaling_slopes(s: f64, ip: IndexPair, alpha: f64, dim: usize) -> Result<ScalingSlopes> {
    let n = dim as f64;
    let sc_up = s_c(ip, alpha, LambdaSide::Up, dim);
    let sc_down = s_c(ip, alpha, LambdaSide::Down, dim);
    let sp = s_p(ip.inv_p, dim);
    // At s = -s_c the power law picks up the logarithmic factor of
    // `log_correction`; a pure slope is then meaningless unless that factor
    // is trivial or beaten by the s_p branch.
    if s + sc_up == 0.0 && sp == 0.0 {
        let lc = log_correction(ip, LambdaSide::Up, dim);
        if lc.ln_power > 0.0 || lc.prefactor_exponent != 0.0 {
            return Err(Error::Degenerate(
                "s = -s_c (lambda > 1): logarithmic scaling",
            ));
        }
    }
    if s + sc_down == 0.0 {
        let lc = log_correction(ip, LambdaSide::Down, dim);
        if lc.ln_power > 0.0 {
            return Err(Error::Degenerate(
                "s = -s_c (lambda <= 1): logarithmic scaling",
            ));
        }
    }
    Ok(ScalingSlopes {
        up: -n * ip.inv_p + sp.max(s + sc_up),
        down: -n * ip.inv_p + 0.0f64.min(s + sc_down),
    })
}

/// The replacement factor at the degenerate regularity `s = -s_c`:
/// `F(λ) = λ^{prefactor_exponent} (ln λ)^{ln_power}` (with `ln(1/λ)` on the
/// shrinking side). The prefactor exponent is nonzero only in the
/// sub-`L¹` branch for growing dilations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogCorrection {
    pub ln_power: f64,
    pub prefactor_exponent: f64,
}

pub fn log_correction(ip: IndexPair, side: LambdaSide, dim: usize) -> LogCorrection {
    let n = dim as f64;
    let (p, q) = (ip.inv_p, ip.inv_q);
    match side {
        LambdaSide::Up => {
            if p > 1.0 {
                LogCorrection {
                    ln_power: q,
                    prefactor_exponent: n * (p - 1.0),
                }
            } else {
                LogCorrection {
                    ln_power: 0.0f64.max(q - p).max(q + p - 1.0),
                    prefactor_exponent: 0.0,
                }
            }
        }
        LambdaSide::Down => LogCorrection {
            ln_power: 0.0f64.max(p - q).max(1.0 - p - q),
            prefactor_exponent: 0.0,
        },
    }
}

/// Minimal admissible `s₁ − s₂` for the embedding of an `α₁`-decomposition
/// space into an `α₂` one at the same `(p, q)`; `α = 1` is the dyadic side.
pub fn embedding_threshold(ip: IndexPair, a1: f64, a2: f64, dim: usize) -> f64 {
    big_r(ip, a1, a2, dim)
}

/// Regularity threshold above which the space is stable under pointwise
/// multiplication.
pub fn algebra_s0(ip: IndexPair, alpha: f64, dim: usize) -> f64 {
    let n = dim as f64;
    let (p, q) = (ip.inv_p, ip.inv_q);
    let a = alpha;
    let mixed = n * a * (1.0 - a) / (2.0 - a);
    match classify(ip).d {
        DRegion::D1 => n * a * p + n * (1.0 - a) * (1.0 - 1.0f64.min(q)) + mixed * (q - 2.0 * p),
        DRegion::D2 => {
            let m = 1.0f64.max(p).max(q);
            n * a * p + n * (1.0 - a) * (m - q) + mixed * (m - 1.0)
        }
    }
}

/// The `α = 0` specialization of [`algebra_s0`] in its displayed form.
pub fn algebra_s0_modulation(ip: IndexPair, dim: usize) -> f64 {
    let n = dim as f64;
    let (p, q) = (ip.inv_p, ip.inv_q);
    match classify(ip).d {
        DRegion::D1 => n * (1.0 - 1.0f64.min(q)),
        DRegion::D2 => n * (1.0f64.max(p).max(q) - q),
    }
}

/// Whether the algebra threshold is known sharp at this index point
/// (complement of D1, with `p ≥ 1`). On D1 it is an upper bound only.
pub fn algebra_s0_is_sharp(ip: IndexPair) -> bool {
    classify(ip).d == DRegion::D2 && ip.inv_p <= 1.0
}

/// Predicted log–log slope of the normalized product growth
/// `‖fg‖/(‖f‖‖g‖)` for the paired characteristic-box fields, obtained as
/// the difference of the product-growth exponent and twice the factor
/// exponent. Positive exactly when `s` sits below the algebra threshold in
/// the `p > 1, q ≤ 1` regime.
pub fn algebra_deficit_slope(s: f64, ip: IndexPair, alpha: f64, dim: usize) -> f64 {
    let n = dim as f64;
    let a = alpha;
    let one_m = 1.0 - a;
    // Growth of the product norm in the box parameter.
    let product = n * a / one_m + a * (s / one_m + n * a / one_m * (1.0 - ip.inv_p) + n * ip.inv_q);
    // Growth of each factor norm.
    let factor = s / one_m + n * a / one_m * (1.0 - ip.inv_p);
    product - 2.0 * factor
}

/// Predicted log-log slope of the normalized product growth for the
/// full-cube characteristic pair (boxes `[X, 3X]^n` at `X = J^{1/(1-α)}`),
/// again a difference of growth displays. Positive exactly when `s` sits
/// below `nα/p + n(1-α)(1 - 1/q)`, the threshold matching the algebra
/// bound on the unit square away from D1.
pub fn algebra_deficit_slope_wide(s: f64, ip: IndexPair, alpha: f64, dim: usize) -> f64 {
    let n = dim as f64;
    let one_m = 1.0 - alpha;
    let factor = s / one_m + n * alpha / one_m * (1.0 - ip.inv_p) + n * ip.inv_q;
    let product = n / one_m + factor;
    product - 2.0 * factor
}

/// Index map of the dual space:
/// `s* = -s + nα(1/(1∧p) − 1)`, `p* = ((1∨p))'`, `q* = ((1∨q))'`.
pub fn dual_indices(sp: &SpaceParams, dim: usize) -> Result<SpaceParams> {
    if sp.p.is_infinite() || sp.q.is_infinite() {
        return Err(Error::Degenerate("dual index map needs p, q finite"));
    }
    let n = dim as f64;
    let conj_inv = |inv: f64| 1.0 - inv.min(1.0);
    let inv_p_star = conj_inv(sp.inv_p());
    let inv_q_star = conj_inv(sp.inv_q());
    let s_star = -sp.s + n * sp.alpha * 0.0f64.max(sp.inv_p() - 1.0);
    let un_inv = |inv: f64| if inv == 0.0 { f64::INFINITY } else { 1.0 / inv };
    SpaceParams::new(s_star, un_inv(inv_p_star), un_inv(inv_q_star), sp.alpha)
}

/// Complex-interpolation index map: affine in `s`, harmonic in `p` and `q`.
pub fn interp_indices(theta: f64, a: &SpaceParams, b: &SpaceParams) -> Result<SpaceParams> {
    if !(0.0..=1.0).contains(&theta) {
        return Err(Error::InvalidParam(alloc::format!(
            "theta must lie in [0,1], got {theta}"
        )));
    }
    if a.alpha != b.alpha {
        return Err(Error::InvalidParam(alloc::string::String::from(
            "interpolation endpoints must share alpha",
        )));
    }
    let s = (1.0 - theta) * a.s + theta * b.s;
    let inv_p = (1.0 - theta) * a.inv_p() + theta * b.inv_p();
    let inv_q = (1.0 - theta) * a.inv_q() + theta * b.inv_q();
    let un_inv = |inv: f64| if inv == 0.0 { f64::INFINITY } else { 1.0 / inv };
    SpaceParams::new(s, un_inv(inv_p), un_inv(inv_q), a.alpha)
}

/// Regularity needed by the multiplier bound on compact spectra:
/// `σ_r = n(1/(r∧1) − 1/2)`.
pub fn bernstein_sigma(r: f64, dim: usize) -> f64 {
    dim as f64 * (1.0 / r.min(1.0) - 0.5)
}

/// Exponent transfer between `L^{p₁}` and `L^{p₂}` norms of one block:
/// `‖block‖_{p₂} ≲ ⟨k⟩^{(nα/(1−α))(1/p₁−1/p₂)} ‖block‖_{p₁}`.
pub fn bernstein_block_exponent(inv_p1: f64, inv_p2: f64, alpha: f64, dim: usize) -> f64 {
    dim as f64 * alpha / (1.0 - alpha) * (inv_p1 - inv_p2)
}
