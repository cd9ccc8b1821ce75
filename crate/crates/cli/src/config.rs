//! Run configuration: a single JSON document mirrored by command-line
//! flags, with flags taking precedence. A run is a pure function of its
//! resolved config.

use alphamod_core::{GridSpec, SpaceParams};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::path::PathBuf;

/// Extended real in `(0, ∞]`; serializes as a number or the string "inf".
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtReal(pub f64);

impl Serialize for ExtReal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_infinite() {
            s.serialize_str("inf")
        } else {
            s.serialize_f64(self.0)
        }
    }
}

impl<'de> Deserialize<'de> for ExtReal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(x) => Ok(ExtReal(x)),
            Raw::Str(s) if s == "inf" => Ok(ExtReal(f64::INFINITY)),
            Raw::Str(s) => s
                .parse::<f64>()
                .map(ExtReal)
                .map_err(|_| serde::de::Error::custom(format!("not a number or \"inf\": {s}"))),
        }
    }
}

pub fn parse_ext_real(s: &str) -> Result<f64, String> {
    if s == "inf" {
        return Ok(f64::INFINITY);
    }
    s.parse::<f64>().map_err(|e| format!("{e}"))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridConfig {
    pub dim: usize,
    pub half_period: f64,
    pub samples_per_axis: usize,
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig {
            dim: 1,
            half_period: 64.0 * std::f64::consts::PI,
            samples_per_axis: 1 << 14,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SpaceConfig {
    pub s: f64,
    pub p: ExtReal,
    pub q: ExtReal,
    pub alpha: f64,
}

impl Default for SpaceConfig {
    fn default() -> Self {
        SpaceConfig {
            s: 0.0,
            p: ExtReal(2.0),
            q: ExtReal(2.0),
            alpha: 0.5,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
#[clap(rename_all = "snake_case")]
pub enum CoveringChoice {
    Smooth,
    Rect,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FamilyParams {
    pub sigma: f64,
    pub k: i64,
    pub eps0: f64,
    pub eps1: f64,
    /// Translation multiplier for translated-atom families.
    pub shift: f64,
    /// Base index for cardinality counts.
    pub base: i64,
}

impl Default for FamilyParams {
    fn default() -> Self {
        FamilyParams {
            sigma: 1.0,
            k: 0,
            eps0: 0.125,
            eps1: 0.5,
            shift: 1.0,
            base: 12,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub grid: GridConfig,
    pub space: SpaceConfig,
    pub covering: CoveringChoice,
    /// Smooth-covering support constant; certified per grid when absent.
    pub outer_c: Option<f64>,
    pub inner_c: f64,
    /// Rectangular-covering half-width constant; midpoint default when
    /// absent.
    pub rect_r: Option<f64>,
    pub family: String,
    pub family_params: FamilyParams,
    /// Embedding target smoothness parameter (1 = dyadic side).
    pub alpha2: f64,
    pub lambda_min: f64,
    pub lambda_max: f64,
    pub j_min: i64,
    pub j_max: i64,
    pub seed: u64,
    pub out: PathBuf,
    /// Overrides the experiment's default slope tolerance.
    pub tol: Option<f64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            grid: GridConfig::default(),
            space: SpaceConfig::default(),
            covering: CoveringChoice::Smooth,
            outer_c: None,
            inner_c: 0.75,
            rect_r: None,
            family: String::from("gaussian"),
            family_params: FamilyParams::default(),
            alpha2: 0.0,
            lambda_min: 2.0,
            lambda_max: 64.0,
            j_min: 1,
            j_max: 6,
            seed: 0,
            out: PathBuf::from("out"),
            tol: None,
        }
    }
}

impl RunConfig {
    pub fn grid_spec(&self) -> Result<GridSpec, alphamod_core::Error> {
        GridSpec::new(
            self.grid.dim,
            self.grid.half_period,
            self.grid.samples_per_axis,
        )
    }

    pub fn space_params(&self) -> Result<SpaceParams, alphamod_core::Error> {
        SpaceParams::new(
            self.space.s,
            self.space.p.0,
            self.space.q.0,
            self.space.alpha,
        )
    }

    /// Dyadic ladder between `lambda_min` and `lambda_max` (inclusive
    /// within floating slack), entirely on one side of 1.
    pub fn lambda_grid(&self) -> Result<Vec<f64>, String> {
        let (lo, hi) = (self.lambda_min, self.lambda_max);
        if !(lo > 0.0 && hi >= lo) {
            return Err(format!("need 0 < lambda_min <= lambda_max, got {lo}..{hi}"));
        }
        if lo < 1.0 && hi > 1.0 {
            return Err(String::from("lambda grid must stay on one side of 1"));
        }
        let mut out = Vec::new();
        let mut t = (lo.log2()).ceil() as i32;
        while f64::powi(2.0, t) <= hi * (1.0 + 1e-12) {
            out.push(f64::powi(2.0, t));
            t += 1;
        }
        if out.is_empty() {
            return Err(String::from("empty dyadic lambda grid"));
        }
        Ok(out)
    }
}

/// Canonical JSON of the config: keys in struct order, floats in Rust's
/// shortest round-trip form, output location blanked (it names where
/// results go, not what they are). Reruns of the same config hash
/// identically.
pub fn canonical_json(cfg: &RunConfig) -> String {
    let mut keyed = cfg.clone();
    keyed.out = PathBuf::new();
    serde_json::to_string(&keyed).expect("config serializes")
}
