//! Batch front-end: construct coverings, compute norms of supplied or
//! generated fields, run experiment suites, emit tables and reports.
//!
//! Exit codes: 0 pass, 1 invariant or verdict failure, 2 configuration
//! error, 3 resolvability (aliasing) error. Progress goes to stderr,
//! machine output to files and stdout.

mod config;
mod fieldio;
mod report;
mod table;

use alphamod_core::covering::{validate_bapu, AlphaParams, FreqIndex, WindowSet};
use alphamod_core::experiments::{self, EmbeddingFamily, ScalingFamily};
use alphamod_core::field::SampledField;
use alphamod_core::rect::{self, RectCovering};
use alphamod_core::transform::{
    alpha_mod_norm, besov_norm, circ_norm, rect_norm, BlockNormEngine, DyadicWindows, WindowTable,
};
use alphamod_core::util::Fnv1a;
use alphamod_core::{Error as CoreError, GridSpec};
use clap::{Parser, Subcommand, ValueEnum};
use config::{parse_ext_real, CoveringChoice, RunConfig};
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(
    name = "alphamod",
    version,
    about = "Frequency-decomposition norms and experiments"
)]
struct Cli {
    /// JSON config file; every flag below overrides its matching field.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    alpha: Option<f64>,
    #[arg(long, global = true)]
    dim: Option<usize>,
    /// Samples per axis (a power of two).
    #[arg(long = "grid-n", global = true)]
    grid_n: Option<usize>,
    #[arg(long = "half-period", global = true)]
    half_period: Option<f64>,
    #[arg(long, global = true)]
    s: Option<f64>,
    /// Lebesgue exponent; "inf" allowed.
    #[arg(long, global = true, value_parser = parse_ext_real)]
    p: Option<f64>,
    /// Sequence exponent; "inf" allowed.
    #[arg(long, global = true, value_parser = parse_ext_real)]
    q: Option<f64>,
    #[arg(long, global = true, value_enum)]
    covering: Option<CoveringChoice>,
    #[arg(long, global = true)]
    family: Option<String>,
    #[arg(long = "lambda-min", global = true)]
    lambda_min: Option<f64>,
    #[arg(long = "lambda-max", global = true)]
    lambda_max: Option<f64>,
    #[arg(long = "j-min", global = true)]
    j_min: Option<i64>,
    #[arg(long = "j-max", global = true)]
    j_max: Option<i64>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output directory for report files.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Slope tolerance override.
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Construct the configured covering and certify its conditions.
    Validate,
    /// Compute the configured space norm of a field file or generated
    /// family; prints JSON to stdout.
    Norm {
        /// Field container to read; a family is generated when absent.
        #[arg(long)]
        field: Option<PathBuf>,
        /// Also write the field (generated or read) to this container path.
        #[arg(long = "save-field")]
        save_field: Option<PathBuf>,
        /// Include the per-block decomposition summary in the output.
        #[arg(long)]
        blocks: bool,
    },
    /// Run one experiment; writes `<name>_<hash>.csv` and `.json` under
    /// the output directory.
    Experiment {
        #[arg(value_enum)]
        kind: ExperimentKind,
    },
    /// Emit the exponent-formula table as CSV on stdout.
    Table {
        /// Grid points per index axis.
        #[arg(long, default_value_t = 9)]
        points: usize,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
#[clap(rename_all = "snake_case")]
enum ExperimentKind {
    Scaling,
    Embedding,
    Algebra,
    Cardinality,
    Plancherel,
}

const EXIT_FAIL: u8 = 1;
const EXIT_CONFIG: u8 = 2;
const EXIT_RESOLVE: u8 = 3;

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn config(msg: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_CONFIG,
            message: msg.into(),
        }
    }

    fn fail(msg: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_FAIL,
            message: msg.into(),
        }
    }
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Failure {
        let code = match &e {
            CoreError::Aliasing { .. } | CoreError::Unresolvable(_) => EXIT_RESOLVE,
            CoreError::InvalidParam(_) | CoreError::Degenerate(_) => EXIT_CONFIG,
            CoreError::CoveringGap { .. } => EXIT_FAIL,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Failure {
        Failure {
            code: EXIT_CONFIG,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn resolve_config(cli: &Cli) -> Result<RunConfig, Failure> {
    let mut cfg = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::config(format!("cannot read {}: {e}", path.display())))?;
            serde_json::from_str::<RunConfig>(&text)
                .map_err(|e| Failure::config(format!("bad config {}: {e}", path.display())))?
        }
        None => RunConfig::default(),
    };
    if let Some(v) = cli.alpha {
        cfg.space.alpha = v;
    }
    if let Some(v) = cli.dim {
        cfg.grid.dim = v;
    }
    if let Some(v) = cli.grid_n {
        cfg.grid.samples_per_axis = v;
    }
    if let Some(v) = cli.half_period {
        cfg.grid.half_period = v;
    }
    if let Some(v) = cli.s {
        cfg.space.s = v;
    }
    if let Some(v) = cli.p {
        cfg.space.p = config::ExtReal(v);
    }
    if let Some(v) = cli.q {
        cfg.space.q = config::ExtReal(v);
    }
    if let Some(v) = cli.covering {
        cfg.covering = v;
    }
    if let Some(v) = &cli.family {
        cfg.family = v.clone();
    }
    if let Some(v) = cli.lambda_min {
        cfg.lambda_min = v;
    }
    if let Some(v) = cli.lambda_max {
        cfg.lambda_max = v;
    }
    if let Some(v) = cli.j_min {
        cfg.j_min = v;
    }
    if let Some(v) = cli.j_max {
        cfg.j_max = v;
    }
    if let Some(v) = cli.seed {
        cfg.seed = v;
    }
    if let Some(v) = &cli.out {
        cfg.out = v.clone();
    }
    if let Some(v) = cli.tol {
        cfg.tol = Some(v);
    }
    Ok(cfg)
}

fn run(cli: Cli) -> Result<(), Failure> {
    let cfg = resolve_config(&cli)?;
    match &cli.command {
        Command::Validate => cmd_validate(&cfg),
        Command::Norm {
            field,
            save_field,
            blocks,
        } => cmd_norm(&cfg, field.as_deref(), save_field.as_deref(), *blocks),
        Command::Experiment { kind } => cmd_experiment(&cfg, *kind),
        Command::Table { points } => {
            print!(
                "{}",
                table::exponent_table(cfg.space.alpha, cfg.grid.dim, *points)
            );
            Ok(())
        }
    }
}

fn smooth_params(cfg: &RunConfig, grid: &GridSpec) -> Result<AlphaParams, Failure> {
    match cfg.outer_c {
        Some(c) => Ok(AlphaParams::new(cfg.space.alpha, grid.dim, c, cfg.inner_c)?),
        None => Ok(AlphaParams::certified(
            cfg.space.alpha,
            grid.dim,
            &grid.nyquist_box(),
            grid.freq_step(),
        )?),
    }
}

fn write_out(cfg: &RunConfig, name: &str, contents: &str) -> Result<PathBuf, Failure> {
    std::fs::create_dir_all(&cfg.out)?;
    let path = cfg.out.join(name);
    std::fs::write(&path, contents)?;
    Ok(path)
}

fn cmd_validate(cfg: &RunConfig) -> Result<(), Failure> {
    let grid = cfg.grid_spec()?;
    match cfg.covering {
        CoveringChoice::Smooth => {
            let params = smooth_params(cfg, &grid)?;
            let set = WindowSet::covering(&params, &grid.nyquist_box());
            eprintln!("validating {} windows", set.len());
            let rep = validate_bapu(&set, &grid.nyquist_box(), grid.freq_step(), 4);
            let doc = report::bapu_report_json(
                cfg.space.alpha,
                grid.dim,
                params.outer_c,
                params.inner_c,
                &rep,
            );
            let text = report::to_json_string(&doc);
            write_out(cfg, "validate_smooth.json", &text)?;
            print!("{text}");
            if rep.all_pass() {
                Ok(())
            } else if rep.gap_at.is_some() {
                Err(Failure::fail("covering gap"))
            } else {
                Err(Failure::fail("covering certification failed"))
            }
        }
        CoveringChoice::Rect => {
            let r = cfg
                .rect_r
                .unwrap_or_else(|| rect::default_r(cfg.space.alpha));
            let cov = RectCovering::build(
                cfg.space.alpha,
                grid.dim,
                r,
                grid.nyquist() * (grid.dim as f64).sqrt() * 1.05,
            )?;
            eprintln!("validating {} boxes", cov.boxes().len());
            let rep = rect::validate_rect(&cov, grid.nyquist(), grid.freq_step().max(0.125));
            let doc = report::rect_report_json(&cov, &rep);
            let text = report::to_json_string(&doc);
            write_out(cfg, "validate_rect.json", &text)?;
            print!("{text}");
            if rep.all_pass(grid.dim) {
                Ok(())
            } else {
                Err(Failure::fail("rectangular covering certification failed"))
            }
        }
    }
}

fn build_family(cfg: &RunConfig, grid: &GridSpec) -> Result<SampledField, Failure> {
    use alphamod_core::families;
    let fp = &cfg.family_params;
    let field = match cfg.family.as_str() {
        "gaussian" => families::gaussian(grid, fp.sigma)?,
        "bump_atom" => {
            let params = smooth_params(cfg, grid)?;
            families::bump_atom(grid, &params, &FreqIndex::d1(fp.k))?
        }
        "modulated_atom" => families::modulated_atom(grid, cfg.lambda_max)?,
        "annulus_plateau" => {
            let dw = DyadicWindows::for_grid(grid);
            families::annulus_plateau(grid, &dw, cfg.j_max as usize)?
        }
        "translated_lattice" => {
            let params = smooth_params(cfg, grid)?;
            let dw = DyadicWindows::for_grid(grid);
            families::translated_lattice(grid, &params, &dw, cfg.j_max as usize, fp.shift)?
        }
        "lattice_sum_up" => {
            let params = smooth_params(cfg, grid)?;
            families::lattice_sum_up(grid, &params, cfg.lambda_max, (fp.eps0, fp.eps1))?
        }
        other => return Err(Failure::config(format!("unknown family: {other}"))),
    };
    Ok(field)
}

fn cmd_norm(
    cfg: &RunConfig,
    field_path: Option<&std::path::Path>,
    save_field: Option<&std::path::Path>,
    blocks: bool,
) -> Result<(), Failure> {
    let grid = cfg.grid_spec()?;
    let field = match field_path {
        Some(p) => {
            let mut file = std::fs::File::open(p)
                .map_err(|e| Failure::config(format!("cannot open {}: {e}", p.display())))?;
            let f = fieldio::read_field(&mut file)?;
            if f.grid().dim != grid.dim {
                return Err(Failure::config("field dimension does not match config"));
            }
            f
        }
        None => build_family(cfg, &grid)?,
    };
    if let Some(path) = save_field {
        let mut file = std::fs::File::create(path)?;
        fieldio::write_field(&mut file, &field, fieldio::Dtype::Complex128)?;
        eprintln!("wrote {}", path.display());
    }
    let grid = *field.grid();
    let sp = cfg.space_params()?;
    let mut doc = json!({
        "space": {"s": sp.s, "p": cfg.space.p, "q": cfg.space.q, "alpha": sp.alpha},
        "grid": {"dim": grid.dim, "half_period": grid.half_period, "samples_per_axis": grid.samples_per_axis},
        "family": if field_path.is_some() { "file".to_string() } else { cfg.family.clone() },
    });
    if sp.is_dyadic() {
        let dw = DyadicWindows::for_grid(&grid);
        let norm = besov_norm(&field, sp.s, sp.p, sp.q, &dw);
        doc["covering"] = json!("dyadic");
        doc["norm"] = json!(norm);
    } else {
        match cfg.covering {
            CoveringChoice::Smooth => {
                let params = smooth_params(cfg, &grid)?;
                let set = WindowSet::covering(&params, &grid.nyquist_box());
                let norm = alpha_mod_norm(&field, &sp, &set)?;
                let circ = circ_norm(&field, &sp, &set)?;
                doc["covering"] = json!("smooth");
                doc["norm"] = json!(norm);
                doc["circ_norm"] = json!(circ);
                if blocks {
                    let table = WindowTable::build(&set, &grid, true);
                    let mut engine = BlockNormEngine::new(&grid);
                    let profile = table.profile(&field, &[sp.p], &mut engine)?;
                    let rows: Vec<serde_json::Value> = profile
                        .entries
                        .iter()
                        .map(|(k, w, norms)| {
                            json!({
                                "k": k.coords(),
                                "weight": libm::pow(*w, sp.weight_exponent()),
                                "lp_norm": norms[0],
                            })
                        })
                        .collect();
                    doc["blocks"] = json!(rows);
                }
            }
            CoveringChoice::Rect => {
                let r = cfg.rect_r.unwrap_or_else(|| rect::default_r(sp.alpha));
                let cov = RectCovering::build(
                    sp.alpha,
                    grid.dim,
                    r,
                    grid.nyquist() * (grid.dim as f64).sqrt() * 1.05,
                )?;
                let norm = rect_norm(&field, &sp, &cov)?;
                doc["covering"] = json!("rect");
                doc["norm"] = json!(norm);
            }
        }
    }
    print!("{}", report::to_json_string(&doc));
    Ok(())
}

/// Geometric ladder of box indices with ratio about √2.
fn geometric_js(lo: i64, hi: i64) -> Vec<i64> {
    let mut out = Vec::new();
    let mut j = lo.max(1);
    while j <= hi {
        out.push(j);
        let next = ((j as f64) * std::f64::consts::SQRT_2).round() as i64;
        j = next.max(j + 1);
    }
    out
}

fn cmd_experiment(cfg: &RunConfig, kind: ExperimentKind) -> Result<(), Failure> {
    let grid = cfg.grid_spec()?;
    let (name, report_json, series, verdict) = match kind {
        ExperimentKind::Scaling => {
            let sp = cfg.space_params()?;
            let params = smooth_params(cfg, &grid)?;
            let fp = &cfg.family_params;
            let family = match cfg.family.as_str() {
                "gaussian" => ScalingFamily::Gaussian { sigma: fp.sigma },
                "bump_atom" => ScalingFamily::BumpAtom { k: fp.k },
                "modulated_atom" => ScalingFamily::ModulatedAtom,
                "tracked_atom" => ScalingFamily::TrackedAtom,
                "lattice_sum_up" => ScalingFamily::LatticeSumUp {
                    eps: (fp.eps0, fp.eps1),
                },
                "lattice_sum_down" => ScalingFamily::LatticeSumDown {
                    eps: (fp.eps0, fp.eps1),
                },
                other => return Err(Failure::config(format!("unknown scaling family: {other}"))),
            };
            let rep = experiments::scaling_experiment(&experiments::ScalingConfig {
                family,
                space: sp,
                grid,
                params,
                lambdas: cfg.lambda_grid().map_err(Failure::config)?,
                tolerance: cfg.tol.unwrap_or(0.1),
            })?;
            eprintln!(
                "scaling: slope {:+.4} vs theory {:+.4} (r2 {:.4})",
                rep.fit.slope, rep.theory_slope, rep.fit.r_squared
            );
            (
                "scaling",
                report::experiment_report_json(&rep),
                Some(("lambda", rep.series.clone())),
                rep.verdict,
            )
        }
        ExperimentKind::Embedding => {
            let levels: Vec<usize> = (cfg.j_min.max(0)..=cfg.j_max.max(0))
                .map(|j| j as usize)
                .collect();
            let ks: Vec<i64> = (cfg.j_min..=cfg.j_max).collect();
            let family = match cfg.family.as_str() {
                "atoms" | "bump_atom" => EmbeddingFamily::Atoms { ks },
                "plateau" | "annulus_plateau" => EmbeddingFamily::Plateau { levels },
                "translated_lattice" => EmbeddingFamily::TranslatedAtoms {
                    levels,
                    shift: cfg.family_params.shift,
                },
                other => {
                    return Err(Failure::config(format!(
                        "unknown embedding family: {other}"
                    )))
                }
            };
            let rep = experiments::embedding_experiment(&experiments::EmbeddingConfig {
                a1: cfg.space.alpha,
                a2: cfg.alpha2,
                p: cfg.space.p.0,
                q: cfg.space.q.0,
                family,
                grid,
                tolerance: cfg.tol.unwrap_or(0.1),
            })?;
            eprintln!(
                "embedding: slope {:+.4} vs theory {:+.4} (r2 {:.4})",
                rep.fit.slope, rep.theory_slope, rep.fit.r_squared
            );
            (
                "embedding",
                report::experiment_report_json(&rep),
                Some(("scale", rep.series.clone())),
                rep.verdict,
            )
        }
        ExperimentKind::Algebra => {
            let sp = cfg.space_params()?;
            let regime = match cfg.family.as_str() {
                "char_box_pair" | "gaussian" => experiments::AlgebraRegime::SeparatedBox,
                "char_box_wide" => experiments::AlgebraRegime::WideBox,
                other => return Err(Failure::config(format!("unknown algebra family: {other}"))),
            };
            let rep = experiments::algebra_experiment(&experiments::AlgebraConfig {
                space: sp,
                grid,
                js: geometric_js(cfg.j_min, cfg.j_max),
                r: cfg.rect_r.unwrap_or_else(|| rect::default_r(sp.alpha)),
                regime,
                tolerance: cfg.tol.unwrap_or(0.15),
            })?;
            eprintln!(
                "algebra: slope {:+.4} vs theory {:+.4} (r2 {:.4})",
                rep.fit.slope, rep.theory_slope, rep.fit.r_squared
            );
            (
                "algebra",
                report::experiment_report_json(&rep),
                Some(("j", rep.series.clone())),
                rep.verdict,
            )
        }
        ExperimentKind::Cardinality => {
            let rep = experiments::cardinality_experiment(&experiments::CardinalityConfig {
                alpha: cfg.space.alpha,
                dim: cfg.grid.dim,
                base: cfg.family_params.base,
                lambdas: cfg.lambda_grid().map_err(Failure::config)?,
                tolerance: cfg.tol.unwrap_or(0.1),
            })?;
            eprintln!(
                "cardinality: slope {:+.4} vs theory {:+.4}",
                rep.fit.slope, rep.theory_slope
            );
            (
                "cardinality",
                report::experiment_report_json(&rep),
                Some(("lambda", rep.series.clone())),
                rep.verdict,
            )
        }
        ExperimentKind::Plancherel => {
            let rep =
                experiments::plancherel_check(&grid, &[cfg.space.alpha], cfg.seed..cfg.seed + 50)?;
            let ok = rep.entries.iter().all(|e| e.bracket <= 4.0);
            for e in &rep.entries {
                eprintln!("plancherel alpha={}: bracket {:.3}", e.alpha, e.bracket);
            }
            ("plancherel", report::plancherel_report_json(&rep), None, ok)
        }
    };
    let hash = {
        let mut h = Fnv1a::new();
        h.write(config::canonical_json(cfg).as_bytes());
        h.write(name.as_bytes());
        h.finish()
    };
    let stem = format!("{name}_{hash:016x}");
    let json_text = report::to_json_string(&report_json);
    let path = write_out(cfg, &format!("{stem}.json"), &json_text)?;
    eprintln!("wrote {}", path.display());
    if let Some((xname, series)) = series {
        let csv = report::series_csv((xname, "value"), &series);
        let path = write_out(cfg, &format!("{stem}.csv"), &csv)?;
        eprintln!("wrote {}", path.display());
    }
    if verdict {
        Ok(())
    } else {
        Err(Failure::fail("experiment verdict failed"))
    }
}
