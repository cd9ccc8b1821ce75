//! Machine-readable output: covering descriptions, validation reports,
//! experiment reports (JSON) and data series (CSV). All floats print in
//! Rust's shortest round-trip form, so identical runs emit identical
//! bytes.

use alphamod_core::covering::BapuReport;
use alphamod_core::experiments::{ExperimentReport, PlancherelReport};
use alphamod_core::rect::{RectCovering, RectReport};
use serde::Serialize;
use serde_json::{json, Value};

pub fn bapu_report_json(
    alpha: f64,
    dim: usize,
    outer_c: f64,
    inner_c: f64,
    rep: &BapuReport,
) -> Value {
    json!({
        "kind": "smooth",
        "alpha": alpha,
        "dim": dim,
        "outer_c": outer_c,
        "inner_c": inner_c,
        "checks": {
            "partition": {
                "pass": rep.partition_ok(),
                "max_dev": rep.partition_max_dev,
                "worst_xi": &rep.partition_worst_xi[..dim],
                "gap_at": rep.gap_at.map(|x| x[..dim].to_vec()),
            },
            "support": {
                "pass": rep.support_ok(),
                "max_violation": rep.support_max_violation,
            },
            "lower_bound": {
                "pass": rep.lower_bound_ok(),
                "min": rep.lower_bound_min,
                "floor": if rep.overlap_max > 0 { 1.0 / rep.overlap_max as f64 } else { f64::NAN },
                "worst_index": rep.lower_bound_worst.0.coords(),
            },
            "derivatives": {
                "pass": rep.derivatives_ok(),
                "scaled_max_order1": rep.deriv_scaled_max[0],
                "scaled_max_order2": rep.deriv_scaled_max[1],
                "worst_index": rep.deriv_worst.0.coords(),
            },
        },
        "overlap_max": rep.overlap_max,
        "pass": rep.all_pass(),
    })
}

pub fn rect_report_json(cov: &RectCovering, rep: &RectReport) -> Value {
    let shells: Vec<Value> = cov
        .boxes()
        .iter()
        .map(|b| {
            json!({
                "shell": b.shell,
                "center": &b.center[..cov.dim],
                "half_width": b.half_width,
            })
        })
        .collect();
    json!({
        "kind": "rect",
        "alpha": cov.alpha,
        "dim": cov.dim,
        "r": cov.radius_r,
        "j0": cov.j0,
        "small_radii": cov.small_radii,
        "r0": cov.r0,
        "shells": shells,
        "checks": {
            "coverage_gap": rep.coverage_gap.map(|x| x[..cov.dim].to_vec()),
            "min_radial_overlap": rep.min_radial_overlap,
            "shrunk_separated": rep.shrunk_separated,
            "half_isolated": rep.half_isolated,
            "neighbor_counts": [rep.neighbor_counts.0, rep.neighbor_counts.1],
            "overlap_max": rep.overlap_max,
            "diam_ratio_bracket": rep.diam_ratio_bracket,
        },
        "pass": rep.all_pass(cov.dim),
    })
}

#[derive(Serialize)]
struct FitJson {
    slope: f64,
    intercept: f64,
    r_squared: f64,
    max_residual: f64,
}

pub fn experiment_report_json(rep: &ExperimentReport) -> Value {
    json!({
        "id": rep.id,
        "config": rep.config,
        "config_hash": format!("{:016x}", rep.config_hash),
        "series": rep.series,
        "fit": FitJson {
            slope: rep.fit.slope,
            intercept: rep.fit.intercept,
            r_squared: rep.fit.r_squared,
            max_residual: rep.fit.max_residual,
        },
        "theory_slope": rep.theory_slope,
        "tolerance": rep.tolerance,
        "r2_floor": rep.r2_floor,
        "verdict": rep.verdict,
        "notes": rep.notes,
    })
}

pub fn plancherel_report_json(rep: &PlancherelReport) -> Value {
    let entries: Vec<Value> = rep
        .entries
        .iter()
        .map(|e| {
            json!({
                "alpha": e.alpha,
                "ratio_min": e.ratio_min,
                "ratio_max": e.ratio_max,
                "bracket": e.bracket,
                "fields_used": e.fields_used,
            })
        })
        .collect();
    json!({
        "id": "plancherel",
        "config": rep.config,
        "config_hash": format!("{:016x}", rep.config_hash),
        "entries": entries,
    })
}

/// CSV, '.' decimal, comma separator, no locale: header then one row per
/// series point.
pub fn series_csv(header: (&str, &str), series: &[(f64, f64)]) -> String {
    let mut out = String::new();
    out.push_str(header.0);
    out.push(',');
    out.push_str(header.1);
    out.push('\n');
    for (x, y) in series {
        out.push_str(&format!("{x},{y}\n"));
    }
    out
}

/// Pretty-printed JSON with a trailing newline.
pub fn to_json_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}
