//! Log–log power-law fitting: the unit of experimental evidence.

use crate::error::{Error, Result};
use alloc::vec::Vec;

/// Least-squares line through `(ln x, ln y)` pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub max_residual: f64,
    pub points: Vec<(f64, f64)>,
}

pub fn fit_power_law(xs: &[f64], ys: &[f64]) -> Result<FitResult> {
    if xs.len() != ys.len() || xs.len() < 6 {
        return Err(Error::InvalidParam(alloc::format!(
            "need at least 6 matched points, got {} and {}",
            xs.len(),
            ys.len()
        )));
    }
    for w in xs.windows(2) {
        if !(w[1] > w[0]) {
            return Err(Error::InvalidParam(alloc::string::String::from(
                "xs must be strictly increasing",
            )));
        }
    }
    if xs[0] <= 0.0 {
        return Err(Error::Degenerate("power-law fit needs positive xs"));
    }
    if ys.iter().any(|&y| !(y > 0.0)) {
        return Err(Error::Degenerate("power-law fit needs positive ys"));
    }
    let points: Vec<(f64, f64)> = xs
        .iter()
        .zip(ys)
        .map(|(&x, &y)| (libm::log(x), libm::log(y)))
        .collect();
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    let mut syy = 0.0;
    for &(x, y) in &points {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
        syy += (y - my) * (y - my);
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let mut ss_res = 0.0;
    let mut max_residual = 0.0f64;
    for &(x, y) in &points {
        let r = y - (slope * x + intercept);
        ss_res += r * r;
        max_residual = max_residual.max(r.abs());
    }
    // Constant data (up to roundoff in the log transform) is a perfect fit
    // of a flat line, not a zero-variance pathology.
    let floor = 1e-20 * n * (1.0 + my * my);
    let r_squared = if syy <= floor {
        1.0
    } else {
        1.0 - ss_res / syy
    };
    Ok(FitResult {
        slope,
        intercept,
        r_squared,
        max_residual,
        points,
    })
}
