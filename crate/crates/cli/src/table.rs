//! CSV table of the closed-form exponents over an index grid.

use alphamod_core::exponents::{
    algebra_s0, algebra_s0_is_sharp, big_r, classify, s_c, IndexPair, LambdaSide,
};

/// One row per `(1/p, 1/q)` grid point: region tags, both embedding prices
/// against the dyadic side, both critical dilation exponents, and the
/// multiplication-algebra threshold. D1 rows carry `upper_bound` in the
/// final column because the threshold there is not known sharp.
pub fn exponent_table(alpha: f64, dim: usize, points_per_axis: usize) -> String {
    let mut out = String::from(
        "inv_p,inv_q,region_s,region_t,region_d,R_up,R_down,s_c_up,s_c_down,s0,s0_sharp\n",
    );
    let n = points_per_axis.max(2);
    for i in 0..n {
        for j in 0..n {
            let inv_p = 2.0 * i as f64 / (n - 1) as f64;
            let inv_q = 2.0 * j as f64 / (n - 1) as f64;
            let ip = IndexPair::new(inv_p, inv_q);
            let tag = classify(ip);
            let r_up = big_r(ip, 1.0, alpha, dim);
            let r_down = big_r(ip, alpha, 1.0, dim);
            let scu = s_c(ip, alpha, LambdaSide::Up, dim);
            let scd = s_c(ip, alpha, LambdaSide::Down, dim);
            let s0 = algebra_s0(ip, alpha, dim);
            let sharp = if algebra_s0_is_sharp(ip) {
                "sharp"
            } else {
                "upper_bound"
            };
            out.push_str(&format!(
                "{inv_p},{inv_q},{:?},{:?},{:?},{r_up},{r_down},{scu},{scd},{s0},{sharp}\n",
                tag.s, tag.t, tag.d
            ));
        }
    }
    out
}
