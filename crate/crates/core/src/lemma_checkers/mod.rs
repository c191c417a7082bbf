//! Executable forms of the auxiliary inequalities behind the sharp constant:
//! the logarithmic gap inequality, the `(X, Y)` sufficient condition, the
//! two-part product/ratio lemma and the monotone auxiliary functions `k`
//! and `g`. The randomized suites that exercise them live in [`suites`].

pub mod suites;

use serde::{Deserialize, Serialize};

use crate::complex_geometry::{ComplexPoint, DiskAutomorphism};
use crate::domains_metric::{j_from_parts, t_branch_unchecked, PuncturedDisk};
use crate::error::{Error, Result};

/// Relative slack used when comparing the two sides of the product lemma.
pub const PRODUCT_LEMMA_SLACK: f64 = 1e-12;

fn check_unit(name: &str, v: f64) -> Result<()> {
    if (0.0..=1.0).contains(&v) {
        Ok(())
    } else {
        Err(Error::argument(format!("{name} = {v} must lie in [0, 1]")))
    }
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::argument(format!("{name} = {v} must be positive")))
    }
}

fn check_open_unit(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v < 1.0 {
        Ok(())
    } else {
        Err(Error::argument(format!("{name} = {v} must lie in (0, 1)")))
    }
}

/// `(1-q)/(1+q)·t - log((q+e^t)/(1+q e^t))`, nonnegative for `t ≥ 0`,
/// `q ∈ [0, 1]`.
pub fn le1_gap(t: f64, q: f64) -> Result<f64> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::argument(format!("t = {t} must be finite and >= 0")));
    }
    check_unit("q", q)?;
    // (q+e^t)/(1+qe^t) = 1 + (e^t-1)(1-q)/(1+qe^t)
    let log_term = (t.exp_m1() * (1.0 - q) / (1.0 + q * t.exp())).ln_1p();
    Ok((1.0 - q) / (1.0 + q) * t - log_term)
}

/// The two ratios of the sufficient condition for a point pair under `h`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct XYPair {
    /// `|z-w| / min(d_D(z), d_D(w))`, equal to `exp(j_D(z,w)) - 1`.
    pub x: f64,
    /// `(|z-w| / |h(z)-h(w)|) · min(d_D'(h z), d_D'(h w)) / min(d_D(z), d_D(w))`.
    pub y: f64,
}

/// `(X, Y)` for `h(z) = (z+a)/(1+āz)` from `D = B\{0}` onto `D' = B\{a}`.
pub fn s1_xy(a: ComplexPoint, z: ComplexPoint, w: ComplexPoint) -> Result<XYPair> {
    if a == ComplexPoint::ZERO {
        return Err(Error::argument("s1_xy needs a != 0"));
    }
    if z == w {
        return Err(Error::argument("s1_xy needs z != w"));
    }
    let h = DiskAutomorphism::new(a)?;
    let source = PuncturedDisk::punctured_at(ComplexPoint::ZERO)?;
    let dz = crate::domains_metric::boundary_distance(&source, z)?;
    let dw = crate::domains_metric::boundary_distance(&source, w)?;
    let min_d = dz.min(dw);
    let sep = z.dist(w);
    let x = sep / min_d;
    debug_assert!({
        let via_j = j_from_parts(sep, min_d).exp_m1();
        (via_j - x).abs() <= 1e-12 * x.max(1e-300)
    });
    let image_sep = h.image_distance_unchecked(z, w);
    let t = t_branch_unchecked(&h, z, w).value;
    Ok(XYPair {
        x,
        y: (sep / image_sep) * (t / min_d),
    })
}

/// `Y + (Y-1)/(X+1) - q`; nonnegative means the pair satisfies the
/// `q`-condition, which yields the constant `2/(1+q)`.
pub fn s1_condition_margin(xy: XYPair, q: f64) -> f64 {
    xy.y + (xy.y - 1.0) / (xy.x + 1.0) - q
}

/// Largest admissible `q` for the pair, `None` if the condition fails even
/// for `q = 0`.
pub fn s1_best_q(xy: XYPair) -> Option<f64> {
    let q = s1_condition_margin(xy, 0.0);
    (q >= 0.0).then(|| q.min(1.0))
}

/// Evaluates
/// `1 + (B/D)θ(1 + D/(1+A))(1 + Bθ/(1-C)) ≤ (1 + (B/D)θ)(1 + Bθ/(1-C))`.
/// The inequality holds exactly when `Bθ ≤ A + C`.
pub fn l3_part1_holds(a: f64, b: f64, c: f64, d: f64, theta: f64) -> Result<bool> {
    check_positive("A", a)?;
    check_positive("B", b)?;
    check_positive("D", d)?;
    check_open_unit("C", c)?;
    if !(theta >= 0.0 && theta.is_finite()) {
        return Err(Error::argument(format!("theta = {theta} must be >= 0")));
    }
    let u = b / d * theta;
    let v = b * theta / (1.0 - c);
    let lhs = 1.0 + u * (1.0 + d / (1.0 + a)) * (1.0 + v);
    let rhs = (1.0 + u) * (1.0 + v);
    Ok(lhs <= rhs * (1.0 + PRODUCT_LEMMA_SLACK))
}

/// `log(1 + Bθ/(1-C)) / log(1 + Bθ/D)`: increasing in `θ` when `C + D < 1`,
/// decreasing when `C + D > 1`.
pub fn l3_part2_ratio(b: f64, c: f64, d: f64, theta: f64) -> Result<f64> {
    check_positive("B", b)?;
    check_open_unit("C", c)?;
    check_positive("D", d)?;
    check_positive("theta", theta)?;
    Ok((b * theta / (1.0 - c)).ln_1p() / (b * theta / d).ln_1p())
}

/// `k(r) = log(1 + |a|/(1-|a|(1-r))) / log(1 + 1/r)`.
pub fn k_ratio(r: f64, abs_a: f64) -> Result<f64> {
    check_positive("r", r)?;
    if !(0.0..1.0).contains(&abs_a) {
        return Err(Error::argument(format!("|a| = {abs_a} must lie in [0, 1)")));
    }
    Ok((abs_a / (1.0 - abs_a * (1.0 - r))).ln_1p() / r.recip().ln_1p())
}

/// `g(r) = 1 + log(1 + |a|/(1-|a|r)) / log(1 + 1/r)` for `r ∈ (0, 1/2]`.
pub fn g_ratio(r: f64, abs_a: f64) -> Result<f64> {
    if !(r > 0.0 && r <= 0.5) {
        return Err(Error::argument(format!("r = {r} must lie in (0, 1/2]")));
    }
    if !(0.0..1.0).contains(&abs_a) {
        return Err(Error::argument(format!("|a| = {abs_a} must lie in [0, 1)")));
    }
    Ok(1.0 + (abs_a / (1.0 - abs_a * r)).ln_1p() / r.recip().ln_1p())
}
