//! Complex points, Möbius automorphisms of the unit disk and the closed-form
//! distance identities they satisfy.
//!
//! The automorphism is `h(z) = e^{iφ} (z + a) / (1 + ā z)` with `|a| < 1`.
//! Every quantity that can be expressed through `1 - |a|²`, `1 - |z|²` and
//! `|1 + ā z|` is computed that way instead of by subtracting nearly equal
//! numbers, so the kernel stays accurate close to the unit circle.

use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point of the complex plane.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ComplexPoint {
    pub re: f64,
    pub im: f64,
}

impl ComplexPoint {
    pub const ZERO: ComplexPoint = ComplexPoint { re: 0.0, im: 0.0 };

    pub const fn new(re: f64, im: f64) -> Self {
        Self { re, im }
    }

    /// Checked constructor rejecting NaN and infinite coordinates.
    pub fn try_new(re: f64, im: f64) -> Result<Self> {
        if re.is_finite() && im.is_finite() {
            Ok(Self { re, im })
        } else {
            Err(Error::domain(format!("non-finite point ({re}, {im})")))
        }
    }

    pub const fn real(re: f64) -> Self {
        Self { re, im: 0.0 }
    }

    pub fn from_polar(r: f64, theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self { re: r * c, im: r * s }
    }

    pub fn norm(self) -> f64 {
        self.re.hypot(self.im)
    }

    pub fn norm_sqr(self) -> f64 {
        self.re * self.re + self.im * self.im
    }

    pub fn arg(self) -> f64 {
        self.im.atan2(self.re)
    }

    pub fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn dist(self, other: ComplexPoint) -> f64 {
        (self.re - other.re).hypot(self.im - other.im)
    }

    pub fn scale(self, k: f64) -> Self {
        Self::new(self.re * k, self.im * k)
    }

    /// Multiplies by `e^{iθ}`.
    pub fn rotate(self, theta: f64) -> Self {
        (Complex64::from(self) * Complex64::from_polar(1.0, theta)).into()
    }

    /// Lexicographic key `(re, im)` with a total order on floats.
    pub(crate) fn lex_cmp(self, other: ComplexPoint) -> std::cmp::Ordering {
        self.re
            .total_cmp(&other.re)
            .then(self.im.total_cmp(&other.im))
    }
}

impl From<Complex64> for ComplexPoint {
    fn from(c: Complex64) -> Self {
        Self::new(c.re, c.im)
    }
}

impl From<ComplexPoint> for Complex64 {
    fn from(p: ComplexPoint) -> Self {
        Complex64::new(p.re, p.im)
    }
}

impl From<f64> for ComplexPoint {
    fn from(re: f64) -> Self {
        Self::real(re)
    }
}

impl fmt::Display for ComplexPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_sign_negative() {
            write!(f, "{}-{}i", self.re, -self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

pub(crate) fn require_in_disk(z: ComplexPoint, what: &str) -> Result<()> {
    // NaN fails the comparison, so this also covers non-finite input.
    if z.norm_sqr() < 1.0 && z.norm() < 1.0 {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "{what} = {z} is not in the open unit disk"
        )))
    }
}

/// The Möbius self-map of the unit disk `z ↦ e^{iφ}(z + a)/(1 + ā z)`.
///
/// With `phase = 0` this is the normalized map with `h(0) = a` and
/// `h(-a) = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiskAutomorphism {
    a: ComplexPoint,
    phase: f64,
}

impl DiskAutomorphism {
    pub fn new(a: ComplexPoint) -> Result<Self> {
        Self::with_phase(a, 0.0)
    }

    /// The phase is reduced into `[0, 2π)`.
    pub fn with_phase(a: ComplexPoint, phase: f64) -> Result<Self> {
        require_in_disk(a, "automorphism parameter a")?;
        if !phase.is_finite() {
            return Err(Error::argument(format!("phase {phase} is not finite")));
        }
        let mut phase = phase.rem_euclid(TAU);
        if phase >= TAU {
            phase = 0.0;
        }
        Ok(Self { a, phase })
    }

    pub fn a(&self) -> ComplexPoint {
        self.a
    }

    pub fn phase(&self) -> f64 {
        self.phase
    }

    pub(crate) fn one_minus_abs_a_sqr(&self) -> f64 {
        (1.0 - self.a.norm()) * (1.0 + self.a.norm())
    }

    /// `|1 + ā z|`.
    pub(crate) fn denom_modulus(&self, z: ComplexPoint) -> f64 {
        let a = Complex64::from(self.a);
        (Complex64::new(1.0, 0.0) + a.conj() * Complex64::from(z)).norm()
    }

    pub(crate) fn apply_unchecked(&self, z: ComplexPoint) -> ComplexPoint {
        let a = Complex64::from(self.a);
        let z = Complex64::from(z);
        let mut image = (z + a) / (Complex64::new(1.0, 0.0) + a.conj() * z);
        if self.phase != 0.0 {
            image *= Complex64::from_polar(1.0, self.phase);
        }
        image.into()
    }

    /// `1 - |h(z)|²` through the identity
    /// `|1+āz|² - |a+z|² = (1-|a|²)(1-|z|²)`.
    pub(crate) fn one_minus_image_norm_sqr(&self, z: ComplexPoint) -> f64 {
        let one_minus_z = (1.0 - z.norm()) * (1.0 + z.norm());
        let d = self.denom_modulus(z);
        self.one_minus_abs_a_sqr() * one_minus_z / (d * d)
    }

    /// `1 - |h(z)|`, the distance of the image to the unit circle.
    pub(crate) fn image_boundary_distance(&self, z: ComplexPoint) -> f64 {
        let image = self.apply_unchecked(z);
        self.one_minus_image_norm_sqr(z) / (1.0 + image.norm())
    }

    pub(crate) fn image_distance_unchecked(&self, z: ComplexPoint, w: ComplexPoint) -> f64 {
        self.one_minus_abs_a_sqr() * z.dist(w) / (self.denom_modulus(z) * self.denom_modulus(w))
    }

    pub(crate) fn puncture_distance_unchecked(&self, z: ComplexPoint) -> f64 {
        self.one_minus_abs_a_sqr() * z.norm() / self.denom_modulus(z)
    }

    pub(crate) fn derivative_modulus_unchecked(&self, z: ComplexPoint) -> f64 {
        let d = self.denom_modulus(z);
        self.one_minus_abs_a_sqr() / (d * d)
    }
}

/// Evaluates the automorphism at a point of the open disk.
pub fn mobius_apply(h: &DiskAutomorphism, z: ComplexPoint) -> Result<ComplexPoint> {
    require_in_disk(z, "z")?;
    let denom = h.denom_modulus(z);
    assert!(denom > 0.0, "|1 + conj(a) z| vanished inside the disk");
    Ok(h.apply_unchecked(z))
}

/// `|h(z) - h(w)| = (1-|a|²)|z-w| / (|1+āz||1+āw|)`.
pub fn chordal_image_distance(
    h: &DiskAutomorphism,
    z: ComplexPoint,
    w: ComplexPoint,
) -> Result<f64> {
    require_in_disk(z, "z")?;
    require_in_disk(w, "w")?;
    Ok(h.image_distance_unchecked(z, w))
}

/// `|h(z) - a| = (1-|a|²)|z| / |1+āz|`, the distance from the image to the
/// image of the origin. Only defined for the normalized map (phase 0).
pub fn dist_to_image_puncture(h: &DiskAutomorphism, z: ComplexPoint) -> Result<f64> {
    require_in_disk(z, "z")?;
    if h.phase != 0.0 {
        return Err(Error::argument(
            "dist_to_image_puncture requires the normalized map (phase 0)",
        ));
    }
    Ok(h.puncture_distance_unchecked(z))
}

/// `|1+āz|² - |a+z|² - (1-|a|²)(1-|z|²)`, zero up to roundoff.
pub fn disk_identity_residual(a: ComplexPoint, z: ComplexPoint) -> f64 {
    let ac = Complex64::from(a);
    let zc = Complex64::from(z);
    let lhs = (Complex64::new(1.0, 0.0) + ac.conj() * zc).norm_sqr() - (ac + zc).norm_sqr();
    lhs - (1.0 - a.norm_sqr()) * (1.0 - z.norm_sqr())
}

/// `|h'(z)| = (1-|a|²)/|1+āz|²`.
pub fn derivative_modulus(h: &DiskAutomorphism, z: ComplexPoint) -> Result<f64> {
    require_in_disk(z, "z")?;
    Ok(h.derivative_modulus_unchecked(z))
}

/// `(h(z))^m`, the pointwise power of the image.
pub fn power_map(h: &DiskAutomorphism, m: u32, z: ComplexPoint) -> Result<ComplexPoint> {
    if m == 0 {
        return Err(Error::argument("power exponent m must be at least 1"));
    }
    let image = mobius_apply(h, z)?;
    Ok(Complex64::from(image).powu(m).into())
}
