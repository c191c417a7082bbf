//! The two ratio functionals the search maximizes.

use num_complex::Complex64;

use crate::complex_geometry::{ComplexPoint, DiskAutomorphism};
use crate::domains_metric::{j_from_parts, t_branch_unchecked, BranchTag};

/// Which source points the search may visit.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Region {
    /// Whether the origin is removed from the source domain.
    pub punctured: bool,
    /// Exclusion band width at the unit circle and at the puncture.
    pub margin: f64,
}

impl Region {
    pub fn admits(&self, z: ComplexPoint) -> bool {
        let r = z.norm();
        r <= 1.0 - self.margin && (!self.punctured || r >= self.margin)
    }

    /// `d_D(z)`: distance to the unit circle, and to 0 when punctured.
    pub fn boundary_distance(&self, z: ComplexPoint) -> f64 {
        let r = z.norm();
        if self.punctured {
            r.min(1.0 - r)
        } else {
            1.0 - r
        }
    }

    pub fn lower_radius(&self) -> f64 {
        if self.punctured {
            self.margin
        } else {
            0.0
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct Eval {
    pub value: f64,
    pub tag: BranchTag,
}

pub(crate) trait Objective: Sync {
    fn region(&self) -> Region;

    /// Ratio at an admissible pair; `None` outside the region or when the
    /// pair is closer than the diagonal cutoff.
    fn pair(&self, z: ComplexPoint, w: ComplexPoint) -> Option<Eval>;

    /// Limit of the ratio as `w → z`.
    fn diagonal(&self, z: ComplexPoint) -> Option<Eval>;

    /// Angle of the coordinate frame used for local refinement. Both ratios
    /// are invariant under `(z, w, a) ↦ e^{iα}(z, w, a)`, so aligning the
    /// frame with `a` makes ridges of the objective axis- or diagonal-aligned.
    fn frame(&self) -> f64 {
        0.0
    }
}

/// `J(z,w;a) = j_{B\{a}}(h z, h w) / j_{B\{0}}(z, w)`.
pub(crate) struct PuncturedRatio {
    pub h: DiskAutomorphism,
    pub region: Region,
    pub diag_epsilon: f64,
}

impl PuncturedRatio {
    /// Ratio without admissibility checks beyond `z != w`.
    pub fn evaluate(&self, z: ComplexPoint, w: ComplexPoint) -> (f64, f64, BranchTag) {
        let source = j_from_parts(
            z.dist(w),
            self.region.boundary_distance(z).min(self.region.boundary_distance(w)),
        );
        let t = t_branch_unchecked(&self.h, z, w);
        let image = j_from_parts(self.h.image_distance_unchecked(z, w), t.value);
        (image / source, source, t.tag)
    }

    pub fn diagonal_value(&self, z: ComplexPoint) -> (f64, BranchTag) {
        let to_puncture = self.h.puncture_distance_unchecked(z);
        let to_circle = self.h.image_boundary_distance(z);
        let (image_d, tag) = if to_circle < to_puncture {
            (to_circle, BranchTag::BoundaryAtZ)
        } else {
            (to_puncture, BranchTag::ImagePunctureAtZ)
        };
        let value =
            self.h.derivative_modulus_unchecked(z) * self.region.boundary_distance(z) / image_d;
        (value, tag)
    }
}

impl Objective for PuncturedRatio {
    fn region(&self) -> Region {
        self.region
    }

    fn frame(&self) -> f64 {
        self.h.a().arg()
    }

    fn pair(&self, z: ComplexPoint, w: ComplexPoint) -> Option<Eval> {
        if !(self.region.admits(z) && self.region.admits(w)) || z == w {
            return None;
        }
        let (value, source, tag) = self.evaluate(z, w);
        (source >= self.diag_epsilon).then_some(Eval { value, tag })
    }

    fn diagonal(&self, z: ComplexPoint) -> Option<Eval> {
        if !self.region.admits(z) {
            return None;
        }
        let (value, tag) = self.diagonal_value(z);
        Some(Eval { value, tag })
    }
}

/// `j_B((h z)^m, (h w)^m) / j_B(z, w)` on the whole disk.
pub(crate) struct PowerRatio {
    pub h: DiskAutomorphism,
    pub m: u32,
    pub region: Region,
    pub diag_epsilon: f64,
}

impl PowerRatio {
    /// `1 - |h(z)|^m` from `1 - |h(z)|²` without cancellation.
    fn image_boundary_distance(&self, z: ComplexPoint) -> f64 {
        let delta = self.h.one_minus_image_norm_sqr(z);
        -(0.5 * self.m as f64 * (-delta).ln_1p()).exp_m1()
    }

    fn image(&self, z: ComplexPoint) -> Complex64 {
        Complex64::from(self.h.apply_unchecked(z)).powu(self.m)
    }

    pub fn evaluate(&self, z: ComplexPoint, w: ComplexPoint) -> (f64, f64, BranchTag) {
        let source = j_from_parts(z.dist(w), (1.0 - z.norm()).min(1.0 - w.norm()));
        let dz = self.image_boundary_distance(z);
        let dw = self.image_boundary_distance(w);
        let (d, tag) = if dw < dz {
            (dw, BranchTag::BoundaryAtW)
        } else {
            (dz, BranchTag::BoundaryAtZ)
        };
        let image = j_from_parts((self.image(z) - self.image(w)).norm(), d);
        (image / source, source, tag)
    }
}

impl Objective for PowerRatio {
    fn region(&self) -> Region {
        self.region
    }

    fn frame(&self) -> f64 {
        self.h.a().arg()
    }

    fn pair(&self, z: ComplexPoint, w: ComplexPoint) -> Option<Eval> {
        if !(self.region.admits(z) && self.region.admits(w)) || z == w {
            return None;
        }
        let (value, source, tag) = self.evaluate(z, w);
        (source >= self.diag_epsilon).then_some(Eval { value, tag })
    }

    fn diagonal(&self, z: ComplexPoint) -> Option<Eval> {
        if !self.region.admits(z) {
            return None;
        }
        let hz = self.h.apply_unchecked(z).norm();
        let speed = self.m as f64 * hz.powi(self.m as i32 - 1) * self.h.derivative_modulus_unchecked(z);
        let value = speed * (1.0 - z.norm()) / self.image_boundary_distance(z);
        Some(Eval {
            value,
            tag: BranchTag::BoundaryAtZ,
        })
    }
}
