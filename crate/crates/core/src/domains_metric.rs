//! Punctured unit disks and the distance-ratio metric
//! `j_G(x, y) = log(1 + |x - y| / min(d_G(x), d_G(y)))`.

use serde::{Deserialize, Serialize};

use crate::complex_geometry::{require_in_disk, ComplexPoint, DiskAutomorphism};
use crate::error::{Error, Result};

/// Points closer than this to a puncture are treated as lying on it.
pub const PUNCTURE_GUARD: f64 = 1e-15;

/// The open unit disk with finitely many points removed.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct PuncturedDisk {
    punctures: Vec<ComplexPoint>,
}

impl PuncturedDisk {
    pub fn new(punctures: Vec<ComplexPoint>) -> Result<Self> {
        for (i, p) in punctures.iter().enumerate() {
            require_in_disk(*p, "puncture")?;
            if punctures[..i].iter().any(|q| q.dist(*p) == 0.0) {
                return Err(Error::argument(format!("duplicate puncture {p}")));
            }
        }
        Ok(Self { punctures })
    }

    /// The unit disk itself.
    pub fn unit_disk() -> Self {
        Self { punctures: Vec::new() }
    }

    /// The unit disk minus a single point.
    pub fn punctured_at(p: ComplexPoint) -> Result<Self> {
        Self::new(vec![p])
    }

    pub fn punctures(&self) -> &[ComplexPoint] {
        &self.punctures
    }

    /// Distance to the complement without membership checks.
    pub(crate) fn boundary_distance_unchecked(&self, z: ComplexPoint) -> f64 {
        self.punctures
            .iter()
            .fold(1.0 - z.norm(), |d, p| d.min(z.dist(*p)))
    }

    pub fn contains(&self, z: ComplexPoint) -> bool {
        self.check_member(z).is_ok()
    }

    fn check_member(&self, z: ComplexPoint) -> Result<()> {
        require_in_disk(z, "point")?;
        if let Some(p) = self.punctures.iter().find(|p| z.dist(**p) <= PUNCTURE_GUARD) {
            return Err(Error::domain(format!("point {z} lies on the puncture {p}")));
        }
        Ok(())
    }
}

/// Euclidean distance from `z` to the complement of the domain.
pub fn boundary_distance(domain: &PuncturedDisk, z: ComplexPoint) -> Result<f64> {
    domain.check_member(z)?;
    Ok(domain.boundary_distance_unchecked(z))
}

/// The distance-ratio metric of the domain.
pub fn j_metric(domain: &PuncturedDisk, x: ComplexPoint, y: ComplexPoint) -> Result<f64> {
    let dx = boundary_distance(domain, x)?;
    let dy = boundary_distance(domain, y)?;
    Ok(j_from_parts(x.dist(y), dx.min(dy)))
}

#[inline]
pub(crate) fn j_from_parts(separation: f64, min_boundary_distance: f64) -> f64 {
    (separation / min_boundary_distance).ln_1p()
}

/// Which of the four candidate distances attains `T(a, z, w)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BranchTag {
    /// `|h(z) - a|`
    ImagePunctureAtZ,
    /// `|h(w) - a|`
    ImagePunctureAtW,
    /// `1 - |h(z)|`
    BoundaryAtZ,
    /// `1 - |h(w)|`
    BoundaryAtW,
}

impl BranchTag {
    pub const ALL: [BranchTag; 4] = [
        BranchTag::ImagePunctureAtZ,
        BranchTag::ImagePunctureAtW,
        BranchTag::BoundaryAtZ,
        BranchTag::BoundaryAtW,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    /// The tag obtained by exchanging the roles of `z` and `w`.
    pub fn swapped(self) -> Self {
        match self {
            BranchTag::ImagePunctureAtZ => BranchTag::ImagePunctureAtW,
            BranchTag::ImagePunctureAtW => BranchTag::ImagePunctureAtZ,
            BranchTag::BoundaryAtZ => BranchTag::BoundaryAtW,
            BranchTag::BoundaryAtW => BranchTag::BoundaryAtZ,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TBranch {
    pub tag: BranchTag,
    pub value: f64,
}

/// Minimum of the four candidates, first one wins on ties.
pub(crate) fn t_branch_unchecked(h: &DiskAutomorphism, z: ComplexPoint, w: ComplexPoint) -> TBranch {
    let candidates = [
        h.puncture_distance_unchecked(z),
        h.puncture_distance_unchecked(w),
        h.image_boundary_distance(z),
        h.image_boundary_distance(w),
    ];
    let mut best = TBranch {
        tag: BranchTag::ImagePunctureAtZ,
        value: candidates[0],
    };
    for (tag, value) in BranchTag::ALL.into_iter().zip(candidates).skip(1) {
        if value < best.value {
            best = TBranch { tag, value };
        }
    }
    best
}

/// Classifies which distance realizes
/// `T(a,z,w) = min{|h(z)-a|, |h(w)-a|, 1-|h(z)|, 1-|h(w)|}` for the normalized
/// map `h(z) = (z+a)/(1+āz)` of `B \ {0}` onto `B \ {a}`.
pub fn t_branch(a: ComplexPoint, z: ComplexPoint, w: ComplexPoint) -> Result<TBranch> {
    if a == ComplexPoint::ZERO {
        return Err(Error::argument(
            "t_branch needs a != 0; with a = 0 the map is a rotation",
        ));
    }
    let h = DiskAutomorphism::new(a)?;
    let source = PuncturedDisk::punctured_at(ComplexPoint::ZERO)?;
    source.check_member(z)?;
    source.check_member(w)?;
    Ok(t_branch_unchecked(&h, z, w))
}
