//! The distance-ratio metric `j` on punctured unit disks and the sharp
//! Lipschitz constant of Möbius automorphisms `h : B\{0} → B\{a}` with
//! respect to it.
//!
//! * [`complex_geometry`]: the automorphism `h(z) = (z+a)/(1+āz)` and its
//!   distance identities.
//! * [`domains_metric`]: punctured disks, boundary distances, `j`, and the
//!   branch classifier for the image-domain distance.
//! * [`constants`]: closed forms `C(a)`, `2/(2-|a|)`, `1+|a|`, `2/(1+q)`.
//! * [`lemma_checkers`]: the auxiliary inequalities and their seeded suites.
//! * [`lipschitz_search`]: grid + compass supremum search, audits and the
//!   power-map exploration.

pub mod complex_geometry;
pub mod constants;
pub mod domains_metric;
pub mod error;
pub mod lemma_checkers;
pub mod lipschitz_search;

pub use complex_geometry::{ComplexPoint, DiskAutomorphism};
pub use constants::{constants_table, main_constant, ConstantsTable};
pub use domains_metric::{j_metric, BranchTag, PuncturedDisk, TBranch};
pub use error::{Error, Result};
pub use lipschitz_search::{
    bound_audit, estimate_lipschitz, estimate_power_constant, ratio_J, AuditReport, RatioReport,
    SearchConfig,
};
