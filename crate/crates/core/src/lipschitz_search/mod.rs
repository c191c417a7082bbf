//! Numerical supremum search for the Lipschitz ratio of `j` under disk
//! automorphisms, and the power-map exploration built on the same engine.
//!
//! The search is a deterministic polar grid over point pairs, a scan of the
//! analytic `w → z` limit on the same grid, and compass refinement from the
//! best separated candidates. Nothing about the location of the extremal pair
//! is fed into it.

mod audit;
mod engine;
mod objective;

use serde::{Deserialize, Serialize};

pub use audit::{bound_audit, bound_audit_with, AuditReport};

use crate::complex_geometry::{ComplexPoint, DiskAutomorphism};
use crate::constants::{ball_constant, main_constant};
use crate::domains_metric::BranchTag;
use crate::error::{Error, Result};
use objective::{PowerRatio, PuncturedRatio, Region};

/// Slack allowed above a proven bound before a ratio counts as a violation.
pub const BOUND_SLACK: f64 = 1e-9;
/// Largest `n` accepted by [`power_monotonicity_table`].
pub const MAX_POWER_EXPONENT: u32 = 6;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    /// Radii and angles per polar axis.
    pub grid_n: usize,
    /// Compass iterations per refinement start.
    pub refine_iters: usize,
    pub refine_starts: usize,
    /// Pairs with `j_G(z, w)` below this are left to the diagonal scan.
    pub diag_epsilon: f64,
    /// Exclusion band at the unit circle and at punctures.
    pub boundary_margin: f64,
    pub seed: u64,
    pub tol: f64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            grid_n: 48,
            refine_iters: 200,
            refine_starts: 16,
            diag_epsilon: 1e-6,
            boundary_margin: 1e-9,
            seed: 0,
            tol: 1e-3,
        }
    }
}

impl SearchConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self { seed, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.grid_n < 4 {
            return Err(Error::argument(format!("grid_n = {} must be at least 4", self.grid_n)));
        }
        let positive = |name: &str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::argument(format!("{name} = {v} must be positive")))
            }
        };
        positive("diag_epsilon", self.diag_epsilon)?;
        positive("boundary_margin", self.boundary_margin)?;
        positive("tol", self.tol)?;
        if self.boundary_margin >= 0.25 {
            return Err(Error::argument("boundary_margin must be below 1/4"));
        }
        Ok(())
    }
}

/// Evaluation counts per branch of the image-domain distance.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchHistogram {
    pub image_puncture_at_z: u64,
    pub image_puncture_at_w: u64,
    pub boundary_at_z: u64,
    pub boundary_at_w: u64,
}

impl BranchHistogram {
    pub fn record(&mut self, tag: BranchTag) {
        match tag {
            BranchTag::ImagePunctureAtZ => self.image_puncture_at_z += 1,
            BranchTag::ImagePunctureAtW => self.image_puncture_at_w += 1,
            BranchTag::BoundaryAtZ => self.boundary_at_z += 1,
            BranchTag::BoundaryAtW => self.boundary_at_w += 1,
        }
    }

    pub fn add(&mut self, other: &BranchHistogram) {
        self.image_puncture_at_z += other.image_puncture_at_z;
        self.image_puncture_at_w += other.image_puncture_at_w;
        self.boundary_at_z += other.boundary_at_z;
        self.boundary_at_w += other.boundary_at_w;
    }

    pub fn total(&self) -> u64 {
        self.image_puncture_at_z + self.image_puncture_at_w + self.boundary_at_z + self.boundary_at_w
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "map", rename_all = "snake_case")]
pub enum MapKind {
    /// `h : B\{0} → B\{a}`.
    PuncturedAutomorphism,
    /// `z ↦ h(z)^m` on the whole disk.
    PowerMap { m: u32 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RatioReport {
    pub kind: MapKind,
    pub a: ComplexPoint,
    pub sup_estimate: f64,
    pub argmax_z: ComplexPoint,
    pub argmax_w: ComplexPoint,
    /// The best value came from the `w → z` limit rather than a pair.
    pub argmax_on_diagonal: bool,
    pub closed_form: Option<f64>,
    /// `closed_form - sup_estimate`.
    pub gap: Option<f64>,
    pub branch_histogram: BranchHistogram,
    pub evaluations: u64,
    pub seed: u64,
}

fn require_nonzero_parameter(a: ComplexPoint) -> Result<()> {
    if a.norm().is_nan() || a.norm() >= 1.0 {
        return Err(Error::argument(format!("|a| = {} must be below 1", a.norm())));
    }
    if a == ComplexPoint::ZERO {
        return Err(Error::argument(
            "a = 0 makes h a rotation; the constant is exactly C(0) = 1",
        ));
    }
    Ok(())
}

fn punctured_objective(a: ComplexPoint, cfg: &SearchConfig) -> Result<PuncturedRatio> {
    Ok(PuncturedRatio {
        h: DiskAutomorphism::new(a)?,
        region: Region { punctured: true, margin: cfg.boundary_margin },
        diag_epsilon: cfg.diag_epsilon,
    })
}

/// `J(z, w; a) = j_{B\{a}}(h z, h w) / j_{B\{0}}(z, w)` for
/// `h(z) = (z+a)/(1+āz)`.
#[allow(non_snake_case)]
pub fn ratio_J(a: ComplexPoint, z: ComplexPoint, w: ComplexPoint) -> Result<f64> {
    let h = DiskAutomorphism::new(a)?;
    let source = crate::domains_metric::PuncturedDisk::punctured_at(ComplexPoint::ZERO)?;
    crate::domains_metric::boundary_distance(&source, z)?;
    crate::domains_metric::boundary_distance(&source, w)?;
    if z == w {
        return Err(Error::argument("ratio_J is undefined for z = w"));
    }
    let objective = PuncturedRatio {
        h,
        region: Region { punctured: true, margin: 0.0 },
        diag_epsilon: 0.0,
    };
    Ok(objective.evaluate(z, w).0)
}

/// Limit of `J(z, w; a)` as `w → z`:
/// `|h'(z)| · d_{B\{0}}(z) / d_{B\{a}}(h(z))`.
pub fn diagonal_limit(a: ComplexPoint, z: ComplexPoint) -> Result<f64> {
    let h = DiskAutomorphism::new(a)?;
    let source = crate::domains_metric::PuncturedDisk::punctured_at(ComplexPoint::ZERO)?;
    crate::domains_metric::boundary_distance(&source, z)?;
    if a == ComplexPoint::ZERO {
        return Ok(1.0);
    }
    let objective = PuncturedRatio {
        h,
        region: Region { punctured: true, margin: 0.0 },
        diag_epsilon: 0.0,
    };
    Ok(objective.diagonal_value(z).0)
}

/// The pair `(a/(2|a|), -a/(2|a|))` and its ratio.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtremalCheck {
    pub z: ComplexPoint,
    pub w: ComplexPoint,
    pub ratio: f64,
    pub c_main: f64,
    /// `ratio - c_main`.
    pub deviation: f64,
}

pub fn extremal_check(a: ComplexPoint) -> Result<ExtremalCheck> {
    require_nonzero_parameter(a)?;
    let z = a.scale(0.5 / a.norm());
    let w = z.scale(-1.0);
    let ratio = ratio_J(a, z, w)?;
    let c_main = main_constant(a.norm())?;
    Ok(ExtremalCheck { z, w, ratio, c_main, deviation: ratio - c_main })
}

fn report_from(
    kind: MapKind,
    a: ComplexPoint,
    cfg: &SearchConfig,
    outcome: engine::SearchOutcome,
    closed_form: Option<f64>,
) -> RatioReport {
    let best = outcome.best;
    RatioReport {
        kind,
        a,
        sup_estimate: best.value,
        argmax_z: best.z,
        argmax_w: best.w,
        argmax_on_diagonal: best.diagonal,
        closed_form,
        gap: closed_form.map(|c| c - best.value),
        branch_histogram: outcome.histogram,
        evaluations: outcome.evaluations,
        seed: cfg.seed,
    }
}

fn check_bound(report: &RatioReport, bound: f64) -> Result<()> {
    if report.sup_estimate > bound + BOUND_SLACK {
        return Err(Error::BoundViolation {
            value: report.sup_estimate,
            bound,
            z: report.argmax_z.to_string(),
            w: report.argmax_w.to_string(),
        });
    }
    Ok(())
}

/// Estimates `sup J(z, w; a)` over `B\{0}` and compares it with `C(|a|)`.
pub fn estimate_lipschitz(a: ComplexPoint, cfg: &SearchConfig) -> Result<RatioReport> {
    require_nonzero_parameter(a)?;
    cfg.validate()?;
    let objective = punctured_objective(a, cfg)?;
    let outcome = engine::search(&objective, cfg)
        .ok_or_else(|| Error::Invariant("no admissible candidate was evaluated".into()))?;
    let closed_form = main_constant(a.norm())?;
    let report = report_from(MapKind::PuncturedAutomorphism, a, cfg, outcome, Some(closed_form));
    check_bound(&report, closed_form)?;
    if report.sup_estimate < 1.0 {
        return Err(Error::Invariant(format!(
            "supremum estimate {} is below 1",
            report.sup_estimate
        )));
    }
    Ok(report)
}

/// Estimates `C(m, a) = sup j_B(h(z)^m, h(w)^m) / j_B(z, w)` over the disk.
/// Every estimate is checked against `1 + |a|`; the closed form is reported
/// only for `m = 1`, where it is sharp.
pub fn estimate_power_constant(a: ComplexPoint, m: u32, cfg: &SearchConfig) -> Result<RatioReport> {
    if m == 0 {
        return Err(Error::argument("power exponent m must be at least 1"));
    }
    cfg.validate()?;
    let h = DiskAutomorphism::new(a).map_err(|_| Error::argument(format!("|a| = {} must be below 1", a.norm())))?;
    let objective = PowerRatio {
        h,
        m,
        region: Region { punctured: false, margin: cfg.boundary_margin },
        diag_epsilon: cfg.diag_epsilon,
    };
    let outcome = engine::search(&objective, cfg)
        .ok_or_else(|| Error::Invariant("no admissible candidate was evaluated".into()))?;
    let bound = ball_constant(a.norm())?;
    let closed_form = (m == 1).then_some(bound);
    let report = report_from(MapKind::PowerMap { m }, a, cfg, outcome, closed_form);
    check_bound(&report, bound)?;
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PowerRow {
    pub n: u32,
    pub m: u32,
    pub report: RatioReport,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PowerTable {
    pub a: ComplexPoint,
    pub rows: Vec<PowerRow>,
    /// Exponents `n` whose estimate exceeds the one for `n - 1` by more
    /// than `2·tol`.
    pub violations: Vec<u32>,
}

impl PowerTable {
    pub fn nonincreasing(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Estimates `C(2^n, a)` for `n = 0..=n_max` and flags adjacent increases.
pub fn power_monotonicity_table(a: ComplexPoint, n_max: u32, cfg: &SearchConfig) -> Result<PowerTable> {
    if n_max > MAX_POWER_EXPONENT {
        return Err(Error::argument(format!(
            "n_max = {n_max} exceeds {MAX_POWER_EXPONENT}"
        )));
    }
    let rows = (0..=n_max)
        .map(|n| {
            let m = 1u32 << n;
            estimate_power_constant(a, m, cfg).map(|report| PowerRow { n, m, report })
        })
        .collect::<Result<Vec<_>>>()?;
    let violations = rows
        .windows(2)
        .filter(|w| w[1].report.sup_estimate > w[0].report.sup_estimate + 2.0 * cfg.tol)
        .map(|w| w[1].n)
        .collect();
    Ok(PowerTable { a, rows, violations })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QScanRow {
    pub m: u32,
    pub a: f64,
    pub report: RatioReport,
}

/// Estimates `C(m, 1/(m+1))` for each `m ≥ 2`. Exploration data only.
pub fn q_scan(m_list: &[u32], cfg: &SearchConfig) -> Result<Vec<QScanRow>> {
    if let Some(m) = m_list.iter().find(|&&m| m < 2) {
        return Err(Error::argument(format!("m = {m}: the scan is defined for m >= 2")));
    }
    m_list
        .iter()
        .map(|&m| {
            let a = 1.0 / (m as f64 + 1.0);
            estimate_power_constant(ComplexPoint::real(a), m, cfg).map(|report| QScanRow { m, a, report })
        })
        .collect()
}
