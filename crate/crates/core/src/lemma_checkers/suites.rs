//! Seeded randomized suites over the lemma checkers.
//!
//! Each suite draws its own ChaCha stream from the common seed, so a suite's
//! outcome depends only on `(seed, samples)` and not on which other suites
//! ran.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{
    g_ratio, k_ratio, l3_part1_holds, l3_part2_ratio, le1_gap, s1_condition_margin, s1_xy,
};
use crate::complex_geometry::{ComplexPoint, DiskAutomorphism};
use crate::constants::{case12_constant, s1_constant};
use crate::domains_metric::{j_from_parts, t_branch_unchecked, BranchTag};
use crate::error::{Error, Result};

/// Tolerated negative excursion of an inequality that should hold.
pub const INEQUALITY_SLACK: f64 = 1e-12;
/// Relative band around `Bθ = A + C` excluded from the iff check.
pub const EQUALITY_BAND: f64 = 1e-9;
/// Points per monotonicity grid.
pub const GRID_POINTS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Fault {
    /// Flip the sign of the logarithmic gap, to prove the harness can fail.
    NegateLe1,
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub samples: u64,
    pub seed: u64,
    pub fault: Option<Fault>,
}

impl VerifyOptions {
    pub fn new(samples: u64, seed: u64) -> Self {
        Self {
            samples,
            seed,
            fault: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub inputs: BTreeMap<String, f64>,
    pub values: BTreeMap<String, f64>,
}

impl Counterexample {
    fn new(inputs: &[(&str, f64)], values: &[(&str, f64)]) -> Self {
        let to_map = |kv: &[(&str, f64)]| kv.iter().map(|(k, v)| (k.to_string(), *v)).collect();
        Self {
            inputs: to_map(inputs),
            values: to_map(values),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteOutcome {
    pub name: String,
    /// Number of checks evaluated (samples, or grid steps for monotonicity).
    pub checks: u64,
    /// Samples drawn but not checked (equality band, inapplicable pairs).
    pub skipped: u64,
    /// Smallest observed margin; negative beyond the slack means failure.
    pub worst_margin: f64,
    pub passed: bool,
    pub counterexample: Option<Counterexample>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub samples: u64,
    pub seed: u64,
    pub all_passed: bool,
    pub suites: Vec<SuiteOutcome>,
}

struct Tally {
    name: &'static str,
    checks: u64,
    skipped: u64,
    worst: f64,
    counterexample: Option<Counterexample>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            checks: 0,
            skipped: 0,
            worst: f64::INFINITY,
            counterexample: None,
        }
    }

    /// Records one check; `margin < 0` is a failure, the first one is kept.
    fn record(&mut self, margin: f64, witness: impl FnOnce() -> Counterexample) {
        self.checks += 1;
        if margin < self.worst || margin.is_nan() {
            self.worst = margin;
        }
        if (margin.is_nan() || margin < 0.0) && self.counterexample.is_none() {
            self.counterexample = Some(witness());
        }
    }

    fn finish(self) -> SuiteOutcome {
        SuiteOutcome {
            name: self.name.to_string(),
            checks: self.checks,
            skipped: self.skipped,
            worst_margin: if self.checks == 0 { 0.0 } else { self.worst },
            passed: self.counterexample.is_none(),
            counterexample: self.counterexample,
        }
    }
}

fn stream(seed: u64, id: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(id);
    rng
}

fn open_unit(rng: &mut ChaCha8Rng) -> f64 {
    loop {
        let v: f64 = rng.random();
        if v > 0.0 {
            return v;
        }
    }
}

/// Uniform point of the annulus `lo ≤ |z| ≤ hi` (area measure).
pub(crate) fn annulus_point(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> ComplexPoint {
    let r = (lo * lo + (hi * hi - lo * lo) * rng.random::<f64>()).sqrt();
    ComplexPoint::from_polar(r, std::f64::consts::TAU * rng.random::<f64>())
}

pub fn le1_suite(opts: &VerifyOptions) -> Result<SuiteOutcome> {
    let mut rng = stream(opts.seed, 1);
    let mut tally = Tally::new("le1_gap");
    for _ in 0..opts.samples {
        let t = 20.0 * rng.random::<f64>();
        let q = rng.random::<f64>();
        let mut gap = le1_gap(t, q)?;
        if opts.fault == Some(Fault::NegateLe1) {
            gap = -gap;
        }
        tally.record(gap + INEQUALITY_SLACK, || {
            Counterexample::new(&[("t", t), ("q", q)], &[("gap", gap)])
        });
    }
    Ok(tally.finish())
}

pub fn l3_part1_suite(opts: &VerifyOptions) -> Result<SuiteOutcome> {
    let mut rng = stream(opts.seed, 2);
    let mut tally = Tally::new("l3_part1_iff");
    for _ in 0..opts.samples {
        let a = 0.05 + 4.95 * rng.random::<f64>();
        let b = 0.05 + 4.95 * rng.random::<f64>();
        let d = 0.05 + 4.95 * rng.random::<f64>();
        let c = open_unit(&mut rng);
        // half of the draws land on each side of Bθ = A + C
        let theta = 2.0 * (a + c) / b * rng.random::<f64>();
        let bt = b * theta;
        if (bt - (a + c)).abs() <= EQUALITY_BAND * (a + c) {
            tally.skipped += 1;
            continue;
        }
        let holds = l3_part1_holds(a, b, c, d, theta)?;
        let expected = bt <= a + c;
        let margin = if holds == expected { 1.0 } else { -1.0 };
        tally.record(margin, || {
            Counterexample::new(
                &[("A", a), ("B", b), ("C", c), ("D", d), ("theta", theta)],
                &[
                    ("holds", holds as u8 as f64),
                    ("b_theta", bt),
                    ("a_plus_c", a + c),
                ],
            )
        });
    }
    Ok(tally.finish())
}

fn monotone_margin(prev: f64, next: f64, increasing: bool) -> f64 {
    let scale = INEQUALITY_SLACK * prev.abs().max(1.0);
    if increasing {
        next - prev + scale
    } else {
        prev - next + scale
    }
}

pub fn l3_part2_suite(opts: &VerifyOptions) -> Result<SuiteOutcome> {
    let mut rng = stream(opts.seed, 3);
    let mut tally = Tally::new("l3_part2_monotone");
    let draws = (opts.samples / 10).max(1);
    for _ in 0..draws {
        let b = 5.0 * open_unit(&mut rng);
        let c = open_unit(&mut rng);
        let d = 2.0 * open_unit(&mut rng);
        if (c + d - 1.0).abs() <= EQUALITY_BAND {
            tally.skipped += 1;
            continue;
        }
        let increasing = c + d < 1.0;
        let theta_max = 10.0 * open_unit(&mut rng);
        let mut prev = l3_part2_ratio(b, c, d, theta_max / GRID_POINTS as f64)?;
        for k in 2..=GRID_POINTS {
            let theta = theta_max * k as f64 / GRID_POINTS as f64;
            let next = l3_part2_ratio(b, c, d, theta)?;
            tally.record(monotone_margin(prev, next, increasing), || {
                Counterexample::new(
                    &[("B", b), ("C", c), ("D", d), ("theta", theta)],
                    &[("previous", prev), ("ratio", next)],
                )
            });
            prev = next;
        }
    }
    Ok(tally.finish())
}

fn radial_monotone_suite(
    opts: &VerifyOptions,
    name: &'static str,
    id: u64,
    f: fn(f64, f64) -> Result<f64>,
) -> Result<SuiteOutcome> {
    let mut rng = stream(opts.seed, id);
    let mut tally = Tally::new(name);
    let draws = (opts.samples / 100).max(1);
    for _ in 0..draws {
        let abs_a = open_unit(&mut rng);
        let mut prev = f(0.5 / GRID_POINTS as f64, abs_a)?;
        for k in 2..=GRID_POINTS {
            let r = 0.5 * k as f64 / GRID_POINTS as f64;
            let next = f(r, abs_a)?;
            tally.record(monotone_margin(prev, next, true), || {
                Counterexample::new(&[("abs_a", abs_a), ("r", r)], &[("previous", prev), ("value", next)])
            });
            prev = next;
        }
    }
    Ok(tally.finish())
}

pub fn k_ratio_suite(opts: &VerifyOptions) -> Result<SuiteOutcome> {
    radial_monotone_suite(opts, "k_ratio_monotone", 4, k_ratio)
}

pub fn g_ratio_suite(opts: &VerifyOptions) -> Result<SuiteOutcome> {
    radial_monotone_suite(opts, "g_ratio_monotone", 5, g_ratio)
}

/// Draw a parameter `a` with `|a| ∈ (0.01, 0.95)` and a pair in `B\{0}` away
/// from the puncture and the circle.
fn draw_configuration(rng: &mut ChaCha8Rng) -> (ComplexPoint, ComplexPoint, ComplexPoint) {
    let a = annulus_point(rng, 0.01, 0.95);
    let z = annulus_point(rng, 1e-4, 1.0 - 1e-4);
    let w = annulus_point(rng, 1e-4, 1.0 - 1e-4);
    (a, z, w)
}

fn image_and_source_j(a: ComplexPoint, z: ComplexPoint, w: ComplexPoint) -> Result<(f64, f64)> {
    let h = DiskAutomorphism::new(a)?;
    let t = t_branch_unchecked(&h, z, w).value;
    let image = j_from_parts(h.image_distance_unchecked(z, w), t);
    let source = j_from_parts(z.dist(w), z.norm().min(w.norm()).min(1.0 - z.norm()).min(1.0 - w.norm()));
    Ok((image, source))
}

/// Whenever a pair satisfies the `q`-condition, `j' ≤ 2/(1+q) · j` holds.
pub fn s1_chain_suite(opts: &VerifyOptions) -> Result<SuiteOutcome> {
    let mut rng = stream(opts.seed, 6);
    let mut tally = Tally::new("s1_chain");
    for _ in 0..opts.samples {
        let (a, z, w) = draw_configuration(&mut rng);
        let xy = s1_xy(a, z, w)?;
        let best = s1_condition_margin(xy, 0.0);
        if best < 0.0 {
            tally.skipped += 1;
            continue;
        }
        let q_max = best.min(1.0);
        // the tightest admissible q half of the time, a random one otherwise
        let q = if rng.random::<bool>() { q_max } else { q_max * rng.random::<f64>() };
        let (image, source) = image_and_source_j(a, z, w)?;
        let bound = s1_constant(q)? * source;
        let margin = bound + INEQUALITY_SLACK - image;
        tally.record(margin, || {
            Counterexample::new(
                &[("a_re", a.re), ("a_im", a.im), ("z_re", z.re), ("z_im", z.im), ("w_re", w.re), ("w_im", w.im), ("q", q)],
                &[("x", xy.x), ("y", xy.y), ("j_image", image), ("j_source", source)],
            )
        });
    }
    Ok(tally.finish())
}

/// Draws a pair with `|z| ≥ |w|` whose image-domain distance is attained at
/// `|h(w) - a|`. Rejection sampling; returns `None` after too many misses.
pub fn draw_case2_pair(rng: &mut ChaCha8Rng, a: ComplexPoint) -> Option<(ComplexPoint, ComplexPoint)> {
    let h = DiskAutomorphism::new(a).ok()?;
    for _ in 0..100_000 {
        let z = annulus_point(rng, 1e-4, 1.0 - 1e-4);
        let w = annulus_point(rng, 1e-4, 1.0 - 1e-4);
        let (z, w) = if z.norm() >= w.norm() { (z, w) } else { (w, z) };
        if z == w {
            continue;
        }
        if t_branch_unchecked(&h, z, w).tag == BranchTag::ImagePunctureAtW {
            return Some((z, w));
        }
    }
    None
}

/// On pairs in the `|h(w) - a|` branch: `j' ≤ 2/(2-|a|) · j`, and the
/// `q`-condition holds with `q = 1 - |a|`.
pub fn case2_chain_suite(opts: &VerifyOptions) -> Result<SuiteOutcome> {
    let mut rng = stream(opts.seed, 7);
    let mut tally = Tally::new("case2_chain");
    for _ in 0..opts.samples {
        let a = annulus_point(&mut rng, 0.01, 0.95);
        let (z, w) = draw_case2_pair(&mut rng, a)
            .ok_or_else(|| Error::Invariant(format!("no branch-2 pair found for a = {a}")))?;
        let abs_a = a.norm();
        let (image, source) = image_and_source_j(a, z, w)?;
        let chain = case12_constant(abs_a)? * source + INEQUALITY_SLACK - image;
        let xy = s1_xy(a, z, w)?;
        let condition = s1_condition_margin(xy, 1.0 - abs_a) + INEQUALITY_SLACK;
        tally.record(chain.min(condition), || {
            Counterexample::new(
                &[("a_re", a.re), ("a_im", a.im), ("z_re", z.re), ("z_im", z.im), ("w_re", w.re), ("w_im", w.im)],
                &[("j_image", image), ("j_source", source), ("chain_margin", chain), ("condition_margin", condition)],
            )
        });
    }
    Ok(tally.finish())
}

/// Runs every suite. Fails only on argument errors; inequality failures are
/// reported in the outcome.
pub fn run_all(opts: &VerifyOptions) -> Result<VerifyReport> {
    if opts.samples == 0 {
        return Err(Error::argument("samples must be at least 1"));
    }
    let suites = vec![
        le1_suite(opts)?,
        l3_part1_suite(opts)?,
        l3_part2_suite(opts)?,
        k_ratio_suite(opts)?,
        g_ratio_suite(opts)?,
        s1_chain_suite(opts)?,
        case2_chain_suite(opts)?,
    ];
    Ok(VerifyReport {
        samples: opts.samples,
        seed: opts.seed,
        all_passed: suites.iter().all(|s| s.passed),
        suites,
    })
}
