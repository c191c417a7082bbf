use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::objective::{Objective, PuncturedRatio};
use super::{punctured_objective, require_nonzero_parameter, SearchConfig, BOUND_SLACK};
use crate::complex_geometry::ComplexPoint;
use crate::constants::{main_constant, GEHRING_OSGOOD_CONSTANT};
use crate::error::{Error, Result};

const CHUNK: u64 = 8192;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub a: ComplexPoint,
    pub samples: u64,
    pub seed: u64,
    pub max_ratio: f64,
    pub argmax_z: ComplexPoint,
    pub argmax_w: ComplexPoint,
    /// `C(|a|)`.
    pub bound: f64,
    /// Samples with ratio above `C(|a|) + 1e-9`.
    pub violations: u64,
    /// Samples with ratio above 2.
    pub violations_factor_two: u64,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.violations == 0 && self.violations_factor_two == 0
    }
}

#[derive(Clone, Copy)]
struct Best {
    value: f64,
    z: ComplexPoint,
    w: ComplexPoint,
}

impl Best {
    const NONE: Best = Best { value: f64::NEG_INFINITY, z: ComplexPoint::ZERO, w: ComplexPoint::ZERO };

    fn better(self, other: Best) -> Best {
        let ord = other
            .value
            .total_cmp(&self.value)
            .then(self.z.lex_cmp(other.z))
            .then(self.w.lex_cmp(other.w));
        if ord == Ordering::Greater { other } else { self }
    }
}

fn uniform_disk_point(rng: &mut ChaCha8Rng) -> ComplexPoint {
    loop {
        let x = 2.0 * rng.random::<f64>() - 1.0;
        let y = 2.0 * rng.random::<f64>() - 1.0;
        if x * x + y * y < 1.0 {
            return ComplexPoint::new(x, y);
        }
    }
}

fn audit_chunk(objective: &PuncturedRatio, seed: u64, chunk: u64, count: u64, bound: f64) -> (Best, u64, u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk + 1);
    let region = objective.region();
    let (mut best, mut over_bound, mut over_two) = (Best::NONE, 0, 0);
    let mut taken = 0;
    while taken < count {
        let z = uniform_disk_point(&mut rng);
        let w = uniform_disk_point(&mut rng);
        if !(region.admits(z) && region.admits(w)) {
            continue;
        }
        let Some(eval) = objective.pair(z, w) else { continue };
        taken += 1;
        if eval.value > bound + BOUND_SLACK {
            over_bound += 1;
        }
        if eval.value > GEHRING_OSGOOD_CONSTANT {
            over_two += 1;
        }
        best = best.better(Best { value: eval.value, z, w });
    }
    (best, over_bound, over_two)
}

/// Samples admissible pairs uniformly from the bidisk (minus the exclusion
/// bands of `cfg`) and records the largest `J` and any bound violations.
pub fn bound_audit_with(a: ComplexPoint, samples: u64, seed: u64, cfg: &SearchConfig) -> Result<AuditReport> {
    require_nonzero_parameter(a)?;
    cfg.validate()?;
    if samples == 0 {
        return Err(Error::argument("samples must be at least 1"));
    }
    let objective = punctured_objective(a, cfg)?;
    let bound = main_constant(a.norm())?;
    let chunks = samples.div_ceil(CHUNK);
    let (best, violations, violations_factor_two) = (0..chunks)
        .into_par_iter()
        .map(|k| {
            let count = CHUNK.min(samples - k * CHUNK);
            audit_chunk(&objective, seed, k, count, bound)
        })
        .reduce(
            || (Best::NONE, 0, 0),
            |x, y| (x.0.better(y.0), x.1 + y.1, x.2 + y.2),
        );
    Ok(AuditReport {
        a,
        samples,
        seed,
        max_ratio: best.value,
        argmax_z: best.z,
        argmax_w: best.w,
        bound,
        violations,
        violations_factor_two,
    })
}

/// [`bound_audit_with`] using the default exclusion bands.
pub fn bound_audit(a: ComplexPoint, samples: u64, seed: u64) -> Result<AuditReport> {
    bound_audit_with(a, samples, seed, &SearchConfig::default())
}
