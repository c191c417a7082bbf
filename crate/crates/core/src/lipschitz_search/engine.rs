//! Grid scan plus compass refinement over point pairs.
//!
//! All reductions go through [`Candidate::rank`], a total order (value
//! descending, then lexicographic on the coordinates), so the result does not
//! depend on how rayon schedules the work.

use std::cmp::Ordering;
use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::objective::{Eval, Objective};
use super::{BranchHistogram, SearchConfig};
use crate::complex_geometry::ComplexPoint;

#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct Candidate {
    pub value: f64,
    pub z: ComplexPoint,
    pub w: ComplexPoint,
    pub diagonal: bool,
}

impl Candidate {
    fn pair(value: f64, z: ComplexPoint, w: ComplexPoint) -> Self {
        // canonical orientation so that (z, w) and (w, z) compare equal
        let (z, w) = if z.lex_cmp(w) == Ordering::Greater { (w, z) } else { (z, w) };
        Self { value, z, w, diagonal: false }
    }

    fn diagonal(value: f64, z: ComplexPoint) -> Self {
        Self { value, z, w: z, diagonal: true }
    }

    /// `Less` means `self` ranks ahead of `other`.
    pub fn rank(&self, other: &Self) -> Ordering {
        other
            .value
            .total_cmp(&self.value)
            .then(self.z.lex_cmp(other.z))
            .then(self.w.lex_cmp(other.w))
            .then(self.diagonal.cmp(&other.diagonal))
    }

    fn better(self, other: Self) -> Self {
        if self.rank(&other) == Ordering::Greater { other } else { self }
    }
}

/// Keeps the best `cap` candidates under [`Candidate::rank`].
#[derive(Clone, Debug)]
struct TopK {
    cap: usize,
    items: Vec<Candidate>,
}

impl TopK {
    fn new(cap: usize) -> Self {
        Self { cap, items: Vec::with_capacity(cap + 1) }
    }

    fn push(&mut self, c: Candidate) {
        if self.items.len() == self.cap {
            if let Some(last) = self.items.last() {
                if c.rank(last) != Ordering::Less {
                    return;
                }
            }
        }
        let pos = self.items.partition_point(|x| x.rank(&c) == Ordering::Less);
        self.items.insert(pos, c);
        self.items.truncate(self.cap);
    }

    fn merge(mut self, other: TopK) -> TopK {
        for c in other.items {
            self.push(c);
        }
        self
    }
}

#[derive(Clone, Debug)]
struct ScanState {
    top: TopK,
    histogram: BranchHistogram,
    evaluations: u64,
}

impl ScanState {
    fn new(cap: usize) -> Self {
        Self { top: TopK::new(cap), histogram: BranchHistogram::default(), evaluations: 0 }
    }

    fn merge(mut self, other: ScanState) -> ScanState {
        self.top = self.top.merge(other.top);
        self.histogram.add(&other.histogram);
        self.evaluations += other.evaluations;
        self
    }
}

pub(crate) struct SearchOutcome {
    pub best: Candidate,
    pub histogram: BranchHistogram,
    pub evaluations: u64,
}

/// Polar grid with radii clustered toward both ends of `[lo, hi]`.
pub(crate) fn polar_grid(n: usize, lo: f64, hi: f64, angle_offset: f64) -> Vec<ComplexPoint> {
    let mut points = Vec::with_capacity(n * n);
    for i in 0..n {
        let t = (1.0 - (PI * (i as f64 + 0.5) / n as f64).cos()) / 2.0;
        let r = lo + (hi - lo) * t;
        for j in 0..n {
            points.push(ComplexPoint::from_polar(r, angle_offset + TAU * j as f64 / n as f64));
        }
    }
    points
}

fn grid_for<O: Objective>(objective: &O, cfg: &SearchConfig) -> Vec<ComplexPoint> {
    let region = objective.region();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let offset = rng.random::<f64>() * TAU / cfg.grid_n as f64;
    polar_grid(cfg.grid_n, region.lower_radius(), 1.0 - region.margin, offset)
        .into_iter()
        .filter(|p| region.admits(*p))
        .collect()
}

fn pool_size(cfg: &SearchConfig) -> usize {
    8 * cfg.refine_starts.max(1)
}

fn scan_pairs<O: Objective>(objective: &O, grid: &[ComplexPoint], cap: usize) -> ScanState {
    (0..grid.len())
        .into_par_iter()
        .fold(
            || ScanState::new(cap),
            |mut state, i| {
                let z = grid[i];
                for &w in &grid[i + 1..] {
                    if let Some(Eval { value, tag }) = objective.pair(z, w) {
                        state.evaluations += 1;
                        state.histogram.record(tag);
                        state.top.push(Candidate::pair(value, z, w));
                    }
                }
                state
            },
        )
        .reduce(|| ScanState::new(cap), ScanState::merge)
}

fn scan_diagonal<O: Objective>(objective: &O, grid: &[ComplexPoint], cap: usize) -> ScanState {
    let mut state = ScanState::new(cap);
    for &z in grid {
        if let Some(Eval { value, tag }) = objective.diagonal(z) {
            state.evaluations += 1;
            state.histogram.record(tag);
            state.top.push(Candidate::diagonal(value, z));
        }
    }
    state
}

fn close(a: &Candidate, b: &Candidate, radius: f64) -> bool {
    let near = |p: ComplexPoint, q: ComplexPoint| (p.re - q.re).abs().max((p.im - q.im).abs()) < radius;
    (near(a.z, b.z) && near(a.w, b.w)) || (near(a.z, b.w) && near(a.w, b.z))
}

/// Greedy selection of well-separated starts in rank order.
fn pick_starts(pool: &[Candidate], count: usize, radius: f64) -> Vec<Candidate> {
    let mut chosen: Vec<Candidate> = Vec::with_capacity(count);
    for c in pool {
        if chosen.len() == count {
            break;
        }
        if chosen.iter().all(|s| !close(s, c, radius)) {
            chosen.push(*c);
        }
    }
    chosen
}

/// Compass search maximizing `f` from `x0`. Polls the coordinate directions
/// first and the pairwise diagonals when those fail; halves the step when
/// nothing improves.
pub(crate) fn compass_search<const D: usize>(
    x0: [f64; D],
    f0: f64,
    step0: f64,
    iters: usize,
    mut f: impl FnMut(&[f64; D]) -> Option<f64>,
) -> ([f64; D], f64) {
    let mut directions: Vec<[f64; D]> = Vec::with_capacity(2 * D * D);
    for k in 0..D {
        for s in [1.0, -1.0] {
            let mut d = [0.0; D];
            d[k] = s;
            directions.push(d);
        }
    }
    let axis_count = directions.len();
    for i in 0..D {
        for j in i + 1..D {
            for (si, sj) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
                let mut d = [0.0; D];
                d[i] = si;
                d[j] = sj;
                directions.push(d);
            }
        }
    }

    let (mut x, mut fx, mut step) = (x0, f0, step0);
    for _ in 0..iters {
        if step < 1e-15 {
            break;
        }
        let mut improved = None;
        for (idx, d) in directions.iter().enumerate() {
            if idx == axis_count && improved.is_some() {
                break;
            }
            let mut y = x;
            for k in 0..D {
                y[k] += step * d[k];
            }
            if let Some(fy) = f(&y) {
                if fy > improved.map_or(fx, |(_, v)| v) {
                    improved = Some((y, fy));
                }
            }
        }
        match improved {
            Some((y, fy)) => {
                x = y;
                fx = fy;
            }
            None => step *= 0.5,
        }
    }
    (x, fx)
}

fn refine<O: Objective>(objective: &O, start: Candidate, cfg: &SearchConfig) -> ScanState {
    let mut state = ScanState::new(1);
    let step = 1.0 / cfg.grid_n as f64;
    let alpha = objective.frame();
    // Local coordinates are taken in the frame rotated by `alpha`.
    let to_local = |p: ComplexPoint| {
        let q = p.rotate(-alpha);
        [q.re, q.im]
    };
    let from_local = |x: f64, y: f64| ComplexPoint::new(x, y).rotate(alpha);
    if start.diagonal {
        let (x, fx) = compass_search(to_local(start.z), start.value, step, cfg.refine_iters, |x| {
            let e = objective.diagonal(from_local(x[0], x[1]))?;
            state.evaluations += 1;
            state.histogram.record(e.tag);
            Some(e.value)
        });
        state.top.push(Candidate::diagonal(fx, from_local(x[0], x[1])));
    } else {
        let ([zr, zi], [wr, wi]) = (to_local(start.z), to_local(start.w));
        let (x, fx) = compass_search([zr, zi, wr, wi], start.value, step, cfg.refine_iters, |x| {
            let e = objective.pair(from_local(x[0], x[1]), from_local(x[2], x[3]))?;
            state.evaluations += 1;
            state.histogram.record(e.tag);
            Some(e.value)
        });
        state
            .top
            .push(Candidate::pair(fx, from_local(x[0], x[1]), from_local(x[2], x[3])));
    }
    state
}

/// Grid scan over pairs and the diagonal, followed by compass refinement
/// from the best separated candidates of each kind.
pub(crate) fn search<O: Objective>(objective: &O, cfg: &SearchConfig) -> Option<SearchOutcome> {
    let grid = grid_for(objective, cfg);
    let cap = pool_size(cfg);
    let pairs = scan_pairs(objective, &grid, cap);
    let diagonal = scan_diagonal(objective, &grid, cap);

    let radius = PI / cfg.grid_n as f64;
    let diagonal_starts = (cfg.refine_starts / 4).max(1).min(cfg.refine_starts);
    let pair_starts = cfg.refine_starts - diagonal_starts.min(cfg.refine_starts);
    let mut starts = pick_starts(&pairs.top.items, pair_starts.max(1), radius);
    starts.extend(pick_starts(&diagonal.top.items, diagonal_starts, radius));
    if cfg.refine_starts == 0 {
        starts.clear();
    }

    let refined = starts
        .par_iter()
        .map(|s| refine(objective, *s, cfg))
        .reduce(|| ScanState::new(1), ScanState::merge);

    let total = pairs.merge(diagonal).merge(refined);
    let best = total.top.items.iter().copied().reduce(Candidate::better)?;
    Some(SearchOutcome { best, histogram: total.histogram, evaluations: total.evaluations })
}
