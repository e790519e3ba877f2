//! Experiment orchestration: point counts, line stripping, covering planes,
//! plane-section statistics, and the CSV reports.
//!
//! The orchestrator itself is sequential; parallelism lives in the modules it
//! calls, all of which return results in a fixed order. Reports therefore do
//! not depend on the thread count or on whether the point cache was warm.

mod config;
mod fit;
mod report;

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub use config::ExperimentConfig;
pub use fit::{fit_exponent, ExponentFit};
pub use report::{histogram, write_counts, write_cover, write_exponent, write_sections, HistogramRow};

use crate::lattice::{covering_plane, covering_ratio, enumerate_planes, within_covering_bound, LatticeError};
use crate::par;
use crate::points::{enumerate_points, find_lines, strip_lines, LineOnSurface, PointSet, PointsError};
use crate::projective::{PrimitivePlane, PrimitivePoint};
use crate::section::{classify_section, section_point_count, SectionCounts, SectionError, SectionProfile};
use crate::surface::{parse_surface, smoothness_check, SmoothnessCertificate, SmoothnessStatus, SurfaceForm};

/// Generator and algorithm used for plane sampling, recorded in the report header.
pub const SAMPLER_ID: &str = "chacha8/partial-fisher-yates/v1";

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("config error: {0}")]
    Config(String),
    #[error("surface is singular at {0}; rerun with --force to continue")]
    SmoothnessRefused(String),
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error(transparent)]
    Section(#[from] SectionError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Points(#[from] PointsError),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl ExperimentError {
    /// Process exit code for the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            ExperimentError::Config(_) => 2,
            ExperimentError::SmoothnessRefused(_) => 3,
            ExperimentError::InsufficientData(_) => 4,
            _ => 1,
        }
    }
}

/// The covering plane chosen for one point of `X'`.
#[derive(Clone, Debug, PartialEq)]
pub struct Assignment {
    pub point: [i64; 4],
    pub plane: PrimitivePlane,
    pub ratio: f64,
    pub incident: bool,
    pub within_bound: bool,
}

fn assign(c: &[i64; 4]) -> Assignment {
    let x = PrimitivePoint::from_i64(*c).expect("enumerated points are primitive");
    let plane = covering_plane(&x);
    Assignment {
        point: *c,
        ratio: covering_ratio(&plane, &x),
        incident: plane.contains(&x),
        within_bound: within_covering_bound(&plane, &x),
        plane,
    }
}

/// Everything derived from the surface at the largest height of the schedule.
#[derive(Clone, Debug)]
pub struct Experiment {
    pub config: ExperimentConfig,
    pub surface: SurfaceForm,
    pub certificate: SmoothnessCertificate,
    /// All enumerated points of height at most `B_max`.
    pub points: PointSet,
    pub lines: Vec<LineOnSurface>,
    /// Points off the lines.
    pub reduced: PointSet,
    /// One covering plane per point of `reduced`, in the same order.
    pub assignments: Vec<Assignment>,
    /// Whether the points came from an existing cache file.
    pub cache_hit: bool,
}

fn cache_path(dir: &Path, hash: &str, bound: u64) -> PathBuf {
    dir.join(format!("points-{hash}-B{bound}.txt"))
}

/// Cache files for this surface with bound at least `bound`, smallest first.
fn usable_caches(dir: &Path, hash: &str, bound: u64) -> Vec<(u64, PathBuf)> {
    let prefix = format!("points-{hash}-B");
    let mut out: Vec<(u64, PathBuf)> = fs::read_dir(dir)
        .into_iter()
        .flatten()
        .flatten()
        .filter_map(|e| {
            let name = e.file_name().into_string().ok()?;
            let b: u64 = name.strip_prefix(&prefix)?.strip_suffix(".txt")?.parse().ok()?;
            (b >= bound).then(|| (b, e.path()))
        })
        .collect();
    out.sort();
    out
}

fn load_points(config: &ExperimentConfig, f: &SurfaceForm) -> Result<(PointSet, bool), ExperimentError> {
    let hash = f.hash();
    let b = config.b_max();
    for (_, path) in usable_caches(&config.cache_dir, &hash, b) {
        if let Ok(set) = PointSet::read_cache(&path) {
            if set.surface_hash() == hash && set.bound() >= b {
                return Ok((set.restrict(b), true));
            }
        }
    }
    let set = enumerate_points(f, b, &config.sieve_primes)?;
    fs::create_dir_all(&config.cache_dir)?;
    set.write_cache(&cache_path(&config.cache_dir, &hash, b))?;
    Ok((set, false))
}

impl Experiment {
    /// Parses and checks the surface, loads or enumerates points, finds lines,
    /// and assigns covering planes. Refuses a surface with a detected rational
    /// singular point unless `force` is set.
    pub fn prepare(config: &ExperimentConfig, force: bool) -> Result<Self, ExperimentError> {
        config.validate()?;
        let surface = parse_surface(&config.surface).map_err(|e| ExperimentError::Config(format!("surface: {e}")))?;
        let certificate = smoothness_check(&surface, &config.smooth_primes, config.smooth_bound);
        if let SmoothnessStatus::SingularPointFound { points, .. } = &certificate.status {
            if !force {
                let list: Vec<String> = points.iter().map(|p| format!("{:?}", p.to_i64().unwrap_or_default())).collect();
                return Err(ExperimentError::SmoothnessRefused(list.join(" ")));
            }
        }
        let (points, cache_hit) = load_points(config, &surface)?;
        let pair_bound = config.pair_height_bound.min(config.b_max());
        let lines = find_lines(&surface, &points, pair_bound);
        let reduced = strip_lines(&points, &lines);
        let assignments = par::map(reduced.coords(), assign);
        Ok(Experiment { config: config.clone(), surface, certificate, points, lines, reduced, assignments, cache_hit })
    }
}

fn height(c: &[i64; 4]) -> u64 {
    c.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0)
}

#[derive(Clone, Debug, PartialEq)]
pub struct CountRow {
    pub bound: u64,
    pub n_x: u64,
    pub n_x_prime: u64,
    /// Lines whose two spanning points both have height at most `bound`.
    pub lines: u64,
    /// Largest covering ratio among points of `X'` up to `bound`.
    pub max_ratio: Option<f64>,
    /// `B^{4/3}`.
    pub ref_four_thirds: f64,
    /// `B^{3/√d} (ln B)^4 + B` with implicit constant 1.
    pub ref_dimension_growth: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CountReport {
    pub surface: String,
    pub surface_hash: String,
    pub rows: Vec<CountRow>,
    /// Points of `X'` whose covering plane failed incidence or the bound.
    pub cover_failures: u64,
    pub fit: Result<ExponentFit, String>,
    pub tail_fraction: f64,
}

impl Experiment {
    pub fn count_report(&self) -> CountReport {
        let d = self.surface.degree() as f64;
        let line_heights: Vec<u64> = self
            .lines
            .iter()
            .map(|l| {
                let h = |p: &PrimitivePoint| p.to_i64().map_or(u64::MAX, |c| height(&c));
                h(&l.p).max(h(&l.q))
            })
            .collect();
        let rows: Vec<CountRow> = self
            .config
            .b_schedule
            .iter()
            .map(|&b| {
                let n_x = self.points.coords().iter().filter(|c| height(c) <= b).count() as u64;
                let within: Vec<&Assignment> = self.assignments.iter().filter(|a| height(&a.point) <= b).collect();
                let bf = b as f64;
                CountRow {
                    bound: b,
                    n_x,
                    n_x_prime: within.len() as u64,
                    lines: line_heights.iter().filter(|&&h| h <= b).count() as u64,
                    max_ratio: within.iter().map(|a| a.ratio).reduce(f64::max),
                    ref_four_thirds: bf.powf(4.0 / 3.0),
                    ref_dimension_growth: bf.powf(3.0 / d.sqrt()) * bf.ln().powi(4) + bf,
                }
            })
            .collect();
        let series: Vec<(u64, u64)> = rows.iter().map(|r| (r.bound, r.n_x_prime)).collect();
        CountReport {
            surface: self.surface.to_string(),
            surface_hash: self.surface.hash(),
            cover_failures: self.assignments.iter().filter(|a| !a.incident || !a.within_bound).count() as u64,
            fit: fit_exponent(&series, self.config.tail_fraction).map_err(|e| match e {
                ExperimentError::InsufficientData(m) => m,
                other => other.to_string(),
            }),
            tail_fraction: self.config.tail_fraction,
            rows,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum PlaneSource {
    Sample,
    Cover,
    Both,
}

impl PlaneSource {
    pub fn label(&self) -> &'static str {
        match self {
            PlaneSource::Sample => "sample",
            PlaneSource::Cover => "cover",
            PlaneSource::Both => "sample+cover",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PlaneRecord {
    pub source: PlaneSource,
    pub profile: SectionProfile,
    pub counts: SectionCounts,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SectionReport {
    pub surface: String,
    pub surface_hash: String,
    pub plane_height: u64,
    pub seed: u64,
    pub sample_size: usize,
    pub records: Vec<PlaneRecord>,
}

/// Least `t` with `t³ ≥ b`.
pub fn cube_root_ceil(b: u64) -> u64 {
    let mut t = (b as f64).cbrt().round() as u64;
    while t * t * t < b {
        t += 1;
    }
    while t > 0 && (t - 1) * (t - 1) * (t - 1) >= b {
        t -= 1;
    }
    t
}

/// Uniform sample of `k` distinct items, in draw order: the first `k` steps of
/// a Fisher–Yates shuffle driven by ChaCha8 seeded with `seed`.
pub fn sample_indices(n: usize, k: usize, seed: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut idx: Vec<usize> = (0..n).collect();
    let k = k.min(n);
    for i in 0..k {
        let j = rng.gen_range(i as u64..n as u64) as usize;
        idx.swap(i, j);
    }
    idx.truncate(k);
    idx
}

impl Experiment {
    /// Planes to analyze: a seeded sample of the planes of height at most
    /// `⌈B_max^{1/3}⌉` together with every plane used by the covering.
    pub fn section_planes(&self) -> Result<(u64, Vec<(PrimitivePlane, PlaneSource)>), ExperimentError> {
        let t = cube_root_ceil(self.config.b_max());
        let all = enumerate_planes(t)?;
        let mut chosen: BTreeMap<PrimitivePlane, PlaneSource> = BTreeMap::new();
        for i in sample_indices(all.len(), self.config.plane_sample, self.config.seed) {
            chosen.insert(all[i].clone(), PlaneSource::Sample);
        }
        for a in &self.assignments {
            chosen
                .entry(a.plane.clone())
                .and_modify(|s| {
                    if *s == PlaneSource::Sample {
                        *s = PlaneSource::Both
                    }
                })
                .or_insert(PlaneSource::Cover);
        }
        Ok((t, chosen.into_iter().collect()))
    }

    pub fn section_report(&self) -> Result<SectionReport, ExperimentError> {
        let (t, planes) = self.section_planes()?;
        let profiles = par::map(&planes, |(p, _)| classify_section(&self.surface, p));
        let mut records = Vec::with_capacity(planes.len());
        for ((_, source), profile) in planes.into_iter().zip(profiles) {
            let profile = profile?;
            let counts = section_point_count(&profile, &self.points);
            records.push(PlaneRecord { source, profile, counts });
        }
        Ok(SectionReport {
            surface: self.surface.to_string(),
            surface_hash: self.surface.hash(),
            plane_height: t,
            seed: self.config.seed,
            sample_size: self.config.plane_sample,
            records,
        })
    }
}

pub fn run_count(config: &ExperimentConfig, force: bool) -> Result<CountReport, ExperimentError> {
    Ok(Experiment::prepare(config, force)?.count_report())
}

pub fn run_sections(config: &ExperimentConfig, force: bool) -> Result<SectionReport, ExperimentError> {
    Experiment::prepare(config, force)?.section_report()
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoverRow {
    pub scope: String,
    pub points: u64,
    pub failures: u64,
    pub max_ratio: f64,
    pub worst: Option<[i64; 4]>,
}

#[derive(Default)]
struct Tally {
    points: u64,
    failures: u64,
    max_ratio: f64,
    worst: Option<[i64; 4]>,
}

impl Tally {
    fn add(&mut self, c: [i64; 4]) {
        let a = assign(&c);
        self.points += 1;
        if !a.incident || !a.within_bound {
            self.failures += 1;
        }
        if a.ratio > self.max_ratio {
            self.max_ratio = a.ratio;
            self.worst = Some(c);
        }
    }

    fn merge(mut self, o: Tally) -> Tally {
        self.points += o.points;
        self.failures += o.failures;
        if o.max_ratio > self.max_ratio {
            self.max_ratio = o.max_ratio;
            self.worst = o.worst;
        }
        self
    }

    fn row(self, scope: String) -> CoverRow {
        CoverRow { scope, points: self.points, failures: self.failures, max_ratio: self.max_ratio, worst: self.worst }
    }
}

/// Covering check over one representative `0 ≤ x0 ≤ x1 ≤ x2 ≤ x3` of each
/// orbit of signed coordinate permutations with `x3 ≤ height`. The least
/// plane height through a point is invariant under these symmetries, so this
/// certifies every primitive point of height at most `height`.
pub fn cover_check_exhaustive(height: u64) -> CoverRow {
    let h = height as i64;
    let tallies = par::map(&(1..=h).collect::<Vec<i64>>(), |&x3| {
        let mut t = Tally::default();
        for x2 in 0..=x3 {
            let g2 = x3.gcd(&x2);
            for x1 in 0..=x2 {
                let g1 = g2.gcd(&x1);
                for x0 in 0..=x1 {
                    if g1.gcd(&x0) == 1 {
                        t.add([x0, x1, x2, x3]);
                    }
                }
            }
        }
        t
    });
    tallies.into_iter().fold(Tally::default(), Tally::merge).row(format!("orbits_height_le_{height}"))
}

/// Covering check on `count` seeded uniform primitive points of height at most `height`.
pub fn cover_check_random(count: usize, height: u64, seed: u64) -> CoverRow {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let h = height as i64;
    let mut pts = Vec::with_capacity(count);
    while pts.len() < count {
        let c: [i64; 4] = std::array::from_fn(|_| rng.gen_range(-h..=h));
        if c.iter().fold(0i64, |g, x| g.gcd(x)) == 1 {
            let mut v = c;
            crate::projective::canonicalize_i64(&mut v);
            pts.push(v);
        }
    }
    let tallies = par::map(&pts, |c| {
        let mut t = Tally::default();
        t.add(*c);
        t
    });
    tallies.into_iter().fold(Tally::default(), Tally::merge).row(format!("random_{count}_height_le_{height}"))
}

pub fn cover_check(config: &ExperimentConfig) -> Vec<CoverRow> {
    vec![
        cover_check_exhaustive(config.cover_height),
        cover_check_random(config.cover_random, config.cover_random_height, config.seed),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cube_roots() {
        assert_eq!(cube_root_ceil(1), 1);
        assert_eq!(cube_root_ceil(8), 2);
        assert_eq!(cube_root_ceil(9), 3);
        assert_eq!(cube_root_ceil(128), 6);
    }

    #[test]
    fn sampling_is_seeded_and_distinct() {
        let a = sample_indices(100, 10, 1);
        assert_eq!(a, sample_indices(100, 10, 1));
        assert_ne!(a, sample_indices(100, 10, 2));
        let mut s = a.clone();
        s.sort();
        s.dedup();
        assert_eq!(s.len(), 10);
        assert_eq!(sample_indices(5, 10, 0).len(), 5);
    }

    #[test]
    fn small_cover_sweep() {
        let row = cover_check_exhaustive(6);
        assert_eq!(row.failures, 0);
        assert!(row.max_ratio <= 4.0);
    }
}
