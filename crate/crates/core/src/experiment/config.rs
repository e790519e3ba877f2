//! Line-oriented `key = value` experiment configuration.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use super::ExperimentError;
use crate::points::{DEFAULT_SIEVE, MAX_BOUND};

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub surface: String,
    pub b_schedule: Vec<u64>,
    pub sieve_primes: Vec<u64>,
    /// Line search uses point pairs of height at most `min(B_max, pair_height_bound)`.
    pub pair_height_bound: u64,
    pub plane_sample: usize,
    pub seed: u64,
    pub smooth_primes: Vec<u64>,
    pub smooth_bound: u64,
    pub cache_dir: PathBuf,
    pub out_dir: PathBuf,
    /// Exhaustive cover-check height.
    pub cover_height: u64,
    /// Random points for cover-check and their height bound.
    pub cover_random: usize,
    pub cover_random_height: u64,
    /// Fraction of the schedule (from the top) used for the exponent fit.
    pub tail_fraction: f64,
}

const KEYS: [&str; 14] = [
    "surface",
    "b_schedule",
    "sieve_primes",
    "pair_height_bound",
    "plane_sample",
    "seed",
    "smooth_primes",
    "smooth_bound",
    "cache_dir",
    "out_dir",
    "cover_height",
    "cover_random",
    "cover_random_height",
    "tail_fraction",
];

fn err(msg: impl Into<String>) -> ExperimentError {
    ExperimentError::Config(msg.into())
}

fn parse_u64(key: &str, v: &str) -> Result<u64, ExperimentError> {
    v.trim().replace('_', "").parse().map_err(|_| err(format!("{key}: expected a non-negative integer, got {v:?}")))
}

fn parse_list(key: &str, v: &str) -> Result<Vec<u64>, ExperimentError> {
    v.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| parse_u64(key, s))
        .collect()
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl ExperimentConfig {
    /// Defaults for everything except the surface and the schedule.
    pub fn new(surface: &str, b_schedule: Vec<u64>) -> Self {
        ExperimentConfig {
            surface: surface.to_string(),
            b_schedule,
            sieve_primes: DEFAULT_SIEVE.to_vec(),
            pair_height_bound: 50,
            plane_sample: 32,
            seed: 0,
            smooth_primes: vec![7, 11, 13],
            smooth_bound: 5,
            cache_dir: PathBuf::from("cache"),
            out_dir: PathBuf::from("reports"),
            cover_height: 100,
            cover_random: 10_000,
            cover_random_height: 1_000_000,
            tail_fraction: 0.5,
        }
    }

    /// Parses config text; relative paths are resolved against `base`.
    pub fn parse(text: &str, base: &Path) -> Result<Self, ExperimentError> {
        let mut kv: BTreeMap<&str, &str> = BTreeMap::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| err(format!("line {}: expected key = value", n + 1)))?;
            let k = k.trim();
            if !KEYS.contains(&k) {
                return Err(err(format!("line {}: unknown key {k:?}", n + 1)));
            }
            if kv.insert(k, v.trim()).is_some() {
                return Err(err(format!("line {}: duplicate key {k:?}", n + 1)));
            }
        }
        let surface = kv.get("surface").ok_or_else(|| err("missing key surface"))?;
        let schedule = parse_list("b_schedule", kv.get("b_schedule").ok_or_else(|| err("missing key b_schedule"))?)?;
        let mut c = ExperimentConfig::new(surface, schedule);
        if let Some(v) = kv.get("sieve_primes") {
            c.sieve_primes = parse_list("sieve_primes", v)?;
        }
        if let Some(v) = kv.get("pair_height_bound") {
            c.pair_height_bound = parse_u64("pair_height_bound", v)?;
        }
        if let Some(v) = kv.get("plane_sample") {
            c.plane_sample = parse_u64("plane_sample", v)? as usize;
        }
        if let Some(v) = kv.get("seed") {
            c.seed = parse_u64("seed", v)?;
        }
        if let Some(v) = kv.get("smooth_primes") {
            c.smooth_primes = parse_list("smooth_primes", v)?;
        }
        if let Some(v) = kv.get("smooth_bound") {
            c.smooth_bound = parse_u64("smooth_bound", v)?;
        }
        if let Some(v) = kv.get("cache_dir") {
            c.cache_dir = base.join(v);
        } else {
            c.cache_dir = base.join(&c.cache_dir);
        }
        if let Some(v) = kv.get("out_dir") {
            c.out_dir = base.join(v);
        } else {
            c.out_dir = base.join(&c.out_dir);
        }
        if let Some(v) = kv.get("cover_height") {
            c.cover_height = parse_u64("cover_height", v)?;
        }
        if let Some(v) = kv.get("cover_random") {
            c.cover_random = parse_u64("cover_random", v)? as usize;
        }
        if let Some(v) = kv.get("cover_random_height") {
            c.cover_random_height = parse_u64("cover_random_height", v)?;
        }
        if let Some(v) = kv.get("tail_fraction") {
            c.tail_fraction = v.parse().map_err(|_| err(format!("tail_fraction: expected a number, got {v:?}")))?;
        }
        c.validate()?;
        Ok(c)
    }

    pub fn load(path: &Path) -> Result<Self, ExperimentError> {
        let text = std::fs::read_to_string(path).map_err(|e| err(format!("{}: {e}", path.display())))?;
        Self::parse(&text, path.parent().unwrap_or(Path::new(".")))
    }

    pub fn validate(&self) -> Result<(), ExperimentError> {
        if self.b_schedule.is_empty() {
            return Err(err("b_schedule is empty"));
        }
        if self.b_schedule[0] < 1 || !self.b_schedule.windows(2).all(|w| w[0] < w[1]) {
            return Err(err("b_schedule must be strictly increasing and start at 1 or more"));
        }
        if self.b_max() > MAX_BOUND {
            return Err(err(format!("b_schedule exceeds {MAX_BOUND}")));
        }
        if let Some(m) = self.sieve_primes.iter().find(|&&m| !(2..=64).contains(&m)) {
            return Err(err(format!("sieve modulus {m} is outside 2..=64")));
        }
        if let Some(p) = self.smooth_primes.iter().find(|&&p| !is_prime(p) || p > 101) {
            return Err(err(format!("smooth_primes entry {p} is not a prime up to 101")));
        }
        if self.pair_height_bound < 1 {
            return Err(err("pair_height_bound must be at least 1"));
        }
        if self.cover_random_height < 1 {
            return Err(err("cover_random_height must be at least 1"));
        }
        if !(self.tail_fraction > 0.0 && self.tail_fraction <= 1.0) {
            return Err(err("tail_fraction must lie in (0, 1]"));
        }
        Ok(())
    }

    pub fn b_max(&self) -> u64 {
        *self.b_schedule.last().expect("validated schedule")
    }
}
