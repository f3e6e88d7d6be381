//! Seeded random instances and batch verification.
//!
//! The generator is SplitMix64:
//!
//! ```text
//! state = state + 0x9E3779B97F4A7C15          (wrapping)
//! z = state
//! z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9    (wrapping)
//! z = (z ^ (z >> 27)) * 0x94D049BB133111EB    (wrapping)
//! output z ^ (z >> 31)
//! ```
//!
//! An integer in `[lo, hi]` is `lo + next() % (hi - lo + 1)`. Each candidate
//! instance first draws a radius `rho = 1 + next() % bound`, then draws every
//! coordinate in `[-rho, rho]`, points in order and coordinates in order.
//!
//! * `d2` candidates are `d + 2` drawn points.
//! * `d3` candidates are `{0, v_1, .., v_{d+1}, w}`: the `d + 1` vertices are
//!   drawn first, then `w`.
//!
//! Candidates that fail validation or whose worst-case enumeration work
//! exceeds the work budget are discarded and the stream continues, so a seed
//! determines the whole accepted sequence.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::point::{Point, PointSet};
use crate::report::{verify, Analyzed, Mode};
use crate::sumset::{worst_case_work, Budget};
use crate::d3::Roles;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform-ish integer in `[lo, hi]` by reduction modulo the range width.
    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        let width = (hi - lo) as u64 + 1;
        lo + (self.next_u64() % width) as i64
    }

    fn point(&mut self, d: usize, rho: i64) -> Point {
        (0..d).map(|_| self.range(-rho, rho)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    D2,
    D3,
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Family::D2 => "d2",
            Family::D3 => "d3",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SamplerConfig {
    pub dim: usize,
    pub family: Family,
    pub bound: i64,
    /// Upper limit on `C(h_max + |A|, |A|)` for an accepted instance.
    pub max_work: u128,
    pub max_attempts: u64,
}

impl SamplerConfig {
    pub fn new(dim: usize, family: Family, bound: i64) -> Self {
        Self { dim, family, bound, max_work: 2_000_000, max_attempts: 1_000_000 }
    }
}

/// A sampled instance together with its default verification horizon.
#[derive(Debug, Clone)]
pub struct Sampled {
    pub set: PointSet,
    pub analyzed: Analyzed,
    pub h_max: u64,
}

#[derive(Debug, Clone)]
pub struct Sampler {
    rng: SplitMix64,
    config: SamplerConfig,
    pub attempts: u64,
    pub rejected_hypothesis: u64,
    pub rejected_work: u64,
}

impl Sampler {
    pub fn new(seed: u64, config: SamplerConfig) -> Result<Self> {
        if config.dim == 0 || config.dim > 4 {
            return Err(Error::Argument(format!("scan dimension must be 1..=4, got {}", config.dim)));
        }
        if config.bound < 1 {
            return Err(Error::Argument(format!("coordinate bound must be positive, got {}", config.bound)));
        }
        Ok(Self { rng: SplitMix64::new(seed), config, attempts: 0, rejected_hypothesis: 0, rejected_work: 0 })
    }

    fn candidate(&mut self) -> Vec<Point> {
        let d = self.config.dim;
        let rho = 1 + (self.rng.next_u64() % self.config.bound as u64) as i64;
        match self.config.family {
            Family::D2 => (0..d + 2).map(|_| self.rng.point(d, rho)).collect(),
            Family::D3 => {
                let mut pts = vec![vec![0; d]];
                pts.extend((0..d + 2).map(|_| self.rng.point(d, rho)));
                pts
            }
        }
    }

    pub fn next_instance(&mut self) -> Result<Sampled> {
        let start = self.attempts;
        loop {
            if self.attempts - start >= self.config.max_attempts {
                return Err(Error::Budget {
                    h: 0,
                    detail: format!("no valid instance after {} candidates", self.config.max_attempts),
                });
            }
            self.attempts += 1;
            let pts = self.candidate();
            let Ok(set) = PointSet::new(self.config.dim, pts) else {
                self.rejected_hypothesis += 1;
                continue;
            };
            let Ok(analyzed) = Analyzed::new(&set, &Roles::default()) else {
                self.rejected_hypothesis += 1;
                continue;
            };
            let h_max = analyzed.default_h_max();
            if h_max > u32::MAX as u64 || worst_case_work(set.len(), h_max as u32) > self.config.max_work {
                self.rejected_work += 1;
                continue;
            }
            return Ok(Sampled { set, analyzed, h_max });
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanFailure {
    pub index: u64,
    pub points: Vec<Point>,
    pub h_max: u64,
    pub rows: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanSummary {
    pub d: usize,
    pub family: Family,
    pub seed: u64,
    pub bound: i64,
    pub count: u64,
    pub passed: u64,
    /// Instances whose exact value was checked at every `h` (d2, or d3 with
    /// the equality condition).
    pub exact_checked: u64,
    pub candidates: u64,
    pub rejected_hypothesis: u64,
    pub rejected_work: u64,
    pub failures: Vec<ScanFailure>,
}

/// Samples `count` instances and verifies each against brute force.
pub fn scan(seed: u64, count: u64, config: SamplerConfig, budget: Budget) -> Result<ScanSummary> {
    let mut sampler = Sampler::new(seed, config)?;
    let mut summary = ScanSummary {
        d: config.dim,
        family: config.family,
        seed,
        bound: config.bound,
        count,
        passed: 0,
        exact_checked: 0,
        candidates: 0,
        rejected_hypothesis: 0,
        rejected_work: 0,
        failures: Vec::new(),
    };
    for index in 0..count {
        let s = sampler.next_instance()?;
        // the work budget already bounds the enumeration, so the horizon itself is not capped
        let budget = Budget { max_h: budget.max_h.max(s.h_max as u32), ..budget };
        let report = verify(&s.set, &Roles::default(), s.h_max as u32, Mode::All, budget)?;
        if report.all_match() {
            summary.passed += 1;
        } else {
            summary.failures.push(ScanFailure {
                index,
                points: s.set.points().to_vec(),
                h_max: s.h_max,
                rows: report.rows.iter().filter(|r| !r.matches).map(|r| r.h).collect(),
            });
        }
        if report.rows.iter().all(|r| r.exact.is_some()) {
            summary.exact_checked += 1;
        }
    }
    summary.candidates = sampler.attempts;
    summary.rejected_hypothesis = sampler.rejected_hypothesis;
    summary.rejected_work = sampler.rejected_work;
    Ok(summary)
}
