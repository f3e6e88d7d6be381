//! Brute-force ground truth for iterated sumsets.
//!
//! Layers are grown one summand at a time, `(h+1)A = hA + A`, with hash-set
//! deduplication. Nothing in here knows about the closed formulas, which is
//! what makes it usable as an oracle for them.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rustc_hash::FxHashSet;

use crate::error::{Error, Result};
use crate::linalg::{solve_rational, IntMatrix, Rational, RationalVector};
use crate::point::{Point, PointSet, MAX_DIM};

/// Resource limits for the brute-force engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_h: u32,
    pub max_layer_points: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Self { max_h: 100, max_layer_points: 10_000_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumsetLayer {
    pub h: u32,
    pub points: BTreeSet<Point>,
}

impl SumsetLayer {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// `values[h] = |hA|` for `h = 0..=h_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CardinalitySequence {
    pub values: Vec<u64>,
}

impl CardinalitySequence {
    pub fn h_max(&self) -> u32 {
        self.values.len() as u32 - 1
    }
}

type Key = [i64; MAX_DIM];

fn key(p: &[i64]) -> Key {
    let mut k = [0; MAX_DIM];
    k[..p.len()].copy_from_slice(p);
    k
}

/// Streams the layers `0A, 1A, 2A, ...` under a budget.
pub struct LayerStream {
    generators: Vec<Key>,
    dim: usize,
    current: FxHashSet<Key>,
    h: u32,
    budget: Budget,
}

impl LayerStream {
    pub fn new(a: &PointSet, h_max: u32, budget: Budget) -> Result<Self> {
        if h_max > budget.max_h {
            return Err(Error::Budget {
                h: h_max,
                detail: format!("h_max above the limit of {}", budget.max_h),
            });
        }
        let reach = (h_max as i64).checked_mul(a.max_abs_coordinate());
        if reach.is_none_or(|r| r > i64::MAX / 4) {
            return Err(Error::Budget { h: h_max, detail: "coordinates would overflow i64".into() });
        }
        let mut current = FxHashSet::default();
        current.insert([0; MAX_DIM]);
        Ok(Self {
            generators: a.points().iter().map(|p| key(p)).collect(),
            dim: a.dim(),
            current,
            h: 0,
            budget,
        })
    }

    /// The current layer `hA`.
    pub fn current(&self) -> &FxHashSet<Key> {
        &self.current
    }

    pub fn h(&self) -> u32 {
        self.h
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        self.current.contains(&key(p))
    }

    /// Replaces the current layer by the next one.
    pub fn advance(&mut self) -> Result<()> {
        let next_h = self.h + 1;
        let mut next =
            FxHashSet::with_capacity_and_hasher(self.current.len() * 2, Default::default());
        for p in &self.current {
            for g in &self.generators {
                let mut s = *p;
                for c in 0..self.dim {
                    s[c] += g[c];
                }
                next.insert(s);
            }
            if next.len() > self.budget.max_layer_points {
                return Err(Error::Budget {
                    h: next_h,
                    detail: format!("layer exceeds {} points", self.budget.max_layer_points),
                });
            }
        }
        self.current = next;
        self.h = next_h;
        Ok(())
    }

    pub fn snapshot(&self) -> SumsetLayer {
        SumsetLayer {
            h: self.h,
            points: self.current.iter().map(|k| k[..self.dim].to_vec()).collect(),
        }
    }
}

/// The exact set `hA`.
pub fn iterated_sumset(a: &PointSet, h: u32) -> Result<SumsetLayer> {
    iterated_sumset_with(a, h, Budget::default())
}

pub fn iterated_sumset_with(a: &PointSet, h: u32, budget: Budget) -> Result<SumsetLayer> {
    let mut stream = LayerStream::new(a, h, budget)?;
    while stream.h() < h {
        stream.advance()?;
    }
    Ok(stream.snapshot())
}

/// All layers `0A..=h_max A`.
pub fn sumset_layers(a: &PointSet, h_max: u32, budget: Budget) -> Result<Vec<SumsetLayer>> {
    let mut stream = LayerStream::new(a, h_max, budget)?;
    let mut out = vec![stream.snapshot()];
    while stream.h() < h_max {
        stream.advance()?;
        out.push(stream.snapshot());
    }
    Ok(out)
}

pub fn cardinality_sequence(a: &PointSet, h_max: u32) -> Result<CardinalitySequence> {
    cardinality_sequence_with(a, h_max, Budget::default())
}

pub fn cardinality_sequence_with(
    a: &PointSet,
    h_max: u32,
    budget: Budget,
) -> Result<CardinalitySequence> {
    let mut stream = LayerStream::new(a, h_max, budget)?;
    let mut values = vec![1];
    while stream.h() < h_max {
        stream.advance()?;
        values.push(stream.current().len() as u64);
    }
    Ok(CardinalitySequence { values })
}

/// Polynomial matching `|hA|` from `h0` to the end of the observed window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KhovanskiiFit {
    pub h0: u32,
    /// Monomial coefficients, constant term first; length `d + 1`.
    pub coefficients: RationalVector,
    /// Coefficient of `h^d` times `d!`.
    pub leading_coefficient_times_dfact: Rational,
}

impl KhovanskiiFit {
    pub fn eval(&self, h: i64) -> Rational {
        let x = Rational::from_integer(h.into());
        self.coefficients.iter().rev().fold(Rational::zero(), |acc, c| acc * &x + c)
    }

    /// Index of the highest nonzero coefficient, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.iter().rposition(|c| !c.is_zero())
    }

    /// `leading_coefficient_times_dfact` when it is an integer.
    pub fn leading_times_dfact_integer(&self) -> Option<BigInt> {
        let l = &self.leading_coefficient_times_dfact;
        l.is_integer().then(|| l.to_integer())
    }
}

/// Finds the least `h0` from which the sequence agrees with a polynomial of
/// degree at most `d`, using exact order-(d+1) finite differences.
pub fn khovanskii_fit(seq: &CardinalitySequence, d: usize) -> Result<KhovanskiiFit> {
    let n = seq.values.len();
    let order = d + 1;
    if n < order + 1 {
        return Err(Error::NotStabilized { largest_window: 0 });
    }
    let mut diffs: Vec<i128> = seq.values.iter().map(|&v| v as i128).collect();
    for _ in 0..order {
        diffs = diffs.windows(2).map(|w| w[1] - w[0]).collect();
    }
    // diffs[j] is the order-(d+1) difference over values j..=j+d+1
    let last_window = (n - order - 1) as u32;
    let h0 = match diffs.iter().rposition(|&x| x != 0) {
        None => 0,
        Some(j) if j + 1 < diffs.len() => j + 1,
        Some(_) => return Err(Error::NotStabilized { largest_window: last_window }),
    };
    let nodes: Vec<i64> = (h0..h0 + order).map(|h| h as i64).collect();
    let mut entries = Vec::with_capacity(order * order);
    for &x in &nodes {
        let mut pow = BigInt::from(1);
        for _ in 0..order {
            entries.push(pow.clone());
            pow *= x;
        }
    }
    let vandermonde = IntMatrix::new(order, order, entries)?;
    let rhs: Vec<BigInt> = nodes.iter().map(|&h| BigInt::from(seq.values[h as usize])).collect();
    let coefficients = solve_rational(&vandermonde, &rhs)?;
    let dfact: BigInt = (1..=d as u64).map(BigInt::from).product();
    let leading_coefficient_times_dfact = &coefficients[d] * Rational::from_integer(dfact);
    let fit = KhovanskiiFit { h0: h0 as u32, coefficients, leading_coefficient_times_dfact };
    debug_assert!((h0..n).all(|h| fit.eval(h as i64) == Rational::from_integer(seq.values[h].into())));
    Ok(fit)
}

/// Total number of points touched when enumerating `0A..=h_max A`, assuming no
/// coincidences among sums: `sum_h C(h + n - 1, n - 1) = C(h_max + n, n)`.
pub fn worst_case_work(n_points: usize, h_max: u32) -> u128 {
    crate::binom::binom(h_max as i64 + n_points as i64, n_points as i64)
        .to_u128()
        .unwrap_or(u128::MAX)
}
