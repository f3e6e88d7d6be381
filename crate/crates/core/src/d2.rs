//! Sets of d+2 points: the affine dependency, its Radon split, and the closed
//! form for `|hA|`.
//!
//! Two representations `sum a_i v_i` and `sum b_i v_i` of the same point at
//! the same height differ by an integer multiple of the primitive dependency
//! `lambda`. Each point of `hA` therefore has exactly one representation with
//! `a_i < lambda_i` for some `i` in the positive part, which gives
//!
//! ```text
//! |hA| = C(h+d+1, d+1) - C(h-r+d+1, d+1),   r = sum of the positive lambda_i
//! ```
//!
//! with the second term vanishing for `h < r`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::binom::binom;
use crate::error::{Error, Result};
use crate::linalg::{det_of_columns, lattice_index, LatticeIndex, Rational, RationalVector};
use crate::point::{lift, Point, PointSet};

/// A validated d+2 point set whose differences generate Z^d.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceD2 {
    base: PointSet,
    generation_index: BigInt,
}

impl InstanceD2 {
    pub fn new(base: PointSet) -> Result<Self> {
        let d = base.dim();
        if base.len() != d + 2 {
            return Err(Error::Argument(format!(
                "expected {} points in dimension {d}, got {}",
                d + 2,
                base.len()
            )));
        }
        let generation_index = match lattice_index(&base.differences())? {
            LatticeIndex::Finite(n) if n == BigInt::from(1) => n,
            other => {
                return Err(Error::Hypothesis(format!(
                    "A - A generates a sublattice of index {other}, not Z^{d}"
                )))
            }
        };
        Ok(Self { base, generation_index })
    }

    pub fn base(&self) -> &PointSet {
        &self.base
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    pub fn generation_index(&self) -> &BigInt {
        &self.generation_index
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RadonData {
    #[serde(serialize_with = "crate::report::ser_bigints")]
    pub lambda: Vec<BigInt>,
    /// Indices with `lambda_i > 0`.
    pub x1: Vec<usize>,
    /// Indices with `lambda_i < 0`.
    pub x2: Vec<usize>,
    pub zero_set: Vec<usize>,
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub r: BigInt,
    /// Point omitted by each simplex of the covering `conv(A) = U_{i in x1} conv(A \ v_i)`.
    pub covering: Vec<usize>,
}

impl RadonData {
    /// The same dependency with the opposite sign.
    pub fn flipped(&self) -> RadonData {
        let lambda: Vec<BigInt> = self.lambda.iter().map(|l| -l).collect();
        let r = positive_part(&lambda);
        RadonData {
            x1: self.x2.clone(),
            x2: self.x1.clone(),
            zero_set: self.zero_set.clone(),
            covering: self.x2.clone(),
            lambda,
            r,
        }
    }

    /// The common point of `conv(X1)` and `conv(X2)` computed from each side:
    /// `sum_{X1} (lambda_i / r) v_i` and `sum_{X2} (-lambda_i / r) v_i`.
    pub fn common_points(&self, a: &PointSet) -> (RationalVector, RationalVector) {
        let side = |idx: &[usize], sign: i32| -> RationalVector {
            (0..a.dim())
                .map(|c| {
                    idx.iter().fold(Rational::zero(), |acc, &i| {
                        let w = Rational::new(self.lambda[i].clone() * sign, self.r.clone());
                        acc + w * Rational::from_integer(a.point(i)[c].into())
                    })
                })
                .collect()
        };
        (side(&self.x1, 1), side(&self.x2, -1))
    }
}

fn positive_part(lambda: &[BigInt]) -> BigInt {
    lambda.iter().filter(|l| l.is_positive()).sum()
}

/// Signed cofactors of the (d+1)×(d+2) lift matrix, normalized to a primitive
/// vector whose first nonzero entry is positive.
pub fn cofactor_dependency(points: &[Point]) -> Result<Vec<BigInt>> {
    let lifted: Vec<Point> = points.iter().map(|p| lift(p)).collect();
    let mut lambda = Vec::with_capacity(lifted.len());
    for i in 0..lifted.len() {
        let minor: Vec<Point> =
            lifted.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, v)| v.clone()).collect();
        let det = det_of_columns(&minor)?;
        lambda.push(if i % 2 == 0 { det } else { -det });
    }
    let g = lambda.iter().fold(BigInt::zero(), |g, l| g.gcd(l));
    if g.is_zero() {
        return Err(Error::Degenerate("every (d+1)-subset of lifted points is singular".into()));
    }
    let first_negative = lambda.iter().find(|l| !l.is_zero()).is_some_and(|l| l.is_negative());
    let g = if first_negative { -g } else { g };
    Ok(lambda.into_iter().map(|l| l / &g).collect())
}

/// The integer affine dependency of the instance and its Radon partition.
pub fn affine_dependency(inst: &InstanceD2) -> Result<RadonData> {
    let a = inst.base();
    let lambda = cofactor_dependency(a.points())?;
    let d = a.dim();
    let lifted = a.lifted();
    for c in 0..=d {
        let s: BigInt = lambda.iter().zip(&lifted).map(|(l, v)| l * v[c]).sum();
        if !s.is_zero() {
            return Err(Error::Internal(format!("dependency residual {s} in coordinate {c}")));
        }
    }
    let mut x1 = Vec::new();
    let mut x2 = Vec::new();
    let mut zero_set = Vec::new();
    for (i, l) in lambda.iter().enumerate() {
        if l.is_positive() {
            x1.push(i);
        } else if l.is_negative() {
            x2.push(i);
        } else {
            zero_set.push(i);
        }
    }
    let r = positive_part(&lambda);
    Ok(RadonData { covering: x1.clone(), lambda, x1, x2, zero_set, r })
}

/// `|hA|` for a d+2 instance with dependency data `radon`.
pub fn card_d2_with(d: usize, radon: &RadonData, h: u64) -> BigInt {
    let n = h as i64 + d as i64 + 1;
    let k = d as i64 + 1;
    let r: i64 = radon.r.clone().try_into().expect("r fits i64 at desk scale");
    binom(n, k) - binom(n - r, k)
}

pub fn card_d2(inst: &InstanceD2, h: u64) -> Result<BigInt> {
    let radon = affine_dependency(inst)?;
    Ok(card_d2_with(inst.dim(), &radon, h))
}
