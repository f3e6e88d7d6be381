use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// Integer vector in Z^d.
pub type Point = Vec<i64>;

/// Largest ambient dimension the library accepts.
pub const MAX_DIM: usize = 6;

/// Appends the height coordinate 1.
pub fn lift(p: &[i64]) -> Point {
    let mut v = p.to_vec();
    v.push(1);
    v
}

/// A finite set of distinct integer points of a common dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    dim: usize,
    points: Vec<Point>,
}

impl PointSet {
    pub fn new(dim: usize, points: Vec<Point>) -> Result<Self> {
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::Dimension(format!("dimension {dim} outside 1..={MAX_DIM}")));
        }
        if points.is_empty() {
            return Err(Error::Argument("empty point set".into()));
        }
        if let Some(p) = points.iter().find(|p| p.len() != dim) {
            return Err(Error::Dimension(format!("point {p:?} is not of dimension {dim}")));
        }
        let mut seen = BTreeSet::new();
        for p in &points {
            if !seen.insert(p) {
                return Err(Error::Argument(format!("repeated point {p:?}")));
            }
        }
        Ok(Self { dim, points })
    }

    /// Infers the dimension from the first point.
    pub fn from_points(points: Vec<Point>) -> Result<Self> {
        let dim = points.first().map_or(0, Vec::len);
        Self::new(dim, points)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &Point {
        &self.points[i]
    }

    pub fn lifted(&self) -> Vec<Point> {
        self.points.iter().map(|p| lift(p)).collect()
    }

    /// Vectors `a - a0` for every `a` other than the first point.
    pub fn differences(&self) -> Vec<Point> {
        let base = &self.points[0];
        self.points[1..]
            .iter()
            .map(|p| p.iter().zip(base).map(|(x, y)| x - y).collect())
            .collect()
    }

    pub fn max_abs_coordinate(&self) -> i64 {
        self.points.iter().flatten().map(|x| x.abs()).max().unwrap_or(0)
    }

    pub fn index_of(&self, p: &[i64]) -> Option<usize> {
        self.points.iter().position(|q| q.as_slice() == p)
    }

    /// The set with point `skip` removed; `None` if that empties it.
    pub fn without(&self, skip: usize) -> Option<PointSet> {
        let points: Vec<Point> = self
            .points
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != skip)
            .map(|(_, p)| p.clone())
            .collect();
        (!points.is_empty()).then_some(PointSet { dim: self.dim, points })
    }

    pub fn translated(&self, t: &[i64]) -> PointSet {
        let points = self
            .points
            .iter()
            .map(|p| p.iter().zip(t).map(|(x, y)| x + y).collect())
            .collect();
        PointSet { dim: self.dim, points }
    }

    /// Image under the linear map `x -> u x` (`u` given row by row).
    pub fn transformed(&self, u: &[Vec<i64>]) -> PointSet {
        let points = self.points.iter().map(|p| apply(u, p)).collect();
        PointSet { dim: self.dim, points }
    }
}

/// `u · p` for a square integer matrix given by rows.
pub fn apply(u: &[Vec<i64>], p: &[i64]) -> Point {
    u.iter().map(|row| row.iter().zip(p).map(|(a, b)| a * b).sum()).collect()
}
