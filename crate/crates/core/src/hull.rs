//! Exact convex-position geometry for small point sets.
//!
//! Membership combines a Carathéodory search (is the point in some simplex
//! spanned by affinely independent members?) with a supporting-facet test
//! that separates interior from boundary. Volumes come from a placing
//! triangulation, so `hull_volume_dfact` never relies on the d+2 dependency
//! structure it is checked against.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{det_of_columns, rank, solve_columns, IntMatrix, Rational, RationalVector};
use crate::point::{lift, Point, PointSet};

/// Position of a point relative to a closed convex hull in R^d.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Location {
    Interior,
    Boundary,
    Outside,
}

impl std::fmt::Display for Location {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Location::Interior => "interior",
            Location::Boundary => "boundary",
            Location::Outside => "outside",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HullClassification {
    pub vertex_indices: Vec<usize>,
    pub is_simplex: bool,
    pub interior_indices: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BarycentricCoords {
    pub coords: RationalVector,
    pub location: Location,
}

/// Affine rank of a set of points (number of affinely independent points).
pub fn affine_rank(points: &[Point]) -> usize {
    let lifted: Vec<Point> = points.iter().map(|p| lift(p)).collect();
    rank(&lifted)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Affine coordinates of `p` with respect to affinely independent `pts`,
/// or `None` when `p` is off their affine span.
fn affine_coords(p: &[i64], pts: &[&Point]) -> Option<RationalVector> {
    let k = pts.len();
    let cols: Vec<Point> = pts.iter().map(|q| lift(q)).collect();
    let target = lift(p);
    // normal equations: (L^T L) x = L^T p~
    let gram: Vec<Point> = (0..k)
        .map(|i| (0..k).map(|j| dot(&cols[i], &cols[j])).collect())
        .collect();
    let rhs: Vec<i64> = cols.iter().map(|c| dot(c, &target)).collect();
    let x = solve_columns(&gram, &rhs).ok()?;
    let m = IntMatrix::from_columns(&cols).ok()?;
    let back = m.mul_rational(&x).ok()?;
    let on_span = back
        .iter()
        .zip(&target)
        .all(|(b, &t)| *b == Rational::from_integer(t.into()));
    on_span.then_some(x)
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Whether `p` lies in the convex hull of `s`, by Carathéodory search.
fn in_hull(p: &[i64], s: &PointSet) -> bool {
    let pts = s.points();
    let max_k = (s.dim() + 1).min(pts.len());
    for k in 1..=max_k {
        for idx in subsets(pts.len(), k) {
            let sub: Vec<&Point> = idx.iter().map(|&i| &pts[i]).collect();
            if k > 1 && affine_rank(&sub.iter().map(|q| (*q).clone()).collect::<Vec<_>>()) < k {
                continue;
            }
            if let Some(x) = affine_coords(p, &sub) {
                if x.iter().all(|c| !c.is_negative()) {
                    return true;
                }
            }
        }
    }
    false
}

/// Orientation value `det(u~_1, .., u~_d, x~)`, vanishing on the hyperplane
/// through the `u_i`.
fn side(face: &[&Point], x: &[i64]) -> BigInt {
    let mut cols: Vec<Point> = face.iter().map(|q| lift(q)).collect();
    cols.push(lift(x));
    det_of_columns(&cols).expect("square by construction")
}

/// Exact location of `p` relative to `conv(s)`.
pub fn hull_membership(p: &[i64], s: &PointSet) -> Result<Location> {
    if s.is_empty() {
        return Err(Error::Argument("membership against an empty set".into()));
    }
    if p.len() != s.dim() {
        return Err(Error::Dimension(format!(
            "point of dimension {} against a set in dimension {}",
            p.len(),
            s.dim()
        )));
    }
    if !in_hull(p, s) {
        return Ok(Location::Outside);
    }
    let d = s.dim();
    let pts = s.points();
    if affine_rank(pts) < d + 1 {
        // a lower-dimensional hull has empty interior in R^d
        return Ok(Location::Boundary);
    }
    for idx in subsets(pts.len(), d) {
        let face: Vec<&Point> = idx.iter().map(|&i| &pts[i]).collect();
        let values: Vec<BigInt> = pts.iter().map(|q| side(&face, q)).collect();
        let pos = values.iter().any(|v| v.is_positive());
        let neg = values.iter().any(|v| v.is_negative());
        if pos && neg || !(pos || neg) {
            continue;
        }
        if side(&face, p).is_zero() {
            return Ok(Location::Boundary);
        }
    }
    Ok(Location::Interior)
}

/// Identifies hull vertices and whether the hull is a d-simplex.
pub fn classify_hull(s: &PointSet) -> Result<HullClassification> {
    let d = s.dim();
    if s.len() < d + 1 {
        return Err(Error::Argument(format!(
            "{} points cannot span a {d}-dimensional hull",
            s.len()
        )));
    }
    if affine_rank(s.points()) < d + 1 {
        return Err(Error::Degenerate("hull is not full-dimensional".into()));
    }
    let mut vertex_indices = Vec::new();
    let mut interior_indices = Vec::new();
    for i in 0..s.len() {
        let rest = s.without(i).expect("at least d+1 >= 2 points");
        if hull_membership(s.point(i), &rest)? == Location::Outside {
            vertex_indices.push(i);
        } else {
            interior_indices.push(i);
        }
    }
    let is_simplex = vertex_indices.len() == d + 1 && {
        let cols: Vec<Point> = vertex_indices.iter().map(|&i| lift(s.point(i))).collect();
        !det_of_columns(&cols)?.is_zero()
    };
    Ok(HullClassification { vertex_indices, is_simplex, interior_indices })
}

/// Barycentric coordinates of `p` in the simplex with the given vertices.
pub fn barycentric_in_simplex(p: &[i64], vertices: &[Point]) -> Result<BarycentricCoords> {
    let d = p.len();
    if vertices.len() != d + 1 || vertices.iter().any(|v| v.len() != d) {
        return Err(Error::Dimension(format!(
            "a simplex in dimension {d} needs {} vertices of dimension {d}",
            d + 1
        )));
    }
    let cols: Vec<Point> = vertices.iter().map(|v| lift(v)).collect();
    let coords = solve_columns(&cols, &lift(p))?;
    let location = if coords.iter().all(|c| c.is_positive()) {
        Location::Interior
    } else if coords.iter().all(|c| !c.is_negative()) {
        Location::Boundary
    } else {
        Location::Outside
    };
    Ok(BarycentricCoords { coords, location })
}

/// Placing triangulation of `conv(s)`: each entry lists the d+1 point indices
/// of one full-dimensional simplex.
pub fn triangulate(s: &PointSet) -> Result<Vec<Vec<usize>>> {
    let d = s.dim();
    let pts = s.points();
    let mut start: Vec<usize> = Vec::new();
    for i in 0..pts.len() {
        start.push(i);
        let chosen: Vec<Point> = start.iter().map(|&j| pts[j].clone()).collect();
        if affine_rank(&chosen) < start.len() {
            start.pop();
        }
        if start.len() == d + 1 {
            break;
        }
    }
    if start.len() < d + 1 {
        return Err(Error::Degenerate("hull is not full-dimensional".into()));
    }
    let mut simplices = vec![start.clone()];
    for p in (0..pts.len()).filter(|i| !start.contains(i)) {
        // boundary facets appear in exactly one simplex
        let mut facets: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for simplex in &simplices {
            for &opp in simplex {
                let mut face: Vec<usize> = simplex.iter().copied().filter(|&v| v != opp).collect();
                face.sort_unstable();
                facets.entry(face).or_default().push(opp);
            }
        }
        let mut added = Vec::new();
        for (face, opps) in facets {
            if opps.len() != 1 {
                continue;
            }
            let fpts: Vec<&Point> = face.iter().map(|&i| &pts[i]).collect();
            let o_in = side(&fpts, &pts[opps[0]]);
            let o_p = side(&fpts, &pts[p]);
            if !o_p.is_zero() && o_p.is_positive() != o_in.is_positive() {
                let mut simplex = face.clone();
                simplex.push(p);
                added.push(simplex);
            }
        }
        simplices.extend(added);
    }
    Ok(simplices)
}

/// `vol(conv(s)) · d!` as an exact integer.
pub fn hull_volume_dfact(s: &PointSet) -> Result<BigInt> {
    let pts = s.points();
    let mut total = BigInt::zero();
    for simplex in triangulate(s)? {
        let cols: Vec<Point> = simplex.iter().map(|&i| lift(&pts[i])).collect();
        total += det_of_columns(&cols)?.abs();
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point::apply;
    use proptest::prelude::*;

    fn set(pts: &[&[i64]]) -> PointSet {
        PointSet::from_points(pts.iter().map(|p| p.to_vec()).collect()).unwrap()
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn triangle() -> PointSet {
        set(&[&[1, 1], &[1, -2], &[-2, 1]])
    }

    #[test]
    fn membership_examples() {
        let t = triangle();
        assert_eq!(hull_membership(&[5, 5], &t).unwrap(), Location::Outside);
        assert_eq!(hull_membership(&[0, 0], &t).unwrap(), Location::Interior);
        assert_eq!(hull_membership(&[0, 1], &t).unwrap(), Location::Boundary);
        assert_eq!(hull_membership(&[1, 1], &t).unwrap(), Location::Boundary);
    }

    #[test]
    fn square_center_is_interior() {
        // no triangle on the corners has the center strictly inside
        let sq = set(&[&[0, 0], &[2, 0], &[2, 2], &[0, 2]]);
        assert_eq!(hull_membership(&[1, 1], &sq).unwrap(), Location::Interior);
        assert_eq!(hull_membership(&[1, 0], &sq).unwrap(), Location::Boundary);
        assert_eq!(hull_membership(&[3, 1], &sq).unwrap(), Location::Outside);
    }

    #[test]
    fn flat_hulls_have_no_interior() {
        let seg = set(&[&[0, 0], &[2, 2]]);
        assert_eq!(hull_membership(&[1, 1], &seg).unwrap(), Location::Boundary);
        assert_eq!(hull_membership(&[1, 0], &seg).unwrap(), Location::Outside);
        assert_eq!(hull_membership(&[3, 3], &seg).unwrap(), Location::Outside);
        let single = set(&[&[4]]);
        assert_eq!(hull_membership(&[4], &single).unwrap(), Location::Boundary);
        assert_eq!(hull_membership(&[3], &single).unwrap(), Location::Outside);
    }

    #[test]
    fn membership_dimension_mismatch() {
        assert!(matches!(hull_membership(&[0], &triangle()), Err(Error::Dimension(_))));
    }

    #[test]
    fn classify_examples() {
        let c = classify_hull(&set(&[&[0], &[1], &[3]])).unwrap();
        assert_eq!(c.vertex_indices, vec![0, 2]);
        assert_eq!(c.interior_indices, vec![1]);
        assert!(c.is_simplex);

        let c = classify_hull(&set(&[&[0, 0], &[1, 0], &[2, 1], &[0, 1]])).unwrap();
        assert_eq!(c.vertex_indices.len(), 4);
        assert!(!c.is_simplex);

        let c = classify_hull(&set(&[
            &[1, 0, 0, 0],
            &[0, 1, 0, 0],
            &[0, 0, 1, 0],
            &[0, 0, 0, 1],
            &[0, 0, 0, 0],
            &[1, 1, 1, -1],
        ]))
        .unwrap();
        assert_eq!(c.vertex_indices.len(), 6);
        assert!(!c.is_simplex);
    }

    #[test]
    fn classify_degenerate() {
        let line = set(&[&[0, 0], &[1, 1], &[2, 2]]);
        assert!(matches!(classify_hull(&line), Err(Error::Degenerate(_))));
        assert!(matches!(classify_hull(&set(&[&[0, 0], &[1, 0]])), Err(Error::Argument(_))));
    }

    #[test]
    fn barycentric_examples() {
        let b = barycentric_in_simplex(&[1, 1], &[vec![1, 1], vec![1, -2], vec![-2, 1]]).unwrap();
        assert_eq!(b.coords, vec![r(1, 1), r(0, 1), r(0, 1)]);
        assert_eq!(b.location, Location::Boundary);

        let b = barycentric_in_simplex(&[0, 0], &[vec![1, 1], vec![1, -2], vec![-2, 1]]).unwrap();
        assert_eq!(b.coords, vec![r(1, 3); 3]);
        assert_eq!(b.location, Location::Interior);

        let b = barycentric_in_simplex(&[0], &[vec![-1], vec![2]]).unwrap();
        assert_eq!(b.coords, vec![r(2, 3), r(1, 3)]);
        assert_eq!(b.location, Location::Interior);

        let b = barycentric_in_simplex(&[0, 1], &[vec![1, 1], vec![1, -2], vec![-2, 1]]).unwrap();
        assert_eq!(b.coords, vec![r(2, 3), r(0, 1), r(1, 3)]);

        assert_eq!(
            barycentric_in_simplex(&[0, 0], &[vec![0, 0], vec![1, 1], vec![2, 2]]),
            Err(Error::Singular)
        );
    }

    #[test]
    fn volume_examples() {
        for d in 1..=5 {
            let mut pts = vec![vec![0; d]];
            for i in 0..d {
                let mut e = vec![0; d];
                e[i] = 1;
                pts.push(e);
            }
            let s = PointSet::new(d, pts).unwrap();
            assert_eq!(hull_volume_dfact(&s).unwrap(), BigInt::from(1));
        }
        assert_eq!(hull_volume_dfact(&set(&[&[0], &[3]])).unwrap(), BigInt::from(3));
        assert_eq!(
            hull_volume_dfact(&set(&[&[0, 0], &[1, 0], &[2, 1], &[0, 1]])).unwrap(),
            BigInt::from(3)
        );
        assert!(matches!(
            hull_volume_dfact(&set(&[&[0, 0], &[1, 1], &[3, 3]])),
            Err(Error::Degenerate(_))
        ));
    }

    /// Twice the area of the convex hull of planar points, by shoelace over the
    /// hull traversed with a gift-wrapping pass.
    fn shoelace_twice_area(pts: &[Point]) -> i64 {
        let start = pts.iter().min().unwrap().clone();
        let mut hull = vec![start.clone()];
        let mut cur = start;
        loop {
            let mut cand = pts.iter().find(|p| **p != cur).unwrap().clone();
            for p in pts {
                let cross = (cand[0] - cur[0]) * (p[1] - cur[1]) - (cand[1] - cur[1]) * (p[0] - cur[0]);
                let farther = (p[0] - cur[0]).pow(2) + (p[1] - cur[1]).pow(2)
                    > (cand[0] - cur[0]).pow(2) + (cand[1] - cur[1]).pow(2);
                if cross < 0 || (cross == 0 && farther) {
                    cand = p.clone();
                }
            }
            if cand == hull[0] {
                break;
            }
            hull.push(cand.clone());
            cur = cand;
        }
        let n = hull.len();
        (0..n)
            .map(|i| hull[i][0] * hull[(i + 1) % n][1] - hull[(i + 1) % n][0] * hull[i][1])
            .sum::<i64>()
            .abs()
    }

    fn unimodular() -> impl Strategy<Value = Vec<Vec<i64>>> {
        // product of elementary shears and a sign flip
        (prop::collection::vec((0usize..3, 0usize..3, -2i64..=2), 0..6), any::<bool>()).prop_map(
            |(ops, flip)| {
                let mut u = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
                for (i, j, k) in ops {
                    if i != j {
                        for c in 0..3 {
                            u[i][c] += k * u[j][c];
                        }
                    }
                }
                if flip {
                    u[0].iter_mut().for_each(|x| *x = -*x);
                }
                u
            },
        )
    }

    fn pts(n: std::ops::Range<usize>, d: usize) -> impl Strategy<Value = Vec<Point>> {
        prop::collection::btree_set(prop::collection::vec(-4i64..=4, d), n)
            .prop_map(|s| s.into_iter().collect())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn membership_invariant_under_affine_unimodular(
            s in pts(1..6, 3),
            p in prop::collection::vec(-4i64..=4, 3),
            t in prop::collection::vec(-5i64..=5, 3),
            u in unimodular(),
        ) {
            let set = PointSet::new(3, s).unwrap();
            let base = hull_membership(&p, &set).unwrap();
            let moved: Point = p.iter().zip(&t).map(|(a, b)| a + b).collect();
            prop_assert_eq!(hull_membership(&moved, &set.translated(&t)).unwrap(), base);
            prop_assert_eq!(hull_membership(&apply(&u, &p), &set.transformed(&u)).unwrap(), base);
        }

        #[test]
        fn barycentric_sums_to_one_and_reconstructs(
            verts in pts(3..4, 2),
            p in prop::collection::vec(-6i64..=6, 2),
        ) {
            prop_assume!(affine_rank(&verts) == 3);
            let b = barycentric_in_simplex(&p, &verts).unwrap();
            let sum: Rational = b.coords.iter().sum();
            prop_assert_eq!(sum, r(1, 1));
            for c in 0..2 {
                let x: Rational = b.coords.iter().zip(&verts).map(|(w, v)| w * Rational::from_integer(v[c].into())).sum();
                prop_assert_eq!(x, r(p[c], 1));
            }
        }

        #[test]
        fn planar_volume_matches_shoelace(s in pts(3..7, 2)) {
            prop_assume!(affine_rank(&s) == 3);
            let set = PointSet::new(2, s.clone()).unwrap();
            prop_assert_eq!(hull_volume_dfact(&set).unwrap(), BigInt::from(shoelace_twice_area(&s)));
        }

        #[test]
        fn volume_invariant_under_affine_unimodular(
            s in pts(4..7, 3),
            t in prop::collection::vec(-5i64..=5, 3),
            u in unimodular(),
        ) {
            prop_assume!(affine_rank(&s) == 4);
            let set = PointSet::new(3, s).unwrap();
            let v = hull_volume_dfact(&set).unwrap();
            prop_assert_eq!(hull_volume_dfact(&set.translated(&t)).unwrap(), v.clone());
            prop_assert_eq!(hull_volume_dfact(&set.transformed(&u)).unwrap(), v);
        }
    }
}
