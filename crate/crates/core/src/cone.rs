//! Lattice and cone diagnostics: fundamental parallelepipeds, residues modulo
//! a lattice, minimal cone elements, and the coset decomposition of the cone
//! of a d+3 simplicial set.
//!
//! Cone membership always goes through the brute-force sumset layers: a
//! lifted point `(g, N)` is in the cone over `A` iff `g` is in `NA`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::d3::{compute_m_w, pos_span_membership, InstanceD3, LatticeInvariants};
use crate::error::{Error, Result};
use crate::linalg::{det_of_columns, solve_columns};
use crate::point::{Point, PointSet};
use crate::sumset::{sumset_layers, Budget, SumsetLayer};

/// Largest `|det|` accepted by [`fundamental_domain_points`].
pub const MAX_DOMAIN_DET: u64 = 10_000;
/// Largest bounding box scanned by [`fundamental_domain_points`].
pub const MAX_BOX_POINTS: u128 = 50_000_000;

/// Integer points of the half-open parallelepiped spanned by a basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FundamentalDomain {
    pub basis: Vec<Point>,
    pub points: BTreeSet<Point>,
    pub count: usize,
    det: i128,
    // adjugate rows: basis coordinates of p are (adj · p) / det
    adj: Vec<Vec<i128>>,
}

impl FundamentalDomain {
    pub fn det(&self) -> i128 {
        self.det
    }

    /// Basis coordinates of `p`, scaled by `|det|` so they are integers.
    fn scaled_coords(&self, p: &[i64]) -> Vec<i128> {
        let s = self.det.signum();
        self.adj
            .iter()
            .map(|row| s * row.iter().zip(p).map(|(a, &x)| a * x as i128).sum::<i128>())
            .collect()
    }
}

pub fn fundamental_domain_points(basis: &[Point]) -> Result<FundamentalDomain> {
    let n = basis.len();
    if n == 0 || basis.iter().any(|b| b.len() != n) {
        return Err(Error::Dimension("basis must be n vectors of length n".into()));
    }
    let det_big = det_of_columns(basis)?;
    if det_big.is_zero() {
        return Err(Error::Singular);
    }
    if det_big.abs() > BigInt::from(MAX_DOMAIN_DET) {
        return Err(Error::Budget { h: 0, detail: format!("|det| = {} above {MAX_DOMAIN_DET}", det_big.abs()) });
    }
    let det = det_big.to_i128().expect("bounded above");
    // adj = det · B^{-1}; column j of B^{-1} solves B x = e_j
    let mut adj = vec![vec![0i128; n]; n];
    for j in 0..n {
        let mut e = vec![0; n];
        e[j] = 1;
        let x = solve_columns(basis, &e)?;
        for i in 0..n {
            let v = &x[i] * crate::linalg::Rational::from_integer(det_big.clone());
            adj[i][j] = v.to_integer().to_i128().expect("adjugate entries are small");
        }
    }
    let lo: Vec<i64> = (0..n).map(|c| basis.iter().map(|b| b[c].min(0)).sum()).collect();
    let hi: Vec<i64> = (0..n).map(|c| basis.iter().map(|b| b[c].max(0)).sum()).collect();
    let box_size: u128 = lo.iter().zip(&hi).map(|(l, h)| (h - l + 1) as u128).product();
    if box_size > MAX_BOX_POINTS {
        return Err(Error::Budget { h: 0, detail: format!("bounding box of {box_size} points") });
    }
    let mut fd = FundamentalDomain {
        basis: basis.to_vec(),
        points: BTreeSet::new(),
        count: 0,
        det,
        adj,
    };
    let bound = det.abs();
    let mut p = lo.clone();
    'scan: loop {
        if fd.scaled_coords(&p).iter().all(|&x| 0 <= x && x < bound) {
            fd.points.insert(p.clone());
        }
        for c in 0..n {
            if p[c] < hi[c] {
                p[c] += 1;
                continue 'scan;
            }
            p[c] = lo[c];
        }
        break;
    }
    fd.count = fd.points.len();
    if fd.count as i128 != bound {
        return Err(Error::Internal(format!("found {} domain points for |det| = {bound}", fd.count)));
    }
    Ok(fd)
}

/// The representative in the fundamental domain of the class of `p`.
pub fn residue_of(p: &[i64], fd: &FundamentalDomain) -> Point {
    let bound = fd.det.abs();
    let shifts: Vec<i128> = fd.scaled_coords(p).iter().map(|x| x.div_floor(&bound)).collect();
    let mut out: Point = p.to_vec();
    for (k, b) in shifts.iter().zip(&fd.basis) {
        for (o, x) in out.iter_mut().zip(b) {
            *o -= (*k * *x as i128) as i64;
        }
    }
    debug_assert!(fd.points.contains(&out));
    out
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct MinimalElement {
    /// Lifted point `(g, N)`.
    pub point: Point,
    pub height: u32,
    pub residue: Point,
}

fn lifted_at(g: &[i64], h: u32) -> Point {
    let mut p = g.to_vec();
    p.push(h as i64);
    p
}

/// Cone points up to `height_limit` from which subtracting any basis vector
/// leaves the cone, ordered by residue and then height.
pub fn minimal_elements(
    a: &PointSet,
    basis: &[Point],
    height_limit: u32,
    budget: Budget,
) -> Result<Vec<MinimalElement>> {
    let fd = fundamental_domain_points(basis)?;
    if basis.iter().any(|b| b.len() != a.dim() + 1 || b[a.dim()] < 1) {
        return Err(Error::Argument("basis vectors must be lifted points of positive height".into()));
    }
    let layers = sumset_layers(a, height_limit, budget)?;
    let d = a.dim();
    let mut out = Vec::new();
    for layer in &layers {
        let h = layer.h;
        for g in &layer.points {
            let minimal = basis.iter().all(|b| {
                let hb = b[d] as u32;
                if hb > h {
                    return true;
                }
                let rest: Point = g.iter().zip(b).map(|(x, y)| x - y).collect();
                !layers[(h - hb) as usize].points.contains(&rest)
            });
            if minimal {
                let point = lifted_at(g, h);
                out.push(MinimalElement { residue: residue_of(&point, &fd), point, height: h });
            }
        }
    }
    out.sort_by(|x, y| (&x.residue, x.height, &x.point).cmp(&(&y.residue, y.height, &y.point)));
    Ok(out)
}

/// How the cone up to a height is covered by the translates `(m w, m) + L01+`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionReport {
    pub height_limit: u32,
    /// `M_w n'`, the number of translates in the full union.
    pub cosets: u64,
    /// `n'`, the number of translates in the disjoint part.
    pub primary_cosets: u64,
    /// For each lifted cone point, how many of the `M_w n'` translates contain it.
    pub multiplicity: BTreeMap<Point, u64>,
    /// The same restricted to `m < n'`.
    pub primary_multiplicity: BTreeMap<Point, u64>,
    /// Every primary multiplicity is at most 1.
    pub disjoint: bool,
    /// Every multiplicity is at least 1.
    pub covering: bool,
    /// Every primary multiplicity is at least 1.
    pub primary_covering: bool,
}

pub fn verify_decomposition(
    inst: &InstanceD3,
    inv: &LatticeInvariants,
    height_limit: u32,
) -> Result<DecompositionReport> {
    verify_decomposition_with(inst, inv, height_limit, Budget::default())
}

pub fn verify_decomposition_with(
    inst: &InstanceD3,
    inv: &LatticeInvariants,
    height_limit: u32,
    budget: Budget,
) -> Result<DecompositionReport> {
    let m_w = compute_m_w(inst, inv)?;
    let cosets = m_w * inv.n_prime;
    let w = inst.w();
    let layers: Vec<SumsetLayer> = sumset_layers(inst.base(), height_limit, budget)?;
    let mut multiplicity = BTreeMap::new();
    let mut primary_multiplicity = BTreeMap::new();
    for layer in &layers {
        let h = layer.h as u64;
        for g in &layer.points {
            let mut total = 0;
            let mut primary = 0;
            for m in 0..cosets.min(h + 1) {
                let mut target: Point = g.iter().zip(w).map(|(x, y)| x - m as i64 * y).collect();
                target.push((h - m) as i64);
                if pos_span_membership(&target, inst, inv)?.member {
                    total += 1;
                    if m < inv.n_prime {
                        primary += 1;
                    }
                }
            }
            let p = lifted_at(g, layer.h);
            multiplicity.insert(p.clone(), total);
            primary_multiplicity.insert(p, primary);
        }
    }
    Ok(DecompositionReport {
        height_limit,
        cosets,
        primary_cosets: inv.n_prime,
        disjoint: primary_multiplicity.values().all(|&c| c <= 1),
        covering: multiplicity.values().all(|&c| c >= 1),
        primary_covering: primary_multiplicity.values().all(|&c| c >= 1),
        multiplicity,
        primary_multiplicity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::d3::analyze_lattice;
    use proptest::prelude::*;

    fn set(pts: &[&[i64]]) -> PointSet {
        PointSet::from_points(pts.iter().map(|p| p.to_vec()).collect()).unwrap()
    }

    #[test]
    fn domain_examples() {
        let fd = fundamental_domain_points(&[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(fd.points, BTreeSet::from([vec![0, 0]]));
        let fd = fundamental_domain_points(&[vec![-1, 1], vec![2, 1]]).unwrap();
        assert_eq!(fd.points, BTreeSet::from([vec![0, 0], vec![0, 1], vec![1, 1]]));
        let fd =
            fundamental_domain_points(&[vec![1, 1, 1], vec![1, -2, 1], vec![-2, 1, 1]]).unwrap();
        assert_eq!(fd.count, 9);
        assert_eq!(fundamental_domain_points(&[vec![1, 2], vec![2, 4]]), Err(Error::Singular));
        assert!(matches!(
            fundamental_domain_points(&[vec![200, 0], vec![0, 200]]),
            Err(Error::Budget { .. })
        ));
    }

    #[test]
    fn residues() {
        let fd = fundamental_domain_points(&[vec![0, 1], vec![3, 1]]).unwrap();
        for pi in fd.points.clone() {
            assert_eq!(residue_of(&pi, &fd), pi);
            let moved: Point = pi.iter().zip(&[3, 1]).map(|(a, b)| a + b).collect();
            assert_eq!(residue_of(&moved, &fd), pi);
        }
        // (2,2) = 4/3 (0,1) + 2/3 (3,1); dropping one (0,1) lands in the domain
        assert_eq!(residue_of(&[2, 2], &fd), vec![2, 1]);
    }

    #[test]
    fn minimal_examples() {
        for d in 1..=3usize {
            let mut pts = vec![vec![0; d]];
            for i in 0..d {
                let mut e = vec![0; d];
                e[i] = 1;
                pts.push(e);
            }
            let a = PointSet::new(d, pts).unwrap();
            let mins = minimal_elements(&a, &a.lifted(), 4, Budget::default()).unwrap();
            assert_eq!(mins.len(), 1);
            assert_eq!(mins[0].point, vec![0; d + 1]);
        }
        let a = set(&[&[0], &[1], &[3]]);
        let mins = minimal_elements(&a, &[vec![0, 1], vec![3, 1]], 8, Budget::default()).unwrap();
        let pts: BTreeSet<Point> = mins.iter().map(|m| m.point.clone()).collect();
        assert_eq!(pts, BTreeSet::from([vec![0, 0], vec![1, 1], vec![2, 2]]));
        assert_eq!(mins.iter().map(|m| m.height).max(), Some(2));
        // one minimal element per residue class
        let residues: BTreeSet<Point> = mins.iter().map(|m| m.residue.clone()).collect();
        assert_eq!(residues.len(), 3);
    }

    #[test]
    fn minimal_elements_of_a2_respect_height_bound() {
        let a = set(&[&[0, 0], &[1, 1], &[1, -2], &[-2, 1], &[0, 1]]);
        let basis = vec![vec![1, 1, 1], vec![1, -2, 1], vec![-2, 1, 1]];
        let mins = minimal_elements(&a, &basis, 14, Budget::default()).unwrap();
        assert!(mins.iter().all(|m| m.height <= 8));
    }

    #[test]
    fn decomposition_examples() {
        let a2 = InstanceD3::new(set(&[&[0, 0], &[1, 1], &[1, -2], &[-2, 1], &[0, 1]])).unwrap();
        let inv = analyze_lattice(&a2).unwrap();
        let rep = verify_decomposition(&a2, &inv, 6).unwrap();
        assert!(rep.covering && rep.disjoint);

        let line = InstanceD3::new(set(&[&[0], &[-1], &[2], &[1]])).unwrap();
        let inv = analyze_lattice(&line).unwrap();
        let rep = verify_decomposition(&line, &inv, 6).unwrap();
        assert_eq!((rep.cosets, rep.primary_cosets), (2, 1));
        assert!(rep.covering && rep.disjoint);
        assert!(!rep.primary_covering);

        let rep = verify_decomposition(&line, &inv, 0).unwrap();
        assert_eq!(rep.multiplicity, BTreeMap::from([(vec![0, 0], 1)]));
    }

    fn basis3() -> impl Strategy<Value = Vec<Point>> {
        prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 3)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn domain_size_is_abs_det(b in basis3()) {
            let det = det_of_columns(&b).unwrap();
            prop_assume!(!det.is_zero() && det.abs() <= BigInt::from(50));
            let fd = fundamental_domain_points(&b).unwrap();
            prop_assert_eq!(BigInt::from(fd.count), det.abs());
        }

        #[test]
        fn residue_idempotent_and_orbit_constant(
            b in basis3(),
            p in prop::collection::vec(-20i64..=20, 3),
            k in prop::collection::vec(-3i64..=3, 3),
        ) {
            let det = det_of_columns(&b).unwrap();
            prop_assume!(!det.is_zero() && det.abs() <= BigInt::from(50));
            let fd = fundamental_domain_points(&b).unwrap();
            let r = residue_of(&p, &fd);
            prop_assert!(fd.points.contains(&r));
            prop_assert_eq!(residue_of(&r, &fd), r.clone());
            let mut q = p.clone();
            for (ki, bi) in k.iter().zip(&b) {
                for (x, y) in q.iter_mut().zip(bi) {
                    *x += ki * y;
                }
            }
            prop_assert_eq!(residue_of(&q, &fd), r);
        }
    }
}
