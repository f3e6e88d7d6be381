//! Sets `A = {0, v_1, .., v_{d+1}, w}` whose hull is the simplex on the `v_i`.
//!
//! Write `L = span_Z(v~_i)`, `L+ = span_N(v~_i)` and add the generator
//! `(0,1)` to get `L01` and `L01+`. The cone over `A` is the union of the
//! translates `(m w, m) + L01+` over `m >= 0`; the first `n' = [Z^{d+1} : L01]`
//! translates are pairwise disjoint, and the union may be cut off at
//! `m < M_w n'` where `M_w` is the least `M` with `M n' w~` in `L01+`.
//!
//! `L01+` is itself the cone over the d+2 set `{0, v_1, .., v_{d+1}}`, whose
//! primitive dependency `(N_L, -lambda_1, .., -lambda_{d+1}) / n'` has positive
//! part `N_L / n' = lcc`. Its height series is therefore
//! `(1 - t^lcc) / (1 - t)^{d+2}`, and every count below is a coefficient of
//! `sum_{m < K} t^m (1 - t^lcc) / (1 - t)^{d+2}` for `K = n'` (lower bound,
//! and the exact value when `n' w~` lies in `L01+`) or `K = M_w n'` (upper
//! bound). When the vertices generate Z^d, `n' = 1` and `lcc = N_L`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::binom::binom;
use crate::error::{Error, Result};
use crate::hull::{barycentric_in_simplex, classify_hull, HullClassification, Location};
use crate::linalg::{
    det_of_columns, lattice_index, lcm_of_denominators, solve_columns, LatticeIndex, Rational,
    RationalVector,
};
use crate::point::{lift, Point, PointSet};

/// Explicit role assignment for the points of a d+3 instance.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Roles {
    pub origin: Option<usize>,
    pub w: Option<usize>,
    pub vertices: Option<Vec<usize>>,
}

/// Hypothesis predicates reported alongside every d+3 analysis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct D3Predicates {
    pub difference_index: LatticeIndex,
    pub vertex_lattice_index: LatticeIndex,
    pub origin_location: Location,
    pub w_location: Location,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceD3 {
    base: PointSet,
    vertex_indices: Vec<usize>,
    origin_index: usize,
    w_index: usize,
    hull: HullClassification,
    predicates: D3Predicates,
}

impl InstanceD3 {
    pub fn new(base: PointSet) -> Result<Self> {
        Self::with_roles(base, &Roles::default())
    }

    pub fn with_roles(base: PointSet, roles: &Roles) -> Result<Self> {
        let d = base.dim();
        if base.len() != d + 3 {
            return Err(Error::Argument(format!(
                "expected {} points in dimension {d}, got {}",
                d + 3,
                base.len()
            )));
        }
        let hull = classify_hull(&base)?;
        if !hull.is_simplex {
            return Err(Error::Hypothesis(format!(
                "hull has {} vertices and is not a {d}-simplex",
                hull.vertex_indices.len()
            )));
        }
        let origin_index = base
            .index_of(&vec![0; d])
            .ok_or_else(|| Error::Hypothesis("the zero vector is not in A".into()))?;
        if !hull.interior_indices.contains(&origin_index) {
            return Err(Error::Hypothesis("the zero vector is a vertex of the hull".into()));
        }
        let w_index = *hull
            .interior_indices
            .iter()
            .find(|&&i| i != origin_index)
            .expect("a simplex hull of d+3 points leaves two non-vertices");
        if roles.origin.is_some_and(|o| o != origin_index) {
            return Err(Error::Hypothesis("annotated origin is not the zero vector".into()));
        }
        if roles.w.is_some_and(|w| w != w_index) {
            return Err(Error::Hypothesis("annotated w is a vertex of the hull".into()));
        }
        if let Some(v) = &roles.vertices {
            let mut v = v.clone();
            v.sort_unstable();
            if v != hull.vertex_indices {
                return Err(Error::Hypothesis(
                    "annotated vertices differ from the hull vertices".into(),
                ));
            }
        }
        let difference_index = lattice_index(&base.differences())?;
        if !difference_index.is_one() {
            return Err(Error::Hypothesis(format!(
                "A - A generates a sublattice of index {difference_index}, not Z^{d}"
            )));
        }
        let vertices: Vec<Point> = hull.vertex_indices.iter().map(|&i| base.point(i).clone()).collect();
        let predicates = D3Predicates {
            difference_index,
            vertex_lattice_index: lattice_index(&vertices)?,
            origin_location: barycentric_in_simplex(&vec![0; d], &vertices)?.location,
            w_location: barycentric_in_simplex(base.point(w_index), &vertices)?.location,
        };
        Ok(Self { vertex_indices: hull.vertex_indices.clone(), base, origin_index, w_index, hull, predicates })
    }

    pub fn base(&self) -> &PointSet {
        &self.base
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    pub fn vertex_indices(&self) -> &[usize] {
        &self.vertex_indices
    }

    pub fn origin_index(&self) -> usize {
        self.origin_index
    }

    pub fn w_index(&self) -> usize {
        self.w_index
    }

    pub fn hull(&self) -> &HullClassification {
        &self.hull
    }

    pub fn predicates(&self) -> &D3Predicates {
        &self.predicates
    }

    pub fn w(&self) -> &Point {
        self.base.point(self.w_index)
    }

    pub fn vertices(&self) -> Vec<Point> {
        self.vertex_indices.iter().map(|&i| self.base.point(i).clone()).collect()
    }

    pub fn lifted_vertices(&self) -> Vec<Point> {
        self.vertex_indices.iter().map(|&i| lift(self.base.point(i))).collect()
    }
}

/// Invariants of the vertex lattice and of the position of `(0,1)` in it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeInvariants {
    /// `|det(v~_1, .., v~_{d+1})|`.
    pub n_lambda: u64,
    /// Barycentric coordinates of `(0,1)`.
    pub mu: RationalVector,
    /// Reduced denominators of `mu`.
    pub q: Vec<u64>,
    /// Order of `(0,1)` modulo the vertex lattice: lcm of `q`.
    pub lcc: u64,
    pub n_prime: u64,
    /// `n_lambda * mu`.
    pub lambda_ints: Vec<i64>,
}

impl LatticeInvariants {
    /// Height shift of the `L01+` series, equal to `lcc`.
    pub fn period(&self) -> u64 {
        self.lcc
    }
}

fn to_u64(x: &BigInt, what: &str) -> Result<u64> {
    x.to_u64().ok_or_else(|| Error::Budget { h: 0, detail: format!("{what} = {x} exceeds u64") })
}

pub fn analyze_lattice(inst: &InstanceD3) -> Result<LatticeInvariants> {
    let cols = inst.lifted_vertices();
    let d = inst.dim();
    let det = det_of_columns(&cols)?;
    if det.is_zero() {
        return Err(Error::Singular);
    }
    let n_big = det.abs();
    let mut e = vec![0; d + 1];
    e[d] = 1;
    let mu = solve_columns(&cols, &e)?;
    if mu.iter().any(|m| m.is_negative()) {
        return Err(Error::Hypothesis("the origin lies outside the simplex".into()));
    }
    let lambda_big: Vec<BigInt> = mu
        .iter()
        .map(|m| {
            let x = m * Rational::from_integer(n_big.clone());
            if x.is_integer() {
                Ok(x.to_integer())
            } else {
                Err(Error::Internal(format!("N_L * mu = {x} is not integral")))
            }
        })
        .collect::<Result<_>>()?;
    let lcc_big = lcm_of_denominators(&mu);
    let (n_prime_big, rem) = n_big.div_rem(&lcc_big);
    if !rem.is_zero() {
        return Err(Error::Internal(format!("lcc {lcc_big} does not divide N_L {n_big}")));
    }
    let g = lambda_big.iter().fold(BigInt::zero(), |g, l| g.gcd(l));
    if g != n_prime_big {
        return Err(Error::Internal(format!("gcd(lambda) = {g} differs from N_L / lcc = {n_prime_big}")));
    }
    Ok(LatticeInvariants {
        n_lambda: to_u64(&n_big, "N_L")?,
        q: mu.iter().map(|m| to_u64(m.denom(), "q_i")).collect::<Result<_>>()?,
        lcc: to_u64(&lcc_big, "lcc")?,
        n_prime: to_u64(&n_prime_big, "N'")?,
        lambda_ints: lambda_big
            .iter()
            .map(|l| l.to_i64().ok_or_else(|| Error::Budget { h: 0, detail: "lambda_i exceeds i64".into() }))
            .collect::<Result<_>>()?,
        mu,
    })
}

/// Certificate for membership in `span_N((0,1), v~_1, .., v~_{d+1})`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MembershipCert {
    pub member: bool,
    /// Multiplier of `(0,1)`.
    pub k: u64,
    /// Multipliers of the lifted vertices; empty for non-members.
    pub c: Vec<u64>,
}

impl MembershipCert {
    fn none() -> Self {
        Self { member: false, k: 0, c: Vec::new() }
    }

    /// `k (0,1) + sum c_i v~_i`.
    pub fn evaluate(&self, lifted_vertices: &[Point]) -> Point {
        let dim = lifted_vertices[0].len();
        let mut out = vec![0i64; dim];
        out[dim - 1] = self.k as i64;
        for (ci, v) in self.c.iter().zip(lifted_vertices) {
            for (o, x) in out.iter_mut().zip(v) {
                *o += *ci as i64 * x;
            }
        }
        out
    }
}

/// Decides whether the lifted point `target` is in `L01+`, returning the
/// certificate with the smallest multiplier of `(0,1)`.
pub fn pos_span_membership(
    target: &[i64],
    inst: &InstanceD3,
    inv: &LatticeInvariants,
) -> Result<MembershipCert> {
    let cols = inst.lifted_vertices();
    if target.len() != cols.len() {
        return Err(Error::Dimension(format!(
            "target of length {} for lifted dimension {}",
            target.len(),
            cols.len()
        )));
    }
    let height = target[target.len() - 1];
    if height < 0 {
        return Ok(MembershipCert::none());
    }
    let t = solve_columns(&cols, target)?;
    for k in 0..=height as u64 {
        let kk = Rational::from_integer(k.into());
        let c: Vec<Rational> = t.iter().zip(&inv.mu).map(|(ti, mi)| ti - &kk * mi).collect();
        if c.iter().all(|x| x.is_integer() && !x.is_negative()) {
            let c = c.iter().map(|x| x.to_integer().to_u64().expect("bounded by height")).collect();
            return Ok(MembershipCert { member: true, k, c });
        }
    }
    Ok(MembershipCert::none())
}

fn scaled_w(inst: &InstanceD3, factor: u64) -> Point {
    lift(inst.w()).iter().map(|x| x * factor as i64).collect()
}

/// Whether `n' w~` lies in `L01+`.
pub fn equality_condition(inst: &InstanceD3, inv: &LatticeInvariants) -> Result<bool> {
    Ok(pos_span_membership(&scaled_w(inst, inv.n_prime), inst, inv)?.member)
}

/// Least `M >= 1` with `M n' w~` in `L01+`; never exceeds `N_L / n'`.
pub fn compute_m_w(inst: &InstanceD3, inv: &LatticeInvariants) -> Result<u64> {
    let mut m = 1;
    while m * inv.n_prime <= inv.n_lambda {
        if pos_span_membership(&scaled_w(inst, m * inv.n_prime), inst, inv)?.member {
            return Ok(m);
        }
        m += 1;
    }
    Err(Error::Internal(format!(
        "no multiple M n' w~ with M n' <= N_L = {} lies in L01+",
        inv.n_lambda
    )))
}

/// Coefficient of `t^h` in `sum_{m < terms} t^m (1 - t^period) / (1 - t)^{d+2}`.
pub fn series_coefficient(d: usize, h: u64, terms: u64, period: u64) -> BigInt {
    let k = d as i64 + 1;
    let h = h as i64;
    (0..terms.min(h as u64 + 1) as i64)
        .map(|m| binom(h - m + k, k) - binom(h - m - period as i64 + k, k))
        .sum()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub h: u64,
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub lower: BigInt,
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub upper: BigInt,
    #[serde(serialize_with = "crate::report::ser_opt_bigint")]
    pub exact: Option<BigInt>,
}

/// Everything needed to evaluate counts and bounds for one instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialAnalysis {
    pub invariants: LatticeInvariants,
    pub m_w: u64,
    pub equality: bool,
    dim: usize,
}

impl SimplicialAnalysis {
    pub fn new(inst: &InstanceD3) -> Result<Self> {
        let invariants = analyze_lattice(inst)?;
        let m_w = compute_m_w(inst, &invariants)?;
        let equality = equality_condition(inst, &invariants)?;
        debug_assert_eq!(equality, m_w == 1);
        Ok(Self { invariants, m_w, equality, dim: inst.dim() })
    }

    pub fn lower(&self, h: u64) -> BigInt {
        let inv = &self.invariants;
        series_coefficient(self.dim, h, inv.n_prime, inv.period())
    }

    pub fn upper(&self, h: u64) -> BigInt {
        let inv = &self.invariants;
        series_coefficient(self.dim, h, self.m_w * inv.n_prime, inv.period())
    }

    /// Exact `|hA|` when the equality condition holds.
    pub fn exact(&self, h: u64) -> Result<BigInt> {
        if !self.equality {
            return Err(Error::Contract("exact count requested but n' w~ is not in L01+".into()));
        }
        Ok(self.lower(h))
    }

    pub fn bounds(&self, h: u64) -> BoundsReport {
        let lower = self.lower(h);
        let upper = self.upper(h);
        let exact = (self.equality || h < self.invariants.n_prime).then(|| lower.clone());
        BoundsReport { h, lower, upper, exact }
    }
}

pub fn card_d3_exact(inst: &InstanceD3, inv: &LatticeInvariants, h: u64) -> Result<BigInt> {
    if !equality_condition(inst, inv)? {
        return Err(Error::Contract("exact count requested but n' w~ is not in L01+".into()));
    }
    Ok(series_coefficient(inst.dim(), h, inv.n_prime, inv.period()))
}

pub fn card_d3_bounds(inst: &InstanceD3, inv: &LatticeInvariants, h: u64) -> Result<BoundsReport> {
    let m_w = compute_m_w(inst, inv)?;
    let analysis = SimplicialAnalysis {
        invariants: inv.clone(),
        m_w,
        equality: m_w == 1,
        dim: inst.dim(),
    };
    Ok(analysis.bounds(h))
}

/// Stars and bars: `sum_{m=0}^{h} C(m+d+1, m) = C(h+d+2, h)`.
pub fn free_count(d: usize, h: u64) -> BigInt {
    binom(h as i64 + d as i64 + 2, h as i64)
}
