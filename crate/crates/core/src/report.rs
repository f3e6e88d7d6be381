//! Instance ingestion, analysis and formula-versus-oracle reports.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize, Serializer};

use crate::d2::{affine_dependency, card_d2_with, InstanceD2, RadonData};
use crate::d3::{InstanceD3, Roles, SimplicialAnalysis};
use crate::error::{Error, Result};
use crate::hull::{classify_hull, hull_volume_dfact, HullClassification, Location};
use crate::linalg::{lattice_index, Rational};
use crate::point::PointSet;
use crate::sumset::{cardinality_sequence_with, khovanskii_fit, Budget};

pub(crate) fn ser_bigint<S: Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x.to_i64() {
        Some(v) => s.serialize_i64(v),
        None => s.serialize_str(&x.to_string()),
    }
}

pub(crate) fn ser_opt_bigint<S: Serializer>(
    x: &Option<BigInt>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(x) => ser_bigint(x, s),
        None => s.serialize_none(),
    }
}

pub(crate) fn ser_bigints<S: Serializer>(xs: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(xs.len()))?;
    for x in xs {
        match x.to_i64() {
            Some(v) => seq.serialize_element(&v)?,
            None => seq.serialize_element(&x.to_string())?,
        }
    }
    seq.end()
}

fn rational_str(x: &Rational) -> String {
    x.to_string()
}

/// On-disk instance description.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub d: usize,
    pub points: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub roles: Option<RolesFile>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RolesFile {
    #[serde(default)]
    pub origin: Option<usize>,
    #[serde(default)]
    pub w: Option<usize>,
    #[serde(default)]
    pub vertices: Option<Vec<usize>>,
}

impl InstanceFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn point_set(&self) -> Result<PointSet> {
        PointSet::new(self.d, self.points.clone()).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn roles(&self) -> Result<Roles> {
        let Some(r) = &self.roles else {
            return Ok(Roles::default());
        };
        let n = self.points.len();
        let all = r.origin.iter().chain(&r.w).chain(r.vertices.iter().flatten());
        if let Some(bad) = all.clone().find(|&&i| i >= n) {
            return Err(Error::Parse(format!("role index {bad} out of range for {n} points")));
        }
        Ok(Roles { origin: r.origin, w: r.w, vertices: r.vertices.clone() })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    /// d+2 points.
    DPlus2 { simplex: bool },
    /// d+3 points with a simplex hull.
    DPlus3Simplicial,
    Unsupported,
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Classification::DPlus2 { simplex: true } => f.write_str("d+2, simplex"),
            Classification::DPlus2 { simplex: false } => f.write_str("d+2, non-simplex"),
            Classification::DPlus3Simplicial => f.write_str("d+3-simplicial"),
            Classification::Unsupported => f.write_str("unsupported"),
        }
    }
}

impl Serialize for Classification {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Predicates {
    /// Index of the lattice spanned by `A - A`.
    pub difference_index: String,
    /// Index of the lattice spanned by the hull vertices (d+3 sets only).
    pub vertex_lattice_index: Option<String>,
    pub hull_class: String,
    pub origin_location: Option<Location>,
    pub w_location: Option<Location>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LatticeSummary {
    pub n_lambda: u64,
    pub mu: Vec<String>,
    pub q: Vec<u64>,
    pub lcc: u64,
    pub n_prime: u64,
    pub lambda_ints: Vec<i64>,
    pub period: u64,
    pub m_w: u64,
    pub equality: bool,
}

impl LatticeSummary {
    fn from_analysis(a: &SimplicialAnalysis) -> Self {
        let inv = &a.invariants;
        Self {
            n_lambda: inv.n_lambda,
            mu: inv.mu.iter().map(rational_str).collect(),
            q: inv.q.clone(),
            lcc: inv.lcc,
            n_prime: inv.n_prime,
            lambda_ints: inv.lambda_ints.clone(),
            period: inv.period(),
            m_w: a.m_w,
            equality: a.equality,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Row {
    pub h: u64,
    #[serde(serialize_with = "ser_opt_bigint")]
    pub exact: Option<BigInt>,
    #[serde(serialize_with = "ser_opt_bigint")]
    pub lower: Option<BigInt>,
    #[serde(serialize_with = "ser_opt_bigint")]
    pub upper: Option<BigInt>,
    pub brute: Option<u64>,
    #[serde(rename = "match")]
    pub matches: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Formula,
    Bounds,
    All,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InstanceEcho {
    pub d: usize,
    pub points: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub instance: InstanceEcho,
    pub classification: Classification,
    pub hull: Option<HullClassification>,
    pub predicates: Predicates,
    pub radon: Option<RadonData>,
    pub lattice: Option<LatticeSummary>,
    pub rows: Vec<Row>,
}

impl Report {
    pub fn all_match(&self) -> bool {
        self.rows.iter().all(|r| r.matches)
    }
}

/// Validated instance of one of the supported families.
#[derive(Debug, Clone)]
pub enum Analyzed {
    D2 { inst: InstanceD2, radon: RadonData, hull: HullClassification },
    D3 { inst: InstanceD3, analysis: SimplicialAnalysis },
}

impl Analyzed {
    pub fn new(set: &PointSet, roles: &Roles) -> Result<Self> {
        let d = set.dim();
        if set.len() == d + 2 {
            let inst = InstanceD2::new(set.clone())?;
            let radon = affine_dependency(&inst)?;
            let hull = classify_hull(set)?;
            Ok(Analyzed::D2 { inst, radon, hull })
        } else if set.len() == d + 3 {
            let inst = InstanceD3::with_roles(set.clone(), roles)?;
            let analysis = SimplicialAnalysis::new(&inst)?;
            Ok(Analyzed::D3 { inst, analysis })
        } else {
            Err(Error::Hypothesis(format!(
                "unsupported: {} points in dimension {d} (need d+2 or d+3)",
                set.len()
            )))
        }
    }

    /// Default verification horizon: past every regime boundary plus `d + 3`.
    pub fn default_h_max(&self) -> u64 {
        match self {
            Analyzed::D2 { inst, radon, .. } => {
                radon.r.to_u64().unwrap_or(u64::MAX) + inst.dim() as u64 + 3
            }
            Analyzed::D3 { inst, analysis } => {
                let inv = &analysis.invariants;
                inv.n_lambda + analysis.m_w * inv.n_prime + inst.dim() as u64 + 3
            }
        }
    }

    fn row(&self, h: u64, mode: Mode, brute: Option<u64>) -> Row {
        match self {
            Analyzed::D2 { inst, radon, .. } => {
                let exact = card_d2_with(inst.dim(), radon, h);
                let matches = brute.is_none_or(|b| exact == BigInt::from(b));
                Row { h, exact: Some(exact), lower: None, upper: None, brute, matches }
            }
            Analyzed::D3 { analysis, .. } => {
                let b = analysis.bounds(h);
                let check_exact = matches!(mode, Mode::Formula | Mode::All);
                let check_bounds = matches!(mode, Mode::Bounds | Mode::All);
                let matches = brute.is_none_or(|v| {
                    let v = BigInt::from(v);
                    let exact_ok = !check_exact || b.exact.as_ref().is_none_or(|e| *e == v);
                    let bounds_ok = !check_bounds || (b.lower <= v && v <= b.upper);
                    exact_ok && bounds_ok
                });
                let (lower, upper) = if check_bounds { (Some(b.lower), Some(b.upper)) } else { (None, None) };
                let exact = if check_exact { b.exact } else { None };
                Row { h, exact, lower, upper, brute, matches }
            }
        }
    }
}

fn base_report(set: &PointSet) -> Result<Report> {
    let idx = lattice_index(&set.differences().into_iter().chain(std::iter::once(vec![0; set.dim()])).collect::<Vec<_>>())?;
    Ok(Report {
        instance: InstanceEcho { d: set.dim(), points: set.points().to_vec() },
        classification: Classification::Unsupported,
        hull: None,
        predicates: Predicates {
            difference_index: idx.to_string(),
            vertex_lattice_index: None,
            hull_class: "unknown".into(),
            origin_location: None,
            w_location: None,
        },
        radon: None,
        lattice: None,
        rows: Vec::new(),
    })
}

fn fill(report: &mut Report, analyzed: &Analyzed) {
    match analyzed {
        Analyzed::D2 { radon, hull, .. } => {
            report.classification = Classification::DPlus2 { simplex: hull.is_simplex };
            report.predicates.hull_class = simplex_word(hull.is_simplex).into();
            report.hull = Some(hull.clone());
            report.radon = Some(radon.clone());
        }
        Analyzed::D3 { inst, analysis } => {
            let p = inst.predicates();
            report.classification = Classification::DPlus3Simplicial;
            report.predicates.hull_class = "simplex".into();
            report.predicates.vertex_lattice_index = Some(p.vertex_lattice_index.to_string());
            report.predicates.origin_location = Some(p.origin_location);
            report.predicates.w_location = Some(p.w_location);
            report.hull = Some(inst.hull().clone());
            report.lattice = Some(LatticeSummary::from_analysis(analysis));
        }
    }
}

fn simplex_word(simplex: bool) -> &'static str {
    if simplex {
        "simplex"
    } else {
        "non-simplex"
    }
}

/// Classification, dependency or lattice invariants; no enumeration.
pub fn analyze(set: &PointSet, roles: &Roles) -> Result<Report> {
    let mut report = base_report(set)?;
    let analyzed = Analyzed::new(set, roles)?;
    fill(&mut report, &analyzed);
    Ok(report)
}

/// Brute force up to `h_max` compared against the closed forms.
pub fn verify(set: &PointSet, roles: &Roles, h_max: u32, mode: Mode, budget: Budget) -> Result<Report> {
    let mut report = base_report(set)?;
    let analyzed = Analyzed::new(set, roles)?;
    fill(&mut report, &analyzed);
    let seq = cardinality_sequence_with(set, h_max, budget)?;
    report.rows = seq
        .values
        .iter()
        .enumerate()
        .map(|(h, &b)| analyzed.row(h as u64, mode, Some(b)))
        .collect();
    Ok(report)
}

/// Oracle-only report for an arbitrary set.
pub fn brute_only(set: &PointSet, h_max: u32, budget: Budget) -> Result<Report> {
    let mut report = base_report(set)?;
    if let Ok(hull) = classify_hull(set) {
        report.predicates.hull_class = simplex_word(hull.is_simplex).into();
        report.hull = Some(hull);
    }
    let seq = cardinality_sequence_with(set, h_max, budget)?;
    report.rows = seq
        .values
        .iter()
        .enumerate()
        .map(|(h, &b)| Row { h: h as u64, exact: None, lower: None, upper: None, brute: Some(b), matches: true })
        .collect();
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KhovanskiiReport {
    pub d: usize,
    pub h_max: u32,
    pub h0: u32,
    pub coefficients: Vec<String>,
    pub degree: Option<usize>,
    pub leading_times_dfact: String,
    #[serde(serialize_with = "ser_bigint")]
    pub hull_volume_dfact: BigInt,
    pub volume_matches: bool,
}

impl KhovanskiiReport {
    /// The fitted polynomial written out in `h`.
    pub fn polynomial(&self) -> String {
        let mut terms = Vec::new();
        for (i, c) in self.coefficients.iter().enumerate().rev() {
            if c == "0" {
                continue;
            }
            terms.push(match i {
                0 => c.clone(),
                1 => format!("{c}*h"),
                _ => format!("{c}*h^{i}"),
            });
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

pub fn khovanskii(set: &PointSet, h_max: u32, budget: Budget) -> Result<KhovanskiiReport> {
    let idx = lattice_index(&set.differences().into_iter().chain(std::iter::once(vec![0; set.dim()])).collect::<Vec<_>>())?;
    if !idx.is_one() {
        return Err(Error::Hypothesis(format!("A - A generates a sublattice of index {idx}")));
    }
    let seq = cardinality_sequence_with(set, h_max, budget)?;
    let fit = khovanskii_fit(&seq, set.dim())?;
    let vol = hull_volume_dfact(set)?;
    Ok(KhovanskiiReport {
        d: set.dim(),
        h_max,
        h0: fit.h0,
        coefficients: fit.coefficients.iter().map(rational_str).collect(),
        degree: fit.degree(),
        leading_times_dfact: rational_str(&fit.leading_coefficient_times_dfact),
        volume_matches: fit.leading_coefficient_times_dfact == Rational::from_integer(vol.clone()),
        hull_volume_dfact: vol,
    })
}
