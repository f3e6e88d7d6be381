//! Command-line front end behind the `sumsets` binary.
//!
//! Exit codes: 0 success, 2 parse error, 3 hypothesis violation, 4 budget
//! exceeded, 5 formula/oracle mismatch, 6 Khovanskii fit not stabilized.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::d3::Roles;
use crate::error::{Error, Result};
use crate::point::PointSet;
use crate::report::{self, Analyzed, InstanceFile, KhovanskiiReport, Mode, Report, Row};
use crate::sampling::{scan, Family, SamplerConfig, ScanSummary};
use crate::sumset::Budget;

pub const EXIT_MISMATCH: i32 = 5;

#[derive(Debug, Parser)]
#[command(name = "sumsets", version, about = "Exact sizes of iterated sumsets hA for small point sets in Z^d")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify an instance and print its invariants, without enumerating sumsets.
    Analyze {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Enumerate hA up to --h-max and compare with the closed forms.
    Verify {
        file: PathBuf,
        #[arg(long)]
        h_max: Option<u32>,
        #[arg(long, value_enum, default_value_t = Mode::All)]
        mode: Mode,
        /// Skip classification and only run the enumeration.
        #[arg(long)]
        brute_only: bool,
        #[command(flatten)]
        out: Output,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Verify a stream of seeded random instances.
    Scan {
        #[arg(long)]
        d: usize,
        #[arg(long, value_enum, default_value_t = Family::D2)]
        family: Family,
        #[arg(long, default_value_t = 100)]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest absolute coordinate of a sampled point.
        #[arg(long, default_value_t = 5)]
        bound: i64,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Fit the eventual polynomial of |hA| and compare its leading term with the hull volume.
    Khovanskii {
        file: PathBuf,
        #[arg(long, default_value_t = 30)]
        h_max: u32,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Print |hA| for h = 0..=h_max for any point set.
    Brute {
        file: PathBuf,
        #[arg(long, default_value_t = 10)]
        h_max: u32,
        #[command(flatten)]
        out: Output,
        #[command(flatten)]
        budget: BudgetArgs,
    },
}

#[derive(Debug, Args)]
pub struct Output {
    /// Print the machine-readable report instead of the table.
    #[arg(long)]
    pub json: bool,
    /// Also write the per-h table as CSV.
    #[arg(long, value_name = "PATH")]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BudgetArgs {
    /// Largest number of points allowed in a single layer hA.
    #[arg(long, default_value_t = Budget::default().max_layer_points)]
    pub budget_points: usize,
}

impl BudgetArgs {
    fn budget(&self, h_max: u32) -> Budget {
        let default = Budget::default();
        Budget { max_h: default.max_h.max(h_max), max_layer_points: self.budget_points }
    }
}

fn load(path: &Path) -> Result<(PointSet, Roles)> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let file = InstanceFile::parse(&text)?;
    Ok((file.point_set()?, file.roles()?))
}

fn json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

/// Parses `args` and runs the command, writing the report to `out`.
/// Diagnostics go to `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli.command) {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(command: Command) -> Result<(String, i32)> {
    match command {
        Command::Analyze { file, json: as_json } => {
            let (set, roles) = load(&file)?;
            let report = report::analyze(&set, &roles)?;
            Ok((if as_json { json(&report) } else { render_report(&report) }, 0))
        }
        Command::Verify { file, h_max, mode, brute_only, out, budget } => {
            let (set, roles) = load(&file)?;
            let report = if brute_only {
                let h_max = h_max.unwrap_or(10);
                report::brute_only(&set, h_max, budget.budget(h_max))?
            } else {
                let h_max = match h_max {
                    Some(h) => h,
                    None => {
                        let h = Analyzed::new(&set, &roles)?.default_h_max();
                        u32::try_from(h).map_err(|_| Error::Budget { h: u32::MAX, detail: "derived h_max".into() })?
                    }
                };
                report::verify(&set, &roles, h_max, mode, budget.budget(h_max))?
            };
            let code = if report.all_match() { 0 } else { EXIT_MISMATCH };
            Ok((emit(&report, &out)?, code))
        }
        Command::Scan { d, family, count, seed, bound, json: as_json, budget } => {
            let summary = scan(seed, count, SamplerConfig::new(d, family, bound), budget.budget(0))?;
            let code = if summary.failures.is_empty() { 0 } else { EXIT_MISMATCH };
            Ok((if as_json { json(&summary) } else { render_scan(&summary) }, code))
        }
        Command::Khovanskii { file, h_max, json: as_json, budget } => {
            let (set, _) = load(&file)?;
            let report = report::khovanskii(&set, h_max, budget.budget(h_max))?;
            let code = if report.volume_matches { 0 } else { EXIT_MISMATCH };
            Ok((if as_json { json(&report) } else { render_khovanskii(&report) }, code))
        }
        Command::Brute { file, h_max, out, budget } => {
            let (set, _) = load(&file)?;
            let report = report::brute_only(&set, h_max, budget.budget(h_max))?;
            Ok((emit(&report, &out)?, 0))
        }
    }
}

fn emit(report: &Report, out: &Output) -> Result<String> {
    if let Some(path) = &out.csv {
        write_csv(report, path)?;
    }
    Ok(if out.json { json(report) } else { render_report(report) })
}

fn cell<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map_or_else(|| "-".to_string(), |v| v.to_string())
}

fn row_cells(r: &Row) -> [String; 6] {
    [
        r.h.to_string(),
        cell(&r.exact),
        cell(&r.lower),
        cell(&r.upper),
        cell(&r.brute),
        if r.matches { "yes" } else { "NO" }.to_string(),
    ]
}

const COLUMNS: [&str; 6] = ["h", "exact", "lower", "upper", "brute", "match"];

pub fn write_csv(report: &Report, path: &Path) -> Result<()> {
    let io = |e: csv::Error| Error::Argument(format!("{}: {e}", path.display()));
    let mut w = csv::Writer::from_path(path).map_err(io)?;
    w.write_record(COLUMNS).map_err(io)?;
    for r in &report.rows {
        let mut cells = row_cells(r);
        for c in cells.iter_mut() {
            if c == "-" {
                c.clear();
            }
        }
        cells[5] = r.matches.to_string();
        w.write_record(&cells).map_err(io)?;
    }
    w.flush().map_err(|e| Error::Argument(format!("{}: {e}", path.display())))
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

fn fmt_point(p: &[i64]) -> String {
    format!("({})", join(p))
}

pub fn render_report(report: &Report) -> String {
    let mut s = String::new();
    let inst = &report.instance;
    let pts: Vec<String> = inst.points.iter().map(|p| fmt_point(p)).collect();
    let _ = writeln!(s, "instance        d = {}, A = {{{}}}", inst.d, pts.join(", "));
    let _ = writeln!(s, "classification  {}", report.classification);
    let p = &report.predicates;
    let _ = writeln!(s, "A-A index       {}", p.difference_index);
    if let Some(v) = &p.vertex_lattice_index {
        let _ = writeln!(s, "vertex index    {v}");
    }
    let _ = writeln!(s, "hull            {}", p.hull_class);
    if let Some(h) = &report.hull {
        let _ = writeln!(s, "hull vertices   [{}]", join(&h.vertex_indices));
    }
    if let Some(o) = &p.origin_location {
        let _ = writeln!(s, "origin          {o}");
    }
    if let Some(w) = &p.w_location {
        let _ = writeln!(s, "w               {w}");
    }
    if let Some(rd) = &report.radon {
        let _ = writeln!(s, "lambda          ({})", join(&rd.lambda));
        let _ = writeln!(s, "X1 / X2 / zero  [{}] / [{}] / [{}]", join(&rd.x1), join(&rd.x2), join(&rd.zero_set));
        let _ = writeln!(s, "r               {}", rd.r);
    }
    if let Some(l) = &report.lattice {
        let _ = writeln!(s, "N_Lambda        {}", l.n_lambda);
        let _ = writeln!(s, "mu              ({})", l.mu.join(", "));
        let _ = writeln!(s, "q               ({})", join(&l.q));
        let _ = writeln!(s, "lcc             {}", l.lcc);
        let _ = writeln!(s, "n'              {}", l.n_prime);
        let _ = writeln!(s, "lambda          ({})", join(&l.lambda_ints));
        let _ = writeln!(s, "M_w             {}", l.m_w);
        let _ = writeln!(s, "equality        {}", l.equality);
    }
    if !report.rows.is_empty() {
        let cells: Vec<[String; 6]> = report.rows.iter().map(row_cells).collect();
        let widths: Vec<usize> = (0..6)
            .map(|c| cells.iter().map(|r| r[c].len()).chain([COLUMNS[c].len()]).max().unwrap_or(0))
            .collect();
        s.push('\n');
        let header: Vec<String> = COLUMNS.iter().zip(&widths).map(|(h, w)| format!("{h:>w$}")).collect();
        let _ = writeln!(s, "{}", header.join("  "));
        for r in &cells {
            let line: Vec<String> = r.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
            let _ = writeln!(s, "{}", line.join("  "));
        }
        let bad = report.rows.iter().filter(|r| !r.matches).count();
        let _ = writeln!(s, "\n{} rows, {} mismatches", report.rows.len(), bad);
    }
    s
}

pub fn render_scan(summary: &ScanSummary) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "scan d = {}, family = {}, seed = {}, bound = {}",
        summary.d, summary.family, summary.seed, summary.bound
    );
    let _ = writeln!(s, "passed {}/{}", summary.passed, summary.count);
    let _ = writeln!(s, "exact checked {}", summary.exact_checked);
    let _ = writeln!(
        s,
        "candidates {} (rejected: {} hypothesis, {} work)",
        summary.candidates, summary.rejected_hypothesis, summary.rejected_work
    );
    for f in &summary.failures {
        let pts: Vec<String> = f.points.iter().map(|p| fmt_point(p)).collect();
        let _ = writeln!(s, "FAIL #{} A = {{{}}} at h = [{}]", f.index, pts.join(", "), join(&f.rows));
    }
    s
}

pub fn render_khovanskii(r: &KhovanskiiReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "d               {}", r.d);
    let _ = writeln!(s, "h_max           {}", r.h_max);
    let _ = writeln!(s, "h0              {}", r.h0);
    let _ = writeln!(s, "p(h)            {}", r.polynomial());
    let _ = writeln!(s, "degree          {}", cell(&r.degree));
    let _ = writeln!(s, "leading * d!    {}", r.leading_times_dfact);
    let _ = writeln!(s, "vol * d!        {}", r.hull_volume_dfact);
    let _ = writeln!(s, "volume match    {}", r.volume_matches);
    s
}
