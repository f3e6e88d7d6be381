//! Builds the same report the CLI prints with `verify --json`.
//!
//! cargo run --example json_report

use iterated_sumsets::d3::Roles;
use iterated_sumsets::report::{verify, InstanceFile, Mode};
use iterated_sumsets::sumset::Budget;

fn main() -> iterated_sumsets::Result<()> {
    let file = InstanceFile::parse(r#"{"d": 1, "points": [[0], [-1], [2], [1]]}"#)?;
    let set = file.point_set()?;
    let report = verify(&set, &Roles::default(), 6, Mode::All, Budget::default())?;
    println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    println!("all rows consistent: {}", report.all_match());
    Ok(())
}
