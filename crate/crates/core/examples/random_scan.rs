//! Seeded random instances verified against enumeration, the same loop the
//! `scan` subcommand runs.
//!
//! cargo run --release --example random_scan [seed]

use iterated_sumsets::sampling::{scan, Family, SamplerConfig};
use iterated_sumsets::sumset::Budget;

fn main() -> iterated_sumsets::Result<()> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(7);
    for (d, family) in [(1, Family::D2), (2, Family::D2), (1, Family::D3), (2, Family::D3)] {
        let s = scan(seed, 25, SamplerConfig::new(d, family, 5), Budget::default())?;
        println!(
            "{family} d = {d}: {}/{} passed, {} with exact values, {} candidates drawn",
            s.passed, s.count, s.exact_checked, s.candidates
        );
        for f in &s.failures {
            println!("  failure {:?} at h = {:?}", f.points, f.rows);
        }
    }
    Ok(())
}
