//! Reducing the cycles modulo m to a divisor d groups them by their image;
//! each group carries the same share of states as its image.
//!
//! ```text
//! cargo run --example weight_preservation [m]
//! ```

use period_landscape::fibclass::weight_reports;
use period_landscape::landscape::Limits;

fn main() {
    let m: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(6);
    for report in weight_reports(m, &Limits::default()).unwrap() {
        println!("m={} -> d={}  conserved={}", report.m, report.d, report.holds);
        for g in &report.groups {
            let lifted: Vec<String> = g.lifted.iter().map(|c| c.to_string()).collect();
            println!("  {:<28} {:>6}  <- {} ({})", g.base.to_string(), g.base_weight.to_string(), lifted.join(" "), g.lifted_weight);
        }
    }
}
