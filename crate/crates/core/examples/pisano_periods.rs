//! Pisano periods and the number of zeros in each.
//!
//! ```text
//! cargo run --example pisano_periods [max_m]
//! ```

use period_landscape::fibclass::zeros_in_pisano;
use period_landscape::landscape::{pisano_period, Limits};

fn main() {
    let max_m: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(30);
    let limits = Limits::default();
    for m in 1..=max_m {
        let period = pisano_period(m, &limits).unwrap();
        let zeros = zeros_in_pisano(m, &limits).unwrap();
        println!("pi({m:>3}) = {period:>5}  zeros {zeros}");
    }
}
