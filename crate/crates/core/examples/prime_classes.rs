//! Fibonacci landscapes modulo primes fall into three classes decided by
//! `(5/p)` and the number of zeros in the Pisano period.
//!
//! ```text
//! cargo run --release --example prime_classes [p_max]
//! ```

use period_landscape::fibclass::{classify_prime, ClassLabel};
use period_landscape::landscape::Limits;
use period_landscape::numtheory::primes_up_to;

fn main() {
    let p_max: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(100);
    let limits = Limits::default();
    println!("{:>5} {:>7} {:>5} {:>6} {:>5} {:>8}  spectrum", "p", "class", "alpha", "pisano", "zeros", "cycles");
    let mut mismatches = 0;
    for p in primes_up_to(p_max) {
        let c = classify_prime(p, &limits).unwrap();
        let alpha = c.alpha.map(|a| a.to_string()).unwrap_or_else(|| "-".into());
        let flag = match (c.class_label, c.prediction_matches()) {
            (ClassLabel::Special, _) | (_, true) => "",
            (_, false) => {
                mismatches += 1;
                "  MISMATCH"
            }
        };
        println!(
            "{p:>5} {:>7} {alpha:>5} {:>6} {:>5} {:>8}  {}{flag}",
            c.class_label.to_string(),
            c.pisano,
            c.zero_count,
            c.observed_spectrum.total_cycles(),
            c.observed_spectrum
        );
    }
    println!("{mismatches} mismatches");
}
