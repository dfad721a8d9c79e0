//! Every period of the Fibonacci recurrence and its parity transform for
//! small moduli, written as digit strings.
//!
//! ```text
//! cargo run --example landscape_table [max_m]
//! ```

use period_landscape::landscape::{enumerate_landscape, pisano_period, Limits};
use period_landscape::polynomial::Recurrence;

fn main() {
    let max_m: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(6).min(10);
    let limits = Limits::default();
    for (name, r) in [("fibonacci", Recurrence::fibonacci()), ("parity", Recurrence::parity())] {
        println!("{name}: {r}");
        for m in 1..=max_m {
            let l = enumerate_landscape(&r, m, true, &limits).unwrap();
            let digits: Vec<String> = l.cycles().unwrap().iter().filter_map(|c| c.digits()).collect();
            println!("  m={m:<2} {:<28} {}", l.spectrum().to_string(), digits.join(" "));
        }
    }
    let periods: Vec<u64> = (1..=max_m).map(|m| pisano_period(m, &limits).unwrap()).collect();
    println!("pisano: {periods:?}");
}
