//! A recurrence and its parity transform have the same cycle spectrum; for
//! the Fibonacci pair, reversing each cycle maps one landscape onto the other.
//!
//! ```text
//! cargo run --release --example chiral_symmetry [--extended]
//! ```
//!
//! `--extended` raises the state cap and compares spectra of the order-6 pair
//! up to m = 19 (about 47 million states at the top).

use period_landscape::fibclass::check_chiral;
use period_landscape::landscape::Limits;
use period_landscape::polynomial::Recurrence;

fn main() {
    let extended = std::env::args().any(|a| a == "--extended");
    let limits = Limits::default();

    let fib = Recurrence::fibonacci();
    let failures: Vec<u64> = (1..=60)
        .filter(|&m| !check_chiral(&fib, m, &limits).unwrap().holds)
        .collect();
    println!("{fib}: reversal bijection for m <= 60, failures {failures:?}");

    let order6 = Recurrence::new(vec![0, 0, 1, 0, 0, 1]).unwrap();
    let (top, limits) = if extended {
        (19, Limits { state_cap: 1 << 26, ..limits })
    } else {
        (8, limits)
    };
    for m in 1..=top {
        let r = check_chiral(&order6, m, &limits).unwrap();
        let reversal = r.reversal_bijective.map(|b| b.to_string()).unwrap_or_else(|| "not checked".into());
        println!("  {order6} vs {}: m={m:<2} spectra equal {}, reversal {reversal}", r.partner, r.spectra_equal);
    }

    // Not every recurrence is reversal-symmetric with its partner.
    let phi3 = Recurrence::new(vec![-1, -1]).unwrap();
    let r = check_chiral(&phi3, 7, &Limits::default()).unwrap();
    println!("{phi3} mod 7: spectra equal {}, reversal {:?}", r.spectra_equal, r.reversal_bijective);
}
