//! How the Fibonacci landscape modulo p grows into the landscape modulo p^k.
//!
//! ```text
//! cargo run --release --example self_similarity [p] [k_max]
//! ```

use period_landscape::fibclass::check_self_similarity;
use period_landscape::landscape::Limits;

fn main() {
    let args: Vec<u64> = std::env::args().skip(1).filter_map(|s| s.parse().ok()).collect();
    let primes = match args.first() {
        Some(&p) => vec![p],
        None => vec![3, 11, 19, 47, 5],
    };
    let k_max = args.get(1).copied().unwrap_or(2) as u32;
    let limits = Limits::default();
    for p in primes {
        match check_self_similarity(p, k_max, &limits) {
            Ok(r) => {
                println!("p={p} class {} holds={}", r.class_label, r.holds);
                for level in &r.levels {
                    println!("  {:>8}: {}", level.modulus, level.spectrum);
                }
                for t in &r.transitions {
                    for v in &t.violations {
                        println!("  {} -> {}: {v}", t.from, t.to);
                    }
                }
            }
            Err(e) => println!("p={p}: {e}"),
        }
    }
}
