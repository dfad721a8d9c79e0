//! Where the smallest |a_n| of a two-sided Fibonacci sequence falls,
//! compared with the arctangent formula.
//!
//! ```text
//! cargo run --release --example minima_distribution [samples] [seed]
//! ```

use period_landscape::minima::{
    find_minimum_position, lucas, mediant_check, minima_probability, simulate_minima, Quadratic, SamplingMode,
    DEFAULT_SHARDS,
};

fn main() {
    let args: Vec<u64> = std::env::args().skip(1).filter_map(|s| s.parse().ok()).collect();
    let samples = args.first().copied().unwrap_or(1_000_000);
    let seed = args.get(1).copied().unwrap_or(42);

    let fib = simulate_minima(samples, SamplingMode::Angle, Quadratic::Fibonacci, seed, DEFAULT_SHARDS).unwrap();
    let par = simulate_minima(samples, SamplingMode::Angle, Quadratic::Parity, seed, DEFAULT_SHARDS).unwrap();
    println!("{:>4} {:>10} {:>10} {:>10} {:>8}", "n", "P(n)", "fibonacci", "parity", "se");
    for n in -6..=7 {
        println!(
            "{n:>4} {:>10.6} {:>10.6} {:>10.6} {:>8.6}",
            minima_probability(n),
            fib.probability(n),
            par.probability(n),
            fib.standard_error(n).unwrap()
        );
    }

    let (a0, a1) = (lucas(5).unwrap(), lucas(6).unwrap());
    let m = find_minimum_position(a0, a1, Quadratic::Fibonacci).unwrap();
    println!("\n(a0, a1) = ({a0}, {a1}): minimum |a| = {} at n = {} and {:?}", m.min_abs, m.position, m.tie);
    println!("mediant property up to 30: {}", mediant_check(30).unwrap().holds);
}
