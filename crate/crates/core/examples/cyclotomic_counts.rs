//! Closed-form cycle counts for cyclotomic families against brute force.
//!
//! ```text
//! cargo run --release --example cyclotomic_counts
//! ```

use period_landscape::landscape::{enumerate_landscape, Limits};
use period_landscape::predict::{necklace_count, verify_prediction, Family};

fn main() {
    let limits = Limits::default();
    let families = [
        (Family::PhiP { p: 5 }, 1..=12),
        (Family::Phi2P { p: 5 }, 1..=10),
        (Family::PhiPj { p: 3, j: 2 }, 1..=12),
        (Family::PowerCycle { n: 6 }, 1..=6),
    ];
    for (family, moduli) in families {
        let r = family.recurrence().unwrap();
        println!("{family}: {r}");
        for m in moduli {
            let observed = enumerate_landscape(&r, m, false, &limits).unwrap();
            match family.predict(m) {
                Ok(pred) => {
                    let v = verify_prediction(&pred, &observed);
                    let mark = if v.matched { "ok" } else { "MISMATCH" };
                    println!("  m={m:<3} {:>8} cycles {}  [{mark}, {}]", pred.total, pred.by_length, pred.source);
                }
                Err(e) => println!("  m={m:<3} observed {}  [{e}]", observed.spectrum()),
            }
        }
    }

    println!("\naperiodic necklaces M(m, r):");
    for m in 2..=5 {
        let row: Vec<u64> = (1..=8).map(|r| necklace_count(m, r).unwrap()).collect();
        println!("  m={m} {row:?}");
    }
}
