//! Cyclotomic polynomials and the recurrences they define.
//!
//! ```text
//! cargo run --example polynomials
//! ```

use period_landscape::polynomial::{cyclotomic, parity_transform, recurrence_from, Polynomial};

fn main() {
    for n in [1, 2, 3, 4, 5, 6, 8, 9, 10, 12] {
        let phi = cyclotomic(n).unwrap();
        let r = recurrence_from(&phi).unwrap();
        println!("Phi_{n:<3} = {phi:<32} {r}");
    }

    // The first cyclotomic polynomial with a coefficient outside {-1, 0, 1}.
    let phi105 = cyclotomic(105).unwrap();
    let big: Vec<usize> = (0..=48).filter(|&i| phi105.coeff(i).abs() > 1).collect();
    println!("\nPhi_105 has degree {:?}; |coefficient| > 1 at x^{big:?}", phi105.degree());

    // x^12 - 1 is the product of Phi_d over d | 12.
    let product = [1, 2, 3, 4, 6, 12]
        .iter()
        .fold(Polynomial::one(), |acc, &d| acc.checked_mul(&cyclotomic(d).unwrap()).unwrap());
    println!("prod Phi_d (d | 12) = {product}");

    let fib = recurrence_from(&Polynomial::new(vec![-1, -1, 1])).unwrap();
    println!("\n{fib}\n  parity transform: {}", parity_transform(&fib));
}
