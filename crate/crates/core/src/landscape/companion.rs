//! Companion-matrix cross-check for cycle lengths.
//!
//! For state columns `s = (a_0, ..., a_{k-1})`, the companion matrix `C`
//! maps `s` to `(a_1, ..., a_k)`. Every cycle length divides the
//! multiplicative order of `C` modulo `m`.

use super::{cycle_of_state, state_count, LandscapeError, Limits};
use crate::polynomial::Recurrence;

type Matrix = Vec<Vec<u64>>;

fn identity(k: usize) -> Matrix {
    (0..k)
        .map(|i| (0..k).map(|j| u64::from(i == j)).collect())
        .collect()
}

/// Multiplicative order of the companion matrix modulo `m`.
///
/// Powers are built one left-multiplication at a time: `C * P` shifts the rows
/// of `P` up and forms the last row from the recurrence, which costs `O(k^2)`.
pub fn companion_order(r: &Recurrence, m: u64, cap: u64) -> Result<u64, LandscapeError> {
    let k = r.order();
    let last_row: Vec<u64> = (0..k)
        .map(|j| r.coeff(k - j).rem_euclid(m as i64) as u64)
        .collect();
    let id = identity(k);
    if m == 1 {
        return Ok(1);
    }
    let mut power = id.clone();
    for t in 1..=cap {
        let new_last: Vec<u64> = (0..k)
            .map(|col| {
                (0..k).fold(0u64, |acc, row| (acc + last_row[row] * power[row][col]) % m)
            })
            .collect();
        power.remove(0);
        power.push(new_last);
        if power == id {
            return Ok(t);
        }
    }
    Err(LandscapeError::OrderCapExceeded { cap })
}

/// True iff the cycle length through `s` divides the companion-matrix order.
pub fn matrix_order_check(
    r: &Recurrence,
    m: u64,
    s: &[u64],
    limits: &Limits,
) -> Result<bool, LandscapeError> {
    state_count(r, m, limits)?;
    let len = cycle_of_state(r, m, s, limits)?.len() as u64;
    let order = companion_order(r, m, limits.order_cap)?;
    Ok(order % len == 0)
}
