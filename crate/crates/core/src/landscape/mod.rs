//! Brute-force period landscapes.
//!
//! The shift map `(a_0, ..., a_{k-1}) -> (a_1, ..., a_k)` of a recurrence is a
//! permutation of `(Z/mZ)^k` whenever `gcd(r_k, m) = 1`, so the state space
//! splits into disjoint cycles. [`enumerate_landscape`] walks every cycle once
//! and records its length, and optionally its canonical residue sequence.
//!
//! States are encoded as base-`m` integers `a_0 + a_1 m + ... + a_{k-1} m^{k-1}`
//! and visited flags live in a flat bitmap, so memory is `m^k` bits.

mod companion;
mod cycle;
mod spectrum;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numtheory::gcd;
use crate::polynomial::Recurrence;

pub use companion::{companion_order, matrix_order_check};
pub use cycle::{canonicalize, cycle_from_digits, reduce_cycle, Cycle};
pub use spectrum::{Spectrum, SpectrumEntry};

pub const DEFAULT_STATE_CAP: u64 = 1 << 27;
pub const DEFAULT_KEEP_CYCLES_CAP: u64 = 1 << 20;
pub const DEFAULT_ORDER_CAP: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LandscapeError {
    #[error("modulus must be at least 1")]
    ZeroModulus,
    #[error("modulus {0} is too large for single-word residue arithmetic")]
    ModulusTooLarge(u64),
    #[error("shift map is not a bijection: gcd(r_k = {trailing}, {modulus}) > 1")]
    NonInvertible { trailing: i64, modulus: u64 },
    #[error("state space of {states} states exceeds the cap of {cap}")]
    CapExceeded { states: u128, cap: u64 },
    #[error("companion matrix order exceeds the cap of {cap}")]
    OrderCapExceeded { cap: u64 },
    #[error("{divisor} does not divide {modulus}")]
    NotDivisor { divisor: u64, modulus: u64 },
    #[error("state must have {expected} residues in [0, {modulus})")]
    InvalidState { expected: usize, modulus: u64 },
    #[error("sequence must be nonempty with residues below the modulus")]
    InvalidSequence,
}

/// Resource caps for enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Largest `m^k` that will be enumerated.
    pub state_cap: u64,
    /// Explicit cycles are kept only when `m^k` is at most this.
    pub keep_cycles_cap: u64,
    /// Largest companion-matrix order searched for.
    pub order_cap: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            state_cap: DEFAULT_STATE_CAP,
            keep_cycles_cap: DEFAULT_KEEP_CYCLES_CAP,
            order_cap: DEFAULT_ORDER_CAP,
        }
    }
}

/// All cycles of a recurrence's shift map modulo `m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Landscape {
    modulus: u64,
    recurrence: Recurrence,
    spectrum: Spectrum,
    cycles: Option<Vec<Cycle>>,
}

impl Landscape {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn recurrence(&self) -> &Recurrence {
        &self.recurrence
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    /// Canonical cycles sorted by length then residues, if they were retained.
    pub fn cycles(&self) -> Option<&[Cycle]> {
        self.cycles.as_deref()
    }

    pub fn total_cycles(&self) -> u64 {
        self.spectrum.total_cycles()
    }
}

/// Checks preconditions and returns `m^k`.
pub(crate) fn state_count(
    r: &Recurrence,
    m: u64,
    limits: &Limits,
) -> Result<u64, LandscapeError> {
    if m == 0 {
        return Err(LandscapeError::ZeroModulus);
    }
    if m > u32::MAX as u64 {
        return Err(LandscapeError::ModulusTooLarge(m));
    }
    let trailing = r.trailing().rem_euclid(m as i64) as u64;
    if gcd(trailing, m) != 1 {
        return Err(LandscapeError::NonInvertible {
            trailing: r.trailing(),
            modulus: m,
        });
    }
    let states = (m as u128).checked_pow(r.order() as u32).unwrap_or(u128::MAX);
    if states > limits.state_cap as u128 {
        return Err(LandscapeError::CapExceeded {
            states,
            cap: limits.state_cap,
        });
    }
    Ok(states as u64)
}

/// Shift map of a recurrence modulo `m` acting on a sliding window.
struct ShiftMap {
    m: u64,
    k: usize,
    /// `(lag, r_lag mod m)` for every nonzero reduced coefficient.
    taps: Vec<(usize, u64)>,
    /// `m^{k-1}`, the place value of the newest residue.
    top: u64,
}

impl ShiftMap {
    fn new(r: &Recurrence, m: u64) -> Self {
        let k = r.order();
        let taps = (1..=k)
            .map(|lag| (lag, r.coeff(lag).rem_euclid(m as i64) as u64))
            .filter(|&(_, c)| c != 0)
            .collect();
        ShiftMap {
            m,
            k,
            taps,
            top: m.pow(k as u32 - 1),
        }
    }

    fn decode(&self, mut index: u64, window: &mut [u64]) {
        for slot in window.iter_mut() {
            *slot = index % self.m;
            index /= self.m;
        }
    }

    /// Advances the window in place. `head` points at the oldest residue;
    /// returns the new residue.
    #[inline]
    fn step(&self, window: &mut [u64], head: &mut usize) -> u64 {
        let k = self.k;
        let mut acc = 0u64;
        for &(lag, c) in &self.taps {
            let mut pos = *head + k - lag;
            if pos >= k {
                pos -= k;
            }
            acc = (acc + c * window[pos]) % self.m;
        }
        window[*head] = acc;
        *head += 1;
        if *head == k {
            *head = 0;
        }
        acc
    }

    /// Walks the orbit of `start`, calling `visit(index, oldest_residue)` for
    /// each state before stepping. Returns the orbit length.
    fn walk(&self, start: u64, window: &mut [u64], mut visit: impl FnMut(u64, u64)) -> u64 {
        self.decode(start, window);
        let mut head = 0usize;
        let mut index = start;
        let mut len = 0u64;
        loop {
            visit(index, window[head]);
            let next = self.step(window, &mut head);
            index = index / self.m + next * self.top;
            len += 1;
            if index == start {
                return len;
            }
        }
    }
}

/// Decomposes `(Z/mZ)^k` into cycles of the shift map.
///
/// Cycles are retained only when `keep_cycles` is set and `m^k` is within
/// `limits.keep_cycles_cap`.
pub fn enumerate_landscape(
    r: &Recurrence,
    m: u64,
    keep_cycles: bool,
    limits: &Limits,
) -> Result<Landscape, LandscapeError> {
    let states = state_count(r, m, limits)?;
    let keep = keep_cycles && states <= limits.keep_cycles_cap;
    let map = ShiftMap::new(r, m);
    let mut visited = vec![0u64; (states as usize).div_ceil(64)];
    let mut window = vec![0u64; r.order()];
    let mut spectrum = Spectrum::new();
    let mut cycles = keep.then(Vec::new);
    let mut seq = Vec::new();

    for start in 0..states {
        if visited[(start >> 6) as usize] >> (start & 63) & 1 == 1 {
            continue;
        }
        seq.clear();
        let len = map.walk(start, &mut window, |index, residue| {
            visited[(index >> 6) as usize] |= 1 << (index & 63);
            if keep {
                seq.push(residue);
            }
        });
        spectrum.add(len, 1);
        if let Some(cycles) = cycles.as_mut() {
            cycles.push(cycle::canonical_unchecked(seq.clone(), m));
        }
    }

    if let Some(cycles) = cycles.as_mut() {
        cycles.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.residues().cmp(b.residues())));
    }
    Ok(Landscape {
        modulus: m,
        recurrence: r.clone(),
        spectrum,
        cycles,
    })
}

fn validate_state(r: &Recurrence, m: u64, s: &[u64]) -> Result<(), LandscapeError> {
    if s.len() != r.order() || s.iter().any(|&x| x >= m) {
        return Err(LandscapeError::InvalidState {
            expected: r.order(),
            modulus: m,
        });
    }
    Ok(())
}

/// The residue sequence generated from `s`, over exactly one period, in
/// generation order (not canonicalized).
pub fn orbit_of_state(
    r: &Recurrence,
    m: u64,
    s: &[u64],
    limits: &Limits,
) -> Result<Vec<u64>, LandscapeError> {
    state_count(r, m, limits)?;
    validate_state(r, m, s)?;
    let map = ShiftMap::new(r, m);
    let start = s.iter().rev().fold(0u64, |acc, &x| acc * m + x);
    let mut window = vec![0u64; r.order()];
    let mut seq = Vec::new();
    map.walk(start, &mut window, |_, residue| seq.push(residue));
    Ok(seq)
}

/// Canonical cycle through the state `s = (a_0, ..., a_{k-1})`.
pub fn cycle_of_state(
    r: &Recurrence,
    m: u64,
    s: &[u64],
    limits: &Limits,
) -> Result<Cycle, LandscapeError> {
    let seq = orbit_of_state(r, m, s, limits)?;
    Ok(cycle::canonical_unchecked(seq, m))
}

/// Pisano period: length of the Fibonacci orbit of `(0, 1)` modulo `m`.
pub fn pisano_period(m: u64, limits: &Limits) -> Result<u64, LandscapeError> {
    if m == 0 {
        return Err(LandscapeError::ZeroModulus);
    }
    let seq = orbit_of_state(&Recurrence::fibonacci(), m, &[0, 1 % m], limits)?;
    Ok(seq.len() as u64)
}

/// True when `c` is closed under the recurrence: every cyclic window of `k`
/// residues produces the residue that follows it.
pub fn satisfies_recurrence(r: &Recurrence, c: &Cycle) -> bool {
    let m = c.modulus() as i128;
    let seq = c.residues();
    let n = seq.len();
    (0..n).all(|t| {
        let predicted = (1..=r.order())
            .map(|lag| r.coeff(lag) as i128 * seq[(t + n * lag - lag) % n] as i128)
            .sum::<i128>()
            .rem_euclid(m);
        predicted == seq[t] as i128
    })
}
