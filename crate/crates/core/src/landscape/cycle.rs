use std::fmt;

use serde::{Deserialize, Serialize};

use super::LandscapeError;

/// A periodic residue sequence in canonical form: aperiodic (its length is
/// its minimal period) and the lexicographically least of its rotations.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cycle {
    modulus: u64,
    residues: Vec<u64>,
}

impl Cycle {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn residues(&self) -> &[u64] {
        &self.residues
    }

    pub fn len(&self) -> usize {
        self.residues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.residues.is_empty()
    }

    /// Concatenated digits, as periods are written for small moduli.
    /// `None` when `modulus > 10`.
    pub fn digits(&self) -> Option<String> {
        if self.modulus > 10 {
            return None;
        }
        Some(
            self.residues
                .iter()
                .map(|&d| char::from_digit(d as u32, 10).unwrap())
                .collect(),
        )
    }

    /// Canonical form of the sequence read backwards.
    pub fn reversed(&self) -> Cycle {
        let mut seq = self.residues.clone();
        seq.reverse();
        canonical_unchecked(seq, self.modulus)
    }

    /// Count of zero residues over one period.
    pub fn zero_count(&self) -> usize {
        self.residues.iter().filter(|&&r| r == 0).count()
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.digits() {
            Some(d) => write!(f, "[{d}]"),
            None => write!(f, "{:?}", self.residues),
        }
    }
}

/// Parses a digit string such as `"011"` into a canonical cycle.
pub fn cycle_from_digits(digits: &str, modulus: u64) -> Result<Cycle, LandscapeError> {
    let seq = digits
        .chars()
        .map(|c| c.to_digit(10).map(u64::from))
        .collect::<Option<Vec<_>>>()
        .ok_or(LandscapeError::InvalidSequence)?;
    canonicalize(&seq, modulus)
}

/// Minimal-period reduction followed by the least rotation.
pub fn canonicalize(seq: &[u64], modulus: u64) -> Result<Cycle, LandscapeError> {
    if seq.is_empty() || modulus == 0 || seq.iter().any(|&r| r >= modulus) {
        return Err(LandscapeError::InvalidSequence);
    }
    Ok(canonical_unchecked(seq.to_vec(), modulus))
}

pub(crate) fn canonical_unchecked(mut seq: Vec<u64>, modulus: u64) -> Cycle {
    let period = minimal_period(&seq);
    seq.truncate(period);
    let start = least_rotation(&seq);
    seq.rotate_left(start);
    Cycle {
        modulus,
        residues: seq,
    }
}

/// Entrywise reduction modulo `d`, then canonicalization.
pub fn reduce_cycle(c: &Cycle, d: u64) -> Result<Cycle, LandscapeError> {
    if d == 0 || !c.modulus.is_multiple_of(d) {
        return Err(LandscapeError::NotDivisor {
            divisor: d,
            modulus: c.modulus,
        });
    }
    let seq = c.residues.iter().map(|&r| r % d).collect();
    Ok(canonical_unchecked(seq, d))
}

/// Smallest `p` dividing `len` such that the sequence is `p`-periodic,
/// from the prefix function.
fn minimal_period(seq: &[u64]) -> usize {
    let n = seq.len();
    let mut pi = vec![0usize; n];
    for i in 1..n {
        let mut j = pi[i - 1];
        while j > 0 && seq[i] != seq[j] {
            j = pi[j - 1];
        }
        if seq[i] == seq[j] {
            j += 1;
        }
        pi[i] = j;
    }
    let p = n - pi[n - 1];
    if n.is_multiple_of(p) {
        p
    } else {
        n
    }
}

/// Start index of the lexicographically least rotation (two-pointer scan).
fn least_rotation(seq: &[u64]) -> usize {
    let n = seq.len();
    let (mut i, mut j, mut k) = (0usize, 1usize, 0usize);
    while i < n && j < n && k < n {
        let a = seq[(i + k) % n];
        let b = seq[(j + k) % n];
        if a == b {
            k += 1;
            continue;
        }
        if a > b {
            i += k + 1;
        } else {
            j += k + 1;
        }
        if i == j {
            j += 1;
        }
        k = 0;
    }
    i.min(j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute_canonical(seq: &[u64]) -> Vec<u64> {
        let n = seq.len();
        let period = (1..=n)
            .find(|&p| n.is_multiple_of(p) && (0..n).all(|i| seq[i] == seq[i % p]))
            .unwrap();
        let base = &seq[..period];
        (0..period)
            .map(|s| {
                let mut r = base.to_vec();
                r.rotate_left(s);
                r
            })
            .min()
            .unwrap()
    }

    #[test]
    fn rotation_and_period_examples() {
        assert_eq!(canonicalize(&[1, 1, 0], 2).unwrap().residues(), &[0, 1, 1]);
        assert_eq!(canonicalize(&[0, 1, 1, 0, 1, 1], 2).unwrap().residues(), &[0, 1, 1]);
        assert_eq!(canonicalize(&[0], 1).unwrap().residues(), &[0]);
        assert_eq!(cycle_from_digits("332130", 4).unwrap().digits().unwrap(), "033213");
    }

    #[test]
    fn invalid_sequences() {
        assert_eq!(canonicalize(&[], 3), Err(LandscapeError::InvalidSequence));
        assert_eq!(canonicalize(&[3], 3), Err(LandscapeError::InvalidSequence));
        assert!(cycle_from_digits("1a", 10).is_err());
    }

    #[test]
    fn reductions() {
        let c = canonicalize(&[0, 2, 2, 4, 0, 4, 4, 2], 6).unwrap();
        assert_eq!(reduce_cycle(&c, 2).unwrap().residues(), &[0]);
        let long = cycle_from_digits("011235213415055431453251", 6).unwrap();
        assert_eq!(reduce_cycle(&long, 3).unwrap().digits().unwrap(), "01120221");
        assert_eq!(reduce_cycle(&long, 6).unwrap(), long);
        assert_eq!(
            reduce_cycle(&long, 4),
            Err(LandscapeError::NotDivisor { divisor: 4, modulus: 6 })
        );
    }

    #[test]
    fn reversal() {
        let c = cycle_from_digits("112310", 4).unwrap();
        assert_eq!(c.reversed().digits().unwrap(), "013211");
    }

    proptest! {
        #[test]
        fn matches_brute_force(seq in prop::collection::vec(0u64..3, 1..14)) {
            let c = canonicalize(&seq, 3).unwrap();
            let expected = brute_canonical(&seq);
            prop_assert_eq!(c.residues(), expected.as_slice());
        }

        #[test]
        fn rotation_invariant(seq in prop::collection::vec(0u64..4, 1..12), shift in 0usize..12) {
            let mut rotated = seq.clone();
            rotated.rotate_left(shift % seq.len());
            prop_assert_eq!(canonicalize(&seq, 4).unwrap(), canonicalize(&rotated, 4).unwrap());
        }

        #[test]
        fn repetition_collapses(seq in prop::collection::vec(0u64..5, 1..8), reps in 1usize..4) {
            let repeated: Vec<u64> = seq.iter().copied().cycle().take(seq.len() * reps).collect();
            prop_assert_eq!(canonicalize(&seq, 5).unwrap(), canonicalize(&repeated, 5).unwrap());
        }
    }
}
