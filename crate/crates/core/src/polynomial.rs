//! Exact integer polynomials, cyclotomic polynomials, and the correspondence
//! between a monic characteristic polynomial and its linear recurrence.
//!
//! A recurrence `a_n = r_1 a_{n-1} + ... + r_k a_{n-k}` has characteristic
//! polynomial `x^k - r_1 x^{k-1} - ... - r_k`. All coefficient arithmetic is
//! checked; an overflow is reported, never wrapped.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numtheory::divisors;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("coefficient overflow while computing {0}")]
    Overflow(String),
    #[error("polynomial is not monic (leading coefficient {0})")]
    NotMonic(i64),
    #[error("polynomial must have degree at least 1")]
    ConstantPolynomial,
    #[error("division left a nonzero remainder")]
    InexactDivision,
    #[error("cyclotomic index must be positive")]
    ZeroIndex,
    #[error("recurrence needs at least one coefficient")]
    EmptyRecurrence,
    #[error("trailing recurrence coefficient r_k must be nonzero")]
    ZeroTrailingCoefficient,
}

/// Polynomial with exact `i64` coefficients; `coeffs[i]` multiplies `x^i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Polynomial {
    coeffs: Vec<i64>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial { coeffs: vec![1] }
    }

    /// `x^n - 1`.
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut coeffs = vec![0; n + 1];
        coeffs[0] -= 1;
        coeffs[n] += 1;
        Polynomial::new(coeffs)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> i64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> i64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn max_abs_coeff(&self) -> i64 {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or(0)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Ok(Polynomial::zero());
        }
        let overflow = || PolyError::Overflow("polynomial product".into());
        let mut out = vec![0i64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                let term = a.checked_mul(b).ok_or_else(overflow)?;
                out[i + j] = out[i + j].checked_add(term).ok_or_else(overflow)?;
            }
        }
        Ok(Polynomial::new(out))
    }

    /// Exact quotient by a monic divisor. Fails if the remainder is nonzero.
    pub fn exact_div(&self, divisor: &Polynomial) -> Result<Polynomial, PolyError> {
        let dd = divisor.degree().ok_or(PolyError::ConstantPolynomial)?;
        if !divisor.is_monic() {
            return Err(PolyError::NotMonic(divisor.leading()));
        }
        let Some(nd) = self.degree() else {
            return Ok(Polynomial::zero());
        };
        if nd < dd {
            return Err(PolyError::InexactDivision);
        }
        let overflow = || PolyError::Overflow("polynomial division".into());
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0i64; nd - dd + 1];
        for shift in (0..=nd - dd).rev() {
            let q = rem[shift + dd];
            quot[shift] = q;
            if q == 0 {
                continue;
            }
            for (j, &c) in divisor.coeffs.iter().enumerate() {
                let term = q.checked_mul(c).ok_or_else(overflow)?;
                rem[shift + j] = rem[shift + j].checked_sub(term).ok_or_else(overflow)?;
            }
        }
        if rem.iter().any(|&c| c != 0) {
            return Err(PolyError::InexactDivision);
        }
        Ok(Polynomial::new(quot))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.unsigned_abs();
            match (i, a) {
                (0, _) => write!(f, "{a}")?,
                (1, 1) => write!(f, "x")?,
                (1, _) => write!(f, "{a}x")?,
                (_, 1) => write!(f, "x^{i}")?,
                _ => write!(f, "{a}x^{i}")?,
            }
        }
        Ok(())
    }
}

/// The `n`-th cyclotomic polynomial, by exact division of `x^n - 1` by every
/// `Phi_d` with `d | n`, `d < n`.
pub fn cyclotomic(n: u64) -> Result<Polynomial, PolyError> {
    if n == 0 {
        return Err(PolyError::ZeroIndex);
    }
    let mut cache = HashMap::new();
    cyclotomic_cached(n, &mut cache)
}

fn cyclotomic_cached(
    n: u64,
    cache: &mut HashMap<u64, Polynomial>,
) -> Result<Polynomial, PolyError> {
    if let Some(p) = cache.get(&n) {
        return Ok(p.clone());
    }
    let mut result = Polynomial::x_pow_minus_one(n as usize);
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let phi_d = cyclotomic_cached(d, cache)?;
        result = result.exact_div(&phi_d)?;
    }
    cache.insert(n, result.clone());
    Ok(result)
}

/// Order-`k` linear recurrence `a_n = sum_i r_i a_{n-i}` with `r_k != 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Recurrence {
    coeffs: Vec<i64>,
}

impl Recurrence {
    /// `coeffs[i - 1]` is `r_i`.
    pub fn new(coeffs: Vec<i64>) -> Result<Self, PolyError> {
        match coeffs.last() {
            None => Err(PolyError::EmptyRecurrence),
            Some(0) => Err(PolyError::ZeroTrailingCoefficient),
            Some(_) => Ok(Recurrence { coeffs }),
        }
    }

    /// `a_n = a_{n-1} + a_{n-2}`.
    pub fn fibonacci() -> Self {
        Recurrence { coeffs: vec![1, 1] }
    }

    /// `a_n = -a_{n-1} + a_{n-2}`.
    pub fn parity() -> Self {
        Recurrence { coeffs: vec![-1, 1] }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// `r_lag` for `1 <= lag <= k`.
    pub fn coeff(&self, lag: usize) -> i64 {
        self.coeffs[lag - 1]
    }

    pub fn trailing(&self) -> i64 {
        self.coeffs[self.coeffs.len() - 1]
    }

    /// `x^k - r_1 x^{k-1} - ... - r_k`.
    pub fn characteristic_polynomial(&self) -> Result<Polynomial, PolyError> {
        let k = self.order();
        let mut coeffs = vec![0i64; k + 1];
        coeffs[k] = 1;
        for (i, &r) in self.coeffs.iter().enumerate() {
            coeffs[k - (i + 1)] = r
                .checked_neg()
                .ok_or_else(|| PolyError::Overflow("characteristic polynomial".into()))?;
        }
        Ok(Polynomial::new(coeffs))
    }
}

impl fmt::Display for Recurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a_n =")?;
        let mut first = true;
        for (i, &r) in self.coeffs.iter().enumerate() {
            if r == 0 {
                continue;
            }
            let lag = i + 1;
            let a = r.unsigned_abs();
            let mag = if a == 1 { String::new() } else { a.to_string() };
            match (first, r < 0) {
                (true, false) => write!(f, " {mag}a_{{n-{lag}}}")?,
                (true, true) => write!(f, " -{mag}a_{{n-{lag}}}")?,
                (false, false) => write!(f, " + {mag}a_{{n-{lag}}}")?,
                (false, true) => write!(f, " - {mag}a_{{n-{lag}}}")?,
            }
            first = false;
        }
        Ok(())
    }
}

/// Recurrence whose characteristic polynomial is `p`: `r_i = -[x^{k-i}] p`.
pub fn recurrence_from(p: &Polynomial) -> Result<Recurrence, PolyError> {
    let k = p.degree().filter(|&k| k >= 1).ok_or(PolyError::ConstantPolynomial)?;
    if !p.is_monic() {
        return Err(PolyError::NotMonic(p.leading()));
    }
    let coeffs = (1..=k)
        .map(|i| {
            p.coeff(k - i)
                .checked_neg()
                .ok_or_else(|| PolyError::Overflow("recurrence coefficients".into()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Recurrence::new(coeffs)
}

/// Negates the coefficients at odd lags: `r_i -> (-1)^i r_i`.
pub fn parity_transform(r: &Recurrence) -> Recurrence {
    let coeffs = r
        .coeffs
        .iter()
        .enumerate()
        .map(|(i, &c)| if (i + 1) % 2 == 1 { -c } else { c })
        .collect();
    Recurrence { coeffs }
}
