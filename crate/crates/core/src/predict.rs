//! Closed-form period-count predictors for cyclotomic recurrences and the
//! necklace machinery they use.
//!
//! Every formula is evaluated in exact integers. Each division is checked;
//! a remainder surfaces as [`PredictError::IntegralityViolation`] so a
//! failing formula is reported as a counterexample instead of panicking.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::landscape::{Landscape, Spectrum};
use crate::numtheory::{divisors, euler_phi, factorize, is_prime};
use crate::polynomial::{cyclotomic, recurrence_from, PolyError, Polynomial, Recurrence};

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize, Deserialize)]
pub enum PredictError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} must be an odd prime")]
    NotOddPrime(u64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("no formula for Phi_{{2p}} with p = {p} when gcd({m}, {two_p}) = 1", two_p = 2 * p)]
    UncoveredCase { p: u64, m: u64 },
    #[error("{formula}: {numerator} is not divisible by {denominator}")]
    IntegralityViolation {
        formula: String,
        numerator: i128,
        denominator: i128,
    },
    #[error("breakdown sums to {breakdown} but the closed-form total is {total}")]
    InconsistentTotal { breakdown: u64, total: u64 },
    #[error("integer overflow evaluating {0}")]
    Overflow(String),
}

/// Recurrence families that have a count formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    /// `Phi_p` for a prime `p`.
    PhiP { p: u64 },
    /// `Phi_{2p}` for an odd prime `p`.
    Phi2P { p: u64 },
    /// `Phi_{p^j}`.
    PhiPj { p: u64, j: u32 },
    /// `x^n - 1`.
    PowerCycle { n: u64 },
}

impl Family {
    pub fn polynomial(&self) -> Result<Polynomial, PolyError> {
        match *self {
            Family::PhiP { p } => cyclotomic(p),
            Family::Phi2P { p } => cyclotomic(2 * p),
            Family::PhiPj { p, j } => cyclotomic(p.pow(j)),
            Family::PowerCycle { n } => Ok(Polynomial::x_pow_minus_one(n as usize)),
        }
    }

    pub fn recurrence(&self) -> Result<Recurrence, PolyError> {
        recurrence_from(&self.polynomial()?)
    }

    pub fn predict(&self, m: u64) -> Result<SpectrumPrediction, PredictError> {
        match *self {
            Family::PhiP { p } => predict_phi_p(p, m),
            Family::Phi2P { p } => predict_phi_2p(p, m),
            Family::PhiPj { p, j } => predict_phi_pj(p, j, m),
            Family::PowerCycle { n } => predict_power_cycle(n, m),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Family::PhiP { p } => write!(f, "Phi_{p}"),
            Family::Phi2P { p } => write!(f, "Phi_{}", 2 * p),
            Family::PhiPj { p, j } => write!(f, "Phi_{}", p.pow(j)),
            Family::PowerCycle { n } => write!(f, "x^{n}-1"),
        }
    }
}

/// Predicted period spectrum for one `(family, m)` instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumPrediction {
    pub family: Family,
    pub modulus: u64,
    pub total: u64,
    pub by_length: Spectrum,
    /// Which formula case produced the prediction.
    pub source: String,
}

impl SpectrumPrediction {
    fn new(
        family: Family,
        modulus: u64,
        by_length: Spectrum,
        total: u64,
        source: String,
    ) -> Result<Self, PredictError> {
        let breakdown = by_length.total_cycles();
        if breakdown != total {
            return Err(PredictError::InconsistentTotal { breakdown, total });
        }
        Ok(SpectrumPrediction {
            family,
            modulus,
            total,
            by_length,
            source,
        })
    }
}

/// Classic Möbius function by trial division.
pub fn mobius(n: u64) -> i8 {
    assert!(n >= 1, "mobius is defined for n >= 1");
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn pow_i128(base: u64, exp: u64, what: &str) -> Result<i128, PredictError> {
    let exp = u32::try_from(exp).map_err(|_| PredictError::Overflow(what.into()))?;
    (base as i128)
        .checked_pow(exp)
        .ok_or_else(|| PredictError::Overflow(what.into()))
}

/// `numerator / denominator`, failing unless the division is exact and the
/// quotient is a nonnegative `u64`.
pub fn exact_quotient(numerator: i128, denominator: i128, formula: &str) -> Result<u64, PredictError> {
    if denominator == 0 || numerator % denominator != 0 || numerator / denominator < 0 {
        return Err(PredictError::IntegralityViolation {
            formula: formula.into(),
            numerator,
            denominator,
        });
    }
    u64::try_from(numerator / denominator).map_err(|_| PredictError::Overflow(formula.into()))
}

/// Number of aperiodic `m`-ary necklaces of length `r`:
/// `(1/r) * sum_{d | r} mu(d) m^{r/d}`.
pub fn necklace_count(m: u64, r: u64) -> Result<u64, PredictError> {
    if m == 0 || r == 0 {
        return Err(PredictError::InvalidArgument("necklace_count needs m, r >= 1".into()));
    }
    let mut sum = 0i128;
    for d in divisors(r) {
        let mu = mobius(d) as i128;
        if mu == 0 {
            continue;
        }
        let term = pow_i128(m, r / d, "necklace count")?;
        sum = sum
            .checked_add(mu * term)
            .ok_or_else(|| PredictError::Overflow("necklace count".into()))?;
    }
    exact_quotient(sum, r as i128, "necklace count M(m, r)")
}

fn require_prime(p: u64) -> Result<(), PredictError> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(PredictError::NotPrime(p))
    }
}

fn require_modulus(m: u64) -> Result<(), PredictError> {
    if m == 0 {
        Err(PredictError::InvalidArgument("modulus must be at least 1".into()))
    } else {
        Ok(())
    }
}

fn checked_sum(values: &[u64], what: &str) -> Result<u64, PredictError> {
    values
        .iter()
        .try_fold(0u64, |acc, &v| acc.checked_add(v))
        .ok_or_else(|| PredictError::Overflow(what.into()))
}

/// Period counts for the order-`(p-1)` recurrence of `Phi_p`.
///
/// `p | m`: `p` fixed points and `(m^{p-1} - p)/p` cycles of length `p`;
/// otherwise only the zero fixed point and `(m^{p-1} - 1)/p` cycles of length `p`.
pub fn predict_phi_p(p: u64, m: u64) -> Result<SpectrumPrediction, PredictError> {
    require_prime(p)?;
    require_modulus(m)?;
    let family = Family::PhiP { p };
    let states = pow_i128(m, p - 1, "m^(p-1)")?;
    let pi = p as i128;
    if m.is_multiple_of(p) {
        let long = exact_quotient(states - pi, pi, "(m^(p-1) - p) / p")?;
        let total = checked_sum(&[long, p], "total")?;
        let by_length = [(1, p), (p, long)].into_iter().collect();
        SpectrumPrediction::new(family, m, by_length, total, format!("Phi_p, p | m (p = {p})"))
    } else {
        let long = exact_quotient(states - 1, pi, "(m^(p-1) - 1) / p")?;
        let total = checked_sum(&[long, 1], "total")?;
        let by_length = [(1, 1), (p, long)].into_iter().collect();
        SpectrumPrediction::new(family, m, by_length, total, format!("Phi_p, p ∤ m (p = {p})"))
    }
}

/// Period counts for the order-`(p-1)` recurrence of `Phi_{2p}`, `p` an odd prime.
///
/// Only moduli sharing a factor with `2p` have a formula; coprime moduli give
/// [`PredictError::UncoveredCase`].
pub fn predict_phi_2p(p: u64, m: u64) -> Result<SpectrumPrediction, PredictError> {
    if p == 2 || !is_prime(p) {
        return Err(PredictError::NotOddPrime(p));
    }
    require_modulus(m)?;
    let family = Family::Phi2P { p };
    let states = pow_i128(m, p - 1, "m^(p-1)")?;
    let two_pow = pow_i128(2, p - 1, "2^(p-1)")?;
    let pi = p as i128;
    let two_p = 2 * pi;
    let (p_div, two_div) = (m.is_multiple_of(p), m.is_multiple_of(2));

    // Pieces named by the cycle length they count.
    let len2 = || exact_quotient(pi - 1, 2, "(p - 1) / 2");
    let lenp = || exact_quotient(two_pow - 1, pi, "(2^(p-1) - 1) / p");

    let (by_length, total, case) = match (p_div, two_div) {
        (true, true) => {
            let l2 = len2()?;
            let lp = lenp()?;
            let l2p = exact_quotient(
                states - two_pow - pi + 1,
                two_p,
                "(m^(p-1) - 2^(p-1) - p + 1) / 2p",
            )?;
            let total = checked_sum(&[l2p, 1, l2, lp], "total")?;
            let s: Spectrum = [(1, 1), (2, l2), (p, lp), (2 * p, l2p)].into_iter().collect();
            (s, total, "p | m and 2 | m")
        }
        (true, false) => {
            let l2 = len2()?;
            let l2p = exact_quotient(states - pi, two_p, "(m^(p-1) - p) / 2p")?;
            let total = checked_sum(&[l2p, 1, l2], "total")?;
            let s: Spectrum = [(1, 1), (2, l2), (2 * p, l2p)].into_iter().collect();
            (s, total, "p | m")
        }
        (false, true) => {
            let lp = lenp()?;
            let l2p = exact_quotient(states - two_pow, two_p, "(m^(p-1) - 2^(p-1)) / 2p")?;
            let total = checked_sum(&[l2p, 1, lp], "total")?;
            let s: Spectrum = [(1, 1), (p, lp), (2 * p, l2p)].into_iter().collect();
            (s, total, "2 | m")
        }
        (false, false) => return Err(PredictError::UncoveredCase { p, m }),
    };
    SpectrumPrediction::new(family, m, by_length, total, format!("Phi_2p, {case} (p = {p})"))
}

/// Period counts for `Phi_{p^j}`, of order `p^j - p^{j-1}`.
///
/// `p | m`: lengths `p^i` for `i < j` occur `M(p, p^i)` times and the rest of
/// the states fall on cycles of length `p^j`. `p ∤ m`: only the zero fixed
/// point and cycles of length `p^j`.
pub fn predict_phi_pj(p: u64, j: u32, m: u64) -> Result<SpectrumPrediction, PredictError> {
    require_prime(p)?;
    require_modulus(m)?;
    if j == 0 {
        return Err(PredictError::InvalidArgument("exponent j must be at least 1".into()));
    }
    let family = Family::PhiPj { p, j };
    let pj = p
        .checked_pow(j)
        .ok_or_else(|| PredictError::Overflow("p^j".into()))?;
    let states = pow_i128(m, euler_phi(pj), "m^phi(p^j)")?;
    if m.is_multiple_of(p) {
        let mut by_length = Spectrum::new();
        let mut covered = 0i128;
        let mut short_total = 0u64;
        for i in 0..j {
            let len = p.pow(i);
            let count = necklace_count(p, len)?;
            by_length.add(len, count);
            covered += len as i128 * count as i128;
            short_total = checked_sum(&[short_total, count], "total")?;
        }
        let long = exact_quotient(
            states - covered,
            pj as i128,
            "(m^phi(p^j) - sum p^i M(p, p^i)) / p^j",
        )?;
        by_length.add(pj, long);
        let total = checked_sum(&[long, short_total], "total")?;
        SpectrumPrediction::new(family, m, by_length, total, format!("Phi_p^j, p | m (p = {p}, j = {j})"))
    } else {
        let long = exact_quotient(states - 1, pj as i128, "(m^phi(p^j) - 1) / p^j")?;
        let total = checked_sum(&[long, 1], "total")?;
        let by_length = [(1, 1), (pj, long)].into_iter().collect();
        SpectrumPrediction::new(family, m, by_length, total, format!("Phi_p^j, p ∤ m (p = {p}, j = {j})"))
    }
}

/// Period counts for `x^n - 1`: length `r` for each proper divisor `r | n`
/// occurs `M(m, r)` times, and the remaining states sit on length-`n` cycles.
pub fn predict_power_cycle(n: u64, m: u64) -> Result<SpectrumPrediction, PredictError> {
    if n == 0 {
        return Err(PredictError::InvalidArgument("order n must be at least 1".into()));
    }
    require_modulus(m)?;
    let family = Family::PowerCycle { n };
    let mut by_length = Spectrum::new();
    let mut covered = 0i128;
    let mut short_total = 0u64;
    for r in divisors(n).into_iter().filter(|&r| r != n) {
        let count = necklace_count(m, r)?;
        by_length.add(r, count);
        covered += r as i128 * count as i128;
        short_total = checked_sum(&[short_total, count], "total")?;
    }
    let states = pow_i128(m, n, "m^n")?;
    let long = exact_quotient(states - covered, n as i128, "(m^n - sum r M(m, r)) / n")?;
    by_length.add(n, long);
    let total = checked_sum(&[long, short_total], "total")?;
    SpectrumPrediction::new(family, m, by_length, total, format!("x^n - 1 (n = {n})"))
}

/// Difference at one cycle length.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LengthDiff {
    pub length: u64,
    pub predicted: u64,
    pub observed: u64,
}

/// Prediction compared against an enumerated landscape. A mismatch is a
/// counterexample record.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub instance: String,
    pub modulus: u64,
    pub matched: bool,
    pub predicted_total: u64,
    pub observed_total: u64,
    pub predicted: Spectrum,
    pub observed: Spectrum,
    pub diffs: Vec<LengthDiff>,
}

pub fn verify_prediction(pred: &SpectrumPrediction, obs: &Landscape) -> VerificationReport {
    let observed = obs.spectrum().clone();
    let mut lengths: Vec<u64> = pred.by_length.lengths().chain(observed.lengths()).collect();
    lengths.sort_unstable();
    lengths.dedup();
    let diffs: Vec<LengthDiff> = lengths
        .into_iter()
        .map(|length| LengthDiff {
            length,
            predicted: pred.by_length.get(length),
            observed: observed.get(length),
        })
        .filter(|d| d.predicted != d.observed)
        .collect();
    VerificationReport {
        instance: format!("{} mod {}", pred.family, pred.modulus),
        modulus: obs.modulus(),
        matched: diffs.is_empty() && pred.total == observed.total_cycles(),
        predicted_total: pred.total,
        observed_total: observed.total_cycles(),
        predicted: pred.by_length.clone(),
        observed,
        diffs,
    }
}
