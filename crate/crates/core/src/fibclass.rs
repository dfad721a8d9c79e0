//! Fibonacci landscapes modulo primes and prime powers.
//!
//! Primes `p != 2, 5` fall into class A when `(5/p) = -1` and class B when
//! `(5/p) = 1`. With `pi` the Pisano period, class A has `pi = 2(p+1)/alpha`
//! for an odd `alpha`, and class B has `pi = (p-1)/alpha`. Class B splits by
//! the number of zeros in the Pisano cycle: exactly one zero is B2 (three
//! cycle lengths), otherwise B1 (two cycle lengths).

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::landscape::{
    enumerate_landscape, orbit_of_state, reduce_cycle, Cycle, LandscapeError, Limits, Spectrum,
};
use crate::numtheory::{divisors, is_prime, pow_mod};
use crate::polynomial::{parity_transform, Recurrence};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FibClassError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Landscape(#[from] LandscapeError),
    #[error("classification of p = {p} violated: {reason}")]
    ClassificationViolation { p: u64, reason: String },
    #[error("cycle {cycle} of modulus {modulus} reduces to {reduced}, which is not a cycle modulo {divisor}")]
    LiftMismatch {
        cycle: String,
        modulus: u64,
        reduced: String,
        divisor: u64,
    },
    #[error("landscape for modulus {0} is too large to retain explicit cycles")]
    CyclesNotRetained(u64),
}

/// Legendre symbol `(a/p)` by Euler's criterion. `p` must be an odd prime.
pub fn legendre_symbol(a: i64, p: u64) -> i8 {
    debug_assert!(p > 2 && is_prime(p), "legendre_symbol needs an odd prime");
    let a = a.rem_euclid(p as i64) as u64;
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Zeros in one period of the Fibonacci sequence `0, 1, 1, 2, ...` mod `m`.
pub fn zeros_in_pisano(m: u64, limits: &Limits) -> Result<u64, LandscapeError> {
    if m == 0 {
        return Err(LandscapeError::ZeroModulus);
    }
    let seq = orbit_of_state(&Recurrence::fibonacci(), m, &[0, 1 % m], limits)?;
    Ok(seq.iter().filter(|&&x| x == 0).count() as u64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ClassLabel {
    A,
    B1,
    B2,
    /// `p = 2` or `p = 5`, reported with raw landscapes only.
    Special,
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ClassLabel::A => "A",
            ClassLabel::B1 => "B1",
            ClassLabel::B2 => "B2",
            ClassLabel::Special => "special",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeClassification {
    pub p: u64,
    /// `(5/p)`; `None` for `p = 2`.
    pub legendre5: Option<i8>,
    pub class_label: ClassLabel,
    pub alpha: Option<u64>,
    pub pisano: u64,
    pub zero_count: u64,
    pub predicted_total: Option<u64>,
    pub predicted_spectrum: Option<Spectrum>,
    pub observed_spectrum: Spectrum,
}

impl PrimeClassification {
    /// True when the class formula reproduces the enumerated landscape.
    /// Special primes have no prediction and never match.
    pub fn prediction_matches(&self) -> bool {
        self.predicted_spectrum.as_ref() == Some(&self.observed_spectrum)
    }
}

fn violation(p: u64, reason: impl Into<String>) -> FibClassError {
    FibClassError::ClassificationViolation {
        p,
        reason: reason.into(),
    }
}

/// Classifies a prime from its Pisano period, zero count, and landscape.
pub fn classify_prime(p: u64, limits: &Limits) -> Result<PrimeClassification, FibClassError> {
    if !is_prime(p) {
        return Err(FibClassError::NotPrime(p));
    }
    let fib = Recurrence::fibonacci();
    let orbit = orbit_of_state(&fib, p, &[0, 1], limits)?;
    let pisano = orbit.len() as u64;
    let zero_count = orbit.iter().filter(|&&x| x == 0).count() as u64;
    let observed = enumerate_landscape(&fib, p, false, limits)?.spectrum().clone();

    if p == 2 || p == 5 {
        return Ok(PrimeClassification {
            p,
            legendre5: (p == 5).then_some(0),
            class_label: ClassLabel::Special,
            alpha: None,
            pisano,
            zero_count,
            predicted_total: None,
            predicted_spectrum: None,
            observed_spectrum: observed,
        });
    }

    let leg = legendre_symbol(5, p);
    let residue5 = p % 5;
    let (label, alpha, predicted, total) = match leg {
        -1 => {
            if residue5 != 2 && residue5 != 3 {
                return Err(violation(p, format!("(5/p) = -1 but p ≡ {residue5} (mod 5)")));
            }
            let num = 2 * (p + 1);
            if !num.is_multiple_of(pisano) {
                return Err(violation(p, format!("pi = {pisano} does not divide 2(p+1) = {num}")));
            }
            let alpha = num / pisano;
            if alpha.is_multiple_of(2) {
                return Err(violation(p, format!("class A alpha = {alpha} is even")));
            }
            let long = alpha * (p - 1) / 2;
            let s: Spectrum = [(1, 1), (pisano, long)].into_iter().collect();
            (ClassLabel::A, alpha, s, alpha * (p - 1) / 2 + 1)
        }
        1 => {
            if residue5 != 1 && residue5 != 4 {
                return Err(violation(p, format!("(5/p) = 1 but p ≡ {residue5} (mod 5)")));
            }
            if !(p - 1).is_multiple_of(pisano) {
                return Err(violation(p, format!("pi = {pisano} does not divide p-1 = {}", p - 1)));
            }
            let alpha = (p - 1) / pisano;
            if zero_count == 1 {
                if !pisano.is_multiple_of(2) {
                    return Err(violation(p, format!("B2 Pisano period {pisano} is odd")));
                }
                let s: Spectrum = [(1, 1), (pisano / 2, 2 * alpha), (pisano, p * alpha)]
                    .into_iter()
                    .collect();
                (ClassLabel::B2, alpha, s, alpha * (p + 2) + 1)
            } else {
                let s: Spectrum = [(1, 1), (pisano, alpha * (p + 1))].into_iter().collect();
                (ClassLabel::B1, alpha, s, alpha * (p + 1) + 1)
            }
        }
        _ => return Err(violation(p, "(5/p) = 0 for p != 5")),
    };

    if predicted.total_cycles() != total {
        return Err(violation(
            p,
            format!("breakdown {predicted} does not sum to the class total {total}"),
        ));
    }
    // The zero count decides B1 vs B2; the number of distinct lengths must agree.
    let expected_lengths = if label == ClassLabel::B2 { 3 } else { 2 };
    if observed.distinct_lengths() != expected_lengths {
        return Err(violation(
            p,
            format!(
                "class {label} expects {expected_lengths} distinct lengths, landscape has {observed}"
            ),
        ));
    }

    Ok(PrimeClassification {
        p,
        legendre5: Some(leg),
        class_label: label,
        alpha: Some(alpha),
        pisano,
        zero_count,
        predicted_total: Some(total),
        predicted_spectrum: Some(predicted),
        observed_spectrum: observed,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceReport {
    pub p: u64,
    pub residue_mod_20: u64,
    /// `p ≡ 11, 19 (mod 20)` forces B2.
    pub requires_b2: bool,
    pub observed: ClassLabel,
    pub holds: bool,
}

/// For class-B primes: `p ≡ 11, 19 (mod 20)` must classify as B2; for
/// `p ≡ 1, 9 (mod 20)` the observed subclass is recorded.
pub fn congruence_class_check(p: u64, limits: &Limits) -> Result<CongruenceReport, FibClassError> {
    if p % 5 != 1 && p % 5 != 4 {
        return Err(FibClassError::InvalidArgument(format!(
            "{p} is not ≡ 1, 4 (mod 5)"
        )));
    }
    let c = classify_prime(p, limits)?;
    let residue = p % 20;
    let requires_b2 = residue == 11 || residue == 19;
    Ok(CongruenceReport {
        p,
        residue_mod_20: residue,
        requires_b2,
        observed: c.class_label,
        holds: !requires_b2 || c.class_label == ClassLabel::B2,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerLevel {
    pub exponent: u32,
    pub modulus: u64,
    pub spectrum: Spectrum,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitionReport {
    pub from: u64,
    pub to: u64,
    /// Every `(length, count)` at `p^k` is still present at `p^{k+1}`.
    pub preserved: bool,
    /// The new lengths are exactly `p * l` for earlier lengths `l > 1`.
    pub new_lengths: bool,
    /// Lengths introduced at `p^k` reappear scaled by `p` with `p` times
    /// the multiplicity. `None` for B2 primes, whose main-length
    /// multiplicity is not a pure scaling.
    pub scaling: Option<bool>,
    /// B2 only: the middle length keeps multiplicity `2 alpha`.
    pub middle_constant: Option<bool>,
    pub violations: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelfSimilarityReport {
    pub p: u64,
    pub class_label: ClassLabel,
    pub alpha: Option<u64>,
    pub levels: Vec<PowerLevel>,
    pub transitions: Vec<TransitionReport>,
    pub holds: bool,
}

/// Compares the landscapes at `p, p^2, ..., p^{k_max}`.
pub fn check_self_similarity(
    p: u64,
    k_max: u32,
    limits: &Limits,
) -> Result<SelfSimilarityReport, FibClassError> {
    if k_max < 1 {
        return Err(FibClassError::InvalidArgument("k_max must be at least 1".into()));
    }
    let class = classify_prime(p, limits)?;
    let fib = Recurrence::fibonacci();
    let mut levels = Vec::new();
    for k in 1..=k_max {
        let m = p
            .checked_pow(k)
            .ok_or_else(|| FibClassError::InvalidArgument(format!("{p}^{k} overflows")))?;
        let spectrum = enumerate_landscape(&fib, m, false, limits)?.spectrum().clone();
        levels.push(PowerLevel {
            exponent: k,
            modulus: m,
            spectrum,
        });
    }

    let b2 = class.class_label == ClassLabel::B2;
    let middle = b2.then(|| (class.pisano / 2, 2 * class.alpha.unwrap_or(0)));
    let mut transitions = Vec::new();
    for w in 0..levels.len().saturating_sub(1) {
        let (lo, hi) = (&levels[w], &levels[w + 1]);
        let prev = (w > 0).then(|| &levels[w - 1].spectrum);
        transitions.push(check_transition(p, lo, hi, prev, middle));
    }
    let holds = transitions.iter().all(|t| t.violations.is_empty());
    Ok(SelfSimilarityReport {
        p,
        class_label: class.class_label,
        alpha: class.alpha,
        levels,
        transitions,
        holds,
    })
}

fn check_transition(
    p: u64,
    lo: &PowerLevel,
    hi: &PowerLevel,
    before_lo: Option<&Spectrum>,
    middle: Option<(u64, u64)>,
) -> TransitionReport {
    let mut violations = Vec::new();
    let lo_s = &lo.spectrum;
    let hi_s = &hi.spectrum;

    let mut preserved = true;
    for (len, count) in lo_s.iter() {
        if hi_s.get(len) != count {
            preserved = false;
            violations.push(format!(
                "length {len}: {count} at {} but {} at {}",
                lo.modulus,
                hi_s.get(len),
                hi.modulus
            ));
        }
    }

    let lo_lengths: BTreeSet<u64> = lo_s.lengths().collect();
    let appeared: BTreeSet<u64> = hi_s.lengths().filter(|l| !lo_lengths.contains(l)).collect();
    let expected: BTreeSet<u64> = lo_lengths
        .iter()
        .filter(|&&l| l > 1)
        .map(|&l| p * l)
        .filter(|l| !lo_lengths.contains(l))
        .collect();
    let new_lengths = appeared == expected;
    if !new_lengths {
        violations.push(format!(
            "new lengths at {} are {appeared:?}, expected {expected:?}",
            hi.modulus
        ));
    }

    // Lengths that first appeared at `lo`: all of them at the base prime.
    let fresh: Vec<u64> = lo_s
        .lengths()
        .filter(|&l| l > 1 && before_lo.is_none_or(|b| b.get(l) == 0))
        .collect();
    let is_middle_lineage = |l: u64| match middle {
        Some((mid, _)) => l.is_multiple_of(mid) && is_power_of(l / mid, p),
        None => false,
    };

    let scaling = if middle.is_some() {
        None
    } else {
        let mut ok = true;
        for &l in &fresh {
            let want = p * lo_s.get(l);
            let got = hi_s.get(p * l);
            if got != want {
                ok = false;
                violations.push(format!(
                    "length {} at {} has {got} cycles, expected {p} x {} = {want}",
                    p * l,
                    hi.modulus,
                    lo_s.get(l)
                ));
            }
        }
        Some(ok)
    };

    let middle_constant = middle.map(|(mid, twice_alpha)| {
        let mut ok = true;
        for s in [lo_s, hi_s] {
            for (l, c) in s.iter().filter(|&(l, _)| is_middle_lineage(l)) {
                if c != twice_alpha {
                    ok = false;
                    violations.push(format!(
                        "middle length {l} (from {mid}) has {c} cycles, expected {twice_alpha}"
                    ));
                }
            }
        }
        ok
    });

    violations.dedup();
    TransitionReport {
        from: lo.modulus,
        to: hi.modulus,
        preserved,
        new_lengths,
        scaling,
        middle_constant,
        violations,
    }
}

fn is_power_of(mut x: u64, p: u64) -> bool {
    while x > 1 && x.is_multiple_of(p) {
        x /= p;
    }
    x == 1
}

fn ratio_string<S: Serializer>(r: &Ratio<u64>, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(r)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightGroup {
    pub base: Cycle,
    pub lifted: Vec<Cycle>,
    #[serde(serialize_with = "ratio_string")]
    pub base_weight: Ratio<u64>,
    #[serde(serialize_with = "ratio_string")]
    pub lifted_weight: Ratio<u64>,
    pub conserved: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightReport {
    pub m: u64,
    pub d: u64,
    pub groups: Vec<WeightGroup>,
    pub holds: bool,
}

/// Weight conservation for the Fibonacci recurrence between `F_d` and `F_m`.
pub fn check_weight_preservation(m: u64, d: u64, limits: &Limits) -> Result<WeightReport, FibClassError> {
    check_weight_preservation_for(&Recurrence::fibonacci(), m, d, limits)
}

/// Groups the cycles modulo `m` by their reduction modulo `d` and compares
/// `sum l_i / m^2` with `l_base / d^2` as exact rationals.
pub fn check_weight_preservation_for(
    r: &Recurrence,
    m: u64,
    d: u64,
    limits: &Limits,
) -> Result<WeightReport, FibClassError> {
    if d == 0 || m == 0 || !m.is_multiple_of(d) {
        return Err(LandscapeError::NotDivisor { divisor: d, modulus: m }.into());
    }
    let upper = enumerate_landscape(r, m, true, limits)?;
    let lower = enumerate_landscape(r, d, true, limits)?;
    let upper_cycles = upper.cycles().ok_or(FibClassError::CyclesNotRetained(m))?;
    let lower_cycles = lower.cycles().ok_or(FibClassError::CyclesNotRetained(d))?;

    let mut groups: BTreeMap<&Cycle, Vec<Cycle>> = lower_cycles.iter().map(|c| (c, Vec::new())).collect();
    for c in upper_cycles {
        let reduced = reduce_cycle(c, d)?;
        match groups.get_mut(&reduced) {
            Some(lifts) => lifts.push(c.clone()),
            None => {
                return Err(FibClassError::LiftMismatch {
                    cycle: c.to_string(),
                    modulus: m,
                    reduced: reduced.to_string(),
                    divisor: d,
                })
            }
        }
    }

    let groups: Vec<WeightGroup> = groups
        .into_iter()
        .map(|(base, lifted)| {
            let base_weight = Ratio::new(base.len() as u64, d * d);
            let lifted_weight = lifted
                .iter()
                .map(|c| Ratio::new(c.len() as u64, m * m))
                .fold(Ratio::from_integer(0), |acc, w| acc + w);
            WeightGroup {
                base: base.clone(),
                lifted,
                conserved: base_weight == lifted_weight,
                base_weight,
                lifted_weight,
            }
        })
        .collect();
    let holds = groups.iter().all(|g| g.conserved);
    Ok(WeightReport { m, d, groups, holds })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChiralReport {
    pub modulus: u64,
    pub recurrence: Recurrence,
    pub partner: Recurrence,
    pub spectra_equal: bool,
    /// Whether `cycle -> canonical(reversed cycle)` is a bijection onto the
    /// partner's cycles; `None` when cycles were not retained.
    pub reversal_bijective: Option<bool>,
    pub first_unmatched: Option<Cycle>,
    pub holds: bool,
}

/// Compares the landscape of `r` with that of its parity transform.
pub fn check_chiral(r: &Recurrence, m: u64, limits: &Limits) -> Result<ChiralReport, FibClassError> {
    let partner = parity_transform(r);
    let left = enumerate_landscape(r, m, true, limits)?;
    let right = enumerate_landscape(&partner, m, true, limits)?;
    let spectra_equal = left.spectrum() == right.spectrum();

    let (reversal_bijective, first_unmatched) = match (left.cycles(), right.cycles()) {
        (Some(lc), Some(rc)) => {
            let mut remaining: HashMap<&Cycle, usize> = HashMap::new();
            for c in rc {
                *remaining.entry(c).or_insert(0) += 1;
            }
            let mut unmatched = None;
            for c in lc {
                let rev = c.reversed();
                match remaining.get_mut(&rev) {
                    Some(n) if *n > 0 => *n -= 1,
                    _ => {
                        unmatched = Some(c.clone());
                        break;
                    }
                }
            }
            let bijective = unmatched.is_none() && lc.len() == rc.len();
            (Some(bijective), unmatched)
        }
        _ => (None, None),
    };

    Ok(ChiralReport {
        modulus: m,
        recurrence: r.clone(),
        partner,
        spectra_equal,
        holds: spectra_equal && reversal_bijective != Some(false),
        reversal_bijective,
        first_unmatched,
    })
}

/// All divisors `d` of `m` paired with their weight reports.
pub fn weight_reports(m: u64, limits: &Limits) -> Result<Vec<WeightReport>, FibClassError> {
    divisors(m)
        .into_iter()
        .map(|d| check_weight_preservation(m, d, limits))
        .collect()
}
