use rayon::prelude::*;
use serde::Serialize;

use super::{
    CliError, FamilyParams, MinimaMode, MinimaRecurrence, PolySpec, PredictFamily, Record, Report, RunConfig,
    Status, VerifyFamily,
};
use crate::fibclass::{
    check_chiral, check_self_similarity, check_weight_preservation_for, classify_prime, ClassLabel, FibClassError,
    PrimeClassification, SelfSimilarityReport, WeightReport,
};
use crate::landscape::{enumerate_landscape, pisano_period, Cycle, LandscapeError, Spectrum};
use crate::minima::{
    analytic_report, lucas_tie_checks, mediant_check, minima_probability, simulate_minima, AnalyticReport,
    Quadratic, SamplingMode, DEFAULT_SHARDS,
};
use crate::numtheory::{divisors, is_prime, primes_up_to};
use crate::predict::{verify_prediction, Family, LengthDiff, PredictError, SpectrumPrediction};

fn is_cap(e: &LandscapeError) -> bool {
    matches!(e, LandscapeError::CapExceeded { .. } | LandscapeError::OrderCapExceeded { .. })
}

fn spectrum_text(s: &Spectrum) -> String {
    s.to_string()
}

// ---------------------------------------------------------------- landscape

#[derive(Serialize)]
struct LandscapeRecord {
    recurrence: String,
    modulus: u64,
    total_cycles: u64,
    spectrum: Spectrum,
    #[serde(skip_serializing_if = "Option::is_none")]
    cycles: Option<Vec<Vec<u64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    digits: Option<Vec<String>>,
}

impl Record for LandscapeRecord {
    fn csv_rows(&self) -> Vec<Vec<String>> {
        self.spectrum
            .iter()
            .map(|(l, c)| vec![self.recurrence.clone(), self.modulus.to_string(), l.to_string(), c.to_string()])
            .collect()
    }

    fn text(&self) -> String {
        let mut s = format!("{} mod {}: {} cycles {}", self.recurrence, self.modulus, self.total_cycles, self.spectrum);
        if let Some(d) = &self.digits {
            s += &format!("\n  {}", d.join(" "));
        }
        s
    }
}

pub(super) fn landscape(poly: &PolySpec, moduli: &[u64], digits: bool, cfg: &RunConfig) -> Result<Report, CliError> {
    let limits = cfg.limits();
    let records = moduli
        .par_iter()
        .map(|&m| {
            let l = enumerate_landscape(&poly.recurrence, m, true, &limits)?;
            let cycles = l.cycles();
            Ok(LandscapeRecord {
                recurrence: poly.recurrence.to_string(),
                modulus: m,
                total_cycles: l.total_cycles(),
                spectrum: l.spectrum().clone(),
                cycles: cycles.map(|cs| cs.iter().map(|c| c.residues().to_vec()).collect()),
                digits: cycles
                    .filter(|_| digits && m <= 10)
                    .map(|cs| cs.iter().filter_map(Cycle::digits).collect()),
            })
        })
        .collect::<Result<Vec<_>, LandscapeError>>()?;
    Ok(Report::new("landscape", &["recurrence", "modulus", "length", "count"], &records, Status::Ok))
}

// ---------------------------------------------------------------- predict

fn family_from(family: PredictFamily, params: &FamilyParams) -> Result<Family, CliError> {
    let need = |v: Option<u64>, flag: &str| v.ok_or_else(|| CliError::Usage(format!("--{flag} is required")));
    let f = match family {
        PredictFamily::PhiP => Family::PhiP { p: need(params.p, "p")? },
        PredictFamily::Phi2p => Family::Phi2P { p: need(params.p, "p")? },
        PredictFamily::PhiPj => Family::PhiPj {
            p: need(params.p, "p")?,
            j: params.j.ok_or_else(|| CliError::Usage("--j is required".into()))?,
        },
        PredictFamily::Pow => Family::PowerCycle { n: need(params.n, "n")? },
    };
    // Argument errors do not depend on the modulus.
    match f.predict(1) {
        Err(e @ (PredictError::NotPrime(_) | PredictError::NotOddPrime(_) | PredictError::InvalidArgument(_))) => {
            Err(CliError::Usage(e.to_string()))
        }
        _ => Ok(f),
    }
}

#[derive(Serialize)]
struct PredictRecord {
    instance: String,
    modulus: u64,
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    prediction: Option<SpectrumPrediction>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<PredictError>,
}

impl Record for PredictRecord {
    fn csv_rows(&self) -> Vec<Vec<String>> {
        let base = |l: String, c: String| vec![self.instance.clone(), self.modulus.to_string(), self.status.into(), l, c];
        match &self.prediction {
            Some(p) => p.by_length.iter().map(|(l, c)| base(l.to_string(), c.to_string())).collect(),
            None => vec![base(String::new(), String::new())],
        }
    }

    fn text(&self) -> String {
        match (&self.prediction, &self.error) {
            (Some(p), _) => format!("{} mod {}: {} cycles {} ({})", self.instance, self.modulus, p.total, p.by_length, p.source),
            (None, Some(e)) => format!("{} mod {}: {}: {e}", self.instance, self.modulus, self.status),
            _ => format!("{} mod {}: {}", self.instance, self.modulus, self.status),
        }
    }
}

/// Status word and severity for a predictor failure.
fn predict_failure(e: &PredictError) -> (&'static str, Status) {
    match e {
        PredictError::UncoveredCase { .. } => ("uncovered", Status::Ok),
        PredictError::IntegralityViolation { .. } => ("integrality_violation", Status::Mismatch),
        PredictError::InconsistentTotal { .. } => ("inconsistent_total", Status::Mismatch),
        PredictError::Overflow(_) => ("overflow", Status::Cap),
        _ => ("invalid", Status::Mismatch),
    }
}

pub(super) fn predict(family: PredictFamily, params: &FamilyParams, moduli: &[u64]) -> Result<Report, CliError> {
    let f = family_from(family, params)?;
    let mut status = Status::Ok;
    let mut uncovered = Vec::new();
    let records: Vec<PredictRecord> = moduli
        .iter()
        .map(|&m| match f.predict(m) {
            Ok(p) => PredictRecord { instance: f.to_string(), modulus: m, status: "predicted", prediction: Some(p), error: None },
            Err(e) => {
                let (word, s) = predict_failure(&e);
                status = status.max(s);
                if word == "uncovered" {
                    uncovered.push(m);
                }
                PredictRecord { instance: f.to_string(), modulus: m, status: word, prediction: None, error: Some(e) }
            }
        })
        .collect();
    if status == Status::Ok && !uncovered.is_empty() {
        return Err(CliError::Usage(format!(
            "no prediction available for {f} at m = {uncovered:?}; use `landscape` or `verify` for the observed spectrum"
        )));
    }
    Ok(Report::new("predict", &["instance", "modulus", "status", "length", "count"], &records, status))
}

// ---------------------------------------------------------------- verify

#[derive(Serialize)]
struct SpectralRecord {
    instance: String,
    modulus: u64,
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    predicted: Option<Spectrum>,
    #[serde(skip_serializing_if = "Option::is_none")]
    observed: Option<Spectrum>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    diffs: Vec<LengthDiff>,
    #[serde(skip_serializing_if = "Option::is_none")]
    detail: Option<String>,
}

impl Record for SpectralRecord {
    fn csv_rows(&self) -> Vec<Vec<String>> {
        let show = |s: &Option<Spectrum>| s.as_ref().map(spectrum_text).unwrap_or_default();
        vec![vec![
            self.instance.clone(),
            self.modulus.to_string(),
            self.status.into(),
            show(&self.predicted),
            show(&self.observed),
        ]]
    }

    fn text(&self) -> String {
        let mut s = format!("{} mod {}: {}", self.instance, self.modulus, self.status);
        if let Some(o) = &self.observed {
            s += &format!(" observed {o}");
        }
        if self.status != "matched" {
            if let Some(p) = &self.predicted {
                s += &format!(" predicted {p}");
            }
        }
        if let Some(d) = &self.detail {
            s += &format!(" ({d})");
        }
        s
    }
}

fn verify_spectral(f: Family, moduli: &[u64], cfg: &RunConfig) -> Result<(Vec<SpectralRecord>, Status), CliError> {
    let limits = cfg.limits();
    let r = f.recurrence().map_err(|e| CliError::Usage(e.to_string()))?;
    let records: Vec<(SpectralRecord, Status)> = moduli
        .par_iter()
        .map(|&m| {
            let rec = |status, predicted, observed, diffs, detail| SpectralRecord {
                instance: f.to_string(),
                modulus: m,
                status,
                predicted,
                observed,
                diffs,
                detail,
            };
            let observed = match enumerate_landscape(&r, m, false, &limits) {
                Ok(l) => l,
                Err(e) if is_cap(&e) => return (rec("cap_exceeded", None, None, vec![], Some(e.to_string())), Status::Cap),
                Err(e) => return (rec("invalid", None, None, vec![], Some(e.to_string())), Status::Mismatch),
            };
            match f.predict(m) {
                Ok(p) => {
                    let v = verify_prediction(&p, &observed);
                    let (word, s) = if v.matched { ("matched", Status::Ok) } else { ("mismatch", Status::Mismatch) };
                    (rec(word, Some(v.predicted), Some(v.observed), v.diffs, None), s)
                }
                Err(e) => {
                    let (word, s) = predict_failure(&e);
                    let detail = if word == "uncovered" { format!("no prediction available: {e}") } else { e.to_string() };
                    (rec(word, None, Some(observed.spectrum().clone()), vec![], Some(detail)), s)
                }
            }
        })
        .collect();
    let status = records.iter().map(|(_, s)| *s).max().unwrap_or(Status::Ok);
    Ok((records.into_iter().map(|(r, _)| r).collect(), status))
}

#[derive(Serialize)]
struct ClassRecord {
    p: u64,
    status: &'static str,
    #[serde(flatten, skip_serializing_if = "Option::is_none")]
    classification: Option<PrimeClassification>,
    #[serde(skip_serializing_if = "Option::is_none")]
    detail: Option<String>,
}

impl Record for ClassRecord {
    fn csv_rows(&self) -> Vec<Vec<String>> {
        let c = self.classification.as_ref();
        let opt = |v: Option<u64>| v.map(|x| x.to_string()).unwrap_or_default();
        vec![vec![
            self.p.to_string(),
            self.status.into(),
            c.map(|c| c.class_label.to_string()).unwrap_or_default(),
            opt(c.and_then(|c| c.alpha)),
            opt(c.map(|c| c.pisano)),
            opt(c.map(|c| c.zero_count)),
            opt(c.and_then(|c| c.predicted_total)),
            opt(c.map(|c| c.observed_spectrum.total_cycles())),
            c.map(|c| spectrum_text(&c.observed_spectrum)).unwrap_or_default(),
        ]]
    }

    fn text(&self) -> String {
        match &self.classification {
            Some(c) => {
                let alpha = c.alpha.map(|a| format!(" alpha={a}")).unwrap_or_default();
                format!(
                    "p={} class {}{alpha} pisano={} zeros={} {} cycles {} [{}]",
                    c.p,
                    c.class_label,
                    c.pisano,
                    c.zero_count,
                    c.observed_spectrum.total_cycles(),
                    c.observed_spectrum,
                    self.status
                )
            }
            None => format!("p={}: {} {}", self.p, self.status, self.detail.as_deref().unwrap_or("")),
        }
    }
}

const CLASS_HEADER: &[&str] = &[
    "p",
    "status",
    "class",
    "alpha",
    "pisano",
    "zero_count",
    "predicted_total",
    "observed_total",
    "observed_spectrum",
];

fn classify_primes(primes: &[u64], cfg: &RunConfig) -> (Vec<ClassRecord>, Status) {
    let limits = cfg.limits();
    let out: Vec<(ClassRecord, Status)> = primes
        .par_iter()
        .map(|&p| match classify_prime(p, &limits) {
            Ok(c) => {
                let (word, s) = match (c.class_label, c.prediction_matches()) {
                    (ClassLabel::Special, _) => ("special", Status::Ok),
                    (_, true) => ("matched", Status::Ok),
                    (_, false) => ("mismatch", Status::Mismatch),
                };
                (ClassRecord { p, status: word, classification: Some(c), detail: None }, s)
            }
            Err(FibClassError::Landscape(e)) if is_cap(&e) => {
                (ClassRecord { p, status: "cap_exceeded", classification: None, detail: Some(e.to_string()) }, Status::Cap)
            }
            Err(e) => (ClassRecord { p, status: "violation", classification: None, detail: Some(e.to_string()) }, Status::Mismatch),
        })
        .collect();
    let status = out.iter().map(|(_, s)| *s).max().unwrap_or(Status::Ok);
    (out.into_iter().map(|(r, _)| r).collect(), status)
}

fn prime_selection(p: Option<u64>, p_max: Option<u64>) -> Result<Vec<u64>, CliError> {
    match (p, p_max) {
        (Some(p), _) if !is_prime(p) => Err(CliError::Usage(format!("{p} is not prime"))),
        (Some(p), _) => Ok(vec![p]),
        (None, Some(max)) if max >= 2 => Ok(primes_up_to(max)),
        (None, Some(max)) => Err(CliError::Usage(format!("no primes up to {max}"))),
        (None, None) => Err(CliError::Usage("give --p or --p-max".into())),
    }
}

#[derive(Serialize)]
struct SelfSimilarityRecord {
    p: u64,
    status: &'static str,
    #[serde(flatten, skip_serializing_if = "Option::is_none")]
    report: Option<SelfSimilarityReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    detail: Option<String>,
}

impl Record for SelfSimilarityRecord {
    fn csv_rows(&self) -> Vec<Vec<String>> {
        match &self.report {
            Some(r) => r
                .levels
                .iter()
                .map(|l| {
                    vec![
                        self.p.to_string(),
                        self.status.into(),
                        r.class_label.to_string(),
                        l.modulus.to_string(),
                        spectrum_text(&l.spectrum),
                    ]
                })
                .collect(),
            None => vec![vec![self.p.to_string(), self.status.into(), String::new(), String::new(), String::new()]],
        }
    }

    fn text(&self) -> String {
        match &self.report {
            Some(r) => {
                let mut s = format!("p={} class {} [{}]", self.p, r.class_label, self.status);
                for l in &r.levels {
                    s += &format!("\n  {}: {}", l.modulus, l.spectrum);
                }
                for t in &r.transitions {
                    for v in &t.violations {
                        s += &format!("\n  {} -> {}: {v}", t.from, t.to);
                    }
                }
                s
            }
            None => format!("p={}: {} {}", self.p, self.status, self.detail.as_deref().unwrap_or("")),
        }
    }
}

fn self_similarity(primes: &[u64], k_max: u32, cfg: &RunConfig) -> Result<(Vec<SelfSimilarityRecord>, Status), CliError> {
    if k_max < 2 {
        return Err(CliError::Usage("--k-max must be at least 2".into()));
    }
    let limits = cfg.limits();
    let out: Vec<(SelfSimilarityRecord, Status)> = primes
        .par_iter()
        .map(|&p| match check_self_similarity(p, k_max, &limits) {
            Ok(r) => {
                let (word, s) = match (r.class_label, r.holds) {
                    (ClassLabel::Special, _) => ("special", Status::Ok),
                    (_, true) => ("holds", Status::Ok),
                    (_, false) => ("violation", Status::Mismatch),
                };
                (SelfSimilarityRecord { p, status: word, report: Some(r), detail: None }, s)
            }
            Err(FibClassError::Landscape(e)) if is_cap(&e) => (
                SelfSimilarityRecord { p, status: "cap_exceeded", report: None, detail: Some(e.to_string()) },
                Status::Cap,
            ),
            Err(e) => (
                SelfSimilarityRecord { p, status: "violation", report: None, detail: Some(e.to_string()) },
                Status::Mismatch,
            ),
        })
        .collect();
    let status = out.iter().map(|(_, s)| *s).max().unwrap_or(Status::Ok);
    Ok((out.into_iter().map(|(r, _)| r).collect(), status))
}

#[derive(Serialize)]
struct WeightGroupRecord {
    base: Vec<u64>,
    lifted: Vec<Vec<u64>>,
    base_weight: String,
    lifted_weight: String,
    conserved: bool,
}

#[derive(Serialize)]
struct WeightRecord {
    m: u64,
    d: u64,
    status: &'static str,
    groups: Vec<WeightGroupRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    detail: Option<String>,
}

impl WeightRecord {
    fn from_report(r: WeightReport) -> Self {
        WeightRecord {
            m: r.m,
            d: r.d,
            status: if r.holds { "conserved" } else { "violation" },
            groups: r
                .groups
                .into_iter()
                .map(|g| WeightGroupRecord {
                    base: g.base.residues().to_vec(),
                    lifted: g.lifted.iter().map(|c| c.residues().to_vec()).collect(),
                    base_weight: g.base_weight.to_string(),
                    lifted_weight: g.lifted_weight.to_string(),
                    conserved: g.conserved,
                })
                .collect(),
            detail: None,
        }
    }
}

impl Record for WeightRecord {
    fn csv_rows(&self) -> Vec<Vec<String>> {
        let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(" ");
        if self.groups.is_empty() {
            return vec![vec![self.m.to_string(), self.d.to_string(), self.status.into(), String::new(), String::new(), String::new(), String::new()]];
        }
        self.groups
            .iter()
            .map(|g| {
                vec![
                    self.m.to_string(),
                    self.d.to_string(),
                    self.status.into(),
                    join(&g.base),
                    g.base_weight.clone(),
                    g.lifted_weight.clone(),
                    g.conserved.to_string(),
                ]
            })
            .collect()
    }

    fn text(&self) -> String {
        let mut s = format!("m={} d={}: {}", self.m, self.d, self.status);
        for g in &self.groups {
            s += &format!(
                "\n  {:?} weight {} <- {} lifts weight {}",
                g.base,
                g.base_weight,
                g.lifted.len(),
                g.lifted_weight
            );
        }
        if let Some(d) = &self.detail {
            s += &format!(" ({d})");
        }
        s
    }
}

const WEIGHT_HEADER: &[&str] = &["m", "d", "status", "base", "base_weight", "lifted_weight", "conserved"];

fn weight_records(poly: &PolySpec, pairs: &[(u64, u64)], cfg: &RunConfig) -> (Vec<WeightRecord>, Status) {
    let limits = cfg.limits();
    let out: Vec<(WeightRecord, Status)> = pairs
        .par_iter()
        .map(|&(m, d)| match check_weight_preservation_for(&poly.recurrence, m, d, &limits) {
            Ok(r) => {
                let s = if r.holds { Status::Ok } else { Status::Mismatch };
                (WeightRecord::from_report(r), s)
            }
            Err(e) => {
                let (word, s) = match &e {
                    FibClassError::Landscape(le) if is_cap(le) => ("cap_exceeded", Status::Cap),
                    FibClassError::CyclesNotRetained(_) => ("cap_exceeded", Status::Cap),
                    _ => ("violation", Status::Mismatch),
                };
                (WeightRecord { m, d, status: word, groups: vec![], detail: Some(e.to_string()) }, s)
            }
        })
        .collect();
    let status = out.iter().map(|(_, s)| *s).max().unwrap_or(Status::Ok);
    (out.into_iter().map(|(r, _)| r).collect(), status)
}

fn validate_invertible(poly: &PolySpec, moduli: &[u64]) -> Result<(), CliError> {
    let trailing = poly.recurrence.trailing();
    for &m in moduli {
        if crate::numtheory::gcd(trailing.unsigned_abs(), m) != 1 {
            return Err(LandscapeError::NonInvertible { trailing, modulus: m }.into());
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct ChiralRecord {
    modulus: u64,
    recurrence: String,
    partner: String,
    status: &'static str,
    spectra_equal: Option<bool>,
    reversal_bijective: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    first_unmatched: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    detail: Option<String>,
}

impl Record for ChiralRecord {
    fn csv_rows(&self) -> Vec<Vec<String>> {
        let opt = |v: Option<bool>| v.map(|b| b.to_string()).unwrap_or_default();
        vec![vec![
            self.modulus.to_string(),
            self.recurrence.clone(),
            self.partner.clone(),
            self.status.into(),
            opt(self.spectra_equal),
            opt(self.reversal_bijective),
        ]]
    }

    fn text(&self) -> String {
        let opt = |v: Option<bool>| v.map(|b| b.to_string()).unwrap_or_else(|| "n/a".into());
        format!(
            "m={}: {} spectra_equal={} reversal_bijective={}{}",
            self.modulus,
            self.status,
            opt(self.spectra_equal),
            opt(self.reversal_bijective),
            self.detail.as_ref().map(|d| format!(" ({d})")).unwrap_or_default()
        )
    }
}

const CHIRAL_HEADER: &[&str] = &["modulus", "recurrence", "partner", "status", "spectra_equal", "reversal_bijective"];

fn chiral_records(poly: &PolySpec, moduli: &[u64], cfg: &RunConfig) -> Result<(Vec<ChiralRecord>, Status), CliError> {
    validate_invertible(poly, moduli)?;
    let limits = cfg.limits();
    let partner = crate::polynomial::parity_transform(&poly.recurrence).to_string();
    let out: Vec<(ChiralRecord, Status)> = moduli
        .par_iter()
        .map(|&m| match check_chiral(&poly.recurrence, m, &limits) {
            Ok(r) => {
                let (word, s) = if r.holds { ("holds", Status::Ok) } else { ("violation", Status::Mismatch) };
                let rec = ChiralRecord {
                    modulus: m,
                    recurrence: r.recurrence.to_string(),
                    partner: r.partner.to_string(),
                    status: word,
                    spectra_equal: Some(r.spectra_equal),
                    reversal_bijective: r.reversal_bijective,
                    first_unmatched: r.first_unmatched.map(|c| c.residues().to_vec()),
                    detail: None,
                };
                (rec, s)
            }
            Err(e) => {
                let (word, s) = match &e {
                    FibClassError::Landscape(le) if is_cap(le) => ("cap_exceeded", Status::Cap),
                    _ => ("violation", Status::Mismatch),
                };
                let rec = ChiralRecord {
                    modulus: m,
                    recurrence: poly.recurrence.to_string(),
                    partner: partner.clone(),
                    status: word,
                    spectra_equal: None,
                    reversal_bijective: None,
                    first_unmatched: None,
                    detail: Some(e.to_string()),
                };
                (rec, s)
            }
        })
        .collect();
    let status = out.iter().map(|(_, s)| *s).max().unwrap_or(Status::Ok);
    Ok((out.into_iter().map(|(r, _)| r).collect(), status))
}

fn divisor_pairs(moduli: &[u64], d: Option<u64>) -> Result<Vec<(u64, u64)>, CliError> {
    let mut pairs = Vec::new();
    for &m in moduli {
        match d {
            Some(d) if d == 0 || m % d != 0 => return Err(CliError::Usage(format!("{d} does not divide {m}"))),
            Some(d) => pairs.push((m, d)),
            None => pairs.extend(divisors(m).into_iter().map(|d| (m, d))),
        }
    }
    Ok(pairs)
}

pub(super) fn verify(
    family: VerifyFamily,
    params: &FamilyParams,
    moduli: Option<&[u64]>,
    p_max: Option<u64>,
    k_max: u32,
    poly: &PolySpec,
    cfg: &RunConfig,
) -> Result<Report, CliError> {
    let need_m = || moduli.ok_or_else(|| CliError::Usage("--m is required".into()));
    let spectral = |f: PredictFamily| -> Result<Report, CliError> {
        let fam = family_from(f, params)?;
        let (records, status) = verify_spectral(fam, need_m()?, cfg)?;
        Ok(Report::new("verify", &["instance", "modulus", "status", "predicted", "observed"], &records, status))
    };
    match family {
        VerifyFamily::PhiP => spectral(PredictFamily::PhiP),
        VerifyFamily::Phi2p => spectral(PredictFamily::Phi2p),
        VerifyFamily::PhiPj => spectral(PredictFamily::PhiPj),
        VerifyFamily::Pow => spectral(PredictFamily::Pow),
        VerifyFamily::FibPrime => {
            let primes = prime_selection(params.p, Some(p_max.unwrap_or(200)))?;
            let (records, status) = classify_primes(&primes, cfg);
            Ok(Report::new("verify", CLASS_HEADER, &records, status))
        }
        VerifyFamily::SelfSimilarity => {
            let primes = prime_selection(params.p, p_max)?;
            let (records, status) = self_similarity(&primes, k_max, cfg)?;
            Ok(Report::new("verify", &["p", "status", "class", "modulus", "spectrum"], &records, status))
        }
        VerifyFamily::Weights => {
            let pairs = divisor_pairs(need_m()?, None)?;
            validate_invertible(poly, need_m()?)?;
            let (records, status) = weight_records(poly, &pairs, cfg);
            Ok(Report::new("verify", WEIGHT_HEADER, &records, status))
        }
        VerifyFamily::Chiral => {
            let (records, status) = chiral_records(poly, need_m()?, cfg)?;
            Ok(Report::new("verify", CHIRAL_HEADER, &records, status))
        }
    }
}

pub(super) fn classify(p: Option<u64>, p_max: Option<u64>, cfg: &RunConfig) -> Result<Report, CliError> {
    let primes = prime_selection(p, p_max)?;
    let (records, status) = classify_primes(&primes, cfg);
    Ok(Report::new("classify", CLASS_HEADER, &records, status))
}

pub(super) fn weights(moduli: &[u64], d: Option<u64>, poly: &PolySpec, cfg: &RunConfig) -> Result<Report, CliError> {
    let pairs = divisor_pairs(moduli, d)?;
    validate_invertible(poly, moduli)?;
    let (records, status) = weight_records(poly, &pairs, cfg);
    Ok(Report::new("weights", WEIGHT_HEADER, &records, status))
}

pub(super) fn chiral(poly: &PolySpec, moduli: &[u64], cfg: &RunConfig) -> Result<Report, CliError> {
    let (records, status) = chiral_records(poly, moduli, cfg)?;
    Ok(Report::new("chiral", CHIRAL_HEADER, &records, status))
}

// ---------------------------------------------------------------- minima

#[derive(Serialize)]
struct MinimaRow {
    n: i64,
    analytic: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    empirical: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    std_error: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    within_tolerance: Option<bool>,
}

#[derive(Serialize)]
struct MinimaRecord {
    recurrence: Quadratic,
    #[serde(skip_serializing_if = "Option::is_none")]
    samples: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    mode: Option<String>,
    status: &'static str,
    rows: Vec<MinimaRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    analytic: Option<AnalyticSummary>,
}

#[derive(Serialize)]
struct AnalyticSummary {
    #[serde(flatten)]
    report: AnalyticReport,
    mediant_holds: bool,
    lucas_ties_hold: bool,
}

fn kind_name(k: Quadratic) -> &'static str {
    match k {
        Quadratic::Fibonacci => "fibonacci",
        Quadratic::Parity => "parity",
    }
}

impl Record for MinimaRecord {
    fn csv_rows(&self) -> Vec<Vec<String>> {
        let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        self.rows
            .iter()
            .map(|r| {
                vec![
                    kind_name(self.recurrence).into(),
                    r.n.to_string(),
                    r.analytic.to_string(),
                    opt(r.empirical),
                    opt(r.std_error),
                ]
            })
            .collect()
    }

    fn text(&self) -> String {
        let mut s = format!("{}: {}", kind_name(self.recurrence), self.status);
        if let Some(n) = self.samples {
            s += &format!(" ({n} samples)");
        }
        for r in &self.rows {
            s += &format!("\n  n={:>4}  P={:.6}", r.n, r.analytic);
            if let (Some(e), Some(se)) = (r.empirical, r.std_error) {
                s += &format!("  P^={e:.6}  se={se:.6}");
            }
        }
        if let Some(a) = &self.analytic {
            s += &format!(
                "\n  symmetry gap {:e}, truncated sum {}, mediant {}, lucas ties {}",
                a.report.max_symmetry_gap, a.report.truncated_sum, a.mediant_holds, a.lucas_ties_hold
            );
        }
        s
    }
}

pub(super) fn minima(
    samples: u64,
    mode: MinimaMode,
    box_size: i64,
    which: MinimaRecurrence,
    range: &[i64],
    analytic_only: bool,
    cfg: &RunConfig,
) -> Result<Report, CliError> {
    let kinds: &[Quadratic] = match which {
        MinimaRecurrence::Fibonacci => &[Quadratic::Fibonacci],
        MinimaRecurrence::Parity => &[Quadratic::Parity],
        MinimaRecurrence::Both => &[Quadratic::Fibonacci, Quadratic::Parity],
    };
    let header = ["recurrence", "n", "analytic", "empirical", "std_error"];
    if analytic_only {
        let n_max = range.iter().map(|&n| n.max(1 - n)).max().unwrap_or(1).saturating_sub(1).max(0);
        let report = analytic_report(n_max);
        let mediant_holds = mediant_check(30).map(|r| r.holds).unwrap_or(false);
        let lucas_ties_hold = lucas_tie_checks(20).map(|v| v.iter().all(|t| t.tie)).unwrap_or(false);
        let ok = report.first_nonpositive.is_none()
            && report.max_symmetry_gap <= 1e-12
            && report.truncated_sum <= 1.0 + 1e-12
            && mediant_holds
            && lucas_ties_hold;
        let record = MinimaRecord {
            recurrence: kinds[0],
            samples: None,
            mode: None,
            status: if ok { "consistent" } else { "violation" },
            rows: range
                .iter()
                .map(|&n| MinimaRow { n, analytic: minima_probability(n), empirical: None, std_error: None, within_tolerance: None })
                .collect(),
            analytic: Some(AnalyticSummary { report, mediant_holds, lucas_ties_hold }),
        };
        let status = if ok { Status::Ok } else { Status::Mismatch };
        return Ok(Report::new("minima", &header, &[record], status));
    }
    let sampling = match mode {
        MinimaMode::Angle => SamplingMode::Angle,
        MinimaMode::Box if box_size >= 1 => SamplingMode::IntegerBox(box_size),
        MinimaMode::Box => return Err(CliError::Usage("--box-size must be positive".into())),
    };
    if samples == 0 {
        return Err(CliError::Usage("--samples must be positive".into()));
    }
    let mut status = Status::Ok;
    let mut records = Vec::new();
    for &kind in kinds {
        let dist = simulate_minima(samples, sampling, kind, cfg.rng_seed, DEFAULT_SHARDS)
            .map_err(|e| CliError::Usage(e.to_string()))?;
        let rows: Vec<MinimaRow> = range
            .iter()
            .map(|&n| {
                let analytic = minima_probability(n);
                let empirical = dist.probability(n);
                let se = dist.standard_error(n).unwrap_or(0.0);
                MinimaRow {
                    n,
                    analytic,
                    empirical: Some(empirical),
                    std_error: Some(se),
                    within_tolerance: Some((analytic - empirical).abs() <= 3.0 * se),
                }
            })
            .collect();
        let ok = rows.iter().all(|r| r.within_tolerance == Some(true));
        if !ok {
            status = Status::Mismatch;
        }
        records.push(MinimaRecord {
            recurrence: kind,
            samples: Some(samples),
            mode: Some(match sampling {
                SamplingMode::Angle => "angle".into(),
                SamplingMode::IntegerBox(n) => format!("box:{n}"),
            }),
            status: if ok { "within_tolerance" } else { "outside_tolerance" },
            rows,
            analytic: None,
        });
    }
    Ok(Report::new("minima", &header, &records, status))
}

// ---------------------------------------------------------------- pisano

#[derive(Serialize)]
struct PisanoRecord {
    m: u64,
    period: u64,
}

impl Record for PisanoRecord {
    fn csv_rows(&self) -> Vec<Vec<String>> {
        vec![vec![self.m.to_string(), self.period.to_string()]]
    }

    fn text(&self) -> String {
        format!("pi({}) = {}", self.m, self.period)
    }
}

pub(super) fn pisano(moduli: &[u64], cfg: &RunConfig) -> Result<Report, CliError> {
    let limits = cfg.limits();
    let records = moduli
        .par_iter()
        .map(|&m| Ok(PisanoRecord { m, period: pisano_period(m, &limits)? }))
        .collect::<Result<Vec<_>, LandscapeError>>()?;
    Ok(Report::new("pisano", &["m", "period"], &records, Status::Ok))
}
