//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

use std::collections::BTreeSet;
use std::time::Instant;

use num_rational::Ratio;
use period_landscape::cli;
use period_landscape::fibclass::{
    check_chiral, check_self_similarity, check_weight_preservation, classify_prime, weight_reports, ClassLabel,
};
use period_landscape::landscape::{
    cycle_from_digits, enumerate_landscape, pisano_period, LandscapeError, Limits, Spectrum,
};
use period_landscape::minima::{
    analytic_report, mediant_check, minima_probability, simulate_minima, Quadratic, SamplingMode, DEFAULT_SHARDS,
};
use period_landscape::numtheory::{divisors, primes_up_to};
use period_landscape::polynomial::Recurrence;
use period_landscape::predict::{exact_quotient, necklace_count, verify_prediction, Family, PredictError};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn spectrum_of(pairs: &[(u64, u64)]) -> Spectrum {
    pairs.iter().copied().collect()
}

fn golden_counts() -> Outcome {
    let limits = Limits::default();
    let cases = [
        (Family::PhiP { p: 5 }, 10, 2004, spectrum_of(&[(1, 5), (5, 1999)])),
        (Family::Phi2P { p: 5 }, 10, 1004, spectrum_of(&[(1, 1), (2, 2), (5, 3), (10, 998)])),
        (Family::PhiPj { p: 3, j: 2 }, 12, 331_784, spectrum_of(&[(1, 3), (3, 8), (9, 331_773)])),
        (Family::PowerCycle { n: 6 }, 4, 700, spectrum_of(&[(1, 4), (2, 6), (3, 20), (6, 670)])),
    ];
    for (family, m, total, spectrum) in cases {
        let r = family.recurrence().map_err(|e| e.to_string())?;
        let observed = enumerate_landscape(&r, m, false, &limits).map_err(|e| e.to_string())?;
        let predicted = family.predict(m).map_err(|e| e.to_string())?;
        let report = verify_prediction(&predicted, &observed);
        ensure(report.matched, || format!("{family} mod {m}: predictor and enumeration disagree"))?;
        ensure(observed.total_cycles() == total, || format!("{family} mod {m}: {} cycles", observed.total_cycles()))?;
        ensure(observed.spectrum() == &spectrum, || format!("{family} mod {m}: {}", observed.spectrum()))?;
    }
    Ok("4 instances, enumeration = predictor = golden".into())
}

fn small_moduli() -> Outcome {
    const FIB: &[(u64, &[&str])] = &[
        (1, &["0"]),
        (2, &["110", "0"]),
        (3, &["11202210", "0"]),
        (4, &["332130", "112310", "220", "0"]),
        (5, &["11230331404432022410", "3421", "0"]),
        (6, &["22404420", "330", "0", "112352134150554314532510"]),
    ];
    const PAR: &[(u64, &[&str])] = &[
        (1, &["0"]),
        (2, &["0", "011"]),
        (3, &["0", "01220211"]),
        (4, &["0", "022", "013211", "031233"]),
        (5, &["0", "1243", "01422023440413303211"]),
        (6, &["0", "033", "02440422", "015235413455051431253211"]),
    ];
    let limits = Limits::default();
    for (r, table) in [(Recurrence::fibonacci(), FIB), (Recurrence::parity(), PAR)] {
        for &(m, periods) in table {
            let l = enumerate_landscape(&r, m, true, &limits).map_err(|e| e.to_string())?;
            let observed: BTreeSet<String> = l.cycles().unwrap().iter().filter_map(|c| c.digits()).collect();
            let expected: BTreeSet<String> = periods
                .iter()
                .map(|d| cycle_from_digits(d, m).map(|c| c.digits().unwrap()).map_err(|e| e.to_string()))
                .collect::<Result<_, _>>()?;
            ensure(observed == expected, || format!("{r} mod {m}: {observed:?} vs {expected:?}"))?;
        }
    }
    let pisano: Vec<u64> = (1..=6).map(|m| pisano_period(m, &limits).unwrap()).collect();
    ensure(pisano == [1, 3, 8, 6, 20, 24], || format!("pisano {pisano:?}"))?;
    Ok("both recurrences, m = 1..6, pisano 1 3 8 6 20 24".into())
}

fn prime_classes() -> Outcome {
    let limits = Limits::default();
    let c = |p| classify_prime(p, &limits).map_err(|e| e.to_string());
    let c47 = c(47)?;
    ensure(
        (c47.class_label, c47.alpha, c47.pisano, c47.observed_spectrum.total_cycles()) == (ClassLabel::A, Some(3), 32, 70),
        || format!("47: {c47:?}"),
    )?;
    let c89 = c(89)?;
    ensure(
        (c89.class_label, c89.alpha, c89.pisano, c89.observed_spectrum.total_cycles()) == (ClassLabel::B1, Some(2), 44, 181),
        || format!("89: {c89:?}"),
    )?;
    let c11 = c(11)?;
    ensure(
        (c11.class_label, c11.alpha, c11.pisano) == (ClassLabel::B2, Some(1), 10)
            && c11.observed_spectrum == spectrum_of(&[(1, 1), (5, 2), (10, 11)]),
        || format!("11: {c11:?}"),
    )?;
    let c19 = c(19)?;
    ensure(
        c19.class_label == ClassLabel::B2 && c19.observed_spectrum == spectrum_of(&[(1, 1), (9, 2), (18, 19)]),
        || format!("19: {c19:?}"),
    )?;
    let primes = primes_up_to(200);
    for &p in &primes {
        let k = c(p)?;
        if k.class_label != ClassLabel::Special {
            ensure(k.prediction_matches(), || format!("p = {p}: predicted {:?}, observed {}", k.predicted_spectrum, k.observed_spectrum))?;
        }
    }
    Ok(format!("{} primes <= 200 (2 and 5 special)", primes.len()))
}

fn self_similarity() -> Outcome {
    let r = check_self_similarity(19, 2, &Limits::default()).map_err(|e| e.to_string())?;
    let level = &r.levels[1];
    let expected = spectrum_of(&[(1, 1), (9, 2), (18, 19), (171, 2), (342, 379)]);
    ensure(level.modulus == 361 && level.spectrum == expected, || format!("361: {}", level.spectrum))?;
    ensure(r.holds, || format!("{:?}", r.transitions))?;
    ensure(r.transitions[0].middle_constant == Some(true), || "middle multiplicity changed".into())?;
    Ok("19 -> 361 {1:1, 9:2, 18:19, 171:2, 342:379}".into())
}

fn weight_preservation() -> Outcome {
    let limits = Limits::default();
    let mut pairs = 0;
    for m in 1..=30 {
        for report in weight_reports(m, &limits).map_err(|e| e.to_string())? {
            pairs += 1;
            ensure(report.holds, || format!("m = {m}, d = {}", report.d))?;
        }
    }
    let weights = |d| -> Result<Vec<Ratio<u64>>, String> {
        let r = check_weight_preservation(6, d, &limits).map_err(|e| e.to_string())?;
        Ok(r.groups.iter().map(|g| g.lifted_weight).collect())
    };
    let w2 = weights(2)?;
    let w3 = weights(3)?;
    ensure(w2 == [Ratio::new(1, 4), Ratio::new(3, 4)], || format!("m=6, d=2: {w2:?}"))?;
    ensure(w3 == [Ratio::new(1, 9), Ratio::new(8, 9)], || format!("m=6, d=3: {w3:?}"))?;
    Ok(format!("{pairs} (m, d) pairs, m <= 30; 1/4 3/4 1/9 8/9"))
}

fn chiral_symmetry() -> Outcome {
    let limits = Limits::default();
    for m in 1..=60 {
        let r = check_chiral(&Recurrence::fibonacci(), m, &limits).map_err(|e| e.to_string())?;
        ensure(r.holds && r.reversal_bijective == Some(true), || format!("fib mod {m}: {r:?}"))?;
    }
    let order6 = Recurrence::new(vec![0, 0, 1, 0, 0, 1]).unwrap();
    for m in 1..=8 {
        let r = check_chiral(&order6, m, &limits).map_err(|e| e.to_string())?;
        ensure(r.spectra_equal && r.holds, || format!("order 6 mod {m}: {r:?}"))?;
    }
    Ok("fibonacci/parity m <= 60, order-6 pair m <= 8".into())
}

/// Aperiodic words of length `r` over `m` letters, divided by `r`.
fn brute_necklaces(m: u64, r: u32) -> u64 {
    let total = m.pow(r);
    let aperiodic = (0..total)
        .filter(|&w| {
            let digits: Vec<u64> = (0..r).map(|i| w / m.pow(i) % m).collect();
            let r = r as usize;
            (1..r).all(|s| !r.is_multiple_of(s) || (0..r).any(|i| digits[i] != digits[(i + s) % r]))
        })
        .count() as u64;
    aperiodic / r as u64
}

fn necklaces() -> Outcome {
    let n = |m, r| necklace_count(m, r).map_err(|e| e.to_string());
    ensure(n(3, 3)? == 8 && n(4, 2)? == 6 && n(4, 3)? == 20, || "small necklace values".into())?;
    for m in 1..=8u64 {
        for len in 1..=12u64 {
            let sum: u128 = divisors(len).into_iter().map(|r| r as u128 * n(m, r).unwrap() as u128).sum();
            ensure(sum == (m as u128).pow(len as u32), || format!("partition m = {m}, n = {len}"))?;
        }
    }
    for m in 1..=4u64 {
        for r in 1..=8u32 {
            ensure(n(m, r as u64)? == brute_necklaces(m, r), || format!("brute force m = {m}, r = {r}"))?;
        }
    }
    Ok("M(3,3)=8 M(4,2)=6 M(4,3)=20; partition m<=8 n<=12; brute m<=4 r<=8".into())
}

fn minima_distribution() -> Outcome {
    let mut worst: f64 = 0.0;
    for kind in [Quadratic::Fibonacci, Quadratic::Parity] {
        let d = simulate_minima(1_000_000, SamplingMode::Angle, kind, 42, DEFAULT_SHARDS).map_err(|e| e.to_string())?;
        for n in -6..=7 {
            let se = d.standard_error(n).unwrap();
            let z = (d.probability(n) - minima_probability(n)).abs() / se;
            worst = worst.max(z);
            ensure(z <= 3.0, || format!("{kind:?} n = {n}: P^ = {}, P = {}, se = {se}", d.probability(n), minima_probability(n)))?;
        }
    }
    ensure(minima_probability(0) == 0.25 && minima_probability(1) == 0.25, || "P(0), P(1)".into())?;
    let a = analytic_report(40);
    ensure(a.max_symmetry_gap <= 1e-12, || format!("symmetry gap {}", a.max_symmetry_gap))?;
    ensure(
        a.truncated_sum >= 1.0 - 1e-6 && a.truncated_sum <= 1.0 + 1e-12,
        || format!("truncated sum {}", a.truncated_sum),
    )?;
    ensure(a.first_nonpositive.is_none(), || format!("P({:?}) <= 0", a.first_nonpositive))?;
    Ok(format!("10^6 angle samples x 2, max |z| = {worst:.2}; sum {:.12}", a.truncated_sum))
}

fn mediants() -> Outcome {
    let r = mediant_check(30).map_err(|e| e.to_string())?;
    ensure(r.holds, || format!("{:?}", r.entries.iter().find(|e| !(e.between && e.equals_mediant))))?;
    Ok("3 <= i <= 30".into())
}

fn cli_code(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = cli::run(std::iter::once("period-landscape").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8_lossy(&out).into_owned())
}

fn robustness() -> Outcome {
    match exact_quotient(7, 2, "test") {
        Err(PredictError::IntegralityViolation { numerator: 7, denominator: 2, .. }) => {}
        other => return Err(format!("integrality: {other:?}")),
    }
    let violation = serde_json::to_value(exact_quotient(-4, 2, "x").unwrap_err()).map_err(|e| e.to_string())?;
    ensure(violation.get("IntegralityViolation").is_some(), || format!("serialized {violation}"))?;

    match (Family::Phi2P { p: 3 }).predict(5) {
        Err(PredictError::UncoveredCase { p: 3, m: 5 }) => {}
        other => return Err(format!("uncovered: {other:?}")),
    }
    let (code, _) = cli_code(&["predict", "phi_2p", "--p", "3", "--m", "5"]);
    ensure(code == cli::EXIT_USAGE, || format!("predict uncovered exit {code}"))?;
    let (code, out) = cli_code(&["verify", "phi_2p", "--p", "3", "--m", "5"]);
    ensure(code == cli::EXIT_OK && out.contains("\"uncovered\""), || format!("verify uncovered exit {code}"))?;

    let small = Limits { state_cap: 1000, ..Limits::default() };
    match enumerate_landscape(&Recurrence::fibonacci(), 100, false, &small) {
        Err(LandscapeError::CapExceeded { states: 10_000, cap: 1000 }) => {}
        other => return Err(format!("cap: {other:?}")),
    }
    let (code, _) = cli_code(&["landscape", "fib", "100", "--state-cap", "1000"]);
    ensure(code == cli::EXIT_CAP, || format!("cap exit {code}"))?;
    Ok("integrality, uncovered case, cap: structured errors and exit codes 2/0/3".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("golden counts", golden_counts),
        ("small-modulus landscapes", small_moduli),
        ("prime classification", prime_classes),
        ("self-similarity", self_similarity),
        ("weight preservation", weight_preservation),
        ("chiral symmetry", chiral_symmetry),
        ("necklace identities", necklaces),
        ("minima distribution", minima_distribution),
        ("mediant property", mediants),
        ("robustness", robustness),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({secs:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
