//! Acceptance criteria 1-10. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

mod support;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rug::Float;

use nrs_core::auxfun::{aux_function, build_aux_system};
use nrs_core::genluk::{count_with_degree_sequence, DegreeSequence};
use nrs_core::hyper::{count_identity_mismatches, equivalence_report, series_grade, tree_grade};
use nrs_core::mpoly::MPoly;
use nrs_core::nrs::{newton_run, run, IterationRow, RunOptions, RunReport, Verdict};
use nrs_core::scalars::{polynomial_roots, Mode, Polynomial, Scalar};
use nrs_core::xi::{jensen_polynomial, xi_coefficients};

const PREC: u32 = 384;
const FLOAT: Mode = Mode::Float(PREC);

const QUINTIC_M1: &str = include_str!("../../cli/tests/golden/quintic_m1.csv");
const QUINTIC_M2: &str = include_str!("../../cli/tests/golden/quintic_m2.csv");
const QUINTIC_M3: &str = include_str!("../../cli/tests/golden/quintic_m3.csv");
const QUINTIC_M4: &str = include_str!("../../cli/tests/golden/quintic_m4.csv");

/// Printed cells replaced before comparison: (table, n, column index, value).
const ERRATA: &[(&str, usize, usize, &str)] = &[("m2", 8, 2, "1.336321214e-31")];

type Check = Result<String, String>;

fn criterion(id: u32, name: &str, budget: Option<Duration>, f: impl FnOnce() -> Check) -> bool {
    let start = Instant::now();
    let outcome = f();
    let elapsed = start.elapsed();
    let outcome = match (outcome, budget) {
        (Ok(d), Some(b)) if elapsed > b => Err(format!("{d}; took {:.2?}, budget {:.0?}", elapsed, b)),
        (o, _) => o,
    };
    let (tag, detail, ok) = match outcome {
        Ok(d) => ("PASS", d, true),
        Err(d) => ("FAIL", d, false),
    };
    println!("[{tag}] {id:>2}. {name}: {detail} ({:.2?})", elapsed);
    ok
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Agreement to nine significant digits of the printed value.
fn nine_digits(computed: &Scalar, printed: &str) -> bool {
    let p: f64 = printed.parse().expect("printed value");
    let c = computed.to_f64();
    if p == 0.0 {
        return computed.is_zero();
    }
    let e = p.abs().log10().floor() as i32;
    (c - p).abs() < 0.5 * 10f64.powi(e - 8)
}

fn cells(row: &IterationRow, m: usize) -> Vec<&Scalar> {
    let mut out: Vec<&Scalar> = if m > 1 { row.j.iter().collect() } else { Vec::new() };
    out.push(&row.total);
    out.push(&row.partial_sum);
    out
}

/// Compares every printed cell with the run; returns the number of cells checked.
fn compare_table(name: &str, golden: &str, report: &RunReport, m: usize) -> Result<usize, String> {
    let mut checked = 0;
    let mut bad = Vec::new();
    for line in golden.lines().skip(1).filter(|l| !l.is_empty()) {
        let fields: Vec<&str> = line.split(',').collect();
        let n: usize = fields[0].parse().unwrap();
        let row = report.rows.get(n).ok_or_else(|| format!("{name}: run stopped before n = {n}"))?;
        for (col, (printed, value)) in fields[1..].iter().zip(cells(row, m)).enumerate() {
            let col = col + 1;
            let printed = ERRATA
                .iter()
                .find(|(t, en, c, _)| *t == name && *en == n && *c == col)
                .map_or(*printed, |(_, _, _, v)| *v);
            checked += 1;
            if !nine_digits(value, printed) {
                bad.push(format!("n={n} col {col}: printed {printed}, computed {}", value.to_f64()));
            }
        }
    }
    ensure(bad.is_empty(), || format!("{name}: {}", bad.join("; ")))?;
    Ok(checked)
}

fn quintic_run(m: usize) -> Result<RunReport, String> {
    let report = run(&support::quintic(), m, &RunOptions::default()).map_err(|e| e.to_string())?;
    ensure(report.verdict == Verdict::Converged, || format!("m = {m}: verdict {:?}", report.verdict))?;
    Ok(report)
}

fn limit_check(report: &RunReport, expected: &str) -> Result<(), String> {
    let got = &report.last().partial_sum;
    ensure(nine_digits(got, expected), || format!("limit {} vs {expected}", got.to_f64()))
}

fn c1_quintic_m1() -> Check {
    let r = quintic_run(1)?;
    let n = compare_table("m1", QUINTIC_M1, &r, 1)?;
    let last = r.last().partial_sum.to_f64();
    ensure((last - 1.0).abs() < 1e-9, || format!("final partial sum {last}"))?;
    Ok(format!("{n} cells to 9 digits, limit {last:.12}"))
}

fn c2_quintic_m2() -> Check {
    let r = quintic_run(2)?;
    let n = compare_table("m2", QUINTIC_M2, &r, 2)?;
    let row1 = &r.rows[1];
    for (v, printed) in [(&row1.j[0], "-4.659688684e-1"), (&row1.j[1], "1.285700049"), (&row1.total, "8.197311805e-1")] {
        ensure(nine_digits(v, printed), || format!("first step {} vs {printed}", v.to_f64()))?;
    }
    limit_check(&r, "3.000000000")?;
    Ok(format!("{n} cells to 9 digits (J_1,2(8) read as e-31), limit 3.000000000"))
}

fn c3_quintic_m3_m4() -> Check {
    let r3 = quintic_run(3)?;
    let n3 = compare_table("m3", QUINTIC_M3, &r3, 3)?;
    ensure(nine_digits(&r3.rows[1].total, "1.814118062"), || "J_3(1)".into())?;
    limit_check(&r3, "7.000000000")?;
    let r4 = quintic_run(4)?;
    let n4 = compare_table("m4", QUINTIC_M4, &r4, 4)?;
    ensure(nine_digits(&r4.rows[1].total, "3.552452499"), || "J_4(1)".into())?;
    limit_check(&r4, "15.00000000")?;
    Ok(format!("{} cells to 9 digits, limits 7 and 15", n3 + n4))
}

fn c4_full_degree() -> Check {
    let opts = RunOptions { mode: Mode::Exact, ..RunOptions::default() };
    let r = run(&support::quintic(), 5, &opts).map_err(|e| e.to_string())?;
    ensure(r.rows.len() == 2, || format!("{} rows", r.rows.len()))?;
    let expected = Scalar::from_i64(Mode::Exact, 31);
    ensure(r.last().partial_sum == expected, || format!("got {:?}", r.last().partial_sum))?;
    ensure(r.verdict == Verdict::Converged, || format!("{:?}", r.verdict))?;
    Ok("exact 31 after one step".into())
}

fn c5_newton() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let bound = Float::with_val(PREC, Float::i_exp(1, -344));
    let mut worst = Float::new(PREC);
    for i in 0..20 {
        let degree = 2 + i % 5;
        let roots = support::random_roots(&mut rng, degree, 1, 50, 1.0);
        let p = Polynomial::from_roots(&roots).and_then(|p| p.to_mode(FLOAT)).map_err(|e| e.to_string())?;
        let c = newton_run(&p, 10, FLOAT).map_err(|e| e.to_string())?;
        let opts = RunOptions { max_steps: 9, tol: Some(Float::new(PREC)), mode: FLOAT };
        let r = run(&p, 1, &opts).map_err(|e| e.to_string())?;
        ensure(r.rows.len() == 10, || format!("polynomial {i}: {} rows", r.rows.len()))?;
        for (row, cn) in r.rows.iter().zip(&c[1..]) {
            let rel = Float::with_val(PREC, (row.partial_sum.to_float(PREC) - cn.to_float(PREC)) / cn.to_float(PREC)).abs();
            if rel > worst {
                worst = rel;
            }
        }
    }
    ensure(worst < bound, || format!("max relative deviation {:e}", worst.to_f64()))?;
    Ok(format!("20 polynomials, max relative deviation {:.3e} < 2^-344", worst.to_f64()))
}

fn valid_word(letters: &[i64]) -> bool {
    let mut total = 0;
    for (i, &l) in letters.iter().enumerate() {
        total += l - 1;
        if total < 0 && i + 1 < letters.len() {
            return false;
        }
    }
    total == -1
}

fn c6_counting() -> Check {
    const ALPHABET: [i64; 6] = [-2, -1, 0, 2, 3, 4];
    const MAX_LETTERS: usize = 8;
    // brute force: every word over the alphabet, tallied by letter multiset
    let mut brute: BTreeMap<Vec<(i64, u64)>, u64> = BTreeMap::new();
    for len in 1..=MAX_LETTERS {
        let mut idx = vec![0usize; len];
        loop {
            let word: Vec<i64> = idx.iter().map(|&i| ALPHABET[i]).collect();
            if valid_word(&word) {
                let mut tally: BTreeMap<i64, u64> = BTreeMap::new();
                for l in word {
                    *tally.entry(l).or_insert(0) += 1;
                }
                *brute.entry(tally.into_iter().collect()).or_insert(0) += 1;
            }
            let mut pos = len;
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < ALPHABET.len() {
                    break;
                }
                idx[pos] = 0;
            }
            if idx.iter().all(|&i| i == 0) {
                break;
            }
        }
    }
    // every complete multiset of at most eight letters
    let mut sequences = Vec::new();
    let mut counts = [0u64; 6];
    fn rec(pos: usize, left: u64, counts: &mut [u64; 6], out: &mut Vec<Vec<(i64, u64)>>) {
        if pos == ALPHABET.len() {
            let excess: i64 = ALPHABET.iter().zip(counts.iter()).map(|(&k, &n)| (k - 1) * n as i64).sum();
            if excess == -1 {
                out.push(ALPHABET.iter().zip(counts.iter()).filter(|(_, &n)| n > 0).map(|(&k, &n)| (k, n)).collect());
            }
            return;
        }
        for n in 0..=left {
            counts[pos] = n;
            rec(pos + 1, left - n, counts, out);
        }
        counts[pos] = 0;
    }
    rec(0, MAX_LETTERS as u64, &mut counts, &mut sequences);
    let mut mismatches = Vec::new();
    for seq in &sequences {
        let d = DegreeSequence::new(seq.iter().copied()).map_err(|e| e.to_string())?;
        let formula = count_with_degree_sequence(&d).map_err(|e| e.to_string())?;
        let found = brute.get(seq).copied().unwrap_or(0);
        if formula != found {
            mismatches.push(format!("{d}: formula {formula}, brute force {found}"));
        }
    }
    let words: u64 = brute.values().sum();
    ensure(brute.keys().all(|k| sequences.contains(k)), || "brute force hit an incomplete sequence".into())?;
    ensure(mismatches.is_empty(), || mismatches.join("; "))?;
    Ok(format!("{} degree sequences, {words} words, 0 mismatches", sequences.len()))
}

fn c7_series() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..10 {
        let p = support::random_exact_poly(&mut rng, 5);
        for grade in 1..=6 {
            let t = tree_grade(&p, 1, grade, Mode::Exact).map_err(|e| e.to_string())?;
            let s = series_grade(&p, 1, grade as u64 - 1, Mode::Exact).map_err(|e| e.to_string())?;
            ensure(t == s, || format!("m = 1, polynomial {i}, grade {grade}: tree {t:?} vs series {s:?}"))?;
        }
    }
    let mut verdicts = Vec::new();
    for m in [2, 3] {
        let mut seen = Vec::new();
        for _ in 0..10 {
            let p = support::random_exact_poly(&mut rng, 5);
            let r = equivalence_report(&p, m, 5).map_err(|e| e.to_string())?;
            seen.push(r.verdict);
        }
        ensure(seen.iter().all(|v| *v == seen[0]), || format!("m = {m}: unstable verdicts {seen:?}"))?;
        verdicts.push(format!("m={m}: {:?}", seen[0]));
    }
    let mut tuples = 0;
    for n in 1..=6 {
        for j in 1..=n {
            let (checked, bad) = count_identity_mismatches(n, j, 7).map_err(|e| e.to_string())?;
            ensure(bad.is_empty(), || format!("count identity fails for {:?}", bad))?;
            tuples += checked;
        }
    }
    Ok(format!(
        "m=1 equal through grade 6 on 10 polynomials; stable verdicts {}; count identity on {tuples} tuples",
        verdicts.join(", ")
    ))
}

fn c8_root_sum() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst = 0f64;
    for i in 0..10 {
        let roots = support::random_roots(&mut rng, 5, 1, 100, 1.5);
        let p = Polynomial::from_roots(&roots).and_then(|p| p.to_mode(FLOAT)).map_err(|e| e.to_string())?;
        let mut found = polynomial_roots(&p, PREC).map_err(|e| e.to_string())?;
        found.sort_by(|a, b| a.modulus().partial_cmp(&b.modulus()).unwrap());
        for m in 1..=4 {
            let r = run(&p, m, &RunOptions::default()).map_err(|e| e.to_string())?;
            ensure(r.verdict == Verdict::Converged, || format!("polynomial {i}, m = {m}: {:?}", r.verdict))?;
            let mut sum = Float::new(PREC);
            for z in &found[..m] {
                sum += z.re.to_float(PREC);
            }
            let diff = Float::with_val(PREC, r.last().partial_sum.to_float(PREC) - &sum).abs().to_f64();
            worst = worst.max(diff);
            ensure(diff < 1e-20, || format!("polynomial {i}, m = {m}: |limit - root sum| = {diff:e}"))?;
        }
    }
    Ok(format!("10 polynomials, m = 1..4, max |limit - root sum| = {worst:.3e}"))
}

fn c9_xi() -> Check {
    let s = xi_coefficients(100, 8, PREC).map_err(|e| e.to_string())?;
    let printed: [(&str, f64); 4] = [("a_0", 9.9424e-1), ("a_1", -2.2982e-2), ("a_2", 2.4488e-4), ("a_3", -1.5251e-6)];
    for (k, (name, p)) in printed.iter().enumerate() {
        let v = s.coefficients[k].to_f64();
        let e = p.abs().log10().floor() as i32;
        ensure((v - p).abs() <= 0.5 * 10f64.powi(e - 4), || format!("{name} = {v:e}, printed {p:e}"))?;
    }
    let bound = Float::with_val(PREC, Float::i_exp(1, -336));
    ensure(s.odd_residual < bound, || format!("odd-power residual {:e}", s.odd_residual.to_f64()))?;
    let f = jensen_polynomial(&s, 3).map_err(|e| e.to_string())?;
    let mut limits = Vec::new();
    for (m, expected, tol) in [(1, 17.601, 0.001), (2, 120.00, 0.01)] {
        let r = run(&f, m, &RunOptions::default()).map_err(|e| e.to_string())?;
        let v = r.last().partial_sum.to_f64();
        ensure(r.verdict == Verdict::Converged && (v - expected).abs() <= tol, || {
            format!("m = {m}: limit {v} ({:?})", r.verdict)
        })?;
        limits.push(format!("{v:.5}"));
    }
    Ok(format!(
        "a_0..a_3 to 5 figures, odd residual {:e}, Jensen limits {}",
        s.odd_residual.to_f64(),
        limits.join(" and ")
    ))
}

fn q(n: i64, d: i64) -> Scalar {
    Scalar::ratio(Mode::Exact, n, d)
}

fn arb_mpoly(m: usize) -> impl Strategy<Value = MPoly> {
    prop::collection::vec((prop::collection::vec(0u32..4, m), -20i64..20, 1i64..6), 0..6)
        .prop_map(move |t| MPoly::from_terms(m, Mode::Exact, t.into_iter().map(|(e, n, d)| (e, q(n, d)))).unwrap())
}

fn arb_point(m: usize) -> impl Strategy<Value = Vec<Scalar>> {
    prop::collection::vec((-30i64..30, 1i64..7), m).prop_map(|v| v.into_iter().map(|(n, d)| q(n, d)).collect())
}

fn arb_exact_poly(max_degree: usize) -> impl Strategy<Value = Polynomial> {
    (2usize..=max_degree).prop_flat_map(|d| {
        prop::collection::vec((-12i64..=12, 1i64..=6), d + 1).prop_filter_map("nonzero coefficients", |v| {
            let coeffs: Vec<Scalar> = v.into_iter().map(|(n, d)| q(n, d)).collect();
            if coeffs.iter().any(Scalar::is_zero) {
                return None;
            }
            Polynomial::new(coeffs).ok()
        })
    })
}

fn suite<S: Strategy>(name: &str, cases: u32, strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<String, String> {
    let mut runner = TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() });
    runner.run(&strategy, test).map_err(|e| format!("{name}: {e}"))?;
    Ok(format!("{name} x{cases}"))
}

fn c10_properties() -> Check {
    let mut done = Vec::new();
    done.push(suite("gradient vs finite difference", 64, (arb_mpoly(3), arb_point(3), 0usize..3), |(p, v, j)| {
        let pf = p.to_mode(FLOAT).unwrap();
        let vf: Vec<Scalar> = v.iter().map(|s| s.to_mode(FLOAT).unwrap()).collect();
        let h = Scalar::Float(Float::with_val(PREC, Float::i_exp(1, -(PREC as i32) / 3)));
        let mut up = vf.clone();
        up[j] = up[j].try_add(&h).unwrap();
        let mut down = vf.clone();
        down[j] = down[j].try_sub(&h).unwrap();
        let diff = pf.evaluate(&up).unwrap().try_sub(&pf.evaluate(&down).unwrap()).unwrap();
        let fd = diff.try_div(&h.try_add(&h).unwrap()).unwrap();
        let exact = pf.partial_derivative(j).unwrap().evaluate(&vf).unwrap();
        let err = fd.try_sub(&exact).unwrap().abs();
        let bound = Float::with_val(PREC, Float::i_exp(1, -(PREC as i32) / 3)) * exact.abs().to_f64().max(1.0);
        prop_assert!(err.abs_lt(&bound));
        Ok(())
    })?);
    done.push(suite("evaluation homomorphism", 64, (arb_mpoly(3), arb_mpoly(3), arb_point(3)), |(a, b, v)| {
        let av = a.evaluate(&v).unwrap();
        let bv = b.evaluate(&v).unwrap();
        prop_assert_eq!(a.mul(&b).unwrap().evaluate(&v).unwrap(), av.try_mul(&bv).unwrap());
        prop_assert_eq!(a.add(&b).unwrap().evaluate(&v).unwrap(), av.try_add(&bv).unwrap());
        Ok(())
    })?);
    done.push(suite("one-variable closed form", 48, arb_exact_poly(6), |p| {
        prop_assert_eq!(aux_function(1, 0, 0, &p).unwrap(), support::closed_form_m1(&p));
        Ok(())
    })?);
    done.push(suite("vanishing at m = degree", 48, arb_exact_poly(6), |p| {
        prop_assert!(build_aux_system(p.degree(), &p).unwrap().is_zero());
        Ok(())
    })?);
    done.push(suite("block-enumeration oracle, m <= 3, degree <= 5", 24, arb_exact_poly(5), |p| {
        let bad = support::oracle_mismatches(&p, 3, 2);
        prop_assert!(bad.is_empty(), "{:?}", bad);
        Ok(())
    })?);
    Ok(done.join(", "))
}

fn main() {
    let results = [
        criterion(1, "Quintic iteration table, m=1", Some(Duration::from_secs(1)), c1_quintic_m1),
        criterion(2, "Quintic iteration table, m=2", Some(Duration::from_secs(5)), c2_quintic_m2),
        criterion(3, "Quintic iteration tables, m=3 and m=4", Some(Duration::from_secs(30)), c3_quintic_m3_m4),
        criterion(4, "m = degree shortcut", None, c4_full_degree),
        criterion(5, "Newton equivalence", None, c5_newton),
        criterion(6, "Counting oracle", Some(Duration::from_secs(60)), c6_counting),
        criterion(7, "Series equivalence", None, c7_series),
        criterion(8, "Root-sum property", None, c8_root_sum),
        criterion(9, "xi coefficients and Jensen limits", Some(Duration::from_secs(120)), c9_xi),
        criterion(10, "Property suites", None, c10_properties),
    ];
    let passed = results.iter().filter(|&&ok| ok).count();
    println!("{passed}/{} criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
