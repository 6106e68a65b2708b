use std::fs;

use nrs_core::auxfun::build_aux_system;
use nrs_core::genluk::{count_with_degree_sequence, enumerate_by_degree_sequence_with, validate_word, DegreeSequence, PlaneTree};
use nrs_core::hyper::equivalence_report;
use nrs_core::nrs::{newton_run, run as run_nrs, RunOptions, RunReport, Verdict};
use nrs_core::scalars::{parse_scalar, Mode, Polynomial, Scalar, MIN_PRECISION};
use nrs_core::xi::{jensen_coefficients, jensen_polynomial, xi_coefficients};
use nrs_core::Error;
use rug::Float;

use crate::output::{emit, fmt, run_header, run_record};
use crate::{
    AuxArgs, CountArgs, Format, ModeArg, NewtonArgs, PolyArgs, RunArgs, SturmfelsArgs, TreeArgs, XiArgs,
    EXIT_MAX_STEPS, EXIT_MISMATCH, EXIT_SINGULAR, EXIT_VALIDATION,
};

type Outcome = Result<u8, (u8, String)>;

fn validation(e: impl std::fmt::Display) -> (u8, String) {
    (EXIT_VALIDATION, e.to_string())
}

fn from_core(e: Error) -> (u8, String) {
    match e {
        Error::SingularSystem { .. } | Error::SingularMatrix { .. } | Error::DerivativeZero { .. } => {
            (EXIT_SINGULAR, e.to_string())
        }
        e => validation(e),
    }
}

fn finish(outcome: Outcome) -> u8 {
    match outcome {
        Ok(code) => code,
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            code
        }
    }
}

fn check_precision(bits: u32) -> Result<Mode, (u8, String)> {
    if bits < MIN_PRECISION {
        return Err(validation(format!("precision must be at least {MIN_PRECISION} bits")));
    }
    Ok(Mode::Float(bits))
}

/// Parses the coefficient list; a single decimal makes every coefficient a float.
fn load_poly(args: &PolyArgs, precision: u32) -> Result<Polynomial, (u8, String)> {
    let text = match (&args.coeffs, &args.coeff_file) {
        (Some(c), _) => c.clone(),
        (None, Some(path)) => fs::read_to_string(path).map_err(|e| validation(format!("{}: {e}", path.display())))?,
        (None, None) => return Err(validation("no coefficients given")),
    };
    let values = text
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| parse_scalar(t, precision))
        .collect::<Result<Vec<_>, _>>()
        .map_err(validation)?;
    if values.len() < 2 {
        return Err(validation("at least two coefficients are required"));
    }
    let values = if values.iter().any(|v| !v.is_exact()) {
        let mode = Mode::Float(precision);
        values.iter().map(|v| v.to_mode(mode)).collect::<Result<Vec<_>, _>>().map_err(validation)?
    } else {
        values
    };
    Polynomial::new(values).map_err(validation)
}

fn print_report(m: usize, report: &RunReport, format: Format) -> Outcome {
    let records: Vec<Vec<String>> = report.rows.iter().map(|r| run_record(m, r)).collect();
    emit(format, &run_header(m), &records).map_err(validation)?;
    match &report.verdict {
        Verdict::Converged => Ok(0),
        Verdict::MaxSteps => {
            eprintln!("stopped after {} steps without reaching the tolerance", report.last().n);
            Ok(EXIT_MAX_STEPS)
        }
        Verdict::Failed(e) => Err(from_core(e.clone())),
    }
}

pub fn run(a: &RunArgs) -> u8 {
    finish((|| {
        let float_mode = check_precision(a.precision)?;
        let p = load_poly(&a.poly, a.precision)?;
        let mode = match a.mode {
            ModeArg::Exact if !p.mode().is_exact() => {
                return Err(validation("--mode exact needs rational coefficients"))
            }
            ModeArg::Exact => Mode::Exact,
            ModeArg::Float => float_mode,
        };
        let tol = match &a.tol {
            Some(t) => {
                let v = parse_scalar(t, a.precision).map_err(validation)?.to_float(a.precision);
                if v.is_sign_negative() || v.is_zero() {
                    return Err(validation("--tol must be positive"));
                }
                Some(v)
            }
            None => None,
        };
        let opts = RunOptions { max_steps: a.steps, tol, mode };
        let report = run_nrs(&p, a.m, &opts).map_err(from_core)?;
        print_report(a.m, &report, a.format)
    })())
}

pub fn newton(a: &NewtonArgs) -> u8 {
    finish((|| {
        let mode = check_precision(a.precision)?;
        let p = load_poly(&a.poly, a.precision)?;
        let c = newton_run(&p, a.steps, mode).map_err(from_core)?;
        let opts = RunOptions { max_steps: a.steps.saturating_sub(1), tol: Some(Float::new(a.precision)), mode };
        let report = run_nrs(&p, 1, &opts).map_err(from_core)?;
        let mut max_dev = Float::new(a.precision);
        let mut records = Vec::with_capacity(c.len());
        for (n, cn) in c.iter().enumerate() {
            // NRS(1) row n - 1 carries the partial sum that equals c_n
            let partial = n.checked_sub(1).and_then(|k| report.rows.get(k)).map(|r| &r.partial_sum);
            let (ps, dev) = match partial {
                Some(ps) => {
                    let diff = ps.try_sub(cn).map_err(from_core)?.to_float(a.precision).abs();
                    let rel = if cn.is_zero() { diff } else { diff / cn.to_float(a.precision).abs() };
                    if rel > max_dev {
                        max_dev = rel.clone();
                    }
                    (fmt(ps), fmt(&Scalar::Float(rel)))
                }
                None => ("-".to_string(), "-".to_string()),
            };
            records.push(vec![n.to_string(), fmt(cn), ps, dev]);
        }
        let header: Vec<String> = ["n", "c_n", "NRS(1) partial sum", "relative deviation"].map(String::from).into();
        emit(a.format, &header, &records).map_err(validation)?;
        if a.format == Format::Table {
            println!("max relative deviation: {}", fmt(&Scalar::Float(max_dev)));
        }
        Ok(0)
    })())
}

pub fn count(a: &CountArgs) -> u8 {
    finish((|| {
        let d: DegreeSequence = a.seq.parse().map_err(validation)?;
        let formula = count_with_degree_sequence(&d).map_err(validation)?;
        let enumerated = enumerate_by_degree_sequence_with(&d, a.grade_cap).map_err(validation)?.count();
        println!("degree sequence: {d}");
        println!("formula: {formula}");
        println!("enumeration: {enumerated}");
        if formula == enumerated {
            println!("OK");
            Ok(0)
        } else {
            println!("MISMATCH");
            Ok(EXIT_MISMATCH)
        }
    })())
}

pub fn sturmfels(a: &SturmfelsArgs) -> u8 {
    finish((|| {
        let p = load_poly(&a.poly, MIN_PRECISION)?;
        if !p.mode().is_exact() {
            return Err(validation("the comparison needs rational coefficients"));
        }
        let report = equivalence_report(&p, a.m, a.grade_cap).map_err(validation)?;
        print!("{report}");
        Ok(0)
    })())
}

pub fn xi(a: &XiArgs) -> u8 {
    finish((|| {
        let mode = check_precision(a.precision)?;
        let kmax = a.kmax.max(a.jensen.unwrap_or(0));
        let series = xi_coefficients(a.nmax, kmax, a.precision).map_err(from_core)?;
        let records: Vec<Vec<String>> =
            series.coefficients.iter().enumerate().map(|(k, c)| vec![k.to_string(), fmt(c)]).collect();
        emit(a.format, &["k".to_string(), "a_k".to_string()], &records).map_err(validation)?;
        if a.format == Format::Table {
            println!("odd-power residual: {}", fmt(&Scalar::Float(series.odd_residual.clone())));
        }
        let Some(degree) = a.jensen else { return Ok(0) };
        let coeffs = jensen_coefficients(&series, degree).map_err(validation)?;
        let records: Vec<Vec<String>> = coeffs.iter().enumerate().map(|(k, c)| vec![k.to_string(), fmt(c)]).collect();
        println!();
        emit(a.format, &["k".to_string(), format!("C({degree},k) a_k")], &records).map_err(validation)?;
        let Some(m) = a.m else { return Ok(0) };
        let f = jensen_polynomial(&series, degree).map_err(validation)?;
        let opts = RunOptions { max_steps: a.steps, tol: None, mode };
        let report = run_nrs(&f, m, &opts).map_err(from_core)?;
        println!();
        print_report(m, &report, a.format)
    })())
}

pub fn aux(a: &AuxArgs) -> u8 {
    finish((|| {
        let p = load_poly(&a.poly, nrs_core::scalars::DEFAULT_PRECISION)?;
        let sys = build_aux_system(a.m, &p).map_err(validation)?;
        print!("{}", sys.dump());
        Ok(0)
    })())
}

pub fn tree(a: &TreeArgs) -> u8 {
    finish((|| {
        let letters = a
            .word
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<i64>().map_err(|e| validation(format!("{t:?}: {e}"))))
            .collect::<Result<Vec<_>, _>>()?;
        let w = validate_word(&letters).map_err(validation)?;
        print!("{}", PlaneTree::from_word(&w).render());
        let t = w.type_number();
        println!("type: {}{}", t.value, if t.is_final { " (final)" } else { "" });
        println!("terminal: {}", w.terminal());
        if let Some(m) = a.m {
            println!("class for m = {m}: {:?}", w.terminal_class(m));
        }
        Ok(0)
    })())
}
