use std::io::{self, Write};

use nrs_core::nrs::IterationRow;
use nrs_core::scalars::{print_scalar, Scalar};

use crate::Format;

pub const SIGFIGS: usize = 10;

pub fn fmt(x: &Scalar) -> String {
    print_scalar(x, SIGFIGS)
}

/// Column names of an NRS(m) table.
pub fn run_header(m: usize) -> Vec<String> {
    let mut h = vec!["n".to_string()];
    if m > 1 {
        h.extend((0..m).map(|i| format!("J_{i},{m}")));
    }
    h.push(format!("J_{m}"));
    h.push(format!("-a_{}/a_{m}+S_{m}", m - 1));
    h
}

pub fn run_record(m: usize, row: &IterationRow) -> Vec<String> {
    let mut r = vec![row.n.to_string()];
    if m > 1 {
        r.extend(row.j.iter().map(fmt));
    }
    r.push(fmt(&row.total));
    r.push(fmt(&row.partial_sum));
    r
}

/// Writes a header and records either as aligned columns or as CSV.
pub fn emit(format: Format, header: &[String], records: &[Vec<String>]) -> io::Result<()> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(header)?;
            for r in records {
                w.write_record(r)?;
            }
            w.flush()
        }
        Format::Table => {
            let mut widths: Vec<usize> = header.iter().map(String::len).collect();
            for r in records {
                for (w, cell) in widths.iter_mut().zip(r) {
                    *w = (*w).max(cell.chars().count());
                }
            }
            let line = |cells: &[String]| {
                cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:>w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
            };
            writeln!(out, "{}", line(header))?;
            for r in records {
                writeln!(out, "{}", line(r))?;
            }
            Ok(())
        }
    }
}
