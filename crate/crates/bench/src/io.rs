//! Headerless numeric CSV for matrices and vectors.

use std::io::{Read, Write};
use std::path::Path;

use sparse_recovery::DenseMatrix;

use crate::error::{config_err, BenchResult};

fn records(input: impl Read) -> BenchResult<Vec<Vec<f64>>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(input);
    let mut rows = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let row = rec
            .iter()
            .filter(|f| !f.is_empty())
            .map(|f| match f.parse::<f64>() {
                Ok(v) if v.is_finite() => Ok(v),
                _ => Err(config_err(format!("line {}: `{f}` is not a finite number", i + 1))),
            })
            .collect::<BenchResult<Vec<f64>>>()?;
        if !row.is_empty() {
            rows.push(row);
        }
    }
    Ok(rows)
}

/// One matrix row per line.
pub fn read_matrix(input: impl Read) -> BenchResult<DenseMatrix> {
    let rows = records(input)?;
    let cols = rows.first().map_or(0, Vec::len);
    if cols == 0 {
        return Err(config_err("matrix file is empty"));
    }
    if let Some(i) = rows.iter().position(|r| r.len() != cols) {
        return Err(config_err(format!("matrix row {} has {} entries, expected {cols}", i + 1, rows[i].len())));
    }
    let data = rows.concat();
    DenseMatrix::new(data.len() / cols, cols, data).map_err(Into::into)
}

/// Entries in reading order; one per line or comma separated.
pub fn read_vector(input: impl Read) -> BenchResult<Vec<f64>> {
    let v = records(input)?.concat();
    if v.is_empty() {
        return Err(config_err("vector file is empty"));
    }
    Ok(v)
}

pub fn read_matrix_file(path: &Path) -> BenchResult<DenseMatrix> {
    read_matrix(open(path)?)
}

pub fn read_vector_file(path: &Path) -> BenchResult<Vec<f64>> {
    read_vector(open(path)?)
}

fn open(path: &Path) -> BenchResult<std::fs::File> {
    std::fs::File::open(path).map_err(|e| config_err(format!("cannot open {}: {e}", path.display())))
}

pub fn write_matrix(a: &DenseMatrix, out: impl Write) -> BenchResult<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    for i in 0..a.rows() {
        w.write_record(a.row(i).iter().map(|v| format!("{v:?}")))?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_vector(v: &[f64], mut out: impl Write) -> BenchResult<()> {
    for x in v {
        writeln!(out, "{x:?}")?;
    }
    Ok(())
}
