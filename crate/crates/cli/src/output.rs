//! CSV and JSON writers.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use wfeq_core::{PopulationState, ReplicaPath, Scalar, SimplexVector};

/// Seventeen significant digits: enough to round-trip any `f64`.
pub fn float(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn open(path: Option<&Path>, fallback: Box<dyn Write>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => fallback,
    })
}

pub fn stdout() -> Box<dyn Write> {
    Box::new(BufWriter::new(io::stdout().lock()))
}

pub fn stderr() -> Box<dyn Write> {
    Box::new(io::stderr().lock())
}

/// `k,p_0,...,p_M` (or custom column names), one row per iterate.
pub fn write_trajectory<T: Scalar>(
    out: &mut dyn Write,
    columns: &[String],
    states: &[SimplexVector<T>],
) -> io::Result<()> {
    writeln!(out, "k,{}", columns.join(","))?;
    for (k, state) in states.iter().enumerate() {
        write!(out, "{k}")?;
        for v in state.values() {
            write!(out, ",{}", float(v.to_f64_lossy()))?;
        }
        writeln!(out)?;
    }
    Ok(())
}

pub fn state_columns(states: usize) -> Vec<String> {
    (0..states).map(|m| format!("p_{m}")).collect()
}

/// `replica,k,count_0,...,count_M`.
pub fn write_paths<T>(out: &mut dyn Write, states: usize, paths: &[ReplicaPath<T>]) -> io::Result<()> {
    let header: Vec<String> = (0..states).map(|m| format!("count_{m}")).collect();
    writeln!(out, "replica,k,{}", header.join(","))?;
    for path in paths {
        for (k, state) in path.states.iter().enumerate() {
            write_counts(out, path.replica, k, state)?;
        }
    }
    Ok(())
}

fn write_counts(out: &mut dyn Write, replica: usize, k: usize, state: &PopulationState) -> io::Result<()> {
    write!(out, "{replica},{k}")?;
    for c in state.counts() {
        write!(out, ",{c}")?;
    }
    writeln!(out)
}

pub fn write_json(out: &mut dyn Write, value: &serde_json::Value) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    out.flush()
}
