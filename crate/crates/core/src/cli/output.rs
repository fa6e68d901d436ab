//! Field serializations.

use std::io::{self, Write};

use crate::solver::SolutionField;

/// Header `x,t,N,err_estimate`, rows ordered by `t` then `x`.
pub fn write_csv(field: &SolutionField, out: &mut dyn Write) -> io::Result<()> {
    writeln!(out, "x,t,N,err_estimate")?;
    for (ti, t) in field.ts.iter().enumerate() {
        for (xi, x) in field.xs.iter().enumerate() {
            writeln!(
                out,
                "{x},{t},{:e},{:e}",
                field.values[ti][xi], field.errors[ti][xi]
            )?;
        }
    }
    Ok(())
}

pub fn write_json(field: &SolutionField, out: &mut dyn Write) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, field)?;
    writeln!(out)
}

/// One whitespace-separated `x N` block per time, blocks separated by blank lines.
pub fn write_gnuplot(field: &SolutionField, out: &mut dyn Write) -> io::Result<()> {
    for (ti, t) in field.ts.iter().enumerate() {
        if ti > 0 {
            writeln!(out, "\n")?;
        }
        writeln!(out, "# t = {t}")?;
        for (xi, x) in field.xs.iter().enumerate() {
            writeln!(out, "{x} {:e}", field.values[ti][xi])?;
        }
    }
    Ok(())
}
