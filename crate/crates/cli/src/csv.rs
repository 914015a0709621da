//! Sweep tables as CSV: `r_ss_lambda,rw_<R_W>_db,...`, `.` decimals, LF line
//! endings, nine significant digits.

use std::io::{self, BufRead, Write};

use cellfree_af::sweep::SweepResult;

use crate::config::SpatialResolution;
use crate::CliError;

pub const RADIUS_COLUMN: &str = "r_ss_lambda";

/// Formats like C's `%.9g`: nine significant digits, trailing zeros
/// dropped, exponent form outside `1e-4 <= |v| < 1e9`.
pub fn format_sig9(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{v:.8e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..9).contains(&exp) {
        let mantissa = trim_fraction(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (8 - exp) as usize;
        trim_fraction(&format!("{v:.decimals$}")).to_string()
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn header(rw_list: &[SpatialResolution]) -> String {
    let mut h = RADIUS_COLUMN.to_string();
    for rw in rw_list {
        h.push(',');
        h.push_str(&rw.label());
        h.push_str("_db");
    }
    h
}

/// Writes the sweep table. Column order follows `rw_list`, which must match
/// the sweep's waveforms.
pub fn write_sweep<W: Write>(mut out: W, rw_list: &[SpatialResolution], result: &SweepResult) -> io::Result<()> {
    assert_eq!(rw_list.len(), result.waveforms.len(), "one label per waveform");
    out.write_all(header(rw_list).as_bytes())?;
    out.write_all(b"\n")?;
    let mut line = String::new();
    for (r, row) in result.radii.iter().zip(&result.rows) {
        line.clear();
        line.push_str(&format_sig9(*r));
        for v in row {
            line.push(',');
            line.push_str(&format_sig9(v.normalized_db));
        }
        line.push('\n');
        out.write_all(line.as_bytes())?;
    }
    out.flush()
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub columns: Vec<String>,
    pub radii: Vec<f64>,
    /// `values[w][i]` is column `w + 1` at row `i`.
    pub values: Vec<Vec<f64>>,
}

impl SweepTable {
    pub fn column(&self, name: &str) -> Option<&[f64]> {
        let idx = self.columns.iter().position(|c| c == name)?;
        idx.checked_sub(1).map(|w| self.values[w].as_slice())
    }
}

pub fn read_sweep<R: BufRead>(input: R) -> Result<SweepTable, CliError> {
    let mut lines = input.lines();
    let header = lines
        .next()
        .ok_or_else(|| CliError::Parse("empty CSV".into()))?
        .map_err(|e| CliError::Io("csv".into(), e))?;
    let columns: Vec<String> = header.split(',').map(str::to_string).collect();
    if columns.first().map(String::as_str) != Some(RADIUS_COLUMN) || columns.len() < 2 {
        return Err(CliError::Parse(format!("unexpected CSV header `{header}`")));
    }
    let mut table = SweepTable {
        values: vec![Vec::new(); columns.len() - 1],
        columns,
        radii: Vec::new(),
    };
    for (lineno, line) in lines.enumerate() {
        let line = line.map_err(|e| CliError::Io("csv".into(), e))?;
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != table.columns.len() {
            return Err(CliError::Parse(format!(
                "row {} has {} fields",
                lineno + 2,
                fields.len()
            )));
        }
        let parse = |s: &str| {
            s.parse::<f64>()
                .map_err(|_| CliError::Parse(format!("row {}: bad number `{s}`", lineno + 2)))
        };
        table.radii.push(parse(fields[0])?);
        for (w, f) in fields[1..].iter().enumerate() {
            table.values[w].push(parse(f)?);
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_printf_g() {
        let cases = [
            (1.0, "1"),
            (0.05, "0.05"),
            (-13.9312345678, "-13.9312346"),
            (123456789.0, "123456789"),
            (1234567891.0, "1.23456789e+09"),
            (0.0001, "0.0001"),
            (0.00001234, "1.234e-05"),
            (-200.0, "-200"),
            (9.9999999996, "10"),
            (651.898646, "651.898646"),
            (-0.0, "0"),
        ];
        for (v, want) in cases {
            assert_eq!(format_sig9(v), want, "{v}");
        }
    }

    #[test]
    fn header_labels() {
        let h = header(&[SpatialResolution(1.5), SpatialResolution::INF]);
        assert_eq!(h, "r_ss_lambda,rw_1.5_db,rw_inf_db");
    }

    #[test]
    fn rejects_malformed() {
        assert!(read_sweep("x,y\n1,2\n".as_bytes()).is_err());
        assert!(read_sweep("r_ss_lambda,rw_1_db\n1\n".as_bytes()).is_err());
        assert!(read_sweep("r_ss_lambda,rw_1_db\n1,abc\n".as_bytes()).is_err());
        let t = read_sweep("r_ss_lambda,rw_1_db\n0,0\n0.5,-3.5\n".as_bytes()).unwrap();
        assert_eq!(t.column("rw_1_db").unwrap(), &[0.0, -3.5]);
        assert!(t.column(RADIUS_COLUMN).is_none());
    }
}
