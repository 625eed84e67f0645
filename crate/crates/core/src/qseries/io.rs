use std::io::Write;

use rug::Integer;

use super::QSeries;
use crate::error::Result;

pub fn write_csv_header<W: Write>(out: &mut W) -> Result<()> {
    writeln!(out, "index,coefficient")?;
    Ok(())
}

pub fn write_csv_row<W: Write>(out: &mut W, index: usize, coefficient: &Integer) -> Result<()> {
    writeln!(out, "{index},{coefficient}")?;
    Ok(())
}

/// Coefficient dump: header `index,coefficient`, then one decimal row per
/// index up to the truncation order.
pub fn write_csv<W: Write>(series: &QSeries, out: &mut W) -> Result<()> {
    write_csv_header(out)?;
    for (i, c) in series.coeffs().iter().enumerate() {
        write_csv_row(out, i, c)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_layout() {
        let s = QSeries::from_i64s(&[1, -5, 15]).unwrap();
        let mut buf = Vec::new();
        write_csv(&s, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "index,coefficient\n0,1\n1,-5\n2,15\n");
    }
}
