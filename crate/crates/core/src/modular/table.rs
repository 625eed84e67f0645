use std::io::Write;

use rayon::prelude::*;
use rug::Rational;

use super::transform::{delta_hk, gcd, transform_data, DeltaVariant};
use crate::error::{domain, usage, Result};
use crate::qseries::ProductSpec;

/// One row of the Δ table for a class `(ℵ, l)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DeltaRow {
    pub aleph: i64,
    pub l: i64,
    /// Representative arc `(h, k)` used for the evaluation.
    pub h: i64,
    pub k: i64,
    pub delta: Rational,
    /// Δ with the printed `(λ* − λ*)` term, kept for audit.
    pub delta_as_printed: Rational,
    pub in_lpos: bool,
}

/// The least coprime `(h, k)` with `k ≡ l (mod L)`, `h ≡ ℵ (mod l)` and
/// `0 ≤ h < k`, or `None` when the class has no coprime pair.
pub fn class_representative(level: i64, aleph: i64, l: i64) -> Option<(i64, i64)> {
    if l < 1 || l > level || aleph < 0 || aleph >= l {
        return None;
    }
    // any common divisor of ℵ, l and L divides every h and k in the class
    if gcd(gcd(aleph, l), level) != 1 {
        return None;
    }
    for t in 0.. {
        let k = l + t * level;
        let mut h = aleph;
        while h < k {
            if gcd(h, k) == 1 {
                return Some((h, k));
            }
            h += l;
        }
    }
    unreachable!()
}

/// Δ(ℵ, l), evaluated at the class representative.
pub fn delta_of(spec: &ProductSpec, aleph: i64, l: i64) -> Result<Rational> {
    let level = spec.level() as i64;
    if l < 1 || l > level || aleph < 0 || aleph >= l {
        return usage(format!(
            "class needs 0 <= aleph < l <= L={level}, got aleph={aleph}, l={l}"
        ));
    }
    let Some((h, k)) = class_representative(level, aleph, l) else {
        return domain(format!("class ({aleph},{l}) has no coprime representative"));
    };
    delta_hk(spec, h, k, DeltaVariant::Corrected)
}

/// All classes with a coprime representative, sorted by `(l, ℵ)`.
///
/// Also asserts, for every class, that `Π_{h,k}` has no vanishing factor.
pub fn delta_table(spec: &ProductSpec) -> Result<Vec<DeltaRow>> {
    let level = spec.level() as i64;
    let classes: Vec<(i64, i64)> = (1..=level)
        .flat_map(|l| (0..l).map(move |a| (a, l)))
        .collect();
    let rows: Vec<Option<DeltaRow>> = classes
        .par_iter()
        .map(|&(aleph, l)| -> Result<Option<DeltaRow>> {
            let Some((h, k)) = class_representative(level, aleph, l) else {
                return Ok(None);
            };
            let td = transform_data(spec, h, k)?;
            let delta_as_printed = delta_hk(spec, h, k, DeltaVariant::AsPrinted)?;
            Ok(Some(DeltaRow {
                aleph,
                l,
                h,
                k,
                in_lpos: td.delta > 0,
                delta: td.delta,
                delta_as_printed,
            }))
        })
        .collect::<Result<_>>()?;
    Ok(rows.into_iter().flatten().collect())
}

/// `L_{>0}`: classes `(ℵ, l)` with Δ > 0, sorted by `(l, ℵ)`.
pub fn lpos_set(spec: &ProductSpec) -> Result<Vec<(i64, i64)>> {
    Ok(delta_table(spec)?
        .into_iter()
        .filter(|r| r.in_lpos)
        .map(|r| (r.aleph, r.l))
        .collect())
}

/// CSV `spec,aleph,l,delta_num,delta_den,in_Lpos`. With `audit`, two more
/// columns carry the printed-formula variant.
pub fn write_delta_csv<W: Write>(
    name: &str,
    rows: &[DeltaRow],
    audit: bool,
    out: &mut W,
) -> Result<()> {
    write!(out, "spec,aleph,l,delta_num,delta_den,in_Lpos")?;
    if audit {
        write!(out, ",printed_num,printed_den")?;
    }
    writeln!(out)?;
    for r in rows {
        write!(
            out,
            "{name},{},{},{},{},{}",
            r.aleph,
            r.l,
            r.delta.numer(),
            r.delta.denom(),
            r.in_lpos
        )?;
        if audit {
            write!(
                out,
                ",{},{}",
                r.delta_as_printed.numer(),
                r.delta_as_printed.denom()
            )?;
        }
        writeln!(out)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::registered;

    #[test]
    fn representatives() {
        assert_eq!(class_representative(5, 1, 5), Some((1, 5)));
        assert_eq!(class_representative(5, 0, 5), None);
        assert_eq!(class_representative(5, 0, 1), Some((0, 1)));
        assert_eq!(class_representative(25, 5, 10), None);
        let (h, k) = class_representative(25, 2, 4).unwrap();
        assert_eq!((h % 4, k % 25, gcd(h, k)), (2, 4, 1));
    }

    #[test]
    fn lpos_a_b() {
        assert_eq!(lpos_set(&registered("A").unwrap()).unwrap(), vec![(1, 5), (4, 5)]);
        assert_eq!(lpos_set(&registered("B").unwrap()).unwrap(), vec![(2, 5), (3, 5)]);
    }

    #[test]
    fn csv_header() {
        let rows = delta_table(&registered("A").unwrap()).unwrap();
        let mut buf = Vec::new();
        write_delta_csv("A", &rows, false, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("spec,aleph,l,delta_num,delta_den,in_Lpos\n"));
        assert!(text.contains("A,1,5,24,1,true\n"));
    }
}
