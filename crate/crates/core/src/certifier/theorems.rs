use serde::Serialize;

use crate::error::{domain, Result};
use crate::qseries::{expand_product, registered, QSeries, Sign};

/// Claimed sign on the indices `5n + offset`, `n ≥ 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SignPattern {
    pub offset: u64,
    pub sign: Sign,
}

const fn pat(offset: u64, sign: Sign) -> SignPattern {
    SignPattern { offset, sign }
}

use Sign::{Negative as N, Positive as P};

/// Sign patterns proved for all `n` (the products `1/R^5`, `R^5`,
/// `R^5(q)/R(q^5)`, `R(q^5)/R^5(q)`).
pub fn known_patterns() -> Vec<(&'static str, Vec<SignPattern>)> {
    vec![
        ("A", vec![pat(1, P), pat(2, P), pat(3, P), pat(4, N)]),
        ("B", vec![pat(1, N), pat(2, P), pat(3, N), pat(4, P)]),
        ("C", vec![pat(1, N), pat(2, P), pat(3, N), pat(4, P), pat(5, N)]),
        ("D", vec![pat(2, P), pat(3, P), pat(4, N), pat(5, N)]),
    ]
}

/// Eventual patterns of `1/R(q)` and `R(q)`, one per residue `0..5`.
pub fn eventual_patterns() -> Vec<(&'static str, Vec<SignPattern>)> {
    vec![
        ("c", vec![pat(0, P), pat(1, P), pat(2, N), pat(3, N), pat(4, N)]),
        ("d", vec![pat(0, P), pat(1, N), pat(2, P), pat(3, N), pat(4, N)]),
    ]
}

/// Outcome for one residue pattern over a range.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidueVerdict {
    pub offset: u64,
    pub expected: Sign,
    pub checked: usize,
    pub holds: bool,
}

/// Signs of one product, checked per residue class mod 5.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignTable {
    pub spec: String,
    pub modulus: u64,
    pub lo: usize,
    pub hi: usize,
    pub verdicts: Vec<ResidueVerdict>,
    pub exceptions: Vec<usize>,
    /// For eventual patterns: every exception lies below this index.
    pub cutoff: Option<usize>,
}

impl SignTable {
    pub fn all_hold(&self) -> bool {
        self.exceptions.is_empty()
    }

    /// Exceptions inside `[lo, hi]`.
    pub fn exceptions_in(&self, lo: usize, hi: usize) -> Vec<usize> {
        self.exceptions.iter().copied().filter(|&i| i >= lo && i <= hi).collect()
    }
}

fn table(name: &str, series: &QSeries, patterns: &[SignPattern], hi: usize) -> Result<SignTable> {
    let mut verdicts = Vec::new();
    let mut exceptions = Vec::new();
    for p in patterns {
        let signs = series.slice_signs(p.offset as i64, 5, p.offset as usize, hi)?;
        let bad: Vec<usize> = signs.iter().filter(|(_, s)| *s != p.sign).map(|(i, _)| *i).collect();
        verdicts.push(ResidueVerdict {
            offset: p.offset,
            expected: p.sign,
            checked: signs.len(),
            holds: bad.is_empty(),
        });
        exceptions.extend(bad);
    }
    exceptions.sort_unstable();
    let lo = patterns.iter().map(|p| p.offset as usize).min().unwrap_or(0);
    Ok(SignTable {
        spec: name.into(),
        modulus: 5,
        lo,
        hi,
        verdicts,
        exceptions,
        cutoff: None,
    })
}

/// Exact check of the proved patterns of A, B, C, D up to index `n`.
/// Any violation is an error naming the product and index.
pub fn verify_known_theorems(n: usize) -> Result<Vec<SignTable>> {
    let mut out = Vec::new();
    for (name, pats) in known_patterns() {
        let s = expand_product(&registered(name)?, n);
        let t = table(name, &s, &pats, n)?;
        if let Some(i) = t.exceptions.first() {
            return domain(format!("{name}({i}) violates its proved sign pattern"));
        }
        out.push(t);
    }
    Ok(out)
}

/// Scan of the eventual patterns of `c(n)` and `d(n)` up to `n`. The cutoff
/// is one past the last exception (0 if there is none); nothing is asserted.
pub fn richmond_szekeres_scan(n: usize) -> Result<Vec<SignTable>> {
    let mut out = Vec::new();
    for (name, pats) in eventual_patterns() {
        let s = expand_product(&registered(name)?, n);
        let mut t = table(name, &s, &pats, n)?;
        t.cutoff = Some(t.exceptions.last().map_or(0, |i| i + 1));
        out.push(t);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_hold_to_200() {
        let t = verify_known_theorems(200).unwrap();
        assert_eq!(t.len(), 4);
        assert!(t.iter().all(SignTable::all_hold));
    }

    #[test]
    fn scan_cutoffs_bound_exceptions() {
        for t in richmond_szekeres_scan(400).unwrap() {
            let cut = t.cutoff.unwrap();
            assert!(t.exceptions.iter().all(|&i| i < cut));
        }
    }
}
