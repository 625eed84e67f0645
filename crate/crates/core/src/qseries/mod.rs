//! Exact truncated formal power series with arbitrary-precision integer
//! coefficients, and expansion of ψ-products built from Pochhammer symbols.

mod io;
mod product;
mod rogers_ramanujan;

pub use io::{write_csv, write_csv_header, write_csv_row};
pub use product::{
    expand_pochhammer, expand_product, registered, PochhammerFactor, ProductSpec, PsiFactor,
    REGISTERED_NAMES,
};
pub use rogers_ramanujan::{rr_sum_side, RrVariant};

use std::cmp::Ordering;
use std::fmt;

use rug::{Assign, Integer};

use crate::error::{domain, usage, Result};

/// A power series `∑ coeffs[n] q^n` known exactly up to and including
/// `q^trunc_order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    coeffs: Vec<Integer>,
}

/// Sign of an exact coefficient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of(value: &Integer) -> Sign {
        match value.cmp0() {
            Ordering::Less => Sign::Negative,
            Ordering::Equal => Sign::Zero,
            Ordering::Greater => Sign::Positive,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Negative => "-",
            Sign::Zero => "0",
            Sign::Positive => "+",
        })
    }
}

impl QSeries {
    /// The series `1 + O(q^{N+1})`.
    pub fn one(trunc_order: usize) -> Self {
        let mut coeffs = vec![Integer::new(); trunc_order + 1];
        coeffs[0] = Integer::from(1);
        QSeries { coeffs }
    }

    pub fn zero(trunc_order: usize) -> Self {
        QSeries {
            coeffs: vec![Integer::new(); trunc_order + 1],
        }
    }

    /// Builds a series from explicit coefficients; the truncation order is
    /// `coeffs.len() - 1`.
    pub fn from_coeffs(coeffs: Vec<Integer>) -> Result<Self> {
        if coeffs.is_empty() {
            return usage("a series needs at least the constant coefficient");
        }
        Ok(QSeries { coeffs })
    }

    pub fn from_i64s(coeffs: &[i64]) -> Result<Self> {
        Self::from_coeffs(coeffs.iter().map(|&c| Integer::from(c)).collect())
    }

    pub fn trunc_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Integer] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Integer> {
        self.coeffs
    }

    /// Coefficient of `q^n`; `None` past the truncation order.
    pub fn coeff(&self, n: usize) -> Option<&Integer> {
        self.coeffs.get(n)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|c| c.cmp0() == Ordering::Equal)
    }

    /// Exact Cauchy product truncated at the common order.
    pub fn mul(&self, other: &QSeries) -> Result<QSeries> {
        self.check_same_order(other)?;
        let n = self.trunc_order();
        let mut out = QSeries::zero(n);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.cmp0() == Ordering::Equal {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                out.coeffs[i + j] += a * b;
            }
        }
        Ok(out)
    }

    /// Multiplicative inverse of a series with constant term 1, via
    /// `b[n] = -∑_{k=1..n} a[k] b[n-k]`.
    pub fn inverse(&self) -> Result<QSeries> {
        if self.coeffs[0] != 1 {
            return domain(format!(
                "inverse needs constant term 1, found {}",
                self.coeffs[0]
            ));
        }
        let n = self.trunc_order();
        let mut b = QSeries::one(n);
        let mut acc = Integer::new();
        for m in 1..=n {
            acc.assign(0);
            for k in 1..=m {
                let a = &self.coeffs[k];
                if a.cmp0() != Ordering::Equal {
                    acc -= a * &b.coeffs[m - k];
                }
            }
            b.coeffs[m].assign(&acc);
        }
        Ok(b)
    }

    /// Multiplies in place by `(1 - q^e)`. `e = 0` is rejected because the
    /// factor would be zero.
    pub fn mul_one_minus_q_pow(&mut self, e: usize) {
        assert!(e > 0, "factor (1 - q^0) vanishes");
        let n = self.trunc_order();
        for idx in (e..=n).rev() {
            let (lo, hi) = self.coeffs.split_at_mut(idx);
            hi[0] -= &lo[idx - e];
        }
    }

    /// Divides in place by `(1 - q^e)`, i.e. multiplies by `∑_j q^{je}`.
    pub fn div_one_minus_q_pow(&mut self, e: usize) {
        assert!(e > 0, "factor (1 - q^0) vanishes");
        let n = self.trunc_order();
        for idx in e..=n {
            let (lo, hi) = self.coeffs.split_at_mut(idx);
            hi[0] += &lo[idx - e];
        }
    }

    /// Signs of the coefficients with index `≡ residue (mod modulus)` in
    /// `from..=to`.
    pub fn slice_signs(
        &self,
        residue: i64,
        modulus: u64,
        from: usize,
        to: usize,
    ) -> Result<Vec<(usize, Sign)>> {
        if modulus == 0 {
            return usage("modulus must be positive");
        }
        if to > self.trunc_order() {
            return usage(format!(
                "range end {to} exceeds truncation order {}",
                self.trunc_order()
            ));
        }
        if from > to {
            return Ok(Vec::new());
        }
        let r = residue.rem_euclid(modulus as i64) as usize;
        let m = modulus as usize;
        Ok((from..=to)
            .filter(|i| i % m == r)
            .map(|i| (i, Sign::of(&self.coeffs[i])))
            .collect())
    }

    fn check_same_order(&self, other: &QSeries) -> Result<()> {
        if self.trunc_order() != other.trunc_order() {
            return usage(format!(
                "truncation orders differ: {} vs {}",
                self.trunc_order(),
                other.trunc_order()
            ));
        }
        Ok(())
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.cmp0() == Ordering::Equal {
                continue;
            }
            let neg = c.cmp0() == Ordering::Less;
            let abs = Integer::from(c.abs_ref());
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match (k, abs == 1) {
                (0, _) => write!(f, "{abs}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{abs}*q")?,
                (_, true) => write!(f, "q^{k}")?,
                (_, false) => write!(f, "{abs}*q^{k}")?,
            }
        }
        if first {
            write!(f, "O(q^{})", self.trunc_order() + 1)
        } else {
            write!(f, " + O(q^{})", self.trunc_order() + 1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series(c: &[i64]) -> QSeries {
        QSeries::from_i64s(c).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let p = series(&[1, 1, 0]).mul(&series(&[1, -1, 0])).unwrap();
        assert_eq!(p, series(&[1, 0, -1]));
    }

    #[test]
    fn identity_is_neutral() {
        let s = series(&[3, -1, 4, 1, -5]);
        assert_eq!(s.mul(&QSeries::one(4)).unwrap(), s);
    }

    #[test]
    fn mismatched_orders_are_rejected() {
        let err = series(&[1, 1]).mul(&series(&[1, 1, 1])).unwrap_err();
        assert!(matches!(err, crate::Error::Usage(_)));
    }

    #[test]
    fn geometric_inverse() {
        let inv = series(&[1, -1, 0, 0]).inverse().unwrap();
        assert_eq!(inv, series(&[1, 1, 1, 1]));
    }

    #[test]
    fn inverse_needs_unit_constant() {
        let err = series(&[2, 1]).inverse().unwrap_err();
        assert!(matches!(err, crate::Error::Domain(_)));
    }

    #[test]
    fn in_place_factor_matches_mul() {
        let s = series(&[1, 2, -3, 5, 7, 11]);
        let mut t = s.clone();
        t.mul_one_minus_q_pow(2);
        assert_eq!(t, s.mul(&series(&[1, 0, -1, 0, 0, 0])).unwrap());
        t.div_one_minus_q_pow(2);
        assert_eq!(t, s);
    }

    #[test]
    fn slice_signs_bounds() {
        let s = series(&[1, -2, 0, 3]);
        assert_eq!(
            s.slice_signs(1, 2, 0, 3).unwrap(),
            vec![(1, Sign::Negative), (3, Sign::Positive)]
        );
        assert!(s.slice_signs(0, 1, 0, 4).is_err());
        assert_eq!(s.slice_signs(-1, 3, 0, 3).unwrap(), vec![(2, Sign::Zero)]);
    }

    #[test]
    fn display() {
        assert_eq!(series(&[1, -1, 0, 2]).to_string(), "1 - q + 2*q^3 + O(q^4)");
        assert_eq!(QSeries::zero(2).to_string(), "O(q^3)");
    }
}
