use rug::{Integer, Rational};

use crate::error::{domain, Result};

/// `((x)) = x - ⌊x⌋ - 1/2`, and `0` at integers.
pub fn sawtooth(x: &Rational) -> Rational {
    if *x.denom() == 1 {
        return Rational::new();
    }
    (x - x.clone().floor()) - Rational::from((1, 2))
}

/// Dedekind sum `s(d, c)` via the reciprocity law
/// `s(d,c) + s(c,d) = -1/4 + (d/c + c/d + 1/(cd))/12`, so the cost is
/// that of Euclid's algorithm on `(d, c)`.
pub fn dedekind_sum(d: i64, c: i64) -> Result<Rational> {
    if c <= 0 {
        return domain(format!("dedekind_sum needs c > 0, got c={c}"));
    }
    if Integer::from(d).gcd(&Integer::from(c)) != 1 {
        return domain(format!("dedekind_sum needs gcd(d,c)=1, got d={d}, c={c}"));
    }
    let mut a = d.rem_euclid(c);
    let mut b = c;
    let mut acc = Rational::new();
    let mut sign = 1i32;
    // invariant: s(d,c) = acc + sign * s(a, b), 0 <= a < b
    while a != 0 {
        let (ai, bi) = (Integer::from(a), Integer::from(b));
        let ab = Integer::from(&ai * &bi);
        let mut term = Rational::from((ai.clone(), bi.clone()))
            + Rational::from((bi, ai))
            + Rational::from((Integer::from(1), ab));
        term /= 12;
        term -= Rational::from((1, 4));
        if sign > 0 {
            acc += term;
        } else {
            acc -= term;
        }
        sign = -sign;
        (a, b) = (b % a, a);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn sawtooth_values() {
        assert_eq!(sawtooth(&q(3, 1)), 0);
        assert_eq!(sawtooth(&q(1, 2)), 0);
        assert_eq!(sawtooth(&q(7, 3)), q(-1, 6));
        assert_eq!(sawtooth(&q(-1, 3)), q(1, 6));
    }

    #[test]
    fn small_sums() {
        assert_eq!(dedekind_sum(1, 1).unwrap(), 0);
        assert_eq!(dedekind_sum(1, 3).unwrap(), q(1, 18));
        assert_eq!(
            dedekind_sum(-2, 5).unwrap(),
            -dedekind_sum(2, 5).unwrap()
        );
        assert!(dedekind_sum(2, 4).is_err());
        assert!(dedekind_sum(1, 0).is_err());
    }
}
