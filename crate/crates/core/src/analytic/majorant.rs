use rug::Integer;

use super::{Enclosure, Verdict};
use crate::error::{usage, Error, Result};

/// Parameters this close to 1 are refused: the product tail needs too many
/// factors to settle.
const CLOSE_TO_ONE: f64 = 0.99;
const MAX_FACTORS: usize = 200_000;

/// Lower enclosure of `(a; x)_∞ = ∏_{k≥0} (1 - a x^k)` for `0 ≤ a, x < 1`.
///
/// After `K` factors, `-∑_{k≥K} log(1 - a x^k) ≤ a x^K / ((1-x)(1 - a x^K))`,
/// so the full product lies in `[P_K e^{-ε}, P_K]`.
fn pochhammer_enclosure(a: &Enclosure, x: &Enclosure) -> Result<Enclosure> {
    let p = a.prec().max(x.prec());
    let one = Enclosure::from_i64(1, p);
    let mut prod = one.clone();
    let mut ax = a.clone(); // a x^k
    let eps_target = rug::Float::with_val(p, rug::Float::i_exp(1, -(p as i32)));
    for _ in 0..MAX_FACTORS {
        let one_minus_x = &one - x;
        let tail = &ax / &(&one_minus_x * &(&one - &ax));
        if *tail.hi() < eps_target || ax.hi().is_zero() {
            let lower = (-&tail).exp();
            let factor = Enclosure::new(lower.lo().clone(), rug::Float::with_val(p, 1))?;
            return Ok(&prod * &factor);
        }
        prod = &prod * &(&one - &ax);
        ax = &ax * x;
    }
    Err(Error::Precision("Pochhammer tail did not settle".into()))
}

/// Certified check of
/// `1/((α;x)_∞ (β;x)_∞) ≤ exp(α/(1-α) + αx/(1-x)² + β/(1-β) + βx/(1-x)²)`.
pub fn majorization_check(alpha: &Enclosure, beta: &Enclosure, x: &Enclosure) -> Result<Verdict> {
    for (name, v) in [("alpha", alpha), ("beta", beta), ("x", x)] {
        if *v.lo() < 0 {
            return usage(format!("{name} must be >= 0"));
        }
        if *v.hi() >= CLOSE_TO_ONE {
            return Err(Error::Precision(format!(
                "{name} too close to 1 for the product tail bound"
            )));
        }
    }
    let p = alpha.prec().max(beta.prec()).max(x.prec());
    let one = Enclosure::from_i64(1, p);
    let lhs = &one / &(&pochhammer_enclosure(alpha, x)? * &pochhammer_enclosure(beta, x)?);
    let omx = &one - x;
    let omx2 = omx.sqr();
    let ea = &(alpha / &(&one - alpha)) + &(&(alpha * x) / &omx2);
    let eb = &(beta / &(&one - beta)) + &(&(beta * x) / &omx2);
    let rhs = (&ea + &eb).exp();
    Ok(lhs.le(&rhs))
}

const MAX_N: usize = 30;
const MAX_ETA: usize = 5;

/// Number of multisets (or sets, if `distinct`) of `size` nonnegative
/// integers summing to `n`, each element at most `max`.
fn count_parts(size: usize, n: usize, max: usize, distinct: bool) -> Integer {
    if size == 0 {
        return Integer::from(u32::from(n == 0));
    }
    let mut total = Integer::new();
    // choose the largest element first, nonincreasing afterwards
    for top in 0..=max.min(n) {
        if size == 1 {
            if top == n {
                total += 1;
            }
            continue;
        }
        if distinct && top + 1 < size {
            continue;
        }
        let next_max = if distinct { top - 1 } else { top };
        total += count_parts(size - 1, n - top, next_max, distinct);
    }
    total
}

/// Ways to spread `size` marked parts over `shades` colours with total `n`.
fn shade_convolution(shades: usize, size: usize, n: usize, distinct: bool) -> Integer {
    if shades == 0 {
        return Integer::from(u32::from(size == 0 && n == 0));
    }
    let mut total = Integer::new();
    for s1 in 0..=size {
        for n1 in 0..=n {
            let here = count_parts(s1, n1, n1, distinct);
            if here == 0 {
                continue;
            }
            total += here * shade_convolution(shades - 1, size - s1, n - n1, distinct);
        }
    }
    total
}

/// Brute-force `(p*_η(s,t;n), d*_η(s,t;n))`: the coefficients of
/// `ζ^s ξ^t q^n` in `((ζ;q)_∞ (ξ;q)_∞)^{-η}` and `((ζ;q)_∞ (ξ;q)_∞)^{η}`.
///
/// `p*` counts η-coloured red and η-coloured blue multisets of parts
/// `k ≥ 0` (`s` red, `t` blue, sum `n`); `d*` counts the same with distinct
/// parts inside each colour, signed by `(-1)^{s+t}`.
pub fn colored_partition_majorant(
    eta: usize,
    s: usize,
    t: usize,
    n: usize,
) -> Result<(Integer, Integer)> {
    if eta == 0 || eta > MAX_ETA || n > MAX_N || s > MAX_N || t > MAX_N {
        return usage(format!(
            "colored_partition_majorant needs 1 <= eta <= {MAX_ETA} and s, t, n <= {MAX_N}"
        ));
    }
    let mut p = Integer::new();
    let mut d = Integer::new();
    for n1 in 0..=n {
        let pr = shade_convolution(eta, s, n1, false);
        let pb = shade_convolution(eta, t, n - n1, false);
        p += pr * pb;
        let dr = shade_convolution(eta, s, n1, true);
        let db = shade_convolution(eta, t, n - n1, true);
        d += dr * db;
    }
    if (s + t) % 2 == 1 {
        d = -d;
    }
    Ok((p, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(v: f64) -> Enclosure {
        Enclosure::from_f64(v, 128)
    }

    #[test]
    fn zero_parameters_are_equality() {
        assert_eq!(majorization_check(&e(0.0), &e(0.0), &e(0.0)).unwrap(), Verdict::True);
    }

    #[test]
    fn half_holds() {
        assert_eq!(majorization_check(&e(0.5), &e(0.5), &e(0.5)).unwrap(), Verdict::True);
    }

    #[test]
    fn near_one_refused() {
        assert!(majorization_check(&e(0.995), &e(0.1), &e(0.1)).is_err());
    }

    #[test]
    fn empty_partition() {
        let (p, d) = colored_partition_majorant(1, 0, 0, 0).unwrap();
        assert_eq!((p, d), (Integer::from(1), Integer::from(1)));
    }

    #[test]
    fn single_red_part() {
        // one red part of size n, η = 1: exactly one way either way
        let (p, d) = colored_partition_majorant(1, 1, 0, 4).unwrap();
        assert_eq!(p, 1);
        assert_eq!(d, -1);
        // two red parts summing to 2: {0,2},{1,1} vs distinct {0,2}
        let (p, d) = colored_partition_majorant(1, 2, 0, 2).unwrap();
        assert_eq!((p, d), (Integer::from(2), Integer::from(1)));
    }

    #[test]
    fn guards() {
        assert!(colored_partition_majorant(0, 0, 0, 0).is_err());
        assert!(colored_partition_majorant(6, 0, 0, 0).is_err());
        assert!(colored_partition_majorant(1, 0, 0, 31).is_err());
    }
}
