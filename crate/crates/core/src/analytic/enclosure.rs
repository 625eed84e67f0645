use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use rug::float::{Constant, Round, Special};
use rug::ops::Pow;
use rug::{Float, Rational};
use serde::Serialize;

use crate::error::{usage, Result};

/// Three-valued answer of a certified comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    True,
    False,
    Unknown,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Verdict {
        if b {
            Verdict::True
        } else {
            Verdict::False
        }
    }

    pub fn is_true(self) -> bool {
        self == Verdict::True
    }

    pub fn and(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::False, _) | (_, Verdict::False) => Verdict::False,
            (Verdict::True, Verdict::True) => Verdict::True,
            _ => Verdict::Unknown,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::True => "true",
            Verdict::False => "false",
            Verdict::Unknown => "unknown",
        })
    }
}

/// A closed interval `[lo, hi]` of MPFR floats that contains the exact
/// value it stands for. Every operation rounds `lo` down and `hi` up.
#[derive(Clone, Debug, PartialEq)]
pub struct Enclosure {
    lo: Float,
    hi: Float,
}

macro_rules! rnd {
    ($prec:expr, $val:expr, $r:expr) => {
        Float::with_val_round($prec, $val, $r).0
    };
}

fn nan_guard(e: Enclosure) -> Enclosure {
    if e.lo.is_nan() || e.hi.is_nan() {
        Enclosure::entire(e.prec())
    } else {
        e
    }
}

impl Enclosure {
    /// Interval from two endpoints; errors if `lo > hi` or either is NaN.
    pub fn new(lo: Float, hi: Float) -> Result<Self> {
        if lo.is_nan() || hi.is_nan() || lo > hi {
            return usage(format!("invalid interval [{lo}, {hi}]"));
        }
        Ok(Enclosure { lo, hi })
    }

    pub fn point(x: Float) -> Self {
        Enclosure {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn entire(prec: u32) -> Self {
        Enclosure {
            lo: Float::with_val(prec, Special::NegInfinity),
            hi: Float::with_val(prec, Special::Infinity),
        }
    }

    pub fn zero(prec: u32) -> Self {
        Self::from_i64(0, prec)
    }

    pub fn from_i64(v: i64, prec: u32) -> Self {
        Enclosure {
            lo: rnd!(prec, v, Round::Down),
            hi: rnd!(prec, v, Round::Up),
        }
    }

    pub fn from_f64(v: f64, prec: u32) -> Self {
        Enclosure {
            lo: rnd!(prec, v, Round::Down),
            hi: rnd!(prec, v, Round::Up),
        }
    }

    pub fn from_rational(v: &Rational, prec: u32) -> Self {
        Enclosure {
            lo: rnd!(prec, v, Round::Down),
            hi: rnd!(prec, v, Round::Up),
        }
    }

    pub fn pi(prec: u32) -> Self {
        Enclosure {
            lo: rnd!(prec, Constant::Pi, Round::Down),
            hi: rnd!(prec, Constant::Pi, Round::Up),
        }
    }

    pub fn prec(&self) -> u32 {
        self.lo.prec().max(self.hi.prec())
    }

    pub fn lo(&self) -> &Float {
        &self.lo
    }

    pub fn hi(&self) -> &Float {
        &self.hi
    }

    /// Same interval at a different working precision, widened outward if
    /// the endpoints do not fit.
    pub fn with_prec(&self, prec: u32) -> Self {
        Enclosure {
            lo: rnd!(prec, &self.lo, Round::Down),
            hi: rnd!(prec, &self.hi, Round::Up),
        }
    }

    /// Rounded midpoint; lies in the interval.
    pub fn mid(&self) -> Float {
        let p = self.prec();
        if self.lo.is_infinite() || self.hi.is_infinite() {
            return Float::with_val(p, Special::Nan);
        }
        let s = Float::with_val(p + 1, &self.lo + &self.hi);
        rnd!(p, s / 2u32, Round::Nearest)
    }

    /// Upper bound on `hi - lo`.
    pub fn width(&self) -> Float {
        rnd!(self.prec(), &self.hi - &self.lo, Round::Up)
    }

    /// Upper bound on `|x|` over the interval.
    pub fn mag(&self) -> Float {
        let a = Float::with_val(self.prec(), self.lo.abs_ref());
        let b = Float::with_val(self.prec(), self.hi.abs_ref());
        if a > b {
            a
        } else {
            b
        }
    }

    /// Lower bound on `|x|` over the interval (zero if it contains 0).
    pub fn mig(&self) -> Float {
        if self.lo >= 0 {
            return self.lo.clone();
        }
        if self.hi <= 0 {
            return Float::with_val(self.prec(), -&self.hi);
        }
        Float::new(self.prec())
    }

    pub fn contains(&self, x: &Float) -> bool {
        self.lo <= *x && *x <= self.hi
    }

    pub fn contains_f64(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.lo <= 0 && self.hi >= 0
    }

    /// Whether `other ⊆ self`.
    pub fn encloses(&self, other: &Enclosure) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn intersect(&self, other: &Enclosure) -> Option<Enclosure> {
        let lo = if self.lo > other.lo { &self.lo } else { &other.lo };
        let hi = if self.hi < other.hi { &self.hi } else { &other.hi };
        if lo > hi {
            None
        } else {
            Some(Enclosure {
                lo: lo.clone(),
                hi: hi.clone(),
            })
        }
    }

    pub fn hull(&self, other: &Enclosure) -> Enclosure {
        Enclosure {
            lo: if self.lo < other.lo { self.lo.clone() } else { other.lo.clone() },
            hi: if self.hi > other.hi { self.hi.clone() } else { other.hi.clone() },
        }
    }

    /// Certified `self < other`.
    pub fn lt(&self, other: &Enclosure) -> Verdict {
        if self.hi < other.lo {
            Verdict::True
        } else if self.lo >= other.hi {
            Verdict::False
        } else {
            Verdict::Unknown
        }
    }

    /// Certified `self <= other`.
    pub fn le(&self, other: &Enclosure) -> Verdict {
        if self.hi <= other.lo {
            Verdict::True
        } else if self.lo > other.hi {
            Verdict::False
        } else {
            Verdict::Unknown
        }
    }

    pub fn is_positive(&self) -> Verdict {
        if self.lo > 0 {
            Verdict::True
        } else if self.hi <= 0 {
            Verdict::False
        } else {
            Verdict::Unknown
        }
    }

    pub fn is_negative(&self) -> Verdict {
        if self.hi < 0 {
            Verdict::True
        } else if self.lo >= 0 {
            Verdict::False
        } else {
            Verdict::Unknown
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.mid().to_f64()
    }

    pub fn abs(&self) -> Enclosure {
        if self.lo >= 0 {
            self.clone()
        } else if self.hi <= 0 {
            -self
        } else {
            Enclosure {
                lo: Float::new(self.prec()),
                hi: self.mag(),
            }
        }
    }

    pub fn sqr(&self) -> Enclosure {
        let a = self.abs();
        let p = a.prec();
        Enclosure {
            lo: rnd!(p, a.lo.square_ref(), Round::Down),
            hi: rnd!(p, a.hi.square_ref(), Round::Up),
        }
    }

    /// `x^n` for `n ≥ 0`.
    pub fn powi(&self, n: u32) -> Enclosure {
        let p = self.prec();
        if n == 0 {
            return Self::from_i64(1, p);
        }
        // odd powers are monotone on x, even ones on |x|
        let base = if n.is_multiple_of(2) { self.abs() } else { self.clone() };
        Enclosure {
            lo: rnd!(p, (&base.lo).pow(n), Round::Down),
            hi: rnd!(p, (&base.hi).pow(n), Round::Up),
        }
    }

    /// Square root; the part of the interval below 0 is an error.
    pub fn sqrt(&self) -> Result<Enclosure> {
        if self.lo < 0 {
            return usage(format!("sqrt of interval with negative part [{}, ..]", self.lo));
        }
        let p = self.prec();
        Ok(Enclosure {
            lo: rnd!(p, self.lo.sqrt_ref(), Round::Down),
            hi: rnd!(p, self.hi.sqrt_ref(), Round::Up),
        })
    }

    pub fn exp(&self) -> Enclosure {
        let p = self.prec();
        Enclosure {
            lo: rnd!(p, self.lo.exp_ref(), Round::Down),
            hi: rnd!(p, self.hi.exp_ref(), Round::Up),
        }
    }

    pub fn ln(&self) -> Result<Enclosure> {
        if self.lo <= 0 {
            return usage(format!("ln of interval reaching {}", self.lo));
        }
        let p = self.prec();
        Ok(Enclosure {
            lo: rnd!(p, self.lo.ln_ref(), Round::Down),
            hi: rnd!(p, self.hi.ln_ref(), Round::Up),
        })
    }

    fn lipschitz_trig(&self, f: impl Fn(&Float, Round) -> Float) -> Enclosure {
        let p = self.prec();
        if self.lo.is_infinite() || self.hi.is_infinite() {
            return Enclosure {
                lo: Float::with_val(p, -1),
                hi: Float::with_val(p, 1),
            };
        }
        let m = self.mid();
        let r1 = rnd!(p, &self.hi - &m, Round::Up);
        let r2 = rnd!(p, &m - &self.lo, Round::Up);
        let r = if r1 > r2 { r1 } else { r2 };
        let mut lo = rnd!(p, f(&m, Round::Down) - &r, Round::Down);
        let mut hi = rnd!(p, f(&m, Round::Up) + &r, Round::Up);
        if lo < -1 {
            lo = Float::with_val(p, -1);
        }
        if hi > 1 {
            hi = Float::with_val(p, 1);
        }
        Enclosure { lo, hi }
    }

    pub fn sin(&self) -> Enclosure {
        let p = self.prec();
        self.lipschitz_trig(|m, r| rnd!(p, m.sin_ref(), r))
    }

    pub fn cos(&self) -> Enclosure {
        let p = self.prec();
        self.lipschitz_trig(|m, r| rnd!(p, m.cos_ref(), r))
    }

    /// `x^{a/b}` for `x > 0`, as `exp((a/b) ln x)`.
    pub fn pow_rational(&self, exponent: &Rational) -> Result<Enclosure> {
        let e = Enclosure::from_rational(exponent, self.prec());
        Ok((&e * &self.ln()?).exp())
    }

    /// Decimal string of `lo`, rounded down, with `digits` significant digits.
    pub fn lo_string(&self, digits: usize) -> String {
        self.lo.to_string_radix_round(10, Some(digits), Round::Down)
    }

    /// Decimal string of `hi`, rounded up, with `digits` significant digits.
    pub fn hi_string(&self, digits: usize) -> String {
        self.hi.to_string_radix_round(10, Some(digits), Round::Up)
    }
}

impl fmt::Display for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo_string(12), self.hi_string(12))
    }
}

impl Neg for &Enclosure {
    type Output = Enclosure;
    fn neg(self) -> Enclosure {
        Enclosure {
            lo: Float::with_val(self.hi.prec(), -&self.hi),
            hi: Float::with_val(self.lo.prec(), -&self.lo),
        }
    }
}

impl Neg for Enclosure {
    type Output = Enclosure;
    fn neg(self) -> Enclosure {
        -&self
    }
}

impl Add for &Enclosure {
    type Output = Enclosure;
    fn add(self, o: &Enclosure) -> Enclosure {
        let p = self.prec().max(o.prec());
        nan_guard(Enclosure {
            lo: rnd!(p, &self.lo + &o.lo, Round::Down),
            hi: rnd!(p, &self.hi + &o.hi, Round::Up),
        })
    }
}

impl Sub for &Enclosure {
    type Output = Enclosure;
    fn sub(self, o: &Enclosure) -> Enclosure {
        let p = self.prec().max(o.prec());
        nan_guard(Enclosure {
            lo: rnd!(p, &self.lo - &o.hi, Round::Down),
            hi: rnd!(p, &self.hi - &o.lo, Round::Up),
        })
    }
}

fn min_max(p: u32, pairs: [(&Float, &Float); 4]) -> Enclosure {
    let mut lo: Option<Float> = None;
    let mut hi: Option<Float> = None;
    for (a, b) in pairs {
        // 0 · ∞ contributes 0
        let l = if a.is_zero() || b.is_zero() {
            Float::new(p)
        } else {
            rnd!(p, a * b, Round::Down)
        };
        let h = if a.is_zero() || b.is_zero() {
            Float::new(p)
        } else {
            rnd!(p, a * b, Round::Up)
        };
        if lo.as_ref().is_none_or(|x| l.partial_cmp(x) == Some(Ordering::Less)) {
            lo = Some(l);
        }
        if hi.as_ref().is_none_or(|x| h.partial_cmp(x) == Some(Ordering::Greater)) {
            hi = Some(h);
        }
    }
    nan_guard(Enclosure {
        lo: lo.unwrap(),
        hi: hi.unwrap(),
    })
}

impl Mul for &Enclosure {
    type Output = Enclosure;
    fn mul(self, o: &Enclosure) -> Enclosure {
        let p = self.prec().max(o.prec());
        min_max(
            p,
            [
                (&self.lo, &o.lo),
                (&self.lo, &o.hi),
                (&self.hi, &o.lo),
                (&self.hi, &o.hi),
            ],
        )
    }
}

impl Div for &Enclosure {
    type Output = Enclosure;
    // outward reciprocal, then an outward product
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: &Enclosure) -> Enclosure {
        let p = self.prec().max(o.prec());
        if o.contains_zero() {
            return Enclosure::entire(p);
        }
        let recip = Enclosure {
            lo: rnd!(p, o.hi.recip_ref(), Round::Down),
            hi: rnd!(p, o.lo.recip_ref(), Round::Up),
        };
        self * &recip
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Enclosure {
            type Output = Enclosure;
            fn $m(self, o: Enclosure) -> Enclosure {
                (&self).$m(&o)
            }
        }
        impl $tr<&Enclosure> for Enclosure {
            type Output = Enclosure;
            fn $m(self, o: &Enclosure) -> Enclosure {
                (&self).$m(o)
            }
        }
        impl $tr<Enclosure> for &Enclosure {
            type Output = Enclosure;
            fn $m(self, o: Enclosure) -> Enclosure {
                self.$m(&o)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 128;

    fn e(x: f64) -> Enclosure {
        Enclosure::from_f64(x, P)
    }

    #[test]
    fn arithmetic_contains_f64_results() {
        let a = e(1.25);
        let b = e(-3.5);
        assert!((&a + &b).contains_f64(-2.25));
        assert!((&a * &b).contains_f64(-4.375));
        let third = &Enclosure::from_i64(1, P) / &Enclosure::from_i64(3, P);
        assert!(third.lo() < third.hi());
        assert!(third.contains_f64(1.0 / 3.0) || third.width() < 1e-30);
    }

    #[test]
    fn division_through_zero_is_entire() {
        let z = Enclosure::new(Float::with_val(P, -1), Float::with_val(P, 1)).unwrap();
        let q = &e(1.0) / &z;
        assert!(q.lo().is_infinite() && q.hi().is_infinite());
    }

    #[test]
    fn pi_and_trig() {
        let pi = Enclosure::pi(P);
        assert!(pi.contains_f64(std::f64::consts::PI) || pi.width() < 1e-35);
        assert!(pi.sin().contains_zero());
        assert_eq!(pi.cos().is_negative(), Verdict::True);
        let wide = Enclosure::new(Float::with_val(P, -10), Float::with_val(P, 10)).unwrap();
        let c = wide.cos();
        assert!(*c.lo() >= -1 && *c.hi() <= 1);
    }

    #[test]
    fn exp_ln_sqrt_roundtrip() {
        let x = e(2.0);
        let y = x.ln().unwrap().exp();
        assert!(y.contains_f64(2.0));
        assert!(x.sqrt().unwrap().sqr().contains_f64(2.0));
        assert!(e(-1.0).sqrt().is_err());
        assert!(e(0.0).ln().is_err());
    }

    #[test]
    fn abs_and_even_powers_straddling_zero() {
        let z = Enclosure::new(Float::with_val(P, -2), Float::with_val(P, 1)).unwrap();
        assert_eq!(*z.abs().lo(), 0);
        assert_eq!(*z.abs().hi(), 2);
        let sq = z.powi(2);
        assert_eq!(*sq.lo(), 0);
        assert_eq!(*sq.hi(), 4);
        assert_eq!(*z.powi(3).lo(), -8);
    }

    #[test]
    fn comparisons() {
        assert_eq!(e(1.0).lt(&e(2.0)), Verdict::True);
        assert_eq!(e(2.0).lt(&e(1.0)), Verdict::False);
        let wide = Enclosure::new(Float::with_val(P, 0), Float::with_val(P, 3)).unwrap();
        assert_eq!(wide.lt(&e(2.0)), Verdict::Unknown);
        assert_eq!(e(1.0).le(&e(1.0)), Verdict::True);
    }

    #[test]
    fn higher_precision_intersects() {
        let lo = Enclosure::pi(64).exp();
        let hi = Enclosure::pi(256).exp();
        assert!(lo.intersect(&hi).is_some());
        assert!(hi.width() <= lo.width());
    }
}
