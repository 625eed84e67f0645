use std::ops::{Add, Mul, Neg, Sub};

use rug::float::{Constant, Round};
use rug::{Float, Rational};

use crate::analytic::Enclosure;
use crate::error::{domain, Result};

macro_rules! rnd {
    ($prec:expr, $val:expr, $r:expr) => {
        Float::with_val_round($prec, $val, $r).0
    };
}

/// Complex number known to lie in the disc `|w - (re + i·im)| ≤ rad`.
///
/// Midpoint-radius form keeps long products tight: each multiplication
/// adds relative errors instead of compounding the axis-aligned wrapping
/// of rectangular interval products. [`ComplexHP::re`] and
/// [`ComplexHP::im`] give the componentwise enclosures.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexHP {
    re: Float,
    im: Float,
    rad: Float,
}

/// `2^{k-p}`
fn ulps(p: u32, k: i32) -> Float {
    Float::with_val(p, Float::i_exp(1, k - p as i32))
}

fn absf(x: &Float) -> Float {
    x.clone().abs()
}

fn add_up(p: u32, a: &Float, b: &Float) -> Float {
    rnd!(p, a + b, Round::Up)
}

fn mul_up(p: u32, a: &Float, b: &Float) -> Float {
    rnd!(p, a * b, Round::Up)
}

impl ComplexHP {
    fn raw(re: Float, im: Float, rad: Float) -> Self {
        ComplexHP { re, im, rad }
    }

    /// Disc around the midpoints of two enclosures that covers their box.
    pub fn new(re: &Enclosure, im: &Enclosure) -> Self {
        let p = re.prec().max(im.prec());
        let (cr, ci) = (re.mid(), im.mid());
        let wr = rnd!(p, re.width(), Round::Up);
        let wi = rnd!(p, im.width(), Round::Up);
        // half-widths are at most the full widths; keep it simple
        let rad = rnd!(p, wr.hypot_ref(&wi), Round::Up);
        ComplexHP::raw(Float::with_val(p, cr), Float::with_val(p, ci), rad)
    }

    pub fn from_f64(re: f64, im: f64, prec: u32) -> Self {
        ComplexHP::raw(
            Float::with_val(prec, re),
            Float::with_val(prec, im),
            Float::new(prec),
        )
    }

    pub fn from_rationals(re: &Rational, im: &Rational, prec: u32) -> Self {
        Self::new(
            &Enclosure::from_rational(re, prec),
            &Enclosure::from_rational(im, prec),
        )
    }

    pub fn from_real(x: &Enclosure) -> Self {
        Self::new(x, &Enclosure::zero(x.prec()))
    }

    pub fn from_i64(v: i64, prec: u32) -> Self {
        Self::from_real(&Enclosure::from_i64(v, prec))
    }

    pub fn one(prec: u32) -> Self {
        Self::from_i64(1, prec)
    }

    pub fn i(prec: u32) -> Self {
        ComplexHP::raw(Float::new(prec), Float::with_val(prec, 1), Float::new(prec))
    }

    pub fn pi(prec: u32) -> Self {
        ComplexHP::raw(
            Float::with_val(prec, Constant::Pi),
            Float::new(prec),
            ulps(prec, 2),
        )
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    pub fn center(&self) -> (&Float, &Float) {
        (&self.re, &self.im)
    }

    pub fn radius(&self) -> &Float {
        &self.rad
    }

    pub fn re(&self) -> Enclosure {
        let p = self.prec();
        Enclosure::new(
            rnd!(p, &self.re - &self.rad, Round::Down),
            rnd!(p, &self.re + &self.rad, Round::Up),
        )
        .expect("ordered")
    }

    pub fn im(&self) -> Enclosure {
        let p = self.prec();
        Enclosure::new(
            rnd!(p, &self.im - &self.rad, Round::Down),
            rnd!(p, &self.im + &self.rad, Round::Up),
        )
        .expect("ordered")
    }

    fn center_abs_up(&self) -> Float {
        rnd!(self.prec(), self.re.hypot_ref(&self.im), Round::Up)
    }

    fn center_abs_down(&self) -> Float {
        rnd!(self.prec(), self.re.hypot_ref(&self.im), Round::Down)
    }

    /// `(|re| + |im|) · 2^{k-p}`, a bound on rounding error of the centre.
    fn rounding(&self, k: i32) -> Float {
        let p = self.prec();
        let l1 = add_up(p, &absf(&self.re), &absf(&self.im));
        mul_up(p, &l1, &ulps(p, k))
    }

    /// Upper bound on `|w|`.
    pub fn abs_upper(&self) -> Float {
        add_up(self.prec(), &self.center_abs_up(), &self.rad)
    }

    /// Lower bound on `|w|` (zero if the disc reaches the origin).
    pub fn abs_lower(&self) -> Float {
        let p = self.prec();
        let v = rnd!(p, self.center_abs_down() - &self.rad, Round::Down);
        if v < 0 {
            Float::new(p)
        } else {
            v
        }
    }

    pub fn abs(&self) -> Enclosure {
        Enclosure::new(self.abs_lower(), self.abs_upper()).expect("ordered")
    }

    pub fn conj(&self) -> ComplexHP {
        ComplexHP::raw(self.re.clone(), Float::with_val(self.prec(), -&self.im), self.rad.clone())
    }

    /// Multiplication by a real enclosure.
    pub fn scale(&self, x: &Enclosure) -> ComplexHP {
        self * &ComplexHP::from_real(x)
    }

    pub fn recip(&self) -> Result<ComplexHP> {
        let p = self.prec();
        let lo = self.center_abs_down();
        if lo <= self.rad {
            return domain("reciprocal of a disc containing 0");
        }
        let n = Float::with_val(p, self.re.square_ref()) + Float::with_val(p, self.im.square_ref());
        let cre = Float::with_val(p, &self.re / &n);
        let cim = -Float::with_val(p, &self.im / &n);
        let out = ComplexHP::raw(cre, cim, Float::new(p));
        // |1/(a+δ) - 1/a| ≤ r / (|a| (|a| - r))
        let gap = rnd!(p, &lo - &self.rad, Round::Down);
        let den = rnd!(p, &lo * &gap, Round::Down);
        let prop = rnd!(p, &self.rad / &den, Round::Up);
        let rad = add_up(p, &prop, &out.rounding(4));
        Ok(ComplexHP { rad, ..out })
    }

    pub fn div(&self, other: &ComplexHP) -> Result<ComplexHP> {
        Ok(self * &other.recip()?)
    }

    pub fn exp(&self) -> ComplexHP {
        let p = self.prec();
        let m = Float::with_val(p, self.re.exp_ref());
        let (s, c) = (Float::with_val(p, self.im.sin_ref()), Float::with_val(p, self.im.cos_ref()));
        let out = ComplexHP::raw(Float::with_val(p, &m * &c), Float::with_val(p, &m * &s), Float::new(p));
        let err = out.rounding(3);
        let mag = add_up(p, &out.center_abs_up(), &err);
        let grow = rnd!(p, self.rad.exp_m1_ref(), Round::Up);
        let rad = add_up(p, &mul_up(p, &mag, &grow), &err);
        ComplexHP { rad, ..out }
    }

    /// `e^{πi t}` for rational `t`.
    pub fn from_phase(t: &Rational, prec: u32) -> ComplexHP {
        let wide = prec + 64;
        let angle = Float::with_val(wide, Constant::Pi) * Float::with_val(wide, t);
        ComplexHP::raw(
            Float::with_val(prec, angle.cos_ref()),
            Float::with_val(prec, angle.sin_ref()),
            ulps(prec, 3),
        )
    }

    /// `e^{2πi w}`.
    pub fn exp_2pi_i(&self) -> ComplexHP {
        let p = self.prec();
        let two_pi_i = &ComplexHP::pi(p) * &ComplexHP::raw(Float::new(p), Float::with_val(p, 2), Float::new(p));
        (&two_pi_i * self).exp()
    }

    /// Principal square root. The disc must not meet the negative real axis.
    pub fn sqrt(&self) -> Result<ComplexHP> {
        let p = self.prec();
        let re_clear = rnd!(p, &self.re - &self.rad, Round::Down) > 0;
        let im_clear = rnd!(p, absf(&self.im) - &self.rad, Round::Down) > 0;
        if !(re_clear || im_clear) {
            return domain("square root of a disc meeting the branch cut");
        }
        let a = Float::with_val(p, self.re.hypot_ref(&self.im));
        let (sr, si) = if self.re >= 0 {
            let sr = Float::with_val(p, Float::with_val(p, &a + &self.re) / 2u32).sqrt();
            let si = Float::with_val(p, &self.im / Float::with_val(p, &sr * 2u32));
            (sr, si)
        } else {
            let mut si = Float::with_val(p, Float::with_val(p, &a - &self.re) / 2u32).sqrt();
            if self.im < 0 {
                si = -si;
            }
            let sr = Float::with_val(p, absf(&self.im) / Float::with_val(p, absf(&si) * 2u32));
            (sr, si)
        };
        let out = ComplexHP::raw(sr, si, Float::new(p));
        let err = out.rounding(5);
        // |√(c+δ) - √c| ≤ r / Re √c, since Re √(c+δ) ≥ 0
        let re_low = rnd!(p, &out.re - &err, Round::Down);
        if re_low <= 0 {
            return domain("square root too close to the branch cut");
        }
        let prop = rnd!(p, &self.rad / &re_low, Round::Up);
        let rad = add_up(p, &prop, &err);
        Ok(ComplexHP { rad, ..out })
    }

    /// Integer power; negative exponents go through [`ComplexHP::recip`].
    pub fn powi(&self, n: i64) -> Result<ComplexHP> {
        let base = if n < 0 { self.recip()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = ComplexHP::one(self.prec());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// Upper bound on `|self - other| / |other|`.
    pub fn rel_distance(&self, other: &ComplexHP) -> Float {
        let p = self.prec().max(other.prec());
        let diff = self - other;
        let den = other.abs_lower();
        if den.is_zero() {
            return Float::with_val(p, rug::float::Special::Infinity);
        }
        rnd!(p, diff.abs_upper() / &den, Round::Up)
    }
}

impl Add for &ComplexHP {
    type Output = ComplexHP;
    fn add(self, o: &ComplexHP) -> ComplexHP {
        let p = self.prec().max(o.prec());
        let out = ComplexHP::raw(
            Float::with_val(p, &self.re + &o.re),
            Float::with_val(p, &self.im + &o.im),
            Float::new(p),
        );
        let rad = add_up(p, &add_up(p, &self.rad, &o.rad), &out.rounding(1));
        ComplexHP { rad, ..out }
    }
}

impl Neg for &ComplexHP {
    type Output = ComplexHP;
    fn neg(self) -> ComplexHP {
        ComplexHP::raw(
            Float::with_val(self.prec(), -&self.re),
            Float::with_val(self.prec(), -&self.im),
            self.rad.clone(),
        )
    }
}

impl Sub for &ComplexHP {
    type Output = ComplexHP;
    fn sub(self, o: &ComplexHP) -> ComplexHP {
        self + &(-o)
    }
}

impl Mul for &ComplexHP {
    type Output = ComplexHP;
    fn mul(self, o: &ComplexHP) -> ComplexHP {
        let p = self.prec().max(o.prec());
        let re = Float::with_val(p, &self.re * &o.re) - Float::with_val(p, &self.im * &o.im);
        let im = Float::with_val(p, &self.re * &o.im) + Float::with_val(p, &self.im * &o.re);
        let out = ComplexHP::raw(Float::with_val(p, re), Float::with_val(p, im), Float::new(p));
        // rounding: each component is within 3 ulps of |a|₁|b|₁
        let l1a = add_up(p, &absf(&self.re), &absf(&self.im));
        let l1b = add_up(p, &absf(&o.re), &absf(&o.im));
        let round = mul_up(p, &mul_up(p, &l1a, &l1b), &ulps(p, 3));
        let prop = add_up(
            p,
            &add_up(p, &mul_up(p, &self.center_abs_up(), &o.rad), &mul_up(p, &o.center_abs_up(), &self.rad)),
            &mul_up(p, &self.rad, &o.rad),
        );
        ComplexHP {
            rad: add_up(p, &prop, &round),
            ..out
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for ComplexHP {
            type Output = ComplexHP;
            fn $m(self, o: ComplexHP) -> ComplexHP {
                (&self).$m(&o)
            }
        }
        impl $tr<&ComplexHP> for ComplexHP {
            type Output = ComplexHP;
            fn $m(self, o: &ComplexHP) -> ComplexHP {
                (&self).$m(o)
            }
        }
        impl $tr<ComplexHP> for &ComplexHP {
            type Output = ComplexHP;
            fn $m(self, o: ComplexHP) -> ComplexHP {
                self.$m(&o)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 128;

    fn c(re: f64, im: f64) -> ComplexHP {
        ComplexHP::from_f64(re, im, P)
    }

    fn close(a: &ComplexHP, re: f64, im: f64) -> bool {
        a.re().contains_f64(re) || (a.re().to_f64() - re).abs() < 1e-15
            && (a.im().contains_f64(im) || (a.im().to_f64() - im).abs() < 1e-15)
    }

    #[test]
    fn field_ops() {
        let a = c(1.0, 2.0);
        let b = c(-3.0, 0.5);
        let m = &a * &b;
        assert!(m.re().contains_f64(-4.0) && m.im().contains_f64(-5.5));
        let q = m.div(&b).unwrap();
        assert!(close(&q, 1.0, 2.0));
        assert!(ComplexHP::from_i64(0, P).recip().is_err());
    }

    #[test]
    fn exp_of_i_pi() {
        let z = &ComplexHP::i(P) * &ComplexHP::pi(P);
        let e = z.exp();
        assert!(e.re().contains_f64(-1.0));
        assert!(e.im().contains_zero());
        let ph = ComplexHP::from_phase(&Rational::from(1), P);
        assert!(ph.re().contains_f64(-1.0));
    }

    #[test]
    fn principal_sqrt() {
        let s = c(-4.0, 1e-3).sqrt().unwrap();
        assert!(s.im().to_f64() > 1.9);
        let t = c(0.0, 2.0).sqrt().unwrap();
        assert!(close(&t, 1.0, 1.0));
        assert!(c(-4.0, 0.0).sqrt().is_err());
    }

    #[test]
    fn powers() {
        let z = c(0.0, 1.0);
        assert!(close(&z.powi(4).unwrap(), 1.0, 0.0));
        assert!(close(&z.powi(-1).unwrap(), 0.0, -1.0));
    }

    #[test]
    fn long_product_stays_tight() {
        let w = ComplexHP::from_phase(&Rational::from((1, 7)), 192);
        let mut acc = ComplexHP::one(192);
        for _ in 0..20_000 {
            acc = &acc * &w;
        }
        assert!(acc.radius().to_f64() < 1e-45);
    }
}
