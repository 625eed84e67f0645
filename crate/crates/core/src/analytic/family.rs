use std::fmt;

use rug::Rational;
use serde::Serialize;

use super::{bessel_im1, wang_bounds, Enclosure, Expr, Verdict};
use crate::error::{usage, Error, Result};

pub const DEFAULT_PRECISION: u32 = 192;
pub const PRECISION_CAP: u32 = 1024;

/// Significant digits used when endpoints are written out as strings.
const DIGITS: usize = 20;

/// Closed-form asymptotics of one coefficient family:
///
/// ```text
/// M(n) = -amp · cos(π(αn + β)) · n′^{-1/2} · I₋₁((4π/5)√n′),   n′ = n + shift
/// E(n) = C + (2π^{5/4}/5) · e^{(2π/5)√n′} · n′^{1/2}
/// ```
///
/// with `|coefficient(n) - M(n)| ≤ E(n)` for `n ≥ 20`.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilyModel {
    pub name: String,
    pub shift: i64,
    pub amplitude: Expr,
    /// α
    pub cos_slope: Rational,
    /// β
    pub cos_offset: Rational,
    /// C
    pub bound_constant: Expr,
    pub growth_coefficient: Expr,
}

fn four_pi_fifths() -> Expr {
    Expr::ratio(4, 5) * Expr::Pi
}

fn growth_coefficient() -> Expr {
    Expr::ratio(2, 5) * Expr::Pi.pow(5, 4)
}

fn ab_constant() -> Expr {
    (Expr::int(2) * Expr::int(54).exp() + (Expr::int(8) * Expr::Pi).exp() + Expr::int(185))
        * Expr::int(2).exp()
}

/// `cos(π/5) / (1 + cos(2π/5))`
fn d_ratio() -> Expr {
    (Expr::ratio(1, 5) * Expr::Pi).cos()
        / (Expr::int(1) + (Expr::ratio(2, 5) * Expr::Pi).cos())
}

impl FamilyModel {
    /// `A(n)`, coefficients of `1/R(q)^5`.
    pub fn a() -> Self {
        FamilyModel {
            name: "A".into(),
            shift: -1,
            amplitude: four_pi_fifths(),
            cos_slope: Rational::from((2, 5)),
            cos_offset: Rational::from((1, 5)),
            bound_constant: ab_constant(),
            growth_coefficient: growth_coefficient(),
        }
    }

    /// `B(n)`, coefficients of `R(q)^5`.
    pub fn b() -> Self {
        FamilyModel {
            name: "B".into(),
            shift: 1,
            amplitude: four_pi_fifths(),
            cos_slope: Rational::from((4, 5)),
            cos_offset: Rational::from((-2, 5)),
            bound_constant: ab_constant(),
            growth_coefficient: growth_coefficient(),
        }
    }

    /// `D(n)`, coefficients of `R(q^5)/R(q)^5`, with amplitude
    /// `(4π/5) cos(π/5)/(1 + cos(2π/5))`.
    pub fn d() -> Self {
        FamilyModel {
            name: "D".into(),
            shift: 0,
            amplitude: four_pi_fifths() * d_ratio(),
            cos_slope: Rational::from((2, 5)),
            cos_offset: Rational::from((1, 5)),
            bound_constant: Expr::int(332).exp()
                + Expr::int(272).exp()
                + (Expr::int(8) * Expr::Pi + Expr::int(2)).exp(),
            growth_coefficient: growth_coefficient(),
        }
    }

    /// `D` with the amplitude `(2π/5) cos(π/5)/(1 + cos(2π/5))` as it is
    /// usually quoted. It is half the true amplitude; kept for comparison.
    pub fn d_as_printed() -> Self {
        FamilyModel {
            name: "D-printed".into(),
            amplitude: Expr::ratio(2, 5) * Expr::Pi * d_ratio(),
            ..Self::d()
        }
    }

    pub fn by_name(name: &str) -> Result<Self> {
        match name {
            "A" => Ok(Self::a()),
            "B" => Ok(Self::b()),
            "D" => Ok(Self::d()),
            "D-printed" => Ok(Self::d_as_printed()),
            _ => usage(format!("unknown family `{name}`; expected A, B, D or D-printed")),
        }
    }

    fn shifted(&self, n: u64) -> Result<i64> {
        let np = n as i64 + self.shift;
        if np < 1 {
            return usage(format!("family {} needs n + {} >= 1, got n={n}", self.name, self.shift));
        }
        Ok(np)
    }

    /// `αn + β` reduced to `[0, 2)`.
    pub fn cos_argument(&self, n: u64) -> Rational {
        let t = Rational::from(&self.cos_slope * n) + &self.cos_offset;
        let half = Rational::from(&t / 2u32);
        t - half.floor() * 2u32
    }

    /// `cos(π(αn + β))`, which depends only on `n mod 5`.
    pub fn class_cosine(&self, residue: u64, prec: u32) -> Enclosure {
        let t = Enclosure::from_rational(&self.cos_argument(residue % 5), prec);
        (&t * &Enclosure::pi(prec)).cos()
    }

    /// `(4π/5)√n′`
    fn bessel_argument(&self, np: i64, prec: u32) -> Enclosure {
        let s = Enclosure::from_i64(np, prec).sqrt().expect("n' >= 1");
        &four_pi_fifths().eval(prec) * &s
    }

    /// `M(n)`.
    pub fn main_term(&self, n: u64, prec: u32) -> Result<Enclosure> {
        let np = self.shifted(n)?;
        let x = self.bessel_argument(np, prec);
        let i = bessel_im1(&x, prec)?;
        let inv_sqrt = &Enclosure::from_i64(1, prec) / &Enclosure::from_i64(np, prec).sqrt()?;
        let c = self.class_cosine(n, prec);
        let amp = self.amplitude.eval(prec);
        Ok(-(&(&(&amp * &c) * &inv_sqrt) * &i))
    }

    /// `E(n)`, defined for `n ≥ 20`.
    pub fn error_bound(&self, n: u64, prec: u32) -> Result<Enclosure> {
        if n < 20 {
            return usage(format!("error bound holds for n >= 20, got n={n}"));
        }
        let np = self.shifted(n)?;
        let npe = Enclosure::from_i64(np, prec);
        let s = npe.sqrt()?;
        let growth = (&(Expr::ratio(2, 5) * Expr::Pi).eval(prec) * &s).exp();
        let g = &(&self.growth_coefficient.eval(prec) * &growth) * &s;
        Ok(&self.bound_constant.eval(prec) + &g)
    }

    /// Wang lower bound of `|M(n)|` along the residue class of `n`:
    /// `amp · |cos| · n′^{-1/2} · (1/10) e^x/√x`.
    pub fn main_lower_bound(&self, n: u64, prec: u32) -> Result<Enclosure> {
        let np = self.shifted(n)?;
        let x = self.bessel_argument(np, prec);
        let (lower, _) = wang_bounds(&x)?;
        let c = self.class_cosine(n, prec).abs();
        let inv_sqrt = &Enclosure::from_i64(1, prec) / &Enclosure::from_i64(np, prec).sqrt()?;
        Ok(&(&(&self.amplitude.eval(prec) * &c) * &inv_sqrt) * &lower)
    }
}

impl fmt::Display for FamilyModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sh = match self.shift {
            0 => "n".to_string(),
            s if s > 0 => format!("(n+{s})"),
            s => format!("(n{s})"),
        };
        write!(
            f,
            "M_{}(n) = -({}) cos(pi({} n + {})) {sh}^(-1/2) I_-1((4pi/5) sqrt{sh}); \
             E_{}(n) = {} + ({}) exp((2pi/5) sqrt{sh}) {sh}^(1/2)",
            self.name,
            self.amplitude,
            self.cos_slope,
            self.cos_offset,
            self.name,
            self.bound_constant,
            self.growth_coefficient
        )
    }
}

/// Outcome of comparing `|M(n)|` against `E(n)` at one index.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DominanceReport {
    pub family: String,
    pub n: u64,
    pub main_lo: String,
    pub main_hi: String,
    pub bound_hi: String,
    pub verdict: Verdict,
    pub precision_bits: u32,
}

/// Certified `|M(n)| > E(n)` at a fixed precision.
pub fn dominance_at(model: &FamilyModel, n: u64, prec: u32) -> Result<DominanceReport> {
    let main = model.main_term(n, prec)?;
    let bound = model.error_bound(n, prec)?;
    let mag = main.abs();
    let verdict = bound.lt(&mag);
    Ok(DominanceReport {
        family: model.name.clone(),
        n,
        main_lo: main.lo_string(DIGITS),
        main_hi: main.hi_string(DIGITS),
        bound_hi: bound.hi_string(DIGITS),
        verdict,
        precision_bits: prec,
    })
}

/// [`dominance_at`], doubling the precision from `start` while the answer
/// is unknown, up to `cap` bits.
pub fn dominance(model: &FamilyModel, n: u64, start: u32, cap: u32) -> Result<DominanceReport> {
    let mut prec = start.max(64);
    loop {
        let r = dominance_at(model, n, prec)?;
        if r.verdict != Verdict::Unknown || prec >= cap {
            return Ok(r);
        }
        prec = (prec * 2).min(cap);
    }
}

/// Proof record that `|M(n)| > E(n)` for every `n ≥ n₀` in one residue
/// class mod 5.
///
/// With `L(n)` the Wang lower bound of `|M(n)|`, `L/C` grows once
/// `√n′ > 15/(8π)` and `L/(e^{(2π/5)√n′} n′^{1/2})` grows once
/// `√n′ > 25/(4π)`, so `E/L` decreases and `L(n₀) > E(n₀)` carries over
/// to all larger `n`. `x = (4π/5)√n′ ≥ 3` keeps the Wang bound valid.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EventualCertificate {
    pub family: String,
    pub residue: u64,
    pub modulus: u64,
    pub n0: u64,
    pub precision_bits: u32,
    pub main_lo: String,
    pub lower_bound_lo: String,
    pub bound_hi: String,
    pub dominance_at_n0: Verdict,
    pub monotone_ok: bool,
    pub wang_range_ok: bool,
    pub verdict: Verdict,
    pub claim: String,
}

fn monotone_conditions(model: &FamilyModel, n0: u64, prec: u32) -> Result<(bool, bool)> {
    let np = model.shifted(n0)?;
    let s = Enclosure::from_i64(np, prec).sqrt()?;
    let pi = Enclosure::pi(prec);
    let c1 = &Enclosure::from_i64(15, prec) / &(&Enclosure::from_i64(8, prec) * &pi);
    let c2 = &Enclosure::from_i64(25, prec) / &(&Enclosure::from_i64(4, prec) * &pi);
    let monotone = c1.lt(&s).and(c2.lt(&s)).is_true();
    let x = &four_pi_fifths().eval(prec) * &s;
    let wang = Enclosure::from_i64(3, prec).le(&x).is_true();
    Ok((monotone, wang))
}

/// Builds the "for all `n ≥ n₀`" record for the class `n ≡ residue (mod 5)`,
/// escalating precision from `start` to `cap` while undecided.
///
/// Refuses (domain error) when `n₀ < 20` or the monotonicity conditions fail.
pub fn eventual_dominance_certificate(
    model: &FamilyModel,
    residue: u64,
    n0: u64,
    start: u32,
    cap: u32,
) -> Result<EventualCertificate> {
    if n0 < 20 {
        return Err(Error::Domain(format!("certificate needs n0 >= 20, got {n0}")));
    }
    let residue = residue % 5;
    if model.class_cosine(residue, start.max(64)).contains_zero() {
        return Err(Error::Domain(format!(
            "cosine factor of family {} vanishes on residue {residue}",
            model.name
        )));
    }
    let mut prec = start.max(64);
    loop {
        let (monotone_ok, wang_range_ok) = monotone_conditions(model, n0, prec)?;
        if !(monotone_ok && wang_range_ok) {
            return Err(Error::Domain(format!(
                "monotonicity preconditions fail at n0={n0} for family {}",
                model.name
            )));
        }
        let lower = model.main_lower_bound(n0, prec)?;
        let bound = model.error_bound(n0, prec)?;
        let np = model.shifted(n0)?;
        let x = model.bessel_argument(np, prec);
        let main_mag = {
            let amp = model.amplitude.eval(prec);
            let c = model.class_cosine(residue, prec).abs();
            let inv_sqrt =
                &Enclosure::from_i64(1, prec) / &Enclosure::from_i64(np, prec).sqrt()?;
            &(&(&amp * &c) * &inv_sqrt) * &bessel_im1(&x, prec)?
        };
        let dominance_at_n0 = bound.lt(&main_mag);
        let verdict = bound.lt(&lower);
        if verdict != Verdict::Unknown || prec >= cap {
            return Ok(EventualCertificate {
                family: model.name.clone(),
                residue,
                modulus: 5,
                n0,
                precision_bits: prec,
                main_lo: main_mag.lo_string(DIGITS),
                lower_bound_lo: lower.lo_string(DIGITS),
                bound_hi: bound.hi_string(DIGITS),
                dominance_at_n0,
                monotone_ok,
                wang_range_ok,
                verdict,
                claim: format!(
                    "|M_{}(n)| > E_{}(n) for all n >= {n0} with n = {residue} mod 5",
                    model.name, model.name
                ),
            });
        }
        prec = (prec * 2).min(cap);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn domain_checks() {
        assert!(FamilyModel::a().main_term(1, 64).is_err());
        assert!(FamilyModel::a().main_term(2, 64).is_ok());
        assert!(FamilyModel::b().error_bound(19, 64).is_err());
        assert!(FamilyModel::by_name("Z").is_err());
    }

    #[test]
    fn cosine_arguments_are_periodic() {
        let m = FamilyModel::b();
        for n in 0..20u64 {
            assert_eq!(m.cos_argument(n), m.cos_argument(n + 5));
        }
        assert_eq!(FamilyModel::a().cos_argument(0), Rational::from((1, 5)));
    }

    #[test]
    fn printed_d_is_half() {
        let t = FamilyModel::d().main_term(101, 128).unwrap();
        let p = FamilyModel::d_as_printed().main_term(101, 128).unwrap();
        let r = (&t / &p).to_f64();
        assert!((r - 2.0).abs() < 1e-20);
    }

    #[test]
    fn small_n0_refused() {
        assert!(eventual_dominance_certificate(&FamilyModel::a(), 0, 10, 64, 64).is_err());
    }
}
