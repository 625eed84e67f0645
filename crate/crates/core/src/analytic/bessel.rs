use rug::Float;

use super::{Enclosure, Verdict};
use crate::error::{usage, Error, Result};

/// Upper limit on series terms; far beyond what `x ≤ 10⁴` needs.
const MAX_TERMS: usize = 1 << 16;

/// `I₋₁(x) = I₁(x) = ∑_{m≥1} (x/2)^{2m-1} / (m!(m-1)!)` at a point `x ≥ 0`.
///
/// The `m = 0` term of the general series carries `1/Γ(0) = 0`, so the sum
/// starts at `m = 1`. After `M` terms the ratio of consecutive terms is
/// below `ρ = (x/2)²/((M+1)(M+2))`, and once `ρ < 1/2` the tail is at most
/// `t_{M+1}/(1-ρ)`.
fn bessel_point(x: &Float, prec: u32) -> Result<Enclosure> {
    if *x < 0 {
        return usage("bessel_im1 needs x >= 0");
    }
    if x.is_zero() {
        return Ok(Enclosure::zero(prec));
    }
    let xe = Enclosure::point(Float::with_val(prec, x));
    let half = &xe / &Enclosure::from_i64(2, prec);
    let y = half.sqr();
    let mut term = half.clone(); // m = 1
    let mut sum = Enclosure::zero(prec);
    for m in 1..MAX_TERMS {
        sum = &sum + &term;
        // term_{m+1} = term_m · y / ((m+1) m)
        let denom = Enclosure::from_i64((m as i64 + 1) * m as i64, prec);
        term = &(&term * &y) / &denom;
        let rho_den = Enclosure::from_i64((m as i64 + 1) * (m as i64 + 2), prec);
        let rho = &y / &rho_den;
        if *rho.hi() < 0.5 {
            // term now holds t_{m+1}
            let tail_hi = &term / &(Enclosure::from_i64(1, prec) - &rho);
            let rel = Float::with_val(prec, tail_hi.hi() / sum.lo());
            if rel < Float::with_val(prec, Float::i_exp(1, -(prec as i32) - 8)) {
                let upper = Enclosure::new(Float::new(prec), tail_hi.hi().clone())?;
                return Ok(&sum + &upper);
            }
        }
    }
    Err(Error::Precision(format!(
        "I_-1 series did not settle within {MAX_TERMS} terms"
    )))
}

/// Enclosure of `I₋₁(x)` over an interval `x ⊆ [0, ∞)`. Since `I₁` is
/// increasing there, the endpoints suffice.
pub fn bessel_im1(x: &Enclosure, prec: u32) -> Result<Enclosure> {
    if *x.lo() < 0 {
        return usage(format!("bessel_im1 needs x >= 0, got lower end {}", x.lo()));
    }
    let lo = bessel_point(x.lo(), prec)?;
    if x.lo() == x.hi() {
        return Ok(lo);
    }
    let hi = bessel_point(x.hi(), prec)?;
    Enclosure::new(lo.lo().clone(), hi.hi().clone())
}

/// `(1/10) e^x/√x` and `√(π/8) e^x/√x`, the bounds of `I₋₁(x)` for `x ≥ 3`.
pub fn wang_bounds(x: &Enclosure) -> Result<(Enclosure, Enclosure)> {
    let p = x.prec();
    let base = &x.exp() / &x.sqrt()?;
    let lower = &base / &Enclosure::from_i64(10, p);
    let c = (&Enclosure::pi(p) / &Enclosure::from_i64(8, p)).sqrt()?;
    Ok((lower, &c * &base))
}

/// Certified check that `I₋₁(x)` lies strictly between the Wang bounds.
pub fn wang_bounds_hold(x: &Enclosure) -> Result<Verdict> {
    if *x.lo() < 3 {
        return usage(format!("Wang bounds need x >= 3, got lower end {}", x.lo()));
    }
    let i = bessel_im1(x, x.prec())?;
    let (lower, upper) = wang_bounds(x)?;
    Ok(lower.lt(&i).and(i.lt(&upper)))
}
