use rug::float::Round;
use rug::{Float, Rational};

use super::ComplexHP;
use crate::analytic::Enclosure;
use crate::error::{domain, Error, Result};

/// Hard cap on product factors or theta terms before giving up.
const MAX_TERMS: usize = 2_000_000;

/// `(w; q)_∞ = ∏_{k≥0} (1 - w q^k)` for `|q| < 1`.
///
/// After `K` factors, with `x = |w||q|^K < 1`,
/// `|log ∏_{k≥K}(1 - w q^k)| ≤ x / ((1 - |q|)(1 - x))`, and the product is
/// widened by `e^ε - 1 ≤ 2ε` once `ε < 2^{-p}`.
pub fn pochhammer_inf(w: &ComplexHP, q: &ComplexHP) -> Result<ComplexHP> {
    let p = w.prec().max(q.prec());
    let qa = q.abs_upper();
    if qa >= 1 {
        return domain("(w; q)_inf needs |q| < 1");
    }
    let one = ComplexHP::one(p);
    let one_minus_q = Float::with_val_round(p, 1 - &qa, Round::Down).0;
    let target = Float::with_val(p, Float::i_exp(1, -(p as i32) - 2));
    let mut acc = one.clone();
    let mut wq = w.clone();
    for _ in 0..MAX_TERMS {
        let x = wq.abs_upper();
        if x < 0.5 {
            // ε ≤ x / ((1-|q|)(1-x)) ≤ 2x / (1-|q|)
            let eps = Float::with_val_round(p, &x * 2u32, Round::Up).0;
            let eps = Float::with_val_round(p, &eps / &one_minus_q, Round::Up).0;
            if eps < target {
                let mag = acc.abs_upper();
                let widen = Float::with_val_round(p, &mag * &eps, Round::Up).0;
                let widen = Float::with_val_round(p, &widen * 2u32, Round::Up).0;
                let disc = ComplexHP::new(
                    &Enclosure::new(Float::with_val(p, -&widen), widen.clone())?,
                    &Enclosure::new(Float::with_val(p, -&widen), widen)?,
                );
                return Ok(&acc + &disc);
            }
        }
        acc = &acc * &(&one - &wq);
        wq = &wq * q;
    }
    Err(Error::Precision(
        "Im(tau) too small: the product did not settle within the term cap".into(),
    ))
}

fn check_upper_half(tau: &ComplexHP) -> Result<()> {
    if !tau.im().is_positive().is_true() {
        return domain("Im(tau) must be positive");
    }
    Ok(())
}

/// `e^{πi w · t}` for rational `t`.
fn exp_pi_i(w: &ComplexHP, t: &Rational) -> ComplexHP {
    let p = w.prec();
    let c = &ComplexHP::from_rationals(&Rational::new(), t, p) * &ComplexHP::pi(p);
    (&c * w).exp()
}

/// `η(τ) = q^{1/24} (q; q)_∞`.
pub fn eta(tau: &ComplexHP) -> Result<ComplexHP> {
    check_upper_half(tau)?;
    let q = tau.exp_2pi_i();
    let pre = exp_pi_i(tau, &Rational::from((1, 12)));
    Ok(&pre * &pochhammer_inf(&q, &q)?)
}

/// `ψ(ς; τ) = (ξ, q/ξ; q)_∞` with `ξ = e^{2πiς}`, evaluated directly.
pub fn psi(sigma: &ComplexHP, tau: &ComplexHP) -> Result<ComplexHP> {
    check_upper_half(tau)?;
    let q = tau.exp_2pi_i();
    let xi = sigma.exp_2pi_i();
    let q_over = q.div(&xi)?;
    Ok(&pochhammer_inf(&xi, &q)? * &pochhammer_inf(&q_over, &q)?)
}

/// `ϑ(ς; τ) = -i q^{1/8} ξ^{-1/2} (ξ, q/ξ, q; q)_∞`.
///
/// The `(q; q)_∞` factor is what the triple product gives; without it the
/// series definition and the ψ/ϑ/η relation both fail.
pub fn theta(sigma: &ComplexHP, tau: &ComplexHP) -> Result<ComplexHP> {
    let p = tau.prec();
    let q = tau.exp_2pi_i();
    let prod = &psi(sigma, tau)? * &pochhammer_inf(&q, &q)?;
    let pre = &exp_pi_i(tau, &Rational::from((1, 4))) * &exp_pi_i(sigma, &Rational::from(-1));
    let minus_i = -&ComplexHP::i(p);
    Ok(&(&minus_i * &pre) * &prod)
}

/// `ϑ(ς; τ) = ∑_{ν ∈ ℤ+1/2} e^{2πiν(ς+1/2) + πiν²τ}`, summed symmetrically.
///
/// `|term(ν)| = e^{-πν² Im τ - 2πν Im ς}`; past `|ν| > |Im ς|/Im τ + 1` the
/// terms decrease at least geometrically, which bounds the tail.
pub fn theta_sum(sigma: &ComplexHP, tau: &ComplexHP) -> Result<ComplexHP> {
    check_upper_half(tau)?;
    let p = tau.prec();
    let y = tau.im().lo().clone();
    let s = sigma.im().mag();
    let pi = Enclosure::pi(p);
    let half = ComplexHP::from_rationals(&Rational::from((1, 2)), &Rational::new(), p);
    let shifted = sigma + &half;
    let turn = Float::with_val(p, &s / &y);
    let mut acc = ComplexHP::from_i64(0, p);
    for j in 0..MAX_TERMS as i64 {
        for nu in [Rational::from((2 * j + 1, 2)), Rational::from((-2 * j - 1, 2))] {
            let nu2 = Rational::from(&nu * &nu);
            let e = &exp_pi_i(&shifted, &Rational::from(&nu * 2u32)) * &exp_pi_i(tau, &nu2);
            acc = &acc + &e;
        }
        // tail: |ν| ≥ j + 3/2
        let v = Rational::from((2 * j + 3, 2));
        let vf = Float::with_val(p, &v);
        if vf <= Float::with_val(p, &turn + 1u32) {
            continue;
        }
        // f(v) = exp(-π y v² + 2π s v); ratio f(v+1)/f(v) ≤ exp(-π y (2v+1) + 2π s)
        let ve = Enclosure::from_rational(&v, p);
        let ye = Enclosure::point(y.clone());
        let se = Enclosure::point(s.clone());
        let two = Enclosure::from_i64(2, p);
        let expo = &(&(&-&pi * &ye) * &ve.sqr()) + &(&(&(&two * &pi) * &se) * &ve);
        let head = expo.exp();
        let ratio_expo = &(&(&-&pi * &ye) * &(&(&two * &ve) + &Enclosure::from_i64(1, p)))
            + &(&(&two * &pi) * &se);
        let ratio = ratio_expo.exp();
        if *ratio.hi() >= 1 {
            continue;
        }
        let tail = &(&two * &head) / &(&Enclosure::from_i64(1, p) - &ratio);
        let scale = acc.abs_upper().max(&Float::with_val(p, Float::i_exp(1, -(p as i32))));
        let target = Float::with_val(p, &scale * Float::with_val(p, Float::i_exp(1, -(p as i32) - 8)));
        if *tail.hi() < target {
            let t = tail.hi().clone();
            let disc = ComplexHP::new(
                &Enclosure::new(Float::with_val(p, -&t), t.clone())?,
                &Enclosure::new(Float::with_val(p, -&t), t)?,
            );
            return Ok(&acc + &disc);
        }
    }
    Err(Error::Precision("theta series did not settle".into()))
}

/// `ψ(ς; τ)` through the theta relation `ψ = i e^{-πiτ/6} e^{πiς} ϑ(ς;τ)/η(τ)`,
/// using the series form of ϑ so that it is independent of [`psi`].
pub fn psi_via_theta(sigma: &ComplexHP, tau: &ComplexHP) -> Result<ComplexHP> {
    let p = tau.prec();
    let pre = &exp_pi_i(tau, &Rational::from((-1, 6))) * &exp_pi_i(sigma, &Rational::from(1));
    let num = &(&ComplexHP::i(p) * &pre) * &theta_sum(sigma, tau)?;
    num.div(&eta(tau)?)
}
