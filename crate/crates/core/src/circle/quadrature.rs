use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::farey::farey_arcs;
use crate::analytic::{bessel_im1, Enclosure};
use crate::error::{usage, Error, Result};
use crate::qseries::ProductSpec;

/// Absolute tolerance of the arc quadrature.
pub const QUAD_TOLERANCE: f64 = 1e-8;
/// Floating-point noise floor, relative to `∫|f|`.
const NOISE: f64 = 1e-12;
const LEVELS: usize = 6;
const MAX_DEPTH: u32 = 40;

/// A numerically integrated value. Not an enclosure: `tolerance` is the
/// quadrature's own convergence estimate, not a proven bound.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct NumericEstimate {
    pub re: f64,
    pub im: f64,
    pub tolerance: f64,
}

impl NumericEstimate {
    /// `[re - tolerance, re + tolerance]`, for callers that want interval
    /// syntax. The width is an estimate.
    pub fn as_enclosure(&self) -> Enclosure {
        Enclosure::new(
            rug::Float::with_val(53, self.re - self.tolerance),
            rug::Float::with_val(53, self.re + self.tolerance),
        )
        .expect("ordered")
    }
}

/// Romberg table on `[a, b]`: returns the two best diagonal entries and the
/// trapezoid estimate of `∫|f|`.
fn romberg_table<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> (Complex64, Complex64, f64) {
    let mut rows: Vec<Vec<Complex64>> = Vec::with_capacity(LEVELS + 1);
    let h0 = b - a;
    let (fa, fb) = (f(a), f(b));
    let mut trap = (fa + fb) * (h0 / 2.0);
    let mut abs_trap = (fa.norm() + fb.norm()) * h0 / 2.0;
    rows.push(vec![trap]);
    for lvl in 1..=LEVELS {
        let n = 1usize << (lvl - 1);
        let h = h0 / (n as f64);
        let mut mid = Complex64::new(0.0, 0.0);
        let mut abs_mid = 0.0;
        for i in 0..n {
            let v = f(a + (i as f64 + 0.5) * h);
            mid += v;
            abs_mid += v.norm();
        }
        trap = trap / 2.0 + mid * (h / 2.0);
        abs_trap = abs_trap / 2.0 + abs_mid * h / 2.0;
        let mut row = vec![trap];
        let mut scale = 1.0;
        for j in 1..=lvl {
            scale *= 4.0;
            let prev = rows[lvl - 1][j - 1];
            let v = row[j - 1] + (row[j - 1] - prev) / (scale - 1.0);
            row.push(v);
        }
        rows.push(row);
    }
    (rows[LEVELS][LEVELS], rows[LEVELS - 1][LEVELS - 1], abs_trap)
}

fn adapt<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64, tol: f64, depth: u32) -> Result<(Complex64, f64)> {
    let (best, prev, l1) = romberg_table(f, a, b);
    let diff = (best - prev).norm();
    if diff <= tol.max(NOISE * l1) {
        return Ok((best, diff));
    }
    if depth >= MAX_DEPTH {
        return Err(Error::Quadrature(format!(
            "no convergence on [{a}, {b}]: change {diff:e} exceeds {tol:e}"
        )));
    }
    let m = 0.5 * (a + b);
    let (l, el) = adapt(f, a, m, tol / 2.0, depth + 1)?;
    let (r, er) = adapt(f, m, b, tol / 2.0, depth + 1)?;
    Ok((l + r, el + er))
}

/// Adaptive Romberg integration (trapezoid with Richardson extrapolation)
/// of a complex integrand. Returns the value and the summed change between
/// the last two extrapolation levels.
pub fn romberg<F: Fn(f64) -> Complex64>(f: F, a: f64, b: f64, tol: f64) -> Result<(Complex64, f64)> {
    if !(a.is_finite() && b.is_finite() && a <= b) || tol <= 0.0 {
        return usage("romberg needs finite a <= b and tol > 0");
    }
    if a == b {
        return Ok((Complex64::new(0.0, 0.0), 0.0));
    }
    adapt(&f, a, b, tol, 0)
}

/// The product `f(q) = ∏ (q^a; q^m)_∞^e` in double precision.
fn product_f64(spec: &ProductSpec, q: Complex64) -> Complex64 {
    let mut acc = Complex64::new(1.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    for pf in spec.pochhammer_factors() {
        let qm = q.powu(pf.modulus as u32);
        let mut w = q.powu(pf.offset as u32);
        let mut part = one;
        while w.norm() > 1e-18 {
            part *= one - w;
            w *= qm;
        }
        acc *= part.powi(pf.exponent as i32);
    }
    acc
}

/// Coefficient `n` of the product, recovered by integrating over every arc
/// of the Farey dissection of order `order`, at radius `e^{-2π/N²}`.
///
/// Arcs are integrated in parallel and summed in `(k, h)` order.
pub fn numeric_coefficient(spec: &ProductSpec, n: u64, order: i64) -> Result<NumericEstimate> {
    if order < 2 {
        return usage(format!("numeric_coefficient needs N >= 2, got {order}"));
    }
    let rho = 1.0 / (order * order) as f64;
    let mut arcs = farey_arcs(order)?;
    arcs.sort_by_key(|a| (a.k, a.h));
    let per_arc = QUAD_TOLERANCE / arcs.len() as f64;
    let nf = n as f64;
    let parts = arcs
        .par_iter()
        .map(|arc| {
            let center = arc.h as f64 / arc.k as f64;
            let f = |phi: f64| {
                let tau = Complex64::new(center + phi, rho);
                let q = (Complex64::new(0.0, 2.0 * PI) * tau).exp();
                product_f64(spec, q) * Complex64::from_polar((2.0 * PI * nf * rho).exp(), -2.0 * PI * nf * phi)
            };
            let (v, err) = romberg(f, -arc.theta_left.to_f64(), arc.theta_right.to_f64(), per_arc)?;
            let rot = Complex64::from_polar(1.0, -2.0 * PI * nf * center);
            Ok((v * rot, err))
        })
        .collect::<Result<Vec<_>>>()?;
    let (mut sum, mut err) = (Complex64::new(0.0, 0.0), 0.0);
    for (v, e) in parts {
        sum += v;
        err += e;
    }
    Ok(NumericEstimate {
        re: sum.re,
        im: sum.im,
        tolerance: err.max(QUAD_TOLERANCE),
    })
}

/// Numerical check of the single-arc Bessel estimate
/// `I = (2π/k)((24n+b)/a)^{-1/2} I₋₁((π/6k)√(a(24n+b))) + E` with
/// `|E| ≤ e^{πa/3} e^{2πρ(n+b/24)} / (π(n+b/24))`.
#[derive(Clone, Debug, Serialize)]
pub struct ArcSpotCheck {
    pub a: f64,
    pub b: f64,
    pub h: i64,
    pub k: i64,
    pub n: u64,
    pub order: i64,
    pub integral_re: f64,
    pub integral_im: f64,
    pub main_term: f64,
    pub error: f64,
    pub bound: f64,
    pub holds: bool,
}

/// Integrates `e^{(π/12k)(bz + a/z)} e^{-2πinφ} e^{2πnρ}` with
/// `z = k(ρ - iφ)` over the arc of `1/k` (or `0/1`) in the dissection of
/// order `order`, and compares it with the Bessel main term.
pub fn arc_spotcheck(a: f64, b: f64, k: i64, n: u64, order: i64) -> Result<ArcSpotCheck> {
    let nf = n as f64;
    if a <= 0.0 {
        return usage("arc_spotcheck needs a > 0");
    }
    if nf <= b / 24.0 {
        return usage(format!("arc_spotcheck needs n > b/24, got n={n}, b={b}"));
    }
    if k < 1 || k > order {
        return usage(format!("need 1 <= k <= N, got k={k}, N={order}"));
    }
    let h = if k == 1 { 0 } else { 1 };
    let arc = farey_arcs(order)?
        .into_iter()
        .find(|x| x.h == h && x.k == k)
        .expect("1/k is a Farey fraction of order N >= k");
    let rho = 1.0 / (order * order) as f64;
    let kf = k as f64;
    let f = |phi: f64| {
        let z = Complex64::new(kf * rho, -kf * phi);
        let expo = (b * z + a / z) * (PI / (12.0 * kf));
        expo.exp() * Complex64::from_polar((2.0 * PI * nf * rho).exp(), -2.0 * PI * nf * phi)
    };
    let (v, _) = romberg(f, -arc.theta_left.to_f64(), arc.theta_right.to_f64(), QUAD_TOLERANCE)?;

    let m = 24.0 * nf + b;
    let x = PI / (6.0 * kf) * (a * m).sqrt();
    let bessel = bessel_im1(&Enclosure::from_f64(x, 128), 128)?.to_f64();
    let main = 2.0 * PI / kf * (m / a).powf(-0.5) * bessel;
    let shift = nf + b / 24.0;
    let bound = (PI * a / 3.0).exp() * (2.0 * PI * rho * shift).exp() / (PI * shift);
    let error = Complex64::new(v.re - main, v.im).norm();
    Ok(ArcSpotCheck {
        a,
        b,
        h,
        k,
        n,
        order,
        integral_re: v.re,
        integral_im: v.im,
        main_term: main,
        error,
        bound,
        holds: error <= bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::{expand_product, registered};

    #[test]
    fn romberg_polynomial_and_oscillation() {
        let (v, _) = romberg(|x| Complex64::new(x * x, 0.0), 0.0, 1.0, 1e-12).unwrap();
        assert!((v.re - 1.0 / 3.0).abs() < 1e-12);
        let (w, _) = romberg(|x| Complex64::from_polar(1.0, 2.0 * PI * 3.0 * x), 0.0, 1.0, 1e-12).unwrap();
        assert!(w.norm() < 1e-10);
    }

    #[test]
    fn constant_term_of_a() {
        let a = registered("A").unwrap();
        let est = numeric_coefficient(&a, 0, 4).unwrap();
        assert!((est.re - 1.0).abs() < 1e-6, "{est:?}");
    }

    #[test]
    fn recovers_small_coefficients() {
        for (name, n) in [("A", 4u64), ("B", 7)] {
            let s = registered(name).unwrap();
            let exact = expand_product(&s, n as usize).coeff(n as usize).unwrap().to_f64();
            let est = numeric_coefficient(&s, n, 5).unwrap();
            assert!(((est.re - exact) / exact).abs() < 1e-6, "{name} {n}: {est:?} vs {exact}");
        }
    }

    #[test]
    fn spotcheck_holds_on_sample_arc() {
        let r = arc_spotcheck(24.0, -24.0, 5, 30, 13).unwrap();
        assert!(r.holds, "{r:?}");
        assert!(arc_spotcheck(24.0, 24.0 * 40.0, 5, 30, 13).is_err());
    }
}
