use rug::{Integer, Rational};
use serde::Serialize;

use super::dedekind::dedekind_sum;
use super::UnitPhase;
use crate::error::{domain, usage, Result};
use crate::qseries::{ProductSpec, PsiFactor};

/// An element `(a b; c d)` of SL₂(ℤ) with `c > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GammaMatrix {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl GammaMatrix {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        if c <= 0 {
            return domain(format!("gamma matrix needs c > 0, got c={c}"));
        }
        if a as i128 * d as i128 - b as i128 * c as i128 != 1 {
            return domain(format!("({a} {b}; {c} {d}) does not have determinant 1"));
        }
        Ok(GammaMatrix { a, b, c, d })
    }

    pub fn det(&self) -> i128 {
        self.a as i128 * self.d as i128 - self.b as i128 * self.c as i128
    }

    /// Multiplier of the eta transformation,
    /// `χ(γ) = exp(πi((a+d)/(12c) - s(d,c) - 1/4))`.
    pub fn eta_multiplier(&self) -> UnitPhase {
        let mut t = Rational::from((self.a + self.d, 12 * self.c));
        t -= dedekind_sum(self.d, self.c).expect("det 1 forces gcd(c,d)=1");
        t -= Rational::from((1, 4));
        UnitPhase::new(t)
    }
}

pub(crate) fn check_arc(h: i64, k: i64) -> Result<()> {
    if k <= 0 || h < 0 || h >= k {
        return usage(format!("arc needs 0 <= h < k, got h={h}, k={k}"));
    }
    if gcd(h, k) != 1 {
        return domain(format!("arc needs gcd(h,k)=1, got h={h}, k={k}"));
    }
    Ok(())
}

pub(crate) fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a as i64
}

/// Some `(a, b)` with `a d - b c = 1`, for `c > 0` and `gcd(c, d) = 1`.
pub(crate) fn solve_det(c: i64, d: i64) -> (i64, i64) {
    if c == 1 {
        return (0, -1);
    }
    let inv = Integer::from(d.rem_euclid(c))
        .invert(&Integer::from(c))
        .expect("coprime");
    let a = inv.to_i64().unwrap();
    (a, (a * d - 1) / c)
}

/// Canonical `ħ_m(h,k)`: the least `ħ ≥ 0` with `ħ m′ h ≡ -1 (mod k′)`,
/// where `m = d m′`, `k = d k′`, `d = gcd(m,k)`. Zero when `k′ = 1`.
pub fn hbar(m: i64, h: i64, k: i64) -> Result<i64> {
    check_arc(h, k)?;
    let d = gcd(m, k);
    let (mp, kp) = (m / d, k / d);
    if kp == 1 {
        return Ok(0);
    }
    let unit = Integer::from(mp * h);
    let inv = unit
        .invert(&Integer::from(kp))
        .map_err(|_| crate::Error::Domain(format!("m'h={} not invertible mod {kp}", mp * h)))?;
    let minus_inv = Integer::from(kp) - inv;
    Ok(minus_inv.to_i64().unwrap() % kp)
}

/// `γ_{(m,h,k)} = (ħ, -b; k′, -m′h)` with `b = (ħ m′ h + 1)/k′`.
pub fn gamma_of(m: i64, h: i64, k: i64) -> Result<GammaMatrix> {
    let hb = hbar(m, h, k)?;
    let d = gcd(m, k);
    let (mp, kp) = (m / d, k / d);
    let num = hb * mp * h + 1;
    debug_assert_eq!(num % kp, 0);
    GammaMatrix::new(hb, -(num / kp), kp, -mp * h)
}

/// `λ = ⌈rh / gcd(m,k)⌉` and `λ* = λ - rh/gcd(m,k)`, so `0 ≤ λ* < 1`.
pub fn lambda_pair(m: i64, r: i64, h: i64, k: i64) -> Result<(i64, Rational)> {
    if r < 1 || r >= m {
        return usage(format!("lambda_pair needs 1 <= r < m, got r={r}, m={m}"));
    }
    check_arc(h, k)?;
    let d = gcd(m, k);
    let x = Rational::from((r * h, d));
    let lam = x.clone().ceil().numer().to_i64().unwrap();
    Ok((lam, Rational::from(lam) - x))
}

/// Transformation data of one factor `ψ(rτ; mτ)^δ` on the arc at `h/k`.
///
/// After the transformation, `τ = (h + iz)/k` maps to
/// `τ̃ = tau_re + tau_im · (i/z)` and the shift to
/// `ς̃ = sigma_re + sigma_im · (i/z)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FactorData {
    pub factor: PsiFactor,
    pub gcd: i64,
    pub m_prime: i64,
    pub k_prime: i64,
    pub hbar: i64,
    pub gamma: GammaMatrix,
    pub lambda: i64,
    pub lambda_star: Rational,
    pub tau_re: Rational,
    pub tau_im: Rational,
    pub sigma_re: Rational,
    pub sigma_im: Rational,
}

/// One factor `(1 - e^{2πi t})^{multiplicity}` of `Π_{h,k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootFactor {
    pub t: Rational,
    pub multiplicity: i64,
}

/// Everything the product transformation needs on one arc.
///
/// ```text
/// ∏ ψ(r_j τ; m_j τ)^{δ_j} = prefactor · exp(π/(12k) (Ω z + Δ/z)) · ∏ ψ(ς̃_j; τ̃_j)^{δ_j}
/// ```
#[derive(Clone, Debug, PartialEq)]
pub struct TransformData {
    pub h: i64,
    pub k: i64,
    pub factors: Vec<FactorData>,
    pub omega_exp: Rational,
    pub delta: Rational,
    /// `ω_{h,k}`
    pub omega: UnitPhase,
    /// `Υ_{h,k}`
    pub upsilon: UnitPhase,
    /// `i^{∑δ} (-1)^{∑δλ} ω² Υ`
    pub prefactor: UnitPhase,
    /// `Π_{h,k}` over the factors with `λ* = 0`.
    pub pi: Vec<RootFactor>,
}

/// Which Δ formula to use. The printed display reads `(λ* − λ*)`, which is
/// identically zero; the derivation it comes from has `λ*² − λ*`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeltaVariant {
    Corrected,
    AsPrinted,
}

fn factor_data(f: &PsiFactor, h: i64, k: i64) -> Result<FactorData> {
    let (r, m) = (f.r as i64, f.m as i64);
    let d = gcd(m, k);
    let (mp, kp) = (m / d, k / d);
    let hb = hbar(m, h, k)?;
    let gamma = gamma_of(m, h, k)?;
    let (lam, ls) = lambda_pair(m, r, h, k)?;
    let tau_re = Rational::from((hb * d, k));
    let tau_im = Rational::from((d * d, m * k));
    let sigma_re = Rational::from((r * d, m * k)) + Rational::from((lam * hb * d, k));
    let sigma_im = Rational::from(&ls * &tau_im);
    Ok(FactorData {
        factor: *f,
        gcd: d,
        m_prime: mp,
        k_prime: kp,
        hbar: hb,
        gamma,
        lambda: lam,
        lambda_star: ls,
        tau_re,
        tau_im,
        sigma_re,
        sigma_im,
    })
}

fn delta_from(factors: &[FactorData], variant: DeltaVariant) -> Rational {
    let mut delta = Rational::new();
    for fd in factors {
        let (m, dl) = (fd.factor.m as i64, fd.factor.delta);
        let d2m = Rational::from((fd.gcd * fd.gcd, m));
        let mut term = Rational::from(&d2m * 2);
        if variant == DeltaVariant::Corrected {
            let ls = &fd.lambda_star;
            let quad = Rational::from(ls * ls) - ls;
            term += d2m * 12 * quad;
        }
        delta -= term * dl;
    }
    delta
}

/// Per-factor transformation data of `spec` on the arc `h/k`, without the
/// phase bookkeeping of [`transform_data`].
pub fn arc_factors(spec: &ProductSpec, h: i64, k: i64) -> Result<Vec<FactorData>> {
    check_arc(h, k)?;
    spec.factors().iter().map(|f| factor_data(f, h, k)).collect()
}

/// `Δ(h,k) = -∑ δ_j (2d_j²/m_j + 12 d_j²/m_j (λ*_j² - λ*_j))`.
pub fn delta_hk(spec: &ProductSpec, h: i64, k: i64, variant: DeltaVariant) -> Result<Rational> {
    let fds = spec
        .factors()
        .iter()
        .map(|f| factor_data(f, h, k))
        .collect::<Result<Vec<_>>>()?;
    Ok(delta_from(&fds, variant))
}

/// `Ω = ∑ δ_j (2m_j - 12r_j + 12r_j²/m_j)`.
pub fn omega_rational(spec: &ProductSpec) -> Rational {
    let mut om = Rational::new();
    for f in spec.factors() {
        let (r, m) = (f.r as i64, f.m as i64);
        om += (Rational::from(2 * m - 12 * r) + Rational::from((12 * r * r, m))) * f.delta;
    }
    om
}

/// Full transformation data of `spec` on the arc `h/k`.
///
/// Fails with a domain error if some factor with `λ* = 0` has an integral
/// shift `ς̃`, since then `Π_{h,k}` would contain a vanishing `1 - 1`.
pub fn transform_data(spec: &ProductSpec, h: i64, k: i64) -> Result<TransformData> {
    check_arc(h, k)?;
    let factors = spec
        .factors()
        .iter()
        .map(|f| factor_data(f, h, k))
        .collect::<Result<Vec<_>>>()?;

    let mut omega_t = Rational::new();
    let mut ups = Rational::new();
    let mut sum_delta = 0i64;
    let mut sum_delta_lambda = 0i64;
    let mut pi = Vec::new();
    for fd in &factors {
        let (r, m, dl) = (fd.factor.r as i64, fd.factor.m as i64, fd.factor.delta);
        let d = fd.gcd;
        let lam = fd.lambda;
        omega_t -= dedekind_sum(fd.m_prime * h, fd.k_prime)? * dl;

        let mut u = Rational::from((r * h, k)) - Rational::from((r * d, m * k));
        u += Rational::from((2 * r * d, m * k)) * &fd.lambda_star;
        u += Rational::from((fd.hbar * d * (lam * lam - lam), k));
        ups += u * dl;

        sum_delta += dl;
        sum_delta_lambda += dl * lam;

        if fd.lambda_star == 0 {
            let t = fd.sigma_re.clone();
            if *t.denom() == 1 {
                return domain(format!(
                    "shift of factor (r={r}, m={m}) is integral at h/k={h}/{k}"
                ));
            }
            let frac = &t - t.clone().floor() ;
            pi.push(RootFactor {
                t: frac,
                multiplicity: dl,
            });
        }
    }
    let omega = UnitPhase::new(omega_t);
    let upsilon = UnitPhase::new(ups);
    let mut pre = Rational::from((sum_delta, 2)) + sum_delta_lambda;
    pre += Rational::from(omega.exponent() * 2u32);
    pre += upsilon.exponent();
    Ok(TransformData {
        h,
        k,
        omega_exp: omega_rational(spec),
        delta: delta_from(&factors, DeltaVariant::Corrected),
        omega,
        upsilon,
        prefactor: UnitPhase::new(pre),
        pi,
        factors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::registered;

    #[test]
    fn gamma_examples() {
        assert_eq!(gamma_of(5, 1, 5).unwrap(), GammaMatrix::new(0, -1, 1, -1).unwrap());
        assert_eq!(hbar(5, 1, 2).unwrap(), 1);
        assert!(gamma_of(5, 2, 4).is_err());
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(lambda_pair(5, 2, 1, 5).unwrap(), (1, Rational::from((3, 5))));
        assert_eq!(lambda_pair(5, 2, 0, 1).unwrap(), (0, Rational::new()));
        assert_eq!(lambda_pair(5, 1, 2, 5).unwrap(), (1, Rational::from((3, 5))));
    }

    #[test]
    fn omega_values() {
        assert_eq!(omega_rational(&registered("A").unwrap()), -24);
        assert_eq!(omega_rational(&registered("B").unwrap()), 24);
        assert_eq!(omega_rational(&registered("D").unwrap()), 0);
    }

    #[test]
    fn a_deltas() {
        let a = registered("A").unwrap();
        for (h, want) in [(1, 24), (4, 24), (2, -24), (3, -24)] {
            assert_eq!(delta_hk(&a, h, 5, DeltaVariant::Corrected).unwrap(), want);
        }
        assert_eq!(delta_hk(&a, 1, 5, DeltaVariant::AsPrinted).unwrap(), 0);
    }

    #[test]
    fn a_pi_is_empty_at_one_fifth() {
        let td = transform_data(&registered("A").unwrap(), 1, 5).unwrap();
        assert!(td.pi.is_empty());
    }

    #[test]
    fn omega_phase_at_k1() {
        let td = transform_data(&registered("D").unwrap(), 0, 1).unwrap();
        assert_eq!(td.omega.exponent(), &Rational::new());
    }
}
