//! Exact modular bookkeeping for ψ-products: sawtooth and Dedekind sums,
//! `ħ`, the matrices γ, λ and λ*, the exponents Ω and Δ, the classes with
//! Δ > 0, and the unit phases ω, Υ, Π of the product transformation.
//!
//! Everything here is exact rational arithmetic; phases stay rational
//! exponents until the analytic layer turns them into enclosures.

mod dedekind;
mod table;
mod transform;

pub use dedekind::{dedekind_sum, sawtooth};
pub use table::{
    class_representative, delta_of, delta_table, lpos_set, write_delta_csv, DeltaRow,
};
pub use transform::{
    arc_factors, delta_hk, gamma_of, hbar, lambda_pair, omega_rational, transform_data, DeltaVariant,
    FactorData, GammaMatrix, RootFactor, TransformData,
};

pub(crate) use transform::{gcd as gcd_i64, solve_det};

use std::fmt;

use rug::Rational;

use crate::qseries::ProductSpec;

/// The complex number `e^{πi t}`, with `t` kept reduced to `[0, 2)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UnitPhase {
    t: Rational,
}

impl UnitPhase {
    pub fn new(t: Rational) -> Self {
        let half = Rational::from(&t / 2u32);
        let t = t - half.floor() * 2u32;
        UnitPhase { t }
    }

    pub fn one() -> Self {
        UnitPhase { t: Rational::new() }
    }

    /// The exponent `t` in `e^{πi t}`, in `[0, 2)`.
    pub fn exponent(&self) -> &Rational {
        &self.t
    }

    pub fn mul(&self, other: &UnitPhase) -> UnitPhase {
        UnitPhase::new(Rational::from(&self.t + &other.t))
    }

    pub fn pow(&self, e: i64) -> UnitPhase {
        UnitPhase::new(Rational::from(&self.t * e))
    }

    pub fn conj(&self) -> UnitPhase {
        UnitPhase::new(Rational::from(-&self.t))
    }

    pub fn is_one(&self) -> bool {
        self.t == 0
    }
}

impl fmt::Display for UnitPhase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "exp(pi*i*{})", self.t)
    }
}

/// Ω of a spec, with a flag for whether it came out integral.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Omega {
    pub value: Rational,
    pub integral: bool,
}

impl Omega {
    pub fn as_i64(&self) -> Option<i64> {
        if self.integral {
            self.value.numer().to_i64()
        } else {
            None
        }
    }
}

/// `Ω = ∑ δ_j (2m_j - 12r_j + 12r_j²/m_j)`. Every registered spec gives an
/// integer; other specs may not, and the flag says so.
pub fn omega_of(spec: &ProductSpec) -> Omega {
    let value = omega_rational(spec);
    let integral = *value.denom() == 1;
    Omega { value, integral }
}

/// ω, Υ and the root factors of Π on the arc `h/k`.
pub fn phase_data(
    spec: &ProductSpec,
    h: i64,
    k: i64,
) -> crate::Result<(UnitPhase, UnitPhase, Vec<RootFactor>)> {
    let td = transform_data(spec, h, k)?;
    Ok((td.omega, td.upsilon, td.pi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_phase_reduces_mod_two() {
        let p = UnitPhase::new(Rational::from((-1, 3)));
        assert_eq!(p.exponent(), &Rational::from((5, 3)));
        assert!(UnitPhase::new(Rational::from(4)).is_one());
        assert!(p.mul(&p.conj()).is_one());
        assert!(p.pow(6).is_one());
    }
}
