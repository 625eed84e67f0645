use serde::{Deserialize, Serialize};

use super::QSeries;
use crate::error::{usage, Error, Result};

/// `(q^offset; q^modulus)_∞^exponent`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PochhammerFactor {
    pub offset: u64,
    pub modulus: u64,
    pub exponent: i64,
}

impl PochhammerFactor {
    pub fn new(offset: u64, modulus: u64, exponent: i64) -> Result<Self> {
        if offset == 0 || modulus == 0 || offset > modulus {
            return usage(format!(
                "Pochhammer factor needs 1 <= a <= m, got a={offset}, m={modulus}"
            ));
        }
        if exponent == 0 {
            return usage("Pochhammer exponent must be nonzero");
        }
        Ok(PochhammerFactor {
            offset,
            modulus,
            exponent,
        })
    }
}

/// One factor `ψ(rτ; mτ)^δ = (q^r, q^{m-r}; q^m)_∞^δ` of a product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PsiFactor {
    pub r: u64,
    pub m: u64,
    pub delta: i64,
}

/// A finite product of ψ-factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProductSpec {
    factors: Vec<PsiFactor>,
}

/// Names accepted by [`registered`].
pub const REGISTERED_NAMES: [&str; 6] = ["A", "B", "C", "D", "c", "d"];

const fn psi(r: u64, m: u64, delta: i64) -> PsiFactor {
    PsiFactor { r, m, delta }
}

/// The products studied here, by name:
///
/// | name | product |
/// |------|---------|
/// | `A`  | `1/R(q)^5 = ψ(2τ;5τ)^5 ψ(τ;5τ)^{-5}` |
/// | `B`  | `R(q)^5` |
/// | `C`  | `R(q)^5 / R(q^5)` |
/// | `D`  | `R(q^5) / R(q)^5` |
/// | `c`  | `1/R(q)` |
/// | `d`  | `R(q)` |
///
/// where `R(q) = (q, q^4; q^5)_∞ / (q^2, q^3; q^5)_∞`.
pub fn registered(name: &str) -> Result<ProductSpec> {
    let factors = match name {
        "A" => vec![psi(2, 5, 5), psi(1, 5, -5)],
        "B" => vec![psi(2, 5, -5), psi(1, 5, 5)],
        "C" => vec![psi(2, 5, -5), psi(1, 5, 5), psi(5, 25, -1), psi(10, 25, 1)],
        "D" => vec![psi(2, 5, 5), psi(1, 5, -5), psi(5, 25, 1), psi(10, 25, -1)],
        "c" => vec![psi(2, 5, 1), psi(1, 5, -1)],
        "d" => vec![psi(2, 5, -1), psi(1, 5, 1)],
        _ => {
            return Err(Error::UnknownSpec {
                name: name.to_string(),
                registered: REGISTERED_NAMES.join(", "),
            })
        }
    };
    ProductSpec::new(factors)
}

impl ProductSpec {
    pub fn new(factors: Vec<PsiFactor>) -> Result<Self> {
        if factors.is_empty() {
            return usage("a product spec needs at least one factor");
        }
        for f in &factors {
            if f.r == 0 || f.r >= f.m {
                return usage(format!("factor needs 1 <= r < m, got r={}, m={}", f.r, f.m));
            }
            if f.delta == 0 {
                return usage("factor exponent delta must be nonzero");
            }
        }
        Ok(ProductSpec { factors })
    }

    /// Parses the JSON literal form `[{"r":2,"m":5,"delta":5}, ...]`.
    pub fn from_json(text: &str) -> Result<Self> {
        let factors: Vec<PsiFactor> = serde_json::from_str(text)?;
        Self::new(factors)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.factors).expect("factors serialize")
    }

    pub fn factors(&self) -> &[PsiFactor] {
        &self.factors
    }

    /// `L = lcm(m_1, ..., m_J)`.
    pub fn level(&self) -> u64 {
        self.factors.iter().fold(1, |acc, f| lcm(acc, f.m))
    }

    /// The same product with every exponent negated (the reciprocal series).
    pub fn negated(&self) -> ProductSpec {
        ProductSpec {
            factors: self
                .factors
                .iter()
                .map(|f| PsiFactor {
                    delta: -f.delta,
                    ..*f
                })
                .collect(),
        }
    }

    /// The 2J Pochhammer symbols `(q^r; q^m)^δ` and `(q^{m-r}; q^m)^δ`.
    pub fn pochhammer_factors(&self) -> Vec<PochhammerFactor> {
        self.factors
            .iter()
            .flat_map(|f| {
                [
                    PochhammerFactor {
                        offset: f.r,
                        modulus: f.m,
                        exponent: f.delta,
                    },
                    PochhammerFactor {
                        offset: f.m - f.r,
                        modulus: f.m,
                        exponent: f.delta,
                    },
                ]
            })
            .collect()
    }

    /// Net exponent `a_e` of `(1 - q^e)` in the product, for `e = 0..=n`
    /// (index 0 is unused and always 0).
    pub fn net_exponents(&self, n: usize) -> Vec<i64> {
        let mut a = vec![0i64; n + 1];
        for p in self.pochhammer_factors() {
            let mut e = p.offset as usize;
            while e <= n {
                a[e] += p.exponent;
                e += p.modulus as usize;
            }
        }
        a
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// `∏_{k≥0} (1 - q^{a+km})` truncated at order `n`.
pub fn expand_pochhammer(a: u64, m: u64, n: usize) -> Result<QSeries> {
    if a == 0 || m == 0 {
        return usage(format!("expand_pochhammer needs a >= 1 and m >= 1, got a={a}, m={m}"));
    }
    let mut s = QSeries::one(n);
    let mut e = a as usize;
    while e <= n {
        s.mul_one_minus_q_pow(e);
        e += m as usize;
    }
    Ok(s)
}

/// Exact expansion of `∏_j (q^{r_j}, q^{m_j-r_j}; q^{m_j})_∞^{δ_j}` to order `n`.
///
/// Factors are merged into net exponents of `(1 - q^e)` and applied in
/// increasing `e`, multiplying in place for positive exponents and dividing
/// in place for negative ones, so the result does not depend on how the
/// spec lists its factors.
pub fn expand_product(spec: &ProductSpec, n: usize) -> QSeries {
    let exps = spec.net_exponents(n);
    let mut s = QSeries::one(n);
    for (e, &a) in exps.iter().enumerate().skip(1) {
        for _ in 0..a.unsigned_abs() {
            if a > 0 {
                s.mul_one_minus_q_pow(e);
            } else {
                s.div_one_minus_q_pow(e);
            }
        }
    }
    s
}
