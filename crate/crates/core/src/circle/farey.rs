use rug::Rational;
use serde::Serialize;

use crate::error::{usage, Result};

/// The arc `h/k + [-θ′, θ″]` of the Farey dissection of order `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FareyArc {
    pub h: i64,
    pub k: i64,
    #[serde(serialize_with = "as_string")]
    pub theta_left: Rational,
    #[serde(serialize_with = "as_string")]
    pub theta_right: Rational,
    pub order: i64,
}

fn as_string<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

impl FareyArc {
    pub fn center(&self) -> Rational {
        Rational::from((self.h, self.k))
    }

    pub fn length(&self) -> Rational {
        Rational::from(&self.theta_left + &self.theta_right)
    }

    /// `ρ = 1/N²`
    pub fn rho(&self) -> Rational {
        Rational::from((1, self.order * self.order))
    }

    /// `Re(1/z)` at `z = k(ρ - iφ)`, i.e. `ρ / (k(ρ² + φ²))`.
    pub fn re_inv_z(&self, phi: &Rational) -> Rational {
        let rho = self.rho();
        let den = (Rational::from(&rho * &rho) + Rational::from(phi * phi)) * self.k;
        rho / den
    }

    /// Checks `Re(1/z) ≥ k/2` at `samples + 1` evenly spaced points of the arc,
    /// endpoints included.
    pub fn re_inv_z_bound_holds(&self, samples: u32) -> bool {
        let half_k = Rational::from((self.k, 2));
        let len = self.length();
        (0..=samples.max(1)).all(|i| {
            let phi = (&len * Rational::from((i, samples.max(1)))) - &self.theta_left;
            self.re_inv_z(&phi) >= half_k
        })
    }
}

/// Farey fractions of order `n` in `[0, 1]`, in increasing order.
fn farey_sequence(n: i64) -> Vec<(i64, i64)> {
    let mut out = vec![(0, 1)];
    let (mut a, mut b, mut c, mut d) = (0, 1, 1, n);
    while c <= n {
        out.push((c, d));
        let t = (n + b) / d;
        (a, b, c, d) = (c, d, t * c - a, t * d - b);
    }
    out
}

/// The Farey dissection of order `n`: one arc per `h/k ∈ [0,1)` with
/// `k ≤ n`, bounded by the mediants with its neighbours (taken cyclically).
pub fn farey_arcs(n: i64) -> Result<Vec<FareyArc>> {
    if n < 1 {
        return usage(format!("Farey order must be >= 1, got {n}"));
    }
    let seq = farey_sequence(n);
    // drop the closing 1/1; neighbours wrap around the circle
    let body = &seq[..seq.len() - 1];
    let len = body.len();
    let mut arcs = Vec::with_capacity(len);
    for (i, &(h, k)) in body.iter().enumerate() {
        let prev_k = if i == 0 { body[len - 1].1 } else { body[i - 1].1 };
        let next_k = seq[i + 1].1;
        arcs.push(FareyArc {
            h,
            k,
            theta_left: Rational::from((1, k * (k + prev_k))),
            theta_right: Rational::from((1, k * (k + next_k))),
            order: n,
        });
    }
    Ok(arcs)
}
