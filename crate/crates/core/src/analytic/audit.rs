use serde::Serialize;

use super::{Enclosure, Expr, Verdict};

/// A numeric inequality `lhs < rhs` between two constants, checked with
/// enclosures. `margin` is `ln(rhs) - ln(lhs)` (in nats), rounded down.
#[derive(Clone, Debug, Serialize)]
pub struct ConstantAudit {
    pub name: String,
    pub lhs: String,
    pub rhs: String,
    pub verdict: Verdict,
    pub margin_lo: String,
}

fn audit(name: &str, lhs: Expr, rhs: Expr, prec: u32) -> ConstantAudit {
    let l = lhs.eval(prec);
    let r = rhs.eval(prec);
    let margin = match (r.ln(), l.ln()) {
        (Ok(a), Ok(b)) => (&a - &b).lo_string(12),
        _ => "nan".into(),
    };
    ConstantAudit {
        name: name.into(),
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
        verdict: l.lt(&r),
        margin_lo: margin,
    }
}

/// The inequalities the A/B error constant rests on:
///
/// - `e^50 · 2^5 · |1 - e^{2πi/5}|^{-5} < e^54`, with `|1 - e^{2πi/5}| = 2 sin(π/5)`
/// - `10 e^{-π/5} / (1 - e^{-π/5})² < 25`
pub fn constant_audits(prec: u32) -> Vec<ConstantAudit> {
    let sin_pi5 = (Expr::ratio(3, 10) * Expr::Pi).cos(); // sin(π/5) = cos(3π/10)
    let chord = Expr::int(2) * sin_pi5;
    let first = Expr::int(50).exp() * Expr::int(32) / chord.pow(5, 1);
    let q = (Expr::ratio(-1, 5) * Expr::Pi).exp();
    let one_minus = Expr::int(1) + Expr::int(-1) * q.clone();
    let second = Expr::int(10) * q / one_minus.pow(2, 1);
    vec![
        audit("chord_power", first, Expr::int(54).exp(), prec),
        audit("geometric_tail", second, Expr::int(25), prec),
    ]
}

/// Enclosure of `|1 - e^{2πi t}| = 2|sin(πt)|`.
pub fn chord_length(t: &rug::Rational, prec: u32) -> Enclosure {
    let x = &Enclosure::from_rational(t, prec) * &Enclosure::pi(prec);
    (&Enclosure::from_i64(2, prec) * &x.sin()).abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_hold() {
        for a in constant_audits(192) {
            assert_eq!(a.verdict, Verdict::True, "{}", a.name);
        }
    }

    #[test]
    fn chord_power_margin() {
        let a = &constant_audits(192)[0];
        let m: f64 = a.margin_lo.parse().unwrap();
        assert!((m - 1.34).abs() < 0.01, "{m}");
    }
}
