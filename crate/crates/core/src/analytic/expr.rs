use std::fmt;
use std::ops::{Add, Div, Mul};

use rug::Rational;

use super::Enclosure;

/// Symbolic real constant, enclosed only when evaluated. Used to keep the
/// error-bound constants in the same shape as their written form.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Rat(Rational),
    Pi,
    Exp(Box<Expr>),
    Cos(Box<Expr>),
    Sqrt(Box<Expr>),
    /// `base^exponent` for a positive base.
    Pow(Box<Expr>, Rational),
    Sum(Vec<Expr>),
    Prod(Vec<Expr>),
    Quot(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn int(v: i64) -> Expr {
        Expr::Rat(Rational::from(v))
    }

    pub fn ratio(n: i64, d: i64) -> Expr {
        Expr::Rat(Rational::from((n, d)))
    }

    pub fn exp(self) -> Expr {
        Expr::Exp(Box::new(self))
    }

    pub fn cos(self) -> Expr {
        Expr::Cos(Box::new(self))
    }

    pub fn sqrt(self) -> Expr {
        Expr::Sqrt(Box::new(self))
    }

    pub fn pow(self, n: i64, d: i64) -> Expr {
        Expr::Pow(Box::new(self), Rational::from((n, d)))
    }

    /// Outward-rounded enclosure at `prec` bits.
    ///
    /// # Panics
    /// If a square root, power or logarithm is applied to an argument whose
    /// enclosure reaches zero or below; constants are built so this cannot
    /// happen.
    pub fn eval(&self, prec: u32) -> Enclosure {
        match self {
            Expr::Rat(r) => Enclosure::from_rational(r, prec),
            Expr::Pi => Enclosure::pi(prec),
            Expr::Exp(e) => e.eval(prec).exp(),
            Expr::Cos(e) => e.eval(prec).cos(),
            Expr::Sqrt(e) => e.eval(prec).sqrt().expect("sqrt of a nonnegative constant"),
            Expr::Pow(b, p) => b
                .eval(prec)
                .pow_rational(p)
                .expect("power of a positive constant"),
            Expr::Sum(v) => v
                .iter()
                .fold(Enclosure::zero(prec), |acc, e| acc + e.eval(prec)),
            Expr::Prod(v) => v
                .iter()
                .fold(Enclosure::from_i64(1, prec), |acc, e| acc * e.eval(prec)),
            Expr::Quot(a, b) => a.eval(prec) / b.eval(prec),
        }
    }
}

impl Add for Expr {
    type Output = Expr;
    fn add(self, o: Expr) -> Expr {
        match self {
            Expr::Sum(mut v) => {
                v.push(o);
                Expr::Sum(v)
            }
            s => Expr::Sum(vec![s, o]),
        }
    }
}

impl Mul for Expr {
    type Output = Expr;
    fn mul(self, o: Expr) -> Expr {
        match self {
            Expr::Prod(mut v) => {
                v.push(o);
                Expr::Prod(v)
            }
            s => Expr::Prod(vec![s, o]),
        }
    }
}

impl Div for Expr {
    type Output = Expr;
    fn div(self, o: Expr) -> Expr {
        Expr::Quot(Box::new(self), Box::new(o))
    }
}

fn paren(e: &Expr) -> String {
    match e {
        Expr::Sum(_) | Expr::Quot(..) => format!("({e})"),
        Expr::Rat(r) if *r.denom() != 1 || *r < 0 => format!("({e})"),
        _ => e.to_string(),
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Rat(r) => write!(f, "{r}"),
            Expr::Pi => write!(f, "pi"),
            Expr::Exp(e) => write!(f, "exp({e})"),
            Expr::Cos(e) => write!(f, "cos({e})"),
            Expr::Sqrt(e) => write!(f, "sqrt({e})"),
            Expr::Pow(b, p) => write!(f, "{}^({p})", paren(b)),
            Expr::Sum(v) => {
                let parts: Vec<String> = v.iter().map(|e| e.to_string()).collect();
                write!(f, "{}", parts.join(" + "))
            }
            Expr::Prod(v) => {
                let parts: Vec<String> = v.iter().map(paren).collect();
                write!(f, "{}", parts.join("*"))
            }
            Expr::Quot(a, b) => write!(f, "{}/{}", paren(a), paren(b)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_value() {
        let e = Expr::int(2) * Expr::int(54).exp() + (Expr::int(8) * Expr::Pi).exp() + Expr::int(185);
        assert_eq!(e.to_string(), "2*exp(54) + exp(8*pi) + 185");
        let v = e.eval(128);
        let f = 2.0 * 54f64.exp() + (8.0 * std::f64::consts::PI).exp() + 185.0;
        assert!((v.to_f64() / f - 1.0).abs() < 1e-14);
    }

    #[test]
    fn fractional_power() {
        let v = Expr::Pi.pow(5, 4).eval(128);
        let f = std::f64::consts::PI.powf(1.25);
        assert!((v.to_f64() - f).abs() < 1e-14);
    }
}
