//! Dedekind sums and the eta multiplier.
//!
//! cargo run --example dedekind -- 5 13

use qsign::modular::{dedekind_sum, GammaMatrix};
use qsign::Rational;

fn main() -> qsign::Result<()> {
    let mut args = std::env::args().skip(1);
    let d: i64 = args.next().map_or(5, |s| s.parse().expect("d"));
    let c: i64 = args.next().map_or(13, |s| s.parse().expect("c"));
    let s = dedekind_sum(d, c)?;
    let t = dedekind_sum(c, d)?;
    println!("s({d},{c}) = {s}");
    println!("s({c},{d}) = {t}");
    // reciprocity: s(d,c) + s(c,d) = (d/c + c/d + 1/(cd))/12 - 1/4
    let rhs = (Rational::from((d, c)) + Rational::from((c, d)) + Rational::from((1, c * d))) / 12
        - Rational::from((1, 4));
    println!("reciprocity: {} = {}", Rational::from(&s + &t), rhs);

    let inv = GammaMatrix::new(0, -1, 1, 0)?;
    println!("chi(0,-1;1,0) = {}", inv.eta_multiplier());
    Ok(())
}
