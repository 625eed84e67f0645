//! I₋₁ enclosures, the e^x/√x sandwich, the numeric constant audits and
//! the coloured-partition majorant.
//!
//! cargo run --example bessel_bounds

use qsign::analytic::{
    bessel_im1, colored_partition_majorant, constant_audits, majorization_check, wang_bounds,
    Enclosure,
};

fn main() -> qsign::Result<()> {
    for x in [3.0, 10.0, 100.0] {
        let xe = Enclosure::from_f64(x, 192);
        let i = bessel_im1(&xe, 192)?;
        let (lo, hi) = wang_bounds(&xe)?;
        println!("I_-1({x}) = {}  in ({}, {})", i, lo.to_f64(), hi.to_f64());
    }
    for a in constant_audits(192) {
        println!("{}: {} < {} -> {} (margin {})", a.name, a.lhs, a.rhs, a.verdict, a.margin_lo);
    }
    let half = Enclosure::from_f64(0.5, 128);
    println!("majorization at 1/2: {}", majorization_check(&half, &half, &half)?);
    let (p, d) = colored_partition_majorant(2, 1, 1, 6)?;
    println!("p*_2(1,1;6) = {p}, d*_2(1,1;6) = {d}");
    Ok(())
}
