//! Coefficients recovered by integrating over the Farey arcs, and the
//! single-arc Bessel estimate against its error bound.
//!
//! cargo run --release --example circle_method

use qsign::circle::{farey_arcs, arc_spotcheck, numeric_coefficient};
use qsign::qseries::{expand_product, registered};

fn main() -> qsign::Result<()> {
    for a in farey_arcs(3)? {
        println!("arc {}/{}: [-{}, {}]", a.h, a.k, a.theta_left, a.theta_right);
    }
    for name in ["A", "B"] {
        let spec = registered(name)?;
        let exact = expand_product(&spec, 30);
        for n in [0u64, 4, 7, 15, 30] {
            let est = numeric_coefficient(&spec, n, 5)?;
            println!("{name}({n:>2}) exact {:>12}  numeric {:>18.6}", exact.coeffs()[n as usize].to_string(), est.re);
        }
    }
    for (a, b) in [(24.0, -24.0), (24.0, 24.0), (24.0, 0.0)] {
        let r = arc_spotcheck(a, b, 5, 30, 13)?;
        println!("a={a} b={b}: |I - main| = {:.3e} <= {:.3e}: {}", r.error, r.bound, r.holds);
    }
    Ok(())
}
