//! Both Rogers-Ramanujan identities, sum side against product side.
//!
//! cargo run --release --example rogers_ramanujan -- 500

use qsign::qseries::{expand_product, rr_sum_side, ProductSpec, PsiFactor, RrVariant};

fn main() -> qsign::Result<()> {
    let n: usize = std::env::args().nth(1).map_or(500, |s| s.parse().expect("order"));
    // G = 1/(q, q^4; q^5), H = 1/(q^2, q^3; q^5)
    let g = ProductSpec::new(vec![PsiFactor { r: 1, m: 5, delta: -1 }])?;
    let h = ProductSpec::new(vec![PsiFactor { r: 2, m: 5, delta: -1 }])?;
    for (label, variant, spec) in [("G", RrVariant::G, g), ("H", RrVariant::H, h)] {
        let sum = rr_sum_side(variant, n);
        let prod = expand_product(&spec, n);
        println!("{label}: agree to q^{n}: {}", sum == prod);
        println!("   {:?}", sum.coeffs()[..12.min(n + 1)].iter().map(|c| c.to_string()).collect::<Vec<_>>());
    }
    Ok(())
}
