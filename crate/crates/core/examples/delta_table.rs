//! Ω and the Δ(ℵ, l) classes of a product, with the Δ > 0 set marked.
//!
//! cargo run --release --example delta_table -- D

use qsign::modular::{delta_table, lpos_set, omega_of, transform_data};
use qsign::qseries::registered;

fn main() -> qsign::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "A".into());
    let spec = registered(&name)?;
    println!("{name}: level {}, omega {}", spec.level(), omega_of(&spec).value);
    for row in delta_table(&spec)?.iter().filter(|r| r.delta != 0) {
        println!(
            "  (aleph={:>2}, l={:>2})  rep {}/{}  delta {:>4}  printed {:>4}{}",
            row.aleph,
            row.l,
            row.h,
            row.k,
            row.delta.to_string(),
            row.delta_as_printed.to_string(),
            if row.in_lpos { "  *" } else { "" }
        );
    }
    println!("Lpos = {:?}", lpos_set(&spec)?);

    // phases on one arc
    let td = transform_data(&spec, 1, 5)?;
    println!("at 1/5: omega {}  upsilon {}  prefactor {}", td.omega, td.upsilon, td.prefactor);
    for f in &td.factors {
        println!(
            "  r={} m={}  tau~ = {} + ({})i/z  sigma~ = {} + ({})i/z",
            f.factor.r, f.factor.m, f.tau_re, f.tau_im, f.sigma_re, f.sigma_im
        );
    }
    Ok(())
}
