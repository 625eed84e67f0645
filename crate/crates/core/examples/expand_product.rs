//! Expands a registered product and prints a few coefficients.
//!
//! cargo run --release --example expand_product -- D 19501

use std::time::Instant;

use qsign::qseries::{expand_product, registered};

fn main() -> qsign::Result<()> {
    let mut args = std::env::args().skip(1);
    let name = args.next().unwrap_or_else(|| "A".to_string());
    let n: usize = args.next().map_or(Ok(200), |s| s.parse()).expect("truncation must be an integer");

    let spec = registered(&name)?;
    let start = Instant::now();
    let s = expand_product(&spec, n);
    let elapsed = start.elapsed();

    for i in 0..=n.min(10) {
        println!("{name}({i}) = {}", s.coeff(i).unwrap());
    }
    let last = s.coeff(n).unwrap();
    println!("{name}({n}) has {} digits", last.to_string().trim_start_matches('-').len());
    eprintln!("expanded to order {n} in {elapsed:.2?}");
    Ok(())
}
