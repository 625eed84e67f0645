//! Certified |M(n)| > E(n) at one index, then for a whole residue class.
//!
//! cargo run --release --example dominance -- A 805

use qsign::analytic::{dominance, eventual_dominance_certificate, FamilyModel, DEFAULT_PRECISION, PRECISION_CAP};

fn main() -> qsign::Result<()> {
    let mut args = std::env::args().skip(1);
    let family = args.next().unwrap_or_else(|| "A".into());
    let n: u64 = args.next().map_or(805, |s| s.parse().expect("index"));
    let model = FamilyModel::by_name(&family)?;
    println!("{model}");

    let rep = dominance(&model, n, DEFAULT_PRECISION, PRECISION_CAP)?;
    println!("n={n}: M in [{}, {}], E <= {} -> {}", rep.main_lo, rep.main_hi, rep.bound_hi, rep.verdict);

    for residue in 0..5 {
        match eventual_dominance_certificate(&model, residue, n, DEFAULT_PRECISION, PRECISION_CAP) {
            Ok(c) => println!("  residue {residue}: {} ({} bits)", c.verdict, c.precision_bits),
            Err(e) => println!("  residue {residue}: {e}"),
        }
    }
    Ok(())
}
