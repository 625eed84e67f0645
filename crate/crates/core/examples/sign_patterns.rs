//! Proved patterns of A, B, C, D and the eventual patterns of c, d.
//!
//! cargo run --release --example sign_patterns

use qsign::certifier::{richmond_szekeres_scan, verify_known_theorems};

fn main() -> qsign::Result<()> {
    for t in verify_known_theorems(800)? {
        println!("{}: all residues hold on [{}, {}]", t.spec, t.lo, t.hi);
    }
    for t in richmond_szekeres_scan(2000)? {
        println!(
            "{}: exceptions {:?}, pattern holds from {} to {}",
            t.spec,
            t.exceptions,
            t.cutoff.unwrap_or(0),
            t.hi
        );
    }
    Ok(())
}
