//! Seeded residual runs for the transformation identities.
//!
//! cargo run --release --example identity_checks -- [samples] [seed]

use std::time::Instant;

use qsign::circle::{run_identity, Identity, DEFAULT_SEED};

fn main() -> qsign::Result<()> {
    let mut args = std::env::args().skip(1);
    let samples = args.next().map_or(100, |s| s.parse().expect("samples"));
    let seed = args.next().map_or(DEFAULT_SEED, |s| s.parse().expect("seed"));
    for id in Identity::ALL {
        let t = Instant::now();
        let r = run_identity(id, samples, seed, 192)?;
        println!(
            "{:<10} samples={} max_residual={:.3e} ({:.2?})",
            r.identity,
            r.samples,
            r.max_residual,
            t.elapsed()
        );
    }
    Ok(())
}
