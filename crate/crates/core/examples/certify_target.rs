//! Certifies one sign statement and prints the certificate.
//!
//! cargo run --release --example certify_target -- D5n1

use std::time::Instant;

use qsign::certifier::{certify, Target};

fn main() -> qsign::Result<()> {
    let target: Target = std::env::args().nth(1).unwrap_or_else(|| "A5n".into()).parse()?;
    let t = Instant::now();
    let cert = certify(target)?;
    println!("{}", cert.to_json());
    eprintln!("{target}: {:?} in {:.2?}", cert.status(), t.elapsed());
    std::process::exit(cert.status().exit_code());
}
