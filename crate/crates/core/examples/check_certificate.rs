//! Reads certificates from disk and checks them with the library API.
//!
//! ```text
//! cargo run --example check_certificate -- corpus/*.xml
//! ```

use cpfcert::check::{check, FuelConfig};
use cpfcert::cpf::parse_certificate;

fn main() {
    let files: Vec<String> = std::env::args().skip(1).collect();
    if files.is_empty() {
        eprintln!("usage: check_certificate FILE...");
        std::process::exit(2);
    }
    for f in files {
        let bytes = std::fs::read(&f).unwrap_or_else(|e| panic!("{f}: {e}"));
        match parse_certificate(&bytes) {
            Ok(cp) => println!("{f}: {}", check(&cp, FuelConfig::default())),
            Err(e) => println!("{f}: malformed: {e}"),
        }
    }
}
