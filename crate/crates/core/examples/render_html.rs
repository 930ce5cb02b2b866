//! Renders a certificate as HTML and prints its section outline.
//!
//! ```text
//! cargo run --example render_html -- corpus/group.proof.xml group.html
//! ```

use cpfcert::cpf::parse_certificate;
use cpfcert::render::{outline, render_html};

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let input = args.get(1).map(String::as_str).unwrap_or(concat!(env!("CARGO_MANIFEST_DIR"), "/corpus/group.proof.xml"));
    let cp = parse_certificate(&std::fs::read(input).unwrap()).unwrap();
    let html = render_html(&cp);
    for head in outline(&html) {
        println!("{head}");
    }
    if let Some(out) = args.get(2) {
        std::fs::write(out, html).unwrap();
    }
}
