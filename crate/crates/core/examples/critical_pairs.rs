//! Critical pairs of the completed group rules and their normal forms.
//!
//! ```text
//! cargo run --example critical_pairs
//! ```

use cpfcert::term::{critical_pairs, normal_form, parse_rules, Trs};

fn main() {
    let trs = Trs::new(
        parse_rules(
            "•(•(x, y), z) -> •(x, •(y, z))
             •(e, x) -> x
             •(inv(x), x) -> e
             •(inv(x), •(x, z)) -> •(e, z)
             inv(e) -> e
             •(x, e) -> x
             inv(inv(x)) -> x
             •(x, inv(x)) -> e
             •(x, •(inv(x), z)) -> z
             inv(•(y, x)) -> •(inv(x), inv(y))",
            &["x", "y", "z"],
        )
        .unwrap(),
    )
    .unwrap();
    let cps = critical_pairs(&trs);
    println!("{} critical pairs", cps.len());
    for cp in &cps {
        let l = normal_form(&trs, &cp.left, 10_000).unwrap();
        let r = normal_form(&trs, &cp.right, 10_000).unwrap();
        let mark = if l == r { "joins at" } else { "DIVERGES:" };
        println!(
            "rules {} / {} at {}: {} ← {} → {}  {mark} {l}",
            cp.outer, cp.inner, cp.position, cp.left, cp.peak, cp.right
        );
    }
}
