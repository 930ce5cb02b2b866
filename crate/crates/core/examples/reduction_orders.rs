//! Comparing terms with the Knuth-Bendix order and with polynomial
//! interpretations.
//!
//! ```text
//! cargo run --example reduction_orders
//! ```

use std::collections::BTreeMap;

use cpfcert::orders::{
    absorb, difference, kbo_compare, poly_compare, KboParams, Monomial, Polynomial, Precedence, SymbolWeight,
};
use cpfcert::term::parse_term;

fn main() {
    let sw = |name: &str, arity, weight| SymbolWeight { name: name.into(), arity, weight };
    let prec = Precedence::new(vec![("inv".into(), "•".into()), ("•".into(), "e".into())]).unwrap();
    let kbo = KboParams::new(1, vec![sw("e", 0, 1), sw("•", 2, 0), sw("inv", 1, 0)], prec).unwrap();
    let v = &["x", "y", "z"];
    for (s, t) in [
        ("•(•(x, y), z)", "•(x, •(y, z))"),
        ("inv(•(y, x))", "•(inv(x), inv(y))"),
        ("inv(inv(x))", "x"),
        ("•(x, y)", "•(y, x)"),
    ] {
        let (s, t) = (parse_term(s, v).unwrap(), parse_term(t, v).unwrap());
        println!("KBO: {s} vs {t}: {}", kbo_compare(&kbo, &s, &t));
    }

    // A constant weight of 0 is not admissible when w0 = 1.
    let err = KboParams::new(1, vec![sw("e", 0, 0)], Precedence::default()).unwrap_err();
    println!("rejected parameters: {err}");

    let x = || Polynomial::var("x".to_string());
    let x2_plus_1 = &x().pow(2) + &Polynomial::constant(1u32);
    println!("poly: {x2_plus_1} vs x: {}", poly_compare(&x2_plus_1, &x()));
    println!("poly: x vs x: {}", poly_compare(&x(), &x()));

    // The strict check subtracts 1 and lets x^2 pay for the deficit at x.
    let diff: BTreeMap<Monomial<String>, _> = difference(&x2_plus_1, &x(), 1);
    let a = absorb(&diff);
    for m in &a.moves {
        println!("  {} of x^{} covers x^{}", m.amount, m.donor.degree(), m.deficit.degree());
    }
}
