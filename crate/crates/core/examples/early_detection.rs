//! Why rule removal states the remaining rules explicitly.
//!
//! A tool removes rules A and B with an order that only orients B strictly,
//! then removes C with a second order and concludes. Replaying the orders
//! without the stated intermediate systems blames the last step; checking the
//! stated remaining TRS blames the first.
//!
//! ```text
//! cargo run --example early_detection [-- --write DIR]
//! ```

use cpfcert::cert::{CertificationProblem, Input, Origin, ProofNode};
use cpfcert::check::{check, FuelConfig};
use cpfcert::cpf::serialize_certificate;
use cpfcert::orders::{order_compare, ArgVar, PolyInterpretation, Polynomial, ReductionOrder};
use cpfcert::term::{parse_rules, Trs};

fn interpretation(entries: &[(&str, u64)]) -> ReductionOrder {
    // every symbol is unary; [f](x1) = x1 + c
    let i = PolyInterpretation::new(entries.iter().map(|&(f, c)| {
        (f.to_string(), 1, &Polynomial::var(ArgVar(1)) + &Polynomial::constant(c))
    }))
    .unwrap();
    ReductionOrder::Poly(i)
}

fn trs(src: &str) -> Trs {
    Trs::new(parse_rules(src, &["x"]).unwrap()).unwrap()
}

fn removal(order: ReductionOrder, remaining: Trs, subproof: ProofNode) -> ProofNode {
    ProofNode::RuleRemoval { order, remaining, subproof: Box::new(subproof) }
}

fn certificate(proof: ProofNode) -> CertificationProblem {
    CertificationProblem {
        input: Input::Trs(trs("f(x) -> g(x)\nh(x) -> x\nk(x) -> x")),
        cpf_version: "2.1".into(),
        proof,
        origin: Origin { tool: Some("example".into()), version: None, notes: None },
    }
}

/// Replays each removal by deleting whatever the order orients strictly,
/// ignoring what the certificate claims.
fn naive_replay(cp: &CertificationProblem) -> String {
    let Input::Trs(trs) = &cp.input else { unreachable!() };
    let mut rules = trs.rules.clone();
    let mut node = &cp.proof;
    while let ProofNode::RuleRemoval { order, subproof, .. } = node {
        rules.retain(|r| !order_compare(order, &r.lhs, &r.rhs).unwrap().is_strict());
        node = subproof;
    }
    if rules.is_empty() {
        "no rules left".into()
    } else {
        let left: Vec<String> = rules.iter().map(|r| r.to_string()).collect();
        format!("error in the last step: rules left, namely {}", left.join(", "))
    }
}

fn main() {
    // orients only h(x) -> x strictly
    let first = interpretation(&[("f", 0), ("g", 0), ("h", 1), ("k", 0)]);
    // orients only k(x) -> x strictly
    let second = interpretation(&[("f", 0), ("g", 0), ("k", 1)]);
    let third = interpretation(&[("f", 1), ("g", 0)]);

    let buggy = certificate(removal(
        first.clone(),
        trs("k(x) -> x"),
        removal(second.clone(), Trs::empty(), ProofNode::RIsEmpty),
    ));
    let control = certificate(removal(
        first,
        trs("f(x) -> g(x)\nk(x) -> x"),
        removal(second, trs("f(x) -> g(x)"), removal(third, Trs::empty(), ProofNode::RIsEmpty)),
    ));

    println!("naive replay of the buggy proof: {}", naive_replay(&buggy));
    println!("buggy certificate:   {}", check(&buggy, FuelConfig::default()));
    println!("control certificate: {}", check(&control, FuelConfig::default()));

    let args: Vec<String> = std::env::args().collect();
    if let [_, flag, dir] = args.as_slice() {
        if flag == "--write" {
            let dir = std::path::Path::new(dir);
            std::fs::write(dir.join("abc_buggy.xml"), serialize_certificate(&buggy, true)).unwrap();
            std::fs::write(dir.join("abc_control.xml"), serialize_certificate(&control, true)).unwrap();
        }
    }
}
