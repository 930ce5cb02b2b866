//! Nontermination by a loop: `f(x) → f(s(x))` rewrites `f(x)` to an instance
//! of itself.
//!
//! ```text
//! cargo run --example loop_witness [-- --write DIR]
//! ```

use cpfcert::cert::{CertificationProblem, Input, LoopStep, LoopWitness, Origin, ProofNode};
use cpfcert::check::{check, replay_loop, FuelConfig};
use cpfcert::cpf::serialize_certificate;
use cpfcert::term::{parse_rules, parse_term, Position, Substitution, Trs};

fn main() {
    let v = &["x"];
    let trs = Trs::new(parse_rules("f(x) -> f(s(x))", v).unwrap()).unwrap();
    let mut sigma = Substitution::new();
    sigma.insert("x", parse_term("s(x)", v).unwrap());
    let witness = LoopWitness {
        start: parse_term("f(x)", v).unwrap(),
        steps: vec![LoopStep {
            rule: 0,
            position: Position::root(),
            substitution: Substitution::new(),
            reduct: Some(parse_term("f(s(x))", v).unwrap()),
        }],
        context: Position::root(),
        substitution: sigma,
    };
    println!("loop ends in {}", replay_loop(&trs, &witness).unwrap());

    let cp = CertificationProblem {
        input: Input::Trs(trs.clone()),
        cpf_version: "2.1".into(),
        proof: ProofNode::Loop(witness.clone()),
        origin: Origin::default(),
    };
    println!("{}", check(&cp, FuelConfig::default()));

    // The same witness with the wrong closing substitution.
    let mut wrong = cp.clone();
    if let ProofNode::Loop(w) = &mut wrong.proof {
        w.substitution = Substitution::new();
    }
    println!("{}", check(&wrong, FuelConfig::default()));

    let args: Vec<String> = std::env::args().collect();
    if let [_, flag, dir] = args.as_slice() {
        if flag == "--write" {
            std::fs::write(std::path::Path::new(dir).join("loop.xml"), serialize_certificate(&cp, true)).unwrap();
        }
    }
}
