//! Builds the completion certificate for the group axioms, checks it, and
//! prints it as XML.
//!
//! ```text
//! cargo run --example group_certificate > corpus/group.proof.xml
//! ```

use cpfcert::build::{EquivalenceBuilder, StepSpec};
use cpfcert::cert::{CertificationProblem, Direction, Input, Origin, ProofNode, Reference};
use cpfcert::check::{check, FuelConfig};
use cpfcert::cpf::serialize_certificate;
use cpfcert::orders::{KboParams, Precedence, ReductionOrder, SymbolWeight};
use cpfcert::term::{parse_equations, parse_rule, parse_rules, parse_term, EquationalSystem, Term, Trs};

const V: &[&str] = &["x", "y", "z"];

fn t(s: &str) -> Term {
    parse_term(s, V).unwrap()
}

fn main() {
    let equations = EquationalSystem::new(
        parse_equations(
            "•(•(x, y), z) = •(x, •(y, z))
             •(e, x) = x
             •(inv(x), x) = e",
            V,
        )
        .unwrap(),
    )
    .unwrap();
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
            V,
        )
        .unwrap(),
    )
    .unwrap();

    // Weights and precedence as found by the exhaustive search in the test suite.
    let sw = |name: &str, arity, weight| SymbolWeight { name: name.into(), arity, weight };
    let precedence = Precedence::new(vec![("inv".into(), "•".into()), ("•".into(), "e".into())]).unwrap();
    let kbo = KboParams::new(1, vec![sw("e", 0, 1), sw("•", 2, 0), sw("inv", 1, 0)], precedence).unwrap();

    let equivalence = derivations(&equations);
    let proof = ProofNode::Completion {
        wcr: Box::new(ProofNode::CriticalPairsJoinable { fuel: None }),
        termination: Box::new(ProofNode::RuleRemoval {
            order: ReductionOrder::Kbo(kbo),
            remaining: Trs::empty(),
            subproof: Box::new(ProofNode::RIsEmpty),
        }),
        equivalence: Box::new(ProofNode::Equivalence(equivalence)),
    };
    let cp = CertificationProblem {
        input: Input::Completion { equations, trs },
        cpf_version: "2.1".into(),
        proof,
        origin: Origin { tool: Some("kbcv".into()), version: Some("1.7".into()), notes: None },
    };

    let verdict = check(&cp, FuelConfig::default());
    eprintln!("{verdict}");
    assert!(verdict.is_certified());
    print!("{}", serialize_certificate(&cp, true));
}

/// Every rule of R (plus three helper lemmas) from the axioms.
fn derivations(e: &EquationalSystem) -> cpfcert::cert::EquivalenceProof {
    use Direction::{LeftToRight as L, RightToLeft as R};
    let eq = Reference::Equation;
    let d = Reference::Derived;
    let step = |r, dir, pos: &[usize]| StepSpec::new(r, dir, pos.to_vec());
    let rule = |s: &str| parse_rule(s, V).unwrap();

    let mut b = EquivalenceBuilder::new(e);
    let mut derive = |r: &str, steps: &[StepSpec]| b.derive(rule(r), steps).unwrap();

    derive("•(•(x, y), z) -> •(x, •(y, z))", &[step(eq(0), L, &[])]);
    derive("•(e, x) -> x", &[step(eq(1), L, &[])]);
    derive("•(inv(x), x) -> e", &[step(eq(2), L, &[])]);
    let r3 = derive("•(inv(x), •(x, z)) -> •(e, z)", &[step(eq(0), R, &[]), step(eq(2), L, &[1])]);
    let l1 = derive("•(inv(x), •(x, z)) -> z", &[step(d(r3), L, &[]), step(eq(1), L, &[])]);
    let l2 = derive(
        "•(inv(inv(x)), e) -> x",
        &[step(eq(2), R, &[2]).with("x", t("x")), step(d(l1), L, &[])],
    );
    let l3 = derive(
        "•(inv(inv(x)), y) -> •(x, y)",
        &[step(d(l1), R, &[2]).with("x", t("x")), step(d(l1), L, &[])],
    );
    let r5 = derive("•(x, e) -> x", &[step(d(l3), R, &[]), step(d(l2), L, &[])]);
    let r6 = derive("inv(inv(x)) -> x", &[step(d(r5), R, &[]), step(d(l2), L, &[])]);
    let r7 = derive("•(x, inv(x)) -> e", &[step(d(r6), R, &[1]), step(eq(2), L, &[])]);
    derive("•(x, •(inv(x), z)) -> z", &[step(d(r6), R, &[1]), step(d(l1), L, &[])]);
    derive("inv(e) -> e", &[step(d(r5), R, &[]), step(eq(2), L, &[])]);
    derive(
        "inv(•(y, x)) -> •(inv(x), inv(y))",
        &[
            step(d(l1), R, &[]).with("x", t("x")),
            step(d(l1), R, &[2]).with("x", t("y")),
            step(eq(0), R, &[2, 2]),
            step(d(r7), L, &[2, 2]),
            step(d(r5), L, &[2]),
        ],
    );
    b.finish()
}
