//! Partial certification: open leaves become obligations, everything else is
//! still checked.
//!
//! Starts from the group certificate, replaces each subproof in turn by an
//! assumption, and shows the verdicts. Also shows an unrecognized technique
//! and a tampered rule removal.
//!
//! ```text
//! cargo run --example partial_proofs [-- --write DIR]
//! ```

use cpfcert::cert::{NodePath, ProofNode};
use cpfcert::check::{check, FuelConfig};
use cpfcert::cpf::{parse_certificate, serialize_certificate};
use cpfcert::orders::{KboParams, ReductionOrder, SymbolWeight};

fn main() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/corpus/group.proof.xml");
    let group = parse_certificate(&std::fs::read(path).unwrap()).unwrap();

    for p in group.proof.paths() {
        let mut cp = group.clone();
        let node = cp.proof.at_mut(&p).unwrap();
        let claim = format!("{} holds", node.title());
        *node = ProofNode::Assumption { claim, trs: None };
        println!("{p} assumed: {}", check(&cp, FuelConfig::default()));
    }

    // Termination left to a technique this checker does not know.
    let mut partial = group.clone();
    *partial.proof.at_mut(&NodePath(vec![1, 1])).unwrap() =
        ProofNode::Assumption { claim: "R is terminating".into(), trs: None };
    let xml = serialize_certificate(&group, true);
    let unknown = xml.replacen("<ruleRemoval>", "<dpProof>", 1).replacen("</ruleRemoval>", "</dpProof>", 1);
    let unknown_cp = parse_certificate(unknown.as_bytes()).unwrap();
    println!("dpProof in place of 1.1: {}", check(&unknown_cp, FuelConfig::default()));

    // A KBO that does not orient inv(•(y, x)) → •(inv(x), inv(y)), while the
    // certificate still claims that every rule is removed.
    let mut tampered = group.clone();
    if let Some(ProofNode::RuleRemoval { order: ReductionOrder::Kbo(p), .. }) =
        tampered.proof.at_mut(&NodePath(vec![1, 1]))
    {
        let weights = p
            .weights()
            .iter()
            .map(|w| SymbolWeight { weight: if w.name == "inv" { 1 } else { w.weight }, ..w.clone() })
            .collect();
        *p = KboParams::new(p.w0(), weights, p.precedence().clone()).unwrap();
    }
    println!("tampered: {}", check(&tampered, FuelConfig::default()));

    let args: Vec<String> = std::env::args().collect();
    if let [_, flag, dir] = args.as_slice() {
        if flag == "--write" {
            let dir = std::path::Path::new(dir);
            std::fs::write(dir.join("partial.xml"), serialize_certificate(&partial, true)).unwrap();
            std::fs::write(dir.join("unknown_step.xml"), unknown).unwrap();
            std::fs::write(dir.join("tampered.xml"), serialize_certificate(&tampered, true)).unwrap();
        }
    }
}
