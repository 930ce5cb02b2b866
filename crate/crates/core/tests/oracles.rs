//! Values fixed by brute-force reference implementations, then pinned.

mod common;

use std::collections::BTreeSet;

use common::*;
use cpfcert::cert::{LoopStep, LoopWitness, NodePath};
use cpfcert::check::{check_completion, check_loop, check_wcr, FuelConfig};
use cpfcert::orders::{kbo_compare, order_compare, KboParams, OrderDecision, Precedence, ReductionOrder, SymbolWeight};
use cpfcert::term::{critical_pairs, normal_form, unify, Position, Substitution, Term, Trs};

/// Number of critical pairs of the group TRS, as counted by the reference enumerator.
const N_CP: usize = 55;

fn group_kbo() -> KboParams {
    let sw = |name: &str, arity, weight| SymbolWeight { name: name.into(), arity, weight };
    let prec = Precedence::new(vec![("inv".into(), "•".into()), ("•".into(), "e".into())]).unwrap();
    KboParams::new(1, vec![sw("e", 0, 1), sw("•", 2, 0), sw("inv", 1, 0)], prec).unwrap()
}

#[test]
fn group_overlap_unifier() {
    let s = Term::app("•", vec![Term::app("inv", vec![Term::var("x'")]), Term::var("x'")]);
    let u = t("•(x, y)");
    let reference = mm_unify(&s, &u).unwrap();
    let sigma = unify(&s, &u).unwrap();
    // both are most general, so each instance is a renaming of the other
    let (a, b) = (apply_map(&s, &reference), s.apply(&sigma));
    assert!(oracle_match(&a, &b).is_some() && oracle_match(&b, &a).is_some(), "{a} {b}");
    let mut expected = Substitution::new();
    expected.insert("x", Term::app("inv", vec![Term::var("x'")]));
    expected.insert("y", Term::var("x'"));
    assert_eq!(sigma, expected);
}

#[test]
fn group_critical_pair_count() {
    let r = group_trs();
    assert_eq!(oracle_critical_pairs(&r.rules).len(), N_CP);
    assert_eq!(critical_pairs(&r).len(), N_CP);
}

#[test]
fn group_critical_pairs_match_reference() {
    let r = group_trs();
    let mut ours: Vec<String> = critical_pairs(&r)
        .iter()
        .map(|c| format!("{} {} {} {}", c.outer, c.inner, c.position, canonical(&[&c.peak, &c.left, &c.right])))
        .collect();
    let mut theirs: Vec<String> = oracle_critical_pairs(&r.rules)
        .iter()
        .map(|c| {
            let pos = Position(c.path.clone());
            format!("{} {} {} {}", c.outer, c.inner, pos, canonical(&[&c.peak, &c.left, &c.right]))
        })
        .collect();
    ours.sort();
    theirs.sort();
    assert_eq!(ours, theirs);
}

#[test]
fn inverse_of_product_normalizes() {
    let r = group_trs();
    let s = t("inv(•(e, inv(y)))");
    assert_eq!(normal_form(&r, &s, 100), Some(t("y")));
    let nfs = reachable_normal_forms(&r.rules, &s, 10_000).unwrap();
    assert_eq!(nfs, BTreeSet::from([t("y")]));
}

#[test]
fn kbo_search_finds_the_corpus_witness() {
    let r = group_trs();
    let found = kbo_search(&r.rules);
    let witness = KboWitness { weights: vec![1, 0, 0], order: vec!["inv", "•", "e"] };
    assert!(found.contains(&witness), "{found:?}");
    // Every witness needs inv at weight zero and on top of the precedence.
    assert!(found.iter().all(|w| w.weights[2] == 0 && w.order[0] == "inv"));
    let p = group_kbo();
    for rule in &r.rules {
        assert_eq!(kbo_compare(&p, &rule.lhs, &rule.rhs), OrderDecision::Gt, "{rule}");
    }
}

#[test]
fn any_witness_from_the_search_is_accepted() {
    let r = group_trs();
    for w in kbo_search(&r.rules) {
        let sw = |name: &str, arity, weight| SymbolWeight { name: name.into(), arity, weight };
        let pairs = vec![(w.order[0].into(), w.order[1].into()), (w.order[1].into(), w.order[2].into())];
        let p = KboParams::new(
            1,
            vec![sw("e", 0, w.weights[0]), sw("•", 2, w.weights[1]), sw("inv", 1, w.weights[2])],
            Precedence::new(pairs).unwrap(),
        )
        .unwrap();
        for rule in &r.rules {
            assert!(p.gt(&rule.lhs, &rule.rhs), "{w:?} {rule}");
        }
    }
}

#[test]
fn kbo_distributes_inverse() {
    let p = group_kbo();
    let (s, u) = (t("inv(•(y, x))"), t("•(inv(x), inv(y))"));
    assert_eq!(kbo_compare(&p, &s, &u), OrderDecision::Gt);
    let assoc = &group_trs().rules[0];
    let order = ReductionOrder::Kbo(p);
    assert_eq!(order_compare(&order, &assoc.lhs, &assoc.rhs).unwrap(), OrderDecision::Gt);
}

#[test]
fn diamond_is_locally_confluent() {
    let r = trs("a -> b\na -> c\nb -> d\nc -> d");
    let nfs = reachable_normal_forms(&r.rules, &t("a"), 100).unwrap();
    assert_eq!(nfs, BTreeSet::from([t("d")]));
    assert!(check_wcr(&r, 100, &NodePath::root()).is_certified());
}

#[test]
fn group_equations_join() {
    let r = group_trs();
    for e in &group_equations().equations {
        let l = reachable_normal_forms(&r.rules, &e.lhs, 10_000).unwrap();
        let rr = reachable_normal_forms(&r.rules, &e.rhs, 10_000).unwrap();
        assert_eq!(l.len(), 1, "{e}");
        assert_eq!(l, rr, "{e}");
    }
}

#[test]
fn dropping_left_unit_breaks_equation_two() {
    let cp = load("group.proof.xml");
    let cpfcert::cert::Input::Completion { equations, trs: full } = &cp.input else { panic!() };
    let rules: Vec<_> = full.rules.iter().filter(|r| r.to_string() != "•(e, x) → x").cloned().collect();
    assert_eq!(rules.len(), full.len() - 1);
    let weaker = Trs::new(rules).unwrap();

    let e2 = &equations.equations[1];
    let l = reachable_normal_forms(&weaker.rules, &e2.lhs, 10_000).unwrap();
    let r = reachable_normal_forms(&weaker.rules, &e2.rhs, 10_000).unwrap();
    assert!(l.is_disjoint(&r), "{l:?} {r:?}");

    // Termination and local confluence are assumed so that only the
    // equivalence node is at stake.
    let cpfcert::cert::ProofNode::Completion { equivalence, .. } = &cp.proof else { panic!() };
    let assumed = |claim: &str| cpfcert::cert::ProofNode::Assumption { claim: claim.into(), trs: None };
    let v = check_completion(
        equations,
        &weaker,
        &assumed("terminating"),
        &assumed("locally confluent"),
        equivalence,
        &NodePath::root(),
        FuelConfig::default(),
    );
    match v {
        cpfcert::cert::Verdict::Rejected { path, reason } => {
            assert_eq!(path, "proof/1.3");
            assert!(reason.contains("does not join"), "{reason}");
        }
        other => panic!("{other}"),
    }
}

/// Whether some term reachable from `start` within `steps` steps contains an
/// instance of `start`.
fn self_embedding(rules: &[cpfcert::term::Rule], start: &Term, steps: usize) -> bool {
    let mut frontier = vec![start.clone()];
    for _ in 0..steps {
        let mut next = Vec::new();
        for u in &frontier {
            for (v, _, _) in oracle_reducts(rules, u) {
                let embeds = v.positions().iter().any(|p| {
                    let sub = v.subterm(p).unwrap();
                    oracle_match(start, sub).is_some()
                });
                if embeds {
                    return true;
                }
                next.push(v);
            }
        }
        frontier = next;
    }
    false
}

#[test]
fn ground_rule_has_no_loop() {
    let r = trs("f(a) -> g(a)");
    let starts = ["f(a)", "g(a)", "a", "f(x)", "f(f(a))", "g(f(a))", "f(g(a))"];
    for s in starts {
        assert!(!self_embedding(&r.rules, &t(s), 10), "{s}");
    }
    let mut sigma = Substitution::new();
    sigma.insert("x", t("a"));
    for (start, context) in [("f(a)", vec![]), ("f(x)", vec![]), ("f(a)", vec![1])] {
        let w = LoopWitness {
            start: t(start),
            steps: vec![LoopStep { rule: 0, position: Position::root(), substitution: Substitution::new(), reduct: None }],
            context: Position(context),
            substitution: sigma.clone(),
        };
        assert!(!check_loop(&r, &w, &NodePath::root()).is_certified(), "{start}");
    }
}
