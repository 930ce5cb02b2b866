//! Deterministic re-checking of proof trees.
//!
//! Nodes are visited depth-first, left to right, in section order. The first
//! failing node determines the verdict; assumptions and unknown steps leave
//! open obligations behind.

use crate::cert::{
    validate_structure, CertificationProblem, ConversionStep, Direction, EquivalenceProof, Input, LoopWitness,
    NodePath, ProofNode, Reference, Subgoal, UnknownStep, Verdict,
};
use crate::orders::{order_compare, ReductionOrder};
use crate::term::{critical_pairs, match_term, normal_form, EquationalSystem, Rule, Term, Trs};

/// Step budgets for normalization.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct FuelConfig {
    /// Budget for each normal-form computation.
    pub steps: u64,
    /// Upper bound on budgets requested by the certificate itself.
    pub max_hint: u64,
}

pub const DEFAULT_FUEL: u64 = 10_000;

impl Default for FuelConfig {
    fn default() -> Self {
        FuelConfig { steps: DEFAULT_FUEL, max_hint: 1_000_000 }
    }
}

impl FuelConfig {
    pub fn with_steps(steps: u64) -> Self {
        FuelConfig { steps, ..Default::default() }
    }

    fn effective(&self, hint: Option<u64>) -> u64 {
        hint.map_or(self.steps, |h| h.min(self.max_hint).max(self.steps))
    }
}

/// The property a node has to establish.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GoalKind {
    Termination,
    Nontermination,
    LocalConfluence,
    Confluence,
    Equivalence,
    Completion,
    /// Whatever the node itself proves; used below unknown steps.
    Open,
}

impl GoalKind {
    fn describe(self) -> &'static str {
        match self {
            GoalKind::Termination => "termination",
            GoalKind::Nontermination => "nontermination",
            GoalKind::LocalConfluence => "local confluence",
            GoalKind::Confluence => "confluence",
            GoalKind::Equivalence => "equivalence of E and R",
            GoalKind::Completion => "a completion claim",
            GoalKind::Open => "an open goal",
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Goal<'a> {
    pub kind: GoalKind,
    pub trs: &'a Trs,
    pub equations: Option<&'a EquationalSystem>,
}

/// Goal kinds a node can establish; `None` means any (open leaves).
fn proves(node: &ProofNode) -> Option<&'static [GoalKind]> {
    use GoalKind::*;
    match node {
        ProofNode::Completion { .. } => Some(&[Completion]),
        ProofNode::RuleRemoval { .. } | ProofNode::RIsEmpty => Some(&[Termination]),
        ProofNode::CriticalPairsJoinable { .. } => Some(&[LocalConfluence]),
        ProofNode::Orthogonality | ProofNode::Newman { .. } => Some(&[Confluence, LocalConfluence]),
        ProofNode::Equivalence(_) => Some(&[Equivalence]),
        ProofNode::Loop(_) => Some(&[Nontermination]),
        ProofNode::Assumption { .. } | ProofNode::Unknown(_) => None,
    }
}

/// Combines sub-verdicts: the first rejection wins, then the first
/// unsupported element; otherwise obligations accumulate in order.
pub fn collect_obligations(verdicts: impl IntoIterator<Item = Verdict>) -> Verdict {
    let mut unsupported = None;
    let mut obligations = Vec::new();
    for v in verdicts {
        match v {
            Verdict::Rejected { .. } => return v,
            Verdict::Unsupported(e) => {
                unsupported.get_or_insert(e);
            }
            Verdict::PartiallyCertified(o) => obligations.extend(o),
            Verdict::Certified => {}
        }
    }
    match unsupported {
        Some(e) => Verdict::Unsupported(e),
        None if obligations.is_empty() => Verdict::Certified,
        None => Verdict::PartiallyCertified(obligations),
    }
}

/// Like [`collect_obligations`], but stops evaluating after the first rejection.
fn sequence<'a>(steps: impl IntoIterator<Item = Box<dyn FnOnce() -> Verdict + 'a>>) -> Verdict {
    let mut done = Vec::new();
    for step in steps {
        let v = step();
        let stop = matches!(v, Verdict::Rejected { .. });
        done.push(v);
        if stop {
            break;
        }
    }
    collect_obligations(done)
}

fn verdict_of(at: &NodePath, r: Result<(), String>) -> Verdict {
    match r {
        Ok(()) => Verdict::Certified,
        Err(reason) => Verdict::rejected(at, reason),
    }
}

/// Checks a whole certificate.
pub fn check(cp: &CertificationProblem, fuel: FuelConfig) -> Verdict {
    if let Some(d) = validate_structure(cp).into_iter().next() {
        return Verdict::rejected(d.path, d.message);
    }
    let root = NodePath::root();
    let goal = match &cp.input {
        Input::Unsupported(name) => return Verdict::Unsupported(name.clone()),
        Input::Completion { equations, trs } => Goal { kind: GoalKind::Completion, trs, equations: Some(equations) },
        Input::Trs(trs) => Goal { kind: GoalKind::Open, trs, equations: None },
    };
    check_node(&cp.proof, goal, &root, fuel)
}

/// Checks one node against `goal`.
pub fn check_node(node: &ProofNode, goal: Goal<'_>, at: &NodePath, fuel: FuelConfig) -> Verdict {
    let kind = match (proves(node), goal.kind) {
        (None, k) => k,
        (Some(kinds), GoalKind::Open) => kinds[0],
        (Some(kinds), k) if kinds.contains(&k) => k,
        (Some(_), k) => {
            return Verdict::rejected(at, format!("{} cannot establish {}", node.title(), k.describe()));
        }
    };
    let trs = goal.trs;
    match node {
        ProofNode::Assumption { claim, .. } => Verdict::PartiallyCertified(vec![claim.clone()]),
        ProofNode::Unknown(step) => check_unknown(step, goal, at, fuel),
        ProofNode::RuleRemoval { order, remaining, subproof } => {
            check_rule_removal(trs, order, remaining, subproof, at, fuel)
        }
        ProofNode::RIsEmpty => check_r_is_empty(trs, at),
        ProofNode::CriticalPairsJoinable { fuel: hint } => check_wcr(trs, fuel.effective(*hint), at),
        ProofNode::Orthogonality => check_orthogonal(trs, at),
        ProofNode::Newman { termination, wcr } => check_newman(trs, termination, wcr, at, fuel),
        ProofNode::Loop(w) => check_loop(trs, w, at),
        ProofNode::Equivalence(_) | ProofNode::Completion { .. } if goal.equations.is_none() => {
            Verdict::rejected(at, format!("{} needs equations, but the input has none", kind.describe()))
        }
        ProofNode::Equivalence(proof) => {
            check_equivalence(goal.equations.expect("checked above"), trs, proof, at, fuel)
        }
        ProofNode::Completion { wcr, termination, equivalence } => {
            let e = goal.equations.expect("checked above");
            check_completion(e, trs, termination, wcr, equivalence, at, fuel)
        }
    }
}

/// The step itself stays open; its subproofs are checked.
fn check_unknown(step: &UnknownStep, goal: Goal<'_>, at: &NodePath, fuel: FuelConfig) -> Verdict {
    let own = Verdict::PartiallyCertified(vec![step.description.clone()]);
    let subs = step.subproofs.iter().enumerate().map(|(i, Subgoal { trs, proof })| {
        let g = Goal { kind: GoalKind::Open, trs: trs.as_ref().unwrap_or(goal.trs), equations: goal.equations };
        let p = at.child(i + 1);
        Box::new(move || check_node(proof, g, &p, fuel)) as Box<dyn FnOnce() -> Verdict>
    });
    collect_obligations([own, sequence(subs)])
}

/// Rule removal in remaining-TRS form: `remaining` must be a sub-multiset of
/// `trs` up to renaming, every removed rule strictly decreasing and every
/// remaining rule weakly decreasing.
pub fn check_rule_removal(
    trs: &Trs,
    order: &ReductionOrder,
    remaining: &Trs,
    subproof: &ProofNode,
    at: &NodePath,
    fuel: FuelConfig,
) -> Verdict {
    let mut kept = vec![false; trs.len()];
    for r in &remaining.rules {
        match (0..trs.len()).find(|&i| !kept[i] && trs.rules[i].is_variant_of(r)) {
            Some(i) => kept[i] = true,
            None => {
                return Verdict::rejected(
                    at,
                    format!("remaining TRS is not a subset: rule {r} does not occur in the current TRS"),
                )
            }
        }
    }
    if let ReductionOrder::Poly(i) = order {
        if let Some(f) = i.non_monotone_symbol() {
            return Verdict::rejected(at, format!("interpretation of {f} is not strictly monotone"));
        }
    }
    for (rule, kept) in trs.rules.iter().zip(kept) {
        let decision = match order_compare(order, &rule.lhs, &rule.rhs) {
            Ok(d) => d,
            Err(e) => return Verdict::rejected(at, format!("cannot compare rule {rule}: {e}")),
        };
        if !kept && !decision.is_strict() {
            return Verdict::rejected(at, format!("rule {rule} not strictly decreasing ({decision})"));
        }
        if kept && !decision.is_weak() {
            return Verdict::rejected(at, format!("remaining rule {rule} not weakly decreasing ({decision})"));
        }
    }
    let goal = Goal { kind: GoalKind::Termination, trs: remaining, equations: None };
    check_node(subproof, goal, &at.child(1), fuel)
}

pub fn check_r_is_empty(trs: &Trs, at: &NodePath) -> Verdict {
    if trs.is_empty() {
        return Verdict::Certified;
    }
    let left: Vec<String> = trs.rules.iter().map(Rule::to_string).collect();
    Verdict::rejected(at, format!("rules left, namely {}", left.join(", ")))
}

/// Every critical pair must reach one common normal form within `fuel` steps per side.
pub fn check_wcr(trs: &Trs, fuel: u64, at: &NodePath) -> Verdict {
    verdict_of(at, wcr(trs, fuel))
}

fn wcr(trs: &Trs, fuel: u64) -> Result<(), String> {
    for (k, cp) in critical_pairs(trs).iter().enumerate() {
        let shown = format!("{} ← {} → {}", cp.left, cp.peak, cp.right);
        let left = normal_form(trs, &cp.left, fuel);
        let right = normal_form(trs, &cp.right, fuel);
        match (left, right) {
            (Some(a), Some(b)) if a == b => {}
            (Some(a), Some(b)) => {
                return Err(format!("critical pair {k} not joinable: {shown} with normal forms {a} and {b}"))
            }
            _ => return Err(format!("fuel exhausted at critical pair {k}: {shown}")),
        }
    }
    Ok(())
}

pub fn check_orthogonal(trs: &Trs, at: &NodePath) -> Verdict {
    if let Some(r) = trs.rules.iter().find(|r| !r.is_left_linear()) {
        return Verdict::rejected(at, format!("nonlinear lhs in rule {r}"));
    }
    match critical_pairs(trs).first() {
        None => Verdict::Certified,
        Some(cp) => Verdict::rejected(
            at,
            format!(
                "rules {} and {} overlap at position {} with peak {}",
                cp.outer, cp.inner, cp.position, cp.peak
            ),
        ),
    }
}

pub fn check_newman(
    trs: &Trs,
    termination: &ProofNode,
    wcr: &ProofNode,
    at: &NodePath,
    fuel: FuelConfig,
) -> Verdict {
    let t = at.child(1);
    let w = at.child(2);
    sequence([
        Box::new(|| check_node(termination, Goal { kind: GoalKind::Termination, trs, equations: None }, &t, fuel))
            as Box<dyn FnOnce() -> Verdict>,
        Box::new(|| check_node(wcr, Goal { kind: GoalKind::LocalConfluence, trs, equations: None }, &w, fuel)),
    ])
}

pub fn check_completion(
    equations: &EquationalSystem,
    trs: &Trs,
    termination: &ProofNode,
    wcr: &ProofNode,
    equivalence: &ProofNode,
    at: &NodePath,
    fuel: FuelConfig,
) -> Verdict {
    let goal = |kind| Goal { kind, trs, equations: Some(equations) };
    let (p1, p2, p3) = (at.child(1), at.child(2), at.child(3));
    sequence([
        Box::new(|| check_node(termination, goal(GoalKind::Termination), &p1, fuel)) as Box<dyn FnOnce() -> Verdict>,
        Box::new(|| check_node(wcr, goal(GoalKind::LocalConfluence), &p2, fuel)),
        Box::new(|| check_node(equivalence, goal(GoalKind::Equivalence), &p3, fuel)),
    ])
}

/// `E ≡ R`: each rule of R is derived by a conversion in E (with sharing of
/// earlier derived rules), and each equation of E joins in R by normal forms.
pub fn check_equivalence(
    equations: &EquationalSystem,
    trs: &Trs,
    proof: &EquivalenceProof,
    at: &NodePath,
    fuel: FuelConfig,
) -> Verdict {
    verdict_of(at, equivalence(equations, trs, proof, fuel.steps))
}

fn equivalence(equations: &EquationalSystem, trs: &Trs, proof: &EquivalenceProof, fuel: u64) -> Result<(), String> {
    let subs = &proof.subsumptions;
    for (k, sub) in subs.iter().enumerate() {
        let rule = &sub.rule;
        let fail = |j: usize, msg: String| format!("derivation of rule {rule}, step {j}: {msg}");
        let (Some(first), Some(last)) = (sub.conversion.first(), sub.conversion.last()) else {
            return Err(format!("derivation of rule {rule}: empty conversion"));
        };
        if first.source != rule.lhs {
            return Err(fail(0, format!("conversion starts at {} instead of {}", first.source, rule.lhs)));
        }
        if last.target != rule.rhs {
            let j = sub.conversion.len() - 1;
            return Err(fail(j, format!("conversion ends at {} instead of {}", last.target, rule.rhs)));
        }
        for (j, step) in sub.conversion.iter().enumerate() {
            if j > 0 && sub.conversion[j - 1].target != step.source {
                return Err(fail(j, "broken conversion chain".into()));
            }
            let (l, r) = match step.reference {
                Reference::Equation(i) => match equations.equations.get(i) {
                    Some(e) => (&e.lhs, &e.rhs),
                    None => return Err(fail(j, format!("no equation with index {i}"))),
                },
                Reference::Derived(i) if i < k => (&subs[i].rule.lhs, &subs[i].rule.rhs),
                Reference::Derived(i) => {
                    return Err(fail(j, format!("forward reference in sharing (to derived rule {i})")))
                }
            };
            let (from, to) = match step.direction {
                Direction::LeftToRight => (l, r),
                Direction::RightToLeft => (r, l),
            };
            replay_conversion_step(step, from, to).map_err(|m| fail(j, m))?;
        }
    }
    for rule in &trs.rules {
        if !subs.iter().any(|s| s.rule.is_variant_of(rule)) {
            return Err(format!("no derivation for rule {rule}"));
        }
    }
    for e in &equations.equations {
        let l = normal_form(trs, &e.lhs, fuel);
        let r = normal_form(trs, &e.rhs, fuel);
        match (l, r) {
            (Some(a), Some(b)) if a == b => {}
            (Some(a), Some(b)) => {
                return Err(format!("equation {e} does not join in R: normal forms {a} and {b}"));
            }
            _ => return Err(format!("fuel exhausted at equation {e}")),
        }
    }
    Ok(())
}

/// Applies `from → to` at the step's position. Without an explicit
/// substitution, it is recovered by matching `from` against the source and
/// then `to` against the target.
fn replay_conversion_step(step: &ConversionStep, from: &Term, to: &Term) -> Result<(), String> {
    let pos = &step.position;
    let sub = step.source.subterm(pos).ok_or_else(|| format!("invalid position {pos} in {}", step.source))?;
    let sigma = match &step.substitution {
        Some(s) => s.clone(),
        None => {
            let mut s = match_term(from, sub).ok_or_else(|| format!("{from} does not match {sub}"))?;
            let extra = to.vars().into_iter().any(|x| !from.contains_var(x));
            if extra {
                let tsub = step.target.subterm(pos).ok_or_else(|| format!("invalid position {pos} in {}", step.target))?;
                let t = match_term(to, tsub).ok_or_else(|| format!("{to} does not match {tsub}"))?;
                for (x, u) in t.iter() {
                    match s.get(x) {
                        Some(v) if v != u => return Err(format!("inconsistent binding for {x}")),
                        Some(_) => {}
                        None => s.insert(x, u.clone()),
                    }
                }
            }
            s
        }
    };
    if from.apply(&sigma) != *sub {
        return Err(format!("{from} under {sigma} is not {sub}"));
    }
    let result = step.source.replace_at(pos, to.apply(&sigma)).expect("position checked above");
    if result != step.target {
        return Err(format!("step produces {result}, but the certificate claims {}", step.target));
    }
    Ok(())
}

/// Replays a loop witness and checks that it closes.
pub fn check_loop(trs: &Trs, w: &LoopWitness, at: &NodePath) -> Verdict {
    verdict_of(at, replay_loop(trs, w).map(|_| ()))
}

/// The final term of the replayed loop.
pub fn replay_loop(trs: &Trs, w: &LoopWitness) -> Result<Term, String> {
    if w.steps.is_empty() {
        return Err("loop without rewrite steps".into());
    }
    let mut t = w.start.clone();
    for (k, step) in w.steps.iter().enumerate() {
        let rule = trs.rules.get(step.rule).ok_or_else(|| format!("step {k}: no rule with index {}", step.rule))?;
        let pos = &step.position;
        let sub = t.subterm(pos).ok_or_else(|| format!("step {k}: invalid position {pos} in {t}"))?;
        let redex = rule.lhs.apply(&step.substitution);
        if redex != *sub {
            return Err(format!("step {k}: rule {rule} under {} does not match {sub} at {pos}", step.substitution));
        }
        let next = t.replace_at(pos, rule.rhs.apply(&step.substitution)).expect("position checked above");
        if let Some(claimed) = &step.reduct {
            if *claimed != next {
                return Err(format!("step {k}: claimed reduct {claimed} differs from actual {next}"));
            }
        }
        t = next;
    }
    let inner = t
        .subterm(&w.context)
        .ok_or_else(|| format!("invalid context position {} in {t}", w.context))?;
    let expected = w.start.apply(&w.substitution);
    if *inner != expected {
        return Err(format!("loop does not close: {inner} at {} is not {expected}", w.context));
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cert::LoopStep;
    use crate::term::{parse_rules, parse_term, Position, Substitution};

    const V: &[&str] = &["x", "y", "z"];

    fn trs(src: &str) -> Trs {
        Trs::new(parse_rules(src, V).unwrap()).unwrap()
    }

    fn root() -> NodePath {
        NodePath::root()
    }

    #[test]
    fn lattice() {
        use Verdict::*;
        assert_eq!(collect_obligations([Certified, Certified]), Certified);
        assert_eq!(
            collect_obligations([PartiallyCertified(vec!["a".into()]), PartiallyCertified(vec!["b".into()])]),
            PartiallyCertified(vec!["a".into(), "b".into()])
        );
        let rej = Verdict::rejected("proof/1", "x");
        assert_eq!(collect_obligations([rej.clone(), PartiallyCertified(vec!["a".into()])]), rej);
        assert_eq!(collect_obligations([PartiallyCertified(vec!["a".into()]), rej.clone()]), rej);
        assert_eq!(collect_obligations([Unsupported("u".into()), Certified]), Unsupported("u".into()));
    }

    #[test]
    fn empty_trs() {
        assert_eq!(check_r_is_empty(&Trs::empty(), &root()), Verdict::Certified);
        let v = check_r_is_empty(&trs("f(x) -> g(x)"), &root());
        assert_eq!(v, Verdict::rejected("proof/1", "rules left, namely f(x) → g(x)"));
    }

    #[test]
    fn wcr_cases() {
        let v = check_wcr(&trs("f(a) -> b\nf(a) -> c"), DEFAULT_FUEL, &root());
        assert!(matches!(v, Verdict::Rejected { ref reason, .. } if reason.contains("b and c") || reason.contains("c and b")), "{v}");
        assert_eq!(check_wcr(&trs("a -> b\na -> c\nb -> d\nc -> d"), DEFAULT_FUEL, &root()), Verdict::Certified);
        // joinable only with more fuel than given
        let v = check_wcr(&trs("a -> b\na -> c\nb -> d\nc -> d"), 0, &root());
        assert!(matches!(v, Verdict::Rejected { ref reason, .. } if reason.starts_with("fuel exhausted")));
    }

    #[test]
    fn orthogonality() {
        assert_eq!(check_orthogonal(&trs("ap(ap(k, x), y) -> x"), &root()), Verdict::Certified);
        let v = check_orthogonal(&trs("f(x, x) -> x"), &root());
        assert!(matches!(v, Verdict::Rejected { ref reason, .. } if reason.contains("nonlinear lhs")));
        let v = check_orthogonal(&trs("f(g(x)) -> x\ng(a) -> a"), &root());
        assert!(matches!(v, Verdict::Rejected { ref reason, .. } if reason.contains("overlap")));
    }

    fn textbook_loop() -> (Trs, LoopWitness) {
        let r = trs("f(x) -> f(s(x))");
        let mut sigma = Substitution::new();
        sigma.insert("x", parse_term("s(x)", V).unwrap());
        let w = LoopWitness {
            start: parse_term("f(x)", V).unwrap(),
            steps: vec![LoopStep {
                rule: 0,
                position: Position::root(),
                substitution: Substitution::new(),
                reduct: Some(parse_term("f(s(x))", V).unwrap()),
            }],
            context: Position::root(),
            substitution: sigma,
        };
        (r, w)
    }

    #[test]
    fn loop_replays() {
        let (r, w) = textbook_loop();
        assert_eq!(check_loop(&r, &w, &root()), Verdict::Certified);
        let mut bad = w.clone();
        bad.steps[0].reduct = Some(parse_term("f(x)", V).unwrap());
        let v = check_loop(&r, &bad, &root());
        assert!(matches!(v, Verdict::Rejected { ref reason, .. } if reason.starts_with("step 0")), "{v}");
    }

    #[test]
    fn loop_without_any_loop() {
        let r = trs("f(a) -> g(a)");
        let w = LoopWitness {
            start: parse_term("f(a)", V).unwrap(),
            steps: vec![LoopStep {
                rule: 0,
                position: Position::root(),
                substitution: Substitution::new(),
                reduct: None,
            }],
            context: Position::root(),
            substitution: Substitution::new(),
        };
        assert!(matches!(check_loop(&r, &w, &root()), Verdict::Rejected { .. }));
    }

    #[test]
    fn mismatched_goal() {
        let (r, w) = textbook_loop();
        let goal = Goal { kind: GoalKind::Termination, trs: &r, equations: None };
        let v = check_node(&ProofNode::Loop(w), goal, &root(), FuelConfig::default());
        assert!(matches!(v, Verdict::Rejected { ref reason, .. } if reason.contains("cannot establish termination")));
    }
}
