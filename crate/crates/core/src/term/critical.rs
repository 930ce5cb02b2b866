use std::collections::BTreeSet;

use super::{unify, Position, Rule, Term, Trs};

/// An overlap of two rules and the two terms it splits into.
///
/// `peak` rewrites to `left` with the inner rule at `position`, and to
/// `right` with the outer rule at the root.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CriticalPair {
    pub peak: Term,
    pub left: Term,
    pub right: Term,
    pub outer: usize,
    pub inner: usize,
    pub position: Position,
}

/// Renames the variables of `rule` by appending primes until none clashes
/// with `avoid`.
pub fn rename_apart(rule: &Rule, avoid: &BTreeSet<&str>) -> Rule {
    let vars: Vec<String> = rule.lhs.vars().into_iter().map(str::to_string).collect();
    let mut suffix = String::from("'");
    while vars.iter().any(|x| avoid.contains(format!("{x}{suffix}").as_str())) {
        suffix.push('\'');
    }
    rule.map_vars(&|x| format!("{x}{suffix}"))
}

/// All critical pairs of `trs`, ordered by (outer rule, inner rule, position).
///
/// Root overlaps of a rule with itself are left out.
pub fn critical_pairs(trs: &Trs) -> Vec<CriticalPair> {
    let mut out = Vec::new();
    for (oi, outer) in trs.rules.iter().enumerate() {
        let outer_vars = outer.lhs.vars();
        let positions = outer.lhs.function_positions();
        for (ii, inner) in trs.rules.iter().enumerate() {
            let inner = rename_apart(inner, &outer_vars);
            for pos in &positions {
                if oi == ii && pos.is_root() {
                    continue;
                }
                let sub = outer.lhs.subterm(pos).expect("position of the lhs");
                let Some(sigma) = unify(&inner.lhs, sub) else {
                    continue;
                };
                let peak = outer.lhs.apply(&sigma);
                let left = peak
                    .replace_at(pos, inner.rhs.apply(&sigma))
                    .expect("position of the peak");
                let right = outer.rhs.apply(&sigma);
                out.push(CriticalPair { peak, left, right, outer: oi, inner: ii, position: pos.clone() });
            }
        }
    }
    out
}
