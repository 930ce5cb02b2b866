use std::collections::BTreeMap;

use super::{match_term, Position, Substitution, Term, Trs};

/// A one-step reduct together with the rule and position that produced it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Reduct {
    pub term: Term,
    pub rule: usize,
    pub position: Position,
    pub substitution: Substitution,
}

/// All one-step reducts of `t`, ordered by position (pre-order) and then by rule index.
pub fn rewrite_step(trs: &Trs, t: &Term) -> Vec<Reduct> {
    let mut out = Vec::new();
    for pos in t.function_positions() {
        let sub = t.subterm(&pos).expect("position taken from the term");
        for (i, rule) in trs.rules.iter().enumerate() {
            if let Some(sigma) = match_term(&rule.lhs, sub) {
                let term = t
                    .replace_at(&pos, rule.rhs.apply(&sigma))
                    .expect("position taken from the term");
                out.push(Reduct { term, rule: i, position: pos.clone(), substitution: sigma });
            }
        }
    }
    out
}

/// Rewrites `t` at `pos` with rule `rule`, if the rule's lhs matches there.
pub fn rewrite_at(trs: &Trs, t: &Term, rule: usize, pos: &Position) -> Option<Term> {
    let rule = trs.rules.get(rule)?;
    let sigma = match_term(&rule.lhs, t.subterm(pos)?)?;
    t.replace_at(pos, rule.rhs.apply(&sigma))
}

/// Leftmost-innermost normalization, trying rules in index order.
///
/// Each rewrite step consumes one unit of `fuel`; returns `None` if the term
/// is still reducible when the fuel runs out.
pub fn normal_form(trs: &Trs, t: &Term, fuel: u64) -> Option<Term> {
    let mut fuel = fuel;
    let mut stack: Vec<Frame> = Vec::new();
    let mut next = Pending::raw(t);
    'descend: loop {
        let (mut value, mut reducible) = match next {
            Pending::Normal(t) => (t, false),
            Pending::App(f, args) => {
                let mut rest = args.into_iter();
                match rest.next() {
                    Some(first) => {
                        stack.push(Frame { f, done: Vec::new(), rest });
                        next = first;
                        continue 'descend;
                    }
                    None => (Term::App(f, Vec::new()), true),
                }
            }
        };
        loop {
            if reducible {
                if let Some(rule) = trs.rules.iter().find(|r| matches(&r.lhs, &value)) {
                    if fuel == 0 {
                        return None;
                    }
                    fuel -= 1;
                    let mut bindings = BTreeMap::new();
                    take_bindings(&rule.lhs, value, &mut bindings);
                    let mut uses = rule.rhs.var_counts();
                    next = Pending::instance(&rule.rhs, &mut bindings, &mut uses);
                    continue 'descend;
                }
            }
            let Some(frame) = stack.last_mut() else {
                return Some(value);
            };
            frame.done.push(value);
            if let Some(n) = frame.rest.next() {
                next = n;
                continue 'descend;
            }
            let frame = stack.pop().expect("frame is on the stack");
            value = Term::App(frame.f, frame.done);
            reducible = true;
        }
    }
}

/// A term under normalization; `Normal` parts are known to be irreducible.
enum Pending {
    Normal(Term),
    App(String, Vec<Pending>),
}

impl Pending {
    fn raw(t: &Term) -> Self {
        match t {
            Term::Var(_) => Pending::Normal(t.clone()),
            Term::App(f, args) => Pending::App(f.clone(), args.iter().map(Pending::raw).collect()),
        }
    }

    /// `t` instantiated by bindings in normal form. A binding is moved into
    /// its last use and cloned for the others.
    fn instance(t: &Term, bindings: &mut BTreeMap<String, Term>, uses: &mut BTreeMap<&str, usize>) -> Self {
        match t {
            Term::Var(x) => {
                let left = uses.get_mut(x.as_str()).expect("counted above");
                *left -= 1;
                let value = if *left == 0 { bindings.remove(x) } else { bindings.get(x).cloned() };
                Pending::Normal(value.expect("rhs variables occur in the lhs"))
            }
            Term::App(f, args) => {
                Pending::App(f.clone(), args.iter().map(|a| Pending::instance(a, bindings, uses)).collect())
            }
        }
    }
}

/// Whether `pattern` matches `subject`, without building the substitution.
fn matches(pattern: &Term, subject: &Term) -> bool {
    let mut bound = BTreeMap::<&str, &Term>::new();
    let mut stack = vec![(pattern, subject)];
    while let Some((p, s)) = stack.pop() {
        match (p, s) {
            (Term::Var(x), _) => match bound.get(x.as_str()) {
                Some(&b) if b != s => return false,
                Some(_) => {}
                None => {
                    bound.insert(x, s);
                }
            },
            (Term::App(f, pargs), Term::App(g, sargs)) if f == g && pargs.len() == sargs.len() => {
                stack.extend(pargs.iter().zip(sargs));
            }
            _ => return false,
        }
    }
    true
}

/// Moves the subterms of a matched `subject` into `out`.
fn take_bindings(pattern: &Term, subject: Term, out: &mut BTreeMap<String, Term>) {
    match (pattern, subject) {
        (Term::Var(x), s) => {
            out.entry(x.clone()).or_insert(s);
        }
        (Term::App(_, pargs), Term::App(_, sargs)) => {
            for (p, s) in pargs.iter().zip(sargs) {
                take_bindings(p, s, out);
            }
        }
        (Term::App(..), Term::Var(_)) => unreachable!("pattern matched"),
    }
}

struct Frame {
    f: String,
    done: Vec<Term>,
    rest: std::vec::IntoIter<Pending>,
}
