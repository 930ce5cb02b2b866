//! First-order terms, rules and the machinery around them.
//!
//! Terms are plain trees of owned strings. Variable and function names live in
//! separate namespaces: `Term::Var("x")` and the constant `Term::App("x", [])`
//! are different terms.

mod critical;
mod notation;
mod rewrite;
mod unify;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

pub use critical::{critical_pairs, rename_apart, CriticalPair};
pub use notation::{parse_equations, parse_rule, parse_rules, parse_term, NotationError};
pub use rewrite::{normal_form, rewrite_at, rewrite_step, Reduct};
pub use unify::{match_term, unify};

/// A first-order term.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Term {
    Var(String),
    App(String, Vec<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Self {
        Term::Var(name.into())
    }

    pub fn app(name: impl Into<String>, args: Vec<Term>) -> Self {
        Term::App(name.into(), args)
    }

    pub fn constant(name: impl Into<String>) -> Self {
        Term::App(name.into(), Vec::new())
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    pub fn as_var(&self) -> Option<&str> {
        match self {
            Term::Var(x) => Some(x),
            Term::App(..) => None,
        }
    }

    /// Head symbol and arguments of an application.
    pub fn as_app(&self) -> Option<(&str, &[Term])> {
        match self {
            Term::Var(_) => None,
            Term::App(f, args) => Some((f, args)),
        }
    }

    /// Set of variables occurring in the term.
    pub fn vars(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.for_each_var(&mut |x| {
            out.insert(x);
        });
        out
    }

    /// Number of occurrences of each variable.
    pub fn var_counts(&self) -> BTreeMap<&str, usize> {
        let mut out = BTreeMap::new();
        self.for_each_var(&mut |x| *out.entry(x).or_insert(0) += 1);
        out
    }

    fn for_each_var<'a>(&'a self, f: &mut impl FnMut(&'a str)) {
        match self {
            Term::Var(x) => f(x),
            Term::App(_, args) => args.iter().for_each(|a| a.for_each_var(f)),
        }
    }

    pub fn contains_var(&self, x: &str) -> bool {
        match self {
            Term::Var(y) => x == y,
            Term::App(_, args) => args.iter().any(|a| a.contains_var(x)),
        }
    }

    /// A term is linear when no variable occurs twice.
    pub fn is_linear(&self) -> bool {
        self.var_counts().values().all(|&n| n == 1)
    }

    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::App(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::App(_, args) => args.iter().map(|a| 1 + a.depth()).max().unwrap_or(0),
        }
    }

    /// All positions in pre-order, which is also lexicographic order.
    pub fn positions(&self) -> Vec<Position> {
        let mut out = Vec::new();
        let mut path = Vec::new();
        self.collect_positions(&mut path, &mut out, false);
        out
    }

    /// Positions of non-variable subterms, in pre-order.
    pub fn function_positions(&self) -> Vec<Position> {
        let mut out = Vec::new();
        let mut path = Vec::new();
        self.collect_positions(&mut path, &mut out, true);
        out
    }

    fn collect_positions(&self, path: &mut Vec<usize>, out: &mut Vec<Position>, skip_vars: bool) {
        match self {
            Term::Var(_) => {
                if !skip_vars {
                    out.push(Position(path.clone()));
                }
            }
            Term::App(_, args) => {
                out.push(Position(path.clone()));
                for (i, a) in args.iter().enumerate() {
                    path.push(i + 1);
                    a.collect_positions(path, out, skip_vars);
                    path.pop();
                }
            }
        }
    }

    pub fn subterm(&self, pos: &Position) -> Option<&Term> {
        let mut t = self;
        for &i in pos.indices() {
            match t {
                Term::App(_, args) if i >= 1 && i <= args.len() => t = &args[i - 1],
                _ => return None,
            }
        }
        Some(t)
    }

    /// `self` with the subterm at `pos` replaced, or `None` for an invalid position.
    pub fn replace_at(&self, pos: &Position, replacement: Term) -> Option<Term> {
        fn go(t: &Term, idx: &[usize], replacement: Term) -> Option<Term> {
            let Some((&i, rest)) = idx.split_first() else {
                return Some(replacement);
            };
            match t {
                Term::App(f, args) if i >= 1 && i <= args.len() => {
                    let mut args = args.clone();
                    args[i - 1] = go(&args[i - 1], rest, replacement)?;
                    Some(Term::App(f.clone(), args))
                }
                _ => None,
            }
        }
        go(self, pos.indices(), replacement)
    }

    pub fn apply(&self, sigma: &Substitution) -> Term {
        match self {
            Term::Var(x) => sigma.get(x).cloned().unwrap_or_else(|| self.clone()),
            Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| a.apply(sigma)).collect()),
        }
    }

    /// Renames every variable through `f`.
    pub fn map_vars(&self, f: &impl Fn(&str) -> String) -> Term {
        match self {
            Term::Var(x) => Term::Var(f(x)),
            Term::App(g, args) => Term::App(g.clone(), args.iter().map(|a| a.map_vars(f)).collect()),
        }
    }

    /// Adds every function symbol with its arity to `sig`.
    pub fn collect_signature(&self, sig: &mut Signature) -> Result<(), TermError> {
        if let Term::App(f, args) = self {
            sig.declare(f, args.len())?;
            for a in args {
                a.collect_signature(sig)?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(x) => write!(f, "{x}"),
            Term::App(g, args) if args.is_empty() => write!(f, "{g}"),
            Term::App(g, args) => {
                write!(f, "{g}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// A position: a path of 1-based argument indices, empty for the root.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Position(pub Vec<usize>);

impl Position {
    pub fn root() -> Self {
        Position(Vec::new())
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn child(&self, i: usize) -> Position {
        let mut v = self.0.clone();
        v.push(i);
        Position(v)
    }

    pub fn is_prefix_of(&self, other: &Position) -> bool {
        other.0.starts_with(&self.0)
    }
}

impl From<Vec<usize>> for Position {
    fn from(v: Vec<usize>) -> Self {
        Position(v)
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "ε");
        }
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "{}", parts.join("."))
    }
}

/// Finite map from variables to terms. Identity bindings are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Substitution(BTreeMap<String, Term>);

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    /// Binds `x` to `t`; binding a variable to itself removes it.
    pub fn insert(&mut self, x: impl Into<String>, t: Term) {
        let x = x.into();
        if t.as_var() == Some(x.as_str()) {
            self.0.remove(&x);
        } else {
            self.0.insert(x, t);
        }
    }

    pub fn get(&self, x: &str) -> Option<&Term> {
        self.0.get(x)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Term)> {
        self.0.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn domain(&self) -> impl Iterator<Item = &str> {
        self.0.keys().map(String::as_str)
    }

    /// Composition `self` then `then`: `t.apply(&s.compose(&r)) == t.apply(&s).apply(&r)`.
    pub fn compose(&self, then: &Substitution) -> Substitution {
        let mut out = Substitution::new();
        for (x, t) in &self.0 {
            out.insert(x.clone(), t.apply(then));
        }
        for (x, t) in &then.0 {
            if !self.0.contains_key(x) {
                out.insert(x.clone(), t.clone());
            }
        }
        out
    }

    /// Restriction to the given variables.
    pub fn restrict<'a>(&self, vars: impl IntoIterator<Item = &'a str>) -> Substitution {
        let mut out = Substitution::new();
        for x in vars {
            if let Some(t) = self.0.get(x) {
                out.insert(x, t.clone());
            }
        }
        out
    }
}

impl FromIterator<(String, Term)> for Substitution {
    fn from_iter<I: IntoIterator<Item = (String, Term)>>(iter: I) -> Self {
        let mut s = Substitution::new();
        for (x, t) in iter {
            s.insert(x, t);
        }
        s
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (x, t)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x} ↦ {t}")?;
        }
        write!(f, "}}")
    }
}

/// Function symbols with their arities.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Signature(BTreeMap<String, usize>);

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn declare(&mut self, f: &str, arity: usize) -> Result<(), TermError> {
        match self.0.get(f) {
            Some(&a) if a != arity => Err(TermError::ArityClash {
                symbol: f.to_string(),
                expected: a,
                found: arity,
            }),
            Some(_) => Ok(()),
            None => {
                self.0.insert(f.to_string(), arity);
                Ok(())
            }
        }
    }

    pub fn arity(&self, f: &str) -> Option<usize> {
        self.0.get(f).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, usize)> {
        self.0.iter().map(|(k, &v)| (k.as_str(), v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("symbol {symbol} used with arity {found}, but earlier with arity {expected}")]
    ArityClash { symbol: String, expected: usize, found: usize },
    #[error("left-hand side is a variable")]
    VariableLhs,
    #[error("rhs variable not in lhs: {0}")]
    FreshRhsVariable(String),
}

/// A rewrite rule `lhs → rhs`.
///
/// The fields are public so that a certificate may carry malformed rules;
/// [`Rule::check`] reports what is wrong with them.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Rule {
    pub lhs: Term,
    pub rhs: Term,
}

impl Rule {
    pub fn new(lhs: Term, rhs: Term) -> Self {
        Rule { lhs, rhs }
    }

    pub fn check(&self) -> Result<(), TermError> {
        if self.lhs.is_var() {
            return Err(TermError::VariableLhs);
        }
        let lhs_vars = self.lhs.vars();
        if let Some(x) = self.rhs.vars().into_iter().find(|x| !lhs_vars.contains(x)) {
            return Err(TermError::FreshRhsVariable(x.to_string()));
        }
        Ok(())
    }

    pub fn is_left_linear(&self) -> bool {
        self.lhs.is_linear()
    }

    /// Equality up to a bijective renaming of variables.
    pub fn is_variant_of(&self, other: &Rule) -> bool {
        let a = Term::App(String::new(), vec![self.lhs.clone(), self.rhs.clone()]);
        let b = Term::App(String::new(), vec![other.lhs.clone(), other.rhs.clone()]);
        match_term(&a, &b).is_some() && match_term(&b, &a).is_some()
    }

    pub fn map_vars(&self, f: &impl Fn(&str) -> String) -> Rule {
        Rule::new(self.lhs.map_vars(f), self.rhs.map_vars(f))
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} → {}", self.lhs, self.rhs)
    }
}

/// An unoriented equation; either side may be a variable.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Equation {
    pub lhs: Term,
    pub rhs: Term,
}

impl Equation {
    pub fn new(lhs: Term, rhs: Term) -> Self {
        Equation { lhs, rhs }
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

/// An ordered list of rules.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Trs {
    pub rules: Vec<Rule>,
}

impl Trs {
    /// Builds a TRS, checking every rule and arity consistency.
    pub fn new(rules: Vec<Rule>) -> Result<Self, TermError> {
        let trs = Trs { rules };
        for r in &trs.rules {
            r.check()?;
        }
        trs.signature()?;
        Ok(trs)
    }

    /// Builds a TRS without checking any invariant.
    pub fn unchecked(rules: Vec<Rule>) -> Self {
        Trs { rules }
    }

    pub fn empty() -> Self {
        Trs::default()
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn signature(&self) -> Result<Signature, TermError> {
        let mut sig = Signature::new();
        for r in &self.rules {
            r.lhs.collect_signature(&mut sig)?;
            r.rhs.collect_signature(&mut sig)?;
        }
        Ok(sig)
    }
}

/// An ordered list of equations.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct EquationalSystem {
    pub equations: Vec<Equation>,
}

impl EquationalSystem {
    pub fn new(equations: Vec<Equation>) -> Result<Self, TermError> {
        let es = EquationalSystem { equations };
        es.signature()?;
        Ok(es)
    }

    pub fn unchecked(equations: Vec<Equation>) -> Self {
        EquationalSystem { equations }
    }

    pub fn len(&self) -> usize {
        self.equations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn signature(&self) -> Result<Signature, TermError> {
        let mut sig = Signature::new();
        for e in &self.equations {
            e.lhs.collect_signature(&mut sig)?;
            e.rhs.collect_signature(&mut sig)?;
        }
        Ok(sig)
    }
}
