//! Knuth–Bendix order.

use std::collections::{BTreeMap, BTreeSet};

use super::{OrderDecision, OrderError};
use crate::term::Term;

/// Strict partial order on function symbols, given by generating pairs.
///
/// Symbols that occur in no pair are below every symbol that does, and
/// mutually incomparable.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Precedence {
    pairs: Vec<(String, String)>,
    closure: BTreeSet<(String, String)>,
    symbols: BTreeSet<String>,
}

impl Precedence {
    /// Builds the transitive closure of `pairs` (each `(greater, smaller)`),
    /// rejecting cycles.
    pub fn new(pairs: Vec<(String, String)>) -> Result<Self, OrderError> {
        let symbols: BTreeSet<String> = pairs.iter().flat_map(|(a, b)| [a.clone(), b.clone()]).collect();
        let mut succ: BTreeMap<&str, BTreeSet<&str>> = BTreeMap::new();
        for (a, b) in &pairs {
            succ.entry(a).or_default().insert(b);
        }
        let mut closure = BTreeSet::new();
        for s in &symbols {
            let mut seen = BTreeSet::new();
            let mut stack: Vec<&str> = succ.get(s.as_str()).into_iter().flatten().copied().collect();
            while let Some(t) = stack.pop() {
                if seen.insert(t) {
                    stack.extend(succ.get(t).into_iter().flatten().copied());
                }
            }
            if seen.contains(s.as_str()) {
                return Err(OrderError::PrecedenceCycle(s.clone()));
            }
            closure.extend(seen.into_iter().map(|t| (s.clone(), t.to_string())));
        }
        Ok(Precedence { pairs, closure, symbols })
    }

    pub fn pairs(&self) -> &[(String, String)] {
        &self.pairs
    }

    pub fn mentions(&self, f: &str) -> bool {
        self.symbols.contains(f)
    }

    pub fn gt(&self, f: &str, g: &str) -> bool {
        match (self.symbols.contains(f), self.symbols.contains(g)) {
            (true, true) => self.closure.contains(&(f.to_string(), g.to_string())),
            (true, false) => true,
            (false, _) => false,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymbolWeight {
    pub name: String,
    pub arity: usize,
    pub weight: u64,
}

/// Admissible KBO parameters.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KboParams {
    w0: u64,
    weights: Vec<SymbolWeight>,
    precedence: Precedence,
}

impl KboParams {
    /// Checks admissibility: `w0 > 0`, every constant weighs at least `w0`,
    /// and a unary symbol of weight zero is greater than all other symbols.
    pub fn new(w0: u64, weights: Vec<SymbolWeight>, precedence: Precedence) -> Result<Self, OrderError> {
        if w0 == 0 {
            return Err(OrderError::ZeroW0);
        }
        let mut seen = BTreeSet::new();
        for sw in &weights {
            if !seen.insert(sw.name.as_str()) {
                return Err(OrderError::DuplicateSymbol(sw.name.clone()));
            }
            if sw.arity == 0 && sw.weight < w0 {
                return Err(OrderError::ConstantBelowW0 { symbol: sw.name.clone(), weight: sw.weight, w0 });
            }
        }
        let known: BTreeSet<&str> = weights
            .iter()
            .map(|sw| sw.name.as_str())
            .chain(precedence.symbols.iter().map(String::as_str))
            .collect();
        for sw in weights.iter().filter(|sw| sw.arity == 1 && sw.weight == 0) {
            if let Some(other) = known.iter().find(|g| **g != sw.name && !precedence.gt(&sw.name, g)) {
                return Err(OrderError::UnaryZeroNotMaximal { symbol: sw.name.clone(), other: other.to_string() });
            }
        }
        Ok(KboParams { w0, weights, precedence })
    }

    pub fn w0(&self) -> u64 {
        self.w0
    }

    pub fn weights(&self) -> &[SymbolWeight] {
        &self.weights
    }

    pub fn precedence(&self) -> &Precedence {
        &self.precedence
    }

    /// Weight of a symbol; unlisted symbols weigh `w0`.
    pub fn weight_of(&self, f: &str) -> u64 {
        self.weights.iter().find(|sw| sw.name == f).map_or(self.w0, |sw| sw.weight)
    }

    pub fn term_weight(&self, t: &Term) -> u128 {
        match t {
            Term::Var(_) => self.w0 as u128,
            Term::App(f, args) => {
                self.weight_of(f) as u128 + args.iter().map(|a| self.term_weight(a)).sum::<u128>()
            }
        }
    }

    /// Precedence on heads. The weight-zero unary symbol, if any, is on top
    /// even against symbols the parameters never mention.
    fn head_gt(&self, f: &str, g: &str) -> bool {
        if f != g && self.weights.iter().any(|sw| sw.name == f && sw.arity == 1 && sw.weight == 0) {
            return true;
        }
        self.precedence.gt(f, g)
    }

    /// `s ≻ t` in the Knuth–Bendix order.
    pub fn gt(&self, s: &Term, t: &Term) -> bool {
        let Term::App(f, ss) = s else {
            return false;
        };
        let sc = s.var_counts();
        if t.var_counts().iter().any(|(x, n)| sc.get(x).copied().unwrap_or(0) < *n) {
            return false;
        }
        let (ws, wt) = (self.term_weight(s), self.term_weight(t));
        if ws != wt {
            return ws > wt;
        }
        match t {
            Term::Var(x) => is_unary_tower(s, x),
            Term::App(g, ts) => {
                if f == g && ss.len() == ts.len() {
                    match ss.iter().zip(ts).find(|(a, b)| a != b) {
                        Some((a, b)) => self.gt(a, b),
                        None => false,
                    }
                } else {
                    self.head_gt(f, g)
                }
            }
        }
    }
}

/// `s = f₁(f₂(…fₙ(x)))` with `n ≥ 1` and every `fᵢ` unary.
fn is_unary_tower(s: &Term, x: &str) -> bool {
    let mut cur = s;
    let mut depth = 0;
    loop {
        match cur {
            Term::App(_, args) if args.len() == 1 => {
                cur = &args[0];
                depth += 1;
            }
            Term::Var(y) => return depth > 0 && y == x,
            Term::App(..) => return false,
        }
    }
}

pub fn kbo_compare(params: &KboParams, s: &Term, t: &Term) -> OrderDecision {
    if params.gt(s, t) {
        OrderDecision::Gt
    } else if s == t {
        OrderDecision::Ge
    } else {
        OrderDecision::Nge
    }
}
