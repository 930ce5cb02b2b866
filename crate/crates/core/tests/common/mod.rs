//! Shared helpers for the integration tests: corpus access, seeded random
//! generators, and brute-force reference implementations that share no code
//! with the library beyond the term type.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::path::PathBuf;

use cpfcert::cert::CertificationProblem;
use cpfcert::cpf::parse_certificate;
use cpfcert::term::{parse_equations, parse_rules, parse_term, EquationalSystem, Rule, Term, Trs};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

pub const V: &[&str] = &["x", "y", "z"];

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/corpus"))
}

pub fn corpus_path(name: &str) -> PathBuf {
    corpus_dir().join(name)
}

pub fn corpus_bytes(name: &str) -> Vec<u8> {
    std::fs::read(corpus_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn load(name: &str) -> CertificationProblem {
    parse_certificate(&corpus_bytes(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// Every corpus file, sorted by name.
pub fn corpus_names() -> Vec<String> {
    let mut names: Vec<String> = std::fs::read_dir(corpus_dir())
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .filter(|n| n.ends_with(".xml"))
        .collect();
    names.sort();
    names
}

pub fn t(s: &str) -> Term {
    parse_term(s, V).unwrap()
}

pub fn trs(src: &str) -> Trs {
    Trs::new(parse_rules(src, V).unwrap()).unwrap()
}

pub const GROUP_RULES: &str = "•(•(x, y), z) -> •(x, •(y, z))
•(e, x) -> x
•(inv(x), x) -> e
•(inv(x), •(x, z)) -> •(e, z)
inv(e) -> e
•(x, e) -> x
inv(inv(x)) -> x
•(x, inv(x)) -> e
•(x, •(inv(x), z)) -> z
inv(•(y, x)) -> •(inv(x), inv(y))";

pub fn group_trs() -> Trs {
    trs(GROUP_RULES)
}

pub fn group_equations() -> EquationalSystem {
    EquationalSystem::new(
        parse_equations("•(•(x, y), z) = •(x, •(y, z))\n•(e, x) = x\n•(inv(x), x) = e", V).unwrap(),
    )
    .unwrap()
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

// ---------------------------------------------------------------------------
// Random generation

/// Function symbols with arities; three of them, as in the random TRS tests.
pub const SIG: &[(&str, usize)] = &[("f", 2), ("g", 1), ("a", 0)];

/// A random term of depth at most `depth` (a leaf has depth 1).
pub fn random_term(rng: &mut impl Rng, depth: usize, sig: &[(&str, usize)], vars: &[&str]) -> Term {
    let leaf = depth <= 1 || rng.gen_bool(0.3);
    if leaf {
        let consts: Vec<&str> = sig.iter().filter(|(_, n)| *n == 0).map(|(f, _)| *f).collect();
        if !vars.is_empty() && (consts.is_empty() || rng.gen_bool(0.6)) {
            return Term::var(*vars.choose(rng).unwrap());
        }
        return Term::constant(*consts.choose(rng).unwrap());
    }
    let (f, n) = *sig.choose(rng).unwrap();
    Term::app(f, (0..n).map(|_| random_term(rng, depth - 1, sig, vars)).collect())
}

pub fn random_nonvar_term(rng: &mut impl Rng, depth: usize, sig: &[(&str, usize)], vars: &[&str]) -> Term {
    loop {
        let t = random_term(rng, depth, sig, vars);
        if !t.is_var() {
            return t;
        }
    }
}

/// A random rule: non-variable lhs, rhs built from the lhs variables only.
pub fn random_rule(rng: &mut impl Rng, depth: usize) -> Rule {
    let lhs = random_nonvar_term(rng, depth, SIG, V);
    let lvars: Vec<String> = lhs.vars().into_iter().map(str::to_string).collect();
    let lv: Vec<&str> = lvars.iter().map(String::as_str).collect();
    let rhs = random_term(rng, depth, SIG, &lv);
    Rule::new(lhs, rhs)
}

/// A random TRS of one to `max_rules` rules of depth at most `depth`.
pub fn random_trs(rng: &mut impl Rng, max_rules: usize, depth: usize) -> Trs {
    let n = rng.gen_range(1..=max_rules);
    Trs::new((0..n).map(|_| random_rule(rng, depth)).collect()).unwrap()
}

// ---------------------------------------------------------------------------
// Reference unification (Martelli–Montanari, solved form)

fn occurs(x: &str, t: &Term) -> bool {
    match t {
        Term::Var(y) => x == y,
        Term::App(_, args) => args.iter().any(|a| occurs(x, a)),
    }
}

fn subst(t: &Term, x: &str, u: &Term) -> Term {
    match t {
        Term::Var(y) if y == x => u.clone(),
        Term::Var(_) => t.clone(),
        Term::App(f, args) => Term::app(f.clone(), args.iter().map(|a| subst(a, x, u)).collect()),
    }
}

/// Solves `s = t` by transforming the equation set; the result is an
/// idempotent mgu as a plain map.
pub fn mm_unify(s: &Term, t: &Term) -> Option<BTreeMap<String, Term>> {
    let mut todo: Vec<(Term, Term)> = vec![(s.clone(), t.clone())];
    let mut solved: Vec<(String, Term)> = Vec::new();
    while let Some((a, b)) = todo.pop() {
        if a == b {
            continue;
        }
        match (a, b) {
            (Term::App(f, fa), Term::App(g, ga)) => {
                if f != g || fa.len() != ga.len() {
                    return None;
                }
                todo.extend(fa.into_iter().zip(ga));
            }
            (Term::Var(x), u) | (u, Term::Var(x)) => {
                if occurs(&x, &u) {
                    return None;
                }
                for (l, r) in todo.iter_mut() {
                    *l = subst(l, &x, &u);
                    *r = subst(r, &x, &u);
                }
                for (_, r) in solved.iter_mut() {
                    *r = subst(r, &x, &u);
                }
                solved.push((x, u));
            }
        }
    }
    Some(solved.into_iter().collect())
}

pub fn apply_map(t: &Term, m: &BTreeMap<String, Term>) -> Term {
    match t {
        Term::Var(x) => m.get(x).cloned().unwrap_or_else(|| t.clone()),
        Term::App(f, args) => Term::app(f.clone(), args.iter().map(|a| apply_map(a, m)).collect()),
    }
}

// ---------------------------------------------------------------------------
// Reference critical pairs

/// Non-variable subterms with their paths, by plain recursion.
fn nonvar_subterms(t: &Term) -> Vec<(Vec<usize>, Term)> {
    fn go(t: &Term, path: &mut Vec<usize>, out: &mut Vec<(Vec<usize>, Term)>) {
        if let Term::App(_, args) = t {
            out.push((path.clone(), t.clone()));
            for (i, a) in args.iter().enumerate() {
                path.push(i + 1);
                go(a, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(t, &mut Vec::new(), &mut out);
    out
}

fn put(t: &Term, path: &[usize], u: Term) -> Term {
    match (t, path.split_first()) {
        (_, None) => u,
        (Term::App(f, args), Some((i, rest))) => {
            let mut args = args.clone();
            args[i - 1] = put(&args[i - 1], rest, u);
            Term::app(f.clone(), args)
        }
        (Term::Var(_), Some(_)) => panic!("path runs into a variable"),
    }
}

fn prefix_vars(t: &Term, p: &str) -> Term {
    match t {
        Term::Var(x) => Term::var(format!("{p}{x}")),
        Term::App(f, args) => Term::app(f.clone(), args.iter().map(|a| prefix_vars(a, p)).collect()),
    }
}

/// Overlap found by the reference enumerator: outer rule, inner rule, path,
/// and the (peak, left, right) triple.
#[derive(Clone, Debug)]
pub struct OracleCp {
    pub outer: usize,
    pub inner: usize,
    pub path: Vec<usize>,
    pub peak: Term,
    pub left: Term,
    pub right: Term,
}

/// Every overlap of rule `j` into a non-variable subterm of rule `i`, except
/// a rule with itself at the root.
pub fn oracle_critical_pairs(rules: &[Rule]) -> Vec<OracleCp> {
    let mut out = Vec::new();
    for (i, ri) in rules.iter().enumerate() {
        let (l1, r1) = (prefix_vars(&ri.lhs, "outer_"), prefix_vars(&ri.rhs, "outer_"));
        for (j, rj) in rules.iter().enumerate() {
            let (l2, r2) = (prefix_vars(&rj.lhs, "inner_"), prefix_vars(&rj.rhs, "inner_"));
            for (path, sub) in nonvar_subterms(&l1) {
                if i == j && path.is_empty() {
                    continue;
                }
                if let Some(m) = mm_unify(&sub, &l2) {
                    let peak = apply_map(&l1, &m);
                    let left = put(&peak, &path, apply_map(&r2, &m));
                    let right = apply_map(&r1, &m);
                    out.push(OracleCp { outer: i, inner: j, path, peak, left, right });
                }
            }
        }
    }
    out
}

/// Renames variables to `v0, v1, …` in order of first occurrence across `ts`.
pub fn canonical(ts: &[&Term]) -> String {
    fn go(t: &Term, names: &mut BTreeMap<String, usize>, out: &mut String) {
        match t {
            Term::Var(x) => {
                let n = names.len();
                let k = *names.entry(x.clone()).or_insert(n);
                out.push_str(&format!("v{k}"));
            }
            Term::App(f, args) => {
                out.push_str(f);
                out.push('(');
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    go(a, names, out);
                }
                out.push(')');
            }
        }
    }
    let mut names = BTreeMap::new();
    let mut out = String::new();
    for t in ts {
        go(t, &mut names, &mut out);
        out.push_str(" | ");
    }
    out
}

// ---------------------------------------------------------------------------
// Reference rewriting

/// One-step reducts by scanning every subterm against every rule.
pub fn oracle_reducts(rules: &[Rule], t: &Term) -> Vec<(Term, usize, Vec<usize>)> {
    fn all_subterms(t: &Term, path: &mut Vec<usize>, out: &mut Vec<(Vec<usize>, Term)>) {
        out.push((path.clone(), t.clone()));
        if let Term::App(_, args) = t {
            for (i, a) in args.iter().enumerate() {
                path.push(i + 1);
                all_subterms(a, path, out);
                path.pop();
            }
        }
    }
    let mut subs = Vec::new();
    all_subterms(t, &mut Vec::new(), &mut subs);
    let mut out = Vec::new();
    for (path, sub) in subs {
        for (k, r) in rules.iter().enumerate() {
            if let Some(m) = oracle_match(&r.lhs, &sub) {
                out.push((put(t, &path, apply_map(&r.rhs, &m)), k, path.clone()));
            }
        }
    }
    out
}

/// Matching by unification against a subject whose variables are frozen into constants.
pub fn oracle_match(pattern: &Term, subject: &Term) -> Option<BTreeMap<String, Term>> {
    fn freeze(t: &Term) -> Term {
        match t {
            Term::Var(x) => Term::constant(format!("#{x}")),
            Term::App(f, args) => Term::app(f.clone(), args.iter().map(freeze).collect()),
        }
    }
    fn thaw(t: &Term) -> Term {
        match t {
            Term::App(f, args) if args.is_empty() && f.starts_with('#') => Term::var(&f[1..]),
            Term::App(f, args) => Term::app(f.clone(), args.iter().map(thaw).collect()),
            Term::Var(_) => t.clone(),
        }
    }
    let m = mm_unify(pattern, &freeze(subject))?;
    Some(m.into_iter().map(|(x, u)| (x, thaw(&u))).collect())
}

/// All normal forms reachable from `t`, by breadth-first search over every
/// reduct. `None` if more than `limit` terms are visited.
pub fn reachable_normal_forms(rules: &[Rule], t: &Term, limit: usize) -> Option<BTreeSet<Term>> {
    let mut seen: BTreeSet<Term> = BTreeSet::new();
    let mut queue = VecDeque::from([t.clone()]);
    let mut nfs = BTreeSet::new();
    while let Some(u) = queue.pop_front() {
        if !seen.insert(u.clone()) {
            continue;
        }
        if seen.len() > limit {
            return None;
        }
        let next = oracle_reducts(rules, &u);
        if next.is_empty() {
            nfs.insert(u);
        }
        queue.extend(next.into_iter().map(|(v, _, _)| v));
    }
    Some(nfs)
}

/// Whether `s` and `t` have a common reduct within `depth` steps each.
pub fn joinable_within(rules: &[Rule], s: &Term, t: &Term, depth: usize) -> bool {
    let reach = |from: &Term| {
        let mut seen = BTreeSet::from([from.clone()]);
        let mut frontier = vec![from.clone()];
        for _ in 0..depth {
            let mut next = Vec::new();
            for u in &frontier {
                for (v, _, _) in oracle_reducts(rules, u) {
                    if seen.insert(v.clone()) {
                        next.push(v);
                    }
                }
            }
            frontier = next;
        }
        seen
    };
    let a = reach(s);
    reach(t).iter().any(|u| a.contains(u))
}

// ---------------------------------------------------------------------------
// Reference Knuth–Bendix order

pub struct NaiveKbo<'a> {
    pub w0: u64,
    pub weight: &'a dyn Fn(&str) -> u64,
    /// strict precedence
    pub above: &'a dyn Fn(&str, &str) -> bool,
}

impl NaiveKbo<'_> {
    fn w(&self, t: &Term) -> u64 {
        match t {
            Term::Var(_) => self.w0,
            Term::App(f, args) => (self.weight)(f) + args.iter().map(|a| self.w(a)).sum::<u64>(),
        }
    }

    fn count(t: &Term, x: &str) -> usize {
        match t {
            Term::Var(y) => usize::from(x == y),
            Term::App(_, args) => args.iter().map(|a| Self::count(a, x)).sum(),
        }
    }

    /// The textbook definition, case by case.
    pub fn gt(&self, s: &Term, t: &Term) -> bool {
        if t.vars().iter().any(|x| Self::count(s, x) < Self::count(t, x)) {
            return false;
        }
        let (ws, wt) = (self.w(s), self.w(t));
        if ws > wt {
            return true;
        }
        if ws < wt {
            return false;
        }
        match (s, t) {
            (Term::Var(_), _) => false,
            (Term::App(_, _), Term::Var(x)) => {
                // s = f^n(x) for a unary f of weight zero
                let mut cur = s;
                let mut n = 0;
                while let Term::App(_, args) = cur {
                    if args.len() != 1 {
                        return false;
                    }
                    cur = &args[0];
                    n += 1;
                }
                n > 0 && cur == t && matches!(cur, Term::Var(y) if y == x)
            }
            (Term::App(f, ss), Term::App(g, ts)) => {
                if f != g {
                    return (self.above)(f, g);
                }
                for (a, b) in ss.iter().zip(ts) {
                    if a != b {
                        return self.gt(a, b);
                    }
                }
                false
            }
        }
    }
}

/// Admissibility of the reference parameters over a finite signature.
pub fn naive_admissible(w0: u64, sig: &[(&str, usize)], weight: &dyn Fn(&str) -> u64, above: &dyn Fn(&str, &str) -> bool) -> bool {
    sig.iter().all(|&(f, n)| {
        (n != 0 || weight(f) >= w0) && (n != 1 || weight(f) > 0 || sig.iter().all(|&(g, _)| g == f || above(f, g)))
    })
}

/// One KBO parameter set found by [`kbo_search_in`]: a weight per symbol of
/// the signature, in signature order, and the precedence from greatest to
/// smallest.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KboWitness {
    pub weights: Vec<u64>,
    pub order: Vec<&'static str>,
}

fn permutations(items: &[&'static str]) -> Vec<Vec<&'static str>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, first) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, first);
            out.push(p);
        }
    }
    out
}

/// Every admissible parameter set with `w0 = 1`, weights in {0, 1, 2} and a
/// total precedence on `sig` under which all rules decrease strictly.
pub fn kbo_search_in(sig: &[(&'static str, usize)], rules: &[Rule]) -> Vec<KboWitness> {
    let names: Vec<&'static str> = sig.iter().map(|(f, _)| *f).collect();
    let perms = permutations(&names);
    let mut found = Vec::new();
    let combos = 3usize.pow(sig.len() as u32);
    for c in 0..combos {
        let weights: Vec<u64> = (0..sig.len()).map(|i| (c / 3usize.pow(i as u32) % 3) as u64).collect();
        let weight = |f: &str| names.iter().position(|g| *g == f).map_or(1, |i| weights[i]);
        for order in &perms {
            let rank = |f: &str| order.iter().position(|g| *g == f);
            let above = |f: &str, g: &str| match (rank(f), rank(g)) {
                (Some(a), Some(b)) => a < b,
                _ => false,
            };
            if !naive_admissible(1, sig, &weight, &above) {
                continue;
            }
            let kbo = NaiveKbo { w0: 1, weight: &weight, above: &above };
            if rules.iter().all(|r| kbo.gt(&r.lhs, &r.rhs)) {
                found.push(KboWitness { weights: weights.clone(), order: order.clone() });
            }
        }
    }
    found
}

/// [`kbo_search_in`] over the group signature `e`, `•`, `inv`.
pub fn kbo_search(rules: &[Rule]) -> Vec<KboWitness> {
    kbo_search_in(&[("e", 0), ("•", 2), ("inv", 1)], rules)
}

// ---------------------------------------------------------------------------
// Minimal XML tree for mutating certificates

#[derive(Clone, Debug)]
pub enum XmlNode {
    Elem(XmlElem),
    Text(String),
}

#[derive(Clone, Debug)]
pub struct XmlElem {
    pub name: String,
    pub children: Vec<XmlNode>,
}

impl XmlElem {
    pub fn parse(src: &str) -> XmlElem {
        fn go(n: roxmltree::Node<'_, '_>) -> XmlElem {
            let children = n
                .children()
                .filter_map(|c| {
                    if c.is_element() {
                        Some(XmlNode::Elem(go(c)))
                    } else if c.is_text() && !c.text().unwrap_or("").trim().is_empty() {
                        Some(XmlNode::Text(c.text().unwrap().trim().to_string()))
                    } else {
                        None
                    }
                })
                .collect();
            XmlElem { name: n.tag_name().name().to_string(), children }
        }
        let doc = roxmltree::Document::parse(src).unwrap();
        go(doc.root_element())
    }

    pub fn write(&self) -> String {
        fn esc(s: &str) -> String {
            s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
        }
        fn go(e: &XmlElem, out: &mut String) {
            out.push_str(&format!("<{}>", e.name));
            for c in &e.children {
                match c {
                    XmlNode::Elem(c) => go(c, out),
                    XmlNode::Text(t) => out.push_str(&esc(t)),
                }
            }
            out.push_str(&format!("</{}>", e.name));
        }
        let mut out = String::from("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
        go(self, &mut out);
        out
    }

    pub fn child_mut(&mut self, name: &str) -> Option<&mut XmlElem> {
        self.children.iter_mut().find_map(|c| match c {
            XmlNode::Elem(e) if e.name == name => Some(e),
            _ => None,
        })
    }

    /// Paths (child indices) of every element below `self`, in pre-order.
    pub fn element_paths(&self) -> Vec<Vec<usize>> {
        fn go(e: &XmlElem, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            for (i, c) in e.children.iter().enumerate() {
                if let XmlNode::Elem(c) = c {
                    path.push(i);
                    out.push(path.clone());
                    go(c, path, out);
                    path.pop();
                }
            }
        }
        let mut out = Vec::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    pub fn node_mut(&mut self, path: &[usize]) -> &mut XmlNode {
        let (last, init) = path.split_last().unwrap();
        let mut e = self;
        for &i in init {
            e = match &mut e.children[i] {
                XmlNode::Elem(c) => c,
                XmlNode::Text(_) => panic!("path through text"),
            };
        }
        &mut e.children[*last]
    }

    fn parent_mut(&mut self, path: &[usize]) -> &mut XmlElem {
        let mut e = self;
        for &i in &path[..path.len() - 1] {
            e = match &mut e.children[i] {
                XmlNode::Elem(c) => c,
                XmlNode::Text(_) => panic!("path through text"),
            };
        }
        e
    }
}

const NAMES: &[&str] = &[
    "ruleRemoval", "rIsEmpty", "loop", "assumption", "funapp", "var", "rule", "trs", "rules", "position",
    "index", "dpProof", "subproof", "conversionStep", "bogus", "lhs", "rhs", "name", "arg",
];

/// Applies one random structural or textual edit below `root`.
pub fn mutate(root: &mut XmlElem, rng: &mut impl Rng) {
    let paths = root.element_paths();
    if paths.is_empty() {
        root.children.push(XmlNode::Elem(XmlElem { name: "bogus".into(), children: vec![] }));
        return;
    }
    let path = paths.choose(rng).unwrap().clone();
    match rng.gen_range(0..6) {
        0 => {
            if let XmlNode::Elem(e) = root.node_mut(&path) {
                e.name = NAMES.choose(rng).unwrap().to_string();
            }
        }
        1 => {
            root.parent_mut(&path).children.remove(*path.last().unwrap());
        }
        2 => {
            let copy = root.node_mut(&path).clone();
            root.parent_mut(&path).children.insert(*path.last().unwrap(), copy);
        }
        3 => {
            let text = ["0", "7", "", "-1", "x", "99999999999999999999", "a<b&c", "ε"].choose(rng).unwrap();
            if let XmlNode::Elem(e) = root.node_mut(&path) {
                e.children = vec![XmlNode::Text(text.to_string())];
            }
        }
        4 => {
            let parent = root.parent_mut(&path);
            let i = *path.last().unwrap();
            let j = rng.gen_range(0..parent.children.len());
            parent.children.swap(i, j);
        }
        _ => {
            let name = NAMES.choose(rng).unwrap().to_string();
            if let XmlNode::Elem(e) = root.node_mut(&path) {
                let k = rng.gen_range(0..=e.children.len());
                e.children.insert(k, XmlNode::Elem(XmlElem { name, children: vec![] }));
            }
        }
    }
}
