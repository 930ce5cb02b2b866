use std::str::FromStr;

use num_bigint::BigUint;
use roxmltree::{Document, Node};

use super::CpfError;
use crate::cert::{
    CertificationProblem, ConversionStep, Direction, EquivalenceProof, Input, LoopStep, LoopWitness, Origin,
    ProofNode, Reference, RuleSubsumption, Subgoal, UnknownStep,
};
use crate::orders::{ArgVar, KboParams, Monomial, PolyInterpretation, Polynomial, Precedence, ReductionOrder, SymbolWeight};
use crate::term::{Equation, EquationalSystem, Position, Rule, Substitution, Term, Trs};

type R<T> = Result<T, CpfError>;

/// An element together with its path from the document root.
#[derive(Clone)]
struct El<'a, 'i> {
    node: Node<'a, 'i>,
    path: String,
}

impl<'a, 'i> El<'a, 'i> {
    fn name(&self) -> &'a str {
        self.node.tag_name().name()
    }

    fn err(&self, reason: impl Into<String>) -> CpfError {
        CpfError::schema(self.path.clone(), reason)
    }

    fn children(&self) -> R<Vec<El<'a, 'i>>> {
        let mut elems = Vec::new();
        for c in self.node.children() {
            if c.is_element() {
                elems.push(c);
            } else if c.is_text() && !c.text().unwrap_or("").trim().is_empty() {
                return Err(self.err("unexpected text"));
            }
        }
        Ok(elems
            .iter()
            .map(|&node| {
                let name = node.tag_name().name();
                let same: Vec<_> = elems.iter().filter(|n| n.tag_name().name() == name).collect();
                let path = if same.len() > 1 {
                    let k = same.iter().position(|n| **n == node).expect("node is among its siblings") + 1;
                    format!("{}/{name}[{k}]", self.path)
                } else {
                    format!("{}/{name}", self.path)
                };
                El { node, path }
            })
            .collect())
    }

    fn seq(&self) -> R<Seq<'a, 'i>> {
        Ok(Seq { parent: self.clone(), items: self.children()?, next: 0 })
    }

    /// Exactly one element child.
    fn single(&self) -> R<El<'a, 'i>> {
        let mut c = self.children()?;
        if c.len() != 1 {
            return Err(self.err(format!("expected 1 child, found {}", c.len())));
        }
        Ok(c.remove(0))
    }

    fn empty(&self) -> R<()> {
        match self.children()?.first() {
            Some(c) => Err(c.err("unexpected element")),
            None => Ok(()),
        }
    }

    fn text(&self) -> R<String> {
        if let Some(c) = self.node.children().find(|c| c.is_element()) {
            return Err(self.err(format!("unexpected element {}", c.tag_name().name())));
        }
        let s: String = self.node.children().filter_map(|c| c.text()).collect();
        Ok(s.trim().to_string())
    }

    fn number<T: FromStr>(&self) -> R<T> {
        let s = self.text()?;
        s.parse().map_err(|_| self.err(format!("not a number: {s:?}")))
    }
}

/// Cursor over the element children of one element, in document order.
struct Seq<'a, 'i> {
    parent: El<'a, 'i>,
    items: Vec<El<'a, 'i>>,
    next: usize,
}

impl<'a, 'i> Seq<'a, 'i> {
    fn peek(&self) -> Option<&El<'a, 'i>> {
        self.items.get(self.next)
    }

    fn opt(&mut self, name: &str) -> Option<El<'a, 'i>> {
        let e = self.peek().filter(|e| e.name() == name)?.clone();
        self.next += 1;
        Some(e)
    }

    fn req(&mut self, name: &str) -> R<El<'a, 'i>> {
        match self.peek() {
            Some(e) if e.name() == name => Ok(self.opt(name).expect("peeked")),
            Some(e) => Err(e.err(format!("expected {name}"))),
            None => Err(self.parent.err(format!("missing {name}"))),
        }
    }

    fn many(&mut self, name: &str) -> Vec<El<'a, 'i>> {
        std::iter::from_fn(|| self.opt(name)).collect()
    }

    fn finish(&self) -> R<()> {
        match self.peek() {
            Some(e) => Err(e.err("unexpected element")),
            None => Ok(()),
        }
    }
}

/// Reads a certificate. Unknown or malformed proof elements become
/// [`ProofNode::Unknown`]; anything else outside the vocabulary is an error.
pub fn parse_certificate(bytes: &[u8]) -> Result<CertificationProblem, CpfError> {
    let text = std::str::from_utf8(bytes).map_err(|e| {
        let (line, column) = line_col(&bytes[..e.valid_up_to()]);
        CpfError::Parse { line, column, reason: "invalid UTF-8".into() }
    })?;
    let doc = Document::parse(text).map_err(|e| {
        let pos = e.pos();
        CpfError::Parse { line: pos.row, column: pos.col, reason: e.to_string() }
    })?;
    let root = doc.root_element();
    if root.tag_name().name() != "certificationProblem" {
        return Err(CpfError::schema("/", format!("expected certificationProblem, found {}", root.tag_name().name())));
    }
    let root = El { node: root, path: "/certificationProblem".into() };
    let children = root.children()?;
    if children.len() != 4 {
        return Err(root.err("expected 4 children"));
    }
    let mut s = root.seq()?;
    let input = input(&s.req("input")?)?;
    let cpf_version = version(&s.req("cpfVersion")?)?;
    let proof = proof(&s.req("proof")?);
    let origin = origin(&s.req("origin")?)?;
    Ok(CertificationProblem { input, cpf_version, proof, origin })
}

fn line_col(prefix: &[u8]) -> (u32, u32) {
    let line = prefix.iter().filter(|&&b| b == b'\n').count() + 1;
    let col = prefix.iter().rev().take_while(|&&b| b != b'\n').count() + 1;
    (line as u32, col as u32)
}

fn input(e: &El) -> R<Input> {
    let c = e.single()?;
    match c.name() {
        "trsInput" => Ok(Input::Trs(trs(&c.single().and_then(|t| expect_name(t, "trs"))?)?)),
        "completionInput" => {
            let mut s = c.seq()?;
            let eqs = rules(&s.req("equations")?.single().and_then(|r| expect_name(r, "rules"))?)?;
            let trs = trs(&s.req("trs")?)?;
            s.finish()?;
            let equations = EquationalSystem::unchecked(eqs.into_iter().map(|r| Equation::new(r.lhs, r.rhs)).collect());
            Ok(Input::Completion { equations, trs })
        }
        other => Ok(Input::Unsupported(other.to_string())),
    }
}

fn expect_name<'a, 'i>(e: El<'a, 'i>, name: &str) -> R<El<'a, 'i>> {
    if e.name() == name {
        Ok(e)
    } else {
        Err(e.err(format!("expected {name}")))
    }
}

fn version(e: &El) -> R<String> {
    let v = e.text()?;
    let mut parts = v.split('.');
    let ok = parts.next() == Some("2") && parts.all(|p| !p.is_empty() && p.bytes().all(|b| b.is_ascii_digit()));
    if !ok {
        return Err(e.err(format!("unsupported version {v:?}, expected 2.x")));
    }
    Ok(v)
}

fn origin(e: &El) -> R<Origin> {
    let mut s = e.seq()?;
    let po = s.req("proofOrigin")?;
    let notes = s.opt("notes").map(|n| n.text()).transpose()?;
    s.finish()?;
    let mut ps = po.seq()?;
    let mut origin = Origin { notes, ..Origin::default() };
    if let Some(tool) = ps.opt("tool") {
        let mut ts = tool.seq()?;
        origin.tool = ts.opt("name").map(|n| n.text()).transpose()?;
        origin.version = ts.opt("version").map(|n| n.text()).transpose()?;
        ts.finish()?;
    }
    ps.finish()?;
    Ok(origin)
}

fn trs(e: &El) -> R<Trs> {
    let r = expect_name(e.single()?, "rules")?;
    Ok(Trs::unchecked(rules(&r)?))
}

fn rules(e: &El) -> R<Vec<Rule>> {
    let mut s = e.seq()?;
    let rs = s.many("rule").iter().map(rule).collect::<R<Vec<_>>>()?;
    s.finish()?;
    Ok(rs)
}

fn rule(e: &El) -> R<Rule> {
    let c = e.children()?;
    if c.len() != 2 {
        return Err(e.err(format!("expected 2 children (lhs, rhs), found {}", c.len())));
    }
    let mut s = e.seq()?;
    let lhs = term(&s.req("lhs")?.single()?)?;
    let rhs = term(&s.req("rhs")?.single()?)?;
    Ok(Rule::new(lhs, rhs))
}

fn term(e: &El) -> R<Term> {
    match e.name() {
        "var" => {
            let x = e.text()?;
            if x.is_empty() {
                return Err(e.err("empty variable name"));
            }
            Ok(Term::Var(x))
        }
        "funapp" => {
            let mut s = e.seq()?;
            let f = s.req("name")?.text()?;
            if f.is_empty() {
                return Err(e.err("empty function symbol"));
            }
            let args = s.many("arg").iter().map(|a| term(&a.single()?)).collect::<R<Vec<_>>>()?;
            s.finish()?;
            Ok(Term::App(f, args))
        }
        other => Err(e.err(format!("expected var or funapp, found {other}"))),
    }
}

fn proof(e: &El) -> ProofNode {
    match e.single() {
        Ok(c) => node(&c),
        Err(err) => ProofNode::Unknown(UnknownStep::new(format!("malformed proof: {err}"))),
    }
}

/// Never fails: anything unexpected is an unknown step.
fn node(e: &El) -> ProofNode {
    let name = e.name();
    let parsed = match name {
        "completionProof" => completion(e),
        "ruleRemoval" => rule_removal(e),
        "rIsEmpty" => e.empty().map(|_| ProofNode::RIsEmpty),
        "criticalPairsJoinable" => wcr(e),
        "orthogonality" => e.empty().map(|_| ProofNode::Orthogonality),
        "newman" => newman(e),
        "subsumptionProof" => equivalence(e).map(ProofNode::Equivalence),
        "loop" => loop_witness(e).map(ProofNode::Loop),
        "assumption" => assumption(e),
        "unknownProofStep" => unknown(e).map(ProofNode::Unknown),
        _ => return ProofNode::Unknown(UnknownStep::new(name)),
    };
    parsed.unwrap_or_else(|err| ProofNode::Unknown(UnknownStep::new(format!("malformed {name}: {err}"))))
}

/// A wrapper element holding exactly one proof node.
fn slot(e: &El) -> R<Box<ProofNode>> {
    Ok(Box::new(node(&e.single()?)))
}

fn completion(e: &El) -> R<ProofNode> {
    let mut s = e.seq()?;
    let wcr = slot(&s.req("wcrProof")?)?;
    let termination = slot(&s.req("terminationProof")?)?;
    let equivalence = slot(&s.req("equivalenceProof")?)?;
    s.finish()?;
    Ok(ProofNode::Completion { wcr, termination, equivalence })
}

fn rule_removal(e: &El) -> R<ProofNode> {
    let mut s = e.seq()?;
    let order = order(&s.req("orderingConstraintProof")?.single()?)?;
    let remaining = trs(&s.req("trs")?)?;
    let subproof = slot(&s.req("subproof")?)?;
    s.finish()?;
    Ok(ProofNode::RuleRemoval { order, remaining, subproof })
}

fn wcr(e: &El) -> R<ProofNode> {
    let mut s = e.seq()?;
    let fuel = s.opt("fuel").map(|f| f.number()).transpose()?;
    s.finish()?;
    Ok(ProofNode::CriticalPairsJoinable { fuel })
}

fn newman(e: &El) -> R<ProofNode> {
    let mut s = e.seq()?;
    let termination = slot(&s.req("terminationProof")?)?;
    let wcr = slot(&s.req("wcrProof")?)?;
    s.finish()?;
    Ok(ProofNode::Newman { termination, wcr })
}

fn order(e: &El) -> R<ReductionOrder> {
    match e.name() {
        "knuthBendixOrder" => kbo(e).map(ReductionOrder::Kbo),
        "polynomialInterpretation" => poly(e).map(ReductionOrder::Poly),
        other => Err(e.err(format!("unknown reduction order {other}"))),
    }
}

fn kbo(e: &El) -> R<KboParams> {
    let mut s = e.seq()?;
    let w0 = s.req("w0")?.number()?;
    let mut weights = Vec::new();
    let ws = s.req("weights")?;
    let mut wss = ws.seq()?;
    for w in wss.many("symbolWeight") {
        let mut t = w.seq()?;
        let name = t.req("name")?.text()?;
        let arity = t.req("arity")?.number()?;
        let weight = t.req("weight")?.number()?;
        t.finish()?;
        weights.push(SymbolWeight { name, arity, weight });
    }
    wss.finish()?;
    let prec = s.req("precedence")?;
    let mut ps = prec.seq()?;
    let mut pairs = Vec::new();
    for p in ps.many("pair") {
        let mut t = p.seq()?;
        let greater = t.req("greater")?.text()?;
        let smaller = t.req("smaller")?.text()?;
        t.finish()?;
        pairs.push((greater, smaller));
    }
    ps.finish()?;
    s.finish()?;
    let precedence = Precedence::new(pairs).map_err(|err| prec.err(err.to_string()))?;
    KboParams::new(w0, weights, precedence).map_err(|err| e.err(err.to_string()))
}

fn poly(e: &El) -> R<PolyInterpretation> {
    let mut s = e.seq()?;
    let mut entries = Vec::new();
    for i in s.many("interpret") {
        let mut t = i.seq()?;
        let name = t.req("name")?.text()?;
        let arity = t.req("arity")?.number()?;
        let p = t.req("polynomial")?;
        t.finish()?;
        let mut ms = p.seq()?;
        let mut poly = Polynomial::zero();
        for m in ms.many("monomial") {
            let mut mt = m.seq()?;
            let coefficient: BigUint = mt.req("coefficient")?.number()?;
            let mut mono = Monomial::one();
            for pw in mt.many("power") {
                let mut pt = pw.seq()?;
                let v = pt.req("variable")?.number()?;
                let exp = pt.req("exponent")?.number()?;
                pt.finish()?;
                mono = mono.mul(&Monomial::power(ArgVar(v), exp));
            }
            mt.finish()?;
            poly = &poly + &Polynomial::term(coefficient, mono);
        }
        ms.finish()?;
        entries.push((name, arity, poly));
    }
    s.finish()?;
    PolyInterpretation::new(entries).map_err(|err| e.err(err.to_string()))
}

fn equivalence(e: &El) -> R<EquivalenceProof> {
    let mut s = e.seq()?;
    let subsumptions = s.many("ruleSubsumptionProof").iter().map(subsumption).collect::<R<Vec<_>>>()?;
    s.finish()?;
    Ok(EquivalenceProof { subsumptions })
}

fn subsumption(e: &El) -> R<RuleSubsumption> {
    let mut s = e.seq()?;
    let rule = rule(&s.req("rule")?)?;
    let conv = s.req("conversion")?;
    s.finish()?;
    let mut cs = conv.seq()?;
    let conversion = cs.many("conversionStep").iter().map(conversion_step).collect::<R<Vec<_>>>()?;
    cs.finish()?;
    Ok(RuleSubsumption { rule, conversion })
}

fn conversion_step(e: &El) -> R<ConversionStep> {
    let mut s = e.seq()?;
    let source = term(&s.req("source")?.single()?)?;
    let target = term(&s.req("target")?.single()?)?;
    let reference = if let Some(i) = s.opt("equation") {
        Reference::Equation(i.number()?)
    } else if let Some(i) = s.opt("derivedRule") {
        Reference::Derived(i.number()?)
    } else {
        return Err(e.err("expected equation or derivedRule"));
    };
    let position = position(&s.req("position")?)?;
    let direction = if let Some(d) = s.opt("leftToRight") {
        d.empty()?;
        Direction::LeftToRight
    } else if let Some(d) = s.opt("rightToLeft") {
        d.empty()?;
        Direction::RightToLeft
    } else {
        return Err(e.err("expected leftToRight or rightToLeft"));
    };
    let substitution = s.opt("substitution").map(|x| read_substitution(&x)).transpose()?;
    s.finish()?;
    Ok(ConversionStep { source, target, reference, position, direction, substitution })
}

fn position(e: &El) -> R<Position> {
    let mut s = e.seq()?;
    let mut idx = Vec::new();
    for i in s.many("index") {
        let k: usize = i.number()?;
        if k == 0 {
            return Err(i.err("positions are 1-based"));
        }
        idx.push(k);
    }
    s.finish()?;
    Ok(Position(idx))
}

fn read_substitution(e: &El) -> R<Substitution> {
    let mut s = e.seq()?;
    let mut sigma = Substitution::new();
    for b in s.many("binding") {
        let mut bs = b.seq()?;
        let x = bs.req("var")?.text()?;
        let t = term(bs.peek().ok_or_else(|| b.err("missing term"))?)?;
        bs.next += 1;
        bs.finish()?;
        if sigma.get(&x).is_some() {
            return Err(b.err(format!("variable {x} bound twice")));
        }
        sigma.insert(x, t);
    }
    s.finish()?;
    Ok(sigma)
}

fn loop_witness(e: &El) -> R<LoopWitness> {
    let mut s = e.seq()?;
    let start = term(&s.req("start")?.single()?)?;
    let rs = s.req("rewriteSteps")?;
    let context = position(&s.req("context")?)?;
    let substitution = read_substitution(&s.req("substitution")?)?;
    s.finish()?;
    let mut ss = rs.seq()?;
    let mut steps = Vec::new();
    for st in ss.many("rewriteStep") {
        let mut t = st.seq()?;
        let rule = t.req("ruleIndex")?.number()?;
        let position = position(&t.req("position")?)?;
        let substitution = read_substitution(&t.req("substitution")?)?;
        let reduct = t.opt("reduct").map(|r| term(&r.single()?)).transpose()?;
        t.finish()?;
        steps.push(LoopStep { rule, position, substitution, reduct });
    }
    ss.finish()?;
    Ok(LoopWitness { start, steps, context, substitution })
}

fn assumption(e: &El) -> R<ProofNode> {
    let mut s = e.seq()?;
    let claim = s.req("claim")?.text()?;
    let trs = s.opt("trs").map(|t| trs(&t)).transpose()?;
    s.finish()?;
    Ok(ProofNode::Assumption { claim, trs })
}

fn unknown(e: &El) -> R<UnknownStep> {
    let mut s = e.seq()?;
    let description = s.req("description")?.text()?;
    let property = s.opt("property").map(|p| p.text()).transpose()?;
    let mut subproofs = Vec::new();
    for sp in s.many("subproof") {
        let mut t = sp.seq()?;
        let trs = t.opt("trs").map(|x| trs(&x)).transpose()?;
        let proof = node(t.peek().ok_or_else(|| sp.err("missing proof"))?);
        t.next += 1;
        t.finish()?;
        subproofs.push(Subgoal { trs, proof });
    }
    s.finish()?;
    Ok(UnknownStep { description, property, subproofs })
}
