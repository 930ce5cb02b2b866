//! HTML presentation of a certificate with numbered sections.

use std::fmt::Write as _;

use crate::cert::{CertificationProblem, Direction, Input, LoopWitness, NodePath, ProofNode, Reference, UnknownStep};
use crate::orders::{KboParams, PolyInterpretation, ReductionOrder};
use crate::term::Trs;

const STYLE: &str = "body { font-family: sans-serif; max-width: 60em; margin: 2em auto; }
ul.rules { list-style: none; font-family: monospace; }
.assumed { border-left: 4px solid #c60; padding-left: 1em; }
.unknown { font-style: italic; }";

fn esc(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            _ => out.push(c),
        }
    }
    out
}

/// Document title, from the input kind and the root technique.
pub fn title(cp: &CertificationProblem) -> &'static str {
    match (&cp.input, &cp.proof) {
        (Input::Completion { .. }, _) => "Completion Proof",
        (_, ProofNode::RuleRemoval { .. } | ProofNode::RIsEmpty) => "Termination Proof",
        (_, ProofNode::Loop(_)) => "Nontermination Proof",
        (_, ProofNode::Newman { .. } | ProofNode::Orthogonality) => "Confluence Proof",
        (_, ProofNode::CriticalPairsJoinable { .. }) => "Local Confluence Proof",
        _ => "Proof",
    }
}

struct Html {
    out: String,
}

impl Html {
    fn line(&mut self, s: impl AsRef<str>) {
        self.out.push_str(s.as_ref());
        self.out.push('\n');
    }

    fn rules<T: std::fmt::Display>(&mut self, items: impl IntoIterator<Item = T>) {
        self.line("<ul class=\"rules\">");
        for r in items {
            self.line(format!("<li>{}</li>", esc(&r.to_string())));
        }
        self.line("</ul>");
    }

    fn trs_or_empty(&mut self, trs: &Trs, empty: &str) {
        if trs.is_empty() {
            self.line(format!("<p>{empty}</p>"));
        } else {
            self.rules(&trs.rules);
        }
    }

    fn section(&mut self, node: &ProofNode, path: &NodePath) {
        let sec = path.section();
        self.line(format!("<h3 id=\"sec-{}\">{} {}</h3>", sec.replace('.', "-"), sec, node.title()));
        match node {
            ProofNode::Completion { .. } => {
                self.line("<p>Three things remain to be shown: R terminates, R is locally confluent, and R and E induce the same equational theory.</p>");
            }
            ProofNode::RuleRemoval { order, remaining, subproof } => {
                self.order(order);
                if remaining.is_empty() {
                    self.line("<p>Every rule is strictly decreasing, so all of them are removed.</p>");
                } else {
                    self.line("<p>Strictly decreasing rules are removed. The remaining rules are</p>");
                    self.rules(&remaining.rules);
                }
                if matches!(**subproof, ProofNode::RIsEmpty) && remaining.is_empty() {
                    self.line("<p>Nothing is left, hence termination follows.</p>");
                    return;
                }
            }
            ProofNode::RIsEmpty => self.line("<p>The system has no rules and is therefore terminating.</p>"),
            ProofNode::CriticalPairsJoinable { fuel } => {
                self.line("<p>Each critical pair is joinable: both sides have the same normal form.</p>");
                if let Some(f) = fuel {
                    self.line(format!("<p>Suggested normalization budget: {f} steps.</p>"));
                }
            }
            ProofNode::Orthogonality => {
                self.line("<p>The system is left-linear and has no critical pairs, so it is confluent.</p>");
            }
            ProofNode::Newman { .. } => {
                self.line("<p>Confluence follows from termination together with local confluence.</p>");
            }
            ProofNode::Equivalence(eq) => {
                self.line("<p>Rules of R are obtained from E by the following conversions, where later ones may reuse rules derived earlier.</p>");
                self.line("<ol start=\"0\" class=\"rules\">");
                for s in &eq.subsumptions {
                    let mut chain = match s.conversion.first() {
                        Some(c) => c.source.to_string(),
                        None => s.rule.lhs.to_string(),
                    };
                    for c in &s.conversion {
                        let arrow = match c.direction {
                            Direction::LeftToRight => "→",
                            Direction::RightToLeft => "←",
                        };
                        let by = match c.reference {
                            Reference::Equation(i) => format!("e{i}"),
                            Reference::Derived(i) => format!("d{i}"),
                        };
                        let _ = write!(chain, " {arrow}[{by}] {}", c.target);
                    }
                    self.line(format!("<li>{}<br>{}</li>", esc(&s.rule.to_string()), esc(&chain)));
                }
                self.line("</ol>");
                self.line("<p>In the other direction, both sides of every equation of E rewrite to the same normal form in R.</p>");
            }
            ProofNode::Loop(w) => self.loop_witness(w),
            ProofNode::Assumption { claim, trs } => {
                self.line(format!("<div class=\"assumed\"><p><strong>ASSUMED:</strong> {}</p>", esc(claim)));
                if let Some(t) = trs {
                    self.rules(&t.rules);
                }
                self.line("</div>");
            }
            ProofNode::Unknown(u) => self.unknown(u),
        }
        for (i, c) in node.children().into_iter().enumerate() {
            self.section(c, &path.child(i + 1));
        }
    }

    fn order(&mut self, order: &ReductionOrder) {
        match order {
            ReductionOrder::Kbo(p) => self.kbo(p),
            ReductionOrder::Poly(i) => self.poly(i),
        }
    }

    fn kbo(&mut self, p: &KboParams) {
        let weights: Vec<String> = p.weights().iter().map(|w| format!("w({}) = {}", w.name, w.weight)).collect();
        let prec: Vec<String> = p.precedence().pairs().iter().map(|(a, b)| format!("{a} > {b}")).collect();
        self.line(format!(
            "<p>Order: Knuth-Bendix order with w0 = {}, weights {} and precedence {}.</p>",
            p.w0(),
            esc(&or_none(&weights)),
            esc(&or_none(&prec))
        ));
    }

    fn poly(&mut self, i: &PolyInterpretation) {
        self.line("<p>Order: polynomial interpretation over the naturals with</p>");
        let items: Vec<String> = i
            .iter()
            .map(|(f, si)| {
                let args: Vec<String> = (1..=si.arity).map(|k| format!("x{k}")).collect();
                if args.is_empty() {
                    format!("[{f}] = {}", si.poly)
                } else {
                    format!("[{f}]({}) = {}", args.join(", "), si.poly)
                }
            })
            .collect();
        self.rules(items);
    }

    fn loop_witness(&mut self, w: &LoopWitness) {
        self.line(format!("<p>Starting from {}:</p>", esc(&w.start.to_string())));
        self.line("<ol class=\"rules\">");
        for s in &w.steps {
            let reduct = s.reduct.as_ref().map(|r| format!(", giving {r}")).unwrap_or_default();
            self.line(format!(
                "<li>rule {} at position {} with {}{}</li>",
                s.rule,
                s.position,
                esc(&s.substitution.to_string()),
                esc(&reduct)
            ));
        }
        self.line("</ol>");
        self.line(format!(
            "<p>At position {} the start term reappears instantiated by {}, so the reduction can be repeated forever.</p>",
            w.context,
            esc(&w.substitution.to_string())
        ));
    }

    fn unknown(&mut self, u: &UnknownStep) {
        self.line(format!("<p class=\"unknown\">{}</p>", esc(&u.description)));
        if let Some(p) = &u.property {
            self.line(format!("<p>Claimed property: {}</p>", esc(p)));
        }
        for s in &u.subproofs {
            if let Some(t) = &s.trs {
                self.line("<p>A subproof concerns the rules</p>");
                self.rules(&t.rules);
            }
        }
    }
}

fn or_none(items: &[String]) -> String {
    if items.is_empty() {
        "(none)".into()
    } else {
        items.join(", ")
    }
}

/// Renders the whole certificate. Output depends only on the input.
pub fn render_html(cp: &CertificationProblem) -> String {
    let mut h = Html { out: String::new() };
    let title = title(cp);
    h.line("<!DOCTYPE html>");
    h.line("<html>");
    h.line(format!("<head><meta charset=\"utf-8\"><title>{title}</title><style>{STYLE}</style></head>"));
    h.line("<body>");
    h.line(format!("<h1>{title}</h1>"));
    match (&cp.origin.tool, &cp.origin.version) {
        (Some(t), Some(v)) => h.line(format!("<p>by {} (version {})</p>", esc(t), esc(v))),
        (Some(t), None) => h.line(format!("<p>by {}</p>", esc(t))),
        _ => {}
    }
    h.line("<h2>Input</h2>");
    match &cp.input {
        Input::Completion { equations, trs } => {
            h.line("<p>Equations E:</p>");
            h.rules(&equations.equations);
            h.line("<p>Rewrite system R:</p>");
            h.trs_or_empty(trs, "(no rules)");
            h.line("<p>Claim: R is convergent and equivalent to E.</p>");
        }
        Input::Trs(trs) => {
            h.line("<p>Rewrite system R:</p>");
            h.trs_or_empty(trs, "(no rules)");
        }
        Input::Unsupported(name) => h.line(format!("<p>Input of kind {} (not supported).</p>", esc(name))),
    }
    h.line("<h2>Proof</h2>");
    h.section(&cp.proof, &NodePath::root());
    if let Some(n) = &cp.origin.notes {
        h.line(format!("<p><small>{}</small></p>", esc(n)));
    }
    h.line("</body>");
    h.line("</html>");
    h.out
}

/// Section headings (`h1`–`h3` text) in document order.
pub fn outline(html: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut rest = html;
    while let Some(i) = rest.find("<h") {
        rest = &rest[i + 2..];
        if !rest.starts_with(['1', '2', '3']) {
            continue;
        }
        let Some(open_end) = rest.find('>') else { break };
        let Some(close) = rest.find("</h") else { break };
        out.push(rest[open_end + 1..close].to_string());
        rest = &rest[close..];
    }
    out
}
