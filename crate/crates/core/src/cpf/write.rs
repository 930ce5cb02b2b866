use std::fmt::Write as _;

use crate::cert::{
    CertificationProblem, ConversionStep, Direction, EquivalenceProof, Input, LoopWitness, Origin, ProofNode,
    Reference, UnknownStep,
};
use crate::orders::{KboParams, PolyInterpretation, ReductionOrder};
use crate::term::{Position, Rule, Substitution, Term, Trs};

/// Stylesheet named by the processing instruction.
pub const STYLESHEET: &str = "cpfHTML.xsl";

struct Writer {
    out: String,
    depth: usize,
}

impl Writer {
    fn indent(&mut self) {
        for _ in 0..self.depth {
            self.out.push_str("  ");
        }
    }

    fn open(&mut self, name: &str) {
        self.indent();
        let _ = writeln!(self.out, "<{name}>");
        self.depth += 1;
    }

    fn close(&mut self, name: &str) {
        self.depth -= 1;
        self.indent();
        let _ = writeln!(self.out, "</{name}>");
    }

    fn empty(&mut self, name: &str) {
        self.indent();
        let _ = writeln!(self.out, "<{name}/>");
    }

    fn leaf(&mut self, name: &str, text: impl std::fmt::Display) {
        self.indent();
        let _ = writeln!(self.out, "<{name}>{}</{name}>", escape(&text.to_string()));
    }

    fn wrap(&mut self, name: &str, body: impl FnOnce(&mut Self)) {
        self.open(name);
        body(self);
        self.close(name);
    }

    fn term(&mut self, t: &Term) {
        match t {
            Term::Var(x) => self.leaf("var", x),
            Term::App(f, args) => self.wrap("funapp", |w| {
                w.leaf("name", f);
                for a in args {
                    w.wrap("arg", |w| w.term(a));
                }
            }),
        }
    }

    fn rule(&mut self, r: &Rule) {
        self.wrap("rule", |w| {
            w.wrap("lhs", |w| w.term(&r.lhs));
            w.wrap("rhs", |w| w.term(&r.rhs));
        });
    }

    fn rules<'a>(&mut self, rules: impl ExactSizeIterator<Item = &'a Rule>) {
        if rules.len() == 0 {
            self.empty("rules");
        } else {
            self.wrap("rules", |w| rules.for_each(|r| w.rule(r)));
        }
    }

    fn trs(&mut self, trs: &Trs) {
        self.wrap("trs", |w| w.rules(trs.rules.iter()));
    }

    fn position(&mut self, name: &str, p: &Position) {
        if p.is_root() {
            self.empty(name);
        } else {
            self.wrap(name, |w| p.indices().iter().for_each(|i| w.leaf("index", i)));
        }
    }

    fn substitution(&mut self, s: &Substitution) {
        if s.is_empty() {
            self.empty("substitution");
            return;
        }
        self.wrap("substitution", |w| {
            for (x, t) in s.iter() {
                w.wrap("binding", |w| {
                    w.leaf("var", x);
                    w.term(t);
                });
            }
        });
    }

    fn input(&mut self, input: &Input) {
        self.wrap("input", |w| match input {
            Input::Trs(trs) => w.wrap("trsInput", |w| w.trs(trs)),
            Input::Completion { equations, trs } => w.wrap("completionInput", |w| {
                let eqs: Vec<Rule> =
                    equations.equations.iter().map(|e| Rule::new(e.lhs.clone(), e.rhs.clone())).collect();
                w.wrap("equations", |w| w.rules(eqs.iter()));
                w.trs(trs);
            }),
            Input::Unsupported(name) => w.empty(name),
        });
    }

    fn origin(&mut self, o: &Origin) {
        self.wrap("origin", |w| {
            if o.tool.is_none() && o.version.is_none() {
                w.empty("proofOrigin");
            } else {
                w.wrap("proofOrigin", |w| {
                    w.wrap("tool", |w| {
                        if let Some(t) = &o.tool {
                            w.leaf("name", t);
                        }
                        if let Some(v) = &o.version {
                            w.leaf("version", v);
                        }
                    })
                });
            }
            if let Some(n) = &o.notes {
                w.leaf("notes", n);
            }
        });
    }

    fn node(&mut self, n: &ProofNode) {
        match n {
            ProofNode::Completion { wcr, termination, equivalence } => self.wrap("completionProof", |w| {
                w.wrap("wcrProof", |w| w.node(wcr));
                w.wrap("terminationProof", |w| w.node(termination));
                w.wrap("equivalenceProof", |w| w.node(equivalence));
            }),
            ProofNode::RuleRemoval { order, remaining, subproof } => self.wrap("ruleRemoval", |w| {
                w.wrap("orderingConstraintProof", |w| w.order(order));
                w.trs(remaining);
                w.wrap("subproof", |w| w.node(subproof));
            }),
            ProofNode::RIsEmpty => self.empty("rIsEmpty"),
            ProofNode::CriticalPairsJoinable { fuel: None } => self.empty("criticalPairsJoinable"),
            ProofNode::CriticalPairsJoinable { fuel: Some(f) } => {
                self.wrap("criticalPairsJoinable", |w| w.leaf("fuel", f))
            }
            ProofNode::Orthogonality => self.empty("orthogonality"),
            ProofNode::Newman { termination, wcr } => self.wrap("newman", |w| {
                w.wrap("terminationProof", |w| w.node(termination));
                w.wrap("wcrProof", |w| w.node(wcr));
            }),
            ProofNode::Equivalence(eq) => self.equivalence(eq),
            ProofNode::Loop(l) => self.loop_witness(l),
            ProofNode::Assumption { claim, trs } => self.wrap("assumption", |w| {
                w.leaf("claim", claim);
                if let Some(t) = trs {
                    w.trs(t);
                }
            }),
            ProofNode::Unknown(u) => self.unknown(u),
        }
    }

    fn order(&mut self, o: &ReductionOrder) {
        match o {
            ReductionOrder::Kbo(p) => self.kbo(p),
            ReductionOrder::Poly(i) => self.poly(i),
        }
    }

    fn kbo(&mut self, p: &KboParams) {
        self.wrap("knuthBendixOrder", |w| {
            w.leaf("w0", p.w0());
            w.wrap("weights", |w| {
                for sw in p.weights() {
                    w.wrap("symbolWeight", |w| {
                        w.leaf("name", &sw.name);
                        w.leaf("arity", sw.arity);
                        w.leaf("weight", sw.weight);
                    });
                }
            });
            w.wrap("precedence", |w| {
                for (g, s) in p.precedence().pairs() {
                    w.wrap("pair", |w| {
                        w.leaf("greater", g);
                        w.leaf("smaller", s);
                    });
                }
            });
        });
    }

    fn poly(&mut self, i: &PolyInterpretation) {
        self.wrap("polynomialInterpretation", |w| {
            for (name, si) in i.iter() {
                w.wrap("interpret", |w| {
                    w.leaf("name", name);
                    w.leaf("arity", si.arity);
                    w.wrap("polynomial", |w| {
                        for (m, c) in si.poly.terms() {
                            w.wrap("monomial", |w| {
                                w.leaf("coefficient", c);
                                for (v, e) in m.exponents() {
                                    w.wrap("power", |w| {
                                        w.leaf("variable", v.0);
                                        w.leaf("exponent", e);
                                    });
                                }
                            });
                        }
                    });
                });
            }
        });
    }

    fn equivalence(&mut self, eq: &EquivalenceProof) {
        self.wrap("subsumptionProof", |w| {
            for s in &eq.subsumptions {
                w.wrap("ruleSubsumptionProof", |w| {
                    w.rule(&s.rule);
                    w.wrap("conversion", |w| s.conversion.iter().for_each(|c| w.conversion_step(c)));
                });
            }
        });
    }

    fn conversion_step(&mut self, c: &ConversionStep) {
        self.wrap("conversionStep", |w| {
            w.wrap("source", |w| w.term(&c.source));
            w.wrap("target", |w| w.term(&c.target));
            match c.reference {
                Reference::Equation(i) => w.leaf("equation", i),
                Reference::Derived(i) => w.leaf("derivedRule", i),
            }
            w.position("position", &c.position);
            w.empty(match c.direction {
                Direction::LeftToRight => "leftToRight",
                Direction::RightToLeft => "rightToLeft",
            });
            if let Some(s) = &c.substitution {
                w.substitution(s);
            }
        });
    }

    fn loop_witness(&mut self, l: &LoopWitness) {
        self.wrap("loop", |w| {
            w.wrap("start", |w| w.term(&l.start));
            w.wrap("rewriteSteps", |w| {
                for s in &l.steps {
                    w.wrap("rewriteStep", |w| {
                        w.leaf("ruleIndex", s.rule);
                        w.position("position", &s.position);
                        w.substitution(&s.substitution);
                        if let Some(r) = &s.reduct {
                            w.wrap("reduct", |w| w.term(r));
                        }
                    });
                }
            });
            w.position("context", &l.context);
            w.substitution(&l.substitution);
        });
    }

    fn unknown(&mut self, u: &UnknownStep) {
        self.wrap("unknownProofStep", |w| {
            w.leaf("description", &u.description);
            if let Some(p) = &u.property {
                w.leaf("property", p);
            }
            for s in &u.subproofs {
                w.wrap("subproof", |w| {
                    if let Some(t) = &s.trs {
                        w.trs(t);
                    }
                    w.node(&s.proof);
                });
            }
        });
    }
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            _ => out.push(c),
        }
    }
    out
}

/// Canonical XML for a certificate: fixed child order, two-space indent.
/// With `stylesheet`, the processing instruction for browser rendering is
/// emitted after the XML declaration.
pub fn serialize_certificate(cp: &CertificationProblem, stylesheet: bool) -> String {
    let mut w = Writer { out: String::new(), depth: 0 };
    w.out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    if stylesheet {
        let _ = writeln!(w.out, "<?xml-stylesheet type=\"text/xsl\" href=\"{STYLESHEET}\"?>");
    }
    w.wrap("certificationProblem", |w| {
        w.input(&cp.input);
        w.leaf("cpfVersion", &cp.cpf_version);
        w.wrap("proof", |w| w.node(&cp.proof));
        w.origin(&cp.origin);
    });
    w.out
}
