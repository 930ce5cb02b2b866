//! In-memory certificates: the certification problem and its proof tree.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::orders::ReductionOrder;
use crate::term::{EquationalSystem, Position, Rule, Signature, Substitution, Term, TermError, Trs};

/// A complete certificate: input, format version, proof and origin.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CertificationProblem {
    pub input: Input,
    pub cpf_version: String,
    pub proof: ProofNode,
    pub origin: Origin,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Input {
    /// A single TRS; the property is determined by the proof.
    Trs(Trs),
    /// Equations together with the completed TRS.
    Completion { equations: EquationalSystem, trs: Trs },
    /// An input kind this certifier does not handle, by element name.
    Unsupported(String),
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Origin {
    pub tool: Option<String>,
    pub version: Option<String>,
    pub notes: Option<String>,
}

/// A node of the inference tree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ProofNode {
    Completion {
        wcr: Box<ProofNode>,
        termination: Box<ProofNode>,
        equivalence: Box<ProofNode>,
    },
    RuleRemoval {
        order: ReductionOrder,
        remaining: Trs,
        subproof: Box<ProofNode>,
    },
    RIsEmpty,
    CriticalPairsJoinable {
        fuel: Option<u64>,
    },
    Orthogonality,
    Newman {
        termination: Box<ProofNode>,
        wcr: Box<ProofNode>,
    },
    Equivalence(EquivalenceProof),
    Loop(LoopWitness),
    /// An open leaf. `trs` optionally restates the object the claim is about.
    Assumption {
        claim: String,
        trs: Option<Trs>,
    },
    Unknown(UnknownStep),
}

impl ProofNode {
    /// Subproofs in checking (and section numbering) order.
    pub fn children(&self) -> Vec<&ProofNode> {
        match self {
            ProofNode::Completion { wcr, termination, equivalence } => vec![termination, wcr, equivalence],
            ProofNode::RuleRemoval { subproof, .. } => vec![subproof],
            ProofNode::Newman { termination, wcr } => vec![termination, wcr],
            ProofNode::Unknown(u) => u.subproofs.iter().map(|s| &s.proof).collect(),
            _ => Vec::new(),
        }
    }

    fn children_mut(&mut self) -> Vec<&mut ProofNode> {
        match self {
            ProofNode::Completion { wcr, termination, equivalence } => vec![termination, wcr, equivalence],
            ProofNode::RuleRemoval { subproof, .. } => vec![subproof],
            ProofNode::Newman { termination, wcr } => vec![termination, wcr],
            ProofNode::Unknown(u) => u.subproofs.iter_mut().map(|s| &mut s.proof).collect(),
            _ => Vec::new(),
        }
    }

    /// The node at a section path such as `[1, 2]`; `[1]` is `self`.
    pub fn at_mut(&mut self, path: &NodePath) -> Option<&mut ProofNode> {
        let (first, rest) = path.0.split_first()?;
        if *first != 1 {
            return None;
        }
        let mut node = self;
        for &i in rest {
            node = node.children_mut().into_iter().nth(i.checked_sub(1)?)?;
        }
        Some(node)
    }

    pub fn at(&self, path: &NodePath) -> Option<&ProofNode> {
        let (first, rest) = path.0.split_first()?;
        if *first != 1 {
            return None;
        }
        let mut node = self;
        for &i in rest {
            node = node.children().into_iter().nth(i.checked_sub(1)?)?;
        }
        Some(node)
    }

    /// Paths of all nodes, in depth-first order.
    pub fn paths(&self) -> Vec<NodePath> {
        fn go(n: &ProofNode, p: NodePath, out: &mut Vec<NodePath>) {
            out.push(p.clone());
            for (i, c) in n.children().into_iter().enumerate() {
                go(c, p.child(i + 1), out);
            }
        }
        let mut out = Vec::new();
        go(self, NodePath::root(), &mut out);
        out
    }

    /// Human-readable technique name.
    pub fn title(&self) -> &'static str {
        match self {
            ProofNode::Completion { .. } => "Completion Proof",
            ProofNode::RuleRemoval { .. } => "Rule Removal",
            ProofNode::RIsEmpty => "R is Empty",
            ProofNode::CriticalPairsJoinable { .. } => "Local Confluence Proof",
            ProofNode::Orthogonality => "Confluence by Orthogonality",
            ProofNode::Newman { .. } => "Confluence by Newman's Lemma",
            ProofNode::Equivalence(_) => "Equivalence Proof of R and E",
            ProofNode::Loop(_) => "Loop",
            ProofNode::Assumption { .. } => "Assumption",
            ProofNode::Unknown(_) => "Unknown Proof Step",
        }
    }
}

/// Position of a node in the proof tree, as section numbers (root is `1`).
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct NodePath(pub Vec<usize>);

impl NodePath {
    pub fn root() -> Self {
        NodePath(vec![1])
    }

    pub fn child(&self, i: usize) -> Self {
        let mut v = self.0.clone();
        v.push(i);
        NodePath(v)
    }

    /// Section number, e.g. `1.2`.
    pub fn section(&self) -> String {
        self.0.iter().map(usize::to_string).collect::<Vec<_>>().join(".")
    }

    pub fn is_prefix_of(&self, other: &NodePath) -> bool {
        other.0.starts_with(&self.0)
    }
}

impl fmt::Display for NodePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "proof/{}", self.section())
    }
}

/// Both directions of `E ≡ R`: conversions for the rules, normal forms for the equations.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct EquivalenceProof {
    pub subsumptions: Vec<RuleSubsumption>,
}

/// A rule derived by a conversion. Later subsumptions may use it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RuleSubsumption {
    pub rule: Rule,
    pub conversion: Vec<ConversionStep>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Reference {
    /// index into E
    Equation(usize),
    /// index of an earlier subsumption
    Derived(usize),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Direction {
    LeftToRight,
    RightToLeft,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConversionStep {
    pub source: Term,
    pub target: Term,
    pub reference: Reference,
    pub position: Position,
    pub direction: Direction,
    pub substitution: Option<Substitution>,
}

/// `start →⁺ C[start σ]` where the hole of `C` is at `context`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LoopWitness {
    pub start: Term,
    pub steps: Vec<LoopStep>,
    pub context: Position,
    pub substitution: Substitution,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LoopStep {
    pub rule: usize,
    pub position: Position,
    pub substitution: Substitution,
    /// The term the step claims to produce, if stated.
    pub reduct: Option<Term>,
}

/// A step the certifier does not know: an implication from the subproofs'
/// properties to the current goal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UnknownStep {
    pub description: String,
    /// Name of an unknown property the step establishes, if any.
    pub property: Option<String>,
    pub subproofs: Vec<Subgoal>,
}

impl UnknownStep {
    pub fn new(description: impl Into<String>) -> Self {
        UnknownStep { description: description.into(), property: None, subproofs: Vec::new() }
    }
}

/// A subproof of an unknown step, optionally about a different TRS.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subgoal {
    pub trs: Option<Trs>,
    pub proof: ProofNode,
}

/// Outcome of checking a certificate.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Verdict {
    Certified,
    PartiallyCertified(Vec<String>),
    Rejected { path: String, reason: String },
    Unsupported(String),
}

impl Verdict {
    pub fn rejected(path: impl fmt::Display, reason: impl Into<String>) -> Self {
        Verdict::Rejected { path: path.to_string(), reason: reason.into() }
    }

    pub fn kind(&self) -> VerdictKind {
        match self {
            Verdict::Certified => VerdictKind::Certified,
            Verdict::PartiallyCertified(_) => VerdictKind::PartiallyCertified,
            Verdict::Rejected { .. } => VerdictKind::Rejected,
            Verdict::Unsupported(_) => VerdictKind::Unsupported,
        }
    }

    pub fn is_certified(&self) -> bool {
        *self == Verdict::Certified
    }

    pub fn obligations(&self) -> &[String] {
        match self {
            Verdict::PartiallyCertified(o) => o,
            _ => &[],
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Certified => write!(f, "CERTIFIED"),
            Verdict::PartiallyCertified(obs) => {
                write!(f, "PARTIALLY CERTIFIED")?;
                for o in obs {
                    write!(f, "\n  open: {o}")?;
                }
                Ok(())
            }
            Verdict::Rejected { path, reason } => write!(f, "REJECTED at {path}: {reason}"),
            Verdict::Unsupported(e) => write!(f, "UNSUPPORTED: {e}"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum VerdictKind {
    Certified,
    PartiallyCertified,
    Unsupported,
    Rejected,
}

impl VerdictKind {
    pub fn as_str(self) -> &'static str {
        match self {
            VerdictKind::Certified => "CERTIFIED",
            VerdictKind::PartiallyCertified => "PARTIALLY_CERTIFIED",
            VerdictKind::Unsupported => "UNSUPPORTED",
            VerdictKind::Rejected => "REJECTED",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [Self::Certified, Self::PartiallyCertified, Self::Unsupported, Self::Rejected]
            .into_iter()
            .find(|k| k.as_str() == s)
    }
}

/// Flat, serializable form of a verdict.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct VerdictSummary {
    pub verdict: String,
    pub path: Option<String>,
    pub obligations: Vec<String>,
    pub reason: Option<String>,
}

impl From<&Verdict> for VerdictSummary {
    fn from(v: &Verdict) -> Self {
        let (path, reason) = match v {
            Verdict::Rejected { path, reason } => (Some(path.clone()), Some(reason.clone())),
            Verdict::Unsupported(e) => (None, Some(e.clone())),
            _ => (None, None),
        };
        VerdictSummary { verdict: v.kind().as_str().to_string(), path, obligations: v.obligations().to_vec(), reason }
    }
}

impl VerdictSummary {
    /// The verdict this summary describes, if it is consistent.
    pub fn to_verdict(&self) -> Option<Verdict> {
        let v = match VerdictKind::parse(&self.verdict)? {
            VerdictKind::Certified => Verdict::Certified,
            VerdictKind::PartiallyCertified => Verdict::PartiallyCertified(self.obligations.clone()),
            VerdictKind::Rejected => Verdict::rejected(self.path.as_deref()?, self.reason.clone()?),
            VerdictKind::Unsupported => Verdict::Unsupported(self.reason.clone()?),
        };
        (VerdictSummary::from(&v) == *self).then_some(v)
    }
}

/// A violated invariant of the certificate model.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StructuralDefect {
    pub path: String,
    pub message: String,
}

impl fmt::Display for StructuralDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

struct Validator {
    defects: Vec<StructuralDefect>,
}

impl Validator {
    fn defect(&mut self, path: impl fmt::Display, message: impl Into<String>) {
        self.defects.push(StructuralDefect { path: path.to_string(), message: message.into() });
    }

    fn rules(&mut self, path: &str, trs: &Trs, sig: &mut Signature) {
        for (i, r) in trs.rules.iter().enumerate() {
            if let Err(e) = r.check() {
                self.defect(path, format!("rule {i} ({r}): {e}"));
            }
            self.signature(path, [&r.lhs, &r.rhs], sig);
        }
    }

    fn signature<'a>(&mut self, path: &str, terms: impl IntoIterator<Item = &'a Term>, sig: &mut Signature) {
        for t in terms {
            if let Err(e @ TermError::ArityClash { .. }) = t.collect_signature(sig) {
                self.defect(path, e.to_string());
            }
        }
    }

    fn node(&mut self, node: &ProofNode, path: NodePath) {
        match node {
            ProofNode::RuleRemoval { remaining, .. } => {
                self.rules(&path.to_string(), remaining, &mut Signature::new());
            }
            ProofNode::Equivalence(eq) => self.equivalence(eq, &path),
            ProofNode::Loop(w) => {
                if w.steps.is_empty() {
                    self.defect(&path, "loop without rewrite steps");
                }
            }
            ProofNode::Unknown(u) => {
                if u.description.trim().is_empty() {
                    self.defect(&path, "unknown proof step without description");
                }
                for s in &u.subproofs {
                    if let Some(trs) = &s.trs {
                        self.rules(&path.to_string(), trs, &mut Signature::new());
                    }
                }
            }
            ProofNode::Assumption { trs: Some(trs), .. } => {
                self.rules(&path.to_string(), trs, &mut Signature::new());
            }
            _ => {}
        }
        for (i, c) in node.children().into_iter().enumerate() {
            self.node(c, path.child(i + 1));
        }
    }

    fn equivalence(&mut self, eq: &EquivalenceProof, path: &NodePath) {
        for (k, sub) in eq.subsumptions.iter().enumerate() {
            if let Err(e) = sub.rule.check() {
                self.defect(path, format!("derived rule {k} ({}): {e}", sub.rule));
            }
            if sub.conversion.is_empty() {
                self.defect(path, format!("derived rule {k}: empty conversion"));
            }
            for (j, step) in sub.conversion.iter().enumerate() {
                if let Reference::Derived(r) = step.reference {
                    if r >= k {
                        self.defect(
                            path,
                            format!("derived rule {k}, step {j}: forward reference in sharing (to derived rule {r})"),
                        );
                    }
                }
            }
            for (j, w) in sub.conversion.windows(2).enumerate() {
                if w[0].target != w[1].source {
                    self.defect(path, format!("derived rule {k}, step {}: broken conversion chain", j + 1));
                }
            }
        }
    }
}

/// Checks every model invariant. Returns an empty list for a well-formed certificate.
pub fn validate_structure(cp: &CertificationProblem) -> Vec<StructuralDefect> {
    let mut v = Validator { defects: Vec::new() };
    match &cp.input {
        Input::Trs(trs) => v.rules("input/trs", trs, &mut Signature::new()),
        Input::Completion { equations, trs } => {
            let mut sig = Signature::new();
            v.signature("input/equations", equations.equations.iter().flat_map(|e| [&e.lhs, &e.rhs]), &mut sig);
            v.rules("input/trs", trs, &mut sig);
        }
        Input::Unsupported(_) => {}
    }
    if cp.cpf_version.trim().is_empty() {
        v.defect("cpfVersion", "empty version");
    }
    v.node(&cp.proof, NodePath::root());
    v.defects
}
