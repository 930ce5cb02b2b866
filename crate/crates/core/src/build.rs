//! Helpers for tools that emit certificates.

use crate::cert::{ConversionStep, Direction, EquivalenceProof, Reference, RuleSubsumption};
use crate::term::{match_term, EquationalSystem, Position, Rule, Substitution, Term};

/// One step of a derivation, before its intermediate terms are known.
#[derive(Clone, Debug)]
pub struct StepSpec {
    pub reference: Reference,
    pub direction: Direction,
    pub position: Position,
    /// Bindings for variables that occur only on the side being introduced.
    pub extra: Substitution,
}

impl StepSpec {
    pub fn new(reference: Reference, direction: Direction, position: impl Into<Position>) -> Self {
        StepSpec { reference, direction, position: position.into(), extra: Substitution::new() }
    }

    pub fn with(mut self, x: &str, t: Term) -> Self {
        self.extra.insert(x, t);
        self
    }
}

/// Builds an [`EquivalenceProof`] rule by rule, filling in the terms of
/// every conversion step.
pub struct EquivalenceBuilder<'a> {
    equations: &'a EquationalSystem,
    proof: EquivalenceProof,
}

impl<'a> EquivalenceBuilder<'a> {
    pub fn new(equations: &'a EquationalSystem) -> Self {
        EquivalenceBuilder { equations, proof: EquivalenceProof::default() }
    }

    /// Derives `rule` by the given steps, starting from its lhs. Returns the
    /// index under which later steps can refer to it.
    ///
    /// Steps store an explicit substitution only when `extra` is non-empty.
    pub fn derive(&mut self, rule: Rule, steps: &[StepSpec]) -> Result<usize, String> {
        let mut current = rule.lhs.clone();
        let mut conversion = Vec::new();
        for (j, spec) in steps.iter().enumerate() {
            let (l, r) = match spec.reference {
                Reference::Equation(i) => {
                    let e = self.equations.equations.get(i).ok_or(format!("step {j}: no equation {i}"))?;
                    (&e.lhs, &e.rhs)
                }
                Reference::Derived(i) => {
                    let s = self.proof.subsumptions.get(i).ok_or(format!("step {j}: no derived rule {i}"))?;
                    (&s.rule.lhs, &s.rule.rhs)
                }
            };
            let (from, to) = match spec.direction {
                Direction::LeftToRight => (l, r),
                Direction::RightToLeft => (r, l),
            };
            let sub = current.subterm(&spec.position).ok_or(format!("step {j}: no position {}", spec.position))?;
            let mut sigma = match_term(from, sub).ok_or(format!("step {j}: {from} does not match {sub}"))?;
            for (x, t) in spec.extra.iter() {
                sigma.insert(x, t.clone());
            }
            let target = current.replace_at(&spec.position, to.apply(&sigma)).expect("position exists");
            let substitution = (!spec.extra.is_empty()).then_some(sigma);
            conversion.push(ConversionStep {
                source: current,
                target: target.clone(),
                reference: spec.reference,
                position: spec.position.clone(),
                direction: spec.direction,
                substitution,
            });
            current = target;
        }
        if current != rule.rhs {
            return Err(format!("derivation of {rule} ends at {current}"));
        }
        self.proof.subsumptions.push(RuleSubsumption { rule, conversion });
        Ok(self.proof.subsumptions.len() - 1)
    }

    pub fn finish(self) -> EquivalenceProof {
        self.proof
    }
}
