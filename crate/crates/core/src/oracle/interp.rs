use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use core::fmt;

use crate::constraint::NeutrosophicConstraint;
use crate::degree::{Degree, DegreePair};
use crate::kb::{AxiomKind, KnowledgeBase, NeutrosophicAssertion, TerminologicalAxiom};
use crate::syntax::{Assertion, Concept, Object};

/// Elements of a finite domain are `0..domain_size`.
pub type Element = usize;

/// Values of tableau variables.
pub type Assignment = BTreeMap<u32, Element>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EvalError {
    UnknownElement(Element),
    UnmappedIndividual(String),
    UnassignedVariable(u32),
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::UnknownElement(e) => write!(f, "element {e} is not in the domain"),
            EvalError::UnmappedIndividual(a) => write!(f, "individual {a} is not interpreted"),
            EvalError::UnassignedVariable(k) => write!(f, "variable x{k} has no value"),
        }
    }
}

impl core::error::Error for EvalError {}

/// A neutrosophic interpretation over a finite domain.
///
/// Table entries that are absent read as `⟨0, 1⟩`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FiniteInterpretation {
    pub domain_size: usize,
    pub individuals: BTreeMap<String, Element>,
    pub concepts: BTreeMap<(String, Element), DegreePair>,
    pub roles: BTreeMap<(String, Element, Element), DegreePair>,
}

impl FiniteInterpretation {
    pub fn new(domain_size: usize) -> Self {
        FiniteInterpretation { domain_size, ..Default::default() }
    }

    pub fn domain(&self) -> core::ops::Range<Element> {
        0..self.domain_size
    }

    pub fn map_individual(&mut self, name: impl Into<String>, e: Element) -> &mut Self {
        self.individuals.insert(name.into(), e);
        self
    }

    pub fn set_concept(&mut self, name: impl Into<String>, e: Element, v: DegreePair) -> &mut Self {
        self.concepts.insert((name.into(), e), v);
        self
    }

    pub fn set_role(
        &mut self,
        name: impl Into<String>,
        from: Element,
        to: Element,
        v: DegreePair,
    ) -> &mut Self {
        self.roles.insert((name.into(), from, to), v);
        self
    }

    /// Distinct individuals denote distinct elements.
    pub fn is_injective(&self) -> bool {
        let images: BTreeSet<_> = self.individuals.values().collect();
        images.len() == self.individuals.len()
    }

    pub fn concept_value(&self, name: &str, e: Element) -> DegreePair {
        let key = (String::from(name), e);
        self.concepts.get(&key).copied().unwrap_or(DegreePair::BOTTOM)
    }

    pub fn role_value(&self, name: &str, from: Element, to: Element) -> DegreePair {
        let key = (String::from(name), from, to);
        self.roles.get(&key).copied().unwrap_or(DegreePair::BOTTOM)
    }

    pub fn eval_concept(&self, c: &Concept, d: Element) -> Result<DegreePair, EvalError> {
        if d >= self.domain_size {
            return Err(EvalError::UnknownElement(d));
        }
        Ok(self.eval(c, d))
    }

    fn eval(&self, c: &Concept, d: Element) -> DegreePair {
        match c {
            Concept::Top => DegreePair::TOP,
            Concept::Bottom => DegreePair::BOTTOM,
            Concept::Atomic(a) => self.concept_value(a, d),
            Concept::And(l, r) => {
                let (x, y) = (self.eval(l, d), self.eval(r, d));
                DegreePair::new(x.n.min(y.n), x.m.max(y.m))
            }
            Concept::Or(l, r) => {
                let (x, y) = (self.eval(l, d), self.eval(r, d));
                DegreePair::new(x.n.max(y.n), x.m.min(y.m))
            }
            Concept::Not(inner) => self.eval(inner, d).swap(),
            Concept::Forall(role, filler) => {
                // inf over d' of max(R.f, C.t); sup over d' of min(R.t, C.f)
                let mut t = Degree::ONE;
                let mut f = Degree::ZERO;
                for e in self.domain() {
                    let r = self.role_value(role, d, e);
                    let v = self.eval(filler, e);
                    t = t.min(r.m.max(v.n));
                    f = f.max(r.n.min(v.m));
                }
                DegreePair::new(t, f)
            }
            Concept::Exists(role, filler) => {
                // sup over d' of min(R.t, C.t); inf over d' of max(R.f, C.f)
                let mut t = Degree::ZERO;
                let mut f = Degree::ONE;
                for e in self.domain() {
                    let r = self.role_value(role, d, e);
                    let v = self.eval(filler, e);
                    t = t.max(r.n.min(v.n));
                    f = f.min(r.m.max(v.m));
                }
                DegreePair::new(t, f)
            }
        }
    }

    pub fn resolve(&self, o: &Object, vars: &Assignment) -> Result<Element, EvalError> {
        let e = match o {
            Object::Individual(a) => {
                *self.individuals.get(a).ok_or_else(|| EvalError::UnmappedIndividual(a.clone()))?
            }
            Object::Variable(k) => *vars.get(k).ok_or(EvalError::UnassignedVariable(*k))?,
        };
        if e >= self.domain_size {
            return Err(EvalError::UnknownElement(e));
        }
        Ok(e)
    }

    /// The (truth, falsity) value of an assertion.
    pub fn value_of(&self, a: &Assertion, vars: &Assignment) -> Result<DegreePair, EvalError> {
        match a {
            Assertion::Concept { concept, subject } => {
                let d = self.resolve(subject, vars)?;
                Ok(self.eval(concept, d))
            }
            Assertion::Role { role, subject, object } => {
                let d = self.resolve(subject, vars)?;
                let e = self.resolve(object, vars)?;
                Ok(self.role_value(role, d, e))
            }
        }
    }

    pub fn satisfies(&self, c: &NeutrosophicConstraint, vars: &Assignment) -> Result<bool, EvalError> {
        Ok(c.admits(self.value_of(&c.assertion, vars)?))
    }

    pub fn satisfies_assertion(&self, a: &NeutrosophicAssertion) -> Result<bool, EvalError> {
        self.satisfies(&a.to_constraint(), &Assignment::new())
    }

    pub fn satisfies_axiom(&self, ax: &TerminologicalAxiom) -> bool {
        self.domain().all(|d| {
            let lhs = self.concept_value(&ax.lhs, d);
            let rhs = self.eval(&ax.rhs, d);
            match ax.kind {
                AxiomKind::Specialization => lhs.n <= rhs.n && lhs.m >= rhs.m,
                AxiomKind::Definition => lhs == rhs,
            }
        })
    }

    pub fn is_model_of(&self, kb: &KnowledgeBase) -> Result<bool, EvalError> {
        for a in &kb.assertions {
            if !self.satisfies_assertion(a)? {
                return Ok(false);
            }
        }
        Ok(kb.terminology.iter().all(|ax| self.satisfies_axiom(ax)))
    }
}
