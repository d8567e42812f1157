//! Entailment, subsumption and best truth-value bounds, decided by refutation.
//!
//! `Σ ⊨ φ` holds iff `Σ` together with the negation of `φ` has no model. The
//! negation of a two-sided constraint is a disjunction of two one-sided
//! constraints, so each half is refuted separately.

use alloc::vec::Vec;
use core::fmt;

use crate::constraint::NeutrosophicConstraint as Nc;
use crate::degree::{Degree, DegreePair};
use crate::kb::{KnowledgeBase, NeutrosophicAssertion, TerminologicalAxiom, Unfolder, Violation};
use crate::syntax::{Assertion, Concept, Object};
use crate::tableau::{complete, CompletionResult, TableauConfig, TableauError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReasonerError {
    Invalid(Vec<Violation>),
    Exhausted(TableauError),
    /// Upper bounds of role assertions cannot go through the negation route,
    /// since roles have no negation.
    RoleLub,
}

impl fmt::Display for ReasonerError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReasonerError::Invalid(vs) => {
                f.write_str("invalid knowledge base")?;
                for v in vs {
                    write!(f, "; {v}")?;
                }
                Ok(())
            }
            ReasonerError::Exhausted(e) => e.fmt(f),
            ReasonerError::RoleLub => f.write_str("least upper bounds of role assertions are not supported"),
        }
    }
}

impl core::error::Error for ReasonerError {}

impl From<TableauError> for ReasonerError {
    fn from(e: TableauError) -> Self {
        ReasonerError::Exhausted(e)
    }
}

impl From<Vec<Violation>> for ReasonerError {
    fn from(vs: Vec<Violation>) -> Self {
        ReasonerError::Invalid(vs)
    }
}

/// One refuted (or not) half of a negated query.
#[derive(Clone, Debug)]
pub struct Refutation {
    pub negated: Nc,
    pub result: CompletionResult,
}

#[derive(Clone, Debug)]
pub struct Entailment {
    pub holds: bool,
    /// Refutation attempts in order; stops at the first one that fails.
    pub refutations: Vec<Refutation>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BtvbKind {
    Glb,
    Lub,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BtvbResult {
    pub bound: DegreePair,
    pub kind: BtvbKind,
    /// Entailment checks spent on the search.
    pub candidates_examined: usize,
}

/// A knowledge base expanded once and queried many times.
#[derive(Clone, Debug)]
pub struct Prepared {
    unfolder: Unfolder,
    constraints: Vec<Nc>,
    degrees: Vec<Degree>,
}

impl Prepared {
    pub fn new(kb: &KnowledgeBase) -> Result<Self, ReasonerError> {
        let expanded = kb.expand()?;
        let unfolder = Unfolder::new(&kb.terminology)?;
        let mut degrees: Vec<Degree> = kb.degrees().into_iter().chain([Degree::ZERO, Degree::ONE]).collect();
        degrees.sort();
        degrees.dedup();
        Ok(Prepared { unfolder, constraints: expanded.constraints(), degrees })
    }

    /// The expanded assertions as constraints.
    pub fn constraints(&self) -> &[Nc] {
        &self.constraints
    }

    /// Degrees mentioned by the knowledge base, with 0 and 1, ascending.
    pub fn degrees(&self) -> &[Degree] {
        &self.degrees
    }

    pub fn unfold(&self, a: &Assertion) -> Assertion {
        a.map_concept(|c| self.unfolder.unfold(c))
    }
}

#[derive(Clone, Debug, Default)]
pub struct Reasoner {
    pub config: TableauConfig,
}

impl Reasoner {
    pub fn new(config: TableauConfig) -> Self {
        Reasoner { config }
    }

    pub fn satisfiable(&self, kb: &KnowledgeBase) -> Result<CompletionResult, ReasonerError> {
        let p = Prepared::new(kb)?;
        Ok(complete(p.constraints, &self.config)?)
    }

    pub fn entails(&self, kb: &KnowledgeBase, phi: &NeutrosophicAssertion) -> Result<bool, ReasonerError> {
        self.entails_constraint(&Prepared::new(kb)?, &phi.to_constraint())
    }

    /// Entailment of an arbitrary, possibly strict, constraint.
    pub fn entails_constraint(&self, kb: &Prepared, phi: &Nc) -> Result<bool, ReasonerError> {
        Ok(self.explain_constraint(kb, phi)?.holds)
    }

    pub fn explain(
        &self,
        kb: &KnowledgeBase,
        phi: &NeutrosophicAssertion,
    ) -> Result<Entailment, ReasonerError> {
        self.explain_constraint(&Prepared::new(kb)?, &phi.to_constraint())
    }

    pub fn explain_constraint(&self, kb: &Prepared, phi: &Nc) -> Result<Entailment, ReasonerError> {
        let phi = Nc { assertion: kb.unfold(&phi.assertion), ..phi.clone() };
        let mut refutations = Vec::new();
        for negated in phi.negation() {
            let mut s = kb.constraints.clone();
            s.push(negated.clone());
            let result = complete(s, &self.config)?;
            let refuted = !result.is_satisfiable();
            refutations.push(Refutation { negated, result });
            if !refuted {
                return Ok(Entailment { holds: false, refutations });
            }
        }
        Ok(Entailment { holds: true, refutations })
    }

    /// `C ⊑ D` under the terminology: on a fresh individual, every pair of
    /// bounds from the five quarter degrees on `C` carries over to `D`.
    pub fn subsumes(
        &self,
        terminology: &[TerminologicalAxiom],
        sub: &Concept,
        sup: &Concept,
    ) -> Result<bool, ReasonerError> {
        let quarters: Vec<Degree> = (0..=4).map(|k| crate::degree::deg(k, 4)).collect();
        self.subsumes_on(terminology, sub, sup, &quarters)
    }

    /// Subsumption checked on every pair of bounds drawn from `grid`.
    pub fn subsumes_on(
        &self,
        terminology: &[TerminologicalAxiom],
        sub: &Concept,
        sup: &Concept,
        grid: &[Degree],
    ) -> Result<bool, ReasonerError> {
        let unfolder = Unfolder::new(terminology)?;
        let a = Object::individual("a");
        let c = Assertion::concept(unfolder.unfold(sub), a.clone());
        let d = Assertion::concept(unfolder.unfold(sup), a);
        for &n in grid {
            for &m in grid {
                let kb = Prepared {
                    unfolder: Unfolder::default(),
                    constraints: alloc::vec![Nc::geq_leq(c.clone(), n, m)],
                    degrees: Vec::new(),
                };
                if !self.entails_constraint(&kb, &Nc::geq_leq(d.clone(), n, m))? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// The greatest lower bound: the largest entailed truth lower bound and
    /// the smallest entailed falsity upper bound. Each is searched among the
    /// knowledge base's degrees by bisection, as the entailed values form an
    /// initial (truth) or final (falsity) segment of the sorted candidates.
    pub fn glb(&self, kb: &Prepared, alpha: &Assertion) -> Result<BtvbResult, ReasonerError> {
        let mut examined = 0;
        let t = self.last_entailed(kb, &mut examined, |n| Nc::geq_leq(alpha.clone(), n, Degree::ONE))?;
        let f = self.first_entailed(kb, &mut examined, |m| Nc::geq_leq(alpha.clone(), Degree::ZERO, m))?;
        Ok(BtvbResult { bound: DegreePair::new(t, f), kind: BtvbKind::Glb, candidates_examined: examined })
    }

    /// The least upper bound, searched directly.
    pub fn lub(&self, kb: &Prepared, alpha: &Assertion) -> Result<BtvbResult, ReasonerError> {
        let mut examined = 0;
        let t = self.first_entailed(kb, &mut examined, |n| Nc::leq_geq(alpha.clone(), n, Degree::ZERO))?;
        let f = self.last_entailed(kb, &mut examined, |m| Nc::leq_geq(alpha.clone(), Degree::ONE, m))?;
        Ok(BtvbResult { bound: DegreePair::new(t, f), kind: BtvbKind::Lub, candidates_examined: examined })
    }

    /// The least upper bound of `C(a)` read off the greatest lower bound of
    /// `¬C(a)`.
    pub fn lub_via_glb(&self, kb: &Prepared, alpha: &Assertion) -> Result<BtvbResult, ReasonerError> {
        let Assertion::Concept { concept, subject } = alpha else {
            return Err(ReasonerError::RoleLub);
        };
        let negated = Assertion::concept(Concept::not(concept.clone()), subject.clone());
        let g = self.glb(kb, &negated)?;
        Ok(BtvbResult { bound: g.bound.swap(), kind: BtvbKind::Lub, ..g })
    }

    /// Largest candidate `d` with `make(d)` entailed, given that entailment
    /// holds at 0 and is downward closed.
    fn last_entailed(
        &self,
        kb: &Prepared,
        examined: &mut usize,
        make: impl Fn(Degree) -> Nc,
    ) -> Result<Degree, ReasonerError> {
        let ds = kb.degrees();
        let (mut lo, mut hi) = (0, ds.len());
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            *examined += 1;
            if self.entails_constraint(kb, &make(ds[mid]))? {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(ds[lo])
    }

    /// Smallest candidate `d` with `make(d)` entailed, given that entailment
    /// holds at 1 and is upward closed.
    fn first_entailed(
        &self,
        kb: &Prepared,
        examined: &mut usize,
        make: impl Fn(Degree) -> Nc,
    ) -> Result<Degree, ReasonerError> {
        let ds = kb.degrees();
        let (mut lo, mut hi) = (0, ds.len() - 1);
        *examined += 1;
        if self.entails_constraint(kb, &make(ds[0]))? {
            return Ok(ds[0]);
        }
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            *examined += 1;
            if self.entails_constraint(kb, &make(ds[mid]))? {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(ds[hi])
    }
}
