//! Knowledge bases, acyclic terminologies and their expansion, and the maps
//! between fuzzy and neutrosophic knowledge bases.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::constraint::{Bound, Direction, NeutrosophicConstraint};
use crate::degree::{Degree, DegreePair};
use crate::syntax::{Assertion, Concept};

/// Which pair of relations an assertion uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    /// `⟨α: ≥n, ≤m⟩`
    GeqLeq,
    /// `⟨α: ≤n, ≥m⟩`
    LeqGeq,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NeutrosophicAssertion {
    pub assertion: Assertion,
    pub sign: Sign,
    pub bounds: DegreePair,
}

impl NeutrosophicAssertion {
    pub fn new(assertion: Assertion, sign: Sign, n: Degree, m: Degree) -> Self {
        NeutrosophicAssertion { assertion, sign, bounds: DegreePair::new(n, m) }
    }

    pub fn geq_leq(assertion: Assertion, n: Degree, m: Degree) -> Self {
        Self::new(assertion, Sign::GeqLeq, n, m)
    }

    pub fn leq_geq(assertion: Assertion, n: Degree, m: Degree) -> Self {
        Self::new(assertion, Sign::LeqGeq, n, m)
    }

    pub fn to_constraint(&self) -> NeutrosophicConstraint {
        let direction = match self.sign {
            Sign::GeqLeq => Direction::Lower,
            Sign::LeqGeq => Direction::Upper,
        };
        NeutrosophicConstraint {
            assertion: self.assertion.clone(),
            direction,
            truth: Bound::weak(self.bounds.n),
            falsity: Bound::weak(self.bounds.m),
        }
    }
}

impl fmt::Display for NeutrosophicAssertion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = match self.sign {
            Sign::GeqLeq => ("≥", "≤"),
            Sign::LeqGeq => ("≤", "≥"),
        };
        write!(f, "⟨{}: {a}{}, {b}{}⟩", self.assertion, self.bounds.n, self.bounds.m)
    }
}

impl fmt::Debug for NeutrosophicAssertion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AxiomKind {
    /// `A ≺ C`: the truth of `A` never exceeds that of `C`, its falsity never
    /// falls below that of `C`.
    Specialization,
    /// `A :≈ C`
    Definition,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TerminologicalAxiom {
    pub lhs: String,
    pub kind: AxiomKind,
    pub rhs: Concept,
}

impl TerminologicalAxiom {
    pub fn specialization(lhs: impl Into<String>, rhs: Concept) -> Self {
        TerminologicalAxiom { lhs: lhs.into(), kind: AxiomKind::Specialization, rhs }
    }

    pub fn definition(lhs: impl Into<String>, rhs: Concept) -> Self {
        TerminologicalAxiom { lhs: lhs.into(), kind: AxiomKind::Definition, rhs }
    }
}

impl fmt::Display for TerminologicalAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = match self.kind {
            AxiomKind::Specialization => "≺",
            AxiomKind::Definition => ":≈",
        };
        write!(f, "{} {op} {}", self.lhs, self.rhs)
    }
}

/// A reason a knowledge base is rejected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    DuplicateLhs(String),
    /// Names along a definition cycle, starting and ending at the same name.
    Cycle(Vec<String>),
    /// A name clashes with the fresh concept introduced for a specialization.
    StarredNameCollision(String),
    /// Knowledge-base assertions may only mention individuals.
    VariableSubject(Assertion),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateLhs(name) => {
                write!(f, "concept {name} appears more than once on a left-hand side")
            }
            Violation::Cycle(path) => {
                f.write_str("cyclic definition: ")?;
                for (i, name) in path.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" -> ")?;
                    }
                    f.write_str(name)?;
                }
                Ok(())
            }
            Violation::StarredNameCollision(name) => {
                write!(f, "concept name {name} is reserved for the expansion of a specialization")
            }
            Violation::VariableSubject(a) => write!(f, "assertion {a} mentions a variable"),
        }
    }
}

impl core::error::Error for Violation {}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KnowledgeBase {
    pub assertions: Vec<NeutrosophicAssertion>,
    pub terminology: Vec<TerminologicalAxiom>,
}

impl KnowledgeBase {
    pub fn new(assertions: Vec<NeutrosophicAssertion>, terminology: Vec<TerminologicalAxiom>) -> Self {
        KnowledgeBase { assertions, terminology }
    }

    pub fn assertional(assertions: Vec<NeutrosophicAssertion>) -> Self {
        KnowledgeBase { assertions, terminology: Vec::new() }
    }

    pub fn is_assertional(&self) -> bool {
        self.terminology.is_empty()
    }

    pub fn validate(&self) -> Result<(), Vec<Violation>> {
        let mut violations = validate_terminology(&self.terminology);
        let starred: BTreeSet<String> = self
            .terminology
            .iter()
            .filter(|ax| ax.kind == AxiomKind::Specialization)
            .map(|ax| starred_name(&ax.lhs))
            .collect();
        let mut reported = BTreeSet::new();
        for a in &self.assertions {
            if a.assertion.objects().any(|o| !o.is_individual()) {
                violations.push(Violation::VariableSubject(a.assertion.clone()));
            }
            if let Some(c) = a.assertion.concept_expr() {
                for atom in c.atoms() {
                    if starred.contains(&atom) && reported.insert(atom.clone()) {
                        violations.push(Violation::StarredNameCollision(atom));
                    }
                }
            }
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(violations)
        }
    }

    /// Replaces specializations by definitions over fresh starred concepts,
    /// unfolds every defined name and drops the terminology.
    pub fn expand(&self) -> Result<KnowledgeBase, Vec<Violation>> {
        self.validate()?;
        let unfolder = Unfolder::new(&self.terminology)?;
        let assertions = self
            .assertions
            .iter()
            .map(|a| NeutrosophicAssertion {
                assertion: a.assertion.map_concept(|c| unfolder.unfold(c)),
                sign: a.sign,
                bounds: a.bounds,
            })
            .collect();
        Ok(KnowledgeBase::assertional(assertions))
    }

    /// Every degree mentioned by an assertion.
    pub fn degrees(&self) -> BTreeSet<Degree> {
        self.assertions.iter().flat_map(|a| [a.bounds.n, a.bounds.m]).collect()
    }

    pub fn individuals(&self) -> BTreeSet<crate::syntax::Object> {
        self.assertions.iter().flat_map(|a| a.assertion.objects().cloned()).collect()
    }

    pub fn constraints(&self) -> Vec<NeutrosophicConstraint> {
        self.assertions.iter().map(NeutrosophicAssertion::to_constraint).collect()
    }
}

impl fmt::Display for KnowledgeBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in &self.assertions {
            writeln!(f, "{a}")?;
        }
        for ax in &self.terminology {
            writeln!(f, "{ax}")?;
        }
        Ok(())
    }
}

/// Name of the fresh concept that turns `A ≺ C` into `A :≈ C ⊓ A*`.
pub fn starred_name(lhs: &str) -> String {
    let mut s = String::from(lhs);
    s.push('*');
    s
}

/// Checks the structural restrictions on a terminology: unique left-hand
/// sides, no cycles, and no clash with the starred names of specializations.
pub fn validate_terminology(terminology: &[TerminologicalAxiom]) -> Vec<Violation> {
    let mut violations = Vec::new();
    let mut seen = BTreeSet::new();
    for ax in terminology {
        if !seen.insert(ax.lhs.as_str()) && !violations.contains(&Violation::DuplicateLhs(ax.lhs.clone())) {
            violations.push(Violation::DuplicateLhs(ax.lhs.clone()));
        }
    }

    let starred: BTreeSet<String> = terminology
        .iter()
        .filter(|ax| ax.kind == AxiomKind::Specialization)
        .map(|ax| starred_name(&ax.lhs))
        .collect();
    let mut reported = BTreeSet::new();
    for ax in terminology {
        let names = core::iter::once(ax.lhs.clone()).chain(ax.rhs.atoms());
        for name in names {
            if starred.contains(&name) && reported.insert(name.clone()) {
                violations.push(Violation::StarredNameCollision(name));
            }
        }
    }

    if let Some(cycle) = find_cycle(terminology) {
        violations.push(Violation::Cycle(cycle));
    }
    violations
}

fn dependency_graph(terminology: &[TerminologicalAxiom]) -> BTreeMap<&str, BTreeSet<String>> {
    let defined: BTreeSet<&str> = terminology.iter().map(|ax| ax.lhs.as_str()).collect();
    let mut graph: BTreeMap<&str, BTreeSet<String>> = BTreeMap::new();
    for ax in terminology {
        let deps = ax.rhs.atoms().into_iter().filter(|a| defined.contains(a.as_str()));
        graph.entry(ax.lhs.as_str()).or_default().extend(deps);
    }
    graph
}

fn find_cycle(terminology: &[TerminologicalAxiom]) -> Option<Vec<String>> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        Open,
        Done,
    }

    fn visit<'a>(
        node: &'a str,
        graph: &'a BTreeMap<&'a str, BTreeSet<String>>,
        marks: &mut BTreeMap<&'a str, Mark>,
        path: &mut Vec<&'a str>,
    ) -> Option<Vec<String>> {
        match marks.get(node) {
            Some(Mark::Done) => return None,
            Some(Mark::Open) => {
                let start = path.iter().position(|n| *n == node).unwrap_or(0);
                let mut cycle: Vec<String> = path[start..].iter().map(|s| String::from(*s)).collect();
                cycle.push(String::from(node));
                return Some(cycle);
            }
            None => {}
        }
        marks.insert(node, Mark::Open);
        path.push(node);
        if let Some(deps) = graph.get(node) {
            for dep in deps {
                if let Some(cycle) = visit(dep.as_str(), graph, marks, path) {
                    return Some(cycle);
                }
            }
        }
        path.pop();
        marks.insert(node, Mark::Done);
        None
    }

    let graph = dependency_graph(terminology);
    let mut marks = BTreeMap::new();
    for &node in graph.keys() {
        let mut path = Vec::new();
        if let Some(cycle) = visit(node, &graph, &mut marks, &mut path) {
            return Some(cycle);
        }
    }
    None
}

/// Fully unfolded right-hand sides of an acyclic terminology.
#[derive(Clone, Debug, Default)]
pub struct Unfolder {
    definitions: BTreeMap<String, Concept>,
}

impl Unfolder {
    pub fn new(terminology: &[TerminologicalAxiom]) -> Result<Self, Vec<Violation>> {
        let violations = validate_terminology(terminology);
        if !violations.is_empty() {
            return Err(violations);
        }
        let raw: BTreeMap<&str, Concept> = terminology
            .iter()
            .map(|ax| {
                let rhs = match ax.kind {
                    AxiomKind::Definition => ax.rhs.clone(),
                    AxiomKind::Specialization => {
                        Concept::and(ax.rhs.clone(), Concept::atom(starred_name(&ax.lhs)))
                    }
                };
                (ax.lhs.as_str(), rhs)
            })
            .collect();

        // Dependencies first, so that each right-hand side is unfolded once
        // against already final definitions.
        let graph = dependency_graph(terminology);
        let mut order: Vec<&str> = Vec::new();
        let mut placed = BTreeSet::new();
        fn place<'a>(
            node: &'a str,
            graph: &'a BTreeMap<&'a str, BTreeSet<String>>,
            placed: &mut BTreeSet<&'a str>,
            order: &mut Vec<&'a str>,
        ) {
            if !placed.insert(node) {
                return;
            }
            if let Some(deps) = graph.get(node) {
                for dep in deps {
                    place(dep.as_str(), graph, placed, order);
                }
            }
            order.push(node);
        }
        for &node in graph.keys() {
            place(node, &graph, &mut placed, &mut order);
        }

        let mut definitions: BTreeMap<String, Concept> = BTreeMap::new();
        for name in order {
            let unfolded = raw[name].substitute(&|a| definitions.get(a).cloned());
            definitions.insert(String::from(name), unfolded);
        }
        Ok(Unfolder { definitions })
    }

    pub fn unfold(&self, c: &Concept) -> Concept {
        c.substitute(&|a| self.definitions.get(a).cloned())
    }

    pub fn definition(&self, name: &str) -> Option<&Concept> {
        self.definitions.get(name)
    }
}

/// Relation of a fuzzy assertion `⟨α ≥ n⟩` or `⟨α ≤ n⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Relation {
    Geq,
    Leq,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FuzzyAssertion {
    pub assertion: Assertion,
    pub relation: Relation,
    pub degree: Degree,
}

impl FuzzyAssertion {
    pub fn geq(assertion: Assertion, degree: Degree) -> Self {
        FuzzyAssertion { assertion, relation: Relation::Geq, degree }
    }

    pub fn leq(assertion: Assertion, degree: Degree) -> Self {
        FuzzyAssertion { assertion, relation: Relation::Leq, degree }
    }

    /// `≥` assertions take degrees in `(0, 1]`, `≤` assertions in `[0, 1)`.
    /// Projections of neutrosophic assertions need not meet this.
    pub fn is_proper(&self) -> bool {
        match self.relation {
            Relation::Geq => !self.degree.is_zero(),
            Relation::Leq => !self.degree.is_one(),
        }
    }
}

impl fmt::Display for FuzzyAssertion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = match self.relation {
            Relation::Geq => "≥",
            Relation::Leq => "≤",
        };
        write!(f, "⟨{} {op} {}⟩", self.assertion, self.degree)
    }
}

impl fmt::Debug for FuzzyAssertion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A fuzzy knowledge base. Fuzzy axioms share the neutrosophic syntax; only
/// their semantics differ.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FuzzyKnowledgeBase {
    pub assertions: Vec<FuzzyAssertion>,
    pub terminology: Vec<TerminologicalAxiom>,
}

impl FuzzyKnowledgeBase {
    pub fn assertional(assertions: Vec<FuzzyAssertion>) -> Self {
        FuzzyKnowledgeBase { assertions, terminology: Vec::new() }
    }
}

/// `⟨α ≥ n⟩ ↦ ⟨α: ≥n, ≤1−n⟩` and `⟨α ≤ n⟩ ↦ ⟨α: ≤n, ≥1−n⟩`.
pub fn embed_assertion(a: &FuzzyAssertion) -> NeutrosophicAssertion {
    let sign = match a.relation {
        Relation::Geq => Sign::GeqLeq,
        Relation::Leq => Sign::LeqGeq,
    };
    NeutrosophicAssertion::new(a.assertion.clone(), sign, a.degree, a.degree.complement())
}

pub fn embed_fuzzy(fkb: &FuzzyKnowledgeBase) -> KnowledgeBase {
    KnowledgeBase {
        assertions: fkb.assertions.iter().map(embed_assertion).collect(),
        terminology: fkb.terminology.clone(),
    }
}

/// Projection onto the truth bound.
pub fn sharp_assertion(a: &NeutrosophicAssertion) -> FuzzyAssertion {
    let relation = match a.sign {
        Sign::GeqLeq => Relation::Geq,
        Sign::LeqGeq => Relation::Leq,
    };
    FuzzyAssertion { assertion: a.assertion.clone(), relation, degree: a.bounds.n }
}

/// Projection onto the falsity bound.
pub fn star_assertion(a: &NeutrosophicAssertion) -> FuzzyAssertion {
    let relation = match a.sign {
        Sign::GeqLeq => Relation::Leq,
        Sign::LeqGeq => Relation::Geq,
    };
    FuzzyAssertion { assertion: a.assertion.clone(), relation, degree: a.bounds.m }
}

pub fn sharp(kb: &KnowledgeBase) -> FuzzyKnowledgeBase {
    FuzzyKnowledgeBase {
        assertions: kb.assertions.iter().map(sharp_assertion).collect(),
        terminology: kb.terminology.clone(),
    }
}

pub fn star(kb: &KnowledgeBase) -> FuzzyKnowledgeBase {
    FuzzyKnowledgeBase {
        assertions: kb.assertions.iter().map(star_assertion).collect(),
        terminology: kb.terminology.clone(),
    }
}
