//! Fuzzy ALC over finite interpretations, used to check the projections of
//! neutrosophic knowledge bases onto fuzzy ones.
//!
//! Concepts take a single degree; negation is `1 - x` and the universal
//! restriction uses `1 - R`, so the grid searched is closed under complement.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use super::csp::{Csp, NodeId};
use super::{Assignment, DegreeGrid, Element, OracleError, DEFAULT_MAX_NODES};
use crate::degree::Degree;
use crate::kb::{AxiomKind, FuzzyAssertion, FuzzyKnowledgeBase, Relation, TerminologicalAxiom};
use crate::syntax::{Assertion, Concept, Object};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FuzzyInterpretation {
    pub domain_size: usize,
    pub individuals: BTreeMap<String, Element>,
    pub concepts: BTreeMap<(String, Element), Degree>,
    pub roles: BTreeMap<(String, Element, Element), Degree>,
}

impl FuzzyInterpretation {
    pub fn new(domain_size: usize) -> Self {
        FuzzyInterpretation { domain_size, ..Default::default() }
    }

    fn concept_value(&self, name: &str, d: Element) -> Degree {
        self.concepts.get(&(String::from(name), d)).copied().unwrap_or(Degree::ZERO)
    }

    fn role_value(&self, name: &str, d: Element, e: Element) -> Degree {
        self.roles.get(&(String::from(name), d, e)).copied().unwrap_or(Degree::ZERO)
    }

    pub fn eval(&self, c: &Concept, d: Element) -> Degree {
        match c {
            Concept::Top => Degree::ONE,
            Concept::Bottom => Degree::ZERO,
            Concept::Atomic(a) => self.concept_value(a, d),
            Concept::And(l, r) => self.eval(l, d).min(self.eval(r, d)),
            Concept::Or(l, r) => self.eval(l, d).max(self.eval(r, d)),
            Concept::Not(inner) => self.eval(inner, d).complement(),
            Concept::Forall(role, filler) => (0..self.domain_size)
                .map(|e| self.role_value(role, d, e).complement().max(self.eval(filler, e)))
                .min()
                .unwrap_or(Degree::ONE),
            Concept::Exists(role, filler) => (0..self.domain_size)
                .map(|e| self.role_value(role, d, e).min(self.eval(filler, e)))
                .max()
                .unwrap_or(Degree::ZERO),
        }
    }

    pub fn value_of(&self, a: &Assertion) -> Option<Degree> {
        let el = |o: &Object| match o {
            Object::Individual(name) => self.individuals.get(name).copied(),
            Object::Variable(_) => None,
        };
        match a {
            Assertion::Concept { concept, subject } => Some(self.eval(concept, el(subject)?)),
            Assertion::Role { role, subject, object } => {
                Some(self.role_value(role, el(subject)?, el(object)?))
            }
        }
    }

    /// `None` when the assertion mentions an uninterpreted object.
    pub fn satisfies(&self, a: &FuzzyAssertion) -> Option<bool> {
        let v = self.value_of(&a.assertion)?;
        Some(match a.relation {
            Relation::Geq => v >= a.degree,
            Relation::Leq => v <= a.degree,
        })
    }

    pub fn satisfies_axiom(&self, ax: &TerminologicalAxiom) -> bool {
        (0..self.domain_size).all(|d| {
            let (a, c) = (self.concept_value(&ax.lhs, d), self.eval(&ax.rhs, d));
            match ax.kind {
                AxiomKind::Specialization => a <= c,
                AxiomKind::Definition => a == c,
            }
        })
    }
}

/// A one-sided bound on a fuzzy assertion, possibly strict.
#[derive(Clone, Debug, PartialEq, Eq)]
struct FuzzyLimit {
    assertion: Assertion,
    from_below: bool,
    value: Degree,
    strict: bool,
}

impl FuzzyLimit {
    fn of(a: &FuzzyAssertion) -> Self {
        FuzzyLimit {
            assertion: a.assertion.clone(),
            from_below: a.relation == Relation::Geq,
            value: a.degree,
            strict: false,
        }
    }

    fn negated(&self) -> Self {
        FuzzyLimit { from_below: !self.from_below, strict: !self.strict, ..self.clone() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Key {
    Concept(String, Element),
    Role(String, Element, Element),
}

struct Builder<'g> {
    csp: Csp,
    grid: &'g DegreeGrid,
    domain_size: usize,
    cells: BTreeMap<Key, NodeId>,
    keys: Vec<Key>,
    memo: BTreeMap<(Concept, Element), NodeId>,
}

impl<'g> Builder<'g> {
    fn cell(&mut self, key: Key) -> NodeId {
        if let Some(&id) = self.cells.get(&key) {
            return id;
        }
        let (id, _) = self.csp.cell();
        self.keys.push(key.clone());
        self.cells.insert(key, id);
        id
    }

    fn constant(&mut self, d: Degree) -> NodeId {
        let k = self.grid.index_of(d).expect("grid holds every mentioned degree");
        self.csp.constant(k)
    }

    fn value(&mut self, c: &Concept, d: Element) -> NodeId {
        if let Some(&id) = self.memo.get(&(c.clone(), d)) {
            return id;
        }
        let id = match c {
            Concept::Top => self.constant(Degree::ONE),
            Concept::Bottom => self.constant(Degree::ZERO),
            Concept::Atomic(a) => self.cell(Key::Concept(a.clone(), d)),
            Concept::And(l, r) => {
                let kids = alloc::vec![self.value(l, d), self.value(r, d)];
                self.csp.min(kids)
            }
            Concept::Or(l, r) => {
                let kids = alloc::vec![self.value(l, d), self.value(r, d)];
                self.csp.max(kids)
            }
            Concept::Not(inner) => {
                let v = self.value(inner, d);
                self.csp.compl(v)
            }
            Concept::Forall(role, filler) => {
                let mut terms = Vec::new();
                for e in 0..self.domain_size {
                    let r = self.cell(Key::Role(role.clone(), d, e));
                    let nr = self.csp.compl(r);
                    let v = self.value(filler, e);
                    terms.push(self.csp.max(alloc::vec![nr, v]));
                }
                self.csp.min(terms)
            }
            Concept::Exists(role, filler) => {
                let mut terms = Vec::new();
                for e in 0..self.domain_size {
                    let r = self.cell(Key::Role(role.clone(), d, e));
                    let v = self.value(filler, e);
                    terms.push(self.csp.min(alloc::vec![r, v]));
                }
                self.csp.max(terms)
            }
        };
        self.memo.insert((c.clone(), d), id);
        id
    }

    fn limit(&mut self, l: &FuzzyLimit, named: &BTreeMap<String, Element>, vars: &Assignment) {
        let el = |o: &Object| match o {
            Object::Individual(a) => named[a],
            Object::Variable(k) => vars[k],
        };
        let x = match &l.assertion {
            Assertion::Concept { concept, subject } => self.value(concept, el(subject)),
            Assertion::Role { role, subject, object } => {
                self.cell(Key::Role(role.clone(), el(subject), el(object)))
            }
        };
        let k = self.constant(l.value);
        if l.from_below {
            self.csp.le(k, x, l.strict);
        } else {
            self.csp.le(x, k, l.strict);
        }
    }

    fn axiom(&mut self, ax: &TerminologicalAxiom) {
        let lhs = Concept::atom(ax.lhs.clone());
        for d in 0..self.domain_size {
            let a = self.value(&lhs, d);
            let c = self.value(&ax.rhs, d);
            self.csp.le(a, c, false);
            if ax.kind == AxiomKind::Definition {
                self.csp.le(c, a, false);
            }
        }
    }
}

/// Model search for fuzzy knowledge bases over a fixed finite domain.
#[derive(Clone, Debug)]
pub struct FuzzyModelSearch {
    limits: Vec<FuzzyLimit>,
    terminology: Vec<TerminologicalAxiom>,
    domain_size: Option<usize>,
    grid: Option<DegreeGrid>,
    max_nodes: u64,
}

impl FuzzyModelSearch {
    pub fn for_kb(fkb: &FuzzyKnowledgeBase) -> Self {
        FuzzyModelSearch {
            limits: fkb.assertions.iter().map(FuzzyLimit::of).collect(),
            terminology: fkb.terminology.clone(),
            domain_size: None,
            grid: None,
            max_nodes: DEFAULT_MAX_NODES,
        }
    }

    pub fn domain_size(mut self, n: usize) -> Self {
        self.domain_size = Some(n);
        self
    }

    pub fn domain_size_opt(mut self, n: Option<usize>) -> Self {
        self.domain_size = n;
        self
    }

    pub fn grid(mut self, grid: DegreeGrid) -> Self {
        self.grid = Some(grid);
        self
    }

    pub fn max_nodes(mut self, n: u64) -> Self {
        self.max_nodes = n;
        self
    }

    fn individuals(&self) -> BTreeSet<String> {
        self.limits
            .iter()
            .flat_map(|l| l.assertion.objects())
            .filter_map(|o| match o {
                Object::Individual(a) => Some(a.clone()),
                Object::Variable(_) => None,
            })
            .collect()
    }

    pub fn default_domain_size(&self) -> usize {
        let depth = self
            .limits
            .iter()
            .filter_map(|l| l.assertion.concept_expr())
            .chain(self.terminology.iter().map(|ax| &ax.rhs))
            .map(Concept::quantifier_depth)
            .max()
            .unwrap_or(0);
        (self.individuals().len() + depth).max(1)
    }

    /// Configured values plus mentioned degrees, closed under `1 - x`, with
    /// midpoints when some bound is strict.
    pub fn effective_grid(&self) -> DegreeGrid {
        let base = self.grid.clone().unwrap_or_else(|| DegreeGrid::new([]));
        let grid = base.with(self.limits.iter().map(|l| l.value)).closed_under_complement();
        if self.limits.iter().any(|l| l.strict) {
            grid.with_midpoints()
        } else {
            grid
        }
    }

    /// Whether some interpretation satisfies every assertion and axiom.
    pub fn run(&self) -> Result<Option<FuzzyInterpretation>, OracleError> {
        let individuals = self.individuals();
        let domain_size = self.domain_size.unwrap_or_else(|| self.default_domain_size());
        if domain_size < individuals.len().max(1) {
            return Err(OracleError::DomainTooSmall { individuals: individuals.len(), domain_size });
        }
        let grid = self.effective_grid();
        debug_assert!(grid.is_symmetric());
        let named: BTreeMap<String, Element> =
            individuals.into_iter().enumerate().map(|(i, a)| (a, i)).collect();

        let vars = Assignment::new();
        let mut b = Builder {
            csp: Csp::new(grid.len()),
            grid: &grid,
            domain_size,
            cells: BTreeMap::new(),
            keys: Vec::new(),
            memo: BTreeMap::new(),
        };
        for l in &self.limits {
            b.limit(l, &named, &vars);
        }
        for ax in &self.terminology {
            b.axiom(ax);
        }
        let mut visited = 0;
        let solved = b
            .csp
            .solve_counting(self.max_nodes, &mut visited)
            .map_err(|e| OracleError::ResourceLimit { visited: e.visited })?;
        Ok(solved.map(|values| {
            let mut i = FuzzyInterpretation::new(domain_size);
            i.individuals = named;
            for (key, &k) in b.keys.iter().zip(&values) {
                let v = grid.value(k);
                match key {
                    Key::Concept(a, d) => {
                        i.concepts.insert((a.clone(), *d), v);
                    }
                    Key::Role(r, d, e) => {
                        i.roles.insert((r.clone(), *d, *e), v);
                    }
                }
            }
            i
        }))
    }
}

/// `fkb ⊨ psi` over finite interpretations with grid-valued tables.
pub fn fuzzy_entails(
    fkb: &FuzzyKnowledgeBase,
    psi: &FuzzyAssertion,
    domain_size: Option<usize>,
    grid: Option<&DegreeGrid>,
) -> Result<bool, OracleError> {
    let mut search = FuzzyModelSearch::for_kb(fkb).domain_size_opt(domain_size);
    if let Some(g) = grid {
        search = search.grid(g.clone());
    }
    search.limits.push(FuzzyLimit::of(psi).negated());
    Ok(search.run()?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degree::deg;
    use alloc::vec;

    fn ca(c: Concept) -> Assertion {
        Assertion::concept(c, Object::individual("a"))
    }

    #[test]
    fn negation_is_complement() {
        let mut i = FuzzyInterpretation::new(1);
        i.individuals.insert("a".into(), 0);
        i.concepts.insert(("A".into(), 0), deg(1, 4));
        assert_eq!(i.value_of(&ca(Concept::not(Concept::atom("A")))), Some(deg(3, 4)));
    }

    #[test]
    fn excluded_middle_is_at_least_a_half() {
        let lem = Concept::or(Concept::atom("A"), Concept::not(Concept::atom("A")));
        let empty = FuzzyKnowledgeBase::default();
        let psi = FuzzyAssertion::geq(ca(lem.clone()), deg(1, 2));
        assert_eq!(fuzzy_entails(&empty, &psi, None, None), Ok(true));
        let psi = FuzzyAssertion::geq(ca(lem), deg(3, 4));
        assert_eq!(fuzzy_entails(&empty, &psi, None, None), Ok(false));
    }

    #[test]
    fn modus_ponens() {
        // C(a) ≥ .8 and (¬C ⊔ D)(a) ≥ .6 give D(a) ≥ .6 since 1 - .8 < .6.
        let fkb = FuzzyKnowledgeBase::assertional(vec![
            FuzzyAssertion::geq(ca(Concept::atom("C")), deg(4, 5)),
            FuzzyAssertion::geq(
                ca(Concept::or(Concept::not(Concept::atom("C")), Concept::atom("D"))),
                deg(3, 5),
            ),
        ]);
        let psi = FuzzyAssertion::geq(ca(Concept::atom("D")), deg(3, 5));
        assert_eq!(fuzzy_entails(&fkb, &psi, None, None), Ok(true));
    }

    #[test]
    fn models_satisfy_what_they_were_built_for() {
        let fkb = FuzzyKnowledgeBase {
            assertions: vec![
                FuzzyAssertion::geq(ca(Concept::exists("R", Concept::atom("A"))), deg(2, 3)),
                FuzzyAssertion::leq(ca(Concept::atom("B")), deg(1, 3)),
            ],
            terminology: vec![TerminologicalAxiom::specialization("A", Concept::atom("B"))],
        };
        let m = FuzzyModelSearch::for_kb(&fkb).domain_size(2).run().unwrap().unwrap();
        for a in &fkb.assertions {
            assert_eq!(m.satisfies(a), Some(true));
        }
        assert!(fkb.terminology.iter().all(|ax| m.satisfies_axiom(ax)));
    }
}
