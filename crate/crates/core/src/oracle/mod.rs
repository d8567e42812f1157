//! Ground truth by model search over finite interpretations.
//!
//! A set of constraints is checked by looking for an interpretation over a
//! fixed finite domain whose table entries are drawn from a finite degree
//! grid. The search is exhaustive over that space.
//!
//! Restricting tables to the grid loses nothing for a fixed domain: every
//! degree is a min/max term over table entries, so mapping each entry to a
//! grid representative (itself if it is a grid value, else the midpoint of the
//! surrounding gap) commutes with the semantics and preserves every
//! comparison against grid constants. Midpoints are only added when a strict
//! bound is present; without one, rounding down to the grid suffices. The
//! size of the domain is the oracle's one real limit.

mod csp;
pub mod fuzzy;
mod grid;
mod interp;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub use grid::DegreeGrid;
pub use interp::{Assignment, Element, EvalError, FiniteInterpretation};

use crate::constraint::{Channel, NeutrosophicConstraint};
use crate::degree::{Degree, DegreePair};
use crate::kb::{AxiomKind, KnowledgeBase, NeutrosophicAssertion, TerminologicalAxiom};
use crate::syntax::{Assertion, Concept, Object};
use csp::{Csp, NodeId};

/// Default ceiling on search nodes per model search.
pub const DEFAULT_MAX_NODES: u64 = 5_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleError {
    /// The search visited more nodes than allowed.
    ResourceLimit { visited: u64 },
    /// The domain cannot host every individual injectively.
    DomainTooSmall { individuals: usize, domain_size: usize },
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::ResourceLimit { visited } => {
                write!(f, "model search gave up after {visited} nodes")
            }
            OracleError::DomainTooSmall { individuals, domain_size } => {
                write!(f, "a domain of {domain_size} elements cannot hold {individuals} individuals")
            }
        }
    }
}

impl core::error::Error for OracleError {}

/// An interpretation together with values for the variables it was asked about.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Model {
    pub interpretation: FiniteInterpretation,
    pub variables: Assignment,
}

/// Builder for a model search over constraints and, optionally, a
/// terminology whose axioms every model must satisfy.
#[derive(Clone, Debug)]
pub struct ModelSearch {
    constraints: Vec<NeutrosophicConstraint>,
    terminology: Vec<TerminologicalAxiom>,
    domain_size: Option<usize>,
    grid: Option<DegreeGrid>,
    max_nodes: u64,
}

impl ModelSearch {
    pub fn new(constraints: impl IntoIterator<Item = NeutrosophicConstraint>) -> Self {
        ModelSearch {
            constraints: constraints.into_iter().collect(),
            terminology: Vec::new(),
            domain_size: None,
            grid: None,
            max_nodes: DEFAULT_MAX_NODES,
        }
    }

    /// Models of a knowledge base, terminology included.
    pub fn for_kb(kb: &KnowledgeBase) -> Self {
        Self::new(kb.constraints()).terminology(&kb.terminology)
    }

    pub fn with_constraint(mut self, c: NeutrosophicConstraint) -> Self {
        self.constraints.push(c);
        self
    }

    pub fn terminology(mut self, axioms: &[TerminologicalAxiom]) -> Self {
        self.terminology = axioms.to_vec();
        self
    }

    pub fn domain_size(mut self, n: usize) -> Self {
        self.domain_size = Some(n);
        self
    }

    pub fn domain_size_opt(mut self, n: Option<usize>) -> Self {
        self.domain_size = n;
        self
    }

    /// Extra grid values. Degrees mentioned by the constraints are always added.
    pub fn grid(mut self, grid: DegreeGrid) -> Self {
        self.grid = Some(grid);
        self
    }

    pub fn grid_opt(mut self, grid: Option<DegreeGrid>) -> Self {
        self.grid = grid;
        self
    }

    pub fn max_nodes(mut self, n: u64) -> Self {
        self.max_nodes = n;
        self
    }

    fn individuals(&self) -> BTreeSet<String> {
        self.constraints
            .iter()
            .flat_map(|c| c.assertion.objects())
            .filter_map(|o| match o {
                Object::Individual(a) => Some(a.clone()),
                Object::Variable(_) => None,
            })
            .collect()
    }

    fn variables(&self) -> BTreeSet<u32> {
        self.constraints
            .iter()
            .flat_map(|c| c.assertion.objects())
            .filter_map(|o| match o {
                Object::Variable(k) => Some(*k),
                Object::Individual(_) => None,
            })
            .collect()
    }

    /// Number of distinct objects plus the deepest quantifier nesting.
    pub fn default_domain_size(&self) -> usize {
        let objects = self.individuals().len() + self.variables().len();
        let depth = self
            .constraints
            .iter()
            .filter_map(|c| c.assertion.concept_expr())
            .chain(self.terminology.iter().map(|ax| &ax.rhs))
            .map(Concept::quantifier_depth)
            .max()
            .unwrap_or(0);
        (objects + depth).max(1)
    }

    /// The grid actually searched: the configured grid (or `{0, 1}`), every
    /// degree in the constraints, and midpoints when a bound is strict.
    pub fn effective_grid(&self) -> DegreeGrid {
        let base = self.grid.clone().unwrap_or_else(|| DegreeGrid::new([]));
        let grid = base.with(self.constraints.iter().flat_map(|c| [c.truth.value, c.falsity.value]));
        if self.constraints.iter().any(|c| c.truth.strict || c.falsity.strict) {
            grid.with_midpoints()
        } else {
            grid
        }
    }

    pub fn run(&self) -> Result<Option<Model>, OracleError> {
        let individuals = self.individuals();
        let domain_size = self.domain_size.unwrap_or_else(|| self.default_domain_size());
        if domain_size < individuals.len().max(1) {
            return Err(OracleError::DomainTooSmall { individuals: individuals.len(), domain_size });
        }
        let grid = self.effective_grid();
        let named: BTreeMap<String, Element> =
            individuals.into_iter().enumerate().map(|(i, a)| (a, i)).collect();
        let variables: Vec<u32> = self.variables().into_iter().collect();

        // Variables may denote any element; try every assignment.
        let mut visited = 0;
        let mut codes = vec_of_zeros(variables.len());
        loop {
            let assignment: Assignment = variables.iter().copied().zip(codes.iter().copied()).collect();
            let mut b = Builder::new(domain_size, &grid);
            for c in &self.constraints {
                b.constrain(c, &named, &assignment);
            }
            for ax in &self.terminology {
                b.axiom(ax);
            }
            let solved = b
                .csp
                .solve_counting(self.max_nodes, &mut visited)
                .map_err(|e| OracleError::ResourceLimit { visited: e.visited })?;
            if let Some(values) = solved {
                let mut interpretation = b.interpretation(&values, &grid);
                interpretation.individuals = named;
                return Ok(Some(Model { interpretation, variables: assignment }));
            }
            if !advance(&mut codes, domain_size) {
                return Ok(None);
            }
        }
    }
}

fn vec_of_zeros(n: usize) -> Vec<usize> {
    alloc::vec![0; n]
}

/// Odometer increment; false once every combination has been produced.
fn advance(codes: &mut [usize], base: usize) -> bool {
    for c in codes.iter_mut() {
        *c += 1;
        if *c < base {
            return true;
        }
        *c = 0;
    }
    false
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum CellKey {
    Concept(String, Element, Channel),
    Role(String, Element, Element, Channel),
}

struct Builder<'g> {
    csp: Csp,
    grid: &'g DegreeGrid,
    domain_size: usize,
    cells: BTreeMap<CellKey, NodeId>,
    cell_keys: Vec<CellKey>,
    memo: BTreeMap<(Concept, Element, Channel), NodeId>,
}

impl<'g> Builder<'g> {
    fn new(domain_size: usize, grid: &'g DegreeGrid) -> Self {
        Builder {
            csp: Csp::new(grid.len()),
            grid,
            domain_size,
            cells: BTreeMap::new(),
            cell_keys: Vec::new(),
            memo: BTreeMap::new(),
        }
    }

    fn cell(&mut self, key: CellKey) -> NodeId {
        if let Some(&id) = self.cells.get(&key) {
            return id;
        }
        let (id, index) = self.csp.cell();
        debug_assert_eq!(index, self.cell_keys.len());
        self.cell_keys.push(key.clone());
        self.cells.insert(key, id);
        id
    }

    fn constant(&mut self, d: Degree) -> NodeId {
        let k = self.grid.index_of(d).expect("grid holds every mentioned degree");
        self.csp.constant(k)
    }

    fn role(&mut self, role: &str, d: Element, e: Element, ch: Channel) -> NodeId {
        self.cell(CellKey::Role(String::from(role), d, e, ch))
    }

    fn channel(&mut self, c: &Concept, d: Element, ch: Channel) -> NodeId {
        let key = (c.clone(), d, ch);
        if let Some(&id) = self.memo.get(&key) {
            return id;
        }
        let truth = ch == Channel::Truth;
        let id = match c {
            Concept::Top => self.constant(if truth { Degree::ONE } else { Degree::ZERO }),
            Concept::Bottom => self.constant(if truth { Degree::ZERO } else { Degree::ONE }),
            Concept::Atomic(a) => self.cell(CellKey::Concept(a.clone(), d, ch)),
            Concept::And(l, r) | Concept::Or(l, r) => {
                let kids = alloc::vec![self.channel(l, d, ch), self.channel(r, d, ch)];
                // Conjunction takes min truth and max falsity; disjunction the reverse.
                if matches!(c, Concept::And(..)) == truth {
                    self.csp.min(kids)
                } else {
                    self.csp.max(kids)
                }
            }
            Concept::Not(inner) => {
                let other = if truth { Channel::Falsity } else { Channel::Truth };
                self.channel(inner, d, other)
            }
            Concept::Forall(role, filler) => {
                // t: min over e of max(R.f, C.t); f: max over e of min(R.t, C.f)
                let mut terms = Vec::new();
                for e in 0..self.domain_size {
                    let r_ch = if truth { Channel::Falsity } else { Channel::Truth };
                    let r = self.role(role, d, e, r_ch);
                    let v = self.channel(filler, e, ch);
                    terms.push(if truth {
                        self.csp.max(alloc::vec![r, v])
                    } else {
                        self.csp.min(alloc::vec![r, v])
                    });
                }
                if truth {
                    self.csp.min(terms)
                } else {
                    self.csp.max(terms)
                }
            }
            Concept::Exists(role, filler) => {
                // t: max over e of min(R.t, C.t); f: min over e of max(R.f, C.f)
                let mut terms = Vec::new();
                for e in 0..self.domain_size {
                    let r = self.role(role, d, e, ch);
                    let v = self.channel(filler, e, ch);
                    terms.push(if truth {
                        self.csp.min(alloc::vec![r, v])
                    } else {
                        self.csp.max(alloc::vec![r, v])
                    });
                }
                if truth {
                    self.csp.max(terms)
                } else {
                    self.csp.min(terms)
                }
            }
        };
        self.memo.insert(key, id);
        id
    }

    fn constrain(
        &mut self,
        c: &NeutrosophicConstraint,
        named: &BTreeMap<String, Element>,
        vars: &Assignment,
    ) {
        let resolve = |o: &Object| match o {
            Object::Individual(a) => named[a],
            Object::Variable(k) => vars[k],
        };
        for limit in c.limits() {
            if limit.is_vacuous() {
                continue;
            }
            let x = match &c.assertion {
                Assertion::Concept { concept, subject } => {
                    self.channel(concept, resolve(subject), limit.channel)
                }
                Assertion::Role { role, subject, object } => {
                    self.role(role, resolve(subject), resolve(object), limit.channel)
                }
            };
            let k = self.constant(limit.bound.value);
            if limit.from_below {
                self.csp.le(k, x, limit.bound.strict);
            } else {
                self.csp.le(x, k, limit.bound.strict);
            }
        }
    }

    fn axiom(&mut self, ax: &TerminologicalAxiom) {
        let lhs = Concept::atom(ax.lhs.clone());
        for d in 0..self.domain_size {
            let (at, af) = (self.channel(&lhs, d, Channel::Truth), self.channel(&lhs, d, Channel::Falsity));
            let (ct, cf) =
                (self.channel(&ax.rhs, d, Channel::Truth), self.channel(&ax.rhs, d, Channel::Falsity));
            self.csp.le(at, ct, false);
            self.csp.le(cf, af, false);
            if ax.kind == AxiomKind::Definition {
                self.csp.le(ct, at, false);
                self.csp.le(af, cf, false);
            }
        }
    }

    fn interpretation(&self, values: &[usize], grid: &DegreeGrid) -> FiniteInterpretation {
        let mut i = FiniteInterpretation::new(self.domain_size);
        for (key, &k) in self.cell_keys.iter().zip(values) {
            let v = grid.value(k);
            let set = |pair: &mut DegreePair, ch: &Channel| match ch {
                Channel::Truth => pair.n = v,
                Channel::Falsity => pair.m = v,
            };
            match key {
                CellKey::Concept(a, d, ch) => {
                    set(i.concepts.entry((a.clone(), *d)).or_insert(DegreePair::BOTTOM), ch)
                }
                CellKey::Role(r, d, e, ch) => {
                    set(i.roles.entry((r.clone(), *d, *e)).or_insert(DegreePair::BOTTOM), ch)
                }
            }
        }
        i
    }
}

/// Searches for a model of `constraints` over exactly `domain_size` elements
/// with table values from `grid` (extended by every degree the constraints
/// mention).
pub fn exists_model(
    constraints: &[NeutrosophicConstraint],
    domain_size: usize,
    grid: &DegreeGrid,
) -> Result<Option<Model>, OracleError> {
    ModelSearch::new(constraints.iter().cloned()).domain_size(domain_size).grid(grid.clone()).run()
}

/// Whether every model found by `search` satisfies `phi`: the negation of
/// `phi` is a disjunction of one-sided constraints, each of which must be
/// unsatisfiable together with the search's constraints.
pub fn entails_by_search(search: &ModelSearch, phi: &NeutrosophicConstraint) -> Result<bool, OracleError> {
    for negated in phi.negation() {
        if search.clone().with_constraint(negated).run()?.is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Oracle entailment `kb ⊨ phi`. Without explicit parameters the domain has
/// one element per object plus the quantifier depth, and the grid holds the
/// degrees mentioned by the knowledge base and the query.
pub fn oracle_entails(
    kb: &KnowledgeBase,
    phi: &NeutrosophicAssertion,
    domain_size: Option<usize>,
    grid: Option<&DegreeGrid>,
) -> Result<bool, OracleError> {
    let search = ModelSearch::for_kb(kb).domain_size_opt(domain_size).grid_opt(grid.cloned());
    entails_by_search(&search, &phi.to_constraint())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degree::deg;
    use alloc::vec;

    fn a(name: &str) -> Object {
        Object::individual(name)
    }

    fn ca(c: Concept, o: &str) -> Assertion {
        Assertion::concept(c, a(o))
    }

    #[test]
    fn half_half_has_a_model() {
        let c = NeutrosophicConstraint::geq_leq(ca(Concept::atom("A"), "a"), deg(1, 2), deg(1, 2));
        let model =
            exists_model(core::slice::from_ref(&c), 1, &DegreeGrid::new([deg(1, 2)])).unwrap().unwrap();
        assert!(model.interpretation.satisfies(&c, &model.variables).unwrap());
    }

    #[test]
    fn bottom_with_positive_truth_has_none() {
        let c = NeutrosophicConstraint::geq_leq(ca(Concept::Bottom, "a"), deg(1, 10), Degree::ONE);
        assert_eq!(exists_model(&[c], 1, &DegreeGrid::new([])), Ok(None));
    }

    fn example_two() -> Vec<NeutrosophicConstraint> {
        let war = |x: &str| Concept::and(Concept::atom("War"), Concept::atom(x));
        vec![
            NeutrosophicConstraint::geq_leq(
                ca(Concept::exists("Support", war("war_x*")), "p1"),
                deg(3, 5),
                deg(1, 2),
            ),
            NeutrosophicConstraint::geq_leq(
                ca(Concept::exists("Support", war("war_y*")), "p2"),
                deg(4, 5),
                deg(1, 10),
            ),
            NeutrosophicConstraint::lt_gt(
                ca(Concept::exists("Support", Concept::atom("War")), "p1"),
                deg(3, 5),
                deg(1, 2),
            ),
        ]
    }

    #[test]
    fn example_two_has_no_model_on_its_grid() {
        let grid = DegreeGrid::new([deg(1, 10), deg(1, 2), deg(3, 5), deg(4, 5)]);
        assert_eq!(exists_model(&example_two(), 3, &grid), Ok(None));
    }

    #[test]
    fn entailment_examples() {
        let phi = NeutrosophicAssertion::geq_leq(ca(Concept::Top, "a"), Degree::ONE, Degree::ZERO);
        assert_eq!(oracle_entails(&KnowledgeBase::default(), &phi, None, None), Ok(true));

        let phi = NeutrosophicAssertion::geq_leq(ca(Concept::atom("A"), "a"), deg(1, 2), deg(1, 2));
        assert_eq!(oracle_entails(&KnowledgeBase::default(), &phi, None, None), Ok(false));

        let kb = KnowledgeBase::assertional(
            example_two()[..2]
                .iter()
                .map(|c| NeutrosophicAssertion::geq_leq(c.assertion.clone(), c.truth.value, c.falsity.value))
                .collect(),
        );
        let phi = NeutrosophicAssertion::geq_leq(
            ca(Concept::exists("Support", Concept::atom("War")), "p1"),
            deg(3, 5),
            deg(1, 2),
        );
        assert_eq!(oracle_entails(&kb, &phi, None, None), Ok(true));
    }

    #[test]
    fn terminology_constrains_models() {
        // A ≺ B with A(a) ≥ .75 forces B(a) ≥ .75.
        let kb = KnowledgeBase::new(
            vec![NeutrosophicAssertion::geq_leq(ca(Concept::atom("A"), "a"), deg(3, 4), deg(1, 4))],
            vec![TerminologicalAxiom::specialization("A", Concept::atom("B"))],
        );
        let phi = NeutrosophicAssertion::geq_leq(ca(Concept::atom("B"), "a"), deg(3, 4), deg(1, 4));
        assert_eq!(oracle_entails(&kb, &phi, None, None), Ok(true));
        assert_eq!(
            oracle_entails(&KnowledgeBase::assertional(kb.assertions.clone()), &phi, None, None),
            Ok(false)
        );
    }

    #[test]
    fn variables_range_over_the_domain() {
        let c = NeutrosophicConstraint::geq_leq(
            Assertion::role("R", a("a"), Object::Variable(1)),
            Degree::ONE,
            Degree::ZERO,
        );
        let model = ModelSearch::new([c.clone()]).domain_size(2).run().unwrap().unwrap();
        assert!(model.interpretation.satisfies(&c, &model.variables).unwrap());
    }

    #[test]
    fn domain_must_hold_individuals() {
        let c =
            NeutrosophicConstraint::geq_leq(Assertion::role("R", a("a"), a("b")), Degree::ONE, Degree::ZERO);
        assert_eq!(
            exists_model(&[c], 1, &DegreeGrid::new([])),
            Err(OracleError::DomainTooSmall { individuals: 2, domain_size: 1 })
        );
    }
}
