//! The propagation rules, stated on single constraints and constraint pairs.
//!
//! Each pair constraint is the conjunction of a bound on the truth degree and
//! a bound on the falsity degree, and under the semantics the two degrees of a
//! concept never depend on each other's values. The rules therefore treat the
//! two halves separately: a quantifier constraint propagates each half along a
//! role edge on its own condition, and a generating rule creates one witness
//! per half, since the supremum of the truth degree and the infimum of the
//! falsity degree may be attained at different successors.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::constraint::{Bound, Direction, NeutrosophicConstraint as Nc};
use crate::syntax::{Assertion, Concept, Object};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Connective {
    Not,
    And,
    Or,
    Forall,
    Exists,
}

impl Connective {
    fn symbol(self) -> &'static str {
        match self {
            Connective::Not => "¬",
            Connective::And => "⊓",
            Connective::Or => "⊔",
            Connective::Forall => "∀",
            Connective::Exists => "∃",
        }
    }
}

/// The rule that produced a constraint, named after the connective and the
/// relations of its principal premise, e.g. `(∃_{≥,≤})`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    Given,
    Applied {
        connective: Connective,
        /// Relation symbols of the principal premise's truth and falsity bounds.
        relations: (&'static str, &'static str),
        /// Branch taken, 1-based, out of how many.
        branch: Option<(u8, u8)>,
    },
}

impl Rule {
    fn applied(connective: Connective, premise: &Nc) -> Self {
        Rule::Applied { connective, relations: relations(premise), branch: None }
    }
}

fn relations(c: &Nc) -> (&'static str, &'static str) {
    let sym = |from_below: bool, strict: bool| match (from_below, strict) {
        (true, false) => "≥",
        (true, true) => ">",
        (false, false) => "≤",
        (false, true) => "<",
    };
    let lower = c.direction == Direction::Lower;
    (sym(lower, c.truth.strict), sym(!lower, c.falsity.strict))
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::Given => f.write_str("given"),
            Rule::Applied { connective, relations: (t, fl), branch } => {
                write!(f, "({}_{{{t},{fl}}})", connective.symbol())?;
                if let Some((i, n)) = branch {
                    write!(f, " branch {i}/{n}")?;
                }
                Ok(())
            }
        }
    }
}

fn concept_of(c: &Nc) -> Option<(&Concept, &Object)> {
    match &c.assertion {
        Assertion::Concept { concept, subject } => Some((concept, subject)),
        Assertion::Role { .. } => None,
    }
}

fn on(concept: &Concept, subject: &Object, direction: Direction, truth: Bound, falsity: Bound) -> Nc {
    Nc::new(Assertion::concept(concept.clone(), subject.clone()), direction, truth, falsity)
}

/// `⟨¬C(ω): ...⟩ → ⟨C(ω): ...⟩` with the direction flipped and the bounds swapped.
pub fn negation(c: &Nc) -> Option<(Rule, Nc)> {
    let (Concept::Not(inner), subject) = concept_of(c)? else {
        return None;
    };
    let conclusion = on(inner, subject, c.direction.flip(), c.falsity, c.truth);
    Some((Rule::applied(Connective::Not, c), conclusion))
}

/// Conjunction bounded from below and disjunction bounded from above pass
/// both bounds to both operands.
pub fn decomposition(c: &Nc) -> Option<(Rule, Vec<Nc>)> {
    let (concept, subject) = concept_of(c)?;
    let (connective, l, r) = match (concept, c.direction) {
        (Concept::And(l, r), Direction::Lower) => (Connective::And, l, r),
        (Concept::Or(l, r), Direction::Upper) => (Connective::Or, l, r),
        _ => return None,
    };
    let out = [l, r]
        .into_iter()
        .map(|x| on(x, subject, c.direction, c.truth, c.falsity))
        .filter(|x| !x.is_vacuous())
        .collect();
    Some((Rule::applied(connective, c), out))
}

/// Conjunction bounded from above and disjunction bounded from below: each
/// bound is met by one operand, so the branches pick an operand per bound.
/// Vacuous constraints are dropped and duplicate branches merged.
pub fn branches(c: &Nc) -> Option<(Rule, Vec<Vec<Nc>>)> {
    let (concept, subject) = concept_of(c)?;
    let (connective, l, r) = match (concept, c.direction) {
        (Concept::And(l, r), Direction::Upper) => (Connective::And, l, r),
        (Concept::Or(l, r), Direction::Lower) => (Connective::Or, l, r),
        _ => return None,
    };
    let dir = c.direction;
    let vt = Nc::vacuous_truth(dir);
    let vf = Nc::vacuous_falsity(dir);
    let both = |x: &Concept| vec![on(x, subject, dir, c.truth, c.falsity)];
    let split =
        |t: &Concept, f: &Concept| vec![on(t, subject, dir, c.truth, vf), on(f, subject, dir, vt, c.falsity)];
    let candidates = [both(l), split(l, r), split(r, l), both(r)];
    let mut out: Vec<Vec<Nc>> = Vec::new();
    for mut branch in candidates {
        branch.retain(|x| !x.is_vacuous());
        branch.sort();
        branch.dedup();
        if !out.contains(&branch) {
            out.push(branch);
        }
    }
    Some((Rule::applied(connective, c), out))
}

/// Does an upper bound `x ≤ v` (or `x < v`) force `x < n` (`target_strict`)
/// or `x ≤ n`?
fn upper_forces(bound: Bound, n: crate::degree::Degree, target_strict: bool) -> bool {
    bound.value < n || (bound.value == n && (bound.strict || !target_strict))
}

/// Does a lower bound `x ≥ v` (or `x > v`) force `x > n` or `x ≥ n`?
fn lower_forces(bound: Bound, n: crate::degree::Degree, target_strict: bool) -> bool {
    bound.value > n || (bound.value == n && (bound.strict || !target_strict))
}

/// Universal restrictions bounded from below and existential restrictions
/// bounded from above constrain every successor. Given a role constraint
/// `⟨R(ω, ω′): ≥f, ≤g⟩` (only that direction bounds a role edge away from
/// the default), each half carries over to `C(ω′)` when the role bound rules
/// out the half being met through the role degree alone.
pub fn propagation(q: &Nc, role: &Nc) -> Option<(Rule, Nc)> {
    let (concept, subject) = concept_of(q)?;
    let Assertion::Role { role: r, subject: rs, object } = &role.assertion else {
        return None;
    };
    if role.direction != Direction::Lower || rs != subject {
        return None;
    }
    let (connective, name, filler) = match (concept, q.direction) {
        (Concept::Forall(name, filler), Direction::Lower) => (Connective::Forall, name, filler),
        (Concept::Exists(name, filler), Direction::Upper) => (Connective::Exists, name, filler),
        _ => return None,
    };
    if name != r {
        return None;
    }
    let t = q.truth_limit();
    let f = q.falsity_limit();
    let (fires_t, fires_f) = match connective {
        // inf max(R.f, C.t) ≥ n: forced onto C when R.f is below n.
        // sup min(R.t, C.f) ≤ m: forced onto C when R.t is above m.
        Connective::Forall => (
            upper_forces(role.falsity, t.bound.value, !t.bound.strict),
            lower_forces(role.truth, f.bound.value, !f.bound.strict),
        ),
        // sup min(R.t, C.t) ≤ n: forced when R.t is above n.
        // inf max(R.f, C.f) ≥ m: forced when R.f is below m.
        _ => (
            lower_forces(role.truth, t.bound.value, !t.bound.strict),
            upper_forces(role.falsity, f.bound.value, !f.bound.strict),
        ),
    };
    let fires_t = fires_t && !t.is_vacuous();
    let fires_f = fires_f && !f.is_vacuous();
    if !fires_t && !fires_f {
        return None;
    }
    let dir = q.direction;
    let conclusion = on(
        filler,
        object,
        dir,
        if fires_t { q.truth } else { Nc::vacuous_truth(dir) },
        if fires_f { q.falsity } else { Nc::vacuous_falsity(dir) },
    );
    Some((Rule::applied(connective, q), conclusion))
}

/// What a generating rule asks of one successor: a role constraint and a
/// filler constraint, both about the same (fresh or existing) object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessDemand {
    pub role: alloc::string::String,
    pub subject: Object,
    pub filler: Concept,
    pub role_direction: Direction,
    pub role_truth: Bound,
    pub role_falsity: Bound,
    pub filler_direction: Direction,
    pub filler_truth: Bound,
    pub filler_falsity: Bound,
}

impl WitnessDemand {
    pub fn role_constraint(&self, object: &Object) -> Nc {
        Nc::new(
            Assertion::role(self.role.clone(), self.subject.clone(), object.clone()),
            self.role_direction,
            self.role_truth,
            self.role_falsity,
        )
    }

    pub fn filler_constraint(&self, object: &Object) -> Nc {
        on(&self.filler, object, self.filler_direction, self.filler_truth, self.filler_falsity)
    }
}

/// Existential restrictions bounded from below and universal restrictions
/// bounded from above need successors; one demand per non-vacuous half.
pub fn witnesses(q: &Nc) -> Option<(Rule, Vec<WitnessDemand>)> {
    let (concept, subject) = concept_of(q)?;
    let (connective, name, filler) = match (concept, q.direction) {
        (Concept::Exists(name, filler), Direction::Lower) => (Connective::Exists, name, filler),
        (Concept::Forall(name, filler), Direction::Upper) => (Connective::Forall, name, filler),
        _ => return None,
    };
    let dir = q.direction;
    let lower = Direction::Lower;
    let demand = |role_truth, role_falsity, filler_truth, filler_falsity| WitnessDemand {
        role: name.clone(),
        subject: subject.clone(),
        filler: (**filler).clone(),
        role_direction: lower,
        role_truth,
        role_falsity,
        filler_direction: dir,
        filler_truth,
        filler_falsity,
    };
    let (vrt, vrf) = (Nc::vacuous_truth(lower), Nc::vacuous_falsity(lower));
    let (vt, vf) = (Nc::vacuous_truth(dir), Nc::vacuous_falsity(dir));
    let mut out = Vec::new();
    match connective {
        Connective::Exists => {
            // sup min(R.t, C.t) ≥ n: some successor with R.t ≥ n and C.t ≥ n.
            if !q.truth_limit().is_vacuous() {
                out.push(demand(q.truth, vrf, q.truth, vf));
            }
            // inf max(R.f, C.f) ≤ m: some successor with R.f ≤ m and C.f ≤ m.
            if !q.falsity_limit().is_vacuous() {
                out.push(demand(vrt, q.falsity, vt, q.falsity));
            }
        }
        _ => {
            // inf max(R.f, C.t) ≤ n: some successor with R.f ≤ n and C.t ≤ n.
            if !q.truth_limit().is_vacuous() {
                out.push(demand(vrt, q.truth, q.truth, vf));
            }
            // sup min(R.t, C.f) ≥ m: some successor with R.t ≥ m and C.f ≥ m.
            if !q.falsity_limit().is_vacuous() {
                out.push(demand(q.falsity, vrf, vt, q.falsity));
            }
        }
    }
    Some((Rule::applied(connective, q), out))
}
