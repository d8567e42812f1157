use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use core::fmt;

use num_rational::Ratio;

use super::{Clash, ConstraintSet};
use crate::constraint::{Bound, Direction};
use crate::degree::{Degree, DegreePair};
use crate::oracle::{Assignment, Element, FiniteInterpretation};
use crate::syntax::{Assertion, Concept, Object};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelError {
    Clash(Clash),
    /// Some rule still applies.
    Incomplete,
}

impl fmt::Display for ModelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelError::Clash(c) => write!(f, "constraint set has a {c}"),
            ModelError::Incomplete => f.write_str("constraint set is not complete"),
        }
    }
}

impl core::error::Error for ModelError {}

/// Lower and upper limits collected for one degree.
#[derive(Clone, Copy, Default)]
struct Interval {
    lower: Option<Bound>,
    upper: Option<Bound>,
}

impl Interval {
    fn raise(&mut self, b: Bound) {
        let tighter = match self.lower {
            None => true,
            Some(l) => b.value > l.value || (b.value == l.value && b.strict),
        };
        if tighter {
            self.lower = Some(b);
        }
    }

    fn cut(&mut self, b: Bound) {
        let tighter = match self.upper {
            None => true,
            Some(u) => b.value < u.value || (b.value == u.value && b.strict),
        };
        if tighter {
            self.upper = Some(b);
        }
    }

    /// The lowest admitted value: a midpoint when the lower limit is strict.
    fn low_point(&self) -> Degree {
        match self.lower {
            None => Degree::ZERO,
            Some(l) if !l.strict => l.value,
            Some(l) => l.value.midpoint(self.upper.map_or(Degree::ONE, |u| u.value)),
        }
    }

    fn high_point(&self) -> Degree {
        match self.upper {
            None => Degree::ONE,
            Some(u) if !u.strict => u.value,
            Some(u) => u.value.midpoint(self.lower.map_or(Degree::ZERO, |l| l.value)),
        }
    }

    /// Lowest value past the lower limit by `eps`, below every larger constant.
    fn low_nudged(&self, eps: Ratio<i64>) -> Degree {
        match self.lower {
            None => Degree::ZERO,
            Some(l) if l.strict => l.value.saturating_add(eps),
            Some(l) => l.value,
        }
    }

    fn high_nudged(&self, eps: Ratio<i64>) -> Degree {
        match self.upper {
            None => Degree::ONE,
            Some(u) if u.strict => u.value.saturating_sub(eps),
            Some(u) => u.value,
        }
    }
}

/// Reads a finite model off a complete, clash-free constraint set. Every
/// individual and variable gets its own element: individuals in name order
/// first, then variables by index.
///
/// Atomic truth degrees are as low as the constraints allow and falsity
/// degrees as high, so that no bound is met by accident. Role degrees sit
/// just inside their limits, by less than half the smallest gap between the
/// constants of the set, so that they compare with every constant exactly
/// as the limits do.
pub fn extract_model(s: &ConstraintSet) -> Result<(FiniteInterpretation, Assignment), ModelError> {
    if let Some(c) = s.clash() {
        return Err(ModelError::Clash(c));
    }
    if !s.is_complete() {
        return Err(ModelError::Incomplete);
    }

    let objects: BTreeSet<&Object> = s.constraints().flat_map(|c| c.assertion.objects()).collect();
    let mut element: BTreeMap<&Object, Element> = BTreeMap::new();
    let mut m = FiniteInterpretation::new(objects.len());
    let mut vars = Assignment::new();
    let (individuals, variables): (alloc::vec::Vec<_>, alloc::vec::Vec<_>) =
        objects.into_iter().partition(|o| o.is_individual());
    for (e, o) in individuals.into_iter().chain(variables).enumerate() {
        element.insert(o, e);
        match o {
            Object::Individual(name) => {
                m.map_individual(name.clone(), e);
            }
            Object::Variable(k) => {
                vars.insert(*k, e);
            }
        }
    }

    let mut atoms: BTreeMap<(&String, Element), (Interval, Interval)> = BTreeMap::new();
    let mut roles: BTreeMap<(&String, Element, Element), (Interval, Interval)> = BTreeMap::new();
    for c in s.constraints() {
        let slot = match &c.assertion {
            Assertion::Concept { concept: Concept::Atomic(a), subject } => {
                atoms.entry((a, element[subject])).or_default()
            }
            Assertion::Role { role, subject, object } => {
                roles.entry((role, element[subject], element[object])).or_default()
            }
            _ => continue,
        };
        match c.direction {
            Direction::Lower => {
                slot.0.raise(c.truth);
                slot.1.cut(c.falsity);
            }
            Direction::Upper => {
                slot.0.cut(c.truth);
                slot.1.raise(c.falsity);
            }
        }
    }

    for ((a, e), (t, f)) in atoms {
        m.set_concept(a.clone(), e, DegreePair::new(t.low_point(), f.high_point()));
    }

    let mut constants: alloc::vec::Vec<Degree> = s
        .constraints()
        .flat_map(|c| [c.truth.value, c.falsity.value])
        .chain([Degree::ZERO, Degree::ONE])
        .collect();
    constants.sort();
    constants.dedup();
    let gap =
        constants.windows(2).map(|w| w[1].ratio() - w[0].ratio()).min().unwrap_or(Ratio::from_integer(1));
    let eps = gap / Ratio::from_integer(2);
    for ((r, from, to), (t, f)) in roles {
        m.set_role(r.clone(), from, to, DegreePair::new(t.low_nudged(eps), f.high_nudged(eps)));
    }
    Ok((m, vars))
}
