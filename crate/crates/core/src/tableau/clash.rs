use core::fmt;

use crate::constraint::{limits_clash, NeutrosophicConstraint};
use crate::degree::Degree;
use crate::syntax::{Assertion, Concept};

/// Why a constraint set cannot be satisfied. Indices are positions in the
/// set's entry list.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Clash {
    /// A bound on `⊤` or `⊥` that its fixed value violates.
    Constant(usize),
    /// A strict bound outside `[0, 1]`, such as `>1` or `<0`.
    OutOfRange(usize),
    /// Two constraints on the same assertion bound one degree into an empty
    /// interval.
    Conjugated(usize, usize),
}

impl Clash {
    /// Positions of the clashing constraints.
    pub fn indices(&self) -> impl Iterator<Item = usize> {
        let (a, b) = match *self {
            Clash::Constant(i) | Clash::OutOfRange(i) => (i, None),
            Clash::Conjugated(i, j) => (i, Some(j)),
        };
        core::iter::once(a).chain(b)
    }
}

/// Renders clash positions 1-based, as in traces.
impl fmt::Display for Clash {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Clash::Constant(i) => write!(f, "clash: ({}) contradicts the value of a constant", i + 1),
            Clash::OutOfRange(i) => write!(f, "clash: ({}) bounds a degree outside [0, 1]", i + 1),
            Clash::Conjugated(i, j) => {
                write!(f, "clash: ({}) and ({}) are conjugated", i + 1, j + 1)
            }
        }
    }
}

/// Single-constraint clashes: constants and out-of-range strict bounds.
pub(crate) fn unary_clash(c: &NeutrosophicConstraint, index: usize) -> Option<Clash> {
    if c.limits().iter().any(|l| l.is_unsatisfiable()) {
        return Some(Clash::OutOfRange(index));
    }
    let fixed = match &c.assertion {
        Assertion::Concept { concept: Concept::Top, .. } => Some((Degree::ONE, Degree::ZERO)),
        Assertion::Concept { concept: Concept::Bottom, .. } => Some((Degree::ZERO, Degree::ONE)),
        _ => None,
    };
    match fixed {
        Some((t, f)) if !c.truth_limit().admits(t) || !c.falsity_limit().admits(f) => {
            Some(Clash::Constant(index))
        }
        _ => None,
    }
}

/// Conjugated pairs, assuming both constraints are about the same assertion.
pub(crate) fn pair_clash(
    a: &NeutrosophicConstraint,
    i: usize,
    b: &NeutrosophicConstraint,
    j: usize,
) -> Option<Clash> {
    debug_assert_eq!(a.assertion, b.assertion);
    limits_clash(a, b).then_some(Clash::Conjugated(i.min(j), i.max(j)))
}
