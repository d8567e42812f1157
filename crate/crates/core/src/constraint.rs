//! Neutrosophic constraints: an assertion with a bound on its truth degree and
//! a bound on its falsity degree.
//!
//! The four printed forms `⟨α: ≥n, ≤m⟩`, `⟨α: >n, <m⟩`, `⟨α: ≤n, ≥m⟩` and
//! `⟨α: <n, >m⟩` are represented by a [`Direction`] plus one [`Bound`] per
//! degree. Strictness is kept per bound, so the calculus can also state mixed
//! constraints such as `⟨α: <n, ≥0⟩`, which arise when a pair of bounds is
//! negated one half at a time.

use alloc::vec::Vec;
use core::fmt;

use crate::degree::{Degree, DegreePair};
use crate::syntax::Assertion;

/// `Lower` bounds the truth degree from below and the falsity degree from
/// above (`≥, ≤`); `Upper` is the reverse (`≤, ≥`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Lower,
    Upper,
}

impl Direction {
    pub fn flip(self) -> Self {
        match self {
            Direction::Lower => Direction::Upper,
            Direction::Upper => Direction::Lower,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bound {
    pub value: Degree,
    pub strict: bool,
}

impl Bound {
    pub const fn weak(value: Degree) -> Self {
        Bound { value, strict: false }
    }

    pub const fn strict(value: Degree) -> Self {
        Bound { value, strict: true }
    }
}

/// One of the four uniform-strictness forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Form {
    GeqLeq,
    GtLt,
    LeqGeq,
    LtGt,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Channel {
    Truth,
    Falsity,
}

/// A one-sided bound on one degree: `x ≥ v`, `x > v`, `x ≤ v` or `x < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Limit {
    pub channel: Channel,
    /// True for `≥`/`>`.
    pub from_below: bool,
    pub bound: Bound,
}

impl Limit {
    pub fn admits(self, x: Degree) -> bool {
        let v = self.bound.value;
        match (self.from_below, self.bound.strict) {
            (true, false) => x >= v,
            (true, true) => x > v,
            (false, false) => x <= v,
            (false, true) => x < v,
        }
    }

    /// Holds for every degree in `[0, 1]`.
    pub fn is_vacuous(self) -> bool {
        !self.bound.strict
            && if self.from_below { self.bound.value.is_zero() } else { self.bound.value.is_one() }
    }

    /// Holds for no degree in `[0, 1]`.
    pub fn is_unsatisfiable(self) -> bool {
        self.bound.strict
            && if self.from_below { self.bound.value.is_one() } else { self.bound.value.is_zero() }
    }

    /// The limit admitting exactly the degrees this one rejects.
    pub fn complement(self) -> Limit {
        Limit {
            channel: self.channel,
            from_below: !self.from_below,
            bound: Bound { value: self.bound.value, strict: !self.bound.strict },
        }
    }

    fn symbol(self) -> &'static str {
        match (self.from_below, self.bound.strict) {
            (true, false) => "≥",
            (true, true) => ">",
            (false, false) => "≤",
            (false, true) => "<",
        }
    }
}

/// Whether a lower and an upper limit on the same degree leave no room.
pub fn limits_conflict(lower: Limit, upper: Limit) -> bool {
    debug_assert!(lower.from_below && !upper.from_below);
    let (l, u) = (lower.bound, upper.bound);
    l.value > u.value || (l.value == u.value && (l.strict || u.strict))
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NeutrosophicConstraint {
    pub assertion: Assertion,
    pub direction: Direction,
    pub truth: Bound,
    pub falsity: Bound,
}

/// The constraints being compared are about different assertions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MismatchedAssertions;

impl fmt::Display for MismatchedAssertions {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("constraints concern different assertions")
    }
}

impl core::error::Error for MismatchedAssertions {}

impl NeutrosophicConstraint {
    pub fn new(assertion: Assertion, direction: Direction, truth: Bound, falsity: Bound) -> Self {
        NeutrosophicConstraint { assertion, direction, truth, falsity }
    }

    pub fn with_form(assertion: Assertion, form: Form, n: Degree, m: Degree) -> Self {
        let (direction, strict) = match form {
            Form::GeqLeq => (Direction::Lower, false),
            Form::GtLt => (Direction::Lower, true),
            Form::LeqGeq => (Direction::Upper, false),
            Form::LtGt => (Direction::Upper, true),
        };
        let b = |value| Bound { value, strict };
        NeutrosophicConstraint { assertion, direction, truth: b(n), falsity: b(m) }
    }

    /// `⟨α: ≥n, ≤m⟩`
    pub fn geq_leq(assertion: Assertion, n: Degree, m: Degree) -> Self {
        Self::with_form(assertion, Form::GeqLeq, n, m)
    }

    /// `⟨α: >n, <m⟩`
    pub fn gt_lt(assertion: Assertion, n: Degree, m: Degree) -> Self {
        Self::with_form(assertion, Form::GtLt, n, m)
    }

    /// `⟨α: ≤n, ≥m⟩`
    pub fn leq_geq(assertion: Assertion, n: Degree, m: Degree) -> Self {
        Self::with_form(assertion, Form::LeqGeq, n, m)
    }

    /// `⟨α: <n, >m⟩`
    pub fn lt_gt(assertion: Assertion, n: Degree, m: Degree) -> Self {
        Self::with_form(assertion, Form::LtGt, n, m)
    }

    /// The bound that places no restriction on the truth degree in `direction`.
    pub fn vacuous_truth(direction: Direction) -> Bound {
        match direction {
            Direction::Lower => Bound::weak(Degree::ZERO),
            Direction::Upper => Bound::weak(Degree::ONE),
        }
    }

    /// The bound that places no restriction on the falsity degree in `direction`.
    pub fn vacuous_falsity(direction: Direction) -> Bound {
        Self::vacuous_truth(direction.flip())
    }

    pub fn form(&self) -> Option<Form> {
        if self.truth.strict != self.falsity.strict {
            return None;
        }
        Some(match (self.direction, self.truth.strict) {
            (Direction::Lower, false) => Form::GeqLeq,
            (Direction::Lower, true) => Form::GtLt,
            (Direction::Upper, false) => Form::LeqGeq,
            (Direction::Upper, true) => Form::LtGt,
        })
    }

    pub fn bounds(&self) -> DegreePair {
        DegreePair::new(self.truth.value, self.falsity.value)
    }

    pub fn truth_limit(&self) -> Limit {
        Limit { channel: Channel::Truth, from_below: self.direction == Direction::Lower, bound: self.truth }
    }

    pub fn falsity_limit(&self) -> Limit {
        Limit {
            channel: Channel::Falsity,
            from_below: self.direction == Direction::Upper,
            bound: self.falsity,
        }
    }

    pub fn limits(&self) -> [Limit; 2] {
        [self.truth_limit(), self.falsity_limit()]
    }

    pub fn is_vacuous(&self) -> bool {
        self.truth_limit().is_vacuous() && self.falsity_limit().is_vacuous()
    }

    /// Whether a (truth, falsity) value meets both bounds.
    pub fn admits(&self, value: DegreePair) -> bool {
        self.truth_limit().admits(value.n) && self.falsity_limit().admits(value.m)
    }

    /// Constraints whose disjunction is the negation of `self`, one per
    /// non-vacuous half. Each keeps the other degree unrestricted.
    pub fn negation(&self) -> Vec<NeutrosophicConstraint> {
        let flipped = self.direction.flip();
        let mut out = Vec::new();
        if !self.truth_limit().is_vacuous() {
            out.push(NeutrosophicConstraint {
                assertion: self.assertion.clone(),
                direction: flipped,
                truth: Bound { value: self.truth.value, strict: !self.truth.strict },
                falsity: Self::vacuous_falsity(flipped),
            });
        }
        if !self.falsity_limit().is_vacuous() {
            out.push(NeutrosophicConstraint {
                assertion: self.assertion.clone(),
                direction: flipped,
                truth: Self::vacuous_truth(flipped),
                falsity: Bound { value: self.falsity.value, strict: !self.falsity.strict },
            });
        }
        out
    }

    /// Whether `self` and `other` jointly bound one degree of the same
    /// assertion into an empty interval.
    pub fn conjugated(&self, other: &Self) -> Result<bool, MismatchedAssertions> {
        if self.assertion != other.assertion {
            return Err(MismatchedAssertions);
        }
        Ok(limits_clash(self, other))
    }
}

/// [`NeutrosophicConstraint::conjugated`] without the assertion check.
pub(crate) fn limits_clash(a: &NeutrosophicConstraint, b: &NeutrosophicConstraint) -> bool {
    if a.direction == b.direction {
        return false;
    }
    let (lower, upper) = if a.direction == Direction::Lower { (a, b) } else { (b, a) };
    limits_conflict(lower.truth_limit(), upper.truth_limit())
        || limits_conflict(upper.falsity_limit(), lower.falsity_limit())
}

pub fn conjugated(
    a: &NeutrosophicConstraint,
    b: &NeutrosophicConstraint,
) -> Result<bool, MismatchedAssertions> {
    a.conjugated(b)
}

impl fmt::Display for NeutrosophicConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = self.truth_limit();
        let fl = self.falsity_limit();
        write!(f, "⟨{}: {}{}, {}{}⟩", self.assertion, t.symbol(), t.bound.value, fl.symbol(), fl.bound.value)
    }
}

impl fmt::Debug for NeutrosophicConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
