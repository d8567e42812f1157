//! Exact rational degrees in the unit interval.

use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Sub};

use num_rational::Ratio;
use num_traits::{One, Zero};

/// A rational number in `[0, 1]`.
///
/// Degrees are compared for equality by the calculus (conjugated pairs,
/// rule side conditions), so they are never stored as binary floats.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Degree(Ratio<i64>);

/// Error returned when a value falls outside `[0, 1]` or has a zero denominator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DegreeError {
    OutOfRange { numer: i64, denom: i64 },
    ZeroDenominator,
}

impl fmt::Display for DegreeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DegreeError::OutOfRange { numer, denom } => {
                write!(f, "degree {numer}/{denom} lies outside [0, 1]")
            }
            DegreeError::ZeroDenominator => f.write_str("degree has a zero denominator"),
        }
    }
}

impl core::error::Error for DegreeError {}

impl Degree {
    pub const ZERO: Degree = Degree(Ratio::new_raw(0, 1));
    pub const ONE: Degree = Degree(Ratio::new_raw(1, 1));

    pub fn new(numer: i64, denom: i64) -> Result<Self, DegreeError> {
        if denom == 0 {
            return Err(DegreeError::ZeroDenominator);
        }
        let r = Ratio::new(numer, denom);
        if r < Ratio::zero() || r > Ratio::one() {
            return Err(DegreeError::OutOfRange { numer, denom });
        }
        Ok(Degree(r))
    }

    /// Builds a degree from a ratio, panicking if out of range. Intended for
    /// literals in tests and internal arithmetic whose range is known.
    pub fn from_ratio(r: Ratio<i64>) -> Self {
        assert!(r >= Ratio::zero() && r <= Ratio::one(), "degree {r} outside [0, 1]");
        Degree(r)
    }

    pub fn ratio(self) -> Ratio<i64> {
        self.0
    }

    pub fn numer(self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(self) -> i64 {
        *self.0.denom()
    }

    pub fn is_zero(self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(self) -> bool {
        self.0.is_one()
    }

    /// `1 - self`.
    pub fn complement(self) -> Self {
        Degree(Ratio::one() - self.0)
    }

    /// Midpoint of two degrees.
    pub fn midpoint(self, other: Self) -> Self {
        Degree((self.0 + other.0) / Ratio::from_integer(2))
    }

    /// `self + delta`, clamped to `[0, 1]`.
    pub fn saturating_add(self, delta: Ratio<i64>) -> Self {
        let r = self.0 + delta;
        Degree(r.clamp(Ratio::zero(), Ratio::one()))
    }

    /// `self - delta`, clamped to `[0, 1]`.
    pub fn saturating_sub(self, delta: Ratio<i64>) -> Self {
        let r = self.0 - delta;
        Degree(r.clamp(Ratio::zero(), Ratio::one()))
    }

    /// Whether the value has a finite decimal expansion.
    pub fn is_terminating_decimal(self) -> bool {
        let mut d = self.denom();
        while d % 2 == 0 {
            d /= 2;
        }
        while d % 5 == 0 {
            d /= 5;
        }
        d == 1
    }

    /// Rational rendering `p/q` (integers render without a denominator).
    pub fn to_fraction_string(self) -> alloc::string::String {
        if self.denom() == 1 {
            alloc::format!("{}", self.numer())
        } else {
            alloc::format!("{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Decimal when the expansion terminates, `p/q` otherwise.
impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.is_terminating_decimal() {
            return write!(f, "{}/{}", self.numer(), self.denom());
        }
        let numer = self.numer();
        let denom = self.denom();
        let int = numer / denom;
        let mut rem = numer % denom;
        if rem == 0 {
            return write!(f, "{int}");
        }
        write!(f, "{int}.")?;
        while rem != 0 {
            rem *= 10;
            write!(f, "{}", rem / denom)?;
            rem %= denom;
        }
        Ok(())
    }
}

impl Add<Ratio<i64>> for Degree {
    type Output = Ratio<i64>;
    fn add(self, rhs: Ratio<i64>) -> Ratio<i64> {
        self.0 + rhs
    }
}

impl Sub for Degree {
    type Output = Ratio<i64>;
    fn sub(self, rhs: Degree) -> Ratio<i64> {
        self.0 - rhs.0
    }
}

impl PartialEq<Ratio<i64>> for Degree {
    fn eq(&self, other: &Ratio<i64>) -> bool {
        self.0 == *other
    }
}

impl PartialOrd<Ratio<i64>> for Degree {
    fn partial_cmp(&self, other: &Ratio<i64>) -> Option<Ordering> {
        self.0.partial_cmp(other)
    }
}

/// Shorthand for a degree literal `numer/denom`; panics when out of range.
pub fn deg(numer: i64, denom: i64) -> Degree {
    Degree::new(numer, denom).expect("degree literal in [0, 1]")
}

/// A pair of degrees.
///
/// In an interpretation the pair is the (truth, falsity) value of a concept or
/// role at a point; in an assertion it is the `(n, m)` bound pair.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DegreePair {
    pub n: Degree,
    pub m: Degree,
}

impl DegreePair {
    pub const fn new(n: Degree, m: Degree) -> Self {
        DegreePair { n, m }
    }

    /// `⟨0, 1⟩`, the value of `⊥` and the default table entry.
    pub const BOTTOM: DegreePair = DegreePair { n: Degree::ZERO, m: Degree::ONE };
    /// `⟨1, 0⟩`, the value of `⊤`.
    pub const TOP: DegreePair = DegreePair { n: Degree::ONE, m: Degree::ZERO };

    pub fn truth(self) -> Degree {
        self.n
    }

    pub fn falsity(self) -> Degree {
        self.m
    }

    pub fn swap(self) -> Self {
        DegreePair { n: self.m, m: self.n }
    }
}

impl fmt::Debug for DegreePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{}, {}⟩", self.n, self.m)
    }
}

impl fmt::Display for DegreePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{}, {}⟩", self.n, self.m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn range_is_enforced() {
        assert!(Degree::new(6, 5).is_err());
        assert!(Degree::new(-1, 5).is_err());
        assert_eq!(Degree::new(1, 0), Err(DegreeError::ZeroDenominator));
        assert_eq!(Degree::new(3, 5).unwrap(), deg(6, 10));
    }

    #[test]
    fn display_prefers_decimals() {
        assert_eq!(deg(3, 5).to_string(), "0.6");
        assert_eq!(deg(1, 8).to_string(), "0.125");
        assert_eq!(deg(1, 3).to_string(), "1/3");
        assert_eq!(Degree::ONE.to_string(), "1");
        assert_eq!(Degree::ZERO.to_string(), "0");
        assert_eq!(deg(3, 5).to_fraction_string(), "3/5");
    }

    #[test]
    fn midpoint_and_complement() {
        assert_eq!(deg(3, 5).midpoint(Degree::ONE), deg(4, 5));
        assert_eq!(deg(1, 4).complement(), deg(3, 4));
    }
}
