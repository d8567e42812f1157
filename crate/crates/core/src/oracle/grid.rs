use alloc::vec::Vec;

use crate::degree::Degree;

/// A finite, sorted set of degrees containing 0 and 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeGrid {
    values: Vec<Degree>,
}

impl DegreeGrid {
    pub fn new(values: impl IntoIterator<Item = Degree>) -> Self {
        let mut values: Vec<Degree> = values.into_iter().collect();
        values.push(Degree::ZERO);
        values.push(Degree::ONE);
        values.sort();
        values.dedup();
        DegreeGrid { values }
    }

    /// `{0, 1/4, 1/2, 3/4, 1}`
    pub fn quarters() -> Self {
        Self::new((0..=4).map(|k| crate::degree::deg(k, 4)))
    }

    pub fn values(&self) -> &[Degree] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn index_of(&self, d: Degree) -> Option<usize> {
        self.values.binary_search(&d).ok()
    }

    pub fn value(&self, i: usize) -> Degree {
        self.values[i]
    }

    pub fn contains(&self, d: Degree) -> bool {
        self.index_of(d).is_some()
    }

    pub fn with(&self, extra: impl IntoIterator<Item = Degree>) -> Self {
        Self::new(self.values.iter().copied().chain(extra))
    }

    /// Adds the midpoint of every pair of neighbours, so that each open gap
    /// between grid values contains a representative.
    pub fn with_midpoints(&self) -> Self {
        let mids: Vec<Degree> = self.values.windows(2).map(|w| w[0].midpoint(w[1])).collect();
        self.with(mids)
    }

    /// Adds `1 - v` for every value `v`.
    pub fn closed_under_complement(&self) -> Self {
        let compl: Vec<Degree> = self.values.iter().map(|v| v.complement()).collect();
        self.with(compl)
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.values.len();
        (0..n).all(|i| self.values[i].complement() == self.values[n - 1 - i])
    }
}
