//! Constraint propagation calculus for satisfiability of constraint sets.
//!
//! A constraint set is saturated by the rules in [`rules`]. Deterministic rules
//! run first, then nondeterministic ones (explored depth first, left to
//! right), then the rules that introduce fresh variables. A branch closes as
//! soon as it contains a [`Clash`]; the set is satisfiable iff some branch
//! reaches a clash-free fixpoint, from which [`extract_model`] reads off a
//! finite model.

mod clash;
mod model;
pub mod rules;

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::{self, Write as _};

pub use clash::Clash;
pub use model::{extract_model, ModelError};
pub use rules::Rule;

use crate::constraint::{Direction, NeutrosophicConstraint as Nc};
use crate::syntax::{Assertion, Concept, Object};

/// A constraint with the rule application that added it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub constraint: Nc,
    pub rule: Rule,
    /// Positions of the premises in the entry list.
    pub premises: Vec<usize>,
}

/// A set of constraints in insertion order, with the bookkeeping the rules need.
#[derive(Clone, Debug, Default)]
pub struct ConstraintSet {
    entries: Vec<Entry>,
    index: BTreeMap<Nc, usize>,
    by_assertion: BTreeMap<Assertion, Vec<usize>>,
    /// Role constraints bounded from below, keyed by role and subject.
    edges: BTreeMap<(String, Object), Vec<usize>>,
    /// Constraints that restrict every successor (∀ from below, ∃ from
    /// above), keyed by role and subject.
    universal: BTreeMap<(String, Object), Vec<usize>>,
    clash: Option<Clash>,
    deterministic_done: usize,
    branching_done: usize,
    generating_done: usize,
}

impl PartialEq for ConstraintSet {
    fn eq(&self, other: &Self) -> bool {
        self.entries == other.entries
    }
}

fn universal_key(c: &Nc) -> Option<(String, Object)> {
    match (&c.assertion, c.direction) {
        (Assertion::Concept { concept: Concept::Forall(r, _), subject }, Direction::Lower)
        | (Assertion::Concept { concept: Concept::Exists(r, _), subject }, Direction::Upper) => {
            Some((r.clone(), subject.clone()))
        }
        _ => None,
    }
}

fn edge_key(c: &Nc) -> Option<(String, Object)> {
    match (&c.assertion, c.direction) {
        (Assertion::Role { role, subject, .. }, Direction::Lower) => Some((role.clone(), subject.clone())),
        _ => None,
    }
}

impl ConstraintSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_constraints(constraints: impl IntoIterator<Item = Nc>) -> Self {
        let mut s = Self::new();
        for c in constraints {
            s.insert(c, Rule::Given, Vec::new());
        }
        s
    }

    /// Adds a constraint unless it is already present; returns its position
    /// if it was new.
    pub fn insert(&mut self, c: Nc, rule: Rule, premises: Vec<usize>) -> Option<usize> {
        if self.index.contains_key(&c) {
            return None;
        }
        let k = self.entries.len();
        if self.clash.is_none() {
            self.clash = clash::unary_clash(&c, k).or_else(|| {
                self.by_assertion.get(&c.assertion).and_then(|same| {
                    same.iter().find_map(|&j| clash::pair_clash(&self.entries[j].constraint, j, &c, k))
                })
            });
        }
        self.by_assertion.entry(c.assertion.clone()).or_default().push(k);
        if let Some(key) = edge_key(&c) {
            self.edges.entry(key).or_default().push(k);
        }
        if let Some(key) = universal_key(&c) {
            self.universal.entry(key).or_default().push(k);
        }
        self.index.insert(c.clone(), k);
        self.entries.push(Entry { constraint: c, rule, premises });
        Some(k)
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn constraints(&self) -> impl Iterator<Item = &Nc> {
        self.entries.iter().map(|e| &e.constraint)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains(&self, c: &Nc) -> bool {
        self.index.contains_key(c)
    }

    /// The first clash found while constraints were added.
    pub fn clash(&self) -> Option<Clash> {
        self.clash
    }

    /// Conclusions of the deterministic rules with principal premise `k`
    /// that are not yet present.
    fn deterministic_conclusions(&self, k: usize) -> Vec<(Rule, Nc, Vec<usize>)> {
        let c = &self.entries[k].constraint;
        let mut out = Vec::new();
        if let Some((rule, d)) = rules::negation(c) {
            out.push((rule, d, alloc::vec![k]));
        }
        if let Some((rule, ds)) = rules::decomposition(c) {
            out.extend(ds.into_iter().map(|d| (rule, d, alloc::vec![k])));
        }
        if let Some(key) = universal_key(c) {
            for &j in self.edges.get(&key).into_iter().flatten() {
                if let Some((rule, d)) = rules::propagation(c, &self.entries[j].constraint) {
                    out.push((rule, d, alloc::vec![k, j]));
                }
            }
        }
        if let Some(key) = edge_key(c) {
            for &j in self.universal.get(&key).into_iter().flatten() {
                if let Some((rule, d)) = rules::propagation(&self.entries[j].constraint, c) {
                    out.push((rule, d, alloc::vec![j, k]));
                }
            }
        }
        out.retain(|(_, d, _)| !self.contains(d));
        out
    }

    /// Applies deterministic rules until none adds anything or a clash
    /// appears. Returns the number of constraints added.
    fn saturate(&mut self) -> u64 {
        let mut added = 0;
        while self.clash.is_none() && self.deterministic_done < self.entries.len() {
            let k = self.deterministic_done;
            for (rule, c, premises) in self.deterministic_conclusions(k) {
                if self.insert(c, rule, premises).is_some() {
                    added += 1;
                }
            }
            self.deterministic_done += 1;
        }
        added
    }

    /// The open branching rule application, if any: a constraint none of
    /// whose branches is already contained in the set.
    fn open_branching(&self, from: usize) -> Option<(usize, Rule, Vec<Vec<Nc>>)> {
        (from..self.entries.len()).find_map(|k| {
            let (rule, bs) = rules::branches(&self.entries[k].constraint)?;
            let satisfied = bs.iter().any(|b| b.iter().all(|c| self.contains(c)));
            (!satisfied).then_some((k, rule, bs))
        })
    }

    /// The first unmet witness demand, if any.
    fn open_demand(&self, from: usize) -> Option<(usize, Rule, rules::WitnessDemand)> {
        (from..self.entries.len()).find_map(|k| {
            let (rule, demands) = rules::witnesses(&self.entries[k].constraint)?;
            demands.into_iter().find(|d| !self.is_witnessed(d)).map(|d| (k, rule, d))
        })
    }

    fn is_witnessed(&self, d: &rules::WitnessDemand) -> bool {
        let key = (d.role.clone(), d.subject.clone());
        self.edges.get(&key).into_iter().flatten().any(|&j| {
            let Assertion::Role { object, .. } = &self.entries[j].constraint.assertion else {
                return false;
            };
            self.entries[j].constraint == d.role_constraint(object)
                && self.contains(&d.filler_constraint(object))
        })
    }

    fn generate(&mut self, k: usize, rule: Rule, d: &rules::WitnessDemand, fresh: &mut u32) -> u64 {
        *fresh += 1;
        let x = Object::Variable(*fresh);
        let mut added = 0;
        for c in [d.role_constraint(&x), d.filler_constraint(&x)] {
            if self.insert(c, rule, alloc::vec![k]).is_some() {
                added += 1;
            }
        }
        added
    }

    /// One rule application: the branches it produces (a single one for
    /// deterministic and generating rules), or `None` at a fixpoint. Fresh
    /// variables are numbered after `fresh`, which is advanced.
    pub fn apply_rules(&self, fresh: &mut u32) -> Option<Vec<ConstraintSet>> {
        for k in 0..self.entries.len() {
            if let Some((rule, c, premises)) = self.deterministic_conclusions(k).into_iter().next() {
                let mut next = self.clone();
                next.insert(c, rule, premises);
                return Some(alloc::vec![next]);
            }
        }
        if let Some((k, rule, bs)) = self.open_branching(0) {
            return Some(self.branch_children(k, rule, bs));
        }
        if let Some((k, rule, d)) = self.open_demand(0) {
            let mut next = self.clone();
            next.generate(k, rule, &d, fresh);
            return Some(alloc::vec![next]);
        }
        None
    }

    fn branch_children(&self, k: usize, rule: Rule, bs: Vec<Vec<Nc>>) -> Vec<ConstraintSet> {
        let n = bs.len() as u8;
        bs.into_iter()
            .enumerate()
            .map(|(i, b)| {
                let mut child = self.clone();
                let rule = match rule {
                    Rule::Applied { connective, relations, .. } => {
                        Rule::Applied { connective, relations, branch: Some((i as u8 + 1, n)) }
                    }
                    Rule::Given => Rule::Given,
                };
                for c in b {
                    child.insert(c, rule, alloc::vec![k]);
                }
                child.branching_done = k + 1;
                child
            })
            .collect()
    }

    /// Whether no rule applies.
    pub fn is_complete(&self) -> bool {
        self.apply_rules(&mut self.max_variable()).is_none()
    }

    /// The largest variable index in use, 0 if none.
    pub fn max_variable(&self) -> u32 {
        self.constraints()
            .flat_map(|c| c.assertion.objects())
            .filter_map(|o| match o {
                Object::Variable(k) => Some(*k),
                Object::Individual(_) => None,
            })
            .max()
            .unwrap_or(0)
    }

    /// Numbered derivation lines, `(k) constraint — rule : premises`.
    pub fn render_trace(&self) -> String {
        render_entries(&self.entries)
    }
}

pub fn render_entries(entries: &[Entry]) -> String {
    let mut out = String::new();
    for (i, e) in entries.iter().enumerate() {
        let _ = write!(out, "({}) {} — {}", i + 1, e.constraint, e.rule);
        if !e.premises.is_empty() {
            out.push_str(" :");
            for (j, p) in e.premises.iter().enumerate() {
                let _ = write!(out, "{} ({})", if j > 0 { "," } else { "" }, p + 1);
            }
        }
        out.push('\n');
    }
    out
}

/// Scans a whole set for a clash: an impossible bound on a constant, a strict
/// bound outside `[0, 1]`, or a conjugated pair.
pub fn find_clash(constraints: &[Nc]) -> Option<Clash> {
    constraints.iter().enumerate().find_map(|(i, c)| {
        clash::unary_clash(c, i).or_else(|| {
            constraints[..i]
                .iter()
                .enumerate()
                .filter(|(_, d)| d.assertion == c.assertion)
                .find_map(|(j, d)| clash::pair_clash(d, j, c, i))
        })
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TableauConfig {
    /// Ceiling on branches explored, counting the root.
    pub max_branches: u64,
    /// Ceiling on constraints added over all branches.
    pub max_steps: u64,
    /// Keep every closed branch for proof output.
    pub record_proofs: bool,
}

impl Default for TableauConfig {
    fn default() -> Self {
        TableauConfig { max_branches: 1_000_000, max_steps: 20_000_000, record_proofs: false }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableauError {
    ResourceExhausted { branches: u64, steps: u64 },
}

impl fmt::Display for TableauError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TableauError::ResourceExhausted { branches, steps } => write!(
                f,
                "search exhausted its budget after {branches} branches and {steps} rule applications"
            ),
        }
    }
}

impl core::error::Error for TableauError {}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Satisfiable,
    Unsatisfiable,
}

/// A branch that ended in a clash, with its full derivation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedBranch {
    pub entries: Vec<Entry>,
    pub clash: Clash,
}

impl fmt::Display for ClosedBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_entries(&self.entries))?;
        writeln!(f, "{}", self.clash)
    }
}

#[derive(Clone, Debug)]
pub struct CompletionResult {
    pub status: Status,
    /// The clash-free completion, when satisfiable.
    pub completion: Option<ConstraintSet>,
    /// Closed branches, when unsatisfiable and proofs were requested.
    pub proofs: Vec<ClosedBranch>,
    pub branch_count: u64,
    pub steps: u64,
}

impl CompletionResult {
    pub fn is_satisfiable(&self) -> bool {
        self.status == Status::Satisfiable
    }
}

/// Depth-first search for a clash-free completion.
pub fn complete(
    constraints: impl IntoIterator<Item = Nc>,
    config: &TableauConfig,
) -> Result<CompletionResult, TableauError> {
    let root = ConstraintSet::from_constraints(constraints);
    let mut fresh = root.max_variable();
    let mut stack = alloc::vec![root];
    let mut branches: u64 = 1;
    let mut steps: u64 = 0;
    let mut proofs = Vec::new();
    let exhausted = |branches, steps| TableauError::ResourceExhausted { branches, steps };

    'branches: while let Some(mut s) = stack.pop() {
        loop {
            steps += s.saturate();
            if steps > config.max_steps {
                return Err(exhausted(branches, steps));
            }
            if let Some(clash) = s.clash {
                if config.record_proofs {
                    proofs.push(ClosedBranch { entries: s.entries, clash });
                }
                continue 'branches;
            }
            if let Some((k, rule, bs)) = s.open_branching(s.branching_done) {
                s.branching_done = k;
                let children = s.branch_children(k, rule, bs);
                branches += children.len() as u64;
                if branches > config.max_branches {
                    return Err(exhausted(branches, steps));
                }
                stack.extend(children.into_iter().rev());
                continue 'branches;
            }
            s.branching_done = s.entries.len();
            if let Some((k, rule, d)) = s.open_demand(s.generating_done) {
                s.generating_done = k;
                steps += s.generate(k, rule, &d, &mut fresh);
                continue;
            }
            s.generating_done = s.entries.len();
            return Ok(CompletionResult {
                status: Status::Satisfiable,
                completion: Some(s),
                proofs: Vec::new(),
                branch_count: branches,
                steps,
            });
        }
    }
    Ok(CompletionResult {
        status: Status::Unsatisfiable,
        completion: None,
        proofs,
        branch_count: branches,
        steps,
    })
}
