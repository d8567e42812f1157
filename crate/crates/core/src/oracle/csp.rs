//! A small finite-domain solver for order constraints between min/max terms.
//!
//! Every degree of a concept under the semantics is a lattice term (min, max
//! and, for fuzzy negation, `1 - x`) over table cells. Variables range over
//! indices into a degree grid, so comparisons can be done on indices. The
//! search is exhaustive; interval propagation only prunes.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

pub(crate) type NodeId = usize;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) enum Node {
    Cell(usize),
    Const(usize),
    Min(Vec<NodeId>),
    Max(Vec<NodeId>),
    /// `1 - x`; only valid over a grid that is symmetric around 1/2.
    Compl(NodeId),
}

#[derive(Clone, Copy, Debug)]
struct Le {
    a: NodeId,
    b: NodeId,
    strict: bool,
}

/// Search stopped after visiting the configured number of nodes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Exhausted {
    pub visited: u64,
}

#[derive(Clone, Debug)]
pub(crate) struct Csp {
    nodes: Vec<Node>,
    interned: BTreeMap<Node, NodeId>,
    cells: usize,
    top: usize,
    constraints: Vec<Le>,
    infeasible: bool,
}

impl Csp {
    pub fn new(grid_len: usize) -> Self {
        assert!(grid_len >= 2, "grid must contain 0 and 1");
        Csp {
            nodes: Vec::new(),
            interned: BTreeMap::new(),
            cells: 0,
            top: grid_len - 1,
            constraints: Vec::new(),
            infeasible: false,
        }
    }

    fn intern(&mut self, node: Node) -> NodeId {
        if let Some(&id) = self.interned.get(&node) {
            return id;
        }
        let id = self.nodes.len();
        self.nodes.push(node.clone());
        self.interned.insert(node, id);
        id
    }

    /// A fresh cell ranging over the whole grid. Returns (node, cell index).
    pub fn cell(&mut self) -> (NodeId, usize) {
        let c = self.cells;
        self.cells += 1;
        (self.intern(Node::Cell(c)), c)
    }

    pub fn constant(&mut self, index: usize) -> NodeId {
        debug_assert!(index <= self.top);
        self.intern(Node::Const(index))
    }

    fn as_const(&self, id: NodeId) -> Option<usize> {
        match self.nodes[id] {
            Node::Const(k) => Some(k),
            _ => None,
        }
    }

    pub fn min(&mut self, children: Vec<NodeId>) -> NodeId {
        self.lattice(children, true)
    }

    pub fn max(&mut self, children: Vec<NodeId>) -> NodeId {
        self.lattice(children, false)
    }

    fn lattice(&mut self, children: Vec<NodeId>, is_min: bool) -> NodeId {
        // The neutral element of min is the top of the grid, of max the bottom.
        let (neutral, absorbing) = if is_min { (self.top, 0) } else { (0, self.top) };
        let mut konst = neutral;
        let mut rest = Vec::new();
        for child in children {
            let nested = match &self.nodes[child] {
                Node::Min(cs) if is_min => Some(cs.clone()),
                Node::Max(cs) if !is_min => Some(cs.clone()),
                _ => None,
            };
            match (self.as_const(child), nested) {
                (Some(k), _) => konst = if is_min { konst.min(k) } else { konst.max(k) },
                (None, Some(cs)) => rest.extend(cs),
                (None, None) => rest.push(child),
            }
        }
        if konst == absorbing || rest.is_empty() {
            return self.constant(konst);
        }
        if konst != neutral {
            rest.push(self.constant(konst));
        }
        rest.sort_unstable();
        rest.dedup();
        if rest.len() == 1 {
            return rest[0];
        }
        self.intern(if is_min { Node::Min(rest) } else { Node::Max(rest) })
    }

    pub fn compl(&mut self, x: NodeId) -> NodeId {
        match self.nodes[x] {
            Node::Const(k) => self.constant(self.top - k),
            Node::Compl(y) => y,
            _ => self.intern(Node::Compl(x)),
        }
    }

    /// Requires `a ≤ b`, or `a < b` when `strict`.
    pub fn le(&mut self, a: NodeId, b: NodeId, strict: bool) {
        if let (Some(x), Some(y)) = (self.as_const(a), self.as_const(b)) {
            if x > y || (strict && x == y) {
                self.infeasible = true;
            }
            return;
        }
        self.constraints.push(Le { a, b, strict });
    }

    /// Finds grid indices for all cells meeting every constraint.
    #[cfg(test)]
    pub fn solve(&self, max_nodes: u64) -> Result<Option<Vec<usize>>, Exhausted> {
        self.solve_counting(max_nodes, &mut 0)
    }

    /// As [`Csp::solve`], adding the number of visited search nodes to `visited`.
    pub fn solve_counting(&self, max_nodes: u64, visited: &mut u64) -> Result<Option<Vec<usize>>, Exhausted> {
        if self.infeasible {
            return Ok(None);
        }
        let mut solver = Solver {
            csp: self,
            lo: vec![0; self.nodes.len()],
            hi: vec![0; self.nodes.len()],
            visited: *visited,
            max_nodes,
        };
        let mut dom = vec![(0, self.top); self.cells];
        let found = solver.search(&mut dom);
        *visited = solver.visited;
        match found {
            Ok(true) => Ok(Some(dom.into_iter().map(|(lo, _)| lo).collect())),
            Ok(false) => Ok(None),
            Err(()) => Err(Exhausted { visited: solver.visited }),
        }
    }
}

struct Solver<'a> {
    csp: &'a Csp,
    lo: Vec<usize>,
    hi: Vec<usize>,
    visited: u64,
    max_nodes: u64,
}

type Domains = Vec<(usize, usize)>;

struct Choice {
    /// The disjunction itself.
    term: NodeId,
    bound: usize,
    upper: bool,
    options: Vec<NodeId>,
}

enum Branch {
    Choice(Choice),
    Split(usize),
}

impl Solver<'_> {
    fn search(&mut self, dom: &mut Domains) -> Result<bool, ()> {
        self.visited += 1;
        if self.visited > self.max_nodes {
            return Err(());
        }
        if !self.propagate(dom) {
            return Ok(false);
        }
        match self.branch_point(dom) {
            None => Ok(true),
            Some(Branch::Choice(choice)) => {
                // One of the options has to meet the bound. An option that
                // narrows no cell would lead back to the same state, so the
                // choice is abandoned for a split below its term.
                let mut children = Vec::new();
                for &option in &choice.options {
                    let mut next = dom.clone();
                    self.forward(&next);
                    let mut changed = false;
                    let pushed = if choice.upper {
                        self.push_upper(option, choice.bound, &mut next, &mut changed)
                    } else {
                        self.push_lower(option, choice.bound, &mut next, &mut changed)
                    };
                    if !pushed {
                        continue;
                    }
                    if !changed {
                        let mut seen = vec![false; self.csp.nodes.len()];
                        return match self.unfixed_cell(choice.term, dom, &mut seen) {
                            Some(cell) => self.split(cell, dom),
                            None => Ok(false),
                        };
                    }
                    children.push(next);
                }
                for mut next in children {
                    if self.search(&mut next)? {
                        *dom = next;
                        return Ok(true);
                    }
                }
                Ok(false)
            }
            Some(Branch::Split(cell)) => self.split(cell, dom),
        }
    }

    fn split(&mut self, cell: usize, dom: &mut Domains) -> Result<bool, ()> {
        let (lo, hi) = dom[cell];
        let mid = (lo + hi) / 2;
        for half in [(lo, mid), (mid + 1, hi)] {
            let mut next = dom.clone();
            next[cell] = half;
            if self.search(&mut next)? {
                *dom = next;
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Where to branch next. Constraints against a constant reduce to
    /// and/or trees of bounds on cells; the open disjunction with the fewest
    /// options is preferred. Constraints between two terms fall back to
    /// splitting a cell's domain.
    fn branch_point(&self, dom: &Domains) -> Option<Branch> {
        let mut best: Option<Choice> = None;
        let mut split = None;
        for c in &self.csp.constraints {
            let s = usize::from(c.strict);
            if self.hi[c.a] + s <= self.lo[c.b] {
                continue;
            }
            let found = match (&self.csp.nodes[c.a], &self.csp.nodes[c.b]) {
                (_, Node::Const(k)) => self.open_choice(c.a, *k - s, true),
                (Node::Const(k), _) => self.open_choice(c.b, *k + s, false),
                _ => None,
            };
            match found {
                Some(choice) => {
                    if best.as_ref().is_none_or(|b| choice.options.len() < b.options.len()) {
                        best = Some(choice);
                    }
                }
                None if split.is_none() => {
                    let mut seen = vec![false; self.csp.nodes.len()];
                    split = [c.a, c.b].into_iter().find_map(|r| self.unfixed_cell(r, dom, &mut seen));
                }
                None => {}
            }
        }
        best.map(Branch::Choice).or(split.map(Branch::Split))
    }

    /// An unresolved disjunction below `node` for the requirement
    /// `node ≤ bound` (`upper`) or `node ≥ bound`.
    fn open_choice(&self, node: NodeId, bound: usize, upper: bool) -> Option<Choice> {
        if (upper && self.hi[node] <= bound) || (!upper && self.lo[node] >= bound) {
            return None;
        }
        match &self.csp.nodes[node] {
            Node::Cell(_) | Node::Const(_) => None,
            Node::Compl(x) => self.open_choice(*x, self.csp.top - bound, !upper),
            Node::Max(cs) if upper => cs.iter().find_map(|&x| self.open_choice(x, bound, true)),
            Node::Min(cs) if !upper => cs.iter().find_map(|&x| self.open_choice(x, bound, false)),
            Node::Min(cs) | Node::Max(cs) => {
                let options: Vec<NodeId> = cs
                    .iter()
                    .copied()
                    .filter(|&x| if upper { self.lo[x] <= bound } else { self.hi[x] >= bound })
                    .collect();
                Some(Choice { term: node, bound, upper, options })
            }
        }
    }

    fn forward(&mut self, dom: &Domains) {
        let top = self.csp.top;
        for (id, node) in self.csp.nodes.iter().enumerate() {
            let (l, h) = match node {
                Node::Cell(c) => dom[*c],
                Node::Const(k) => (*k, *k),
                Node::Min(cs) => (
                    cs.iter().map(|&c| self.lo[c]).min().unwrap_or(top),
                    cs.iter().map(|&c| self.hi[c]).min().unwrap_or(top),
                ),
                Node::Max(cs) => (
                    cs.iter().map(|&c| self.lo[c]).max().unwrap_or(0),
                    cs.iter().map(|&c| self.hi[c]).max().unwrap_or(0),
                ),
                Node::Compl(x) => (top - self.hi[*x], top - self.lo[*x]),
            };
            self.lo[id] = l;
            self.hi[id] = h;
        }
    }

    fn propagate(&mut self, dom: &mut Domains) -> bool {
        loop {
            self.forward(dom);
            let mut changed = false;
            for c in &self.csp.constraints {
                let s = usize::from(c.strict);
                if self.lo[c.a] + s > self.hi[c.b] {
                    return false;
                }
                let upper = self.hi[c.b] - s;
                let lower = self.lo[c.a] + s;
                if !self.push_upper(c.a, upper, dom, &mut changed)
                    || !self.push_lower(c.b, lower, dom, &mut changed)
                {
                    return false;
                }
            }
            if !changed {
                // Pushing narrows node intervals beyond what the domains
                // guarantee; recompute before the caller inspects them.
                self.forward(dom);
                return true;
            }
        }
    }

    /// Narrows the cells below `node` so that its value can be at most `h`.
    /// Intervals may be stale but never too narrow, so every step is sound.
    fn push_upper(&mut self, node: NodeId, h: usize, dom: &mut Domains, changed: &mut bool) -> bool {
        if self.hi[node] <= h {
            return true;
        }
        if self.lo[node] > h {
            return false;
        }
        self.hi[node] = h;
        let csp = self.csp;
        match &csp.nodes[node] {
            Node::Cell(c) => {
                let d = &mut dom[*c];
                if d.1 > h {
                    d.1 = h;
                    *changed = true;
                }
                d.0 <= d.1
            }
            Node::Const(k) => *k <= h,
            Node::Max(cs) => cs.iter().all(|&x| self.push_upper(x, h, dom, changed)),
            Node::Min(cs) => {
                let mut candidates = cs.iter().filter(|&&x| self.lo[x] <= h);
                match (candidates.next(), candidates.next()) {
                    (None, _) => false,
                    (Some(&only), None) => self.push_upper(only, h, dom, changed),
                    _ => true,
                }
            }
            Node::Compl(x) => self.push_lower(*x, csp.top - h, dom, changed),
        }
    }

    fn push_lower(&mut self, node: NodeId, l: usize, dom: &mut Domains, changed: &mut bool) -> bool {
        if self.lo[node] >= l {
            return true;
        }
        if self.hi[node] < l {
            return false;
        }
        self.lo[node] = l;
        let csp = self.csp;
        match &csp.nodes[node] {
            Node::Cell(c) => {
                let d = &mut dom[*c];
                if d.0 < l {
                    d.0 = l;
                    *changed = true;
                }
                d.0 <= d.1
            }
            Node::Const(k) => *k >= l,
            Node::Min(cs) => cs.iter().all(|&x| self.push_lower(x, l, dom, changed)),
            Node::Max(cs) => {
                let mut candidates = cs.iter().filter(|&&x| self.hi[x] >= l);
                match (candidates.next(), candidates.next()) {
                    (None, _) => false,
                    (Some(&only), None) => self.push_lower(only, l, dom, changed),
                    _ => true,
                }
            }
            Node::Compl(x) => self.push_upper(*x, csp.top - l, dom, changed),
        }
    }

    fn unfixed_cell(&self, node: NodeId, dom: &Domains, seen: &mut [bool]) -> Option<usize> {
        if core::mem::replace(&mut seen[node], true) {
            return None;
        }
        match &self.csp.nodes[node] {
            Node::Cell(c) => (dom[*c].0 < dom[*c].1).then_some(*c),
            Node::Const(_) => None,
            Node::Compl(x) => self.unfixed_cell(*x, dom, seen),
            Node::Min(cs) | Node::Max(cs) => cs.iter().find_map(|&x| self.unfixed_cell(x, dom, seen)),
        }
    }
}
