//! Concept expressions, objects and assertions.

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::string::String;
use core::fmt;

/// An ALC concept expression.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Concept {
    Top,
    Bottom,
    Atomic(String),
    And(Box<Concept>, Box<Concept>),
    Or(Box<Concept>, Box<Concept>),
    Not(Box<Concept>),
    Forall(String, Box<Concept>),
    Exists(String, Box<Concept>),
}

impl Concept {
    pub fn atom(name: impl Into<String>) -> Self {
        Concept::Atomic(name.into())
    }

    pub fn and(left: Concept, right: Concept) -> Self {
        Concept::And(Box::new(left), Box::new(right))
    }

    pub fn or(left: Concept, right: Concept) -> Self {
        Concept::Or(Box::new(left), Box::new(right))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(inner: Concept) -> Self {
        Concept::Not(Box::new(inner))
    }

    pub fn forall(role: impl Into<String>, filler: Concept) -> Self {
        Concept::Forall(role.into(), Box::new(filler))
    }

    pub fn exists(role: impl Into<String>, filler: Concept) -> Self {
        Concept::Exists(role.into(), Box::new(filler))
    }

    /// Negation normal form: negation only in front of atomic concepts.
    pub fn nnf(&self) -> Concept {
        match self {
            Concept::Top | Concept::Bottom | Concept::Atomic(_) => self.clone(),
            Concept::And(l, r) => Concept::and(l.nnf(), r.nnf()),
            Concept::Or(l, r) => Concept::or(l.nnf(), r.nnf()),
            Concept::Forall(role, c) => Concept::forall(role.clone(), c.nnf()),
            Concept::Exists(role, c) => Concept::exists(role.clone(), c.nnf()),
            Concept::Not(inner) => match inner.as_ref() {
                Concept::Top => Concept::Bottom,
                Concept::Bottom => Concept::Top,
                Concept::Atomic(_) => self.clone(),
                Concept::Not(c) => c.nnf(),
                Concept::And(l, r) => Concept::or(negated_nnf(l), negated_nnf(r)),
                Concept::Or(l, r) => Concept::and(negated_nnf(l), negated_nnf(r)),
                Concept::Forall(role, c) => Concept::exists(role.clone(), negated_nnf(c)),
                Concept::Exists(role, c) => Concept::forall(role.clone(), negated_nnf(c)),
            },
        }
    }

    pub fn is_nnf(&self) -> bool {
        match self {
            Concept::Top | Concept::Bottom | Concept::Atomic(_) => true,
            Concept::Not(inner) => matches!(inner.as_ref(), Concept::Atomic(_)),
            Concept::And(l, r) | Concept::Or(l, r) => l.is_nnf() && r.is_nnf(),
            Concept::Forall(_, c) | Concept::Exists(_, c) => c.is_nnf(),
        }
    }

    /// Every subexpression of `self`, including `self`.
    pub fn subconcepts(&self) -> BTreeSet<Concept> {
        let mut out = BTreeSet::new();
        self.collect_subconcepts(&mut out);
        out
    }

    fn collect_subconcepts(&self, out: &mut BTreeSet<Concept>) {
        if !out.insert(self.clone()) {
            return;
        }
        match self {
            Concept::Top | Concept::Bottom | Concept::Atomic(_) => {}
            Concept::And(l, r) | Concept::Or(l, r) => {
                l.collect_subconcepts(out);
                r.collect_subconcepts(out);
            }
            Concept::Not(c) | Concept::Forall(_, c) | Concept::Exists(_, c) => c.collect_subconcepts(out),
        }
    }

    /// Height of the expression tree; atoms and constants have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Concept::Top | Concept::Bottom | Concept::Atomic(_) => 0,
            Concept::And(l, r) | Concept::Or(l, r) => 1 + l.depth().max(r.depth()),
            Concept::Not(c) | Concept::Forall(_, c) | Concept::Exists(_, c) => 1 + c.depth(),
        }
    }

    /// Maximum nesting of role quantifiers.
    pub fn quantifier_depth(&self) -> usize {
        match self {
            Concept::Top | Concept::Bottom | Concept::Atomic(_) => 0,
            Concept::And(l, r) | Concept::Or(l, r) => l.quantifier_depth().max(r.quantifier_depth()),
            Concept::Not(c) => c.quantifier_depth(),
            Concept::Forall(_, c) | Concept::Exists(_, c) => 1 + c.quantifier_depth(),
        }
    }

    /// Number of nodes in the expression tree.
    pub fn size(&self) -> usize {
        match self {
            Concept::Top | Concept::Bottom | Concept::Atomic(_) => 1,
            Concept::And(l, r) | Concept::Or(l, r) => 1 + l.size() + r.size(),
            Concept::Not(c) | Concept::Forall(_, c) | Concept::Exists(_, c) => 1 + c.size(),
        }
    }

    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |c| {
            if let Concept::Atomic(a) = c {
                out.insert(a.clone());
            }
        });
        out
    }

    pub fn roles(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |c| {
            if let Concept::Forall(r, _) | Concept::Exists(r, _) = c {
                out.insert(r.clone());
            }
        });
        out
    }

    /// Pre-order traversal.
    pub fn visit(&self, f: &mut impl FnMut(&Concept)) {
        f(self);
        match self {
            Concept::Top | Concept::Bottom | Concept::Atomic(_) => {}
            Concept::And(l, r) | Concept::Or(l, r) => {
                l.visit(f);
                r.visit(f);
            }
            Concept::Not(c) | Concept::Forall(_, c) | Concept::Exists(_, c) => c.visit(f),
        }
    }

    /// Replaces atomic concepts according to `f`; atoms mapped to `None` are kept.
    pub fn substitute(&self, f: &impl Fn(&str) -> Option<Concept>) -> Concept {
        match self {
            Concept::Top | Concept::Bottom => self.clone(),
            Concept::Atomic(a) => f(a).unwrap_or_else(|| self.clone()),
            Concept::And(l, r) => Concept::and(l.substitute(f), r.substitute(f)),
            Concept::Or(l, r) => Concept::or(l.substitute(f), r.substitute(f)),
            Concept::Not(c) => Concept::not(c.substitute(f)),
            Concept::Forall(role, c) => Concept::forall(role.clone(), c.substitute(f)),
            Concept::Exists(role, c) => Concept::exists(role.clone(), c.substitute(f)),
        }
    }
}

fn negated_nnf(c: &Concept) -> Concept {
    Concept::not(c.clone()).nnf()
}

/// Infix rendering with the usual DL symbols, e.g. `∃Support.(War ⊓ war_x*)`.
impl fmt::Display for Concept {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn operand(c: &Concept, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match c {
                Concept::And(..) | Concept::Or(..) => write!(f, "({c})"),
                _ => write!(f, "{c}"),
            }
        }
        match self {
            Concept::Top => f.write_str("⊤"),
            Concept::Bottom => f.write_str("⊥"),
            Concept::Atomic(a) => f.write_str(a),
            Concept::And(l, r) => {
                operand(l, f)?;
                f.write_str(" ⊓ ")?;
                operand(r, f)
            }
            Concept::Or(l, r) => {
                operand(l, f)?;
                f.write_str(" ⊔ ")?;
                operand(r, f)
            }
            Concept::Not(c) => {
                f.write_str("¬")?;
                operand(c, f)
            }
            Concept::Forall(role, c) => {
                write!(f, "∀{role}.")?;
                operand(c, f)
            }
            Concept::Exists(role, c) => {
                write!(f, "∃{role}.")?;
                operand(c, f)
            }
        }
    }
}

impl fmt::Debug for Concept {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// An individual or a tableau variable.
///
/// Variables live in their own namespace and are only introduced by the
/// generating rules of the tableau.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Object {
    Individual(String),
    Variable(u32),
}

impl Object {
    pub fn individual(name: impl Into<String>) -> Self {
        Object::Individual(name.into())
    }

    pub fn is_individual(&self) -> bool {
        matches!(self, Object::Individual(_))
    }
}

impl fmt::Display for Object {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Object::Individual(name) => f.write_str(name),
            Object::Variable(k) => write!(f, "x{k}"),
        }
    }
}

impl fmt::Debug for Object {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `C(ω)` or `R(ω, ω′)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Assertion {
    Concept { concept: Concept, subject: Object },
    Role { role: String, subject: Object, object: Object },
}

impl Assertion {
    pub fn concept(concept: Concept, subject: Object) -> Self {
        Assertion::Concept { concept, subject }
    }

    pub fn role(role: impl Into<String>, subject: Object, object: Object) -> Self {
        Assertion::Role { role: role.into(), subject, object }
    }

    pub fn objects(&self) -> impl Iterator<Item = &Object> {
        let (a, b) = match self {
            Assertion::Concept { subject, .. } => (subject, None),
            Assertion::Role { subject, object, .. } => (subject, Some(object)),
        };
        core::iter::once(a).chain(b)
    }

    pub fn concept_expr(&self) -> Option<&Concept> {
        match self {
            Assertion::Concept { concept, .. } => Some(concept),
            Assertion::Role { .. } => None,
        }
    }

    /// Applies `f` to the concept of a concept assertion.
    pub fn map_concept(&self, f: impl FnOnce(&Concept) -> Concept) -> Assertion {
        match self {
            Assertion::Concept { concept, subject } => {
                Assertion::Concept { concept: f(concept), subject: subject.clone() }
            }
            Assertion::Role { .. } => self.clone(),
        }
    }
}

impl fmt::Display for Assertion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Assertion::Concept { concept, subject } => match concept {
                Concept::Atomic(_) | Concept::Top | Concept::Bottom => {
                    write!(f, "{concept}({subject})")
                }
                _ => write!(f, "({concept})({subject})"),
            },
            Assertion::Role { role, subject, object } => write!(f, "{role}({subject}, {object})"),
        }
    }
}

impl fmt::Debug for Assertion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
