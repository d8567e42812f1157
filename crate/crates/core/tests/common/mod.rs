#![allow(dead_code)]

use nalc_core::constraint::{Bound, Direction, NeutrosophicConstraint as Nc};
use nalc_core::oracle::FiniteInterpretation;
use nalc_core::{deg, Assertion, Concept, Degree, DegreePair, Object};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::Rng;

pub const ATOMS: [&str; 2] = ["A", "B"];
pub const ROLE: &str = "R";

pub fn ind(name: &str) -> Object {
    Object::individual(name)
}

pub fn on(c: &Concept, o: &str) -> Assertion {
    Assertion::concept(c.clone(), ind(o))
}

/// Multiples of 1/8, so that bounds on quarters can be met strictly.
pub fn eighths() -> Vec<Degree> {
    (0..=8).map(|k| deg(k, 8)).collect()
}

pub fn quarters() -> Vec<Degree> {
    (0..=4).map(|k| deg(k, 4)).collect()
}

pub fn quarter() -> impl Strategy<Value = Degree> {
    (0i64..=4).prop_map(|k| deg(k, 4))
}

pub fn concept(depth: u32) -> impl Strategy<Value = Concept> {
    let leaf = prop_oneof![
        6 => prop::sample::select(ATOMS.to_vec()).prop_map(Concept::atom),
        1 => Just(Concept::Top),
        1 => Just(Concept::Bottom),
    ];
    leaf.prop_recursive(depth, 16, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Concept::not),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Concept::and(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Concept::or(l, r)),
            inner.clone().prop_map(|c| Concept::forall(ROLE, c)),
            inner.prop_map(|c| Concept::exists(ROLE, c)),
        ]
    })
}

pub fn direction() -> impl Strategy<Value = Direction> {
    prop_oneof![Just(Direction::Lower), Just(Direction::Upper)]
}

pub fn bound() -> impl Strategy<Value = Bound> {
    (quarter(), any::<bool>()).prop_map(|(value, strict)| Bound { value, strict })
}

/// A concept constraint on individual `a` or `b` with arbitrary bounds.
pub fn concept_constraint(depth: u32) -> impl Strategy<Value = Nc> {
    (concept(depth), prop::bool::ANY, direction(), bound(), bound()).prop_map(
        |(c, first, direction, truth, falsity)| {
            Nc::new(on(&c, if first { "a" } else { "b" }), direction, truth, falsity)
        },
    )
}

pub fn role_constraint() -> impl Strategy<Value = Nc> {
    (direction(), bound(), bound()).prop_map(|(direction, truth, falsity)| {
        Nc::new(Assertion::role(ROLE, ind("a"), ind("b")), direction, truth, falsity)
    })
}

fn pick(rng: &mut StdRng, values: &[Degree]) -> Degree {
    values[rng.random_range(0..values.len())]
}

/// An interpretation over `sizes` elements (drawn at random) with
/// individuals `a ↦ 0` and, when there is room, `b ↦ 1`; every table entry is
/// drawn from the eighths.
pub fn random_interpretation(
    rng: &mut StdRng,
    sizes: std::ops::RangeInclusive<usize>,
) -> FiniteInterpretation {
    let size = rng.random_range(sizes);
    let grid = eighths();
    let mut m = FiniteInterpretation::new(size);
    m.map_individual("a", 0);
    if size > 1 {
        m.map_individual("b", 1);
    }
    for e in 0..size {
        for a in ATOMS {
            let v = DegreePair::new(pick(rng, &grid), pick(rng, &grid));
            m.set_concept(a, e, v);
        }
        for e2 in 0..size {
            let v = DegreePair::new(pick(rng, &grid), pick(rng, &grid));
            m.set_role(ROLE, e, e2, v);
        }
    }
    m
}

/// A bound met by `x`, from below when `from_below`. The value is a quarter
/// and the bound is strict only when `x` clears it.
fn met_bound(rng: &mut StdRng, x: Degree, from_below: bool) -> Bound {
    let candidates: Vec<Degree> =
        quarters().into_iter().filter(|&q| if from_below { q <= x } else { q >= x }).collect();
    let value = pick(rng, &candidates);
    Bound { value, strict: value != x && rng.random_bool(0.5) }
}

/// A random constraint on `assertion` in `direction` that `value` satisfies.
pub fn satisfied_by(rng: &mut StdRng, assertion: Assertion, direction: Direction, value: DegreePair) -> Nc {
    let lower = direction == Direction::Lower;
    let truth = met_bound(rng, value.truth(), lower);
    let falsity = met_bound(rng, value.falsity(), !lower);
    let c = Nc::new(assertion, direction, truth, falsity);
    assert!(c.admits(value));
    c
}

pub fn random_concept(rng: &mut StdRng, depth: u32) -> Concept {
    if depth == 0 || rng.random_bool(0.25) {
        return match rng.random_range(0..8) {
            0 => Concept::Top,
            1 => Concept::Bottom,
            k => Concept::atom(ATOMS[k % 2]),
        };
    }
    let sub = |rng: &mut StdRng| random_concept(rng, depth - 1);
    match rng.random_range(0..5) {
        0 => Concept::not(sub(rng)),
        1 => Concept::and(sub(rng), sub(rng)),
        2 => Concept::or(sub(rng), sub(rng)),
        3 => Concept::forall(ROLE, sub(rng)),
        _ => Concept::exists(ROLE, sub(rng)),
    }
}
