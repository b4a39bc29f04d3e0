//! Shared generators for the property tests.
#![allow(dead_code)]

use lpw_core::{Formula, Level, Term};
use proptest::prelude::*;

pub mod mutate;
pub mod naive;

pub const VARS: [&str; 4] = ["x", "y", "z", "u"];
pub const CONSTS: [&str; 2] = ["C", "D"];
pub const ATOMS: [&str; 3] = ["P", "Q", "R"];

pub fn arb_term() -> impl Strategy<Value = Term> {
    prop_oneof![
        3 => proptest::sample::select(&VARS[..]).prop_map(Term::var),
        1 => proptest::sample::select(&CONSTS[..]).prop_map(Term::constant),
    ]
}

pub fn arb_level() -> impl Strategy<Value = Level> {
    prop_oneof![4 => (0u32..4).prop_map(Level::Finite), 1 => Just(Level::Omega)]
}

fn arb_leaf() -> impl Strategy<Value = Formula> {
    prop_oneof![
        4 => proptest::sample::select(&ATOMS[..]).prop_map(Formula::prop),
        1 => (proptest::sample::select(&["S", "T"][..]), proptest::collection::vec(arb_term(), 1..3))
            .prop_map(|(p, args)| Formula::pred(p, args)),
        1 => (arb_term(), arb_term()).prop_map(|(a, b)| Formula::Mem(a, b)),
        1 => (arb_term(), arb_term()).prop_map(|(a, b)| Formula::StrongEq(a, b)),
        1 => (arb_term(), arb_term()).prop_map(|(a, b)| Formula::WeakEq(a, b)),
    ]
}

/// Formulas of every node kind, nested up to `depth` levels.
pub fn arb_formula(depth: u32) -> impl Strategy<Value = Formula> {
    arb_leaf().prop_recursive(depth, 48, 2, |inner| {
        let var = proptest::sample::select(&VARS[..]);
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            inner.clone().prop_map(Formula::defneg),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::imp(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::iff(a, b)),
            (var.clone(), inner.clone()).prop_map(|(x, a)| Formula::forall(x, a)),
            (var, inner.clone()).prop_map(|(x, a)| Formula::exists(x, a)),
            (inner.clone(), arb_level()).prop_map(|(a, n)| Formula::cons(a, n)),
            (inner, arb_level()).prop_map(|(a, n)| Formula::incons(a, n)),
        ]
    })
}

/// Propositional formulas over the given atoms, without level operators.
pub fn arb_prop(atoms: &'static [&'static str], depth: u32) -> impl Strategy<Value = Formula> {
    proptest::sample::select(atoms).prop_map(Formula::prop).prop_recursive(depth, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::imp(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::iff(a, b)),
        ]
    })
}

pub fn p(s: &str) -> Formula {
    lpw_core::syntax::parse_formula(s).unwrap()
}

use lpw_core::formula::expand_levels;
use lpw_core::registry::Registry;
use lpw_core::schema::{instantiate_with, side_condition, Profile, SchemaId, SchemaInstance, SchemaSettings};
use proptest::strategy::ValueTree;
use proptest::test_runner::TestRunner;

pub fn draw<S: Strategy>(s: &S, runner: &mut TestRunner) -> S::Value {
    s.new_tree(runner).expect("strategy").current()
}

/// The profile under which `s` is tried.
pub fn profile_for(s: SchemaId) -> Profile {
    match s {
        SchemaId::Lp1Excluded | SchemaId::Lp1Explosion | SchemaId::Lp1ExcludedFourth | SchemaId::EXIIReflexive => {
            Profile::Lp1
        }
        _ => Profile::KSth,
    }
}

/// A random instance of `s` that satisfies its side conditions, together
/// with a registry making it valid. `None` when the draw was unusable (for
/// example a substitution that would capture a variable).
pub fn random_instance(
    s: SchemaId,
    fillers: &impl Strategy<Value = Formula>,
    runner: &mut TestRunner,
) -> Option<(SchemaInstance, Formula, Registry, SchemaSettings)> {
    let settings = SchemaSettings::with_profile(profile_for(s));
    let m = s.metavariables();
    let mut inst = SchemaInstance::new(s);
    let mut registry = Registry::new();
    let n = if settings.profile == Profile::Lp1 { 0 } else { draw(&(0u32..=3), runner) };
    for meta in m.formulas {
        let f = if matches!(s, SchemaId::Lp9 | SchemaId::Lp10 | SchemaId::Lp11) {
            Formula::prop(draw(&proptest::sample::select(&ATOMS[..]), runner))
        } else {
            expand_levels(&draw(fillers, runner))
        };
        inst = inst.formula(meta, f);
    }
    let vars = proptest::sample::subsequence(&VARS[..], m.bound_vars.len());
    for (meta, v) in m.bound_vars.iter().zip(draw(&vars, runner)) {
        inst = inst.term(meta, Term::var(v));
    }
    for meta in m.terms {
        inst = inst.term(meta, draw(&arb_term(), runner));
    }
    if m.level {
        inst = inst.level(if s == SchemaId::Lp11 { n.max(1) } else { n });
    }
    match s {
        SchemaId::Lp9 => registry.insert(inst.subst["P"].clone(), 1).ok()?,
        SchemaId::Lp10 => registry.insert(inst.subst["P"].clone(), 2).ok()?,
        SchemaId::Lp11 => registry.insert(inst.subst["P"].clone(), inst.n().unwrap()).ok()?,
        _ => {}
    }
    let f = instantiate_with(&inst, &settings).ok()?;
    side_condition(&inst, &registry, &settings).ok()?;
    Some((inst, f, registry, settings))
}

/// Fillers without level operators, so substitutions compare literally.
pub fn arb_filler() -> impl Strategy<Value = Formula> {
    arb_formula(3).prop_filter("no level operators", |f| !f.contains_level_ops())
}
