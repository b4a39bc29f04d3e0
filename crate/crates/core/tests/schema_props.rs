mod common;

use common::{arb_filler, arb_prop, draw, profile_for, random_instance, ATOMS};
use lpw_core::formula::as_incons;
use lpw_core::oracle::{is_satisfiable, is_tautology};
use lpw_core::registry::Registry;
use lpw_core::schema::{instantiate_with, match_axiom_with, match_schema, SchemaId, SchemaInstance, SchemaSettings};
use lpw_core::Formula;
use proptest::test_runner::{Config, TestRunner};

const PER_SCHEMA: usize = 100;

fn axioms() -> impl Iterator<Item = SchemaId> {
    SchemaId::ALL.into_iter().filter(|s| !s.is_rule())
}

/// Whether the extracted instance must equal the generated one: a filler that
/// is itself an unfolded inconsistency can be read at a different level.
/// Likewise a quantifier instance whose body does not mention the bound
/// variable leaves the witness term undetermined.
fn unambiguous(inst: &SchemaInstance) -> bool {
    let vacuous =
        matches!(inst.schema, SchemaId::QII | SchemaId::QIII) && !inst.subst["A"].has_free(inst.term_subst["x"].name());
    !vacuous && inst.subst.values().all(|f| as_incons(f).is_none())
}

#[test]
fn instantiate_then_match_round_trips() {
    let mut runner =
        TestRunner::new(Config { rng_seed: proptest::test_runner::RngSeed::Fixed(7), ..Config::default() });
    let fillers = arb_filler();
    for s in axioms() {
        let mut valid = 0;
        for _ in 0..20 * PER_SCHEMA {
            if valid == PER_SCHEMA {
                break;
            }
            let Some((inst, f, r, settings)) = random_instance(s, &fillers, &mut runner) else { continue };
            valid += 1;
            let got = match_schema(s, &f, &r, &settings).unwrap_or_else(|| panic!("{s} did not match {f}"));
            assert_eq!(instantiate_with(&got, &settings).unwrap(), f, "{s}");
            if unambiguous(&inst) {
                assert_eq!(got, inst, "{s} on {f}");
            }
            let first = match_axiom_with(&f, &r, &settings).expect("some schema matches");
            assert!(
                SchemaId::ALL.iter().position(|&t| t == first.schema) <= SchemaId::ALL.iter().position(|&t| t == s)
            );
        }
        assert_eq!(valid, PER_SCHEMA, "{s}: too few valid draws");
    }
}

#[test]
fn moving_the_atom_into_vhat_blocks_the_schema() {
    let mut runner = TestRunner::deterministic();
    let atom = proptest::sample::select(&ATOMS[..]);
    let fillers = arb_filler();
    let mut cases = 0;
    for _ in 0..200 {
        let a = Formula::prop(draw(&atom, &mut runner));
        let other = lpw_core::formula::expand_levels(&draw(&fillers, &mut runner));
        let n = draw(&(0u32..=3), &mut runner);
        // (schema, instance, registry making it valid, registry violating it)
        let reg = |lvl: u32| Registry::new().with(a.clone(), lvl).unwrap();
        let constructed: Vec<(SchemaId, SchemaInstance, Registry, Registry)> = vec![
            (SchemaId::Lp9, SchemaInstance::new(SchemaId::Lp9).formula("P", a.clone()), reg(1), Registry::new()),
            (SchemaId::Lp10, SchemaInstance::new(SchemaId::Lp10).formula("P", a.clone()), reg(2), reg(1)),
            (
                SchemaId::Lp11,
                SchemaInstance::new(SchemaId::Lp11).formula("P", a.clone()).level(n + 1),
                reg(n + 1),
                reg(n + 2),
            ),
            (SchemaId::Lp12, SchemaInstance::new(SchemaId::Lp12).formula("A", a.clone()), Registry::new(), reg(1)),
            (SchemaId::Lp13, SchemaInstance::new(SchemaId::Lp13).formula("A", a.clone()), reg(1), reg(3)),
            (
                SchemaId::Lp14,
                SchemaInstance::new(SchemaId::Lp14).formula("A", a.clone()).level(n + 1),
                Registry::new(),
                reg(n + 2),
            ),
            (
                SchemaId::Lp15,
                SchemaInstance::new(SchemaId::Lp15).formula("B", a.clone()).formula("A", other.clone()),
                Registry::new(),
                reg(n + 1),
            ),
            (
                SchemaId::Lp1Excluded,
                SchemaInstance::new(SchemaId::Lp1Excluded).formula("A", a.clone()),
                Registry::new(),
                reg(1),
            ),
            (
                SchemaId::Lp1Explosion,
                SchemaInstance::new(SchemaId::Lp1Explosion).formula("B", a.clone()).formula("A", other.clone()),
                Registry::new(),
                reg(1),
            ),
        ];
        for (s, inst, good, bad) in constructed {
            let settings = SchemaSettings::with_profile(profile_for(s));
            let f = instantiate_with(&inst, &settings).unwrap();
            assert!(match_schema(s, &f, &good, &settings).is_some(), "{s}: {f}");
            assert!(match_schema(s, &f, &bad, &settings).is_none(), "{s}: {f} under {bad:?}");
            let first = match_axiom_with(&f, &bad, &settings);
            assert!(first.is_none(), "{s}: {f} still matches {:?}", first.map(|i| i.schema));
            cases += 1;
        }
    }
    assert!(cases >= 1000);
}

#[test]
fn classical_audit_of_vhat_free_instances() {
    let mut runner = TestRunner::deterministic();
    let fillers = arb_prop(&["P", "Q", "R"], 2);
    let tautological = [
        SchemaId::Lp1,
        SchemaId::Lp2,
        SchemaId::Lp3,
        SchemaId::Lp4,
        SchemaId::Lp5,
        SchemaId::Lp6,
        SchemaId::Lp7,
        SchemaId::Lp8,
        SchemaId::Lp12,
        SchemaId::Lp13,
        SchemaId::Lp14,
    ];
    let mut checked = 0;
    while checked < 1100 {
        let s = tautological[checked % tautological.len()];
        let Some((_, f, r, _)) = random_instance(s, &fillers, &mut runner) else { continue };
        assert!(r.is_empty());
        assert_eq!(is_tautology(&f), Ok(true), "{s}: {f}");
        checked += 1;
    }
    for s in [SchemaId::Lp9, SchemaId::Lp10, SchemaId::Lp11] {
        for _ in 0..50 {
            let Some((_, f, _, _)) = random_instance(s, &fillers, &mut runner) else { continue };
            assert_eq!(is_satisfiable(&f), Ok(false), "{s}: {f}");
        }
    }
}

#[test]
fn matching_is_deterministic() {
    let mut runner = TestRunner::deterministic();
    let fillers = arb_filler();
    for s in axioms() {
        for _ in 0..10 {
            let Some((_, f, r, settings)) = random_instance(s, &fillers, &mut runner) else { continue };
            assert_eq!(match_axiom_with(&f, &r, &settings), match_axiom_with(&f, &r, &settings));
        }
    }
}
