use super::*;
use crate::automata::SyncAutomaton;
use crate::fixtures;
use crate::profinite::satisfies_set;
use crate::semigroup::{catalog, semigroups_up_to_iso};
use crate::words::Alphabet;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn spec(name: &str) -> VarietySpec {
    VarietySpec::builtin(name).unwrap()
}

fn run(r: &Relation, v: &str, m: MethodChoice) -> Verdict {
    decide(r, &spec(v), m, Guards::default()).unwrap()
}

fn subsets(n: usize) -> Vec<Vec<usize>> {
    (0..1usize << n)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
        .collect()
}

#[test]
fn fig1_is_a_group_relation() {
    let v = run(&fixtures::fig1(), "groups", MethodChoice::Auto);
    assert!(v.is_v_relation);
    assert_eq!(v.method, Method::MonoidLifting);
    let Evidence::Monoids { monoids } = &v.evidence else {
        panic!("{v}")
    };
    assert_eq!(monoids.len(), 3);
}

#[test]
fn group_relation_grid() {
    for i in subsets(2) {
        for j in subsets(3) {
            let r = fixtures::zpq(2, 3, &i, &j);
            let want = !i.contains(&0) && !j.contains(&0);
            assert_eq!(
                run(&r, "groups", MethodChoice::Auto).is_v_relation,
                want,
                "I={i:?} J={j:?}"
            );
        }
    }
}

#[test]
fn bounded_prime_is_not_a_group_relation() {
    let v = run(&fixtures::bounded_prime(), "groups", MethodChoice::Lifting);
    assert!(!v.is_v_relation);
    let Evidence::Monoids { monoids } = &v.evidence else {
        panic!()
    };
    assert!(monoids.iter().any(|m| m.failure.is_some()));
}

#[test]
fn positive_counterexample_fails_a_group_dependency() {
    let v = run(&fixtures::left_longer_mod(2, 0), "groups", MethodChoice::Deps);
    assert!(!v.is_v_relation);
    assert!(matches!(v.evidence, Evidence::Dependency { .. }));
    assert!(run(&fixtures::left_longer_mod(2, 1), "groups", MethodChoice::Deps).is_v_relation);
}

#[test]
fn finite_and_universal_relations() {
    assert!(run(&fixtures::nilpotent_finite(), "nilpotent", MethodChoice::Deps).is_v_relation);
    assert!(run(&fixtures::cofinite(), "nilpotent", MethodChoice::Deps).is_v_relation);
    assert!(!run(&fixtures::fig1(), "nilpotent", MethodChoice::Deps).is_v_relation);
    assert!(run(&fixtures::universal(), "commutative", MethodChoice::Deps).is_v_relation);
    for v in classify(&fixtures::universal(), Guards::default()).unwrap() {
        assert!(v.is_v_relation, "{v}");
    }
}

#[test]
fn locally_trivial_samples() {
    for r in [fixtures::loctriv_prefix(), fixtures::loctriv_suffix()] {
        assert!(run(&r, "loctriv", MethodChoice::Deps).is_v_relation);
    }
    assert!(!run(&fixtures::fig1(), "loctriv", MethodChoice::Deps).is_v_relation);
}

#[test]
fn classification_of_fig1_and_last_letter() {
    let table = classify(&fixtures::fig1(), Guards::default()).unwrap();
    let get = |t: &[Verdict], n: &str| t.iter().find(|v| v.variety == n).unwrap().is_v_relation;
    assert!(get(&table, "groups"));
    assert!(get(&table, "commutative"));
    assert!(!get(&table, "aperiodic"));
    let table = classify(&fixtures::last_letter(), Guards::default()).unwrap();
    assert!(!get(&table, "groups"));
}

#[test]
fn lifting_needs_a_monoid_variety() {
    let err = decide(
        &fixtures::fig1(),
        &spec("nilpotent"),
        MethodChoice::Lifting,
        Guards::default(),
    )
    .unwrap_err();
    assert!(matches!(err, Error::VarietyKindMismatch(_)));
    assert!(matches!(
        decide_positive_dependencies(&fixtures::fig1(), &spec("groups"), Guards::default()),
        Err(Error::ModeMismatch(_))
    ));
}

#[test]
fn incomplete_sets_carry_a_caveat() {
    let v = run(&fixtures::universal(), "loctriv-weak", MethodChoice::Deps);
    assert!(v.is_v_relation && v.caveat.is_some());
    assert!(run(&fixtures::universal(), "loctriv", MethodChoice::Deps)
        .caveat
        .is_none());
}

#[test]
fn closure_of_z2_under_aperiodicity() {
    let z2 = FiniteSemigroup::cyclic_group(2);
    let cl = henckell_closure(&z2, &EqualitySet::builtin("aperiodic").unwrap(), CLOSURE_GUARD).unwrap();
    assert_eq!(cl.maximal_sets(), [vec![0, 1]]);
}

#[test]
fn closure_without_equations_is_trivial() {
    let empty = EqualitySet {
        name: "none".into(),
        equations: vec![],
    };
    for (name, s) in catalog() {
        assert!(
            henckell_closure(&s, &empty, CLOSURE_GUARD).unwrap().is_trivial(),
            "{name}"
        );
    }
}

#[test]
fn closure_is_trivial_exactly_on_members() {
    for set in BUILTIN_SETS {
        let e = EqualitySet::builtin(set).unwrap();
        for n in 1..=3 {
            for s in semigroups_up_to_iso(n) {
                let cl = henckell_closure(&s, &e, CLOSURE_GUARD).unwrap();
                assert_eq!(cl.is_trivial(), satisfies_set(&s, &e), "{set} {:?}", s.table());
            }
        }
    }
}

#[test]
fn closure_is_monotone_in_the_equations() {
    let weak = EqualitySet::builtin("loctriv-weak").unwrap();
    let strong = EqualitySet::builtin("loctriv").unwrap();
    for (name, s) in catalog().into_iter().filter(|(_, s)| s.len() <= 3) {
        let a = henckell_closure(&s, &weak, CLOSURE_GUARD).unwrap();
        let b = henckell_closure(&s, &strong, CLOSURE_GUARD).unwrap();
        assert!(a.is_subfamily_of(&b), "{name}");
    }
}

#[test]
fn closure_guard() {
    let s = FiniteSemigroup::cyclic_group(5);
    let err = henckell_closure(&s, &EqualitySet::builtin("groups").unwrap(), 4).unwrap_err();
    assert!(err.is_guard());
}

#[test]
fn pointlike_route() {
    assert!(run(&fixtures::nilpotent_finite(), "aperiodic", MethodChoice::Pointlikes).is_v_relation);
    let v = run(&fixtures::left_longer_mod(2, 0), "aperiodic", MethodChoice::Pointlikes);
    assert!(!v.is_v_relation);
    assert!(matches!(v.evidence, Evidence::Pointlike { ref set } if set.len() >= 2));
    assert!(!run(&fixtures::left_longer_mod(2, 0), "aperiodic", MethodChoice::Deps).is_v_relation);
    assert!(run(&fixtures::nilpotent_finite(), "aperiodic", MethodChoice::Deps).is_v_relation);
}

#[test]
fn pointlikes_agree_with_dependencies_on_the_group_grid() {
    let groups = spec("groups");
    for i in subsets(2) {
        for j in subsets(3) {
            let r = fixtures::zpq(2, 3, &i, &j).with_mode(Mode::Plus);
            let a = decide_pointlikes(&r, &groups, Guards::default()).unwrap();
            let b = decide_positive_dependencies(&r, &groups, Guards::default()).unwrap();
            assert_eq!(a.is_v_relation, b.is_v_relation, "I={i:?} J={j:?}");
        }
    }
}

/// Relation read by a random permutation automaton, hence recognized by a group.
fn permutation_relation(seed: u64, states: usize) -> Relation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let al = Alphabet::from_str_symbols("ab").unwrap();
    let mut a = SyncAutomaton::new(al.clone());
    for q in 0..states {
        a.add_state(format!("q{q}"));
    }
    a.set_initial(0);
    for q in 0..states {
        a.set_final(q, rng.gen_bool(0.5));
    }
    for l in 0..al.num_letters() {
        let mut perm: Vec<usize> = (0..states).collect();
        for i in (1..states).rev() {
            perm.swap(i, rng.gen_range(0..=i));
        }
        for (q, &t) in perm.iter().enumerate() {
            a.add_transition(q, l, t);
        }
    }
    Relation::new(a, Mode::Plus)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn group_recognized_relations_pass_the_dependency_route(seed in any::<u64>(), states in 1usize..=3) {
        let r = permutation_relation(seed, states);
        let v = decide_positive_dependencies(&r, &spec("groups"), Guards::default()).unwrap();
        prop_assert!(v.is_v_relation, "{}", v);
    }
}
