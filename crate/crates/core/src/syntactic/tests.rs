use super::*;
use crate::algebra::{is_isomorphic, parse_typed_word, recognizer_to_dfa};
use crate::automata::{equivalent, wf_dfa, SyncAutomaton};
use crate::fixtures;

fn ab() -> Alphabet {
    Alphabet::from_str_symbols("ab").unwrap()
}

fn tw(s: &str) -> crate::words::TypedWord {
    parse_typed_word(s).unwrap()
}

#[test]
fn well_formed_words_have_six_element_syntactic_semigroup() {
    let wf = wf_dfa(&ab());
    assert_eq!(syntactic_monoid(&wf, false).unwrap().semigroup.len(), 6);
}

#[test]
fn all_words_have_trivial_syntactic_monoid() {
    let al = ab();
    let mut a = SyncAutomaton::new(al.clone());
    let q = a.add_state("q");
    a.set_initial(q);
    a.set_final(q, true);
    for l in 0..al.num_letters() {
        a.add_transition(q, l, q);
    }
    let all = Dfa::from_nfa(&a);
    let tm = syntactic_monoid(&all, true).unwrap();
    assert_eq!(tm.semigroup.len(), 1);
    assert_eq!(tm.identity, Some(0));
}

#[test]
fn fig1_language_is_not_a_group_language() {
    let tm = syntactic_monoid(&fixtures::fig1().language_dfa(), true).unwrap();
    assert!(!tm.semigroup.is_group());
}

#[test]
fn monoid_guard() {
    let err = syntactic_monoid_with(&fixtures::last_letter().language_dfa(), true, 3).unwrap_err();
    assert!(err.is_guard());
}

#[test]
fn congruence_of_the_empty_set_is_total() {
    let syn = syntactic_sync_algebra(&fixtures::last_letter(), Variant::Unital).unwrap();
    let alg = syn.algebra();
    let cong = syntactic_congruence(alg, &ClosedSubset::empty(alg.len()));
    assert!((0..alg.len()).all(|a| (0..alg.len()).all(|b| cong.related(a, b))));
}

#[test]
fn last_letter_sizes_and_non_transitive_dependency() {
    let syn = syntactic_sync_algebra(&fixtures::last_letter(), Variant::Unital).unwrap();
    let alg = syn.algebra();
    // no left context of type lb exists for ll->lb, so (a,a)(a,_) and (a,a)(b,_) merge there
    assert_eq!(alg.sizes(), [1, 4, 4, 3, 3]);
    let m = &syn.morphism;
    let a_lb = m.eval(&tw("(a,_):lb")).unwrap();
    let b_bl = m.eval(&tw("(_,b):bl")).unwrap();
    let b_lb = m.eval(&tw("(b,_):lb")).unwrap();
    let a_bl = m.eval(&tw("(_,a):bl")).unwrap();
    assert!(alg.related(a_lb, b_bl));
    assert!(alg.related(b_bl, b_lb));
    assert!(!alg.related(a_lb, b_lb));
    assert!(alg.related(a_lb, a_bl));
    let cong = syntactic_congruence(alg, syn.accepting());
    assert!(cong.related(a_lb, b_bl) && cong.related(b_bl, b_lb) && !cong.related(a_lb, b_lb));
}

#[test]
fn congruence_is_an_equivalence_on_each_tag() {
    for (_, r) in fixtures::catalog() {
        let syn = syntactic_sync_algebra(&r, Variant::Unital).unwrap();
        let alg = syn.algebra();
        let tm = syntactic_monoid(&r.language_dfa(), true).unwrap();
        let ind = induced(&tm.semigroup, Variant::Unital, None).unwrap();
        let acc = ClosedSubset::from_raw(ind.origin.iter().map(|&e| tm.accepting[e]).collect());
        let cong = syntactic_congruence(&ind.algebra, &acc);
        assert!(cong.check(&ind.algebra).is_ok());
        assert!(alg.len() <= ind.algebra.len());
    }
}

#[test]
fn universal_relation_has_trivial_algebra() {
    let syn = syntactic_sync_algebra(&fixtures::universal(), Variant::Unital).unwrap();
    assert_eq!(syn.algebra().sizes(), [1; 5]);
    let syn = syntactic_sync_algebra(&as_plus(&fixtures::universal()), Variant::Positive).unwrap();
    assert_eq!(syn.algebra().sizes(), [1; 5]);
}

#[test]
fn zpq_underlying_monoids() {
    let syn = syntactic_sync_algebra(&fixtures::zpq(2, 3, &[1], &[1, 2]), Variant::Unital).unwrap();
    let alg = syn.algebra();
    assert_eq!(alg.underlying(Tag::Ll).len(), 1);
    assert_eq!(alg.underlying(Tag::Lb).len(), 2);
    assert_eq!(alg.underlying(Tag::Bl).len(), 3);
    for t in [Tag::Lb, Tag::Bl] {
        assert!(alg.underlying(t).is_group());
    }
}

#[test]
fn quotient_of_zpq_by_the_congruence_is_syntactic() {
    let z = crate::algebra::zpq_morphism(&ab(), 2, 3);
    let alg = z.target().clone();
    let seeds: Vec<usize> = ["lb:1", "bl:1", "bl:2"].iter().map(|n| alg.find(n).unwrap()).collect();
    let acc = crate::words::close_subset(alg.dep(), &seeds);
    let q = quotient(&alg, &syntactic_congruence(&alg, &acc)).unwrap();
    let syn = syntactic_sync_algebra(&fixtures::zpq(2, 3, &[1], &[1, 2]), Variant::Unital).unwrap();
    assert!(is_isomorphic(&q.algebra, syn.algebra()));
    assert!(!is_isomorphic(&alg, syn.algebra()));
}

#[test]
fn positive_variant_needs_plus_mode() {
    assert!(matches!(
        syntactic_sync_algebra(&fixtures::fig1(), Variant::Positive),
        Err(Error::ModeMismatch(_))
    ));
}

#[test]
fn naive_algebras_of_r0_and_r1_coincide() {
    let r0 = naive_syntactic_algebra(&fixtures::left_longer_mod(2, 0)).unwrap();
    let r1 = naive_syntactic_algebra(&fixtures::left_longer_mod(2, 1)).unwrap();
    assert!(r0.is_associative() && r1.is_associative());
    assert!(r0.is_isomorphic(&r1));
    let u0 = syntactic_sync_algebra(&fixtures::left_longer_mod(2, 0), Variant::Unital).unwrap();
    let u1 = syntactic_sync_algebra(&fixtures::left_longer_mod(2, 1), Variant::Unital).unwrap();
    assert!(!is_isomorphic(u0.algebra(), u1.algebra()));
}

#[test]
fn dependency_is_a_fixed_point_of_the_congruence() {
    for variant in [Variant::Unital, Variant::Positive] {
        for (name, r) in fixtures::catalog() {
            let r = if variant == Variant::Positive { as_plus(&r) } else { r };
            let syn = syntactic_sync_algebra(&r, variant).unwrap();
            let alg = syn.algebra();
            assert!(alg.is_valid(), "{name}");
            assert!(syn.morphism.is_surjective(), "{name}");
            let cong = syntactic_congruence(alg, syn.accepting());
            for a in 0..alg.len() {
                for b in 0..alg.len() {
                    assert_eq!(cong.related(a, b), alg.related(a, b), "{name} {variant}");
                }
            }
        }
    }
}

#[test]
fn round_trip_through_the_recognizer_automaton() {
    for (name, r) in fixtures::catalog() {
        let syn = syntactic_sync_algebra(&r, Variant::Unital).unwrap();
        let back = recognizer_to_dfa(&syn.morphism).unwrap().with_mode(r.mode);
        assert!(equivalent(&back, &r), "{name}");
        let plus = as_plus(&r);
        let syn = syntactic_sync_algebra(&plus, Variant::Positive).unwrap();
        let back = recognizer_to_dfa(&syn.morphism).unwrap();
        assert!(equivalent(&back, &plus), "{name} (positive)");
    }
}

#[test]
fn induced_recognizers_factor_through_the_syntactic_morphism() {
    for (name, r) in fixtures::catalog() {
        let al = r.alphabet().clone();
        let tm = syntactic_monoid(&r.language_dfa(), true).unwrap();
        let carriers = image_carriers(&tm, &al);
        let ind = induced(&tm.semigroup, Variant::Unital, Some(&carriers)).unwrap();
        if ind.algebra.len() > 20 {
            continue;
        }
        let phi = ind.morphism(&al, &tm.letter_map).unwrap();
        let syn = syntactic_sync_algebra(&r, Variant::Unital).unwrap();
        let h = factorization(&phi, &syn.morphism).unwrap_or_else(|| panic!("{name}"));
        let mut hit = vec![false; syn.algebra().len()];
        h.iter().for_each(|&y| hit[y] = true);
        assert!(hit.iter().all(|&b| b), "{name}");
    }
}

#[test]
fn no_factorization_into_a_finer_algebra() {
    let zpq = syntactic_sync_algebra(&fixtures::zpq(2, 3, &[1], &[1, 2]), Variant::Unital).unwrap();
    let univ = syntactic_sync_algebra(&fixtures::universal(), Variant::Unital).unwrap();
    assert!(factorization(&zpq.morphism, &univ.morphism).is_some());
    assert!(factorization(&univ.morphism, &zpq.morphism).is_none());
}

#[test]
fn consolidation_diagrams_commute() {
    for r in [fixtures::fig1(), fixtures::universal()] {
        let rep = consolidation_diagram_check(&r, 6, 6).unwrap();
        assert!(rep.commutes, "{:?}", rep.witness);
        assert!(rep.homomorphism && rep.surjective);
    }
    let rep = consolidation_diagram_check(&fixtures::universal(), 4, 4).unwrap();
    assert_eq!(rep.semigroup_size, 6);
    let rep = consolidation_diagram_check(&fixtures::left_longer_mod(2, 0), 6, 6).unwrap();
    assert!(rep.commutes && rep.homomorphism && rep.surjective);
    assert_eq!(rep.type_image_size, 6);
}

#[test]
fn trace_reports_the_pipeline_sizes() {
    let syn = syntactic_sync_algebra(&fixtures::last_letter(), Variant::Unital).unwrap();
    assert_eq!(syn.trace.class_counts, [1, 4, 4, 3, 3]);
    assert!(syn.trace.monoid_size >= 4);
    assert!(syn
        .trace
        .induced_sizes
        .iter()
        .zip(syn.trace.class_counts)
        .all(|(&i, c)| i >= c));
}

#[test]
fn element_names_are_least_preimages() {
    let syn = syntactic_sync_algebra(&fixtures::last_letter(), Variant::Unital).unwrap();
    let names: Vec<&str> = syn.algebra().ids(Tag::Lb).map(|i| syn.algebra().name(i)).collect();
    assert_eq!(names, ["lb:1", "lb:(a,_)", "lb:(b,_)", "lb:(a,_)(b,_)"]);
}
