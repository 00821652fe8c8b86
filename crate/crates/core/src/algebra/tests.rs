use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::automata::{compose_relations, enumerate_pairs, equivalent};
use crate::fixtures;
use crate::syntactic::{as_plus, syntactic_sync_algebra};
use crate::words::{close_subset, encode_word, PairedWord};

fn ab() -> Alphabet {
    Alphabet::from_str_symbols("ab").unwrap()
}

fn elem(alg: &SyncAlgebra, name: &str) -> usize {
    alg.find(name)
        .unwrap_or_else(|| panic!("no element {name} in {:?}", alg.names()))
}

fn tw(s: &str) -> TypedWord {
    parse_typed_word(s).unwrap()
}

#[test]
fn zpq_and_trivial_are_valid() {
    assert_eq!(SyncAlgebra::zpq(2, 3).validate(), vec![]);
    assert_eq!(SyncAlgebra::zpq(1, 1).validate(), vec![]);
    assert_eq!(SyncAlgebra::trivial(Variant::Unital).validate(), vec![]);
    assert_eq!(SyncAlgebra::trivial(Variant::Positive).validate(), vec![]);
    assert_eq!(SyncAlgebra::zpq(2, 3).sizes(), [1, 2, 3, 2, 3]);
}

#[test]
fn missing_product_is_reported() {
    let z = SyncAlgebra::zpq(2, 3);
    let mut prod = z.prod.clone();
    let (a, b) = (elem(&z, "lb:1"), elem(&z, "lb:1"));
    prod[a * z.len() + b] = UNDEFINED;
    let broken = SyncAlgebra::from_table(z.variant, z.set.clone(), z.names.clone(), prod, z.units).unwrap();
    let v = broken.validate();
    assert_eq!(v[0].axiom, Axiom::ProductDomain);
    assert_eq!(v[0].witness, vec!["lb:1", "lb:1"]);
}

#[test]
fn asymmetric_dep_is_reported() {
    let z = SyncAlgebra::zpq(2, 3);
    let mut set = z.set.clone();
    let (a, b) = (elem(&z, "lb:1"), elem(&z, "ll->lb:1"));
    set.set_related(a, b, false);
    let broken = SyncAlgebra::from_table(z.variant, set, z.names.clone(), z.prod.clone(), z.units).unwrap();
    assert!(broken.validate().iter().any(|v| v.axiom == Axiom::DepSymmetric));
}

#[test]
fn bad_unit_and_associativity_are_reported() {
    let z = SyncAlgebra::zpq(2, 3);
    let mut units = z.units.unwrap();
    units[Tag::Lb.index()] = elem(&z, "lb:1");
    let broken =
        SyncAlgebra::from_table(z.variant, z.set.clone(), z.names.clone(), z.prod.clone(), Some(units)).unwrap();
    let axioms: Vec<Axiom> = broken.validate().iter().map(|v| v.axiom).collect();
    assert!(axioms.contains(&Axiom::Unit) && axioms.contains(&Axiom::UnitComposite));

    // x·y = x on lb breaks nothing but associativity with the ll action
    let mut prod = z.prod.clone();
    let (one, zero) = (elem(&z, "lb:1"), elem(&z, "lb:0"));
    prod[one * z.len() + one] = one as u32;
    prod[zero * z.len() + one] = zero as u32;
    let broken = SyncAlgebra::from_table(z.variant, z.set.clone(), z.names.clone(), prod, z.units).unwrap();
    assert!(!broken.is_valid());
}

#[test]
fn product_sizes_and_dep() {
    let z = SyncAlgebra::zpq(2, 3);
    let t = SyncAlgebra::trivial(Variant::Unital);
    let zt = z.product(&t).unwrap();
    assert_eq!(zt.sizes(), z.sizes());
    assert!(is_isomorphic(&zt, &z));
    let zz = z.product(&z).unwrap();
    assert!(zz.is_valid());
    for tag in Tag::ALL {
        assert_eq!(zz.size(tag), z.size(tag) * z.size(tag));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let n = z.len();
    let coords = |i: usize| {
        let t = zz.tag(i);
        let k = i - zz.ids(t).start;
        let m = z.size(t);
        (z.ids(t).start + k / m, z.ids(t).start + k % m)
    };
    for _ in 0..10 {
        let (i, j) = (rng.gen_range(0..zz.len()), rng.gen_range(0..zz.len()));
        let ((a, b), (a2, b2)) = (coords(i), coords(j));
        assert!(a < n && b2 < n);
        assert_eq!(zz.related(i, j), z.related(a, a2) && z.related(b, b2));
    }
    assert_eq!(
        z.product(&SyncAlgebra::trivial(Variant::Positive)),
        Err(Error::VariantMismatch("unital vs positive".into()))
    );
}

#[test]
fn zpq_evaluation() {
    let m = zpq_morphism(&ab(), 2, 3);
    let alg = m.target();
    assert_eq!(alg.name(m.eval(&tw("(a,_)(a,_)(a,_):lb")).unwrap()), "lb:1");
    assert_eq!(alg.name(m.eval(&tw("(a,a)(a,_):ll->lb")).unwrap()), "ll->lb:1");
    for t in Tag::ALL {
        let e = TypedWord::new(PairedWord::default(), t).unwrap();
        assert_eq!(m.eval(&e).unwrap(), alg.unit(t).unwrap());
    }
    assert_eq!(alg.name(m.eval(&tw("(_,b)(_,a):ll->bl")).unwrap()), "ll->bl:2");
    assert_eq!(alg.name(m.eval(&tw("(a,b):ll->lb")).unwrap()), "ll->lb:0");
}

#[test]
fn empty_word_in_positive_algebra() {
    let syn = syntactic_sync_algebra(&fixtures::fig1().with_mode(Mode::Plus), Variant::Positive).unwrap();
    let e = TypedWord::new(PairedWord::default(), Tag::Ll).unwrap();
    assert_eq!(syn.morphism.eval(&e), Err(Error::EmptyWordInPositive));
    let err = syn.morphism.eval(&tw("(a,a):ll->lb"));
    assert!(matches!(err, Err(Error::BadTypedWord { .. })));
}

/// Exhaustive: value of a concatenation is the product of the values.
fn check_homomorphism(m: &AlgebraMorphism, max_len: usize) {
    let al = m.alphabet().clone();
    let alg = m.target();
    let mut words: Vec<Vec<usize>> = vec![vec![]];
    let mut frontier = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for l in 0..al.num_letters() {
                let mut w2: Vec<usize> = w.clone();
                w2.push(l);
                next.push(w2);
            }
        }
        words.extend(next.iter().cloned());
        frontier = next;
    }
    let typed: Vec<(Vec<usize>, Tag, usize)> = words
        .iter()
        .flat_map(|w| Tag::ALL.into_iter().map(move |t| (w.clone(), t)))
        .filter_map(|(w, t)| m.eval_indices(&w, t).ok().map(|x| (w, t, x)))
        .collect();
    for (u, s, x) in &typed {
        for (v, t, y) in &typed {
            if u.len() + v.len() > max_len {
                continue;
            }
            let Some(st) = s.concat(*t) else { continue };
            let uv: Vec<usize> = u.iter().chain(v).copied().collect();
            let z = m.eval_indices(&uv, st).unwrap_or_else(|e| panic!("{e}"));
            assert_eq!(alg.mul(*x, *y), Some(z));
        }
    }
}

#[test]
fn evaluation_is_a_homomorphism() {
    check_homomorphism(&zpq_morphism(&ab(), 2, 3), 4);
    let syn = syntactic_sync_algebra(&fixtures::last_letter(), Variant::Unital).unwrap();
    check_homomorphism(&syn.morphism, 4);
    let syn = syntactic_sync_algebra(&fixtures::loctriv_suffix(), Variant::Positive).unwrap();
    check_homomorphism(&syn.morphism, 4);
}

fn zpq_acc(alg: &SyncAlgebra, i: &[usize], j: &[usize]) -> ClosedSubset {
    let mut seeds: Vec<usize> = i.iter().map(|k| elem(alg, &format!("lb:{k}"))).collect();
    seeds.extend(j.iter().map(|k| elem(alg, &format!("bl:{k}"))));
    close_subset(alg.dep(), &seeds)
}

#[test]
fn zpq_recognizes_the_length_difference_relations() {
    let m = zpq_morphism(&ab(), 2, 3);
    let acc = zpq_acc(m.target(), &[1], &[1, 2]);
    let m = m.with_accepting(acc).unwrap();
    let r = recognizer_to_dfa(&m).unwrap();
    assert!(equivalent(&r, &fixtures::zpq(2, 3, &[1], &[1, 2])));
    for u in ab().words_up_to(5) {
        for v in ab().words_up_to(5) {
            let (lu, lv) = (u.len(), v.len());
            let want = (lu > lv && (lu - lv) % 2 == 1) || (lv > lu && (lv - lu) % 3 != 0);
            assert_eq!(r.accepts_pair(&u, &v), want);
            assert_eq!(m.accepts_pair(&u, &v), want);
        }
    }
    let empty = zpq_morphism(&ab(), 2, 3)
        .with_accepting(ClosedSubset::empty(11))
        .unwrap();
    assert!(enumerate_pairs(&recognizer_to_dfa(&empty).unwrap(), 6)
        .unwrap()
        .is_empty());
}

#[test]
fn accepting_set_must_be_closed() {
    let m = zpq_morphism(&ab(), 2, 3);
    let alg = m.target().clone();
    let mut members = vec![false; alg.len()];
    members[elem(&alg, "ll:0")] = true;
    let err = m.with_accepting(ClosedSubset::from_raw(members)).unwrap_err();
    assert!(matches!(err, Error::NonClosedAccepting(a, _) if a == "ll:0"));
}

#[test]
fn consolidation_sizes() {
    assert_eq!(consolidate(&SyncAlgebra::trivial(Variant::Unital)).semigroup.len(), 2);
    let c = consolidate(&SyncAlgebra::trivial(Variant::Positive));
    assert_eq!(c.semigroup.len(), 6);
    assert!(c.semigroup.is_associative());
    assert_eq!(c.semigroup.zero(), Some(c.zero));
}

#[test]
fn positive_consolidations_are_associative_with_absorbing_zero() {
    for (name, r) in fixtures::catalog() {
        let syn = syntactic_sync_algebra(&as_plus(&r), Variant::Positive).unwrap();
        let c = consolidate(syn.algebra());
        assert!(c.semigroup.is_associative(), "{name}");
        assert_eq!(c.semigroup.zero(), Some(c.zero), "{name}");
    }
}

#[test]
fn merging_units_can_break_associativity() {
    // (1:lb · 1:lb) · 1:bl = 1 · 1:bl = 1:bl, while 1:lb · (1:lb · 1:bl) = 0
    let z = SyncAlgebra::zpq(2, 3);
    let c = consolidate(&z);
    let (x, y) = (c.class_of[elem(&z, "lb:1")], c.class_of[elem(&z, "bl:1")]);
    let s = &c.semigroup;
    assert_eq!(s.mul(s.mul(x, x), y), y);
    assert_eq!(s.mul(x, s.mul(x, y)), c.zero);
    assert!(!s.is_associative());
    // a unital algebra whose non-empty products never hit a unit consolidates fine
    let syn = syntactic_sync_algebra(&fixtures::prefix(), Variant::Unital).unwrap();
    assert!(consolidate(syn.algebra()).semigroup.is_associative());
}

#[test]
fn consolidated_morphism_recognizes_the_relation() {
    for (name, r) in [("fig1", fixtures::fig1()), ("lastletter", fixtures::last_letter())] {
        let syn = syntactic_sync_algebra(&r, Variant::Unital).unwrap();
        let m = &syn.morphism;
        let c = consolidate(m.target());
        let acc: Vec<bool> = c
            .origin
            .iter()
            .map(|o| match o {
                ConsolElement::Element(x) => syn.accepting().contains(*x),
                ConsolElement::Unit => syn.accepting().contains(m.target().unit(Tag::Ll).unwrap()),
                ConsolElement::Zero => false,
            })
            .collect();
        let al = r.alphabet().clone();
        let mut frontier: Vec<Vec<usize>> = vec![vec![]];
        for _ in 0..5 {
            let mut next = Vec::new();
            for w in &frontier {
                let x = c.eval(m, w).unwrap();
                assert_eq!(acc[x], r.accepts_indices(w), "{name} {}", al.decode_indices(w));
                for l in 0..al.num_letters() {
                    let mut w2 = w.clone();
                    w2.push(l);
                    next.push(w2);
                }
            }
            frontier = next;
        }
    }
}

#[test]
fn induced_from_trivial_monoid() {
    let ind = induced(&FiniteSemigroup::cyclic_group(1), Variant::Unital, None).unwrap();
    assert_eq!(ind.algebra.sizes(), [1; 5]);
    assert_eq!(ind.algebra.dep_pairs().len(), 10);
    assert!(ind.algebra.is_valid());
    let z2 = induced(&FiniteSemigroup::cyclic_group(2), Variant::Unital, None).unwrap();
    assert!(z2.algebra.is_valid());
    for t in Tag::SELF_COMPATIBLE {
        assert!(z2.algebra.underlying(t).is_group());
    }
    let pos = induced(&FiniteSemigroup::null(2), Variant::Positive, None).unwrap();
    assert!(pos.algebra.is_valid());
    assert!(induced(&FiniteSemigroup::null(2), Variant::Unital, None).is_err());
}

#[test]
fn induced_morphism_recognizes_the_relation() {
    let r = fixtures::fig1();
    let tm = crate::syntactic::syntactic_monoid(&r.language_dfa(), true).unwrap();
    let ind = induced(&tm.semigroup, Variant::Unital, None).unwrap();
    let acc = ClosedSubset::from_raw(ind.origin.iter().map(|&e| tm.accepting[e]).collect());
    let m = ind
        .morphism(r.alphabet(), &tm.letter_map)
        .unwrap()
        .with_accepting(acc)
        .unwrap();
    for u in ab().words_up_to(5) {
        for v in ab().words_up_to(5 - u.len()) {
            assert_eq!(m.accepts_pair(&u, &v), r.accepts_pair(&u, &v), "({u},{v})");
        }
    }
}

#[test]
fn quotients() {
    let z = SyncAlgebra::zpq(2, 3);
    let q = quotient(&z, &Congruence::from_dep(z.dep())).unwrap();
    assert!(is_isomorphic(&q.algebra, &z));
    let t = quotient(&z, &Congruence::total(z.len())).unwrap();
    assert_eq!(t.algebra.sizes(), [1; 5]);
    assert!(t.algebra.is_valid());
    let eq = Congruence::from_fn(z.len(), |a, b| a == b);
    assert!(matches!(quotient(&z, &eq), Err(Error::NotACongruence(_))));
    // identify 0 and 1 on lb only: products with lb:1 would have to agree on ll->lb
    let (a, b) = (elem(&z, "lb:0"), elem(&z, "lb:1"));
    let bad = Congruence::from_fn(z.len(), |x, y| {
        x == y || z.related(x, y) || (x == a && y == b) || (x == b && y == a)
    });
    assert!(matches!(quotient(&z, &bad), Err(Error::NotACongruence(_))));
}

#[test]
fn residual_of_the_parity_pair_relation_is_empty() {
    let syn = syntactic_sync_algebra(&fixtures::even_odd(), Variant::Unital).unwrap();
    let alg = syn.algebra();
    let x = syn.morphism.eval(&tw("(a,a):ll")).unwrap();
    assert!(residual(Side::Right, alg, syn.accepting(), x).is_empty());
    let empty = ClosedSubset::empty(alg.len());
    for x in 0..alg.len() {
        assert!(residual(Side::Left, alg, &empty, x).is_empty());
        assert!(residual(Side::Right, alg, &empty, x).is_empty());
    }
}

#[test]
fn residual_by_a_padded_letter_reaches_the_other_side() {
    let syn = syntactic_sync_algebra(&fixtures::last_letter(), Variant::Unital).unwrap();
    let alg = syn.algebra();
    let x = syn.morphism.eval(&tw("(a,_):lb")).unwrap();
    let res = residual(Side::Right, alg, syn.accepting(), x);
    let y = syn.morphism.eval(&tw("(_,a):bl")).unwrap();
    assert!(res.contains(y));
    assert!(alg.ids(Tag::Bl).all(|b| res.contains(b)));
    assert!(alg.ids(Tag::LlBl).all(|b| res.contains(b)));
}

fn naive_residual(side: Side, alg: &SyncAlgebra, c: &ClosedSubset, x: usize) -> Vec<usize> {
    (0..alg.len())
        .filter(|&y| {
            let p = match side {
                Side::Left => alg.mul(x, y),
                Side::Right => alg.mul(y, x),
            };
            p.is_some_and(|p| c.contains(p))
        })
        .collect()
}

#[test]
fn residual_contains_the_naive_residual_and_is_saturated() {
    for variant in [Variant::Unital, Variant::Positive] {
        for (name, r) in fixtures::catalog() {
            let r = if variant == Variant::Positive { as_plus(&r) } else { r };
            let syn = syntactic_sync_algebra(&r, variant).unwrap();
            let (alg, c) = (syn.algebra(), syn.accepting());
            for x in 0..alg.len() {
                for side in [Side::Left, Side::Right] {
                    let res = residual(side, alg, c, x);
                    let naive = naive_residual(side, alg, c, x);
                    assert!(naive.iter().all(|&y| res.contains(y)), "{name}");
                    assert_eq!(naive.is_empty(), res.is_empty(), "{name}");
                    let cong = crate::syntactic::syntactic_congruence(alg, c);
                    for y in (0..alg.len()).filter(|&y| res.contains(y)) {
                        for z in alg.ids(alg.tag(y)) {
                            assert!(!cong.related(y, z) || res.contains(z), "{name}");
                        }
                    }
                }
            }
        }
    }
}

// Left longer by a positive even amount over {a}: with x = (a,_) and y = (a,_)(a,_),
// the unit of type bl lands in (x\C)/y but not in x\(C/y).
#[test]
fn residuals_do_not_commute_in_general() {
    let syn = syntactic_sync_algebra(&fixtures::left_longer_mod(2, 0).with_mode(Mode::Star), Variant::Unital).unwrap();
    let (alg, c) = (syn.algebra(), syn.accepting());
    let x = syn.morphism.eval(&tw("(a,_):lb")).unwrap();
    let y = syn.morphism.eval(&tw("(a,_)(a,_):lb")).unwrap();
    let lhs = residual(Side::Right, alg, &residual(Side::Left, alg, c, x), y);
    let rhs = residual(Side::Left, alg, &residual(Side::Right, alg, c, y), x);
    let unit = alg.unit(Tag::Bl).unwrap();
    assert!(lhs.contains(unit));
    assert!(!rhs.contains(unit));
}

#[test]
fn residuals_need_not_be_closed() {
    let syn = syntactic_sync_algebra(&fixtures::left_longer_mod(2, 0).with_mode(Mode::Star), Variant::Unital).unwrap();
    let (alg, c) = (syn.algebra(), syn.accepting());
    let open = (0..alg.len())
        .flat_map(|x| [Side::Left, Side::Right].map(|s| residual(s, alg, c, x)))
        .filter(|r| !r.is_closed(alg.dep()))
        .count();
    assert!(open > 0);
}

#[test]
fn text_round_trip() {
    for alg in [
        SyncAlgebra::zpq(2, 3),
        SyncAlgebra::trivial(Variant::Positive),
        syntactic_sync_algebra(&fixtures::last_letter(), Variant::Unital)
            .unwrap()
            .algebra()
            .clone(),
    ] {
        let text = alg.to_text();
        assert_eq!(parse_algebra(&text, true).unwrap(), alg);
    }
}

#[test]
fn text_errors() {
    let text = SyncAlgebra::zpq(2, 3).to_text();
    let broken = text.replace("prod: lb:1 lb:1 = lb:0", "prod: lb:1 lb:1 = lb:9");
    assert!(matches!(parse_algebra(&broken, true), Err(Error::Parse { message, .. }) if message.contains("lb:9")));
    let dropped: String = text
        .lines()
        .filter(|l| !l.starts_with("prod: lb:1 lb:1"))
        .map(|l| format!("{l}\n"))
        .collect();
    assert!(matches!(parse_algebra(&dropped, true), Err(Error::InvalidAlgebra(_))));
    assert!(parse_algebra(&dropped, false).is_ok());
    assert!(matches!(
        parse_algebra("variant: unital\nbogus: x\n", true),
        Err(Error::Parse { line: 2, .. })
    ));
}

#[test]
fn isomorphism() {
    let z = SyncAlgebra::zpq(2, 3);
    let renamed = z
        .clone()
        .with_names((0..z.len()).map(|i| format!("e{i}")).collect())
        .unwrap();
    assert!(is_isomorphic(&z, &renamed));
    assert!(!is_isomorphic(&z, &SyncAlgebra::zpq(3, 2)));
    assert!(!is_isomorphic(
        &SyncAlgebra::zpq(2, 2),
        &SyncAlgebra::zpq(2, 2).forget_units()
    ));
}

#[test]
fn units_are_chained_by_dep() {
    for (_, r) in fixtures::catalog() {
        let syn = syntactic_sync_algebra(&r, Variant::Unital).unwrap();
        let comp = syn.algebra().dep_components();
        let u = syn.algebra().units().unwrap();
        assert!(u.iter().all(|&x| comp[x] == comp[u[0]]));
    }
}

fn positive_recognizer(r: &Relation) -> AlgebraMorphism {
    syntactic_sync_algebra(&as_plus(r), Variant::Positive).unwrap().morphism
}

#[test]
fn trivial_composition_carrier() {
    let t = SyncAlgebra::trivial(Variant::Positive);
    let c = compose_algebras(&t, &t, DEFAULT_COMPOSE_GUARD).unwrap();
    assert_eq!(c.sizes(), [8, 2, 2, 2, 2]);
    assert_eq!(c.validate(), vec![]);
    let z = SyncAlgebra::zpq(2, 3).forget_units();
    assert!(compose_algebras(&z, &z, 64).unwrap_err().is_guard());
}

fn agrees_with_automaton(h: &AlgebraMorphism, r: &Relation, max_total: usize) -> Option<(String, String)> {
    let al = r.alphabet().clone();
    for u in al.words_up_to(max_total) {
        for w in al.words_up_to(max_total - u.chars().count()) {
            if h.accepts_pair(&u, &w) != r.accepts_pair(&u, &w) {
                return Some((u, w));
            }
        }
    }
    None
}

#[test]
fn exact_composition_matches_automaton_composition() {
    let pairs = [
        (fixtures::prefix(), fixtures::prefix()),
        (fixtures::same_length(), fixtures::same_length()),
        (fixtures::last_letter(), fixtures::prefix()),
    ];
    for (r, s) in pairs {
        let (r, s) = (as_plus(&r), as_plus(&s));
        let h = compose_recognizers_exact(
            &positive_recognizer(&r),
            &positive_recognizer(&s),
            DEFAULT_COMPOSE_GUARD,
        )
        .unwrap();
        assert!(h.target().is_valid());
        let rs = compose_relations(&r, &s).unwrap();
        assert_eq!(agrees_with_automaton(&h, &rs, 6), None);
    }
}

#[test]
fn literal_composition_misses_long_middle_words() {
    let al = ab();
    let r = fixtures::finite(&al, &[("aa", "b")], Mode::Plus);
    let s = fixtures::finite(&al, &[("b", "")], Mode::Plus);
    let (phi, psi) = (positive_recognizer(&r), positive_recognizer(&s));
    let literal = compose_recognizers(&phi, &psi, DEFAULT_COMPOSE_GUARD).unwrap();
    let exact = compose_recognizers_exact(&phi, &psi, DEFAULT_COMPOSE_GUARD).unwrap();
    assert!(literal.target().is_valid());
    assert!(exact.accepts_pair("aa", ""));
    assert!(!literal.accepts_pair("aa", ""));
    let rs = compose_relations(&r, &s).unwrap();
    assert!(rs.accepts_pair("aa", ""));
}

#[test]
fn literal_generator_images_use_single_middle_letters() {
    let p = as_plus(&fixtures::prefix());
    let phi = positive_recognizer(&p);
    let literal = compose_recognizers(&phi, &phi, DEFAULT_COMPOSE_GUARD).unwrap();
    // (a,b) with middle a: (a,a) in prefix, (a,b) not; with middle b: the reverse
    let al = p.alphabet().clone();
    let l = al.index_of(encode_word("a", "b").letters[0]).unwrap();
    let g = literal.images()[l];
    assert_eq!(literal.target().tag(g), Tag::Ll);
    // the composite of prefix with itself rejects (a,b) as it should
    assert!(!literal.accepts_pair("a", "b"));
    assert!(literal.accepts_pair("a", "a"));
}

#[test]
fn literal_images_live_in_the_powerset_algebra() {
    // with trivial recognizers every generated set is a member of the full composition
    let al = ab();
    let t = SyncAlgebra::trivial(Variant::Positive);
    let images: Vec<usize> = (0..al.num_letters())
        .map(|l| al.letter_type_of(l).tag().index())
        .collect();
    let all = ClosedSubset::from_raw(vec![true; 5]);
    let phi = AlgebraMorphism::new(al, t.clone(), images, Some(all)).unwrap();
    let literal = compose_recognizers(&phi, &phi, DEFAULT_COMPOSE_GUARD).unwrap();
    let full = compose_algebras(&t, &t, DEFAULT_COMPOSE_GUARD).unwrap();
    for tag in Tag::ALL {
        assert!(literal.target().size(tag) <= full.size(tag));
    }
}
