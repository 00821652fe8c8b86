//! Built-in example relations.

use rand::Rng;

use crate::automata::{boolean_combine, universal_automaton, BoolOp, Mode, Relation, SyncAutomaton};
use crate::error::{Error, Result};
use crate::words::{Alphabet, LetterType, PairedLetter};

fn ab() -> Alphabet {
    Alphabet::from_str_symbols("ab").expect("valid alphabet")
}

fn unary() -> Alphabet {
    Alphabet::from_str_symbols("a").expect("valid alphabet")
}

fn letter(a: &Alphabet, l: Option<char>, r: Option<char>) -> usize {
    a.index_of(PairedLetter { left: l, right: r })
        .expect("letter over alphabet")
}

/// Parity of `a` counts on the common prefix; a permutation automaton.
pub fn fig1() -> Relation {
    let al = ab();
    let mut a = SyncAutomaton::new(al.clone());
    let q0 = a.add_state("q0");
    let q1 = a.add_state("q1");
    a.set_initial(q0);
    a.set_final(q0, true);
    for l in 0..al.num_letters() {
        let pl = al.letter(l);
        let swap = matches!((pl.left, pl.right), (Some(x), Some(y)) if (x == 'a') != (y == 'a'));
        for q in [q0, q1] {
            let t = if swap { 1 - q } else { q };
            a.add_transition(q, l, t);
        }
    }
    Relation::new(a, Mode::Star)
}

/// Minimal complete DFA of [`fig1`] read as a language over Σ□.
pub fn min_auto() -> Relation {
    let al = ab();
    let mut a = SyncAutomaton::new(al.clone());
    let q0 = a.add_state("q0");
    let q1 = a.add_state("q1");
    let ql = a.add_state("q0'");
    let qr = a.add_state("q0''");
    let sink = a.add_state("qbot");
    a.set_initial(q0);
    for q in [q0, ql, qr] {
        a.set_final(q, true);
    }
    for l in 0..al.num_letters() {
        let pl = al.letter(l);
        let swap = matches!((pl.left, pl.right), (Some(x), Some(y)) if (x == 'a') != (y == 'a'));
        let targets = match pl.letter_type() {
            LetterType::Ll => [if swap { q1 } else { q0 }, if swap { q0 } else { q1 }, sink, sink, sink],
            LetterType::Lb => [ql, sink, ql, sink, sink],
            LetterType::Bl => [qr, sink, sink, qr, sink],
        };
        for (q, t) in targets.into_iter().enumerate() {
            a.add_transition(q, l, t);
        }
    }
    Relation::new(a, Mode::Star)
}

/// Pairs with `|u| > |v|` and `(|u|-|v|) mod p ∈ I`, or `|u| < |v|` and `(|v|-|u|) mod q ∈ J`.
pub fn zpq(p: usize, q: usize, i_set: &[usize], j_set: &[usize]) -> Relation {
    length_difference_relation(&ab(), p, q, |d| i_set.contains(&d), |d| j_set.contains(&d), false)
}

/// Automaton counting the length difference modulo `p` (left longer) or `q` (right longer).
fn length_difference_relation(
    al: &Alphabet,
    p: usize,
    q: usize,
    left_ok: impl Fn(usize) -> bool,
    right_ok: impl Fn(usize) -> bool,
    equal_ok: bool,
) -> Relation {
    let mut a = SyncAutomaton::new(al.clone());
    let s = a.add_state("s");
    a.set_initial(s);
    a.set_final(s, equal_ok);
    let ls: Vec<usize> = (0..p).map(|k| a.add_state(format!("l{k}"))).collect();
    let rs: Vec<usize> = (0..q).map(|k| a.add_state(format!("r{k}"))).collect();
    for k in 0..p {
        a.set_final(ls[k], left_ok(k));
        a.add_typed_transitions(ls[k], LetterType::Lb, ls[(k + 1) % p]);
    }
    for k in 0..q {
        a.set_final(rs[k], right_ok(k));
        a.add_typed_transitions(rs[k], LetterType::Bl, rs[(k + 1) % q]);
    }
    a.add_typed_transitions(s, LetterType::Ll, s);
    a.add_typed_transitions(s, LetterType::Lb, ls[1 % p]);
    a.add_typed_transitions(s, LetterType::Bl, rs[1 % q]);
    Relation::new(a, Mode::Star)
}

/// Length difference one, or at least two with the longer word ending in `a`.
pub fn last_letter() -> Relation {
    let al = ab();
    let mut a = SyncAutomaton::new(al.clone());
    let s = a.add_state("s");
    a.set_initial(s);
    a.add_typed_transitions(s, LetterType::Ll, s);
    for (side, t) in [("l", LetterType::Lb), ("r", LetterType::Bl)] {
        let one = a.add_state(format!("{side}1"));
        let ends_a = a.add_state(format!("{side}a"));
        let ends_b = a.add_state(format!("{side}b"));
        a.set_final(one, true);
        a.set_final(ends_a, true);
        a.add_typed_transitions(s, t, one);
        for l in al.letters_of_type(t) {
            let pl = al.letter(l);
            let sym = pl.left.or(pl.right);
            let target = if sym == Some('a') { ends_a } else { ends_b };
            for from in [one, ends_a, ends_b] {
                a.add_transition(from, l, target);
            }
        }
    }
    Relation::new(a, Mode::Star)
}

/// Plus-mode relation `|u| > |v|` and `|u|-|v| ≡ k (mod p)`.
pub fn left_longer_mod(p: usize, k: usize) -> Relation {
    length_difference_relation(&ab(), p, 1, |d| d == k % p, |_| false, false).with_mode(Mode::Plus)
}

/// Finite relation given by its pairs.
pub fn finite(al: &Alphabet, pairs: &[(&str, &str)], mode: Mode) -> Relation {
    let mut a = SyncAutomaton::new(al.clone());
    let s = a.add_state("s");
    a.set_initial(s);
    for (i, (u, v)) in pairs.iter().enumerate() {
        let w = crate::words::encode_word(u, v);
        let mut cur = s;
        if w.is_empty() {
            a.set_final(s, true);
            continue;
        }
        for (j, l) in w.letters.iter().enumerate() {
            let next = a.add_state(format!("p{i}_{j}"));
            a.add_transition(cur, al.index_of(*l).expect("letter over alphabet"), next);
            cur = next;
        }
        a.set_final(cur, true);
    }
    Relation::new(a, mode)
}

pub fn nilpotent_finite() -> Relation {
    finite(&ab(), &[("a", "aa")], Mode::Plus)
}

pub fn finite_mixed() -> Relation {
    finite(&ab(), &[("a", "aa"), ("b", ""), ("ab", "ab"), ("", "ba")], Mode::Plus)
}

/// All pairs except `(a, aa)` and `(ε, ε)`.
pub fn cofinite() -> Relation {
    let r = boolean_combine(BoolOp::Complement, &nilpotent_finite(), None).expect("unary operation");
    r.with_mode(Mode::Plus)
}

/// Encodings starting with `(a,a)`.
pub fn loctriv_prefix() -> Relation {
    let al = ab();
    let mut a = SyncAutomaton::new(al.clone());
    let s = a.add_state("s");
    let t = a.add_state("t");
    a.set_initial(s);
    a.set_final(t, true);
    a.add_transition(s, letter(&al, Some('a'), Some('a')), t);
    for l in 0..al.num_letters() {
        a.add_transition(t, l, t);
    }
    Relation::new(a, Mode::Plus)
}

/// Encodings ending with `(a,_)`.
pub fn loctriv_suffix() -> Relation {
    let al = ab();
    let mut a = SyncAutomaton::new(al.clone());
    let s = a.add_state("s");
    let t = a.add_state("t");
    a.set_initial(s);
    a.set_final(t, true);
    for l in 0..al.num_letters() {
        a.add_transition(s, l, s);
    }
    a.add_transition(s, letter(&al, Some('a'), None), t);
    Relation::new(a, Mode::Plus)
}

pub fn prefix_over(al: &Alphabet) -> Relation {
    let mut a = SyncAutomaton::new(al.clone());
    let s = a.add_state("s");
    let t = a.add_state("t");
    a.set_initial(s);
    a.set_final(s, true);
    a.set_final(t, true);
    for &c in al.symbols() {
        a.add_transition(s, letter(al, Some(c), Some(c)), s);
    }
    a.add_typed_transitions(s, LetterType::Bl, t);
    a.add_typed_transitions(t, LetterType::Bl, t);
    Relation::new(a, Mode::Star)
}

/// `u` is a prefix of `v`.
pub fn prefix() -> Relation {
    prefix_over(&ab())
}

pub fn same_length() -> Relation {
    let al = ab();
    let mut a = SyncAutomaton::new(al.clone());
    let s = a.add_state("s");
    a.set_initial(s);
    a.set_final(s, true);
    a.add_typed_transitions(s, LetterType::Ll, s);
    Relation::new(a, Mode::Star)
}

pub fn identity() -> Relation {
    let al = ab();
    let mut a = SyncAutomaton::new(al.clone());
    let s = a.add_state("s");
    a.set_initial(s);
    a.set_final(s, true);
    for &c in al.symbols() {
        a.add_transition(s, letter(&al, Some(c), Some(c)), s);
    }
    Relation::new(a, Mode::Star)
}

pub fn universal() -> Relation {
    Relation::new(universal_automaton(&ab()), Mode::Star)
}

/// Relation over Σ = {a} given by a predicate on `(|u| mod m, |v| mod m)`.
fn unary_parity(m: usize, pred: impl Fn(usize, usize) -> bool) -> Relation {
    let al = unary();
    let mut a = SyncAutomaton::new(al.clone());
    // state (i, j, phase) with phase 0 = both running, 1 = only u, 2 = only v
    let id = |i: usize, j: usize, ph: usize| (ph * m + i) * m + j;
    for ph in 0..3 {
        for i in 0..m {
            for j in 0..m {
                let q = a.add_state(format!("p{ph}_{i}{j}"));
                a.set_final(q, pred(i, j));
            }
        }
    }
    a.set_initial(id(0, 0, 0));
    let (ll, lb, bl) = (
        letter(&al, Some('a'), Some('a')),
        letter(&al, Some('a'), None),
        letter(&al, None, Some('a')),
    );
    for i in 0..m {
        for j in 0..m {
            a.add_transition(id(i, j, 0), ll, id((i + 1) % m, (j + 1) % m, 0));
            for ph in [0, 1] {
                a.add_transition(id(i, j, ph), lb, id((i + 1) % m, j, 1));
            }
            for ph in [0, 2] {
                a.add_transition(id(i, j, ph), bl, id(i, (j + 1) % m, 2));
            }
        }
    }
    let min = crate::automata::Dfa::from_nfa(&a).minimize();
    let mut out = min.to_automaton();
    // drop the sink introduced by completion so files stay readable
    out = prune_dead(&out);
    Relation::new(out, Mode::Star)
}

/// Removes states from which no final state is reachable.
pub fn prune_dead(a: &SyncAutomaton) -> SyncAutomaton {
    let n = a.num_states();
    let k = a.alphabet().num_letters();
    let mut live: Vec<bool> = (0..n).map(|q| a.is_final(q)).collect();
    loop {
        let mut changed = false;
        for q in 0..n {
            if !live[q] && (0..k).any(|l| a.targets(q, l).iter().any(|&t| live[t])) {
                live[q] = true;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let keep: Vec<usize> = (0..n).filter(|&q| live[q] || a.initial().contains(&q)).collect();
    let mut out = SyncAutomaton::new(a.alphabet().clone());
    for &q in &keep {
        let id = out.add_state(a.state_name(q));
        out.set_final(id, a.is_final(q));
    }
    let pos = |q: usize| keep.iter().position(|&x| x == q);
    for &q in a.initial() {
        out.set_initial(pos(q).expect("initial kept"));
    }
    for (i, &q) in keep.iter().enumerate() {
        for l in 0..k {
            for &t in a.targets(q, l) {
                if let Some(j) = pos(t) {
                    if live[t] {
                        out.add_transition(i, l, j);
                    }
                }
            }
        }
    }
    out
}

/// `|u| ≡ |v| (mod 2)` over Σ = {a}.
pub fn same_length_mod2() -> Relation {
    unary_parity(2, |i, j| i == j)
}

/// `|u|` even and `|v|` odd over Σ = {a}.
pub fn even_odd() -> Relation {
    unary_parity(2, |i, j| i == 0 && j == 1)
}

/// `|u| > |v| > 0` and `|u| - |v| ∈ {2, 3, 5, 7}`.
pub fn bounded_prime() -> Relation {
    let al = ab();
    let mut a = SyncAutomaton::new(al.clone());
    let s0 = a.add_state("s0");
    let s1 = a.add_state("s1");
    a.set_initial(s0);
    a.add_typed_transitions(s0, LetterType::Ll, s1);
    a.add_typed_transitions(s1, LetterType::Ll, s1);
    let mut prev = s1;
    for d in 1..=8 {
        let q = a.add_state(format!("d{d}"));
        a.set_final(q, [2, 3, 5, 7].contains(&d));
        a.add_typed_transitions(prev, LetterType::Lb, q);
        prev = q;
    }
    a.add_typed_transitions(prev, LetterType::Lb, prev);
    Relation::new(a, Mode::Star)
}

/// Random complete DFA with the given number of states.
pub fn random_relation<R: Rng>(rng: &mut R, al: &Alphabet, states: usize, mode: Mode) -> Relation {
    let mut a = SyncAutomaton::new(al.clone());
    for q in 0..states {
        a.add_state(format!("q{q}"));
    }
    a.set_initial(0);
    for q in 0..states {
        a.set_final(q, rng.gen_bool(0.5));
        for l in 0..al.num_letters() {
            a.add_transition(q, l, rng.gen_range(0..states));
        }
    }
    Relation::new(a, mode)
}

pub struct Fixture {
    pub name: &'static str,
    pub description: &'static str,
    pub build: fn() -> Relation,
}

pub const FIXTURES: &[Fixture] = &[
    Fixture {
        name: "fig1",
        description: "equal parity of a-counts on the common prefix (permutation automaton)",
        build: fig1,
    },
    Fixture {
        name: "fig1-plus",
        description: "fig1 without the empty pair",
        build: || fig1().with_mode(Mode::Plus),
    },
    Fixture {
        name: "min-auto",
        description: "minimal complete DFA of fig1 read as a language over paired letters",
        build: min_auto,
    },
    Fixture {
        name: "zpq",
        description: "length difference mod 2 in {1} (left longer) or mod 3 in {1,2} (right longer); see zpq:P:Q:I:J",
        build: || zpq(2, 3, &[1], &[1, 2]),
    },
    Fixture {
        name: "lastletter",
        description: "length difference one, or at least two with the longer word ending in a",
        build: last_letter,
    },
    Fixture {
        name: "counterex-mod-2",
        description: "left word longer by an even amount (plus mode); semigroups are groups but not a group relation",
        build: || left_longer_mod(2, 0),
    },
    Fixture {
        name: "naive-R0",
        description: "left word longer, difference 0 mod 2 (plus mode)",
        build: || left_longer_mod(2, 0),
    },
    Fixture {
        name: "naive-R1",
        description: "left word longer, difference 1 mod 2 (plus mode)",
        build: || left_longer_mod(2, 1),
    },
    Fixture {
        name: "nilpotent-finite",
        description: "the single pair (a, aa) (plus mode)",
        build: nilpotent_finite,
    },
    Fixture {
        name: "finite-mixed",
        description: "four pairs of mixed types (plus mode)",
        build: finite_mixed,
    },
    Fixture {
        name: "cofinite",
        description: "every pair except (a, aa) (plus mode)",
        build: cofinite,
    },
    Fixture {
        name: "loctriv-prefix",
        description: "encodings starting with (a,a) (plus mode)",
        build: loctriv_prefix,
    },
    Fixture {
        name: "loctriv-suffix",
        description: "encodings ending with (a,_) (plus mode)",
        build: loctriv_suffix,
    },
    Fixture {
        name: "prefix",
        description: "u is a prefix of v",
        build: prefix,
    },
    Fixture {
        name: "prefix-unary",
        description: "u is a prefix of v over the one-letter alphabet",
        build: || prefix_over(&unary()),
    },
    Fixture {
        name: "same-length",
        description: "|u| = |v|",
        build: same_length,
    },
    Fixture {
        name: "same-length-mod-2",
        description: "|u| and |v| have the same parity, one-letter alphabet (recognizable)",
        build: same_length_mod2,
    },
    Fixture {
        name: "even-odd",
        description: "|u| even and |v| odd, one-letter alphabet",
        build: even_odd,
    },
    Fixture {
        name: "identity",
        description: "u = v",
        build: identity,
    },
    Fixture {
        name: "universal",
        description: "all pairs",
        build: universal,
    },
    Fixture {
        name: "bounded-prime",
        description: "|u| > |v| > 0 with difference 2, 3, 5 or 7",
        build: bounded_prime,
    },
];

pub fn catalog() -> Vec<(&'static str, Relation)> {
    FIXTURES.iter().map(|f| (f.name, (f.build)())).collect()
}

fn parse_set(s: &str) -> Result<Vec<usize>> {
    if s.is_empty() || s == "-" {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| Error::UnknownFixture(format!("bad set `{s}`")))
        })
        .collect()
}

/// Looks up a fixture; also accepts `zpq:P:Q:I:J` (I, J comma lists, `-` for empty)
/// and `counterex-mod-P`.
pub fn by_name(name: &str) -> Result<Relation> {
    if let Some(f) = FIXTURES.iter().find(|f| f.name == name) {
        return Ok((f.build)());
    }
    if let Some(rest) = name.strip_prefix("zpq:") {
        let parts: Vec<&str> = rest.split(':').collect();
        if parts.len() == 4 {
            let p = parts[0].parse::<usize>().ok().filter(|&p| p > 0);
            let q = parts[1].parse::<usize>().ok().filter(|&q| q > 0);
            if let (Some(p), Some(q)) = (p, q) {
                let (i, j) = (parse_set(parts[2])?, parse_set(parts[3])?);
                return Ok(zpq(p, q, &i, &j));
            }
        }
    }
    if let Some(p) = name.strip_prefix("counterex-mod-") {
        if let Ok(p) = p.parse::<usize>() {
            if p > 0 {
                return Ok(left_longer_mod(p, 0));
            }
        }
    }
    Err(Error::UnknownFixture(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::parse_relation;

    #[test]
    fn fixtures_round_trip() {
        for (name, r) in catalog() {
            let text = r.to_text();
            let back = parse_relation(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(back, r, "{name}");
        }
    }

    #[test]
    fn lookup() {
        assert!(by_name("fig1").is_ok());
        assert!(by_name("zpq:2:3:1:1,2").is_ok());
        assert!(by_name("zpq:2:3:-:0").is_ok());
        assert_eq!(by_name("bogus"), Err(Error::UnknownFixture("bogus".into())));
    }

    #[test]
    fn zpq_semantics() {
        let r = zpq(2, 3, &[1], &[1, 2]);
        for u in ab().words_up_to(5) {
            for v in ab().words_up_to(5) {
                let (lu, lv) = (u.len(), v.len());
                let want = (lu > lv && (lu - lv) % 2 == 1) || (lu < lv && (lv - lu) % 3 != 0);
                assert_eq!(r.accepts_pair(&u, &v), want, "{u} {v}");
            }
        }
    }

    #[test]
    fn last_letter_semantics() {
        let r = last_letter();
        for u in ab().words_up_to(5) {
            for v in ab().words_up_to(5) {
                let (long, d) = if u.len() >= v.len() {
                    (&u, u.len() - v.len())
                } else {
                    (&v, v.len() - u.len())
                };
                let want = d == 1 || (d >= 2 && long.ends_with('a'));
                assert_eq!(r.accepts_pair(&u, &v), want, "{u} {v}");
            }
        }
    }

    #[test]
    fn small_semantics() {
        let a = unary();
        let s = same_length_mod2();
        let e = even_odd();
        for u in a.words_up_to(6) {
            for v in a.words_up_to(6) {
                assert_eq!(s.accepts_pair(&u, &v), u.len() % 2 == v.len() % 2);
                assert_eq!(e.accepts_pair(&u, &v), u.len() % 2 == 0 && v.len() % 2 == 1);
            }
        }
        let bp = bounded_prime();
        for u in ab().words_up_to(5) {
            for v in ab().words_up_to(2) {
                let want = u.len() > v.len() && !v.is_empty() && [2, 3, 5, 7].contains(&(u.len() - v.len()));
                assert_eq!(bp.accepts_pair(&u, &v), want);
            }
        }
        let c = cofinite();
        assert!(!c.accepts_pair("a", "aa"));
        assert!(!c.accepts_pair("", ""));
        assert!(c.accepts_pair("b", "aa"));
        let f = finite_mixed();
        assert!(f.accepts_pair("b", "") && f.accepts_pair("", "ba") && !f.accepts_pair("a", "a"));
    }
}
