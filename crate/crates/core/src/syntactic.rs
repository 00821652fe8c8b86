//! Syntactic monoids, syntactic congruences and syntactic synchronous algebras.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::algebra::{consolidate, induced, quotient, AlgebraMorphism, Congruence, SyncAlgebra, Variant};
use crate::automata::{Dfa, Mode, Relation};
use crate::error::{Error, Result};
use crate::semigroup::FiniteSemigroup;
use crate::words::{forced_tag, Alphabet, ClosedSubset, LetterType, Tag};

/// Largest transition monoid the pipelines will build.
pub const MONOID_GUARD: usize = 4000;

/// Transition monoid (or semigroup) of a minimal DFA.
#[derive(Clone, Debug)]
pub struct TransitionMonoid {
    pub semigroup: FiniteSemigroup,
    pub letter_map: Vec<usize>,
    pub accepting: Vec<bool>,
    pub identity: Option<usize>,
    /// Shortlex-least word of each element.
    pub words: Vec<Vec<usize>>,
}

impl TransitionMonoid {
    pub fn eval(&self, word: &[usize]) -> Option<usize> {
        let mut it = word.iter().map(|&l| self.letter_map[l]);
        let first = it.next().or(self.identity)?;
        Some(it.fold(first, |acc, x| self.semigroup.mul(acc, x)))
    }
}

pub fn syntactic_monoid(dfa: &Dfa, monoid: bool) -> Result<TransitionMonoid> {
    syntactic_monoid_with(dfa, monoid, MONOID_GUARD)
}

/// Transition monoid of the minimized DFA, elements numbered in shortlex order of their
/// least words. `monoid` adds the identity as element 0.
pub fn syntactic_monoid_with(dfa: &Dfa, monoid: bool, guard: usize) -> Result<TransitionMonoid> {
    let d = dfa.minimize();
    let n = d.num_states();
    let k = d.alphabet.num_letters();
    let mut b = Builder {
        elems: Vec::new(),
        words: Vec::new(),
        index: HashMap::new(),
        guard,
    };
    let mut queue = VecDeque::new();
    let identity = if monoid {
        let (i, _) = b.add((0..n as u32).collect(), Vec::new())?;
        queue.push_back(i);
        Some(i)
    } else {
        None
    };
    let letter_fns: Vec<Vec<u32>> = (0..k).map(|l| (0..n).map(|q| d.next(q, l) as u32).collect()).collect();
    if !monoid {
        for (l, f) in letter_fns.iter().enumerate() {
            let (i, new) = b.add(f.clone(), vec![l])?;
            if new {
                queue.push_back(i);
            }
        }
    }
    while let Some(i) = queue.pop_front() {
        for l in 0..k {
            let f: Vec<u32> = b.elems[i].iter().map(|&q| d.next(q as usize, l) as u32).collect();
            let mut w = b.words[i].clone();
            w.push(l);
            let (j, new) = b.add(f, w)?;
            if new {
                queue.push_back(j);
            }
        }
    }
    let letter_map: Vec<usize> = letter_fns.iter().map(|f| b.index[f]).collect();
    let Builder {
        elems, words, index, ..
    } = b;
    let m = elems.len();
    let table: Vec<usize> = (0..m * m)
        .map(|x| {
            let (a, b) = (x / m, x % m);
            let f: Vec<u32> = elems[a].iter().map(|&q| elems[b][q as usize]).collect();
            index[&f]
        })
        .collect();
    let names = words
        .iter()
        .map(|w| {
            if w.is_empty() {
                "1".to_string()
            } else {
                d.alphabet.decode_indices(w).to_string()
            }
        })
        .collect();
    let semigroup = FiniteSemigroup::new(m, table)?.with_names(names);
    let accepting = elems.iter().map(|f| d.finals[f[d.initial] as usize]).collect();
    Ok(TransitionMonoid {
        semigroup,
        letter_map,
        accepting,
        identity,
        words,
    })
}

struct Builder {
    elems: Vec<Vec<u32>>,
    words: Vec<Vec<usize>>,
    index: HashMap<Vec<u32>, usize>,
    guard: usize,
}

impl Builder {
    fn add(&mut self, f: Vec<u32>, w: Vec<usize>) -> Result<(usize, bool)> {
        if let Some(&i) = self.index.get(&f) {
            return Ok((i, false));
        }
        if self.elems.len() >= self.guard {
            return Err(Error::SizeGuardExceeded {
                what: "transition monoid",
                size: self.elems.len() + 1,
                guard: self.guard,
            });
        }
        self.index.insert(f.clone(), self.elems.len());
        self.elems.push(f);
        self.words.push(w);
        Ok((self.elems.len() - 1, true))
    }
}

/// Syntactic congruence of a closed subset: two elements are related when every context
/// defined on both (including absent left or right factors) agrees on membership.
pub fn syntactic_congruence(alg: &SyncAlgebra, c: &ClosedSubset) -> Congruence {
    let sig = signatures(alg, c);
    Congruence::from_fn(alg.len(), |a, b| agree(&sig[a], &sig[b]))
}

type Signature = [Option<u32>; 36];

fn agree(x: &Signature, y: &Signature) -> bool {
    x.iter().zip(y).all(|(p, q)| match (p, q) {
        (Some(p), Some(q)) => p == q,
        _ => true,
    })
}

/// Context slots: 0 = absent, 1 + tag index otherwise.
fn ctx_tag(slot: usize) -> Option<Tag> {
    (slot > 0).then(|| Tag::ALL[slot - 1])
}

fn signatures(alg: &SyncAlgebra, c: &ClosedSubset) -> Vec<Signature> {
    let n = alg.len();
    let mut interner: HashMap<(usize, Vec<u32>), u32> = HashMap::new();
    let mut intern = |key: usize, v: Vec<u32>| -> u32 {
        let next = interner.len() as u32;
        *interner.entry((key, v)).or_insert(next)
    };
    // right[z][τ]: membership of z·y over y of type τ (or of z itself)
    let right: Vec<[Option<u32>; 6]> = (0..n)
        .map(|z| {
            std::array::from_fn(|slot| match ctx_tag(slot) {
                None => Some(intern(slot, vec![c.contains(z) as u32])),
                Some(t) if alg.tag(z).compatible(t) => {
                    let v = alg
                        .ids(t)
                        .map(|y| c.contains(alg.mul(z, y).expect("compatible")) as u32)
                        .collect();
                    Some(intern(slot, v))
                }
                Some(_) => None,
            })
        })
        .collect();
    (0..n)
        .map(|a| {
            let mut sig = [None; 36];
            for ls in 0..6 {
                for rs in 0..6 {
                    sig[ls * 6 + rs] = match ctx_tag(ls) {
                        None => right[a][rs],
                        Some(lt) if lt.compatible(alg.tag(a)) => {
                            let mid = lt.concat(alg.tag(a)).expect("compatible");
                            if ctx_tag(rs).is_some_and(|rt| !mid.compatible(rt)) {
                                None
                            } else {
                                let v = alg
                                    .ids(lt)
                                    .map(|x| right[alg.mul(x, a).expect("compatible")][rs].expect("compatible"))
                                    .collect();
                                Some(intern(6 + ls * 6 + rs, v))
                            }
                        }
                        Some(_) => None,
                    };
                }
            }
            sig
        })
        .collect()
}

/// Sizes recorded along the pipeline.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Trace {
    pub dfa_states: usize,
    pub monoid_size: usize,
    pub induced_sizes: [usize; 5],
    pub class_counts: [usize; 5],
}

#[derive(Clone, Debug)]
pub struct SyntacticResult {
    /// Surjective morphism onto the syntactic algebra, with the accepting set.
    pub morphism: AlgebraMorphism,
    pub trace: Trace,
}

impl SyntacticResult {
    pub fn algebra(&self) -> &SyncAlgebra {
        self.morphism.target()
    }

    pub fn accepting(&self) -> &ClosedSubset {
        self.morphism
            .accepting()
            .expect("syntactic morphisms carry an accepting set")
    }
}

/// Letters of one type, as elements of the transition monoid.
fn letter_elems(tm: &TransitionMonoid, al: &Alphabet, t: LetterType) -> Vec<usize> {
    al.letters_of_type(t).into_iter().map(|l| tm.letter_map[l]).collect()
}

/// Carriers of the image of the induced morphism, per type.
fn image_carriers(tm: &TransitionMonoid, al: &Alphabet) -> [Vec<usize>; 5] {
    let s = &tm.semigroup;
    let gen = |t| s.generated(&letter_elems(tm, al, t), tm.identity);
    let (ll, lb, bl) = (gen(LetterType::Ll), gen(LetterType::Lb), gen(LetterType::Bl));
    let prod = |xs: &[usize], ys: &[usize]| {
        let mut out: Vec<usize> = xs.iter().flat_map(|&x| ys.iter().map(move |&y| s.mul(x, y))).collect();
        out.sort_unstable();
        out.dedup();
        out
    };
    let lllb = prod(&ll, &lb);
    let llbl = prod(&ll, &bl);
    [ll, lb, bl, lllb, llbl]
}

pub fn syntactic_sync_algebra(r: &Relation, variant: Variant) -> Result<SyntacticResult> {
    syntactic_sync_algebra_with(r, variant, MONOID_GUARD)
}

/// Syntactic algebra as the quotient of the induced algebra of the syntactic monoid
/// (semigroup for the positive variant) by the syntactic congruence of the accepting set.
pub fn syntactic_sync_algebra_with(r: &Relation, variant: Variant, guard: usize) -> Result<SyntacticResult> {
    if variant == Variant::Positive && r.mode != Mode::Plus {
        return Err(Error::ModeMismatch(
            "the positive algebra needs a plus-mode relation".into(),
        ));
    }
    let al = r.alphabet().clone();
    if al.is_empty() {
        return Err(Error::EmptyAlphabet);
    }
    let dfa = r.language_dfa();
    let tm = syntactic_monoid_with(&dfa, variant == Variant::Unital, guard)?;
    let carriers = image_carriers(&tm, &al);
    let ind = induced(&tm.semigroup, variant, Some(&carriers))?;
    let acc = ClosedSubset::from_raw(ind.origin.iter().map(|&e| tm.accepting[e]).collect());
    let phi = ind.morphism(&al, &tm.letter_map)?.with_accepting(acc.clone())?;
    let cong = syntactic_congruence(&ind.algebra, &acc);
    let q = quotient(&ind.algebra, &cong)?;
    let morphism = phi.map_through(q.algebra, &q.projection)?.rename_by_preimages()?;
    let trace = Trace {
        dfa_states: dfa.num_states(),
        monoid_size: tm.semigroup.len(),
        induced_sizes: ind.algebra.sizes(),
        class_counts: morphism.target().sizes(),
    };
    Ok(SyntacticResult { morphism, trace })
}

/// Plus-mode copy of a relation; the positive pipeline works on these.
pub fn as_plus(r: &Relation) -> Relation {
    r.with_mode(Mode::Plus)
}

/// Typed algebra over the five types plus a type of the empty word, without dependency.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaiveAlgebra {
    /// `None` is the type of the empty word.
    types: Vec<Option<Tag>>,
    names: Vec<String>,
    prod: Vec<Option<usize>>,
    accepting: Vec<bool>,
}

fn naive_compatible(a: Option<Tag>, b: Option<Tag>) -> Option<Option<Tag>> {
    match (a, b) {
        (None, x) | (x, None) => Some(x),
        (Some(s), Some(t)) => s.concat(t).map(Some),
    }
}

impl NaiveAlgebra {
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn type_of(&self, i: usize) -> Option<Tag> {
        self.types[i]
    }

    /// Sizes of the `ll, lb, bl, ll->lb, ll->bl` carriers, then of the empty-word type.
    pub fn sizes(&self) -> [usize; 6] {
        let mut s = [0; 6];
        for t in &self.types {
            s[t.map_or(5, Tag::index)] += 1;
        }
        s
    }

    pub fn mul(&self, a: usize, b: usize) -> Option<usize> {
        self.prod[a * self.len() + b]
    }

    pub fn is_accepting(&self, a: usize) -> bool {
        self.accepting[a]
    }

    pub fn is_associative(&self) -> bool {
        let n = self.len();
        (0..n).all(|x| {
            (0..n).all(|y| {
                (0..n).all(|z| {
                    let l = self.mul(x, y).and_then(|xy| self.mul(xy, z));
                    let r = self.mul(y, z).and_then(|yz| self.mul(x, yz));
                    l == r
                })
            })
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = String::from("variant: naive\n");
        for (k, label) in ["ll", "lb", "bl", "ll->lb", "ll->bl", "1"].iter().enumerate() {
            let names: Vec<&str> = (0..self.len())
                .filter(|&i| self.types[i].map_or(5, Tag::index) == k)
                .map(|i| self.names[i].as_str())
                .collect();
            s.push_str(&format!("elements {label}: {}\n", names.join(" ")));
        }
        for a in 0..self.len() {
            for b in 0..self.len() {
                if let Some(c) = self.mul(a, b) {
                    s.push_str(&format!(
                        "prod: {} {} = {}\n",
                        self.names[a], self.names[b], self.names[c]
                    ));
                }
            }
        }
        let acc: Vec<&str> = (0..self.len())
            .filter(|&i| self.accepting[i])
            .map(|i| self.names[i].as_str())
            .collect();
        s.push_str(&format!("accepting: {}\n", acc.join(" ")));
        s
    }

    /// Type-preserving product isomorphism, ignoring accepting sets.
    pub fn is_isomorphic(&self, other: &NaiveAlgebra) -> bool {
        let n = self.len();
        if self.sizes() != other.sizes() {
            return false;
        }
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        fn ok(a: &NaiveAlgebra, b: &NaiveAlgebra, map: &[usize], x: usize) -> bool {
            (0..a.len()).filter(|&y| map[y] != usize::MAX).all(|y| {
                [(x, y), (y, x)].iter().all(|&(p, q)| match a.mul(p, q) {
                    Some(r) if map[r] != usize::MAX => b.mul(map[p], map[q]) == Some(map[r]),
                    _ => true,
                })
            })
        }
        fn go(k: usize, a: &NaiveAlgebra, b: &NaiveAlgebra, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
            if k == a.len() {
                return (0..a.len()).all(|x| ok(a, b, map, x));
            }
            for y in 0..b.len() {
                if used[y] || b.types[y] != a.types[k] {
                    continue;
                }
                map[k] = y;
                used[y] = true;
                if ok(a, b, map, k) && go(k + 1, a, b, map, used) {
                    return true;
                }
                map[k] = usize::MAX;
                used[y] = false;
            }
            false
        }
        go(0, self, other, &mut map, &mut used)
    }
}

/// Syntactic naive algebra: words grouped by type, then by two-sided context equivalence.
pub fn naive_syntactic_algebra(r: &Relation) -> Result<NaiveAlgebra> {
    let al = r.alphabet().clone();
    if al.is_empty() {
        return Err(Error::EmptyAlphabet);
    }
    let tm = syntactic_monoid(&r.language_dfa(), true)?;
    let s = &tm.semigroup;
    let one = tm.identity.expect("monoid mode");
    // positive carriers plus the identity as the empty-word type
    let gen = |t| s.generated(&letter_elems(&tm, &al, t), None);
    let (ll, lb, bl) = (gen(LetterType::Ll), gen(LetterType::Lb), gen(LetterType::Bl));
    let prod = |xs: &[usize], ys: &[usize]| {
        let mut out: Vec<usize> = xs.iter().flat_map(|&x| ys.iter().map(move |&y| s.mul(x, y))).collect();
        out.sort_unstable();
        out.dedup();
        out
    };
    let carriers: Vec<(Option<Tag>, Vec<usize>)> = vec![
        (Some(Tag::Ll), ll.clone()),
        (Some(Tag::Lb), lb.clone()),
        (Some(Tag::Bl), bl.clone()),
        (Some(Tag::LlLb), prod(&ll, &lb)),
        (Some(Tag::LlBl), prod(&ll, &bl)),
        (None, vec![one]),
    ];
    let elems: Vec<(Option<Tag>, usize)> = carriers
        .iter()
        .flat_map(|(t, xs)| xs.iter().map(move |&x| (*t, x)))
        .collect();
    let find = |t: Option<Tag>, x: usize| elems.iter().position(|&e| e == (t, x)).expect("closed carriers");
    let n = elems.len();
    let mul = |a: usize, b: usize| -> Option<usize> {
        let t = naive_compatible(elems[a].0, elems[b].0)?;
        Some(find(t, s.mul(elems[a].1, elems[b].1)))
    };
    // membership of x·a·y over all compatible contexts, keyed by context types
    let sig: Vec<Vec<(usize, usize, Vec<bool>)>> = (0..n)
        .map(|a| {
            let mut blocks = Vec::new();
            for (li, (lt, lx)) in carriers.iter().enumerate() {
                let Some(mid) = naive_compatible(*lt, elems[a].0) else {
                    continue;
                };
                for (ri, (rt, ry)) in carriers.iter().enumerate() {
                    if naive_compatible(mid, *rt).is_none() {
                        continue;
                    }
                    let v = lx
                        .iter()
                        .flat_map(|&x| ry.iter().map(move |&y| (x, y)))
                        .map(|(x, y)| tm.accepting[s.mul(s.mul(x, elems[a].1), y)])
                        .collect();
                    blocks.push((li, ri, v));
                }
            }
            blocks
        })
        .collect();
    let mut class = vec![usize::MAX; n];
    let mut reps: Vec<usize> = Vec::new();
    for a in 0..n {
        if let Some(&r) = reps.iter().find(|&&r| elems[r].0 == elems[a].0 && sig[r] == sig[a]) {
            class[a] = class[r];
        } else {
            class[a] = reps.len();
            reps.push(a);
        }
    }
    let k = reps.len();
    let names = reps
        .iter()
        .map(|&a| {
            let label = elems[a].0.map_or("1", Tag::name);
            let w = &tm.words[elems[a].1];
            let shown = if w.is_empty() {
                "1".to_string()
            } else {
                al.decode_indices(w).to_string()
            };
            format!("{label}:{shown}")
        })
        .collect();
    let prod = (0..k * k)
        .map(|i| mul(reps[i / k], reps[i % k]).map(|p| class[p]))
        .collect();
    let accepting = reps.iter().map(|&a| tm.accepting[elems[a].1]).collect();
    Ok(NaiveAlgebra {
        types: reps.iter().map(|&a| elems[a].0).collect(),
        names,
        prod,
        accepting,
    })
}

/// Outcome of checking the two triangles around the consolidated syntactic morphism.
#[derive(Clone, Debug, Serialize)]
pub struct DiagramReport {
    pub commutes: bool,
    pub homomorphism: bool,
    pub surjective: bool,
    pub witness: Option<String>,
    pub consolidation_size: usize,
    pub semigroup_size: usize,
    pub type_image_size: usize,
}

/// Checks `typemap ∘ consol ζ = type` and `projval ∘ consol ζ = η` on all Σ□-words up to
/// `all_len` and on all well-formed words of total length up to `wf_len`.
pub fn consolidation_diagram_check(r: &Relation, all_len: usize, wf_len: usize) -> Result<DiagramReport> {
    let plus = as_plus(r);
    let syn = syntactic_sync_algebra(&plus, Variant::Positive)?;
    let zeta = &syn.morphism;
    let con = consolidate(zeta.target());
    let trivial = consolidate(&SyncAlgebra::trivial(Variant::Positive));
    let al = plus.alphabet().clone();
    let eta = syntactic_monoid(&plus.language_dfa(), false)?;
    let s_r = &eta.semigroup;

    let typemap: Vec<usize> = con
        .origin
        .iter()
        .map(|o| match o {
            crate::algebra::ConsolElement::Element(x) => trivial.class_of[zeta.target().tag(*x).index()],
            _ => trivial.zero,
        })
        .collect();
    let pre = zeta.minimal_preimages();
    let bad_word: Vec<usize> = {
        let lb = al.letters_of_type(LetterType::Lb)[0];
        let ll = al.letters_of_type(LetterType::Ll)[0];
        vec![lb, ll]
    };
    let projval: Vec<usize> = con
        .origin
        .iter()
        .map(|o| match o {
            crate::algebra::ConsolElement::Element(x) => {
                eta.eval(pre[*x].as_ref().expect("surjective")).expect("non-empty")
            }
            _ => eta.eval(&bad_word).expect("non-empty"),
        })
        .collect();

    let type_of_word = |w: &[usize]| -> usize {
        match forced_tag(w.iter().map(|&l| al.letter_type_of(l))) {
            Some(Some(t)) => trivial.class_of[t.index()],
            _ => trivial.zero,
        }
    };
    let mut witness = None;
    let mut check = |w: &[usize]| {
        if witness.is_some() || w.is_empty() {
            return;
        }
        let c = con.eval(zeta, w).expect("non-empty");
        if typemap[c] != type_of_word(w) || Some(projval[c]) != eta.eval(w) {
            witness = Some(al.decode_indices(w).to_string());
        }
    };
    let k = al.num_letters();
    let mut frontier: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..all_len {
        let mut next = Vec::new();
        for w in &frontier {
            for l in 0..k {
                let mut w2 = w.clone();
                w2.push(l);
                check(&w2);
                next.push(w2);
            }
        }
        frontier = next;
    }
    for u in al.words_up_to(wf_len) {
        for v in al.words_up_to(wf_len - u.chars().count()) {
            let w = al.encode_indices(&crate::words::encode_word(&u, &v))?;
            check(&w);
        }
    }
    let m = con.semigroup.len();
    let homomorphism =
        (0..m).all(|x| (0..m).all(|y| projval[con.semigroup.mul(x, y)] == s_r.mul(projval[x], projval[y])));
    let mut hit = vec![false; s_r.len()];
    for &p in &projval {
        hit[p] = true;
    }
    let mut types_hit = typemap.clone();
    types_hit.sort_unstable();
    types_hit.dedup();
    Ok(DiagramReport {
        commutes: witness.is_none(),
        homomorphism,
        surjective: hit.iter().all(|&h| h),
        witness,
        consolidation_size: m,
        semigroup_size: s_r.len(),
        type_image_size: types_hit.len(),
    })
}

/// A morphism `h` with `h ∘ from = to` on generators, if `from` is surjective and `h` is a
/// well-defined algebra morphism.
pub fn factorization(from: &AlgebraMorphism, to: &AlgebraMorphism) -> Option<Vec<usize>> {
    let (a, b) = (from.target(), to.target());
    let pre = from.minimal_preimages();
    let h: Vec<usize> = (0..a.len())
        .map(|x| {
            let w = pre[x].as_ref()?;
            to.eval_indices(w, a.tag(x)).ok()
        })
        .collect::<Option<_>>()?;
    if from.images().iter().zip(to.images()).any(|(&x, &y)| h[x] != y) {
        return None;
    }
    let n = a.len();
    for x in 0..n {
        if b.tag(h[x]) != a.tag(x) {
            return None;
        }
        for y in 0..n {
            if let Some(p) = a.mul(x, y) {
                if b.mul(h[x], h[y]) != Some(h[p]) {
                    return None;
                }
            }
            if a.related(x, y) && !b.related(h[x], h[y]) {
                return None;
            }
        }
    }
    if let (Some(ua), Some(ub)) = (a.units(), b.units()) {
        if ua.iter().zip(ub.iter()).any(|(&x, &y)| h[x] != y) {
            return None;
        }
    }
    Some(h)
}

#[cfg(test)]
mod tests;
