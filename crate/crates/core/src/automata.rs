//! Synchronous automata over the paired alphabet and the relations they define.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::words::{encode_word, forced_tag, Alphabet, LetterType, PairedLetter, PairedWord};

/// Hard cap on `max_total_len` for pair enumeration.
pub const MAX_ENUMERATION_LEN: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// All pairs, including (ε,ε).
    Star,
    /// Pairs other than (ε,ε).
    Plus,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Star => "star",
            Mode::Plus => "plus",
        }
    }
}

/// Nondeterministic automaton over Σ□. Letters are indices into the alphabet's canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyncAutomaton {
    alphabet: Alphabet,
    names: Vec<String>,
    initial: Vec<usize>,
    finals: Vec<bool>,
    // delta[state][letter] = sorted targets
    delta: Vec<Vec<Vec<usize>>>,
}

impl SyncAutomaton {
    pub fn new(alphabet: Alphabet) -> Self {
        SyncAutomaton {
            alphabet,
            names: Vec::new(),
            initial: Vec::new(),
            finals: Vec::new(),
            delta: Vec::new(),
        }
    }

    pub fn add_state(&mut self, name: impl Into<String>) -> usize {
        self.names.push(name.into());
        self.finals.push(false);
        self.delta.push(vec![Vec::new(); self.alphabet.num_letters()]);
        self.names.len() - 1
    }

    pub fn set_initial(&mut self, q: usize) {
        if !self.initial.contains(&q) {
            self.initial.push(q);
            self.initial.sort_unstable();
        }
    }

    pub fn set_final(&mut self, q: usize, value: bool) {
        self.finals[q] = value;
    }

    pub fn add_transition(&mut self, from: usize, letter: usize, to: usize) {
        let ts = &mut self.delta[from][letter];
        if let Err(pos) = ts.binary_search(&to) {
            ts.insert(pos, to);
        }
    }

    /// Adds a transition on every letter of the given letter-type.
    pub fn add_typed_transitions(&mut self, from: usize, t: LetterType, to: usize) {
        for l in self.alphabet.letters_of_type(t) {
            self.add_transition(from, l, to);
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.names.len()
    }

    pub fn state_name(&self, q: usize) -> &str {
        &self.names[q]
    }

    pub fn state_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn initial(&self) -> &[usize] {
        &self.initial
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals[q]
    }

    pub fn targets(&self, q: usize, letter: usize) -> &[usize] {
        &self.delta[q][letter]
    }

    pub fn is_deterministic(&self) -> bool {
        self.initial.len() == 1 && self.delta.iter().flatten().all(|ts| ts.len() <= 1)
    }

    pub fn is_complete(&self) -> bool {
        self.is_deterministic() && self.delta.iter().flatten().all(|ts| ts.len() == 1)
    }

    pub fn step(&self, set: &BTreeSet<usize>, letter: usize) -> BTreeSet<usize> {
        set.iter()
            .flat_map(|&q| self.delta[q][letter].iter().copied())
            .collect()
    }

    /// Σ□-language membership, ignoring well-formedness.
    pub fn accepts_indices(&self, word: &[usize]) -> bool {
        let mut cur: BTreeSet<usize> = self.initial.iter().copied().collect();
        for &l in word {
            cur = self.step(&cur, l);
            if cur.is_empty() {
                return false;
            }
        }
        cur.iter().any(|&q| self.finals[q])
    }

    pub fn accepts_word(&self, w: &PairedWord) -> bool {
        match self.alphabet.encode_indices(w) {
            Ok(idx) => self.accepts_indices(&idx),
            Err(_) => false,
        }
    }

    /// Renders the automaton in the text format.
    pub fn to_text(&self, mode: Mode) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "alphabet: {}", self.alphabet);
        let _ = writeln!(out, "mode: {}", mode.name());
        let _ = writeln!(out, "states: {}", self.names.join(" "));
        let init: Vec<&str> = self.initial.iter().map(|&q| self.names[q].as_str()).collect();
        let _ = writeln!(out, "initial: {}", init.join(" "));
        let fin: Vec<&str> = (0..self.num_states())
            .filter(|&q| self.finals[q])
            .map(|q| self.names[q].as_str())
            .collect();
        let _ = writeln!(out, "final: {}", fin.join(" "));
        for q in 0..self.num_states() {
            // group letters by target to keep files short
            let mut by_target: Vec<(usize, String)> = Vec::new();
            for l in 0..self.alphabet.num_letters() {
                for &t in &self.delta[q][l] {
                    let label = self.alphabet.letter(l).to_string();
                    match by_target.iter_mut().find(|(tt, _)| *tt == t) {
                        Some((_, s)) => s.push_str(&label),
                        None => by_target.push((t, label)),
                    }
                }
            }
            for (t, labels) in by_target {
                let _ = writeln!(out, "trans: {} {} {}", self.names[q], labels, self.names[t]);
            }
        }
        out
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph automaton {\n  rankdir=LR;\n  __start [shape=point];\n");
        for q in 0..self.num_states() {
            let shape = if self.finals[q] { "doublecircle" } else { "circle" };
            let _ = writeln!(out, "  s{q} [label=\"{}\", shape={shape}];", self.names[q]);
        }
        for &q in &self.initial {
            let _ = writeln!(out, "  __start -> s{q};");
        }
        for q in 0..self.num_states() {
            let mut edges: Vec<(usize, Vec<String>)> = Vec::new();
            for l in 0..self.alphabet.num_letters() {
                for &t in &self.delta[q][l] {
                    let label = self.alphabet.letter(l).to_string();
                    match edges.iter_mut().find(|(tt, _)| *tt == t) {
                        Some((_, v)) => v.push(label),
                        None => edges.push((t, vec![label])),
                    }
                }
            }
            for (t, labels) in edges {
                let _ = writeln!(out, "  s{q} -> s{t} [label=\"{}\"];", labels.join(" "));
            }
        }
        out.push_str("}\n");
        out
    }
}

/// A synchronous relation: automaton semantics intersected with well-formed words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub automaton: SyncAutomaton,
    pub mode: Mode,
}

impl Relation {
    pub fn new(automaton: SyncAutomaton, mode: Mode) -> Self {
        Relation { automaton, mode }
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.automaton.alphabet()
    }

    pub fn with_mode(&self, mode: Mode) -> Relation {
        Relation {
            automaton: self.automaton.clone(),
            mode,
        }
    }

    pub fn accepts_pair(&self, u: &str, v: &str) -> bool {
        if self.mode == Mode::Plus && u.is_empty() && v.is_empty() {
            return false;
        }
        self.automaton.accepts_word(&encode_word(u, v))
    }

    /// Membership of an index word in the relation viewed as a Σ□-language.
    pub fn accepts_indices(&self, word: &[usize]) -> bool {
        if word.is_empty() && self.mode == Mode::Plus {
            return false;
        }
        let a = self.alphabet();
        forced_tag(word.iter().map(|&l| a.letter_type_of(l))).is_some() && self.automaton.accepts_indices(word)
    }

    /// Minimal DFA of the relation as a Σ□-language (encodings of member pairs).
    pub fn language_dfa(&self) -> Dfa {
        let base = Dfa::from_nfa(&self.automaton);
        let mut d = base.product(&wf_dfa(self.alphabet()), |x, y| x && y);
        if self.mode == Mode::Plus {
            d = d.product(&nonempty_dfa(self.alphabet()), |x, y| x && y);
        }
        d.minimize()
    }

    pub fn to_text(&self) -> String {
        self.automaton.to_text(self.mode)
    }
}

/// Deterministic complete automaton over Σ□.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    pub alphabet: Alphabet,
    pub initial: usize,
    pub finals: Vec<bool>,
    // delta[state * num_letters + letter]
    pub delta: Vec<usize>,
}

impl Dfa {
    pub fn num_states(&self) -> usize {
        self.finals.len()
    }

    pub fn next(&self, q: usize, letter: usize) -> usize {
        self.delta[q * self.alphabet.num_letters() + letter]
    }

    pub fn run(&self, q: usize, word: &[usize]) -> usize {
        word.iter().fold(q, |s, &l| self.next(s, l))
    }

    pub fn accepts(&self, word: &[usize]) -> bool {
        self.finals[self.run(self.initial, word)]
    }

    /// Subset construction; the empty set becomes a sink state.
    pub fn from_nfa(a: &SyncAutomaton) -> Dfa {
        let k = a.alphabet().num_letters();
        let start: BTreeSet<usize> = a.initial().iter().copied().collect();
        let mut index: HashMap<BTreeSet<usize>, usize> = HashMap::new();
        let mut sets = vec![start.clone()];
        index.insert(start, 0);
        let mut delta = Vec::new();
        let mut i = 0;
        while i < sets.len() {
            for l in 0..k {
                let t = a.step(&sets[i], l);
                let id = *index.entry(t.clone()).or_insert_with(|| {
                    sets.push(t);
                    sets.len() - 1
                });
                delta.push(id);
            }
            i += 1;
        }
        let finals = sets.iter().map(|s| s.iter().any(|&q| a.is_final(q))).collect();
        Dfa {
            alphabet: a.alphabet().clone(),
            initial: 0,
            finals,
            delta,
        }
    }

    /// Synchronous product with a Boolean combination of acceptance.
    pub fn product(&self, other: &Dfa, f: impl Fn(bool, bool) -> bool) -> Dfa {
        let k = self.alphabet.num_letters();
        let mut index: HashMap<(usize, usize), usize> = HashMap::new();
        let mut pairs = vec![(self.initial, other.initial)];
        index.insert(pairs[0], 0);
        let mut delta = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            let (p, q) = pairs[i];
            for l in 0..k {
                let t = (self.next(p, l), other.next(q, l));
                let id = *index.entry(t).or_insert_with(|| {
                    pairs.push(t);
                    pairs.len() - 1
                });
                delta.push(id);
            }
            i += 1;
        }
        let finals = pairs.iter().map(|&(p, q)| f(self.finals[p], other.finals[q])).collect();
        Dfa {
            alphabet: self.alphabet.clone(),
            initial: 0,
            finals,
            delta,
        }
    }

    pub fn complement(&self) -> Dfa {
        Dfa {
            finals: self.finals.iter().map(|f| !f).collect(),
            ..self.clone()
        }
    }

    /// Minimal automaton, states numbered by BFS from the initial state in letter order.
    pub fn minimize(&self) -> Dfa {
        let k = self.alphabet.num_letters();
        // reachable part
        let mut seen = vec![false; self.num_states()];
        let mut order = vec![self.initial];
        seen[self.initial] = true;
        let mut i = 0;
        while i < order.len() {
            for l in 0..k {
                let t = self.next(order[i], l);
                if !seen[t] {
                    seen[t] = true;
                    order.push(t);
                }
            }
            i += 1;
        }
        // Moore refinement
        let mut class: Vec<usize> = (0..self.num_states()).map(|q| usize::from(self.finals[q])).collect();
        loop {
            let mut sig_index: HashMap<Vec<usize>, usize> = HashMap::new();
            let mut next_class = vec![0; self.num_states()];
            for &q in &order {
                let mut sig = Vec::with_capacity(k + 1);
                sig.push(class[q]);
                sig.extend((0..k).map(|l| class[self.next(q, l)]));
                let n = sig_index.len();
                next_class[q] = *sig_index.entry(sig).or_insert(n);
            }
            let before: BTreeSet<usize> = order.iter().map(|&q| class[q]).collect();
            let stable = sig_index.len() == before.len();
            class = next_class;
            if stable {
                break;
            }
        }
        // canonical BFS numbering of classes
        let mut number: HashMap<usize, usize> = HashMap::new();
        let mut reps = vec![self.initial];
        number.insert(class[self.initial], 0);
        let mut i = 0;
        while i < reps.len() {
            for l in 0..k {
                let t = self.next(reps[i], l);
                if let std::collections::hash_map::Entry::Vacant(e) = number.entry(class[t]) {
                    e.insert(reps.len());
                    reps.push(t);
                }
            }
            i += 1;
        }
        let mut delta = Vec::with_capacity(reps.len() * k);
        for &r in &reps {
            for l in 0..k {
                delta.push(number[&class[self.next(r, l)]]);
            }
        }
        Dfa {
            alphabet: self.alphabet.clone(),
            initial: 0,
            finals: reps.iter().map(|&r| self.finals[r]).collect(),
            delta,
        }
    }

    pub fn to_automaton(&self) -> SyncAutomaton {
        let mut a = SyncAutomaton::new(self.alphabet.clone());
        for q in 0..self.num_states() {
            a.add_state(format!("s{q}"));
            a.set_final(q, self.finals[q]);
        }
        a.set_initial(self.initial);
        for q in 0..self.num_states() {
            for l in 0..self.alphabet.num_letters() {
                a.add_transition(q, l, self.next(q, l));
            }
        }
        a
    }

    /// Shortest, then least in letter order, accepted word.
    pub fn shortest_accepted(&self) -> Option<Vec<usize>> {
        let k = self.alphabet.num_letters();
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; self.num_states()];
        let mut seen = vec![false; self.num_states()];
        let mut queue = VecDeque::from([self.initial]);
        seen[self.initial] = true;
        while let Some(q) = queue.pop_front() {
            if self.finals[q] {
                let mut word = Vec::new();
                let mut cur = q;
                while let Some((p, l)) = parent[cur] {
                    word.push(l);
                    cur = p;
                }
                word.reverse();
                return Some(word);
            }
            for l in 0..k {
                let t = self.next(q, l);
                if !seen[t] {
                    seen[t] = true;
                    parent[t] = Some((q, l));
                    queue.push_back(t);
                }
            }
        }
        None
    }
}

/// Minimal DFA of well-formed words: neutral, after (x,_), after (_,x), sink.
pub fn wf_dfa(alphabet: &Alphabet) -> Dfa {
    let k = alphabet.num_letters();
    let mut delta = Vec::with_capacity(4 * k);
    for q in 0..4 {
        for l in 0..k {
            let t = match (q, alphabet.letter_type_of(l)) {
                (0, LetterType::Ll) => 0,
                (0 | 1, LetterType::Lb) => 1,
                (0 | 2, LetterType::Bl) => 2,
                _ => 3,
            };
            delta.push(t);
        }
    }
    Dfa {
        alphabet: alphabet.clone(),
        initial: 0,
        finals: vec![true, true, true, false],
        delta,
    }
    .minimize()
}

pub fn wf_automaton(alphabet: &Alphabet) -> SyncAutomaton {
    wf_dfa(alphabet).to_automaton()
}

fn nonempty_dfa(alphabet: &Alphabet) -> Dfa {
    let k = alphabet.num_letters();
    Dfa {
        alphabet: alphabet.clone(),
        initial: 0,
        finals: vec![false, true],
        delta: vec![1; 2 * k],
    }
}

pub fn determinize_minimize(a: &SyncAutomaton) -> SyncAutomaton {
    Dfa::from_nfa(a).minimize().to_automaton()
}

pub fn is_permutation_automaton(a: &SyncAutomaton) -> Result<bool> {
    if !a.is_complete() {
        return Err(Error::NotDeterministicComplete);
    }
    let n = a.num_states();
    Ok((0..a.alphabet().num_letters()).all(|l| {
        let mut hit = vec![false; n];
        for q in 0..n {
            hit[a.targets(q, l)[0]] = true;
        }
        hit.into_iter().all(|h| h)
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoolOp {
    Union,
    Intersection,
    Complement,
    Difference,
}

fn check_compatible(a: &Relation, b: &Relation) -> Result<()> {
    if a.alphabet() != b.alphabet() {
        return Err(Error::AlphabetMismatch(
            a.alphabet().to_string(),
            b.alphabet().to_string(),
        ));
    }
    if a.mode != b.mode {
        return Err(Error::ModeMismatch(format!("{} vs {}", a.mode.name(), b.mode.name())));
    }
    Ok(())
}

fn union_nfa(a: &SyncAutomaton, b: &SyncAutomaton) -> SyncAutomaton {
    let mut out = a.clone();
    let off = a.num_states();
    for q in 0..b.num_states() {
        out.add_state(format!("{}'", b.state_name(q)));
        out.set_final(off + q, b.is_final(q));
    }
    for &q in b.initial() {
        out.set_initial(off + q);
    }
    for q in 0..b.num_states() {
        for l in 0..b.alphabet().num_letters() {
            for &t in b.targets(q, l) {
                out.add_transition(off + q, l, off + t);
            }
        }
    }
    out
}

fn product_nfa(a: &SyncAutomaton, b: &SyncAutomaton) -> SyncAutomaton {
    let mut out = SyncAutomaton::new(a.alphabet().clone());
    let mut index: HashMap<(usize, usize), usize> = HashMap::new();
    let mut queue = VecDeque::new();
    for &p in a.initial() {
        for &q in b.initial() {
            let id = out.add_state(format!("{}.{}", a.state_name(p), b.state_name(q)));
            out.set_initial(id);
            out.set_final(id, a.is_final(p) && b.is_final(q));
            index.insert((p, q), id);
            queue.push_back((p, q));
        }
    }
    while let Some((p, q)) = queue.pop_front() {
        let from = index[&(p, q)];
        for l in 0..a.alphabet().num_letters() {
            for &pt in a.targets(p, l) {
                for &qt in b.targets(q, l) {
                    let to = match index.get(&(pt, qt)) {
                        Some(&id) => id,
                        None => {
                            let id = out.add_state(format!("{}.{}", a.state_name(pt), b.state_name(qt)));
                            out.set_final(id, a.is_final(pt) && b.is_final(qt));
                            index.insert((pt, qt), id);
                            queue.push_back((pt, qt));
                            id
                        }
                    };
                    out.add_transition(from, l, to);
                }
            }
        }
    }
    out
}

/// Setwise Boolean operations; complement is relative to all pairs of the mode.
pub fn boolean_combine(op: BoolOp, a: &Relation, b: Option<&Relation>) -> Result<Relation> {
    let need_b = || b.ok_or_else(|| Error::NotApplicable("binary operation needs two relations".into()));
    let automaton = match op {
        BoolOp::Complement => Dfa::from_nfa(&a.automaton).complement().minimize().to_automaton(),
        BoolOp::Union => {
            let b = need_b()?;
            check_compatible(a, b)?;
            union_nfa(&a.automaton, &b.automaton)
        }
        BoolOp::Intersection => {
            let b = need_b()?;
            check_compatible(a, b)?;
            product_nfa(&a.automaton, &b.automaton)
        }
        BoolOp::Difference => {
            let b = need_b()?;
            check_compatible(a, b)?;
            let nb = Dfa::from_nfa(&b.automaton).complement().minimize().to_automaton();
            product_nfa(&a.automaton, &nb)
        }
    };
    Ok(Relation::new(automaton, a.mode))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CompareKind {
    Empty,
    Universal,
    Included,
    Equivalent,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub holds: bool,
    pub witness: Option<(String, String)>,
}

fn decode_pair(alphabet: &Alphabet, word: &[usize]) -> (String, String) {
    let w = alphabet.decode_indices(word);
    let left = w.letters.iter().filter_map(|l| l.left).collect();
    let right = w.letters.iter().filter_map(|l| l.right).collect();
    (left, right)
}

/// Decides the comparison over member pairs; failures carry a shortest witness pair.
pub fn compare(kind: CompareKind, a: &Relation, b: Option<&Relation>) -> Result<Comparison> {
    let la = a.language_dfa();
    let bad = match kind {
        CompareKind::Empty => la,
        CompareKind::Universal => {
            let all = Relation::new(universal_automaton(a.alphabet()), a.mode).language_dfa();
            all.product(&la, |x, y| x && !y)
        }
        CompareKind::Included | CompareKind::Equivalent => {
            let b = b.ok_or_else(|| Error::NotApplicable("comparison needs two relations".into()))?;
            if a.alphabet() != b.alphabet() {
                return Err(Error::AlphabetMismatch(
                    a.alphabet().to_string(),
                    b.alphabet().to_string(),
                ));
            }
            let lb = b.language_dfa();
            if kind == CompareKind::Included {
                la.product(&lb, |x, y| x && !y)
            } else {
                la.product(&lb, |x, y| x != y)
            }
        }
    };
    let witness = bad.shortest_accepted().map(|w| decode_pair(a.alphabet(), &w));
    Ok(Comparison {
        holds: witness.is_none(),
        witness,
    })
}

pub fn equivalent(a: &Relation, b: &Relation) -> bool {
    compare(CompareKind::Equivalent, a, Some(b))
        .map(|c| c.holds)
        .unwrap_or(false)
}

/// One state with loops on every letter.
pub fn universal_automaton(alphabet: &Alphabet) -> SyncAutomaton {
    let mut a = SyncAutomaton::new(alphabet.clone());
    let q = a.add_state("q0");
    a.set_initial(q);
    a.set_final(q, true);
    for l in 0..alphabet.num_letters() {
        a.add_transition(q, l, q);
    }
    a
}

/// Order used by [`enumerate_pairs`]: total length, then encoding length, then the
/// encoding compared letterwise with the pad ranked before proper symbols.
pub fn pair_order_key(alphabet: &Alphabet, u: &str, v: &str) -> (usize, usize, Vec<(usize, usize)>) {
    let w = encode_word(u, v);
    let rank = |s: Option<char>| match s {
        None => 0,
        Some(c) => 1 + alphabet.symbols().iter().position(|x| *x == c).unwrap_or(0),
    };
    let key = w.letters.iter().map(|l| (rank(l.left), rank(l.right))).collect();
    (u.chars().count() + v.chars().count(), w.len(), key)
}

pub fn enumerate_pairs(r: &Relation, max_total_len: usize) -> Result<Vec<(String, String)>> {
    if max_total_len > MAX_ENUMERATION_LEN {
        return Err(Error::BoundExceeded {
            what: "enumeration length",
            value: max_total_len,
            bound: MAX_ENUMERATION_LEN,
        });
    }
    let alphabet = r.alphabet();
    let words = alphabet.words_up_to(max_total_len);
    let mut out = Vec::new();
    for u in &words {
        for v in &words {
            if u.len() + v.len() <= max_total_len && r.accepts_pair(u, v) {
                out.push((u.clone(), v.clone()));
            }
        }
    }
    out.sort_by_cached_key(|(u, v)| pair_order_key(alphabet, u, v));
    Ok(out)
}

/// Composition R∘S = {(u,w) | ∃v. (u,v) ∈ R ∧ (v,w) ∈ S}.
///
/// The result is Star mode when both inputs are; otherwise it is Plus mode and (ε,ε) is dropped.
pub fn compose_relations(r: &Relation, s: &Relation) -> Result<Relation> {
    if r.alphabet() != s.alphabet() {
        return Err(Error::AlphabetMismatch(
            r.alphabet().to_string(),
            s.alphabet().to_string(),
        ));
    }
    let alphabet = r.alphabet().clone();
    let (ra, sa) = (&r.automaton, &s.automaton);
    let letter = |x: Option<char>, y: Option<char>| -> Option<usize> {
        PairedLetter::new(x, y).ok().and_then(|l| alphabet.index_of(l))
    };
    let syms: Vec<Option<char>> = alphabet
        .symbols()
        .iter()
        .map(|&c| Some(c))
        .chain(std::iter::once(None))
        .collect();

    // pairs from which a final pair is reachable by middle-only steps
    let (nr, ns) = (ra.num_states(), sa.num_states());
    let pair_id = |p: usize, q: usize| p * ns + q;
    let mut middle_edges: Vec<Vec<usize>> = vec![Vec::new(); nr * ns];
    for p in 0..nr {
        for q in 0..ns {
            for &c in alphabet.symbols() {
                let (lr, ls) = (letter(None, Some(c)).unwrap(), letter(Some(c), None).unwrap());
                for &pt in ra.targets(p, lr) {
                    for &qt in sa.targets(q, ls) {
                        middle_edges[pair_id(p, q)].push(pair_id(pt, qt));
                    }
                }
            }
        }
    }
    let is_final_pair = |id: usize| ra.is_final(id / ns) && sa.is_final(id % ns);
    // reach0: reaches a final pair in >= 0 steps; reach1: in >= 1 steps
    let mut reach0: Vec<bool> = (0..nr * ns).map(is_final_pair).collect();
    let mut reach1 = vec![false; nr * ns];
    loop {
        let mut changed = false;
        for id in 0..nr * ns {
            if !reach1[id] && middle_edges[id].iter().any(|&t| reach0[t]) {
                reach1[id] = true;
                reach0[id] = true;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    #[derive(Clone, Copy, PartialEq, Eq, Hash)]
    struct St {
        p: usize,
        q: usize,
        v_ended: bool,
        r_started: bool,
        s_started: bool,
    }
    let accepting = |st: St| -> bool {
        let id = pair_id(st.p, st.q);
        let now = is_final_pair(id) && (r.mode == Mode::Star || st.r_started) && (s.mode == Mode::Star || st.s_started);
        now || (!st.v_ended && reach1[id])
    };

    let mut out = SyncAutomaton::new(alphabet.clone());
    let mut index: HashMap<St, usize> = HashMap::new();
    let mut queue = VecDeque::new();
    for &p in ra.initial() {
        for &q in sa.initial() {
            let st = St {
                p,
                q,
                v_ended: false,
                r_started: false,
                s_started: false,
            };
            let id = out.add_state(format!("c{}", index.len()));
            out.set_initial(id);
            out.set_final(id, accepting(st));
            index.insert(st, id);
            queue.push_back(st);
        }
    }
    while let Some(st) = queue.pop_front() {
        let from = index[&st];
        for l in 0..alphabet.num_letters() {
            let PairedLetter { left: x, right: z } = alphabet.letter(l);
            for &y in &syms {
                if y.is_some() && st.v_ended {
                    continue;
                }
                // R track: idle only once both u and v have ended
                let r_moves: Vec<(usize, bool)> = match letter(x, y) {
                    Some(lr) => ra.targets(st.p, lr).iter().map(|&t| (t, true)).collect(),
                    None => vec![(st.p, st.r_started)],
                };
                let s_moves: Vec<(usize, bool)> = match letter(y, z) {
                    Some(ls) => sa.targets(st.q, ls).iter().map(|&t| (t, true)).collect(),
                    None => vec![(st.q, st.s_started)],
                };
                for &(pt, rs) in &r_moves {
                    for &(qt, ss) in &s_moves {
                        let nt = St {
                            p: pt,
                            q: qt,
                            v_ended: y.is_none(),
                            r_started: rs,
                            s_started: ss,
                        };
                        let to = match index.get(&nt) {
                            Some(&id) => id,
                            None => {
                                let id = out.add_state(format!("c{}", index.len()));
                                out.set_final(id, accepting(nt));
                                index.insert(nt, id);
                                queue.push_back(nt);
                                id
                            }
                        };
                        out.add_transition(from, l, to);
                    }
                }
            }
        }
    }
    let mode = if r.mode == Mode::Star && s.mode == Mode::Star {
        Mode::Star
    } else {
        Mode::Plus
    };
    let dfa = Dfa::from_nfa(&out).product(&wf_dfa(&alphabet), |a, b| a && b);
    Ok(Relation::new(dfa.minimize().to_automaton(), mode))
}

/// Brute-force composition membership with middle words up to `max(|u|,|w|) + |Q_R|·|Q_S|`.
pub fn composition_witness(r: &Relation, s: &Relation, u: &str, w: &str) -> Option<String> {
    let bound = u.len().max(w.len()) + r.automaton.num_states() * s.automaton.num_states();
    r.alphabet()
        .words_up_to(bound)
        .into_iter()
        .find(|v| r.accepts_pair(u, v) && s.accepts_pair(v, w))
}

fn parse_err_at(line: usize, text: &str, token: &str, msg: impl Into<String>) -> Error {
    let column = text.find(token).map_or(1, |c| c + 1);
    Error::parse(line, column, msg)
}

/// Parses the automaton text format.
pub fn parse_relation(text: &str) -> Result<Relation> {
    let mut alphabet: Option<Alphabet> = None;
    let mut mode = Mode::Star;
    let mut automaton: Option<SyncAutomaton> = None;
    let mut pending: Vec<(usize, String, String)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, rest) = line
            .split_once(':')
            .ok_or_else(|| Error::parse(line_no, 1, "expected `directive: ...`"))?;
        let rest = rest.trim();
        match key.trim() {
            "alphabet" => {
                let mut syms = Vec::new();
                for tok in rest.split_whitespace() {
                    let mut cs = tok.chars();
                    match (cs.next(), cs.next()) {
                        (Some(c), None) => syms.push(c),
                        _ => {
                            return Err(parse_err_at(
                                line_no,
                                raw,
                                tok,
                                format!("symbol `{tok}` must be a single character"),
                            ))
                        }
                    }
                }
                let a = Alphabet::new(syms).map_err(|e| Error::parse(line_no, 1, e.to_string()))?;
                automaton = Some(SyncAutomaton::new(a.clone()));
                alphabet = Some(a);
            }
            "mode" => {
                mode = match rest {
                    "star" => Mode::Star,
                    "plus" => Mode::Plus,
                    other => return Err(parse_err_at(line_no, raw, other, format!("unknown mode `{other}`"))),
                }
            }
            "states" => {
                let a = automaton
                    .as_mut()
                    .ok_or_else(|| Error::parse(line_no, 1, "`alphabet` must come first"))?;
                for tok in rest.split_whitespace() {
                    if a.state_index(tok).is_some() {
                        return Err(parse_err_at(line_no, raw, tok, format!("duplicate state `{tok}`")));
                    }
                    a.add_state(tok);
                }
            }
            "initial" | "final" => {
                let a = automaton
                    .as_mut()
                    .ok_or_else(|| Error::parse(line_no, 1, "`alphabet` must come first"))?;
                for tok in rest.split_whitespace() {
                    let q = a
                        .state_index(tok)
                        .ok_or_else(|| parse_err_at(line_no, raw, tok, format!("unknown state `{tok}`")))?;
                    if key.trim() == "initial" {
                        a.set_initial(q);
                    } else {
                        a.set_final(q, true);
                    }
                }
            }
            "trans" => {
                let toks: Vec<&str> = rest.split_whitespace().collect();
                if toks.len() < 3 {
                    return Err(Error::parse(line_no, 1, "expected `trans: from (x,y)... to`"));
                }
                let from = toks[0].to_string();
                let to = toks[toks.len() - 1].to_string();
                let letters = toks[1..toks.len() - 1].join("");
                pending.push((line_no, letters, format!("{from} {to}")));
            }
            other => {
                return Err(Error::parse(line_no, 1, format!("unknown directive `{other}`")));
            }
        }
    }
    let alphabet = alphabet.ok_or_else(|| Error::parse(1, 1, "missing `alphabet`"))?;
    let mut a = automaton.expect("automaton exists with alphabet");
    for (line_no, letters, ends) in pending {
        let (from, to) = ends.split_once(' ').expect("two endpoints");
        let fq = a
            .state_index(from)
            .ok_or_else(|| Error::parse(line_no, 1, format!("unknown state `{from}`")))?;
        let tq = a
            .state_index(to)
            .ok_or_else(|| Error::parse(line_no, 1, format!("unknown state `{to}`")))?;
        let word = PairedWord::parse(&letters).map_err(|e| match e {
            Error::Parse { column, message, .. } => Error::parse(line_no, column, message),
            other => other,
        })?;
        if word.is_empty() {
            return Err(Error::parse(line_no, 1, "transition needs a letter"));
        }
        for l in word.letters {
            let idx = alphabet
                .index_of(l)
                .ok_or_else(|| Error::UnknownLetter(format!("{l} on line {line_no}")))?;
            a.add_transition(fq, idx, tq);
        }
    }
    if a.initial().is_empty() {
        return Err(Error::parse(1, 1, "no initial state"));
    }
    Ok(Relation::new(a, mode))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn ab() -> Alphabet {
        Alphabet::from_str_symbols("ab").unwrap()
    }

    fn empty_rel(a: &Alphabet, mode: Mode) -> Relation {
        let mut aut = SyncAutomaton::new(a.clone());
        let q = aut.add_state("q0");
        aut.set_initial(q);
        Relation::new(aut, mode)
    }

    #[test]
    fn parse_fig1_and_flags() {
        let r = fixtures::fig1();
        assert!(r.automaton.is_deterministic());
        assert!(r.automaton.is_complete());
        assert!(r.accepts_pair("ab", "ba"));
        assert!(!r.accepts_pair("a", "b"));
        let again = parse_relation(&r.to_text()).unwrap();
        assert_eq!(again, r);
    }

    #[test]
    fn parse_errors() {
        let bad = "alphabet: a b\nstates: q0\ninitial: q0\ntrans: q0 (_,_) q0\n";
        assert!(matches!(parse_relation(bad), Err(Error::Parse { line: 4, .. })));
        let unknown = "alphabet: a\nstates: q0\ninitial: q0\ntrans: q0 (a,c) q0\n";
        assert!(matches!(parse_relation(unknown), Err(Error::UnknownLetter(_))));
        let state = "alphabet: a\nstates: q0\ninitial: q1\n";
        assert!(matches!(
            parse_relation(state),
            Err(Error::Parse {
                line: 3,
                column: 10,
                ..
            })
        ));
        assert!(parse_relation("alphabet: ab\n").is_err());
    }

    #[test]
    fn universal_automaton_is_universal() {
        let r = Relation::new(universal_automaton(&ab()), Mode::Star);
        assert!(compare(CompareKind::Universal, &r, None).unwrap().holds);
        assert!(r.accepts_pair("", ""));
        assert!(!r.with_mode(Mode::Plus).accepts_pair("", ""));
    }

    #[test]
    fn wf_dfa_shape() {
        let d = wf_dfa(&ab());
        assert_eq!(d.num_states(), 4);
        let enc = |s: &str| ab().encode_indices(&PairedWord::parse(s).unwrap()).unwrap();
        assert!(d.accepts(&enc("(a,b)(a,_)")));
        assert!(!d.accepts(&enc("(a,_)(a,b)")));
    }

    #[test]
    fn minimization_examples() {
        let fig1 = fixtures::fig1();
        let m = determinize_minimize(&fig1.automaton);
        assert_eq!(m.num_states(), 2);
        let lang = fig1.language_dfa();
        assert_eq!(lang.num_states(), 5);
        let min_auto = fixtures::min_auto();
        let canon = Dfa::from_nfa(&min_auto.automaton).minimize();
        assert_eq!(canon, lang);
        let e = determinize_minimize(&empty_rel(&ab(), Mode::Star).automaton);
        assert_eq!(e.num_states(), 1);
        assert!(!e.is_final(0));
    }

    #[test]
    fn minimal_dfa_has_no_equivalent_states() {
        for (_, r) in fixtures::catalog() {
            let d = r.language_dfa();
            let n = d.num_states();
            for p in 0..n {
                for q in p + 1..n {
                    let mut a = d.clone();
                    a.initial = p;
                    let mut b = d.clone();
                    b.initial = q;
                    assert!(a.product(&b, |x, y| x != y).shortest_accepted().is_some());
                }
            }
            assert_eq!(d.minimize(), d);
        }
    }

    #[test]
    fn permutation_test() {
        assert!(is_permutation_automaton(&fixtures::fig1().automaton).unwrap());
        assert!(!is_permutation_automaton(&fixtures::min_auto().automaton).unwrap());
        assert!(is_permutation_automaton(&universal_automaton(&ab())).unwrap());
        let lang = fixtures::fig1().language_dfa().to_automaton();
        assert!(!is_permutation_automaton(&lang).unwrap());
        assert_eq!(
            is_permutation_automaton(&empty_rel(&ab(), Mode::Star).automaton),
            Err(Error::NotDeterministicComplete)
        );
    }

    #[test]
    fn boolean_ops_agree_with_sets() {
        let a = ab();
        let words = a.words_up_to(6);
        let rels = [fixtures::fig1(), fixtures::same_length(), fixtures::prefix()];
        for r in &rels {
            for s in &rels {
                let u = boolean_combine(BoolOp::Union, r, Some(s)).unwrap();
                let i = boolean_combine(BoolOp::Intersection, r, Some(s)).unwrap();
                let d = boolean_combine(BoolOp::Difference, r, Some(s)).unwrap();
                let c = boolean_combine(BoolOp::Complement, r, None).unwrap();
                for x in &words {
                    for y in &words {
                        if x.len() + y.len() > 6 {
                            continue;
                        }
                        let (p, q) = (r.accepts_pair(x, y), s.accepts_pair(x, y));
                        assert_eq!(u.accepts_pair(x, y), p || q);
                        assert_eq!(i.accepts_pair(x, y), p && q);
                        assert_eq!(d.accepts_pair(x, y), p && !q);
                        assert_eq!(c.accepts_pair(x, y), !p);
                    }
                }
            }
        }
    }

    #[test]
    fn boolean_examples() {
        let r = fixtures::fig1();
        let e = empty_rel(&ab(), Mode::Star);
        let u = boolean_combine(BoolOp::Union, &r, Some(&e)).unwrap();
        assert!(equivalent(&u, &r));
        let cc = boolean_combine(
            BoolOp::Complement,
            &boolean_combine(BoolOp::Complement, &r, None).unwrap(),
            None,
        )
        .unwrap();
        assert!(equivalent(&cc, &r));
        let plus = r.with_mode(Mode::Plus);
        assert_eq!(
            boolean_combine(BoolOp::Union, &r, Some(&plus)).unwrap_err(),
            Error::ModeMismatch("star vs plus".into())
        );
    }

    #[test]
    fn compare_examples() {
        let (fig1, same) = (fixtures::fig1(), fixtures::same_length());
        let u = boolean_combine(BoolOp::Union, &fig1, Some(&same)).unwrap();
        assert!(compare(CompareKind::Included, &fig1, Some(&u)).unwrap().holds);
        let c = compare(CompareKind::Included, &same, Some(&fig1)).unwrap();
        assert!(!c.holds);
        assert_eq!(c.witness, Some(("a".into(), "b".into())));
        let e = compare(CompareKind::Empty, &empty_rel(&ab(), Mode::Plus), None).unwrap();
        assert!(e.holds);
    }

    #[test]
    fn enumeration_examples() {
        let a = Alphabet::from_str_symbols("a").unwrap();
        assert!(enumerate_pairs(&empty_rel(&a, Mode::Star), 4).unwrap().is_empty());
        let p = fixtures::prefix_over(&a);
        let got = enumerate_pairs(&p, 2).unwrap();
        let want: Vec<(String, String)> = [("", ""), ("", "a"), ("a", "a"), ("", "aa")]
            .iter()
            .map(|(x, y)| (x.to_string(), y.to_string()))
            .collect();
        assert_eq!(got, want);
        let univ = Relation::new(universal_automaton(&a), Mode::Plus);
        let got = enumerate_pairs(&univ, 1).unwrap();
        assert_eq!(got, vec![("".into(), "a".into()), ("a".into(), "".into())]);
        assert!(matches!(enumerate_pairs(&univ, 13), Err(Error::BoundExceeded { .. })));
    }

    #[test]
    fn intersection_fig1_same_length() {
        let (fig1, same) = (fixtures::fig1(), fixtures::same_length());
        let i = boolean_combine(BoolOp::Intersection, &fig1, Some(&same)).unwrap();
        let count_a = |s: &str| s.chars().filter(|c| *c == 'a').count();
        for u in ab().words_up_to(5) {
            for v in ab().words_up_to(5) {
                let want = u.len() == v.len() && count_a(&u) % 2 == count_a(&v) % 2;
                assert_eq!(i.accepts_pair(&u, &v), want);
            }
        }
    }

    fn check_composition(r: &Relation, s: &Relation) {
        let c = compose_relations(r, s).unwrap();
        let words = r.alphabet().words_up_to(6);
        for u in &words {
            for w in &words {
                if u.len() + w.len() > 6 {
                    continue;
                }
                let mut want = composition_witness(r, s, u, w).is_some();
                if c.mode == Mode::Plus && u.is_empty() && w.is_empty() {
                    want = false;
                }
                assert_eq!(c.accepts_pair(u, w), want, "({u},{w})");
            }
        }
    }

    #[test]
    fn composition_examples() {
        let (prefix, same) = (fixtures::prefix(), fixtures::same_length());
        let p2 = compose_relations(&prefix, &prefix).unwrap();
        assert!(equivalent(&p2, &prefix));
        let s2 = compose_relations(&same, &same).unwrap();
        assert!(equivalent(&s2, &same));
        let id = fixtures::identity();
        for r in [fixtures::fig1(), prefix.clone(), fixtures::last_letter()] {
            assert!(equivalent(&compose_relations(&id, &r).unwrap(), &r));
        }
        check_composition(&prefix, &prefix);
        check_composition(&fixtures::fig1(), &prefix);
    }

    #[test]
    fn dot_mentions_pair_labels() {
        let dot = fixtures::fig1().automaton.to_dot();
        assert!(dot.contains("(a,b)"));
        assert!(dot.starts_with("digraph"));
    }
}
