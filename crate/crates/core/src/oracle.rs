//! Brute-force checks at bounded length.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{show_word, AlgebraMorphism, Variant};
use crate::automata::{composition_witness, Dfa, Mode, Relation};
use crate::error::{Error, Result};
use crate::fixtures::random_relation;
use crate::syntactic::SyntacticResult;
use crate::words::{Alphabet, LetterType, Tag};

/// Hard cap on oracle bounds.
pub const MAX_ORACLE_LEN: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub max_total_len: usize,
    pub seed: u64,
}

impl OracleConfig {
    pub fn new(max_total_len: usize, seed: u64) -> Result<Self> {
        if max_total_len > MAX_ORACLE_LEN {
            return Err(Error::BoundExceeded {
                what: "oracle length",
                value: max_total_len,
                bound: MAX_ORACLE_LEN,
            });
        }
        Ok(OracleConfig { max_total_len, seed })
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

/// `count` random relations drawn from the configured seed.
pub fn random_relations(cfg: &OracleConfig, al: &Alphabet, count: usize, states: usize, mode: Mode) -> Vec<Relation> {
    let mut rng = cfg.rng();
    (0..count)
        .map(|_| random_relation(&mut rng, al, states, mode))
        .collect()
}

/// A congruence class of typed words, with its shortlex-least member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NerodeClass {
    pub tag: Tag,
    pub representative: String,
    #[serde(skip)]
    pub word: Vec<usize>,
    pub accepted: bool,
}

type Signature = [Option<u32>; 36];

fn agree(x: &Signature, y: &Signature) -> bool {
    x.iter().zip(y).all(|(p, q)| match (p, q) {
        (Some(p), Some(q)) => p == q,
        _ => true,
    })
}

/// Bounded congruence classes of the free algebra.
#[derive(Clone, Debug, Serialize)]
pub struct NerodeClasses {
    pub variant: Variant,
    pub bound: usize,
    /// Grouped by tag in the order of [`Tag::ALL`].
    pub classes: Vec<NerodeClass>,
    /// Related classes of different tags, as index pairs `i < j`.
    pub cross: Vec<(usize, usize)>,
    #[serde(skip)]
    sigs: Vec<Signature>,
    #[serde(skip)]
    transforms: Vec<Vec<usize>>,
    #[serde(skip)]
    ctx: Contexts,
}

#[derive(Clone, Debug, Default)]
struct Contexts {
    /// Per left slot: reachable states with a word reaching them.
    left: Vec<Vec<(usize, Vec<usize>)>>,
    /// Per right slot: acceptance vectors with a word realizing them.
    right: Vec<Vec<(Vec<bool>, Vec<usize>)>>,
    /// Per right slot: class id of each state.
    state_class: Vec<Vec<u32>>,
}

impl NerodeClasses {
    pub fn counts(&self) -> [usize; 5] {
        let mut c = [0; 5];
        for k in &self.classes {
            c[k.tag.index()] += 1;
        }
        c
    }

    pub fn of_tag(&self, t: Tag) -> impl Iterator<Item = &NerodeClass> {
        self.classes.iter().filter(move |c| c.tag == t)
    }

    pub fn related(&self, i: usize, j: usize) -> bool {
        agree(&self.sigs[i], &self.sigs[j])
    }

    /// Contexts `(x, y)` with `x·w_i·y` and `x·w_j·y` differing on membership.
    fn separating_context(&self, i: usize, j: usize, al: &Alphabet) -> Option<String> {
        let (fi, fj) = (&self.transforms[i], &self.transforms[j]);
        for slot in 0..36 {
            if self.sigs[i][slot].is_none() || self.sigs[j][slot].is_none() {
                continue;
            }
            let (ls, rs) = (slot / 6, slot % 6);
            for (q, x) in &self.ctx.left[ls] {
                let (p1, p2) = (fi[*q], fj[*q]);
                if self.ctx.state_class[rs][p1] == self.ctx.state_class[rs][p2] {
                    continue;
                }
                let (_, y) = self.ctx.right[rs].iter().find(|(v, _)| v[p1] != v[p2])?;
                let side = |w: &[usize], s: usize| match ctx_tag(s) {
                    None => "absent".to_string(),
                    Some(t) => format!("{}:{t}", show_word(al, w)),
                };
                return Some(format!("left {}, right {}", side(x, ls), side(y, rs)));
            }
        }
        None
    }
}

fn ctx_tag(slot: usize) -> Option<Tag> {
    (slot > 0).then(|| Tag::ALL[slot - 1])
}

/// Reachable node of the typed-word search: letter types at both ends and the action on states.
#[derive(Clone, PartialEq, Eq, Hash)]
struct Node {
    ends: Option<(LetterType, LetterType)>,
    transform: Vec<usize>,
}

fn tags_of(ends: Option<(LetterType, LetterType)>, variant: Variant) -> Vec<Tag> {
    match (ends, variant) {
        (None, Variant::Unital) => Tag::ALL.to_vec(),
        (None, Variant::Positive) => vec![],
        (Some((a, b)), v) => {
            let forced = Tag::from_ends(a, b).expect("well-formed");
            match v {
                Variant::Positive => vec![forced],
                Variant::Unital => Tag::ALL.into_iter().filter(|t| t.admits(forced)).collect(),
            }
        }
    }
}

/// Distinct actions of well-formed words up to `bound`, each with its shortlex-least word.
fn reachable(dfa: &Dfa, bound: usize) -> Vec<(Node, Vec<usize>)> {
    let al = &dfa.alphabet;
    let start = Node {
        ends: None,
        transform: (0..dfa.num_states()).collect(),
    };
    let mut seen: HashMap<Node, ()> = HashMap::new();
    seen.insert(start.clone(), ());
    let mut out = vec![(start, Vec::new())];
    let mut frontier = vec![0usize];
    for _ in 0..bound {
        let mut next = Vec::new();
        for &i in &frontier {
            for l in 0..al.num_letters() {
                let lt = al.letter_type_of(l);
                let (node, word) = &out[i];
                let ends = match node.ends {
                    None => (lt, lt),
                    Some((first, last)) if last == LetterType::Ll || last == lt => (first, lt),
                    Some(_) => continue,
                };
                let transform: Vec<usize> = node.transform.iter().map(|&q| dfa.next(q, l)).collect();
                let n = Node {
                    ends: Some(ends),
                    transform,
                };
                if seen.insert(n.clone(), ()).is_none() {
                    let mut w = word.clone();
                    w.push(l);
                    next.push(out.len());
                    out.push((n, w));
                }
            }
        }
        frontier = next;
    }
    out
}

/// Classes of typed words of length at most the bound under the congruence of the relation,
/// with contexts of the same bound.
pub fn nerode_classes(r: &Relation, variant: Variant, cfg: &OracleConfig) -> Result<NerodeClasses> {
    if cfg.max_total_len > MAX_ORACLE_LEN {
        return Err(Error::BoundExceeded {
            what: "oracle length",
            value: cfg.max_total_len,
            bound: MAX_ORACLE_LEN,
        });
    }
    if variant == Variant::Positive && r.mode != Mode::Plus {
        return Err(Error::ModeMismatch(
            "the positive free algebra needs a plus-mode relation".into(),
        ));
    }
    let dfa = r.language_dfa();
    let al = r.alphabet().clone();
    let nodes = reachable(&dfa, cfg.max_total_len);
    let typed: Vec<(Tag, usize)> = nodes
        .iter()
        .enumerate()
        .flat_map(|(i, (n, _))| tags_of(n.ends, variant).into_iter().map(move |t| (t, i)))
        .collect();

    let mut ctx = Contexts {
        left: vec![Vec::new(); 6],
        right: vec![Vec::new(); 6],
        state_class: Vec::new(),
    };
    ctx.left[0].push((dfa.initial, Vec::new()));
    ctx.right[0].push((dfa.finals.clone(), Vec::new()));
    for &(t, i) in &typed {
        let (n, w) = &nodes[i];
        let slot = t.index() + 1;
        let q = n.transform[dfa.initial];
        if !ctx.left[slot].iter().any(|(p, _)| *p == q) {
            ctx.left[slot].push((q, w.clone()));
        }
        let v: Vec<bool> = n.transform.iter().map(|&p| dfa.finals[p]).collect();
        if !ctx.right[slot].iter().any(|(u, _)| *u == v) {
            ctx.right[slot].push((v, w.clone()));
        }
    }
    ctx.state_class = ctx
        .right
        .iter()
        .map(|vs| {
            let mut ids: HashMap<Vec<bool>, u32> = HashMap::new();
            (0..dfa.num_states())
                .map(|p| {
                    let key: Vec<bool> = vs.iter().map(|(v, _)| v[p]).collect();
                    let next = ids.len() as u32;
                    *ids.entry(key).or_insert(next)
                })
                .collect()
        })
        .collect();

    let mut interner: HashMap<(usize, Vec<u32>), u32> = HashMap::new();
    let mut signature = |t: Tag, f: &[usize]| -> Signature {
        let mut sig = [None; 36];
        for ls in 0..6 {
            let mid = match ctx_tag(ls) {
                None => Some(t),
                Some(lt) => lt.concat(t),
            };
            let Some(mid) = mid else { continue };
            for rs in 0..6 {
                if ctx_tag(rs).is_some_and(|rt| !mid.compatible(rt)) {
                    continue;
                }
                let v: Vec<u32> = ctx.left[ls].iter().map(|(q, _)| ctx.state_class[rs][f[*q]]).collect();
                let next = interner.len() as u32;
                sig[ls * 6 + rs] = Some(*interner.entry((ls * 6 + rs, v)).or_insert(next));
            }
        }
        sig
    };

    let mut by_tag: BTreeMap<usize, Vec<(Signature, usize)>> = BTreeMap::new();
    for &(t, i) in &typed {
        let sig = signature(t, &nodes[i].0.transform);
        let list = by_tag.entry(t.index()).or_default();
        if !list.iter().any(|(s, _)| *s == sig) {
            list.push((sig, i));
        }
    }
    let mut classes = Vec::new();
    let mut sigs = Vec::new();
    let mut transforms = Vec::new();
    for (ti, list) in by_tag {
        let t = Tag::ALL[ti];
        for (sig, i) in list {
            let (n, w) = &nodes[i];
            classes.push(NerodeClass {
                tag: t,
                representative: format!("{}:{t}", show_word(&al, w)),
                word: w.clone(),
                accepted: dfa.finals[n.transform[dfa.initial]],
            });
            sigs.push(sig);
            transforms.push(n.transform.clone());
        }
    }
    let mut cross = Vec::new();
    for i in 0..classes.len() {
        for j in i + 1..classes.len() {
            if classes[i].tag != classes[j].tag && agree(&sigs[i], &sigs[j]) {
                cross.push((i, j));
            }
        }
    }
    Ok(NerodeClasses {
        variant,
        bound: cfg.max_total_len,
        classes,
        cross,
        sigs,
        transforms,
        ctx,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub bound: usize,
    pub oracle_counts: [usize; 5],
    pub algebra_counts: [usize; 5],
    pub oracle_cross_pairs: usize,
    pub mismatches: Vec<String>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "bound {}: {}",
            self.bound,
            if self.ok() { "agree" } else { "MISMATCH" }
        )?;
        writeln!(f, "  oracle classes  {:?}", self.oracle_counts)?;
        writeln!(f, "  algebra sizes   {:?}", self.algebra_counts)?;
        for m in &self.mismatches {
            writeln!(f, "  {m}")?;
        }
        Ok(())
    }
}

/// Compares a recognizing morphism with the bounded congruence classes of the relation.
pub fn verify_morphism(r: &Relation, m: &AlgebraMorphism, cfg: &OracleConfig) -> Result<VerifyReport> {
    let alg = m.target();
    let classes = nerode_classes(r, alg.variant(), cfg)?;
    let al = r.alphabet();
    let mut mismatches = Vec::new();
    let oracle_counts = classes.counts();
    let algebra_counts = alg.sizes();
    for t in Tag::ALL {
        if oracle_counts[t.index()] != algebra_counts[t.index()] {
            mismatches.push(format!(
                "{t}: {} classes but {} elements",
                oracle_counts[t.index()],
                algebra_counts[t.index()]
            ));
        }
    }
    let image: Vec<usize> = classes
        .classes
        .iter()
        .map(|c| m.eval_indices(&c.word, c.tag))
        .collect::<Result<_>>()?;
    let mut owner: HashMap<usize, usize> = HashMap::new();
    for (i, &e) in image.iter().enumerate() {
        if let Some(&j) = owner.get(&e) {
            let why = classes
                .separating_context(j, i, al)
                .unwrap_or_else(|| "no context found".into());
            mismatches.push(format!(
                "{} and {} both map to {} but are separated ({why})",
                classes.classes[j].representative,
                classes.classes[i].representative,
                alg.name(e)
            ));
        } else {
            owner.insert(e, i);
        }
        if let Some(acc) = m.accepting() {
            if acc.contains(e) != classes.classes[i].accepted {
                mismatches.push(format!("{} disagrees on acceptance", classes.classes[i].representative));
            }
        }
    }
    for e in 0..alg.len() {
        if !owner.contains_key(&e) {
            mismatches.push(format!("{} is not reached within the bound", alg.name(e)));
        }
    }
    for i in 0..image.len() {
        for j in i + 1..image.len() {
            if classes.classes[i].tag == classes.classes[j].tag {
                continue;
            }
            let o = classes.related(i, j);
            if o != alg.related(image[i], image[j]) {
                mismatches.push(format!(
                    "{} and {}: oracle says {}, algebra says {}",
                    classes.classes[i].representative,
                    classes.classes[j].representative,
                    if o { "dependent" } else { "independent" },
                    if o { "independent" } else { "dependent" },
                ));
            }
        }
    }
    Ok(VerifyReport {
        bound: cfg.max_total_len,
        oracle_counts,
        algebra_counts,
        oracle_cross_pairs: classes.cross.len(),
        mismatches,
    })
}

pub fn verify_syntactic(r: &Relation, result: &SyntacticResult, cfg: &OracleConfig) -> Result<VerifyReport> {
    verify_morphism(r, &result.morphism, cfg)
}

/// One product `K × L` of a decomposition, listed up to the bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductPart {
    pub left: Vec<String>,
    pub right: Vec<String>,
}

/// Groups left words by their rows of partners (both sides up to half the bound). Fails with
/// `NotApplicable` when the number of distinct rows still grows at the bound.
pub fn recognizable_decomposition(r: &Relation, cfg: &OracleConfig) -> Result<Vec<ProductPart>> {
    let half = cfg.max_total_len / 2;
    if half < 2 {
        return Err(Error::NotApplicable("bound too small to observe stabilization".into()));
    }
    let al = r.alphabet();
    let words = al.words_up_to(half);
    let row = |u: &str| -> Vec<bool> { words.iter().map(|v| r.accepts_pair(u, v)).collect() };
    let mut rows: Vec<(Vec<bool>, Vec<String>)> = Vec::new();
    let mut distinct_by_len = Vec::new();
    for n in 0..=half {
        for u in al.words_of_len(n) {
            let rw = row(&u);
            match rows.iter_mut().find(|(x, _)| *x == rw) {
                Some((_, us)) => us.push(u),
                None => rows.push((rw, vec![u])),
            }
        }
        distinct_by_len.push(rows.len());
    }
    if distinct_by_len[half] != distinct_by_len[half - 1] || distinct_by_len[half - 1] != distinct_by_len[half - 2] {
        return Err(Error::NotApplicable(format!(
            "rows keep splitting up to length {half}: {distinct_by_len:?}"
        )));
    }
    Ok(rows
        .into_iter()
        .filter(|(rw, _)| rw.iter().any(|&b| b))
        .map(|(rw, us)| ProductPart {
            left: us,
            right: words
                .iter()
                .zip(&rw)
                .filter(|(_, &b)| b)
                .map(|(v, _)| v.clone())
                .collect(),
        })
        .collect())
}

/// Pairs with `|u| + |w|` up to the bound where `composed` disagrees with a search for a
/// middle word.
pub fn composition_mismatches(
    r: &Relation,
    s: &Relation,
    composed: impl Fn(&str, &str) -> bool,
    max_total_len: usize,
) -> Vec<(String, String)> {
    let words = r.alphabet().words_up_to(max_total_len);
    let mut out = Vec::new();
    for u in &words {
        for w in &words {
            if u.chars().count() + w.chars().count() > max_total_len {
                continue;
            }
            if (r.mode == Mode::Plus || s.mode == Mode::Plus) && u.is_empty() && w.is_empty() {
                continue;
            }
            if composed(u, w) != composition_witness(r, s, u, w).is_some() {
                out.push((u.clone(), w.clone()));
            }
        }
    }
    out
}
